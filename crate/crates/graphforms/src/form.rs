//! Differential forms of the shape `c * pi^p * (sum_S P_S da_S) / psi^(k/2)`,
//! with an exact rational scalar, a symbolic integer power of pi, and a
//! half-integer power of the ambient graph polynomial in the denominator.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exterior::ExtElem;
use crate::poly::MultiPoly;
use crate::ring::rational_gcd;

#[derive(Debug, Error, PartialEq)]
pub enum FormError {
    #[error("forms live over different ambient graphs")]
    AmbientMismatch,
    #[error("loop number {0} exceeds the permutation-sum cap {1}")]
    LoopCapExceeded(usize, usize),
}

/// A projective differential form over a fixed ambient graph.
///
/// The ambient data is the edge count and the graph polynomial `psi`; all
/// arithmetic requires both to match. The representation is not reduced
/// modulo cancellation against psi; equality works by cross-multiplication.
#[derive(Debug, Clone, PartialEq)]
pub struct FormExpression {
    scalar: BigRational,
    pi_pow: i32,
    psi_half: u32,
    num: ExtElem,
    psi: MultiPoly,
    num_edges: usize,
}

impl FormExpression {
    pub fn new(
        scalar: BigRational,
        pi_pow: i32,
        psi_half: u32,
        num: ExtElem,
        psi: MultiPoly,
        num_edges: usize,
    ) -> Self {
        let mut form = FormExpression {
            scalar,
            pi_pow,
            psi_half,
            num,
            psi,
            num_edges,
        };
        form.canonicalize();
        form
    }

    pub fn zero(psi: MultiPoly, num_edges: usize) -> Self {
        Self::new(
            BigRational::zero(),
            0,
            0,
            ExtElem::zero(),
            psi,
            num_edges,
        )
    }

    /// Constant 0-form `c` (numerator c, no psi power).
    pub fn constant(c: BigRational, psi: MultiPoly, num_edges: usize) -> Self {
        Self::new(
            c,
            0,
            0,
            ExtElem::one(),
            psi,
            num_edges,
        )
    }

    fn canonicalize(&mut self) {
        if self.scalar.is_zero() || self.num.is_zero() {
            self.scalar = BigRational::zero();
            self.pi_pow = 0;
            self.psi_half = 0;
            self.num = ExtElem::zero();
            return;
        }
        // a tree has psi = 1; no denominator bookkeeping is needed then
        if self.psi.is_zero() || self.psi == MultiPoly::one() {
            self.psi_half = 0;
        }
        // factor the common positive rational content into the scalar
        let mut content = BigRational::zero();
        for (_, p) in self.num.terms() {
            content = rational_gcd(&content, &p.content());
        }
        if !content.is_zero() && !content.is_one() {
            let inv = BigRational::one() / &content;
            self.num = self.num.scale_rat(&inv);
            self.scalar *= content;
        }
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    pub fn pi_pow(&self) -> i32 {
        self.pi_pow
    }

    pub fn psi_half(&self) -> u32 {
        self.psi_half
    }

    pub fn numerator(&self) -> &ExtElem {
        &self.num
    }

    pub fn psi(&self) -> &MultiPoly {
        &self.psi
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Form degree for homogeneous nonzero forms.
    pub fn degree(&self) -> Option<usize> {
        self.num.degree()
    }

    pub fn scale(&self, c: &BigRational, pi_shift: i32) -> Self {
        if c.is_zero() {
            return Self::zero(self.psi.clone(), self.num_edges);
        }
        Self::new(
            &self.scalar * c,
            self.pi_pow + pi_shift,
            self.psi_half,
            self.num.clone(),
            self.psi.clone(),
            self.num_edges,
        )
    }

    fn same_ambient(&self, other: &Self) -> bool {
        self.num_edges == other.num_edges && self.psi == other.psi
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, FormError> {
        if !self.same_ambient(other) {
            return Err(FormError::AmbientMismatch);
        }
        Ok(Self::new(
            &self.scalar * &other.scalar,
            self.pi_pow + other.pi_pow,
            self.psi_half + other.psi_half,
            self.num.wedge(&other.num),
            self.psi.clone(),
            self.num_edges,
        ))
    }

    /// Exterior derivative:
    /// `d(P/psi^(k/2) da_S) = (2 psi dP - k P dpsi) / (2 psi^((k+2)/2)) ^ da_S`.
    pub fn exterior_derivative(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let dpsi = ExtElem::from_poly(self.psi.clone()).exterior_derivative(self.num_edges);
        let two_psi = self.psi.scale(&BigRational::from_integer(BigInt::from(2)));
        let k = BigRational::from_integer(BigInt::from(self.psi_half));
        let mut out = ExtElem::zero();
        for (s, p) in self.num.terms() {
            let dp = ExtElem::from_poly(p.clone()).exterior_derivative(self.num_edges);
            // (2 psi dP - k P dpsi) ^ da_S
            let part = dp
                .scale_poly(&two_psi)
                .add(&dpsi.scale_poly(&p.scale(&k)).neg());
            let da_s = ExtElem::term(s, MultiPoly::one());
            out = out.add(&part.wedge(&da_s));
        }
        Self::new(
            &self.scalar / BigRational::from_integer(BigInt::from(2)),
            self.pi_pow,
            self.psi_half + 2,
            out,
            self.psi.clone(),
            self.num_edges,
        )
    }

    /// Exact equality by cross-multiplication against the common denominator.
    pub fn equals(&self, other: &Self) -> Result<bool, FormError> {
        if !self.same_ambient(other) {
            return Err(FormError::AmbientMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(self.is_zero() && other.is_zero());
        }
        if self.pi_pow != other.pi_pow {
            return Ok(false);
        }
        if (self.psi_half % 2) != (other.psi_half % 2) {
            // equal values would need a rational square root of psi
            return Ok(false);
        }
        let k = self.psi_half.max(other.psi_half);
        let lift = |f: &Self| -> ExtElem {
            let delta = (k - f.psi_half) / 2;
            let mut num = f.num.scale_rat(&f.scalar);
            if delta > 0 {
                num = num.scale_poly(&f.psi.pow(delta));
            }
            num
        };
        Ok(lift(self) == lift(other))
    }

    /// When `self = c * pi^p * other` for a unique nonzero rational `c`,
    /// returns `Some((c, p))`. Returns `None` when either side is zero or no
    /// such constant exists.
    pub fn scale_ratio(&self, other: &Self) -> Result<Option<(BigRational, i32)>, FormError> {
        if !self.same_ambient(other) {
            return Err(FormError::AmbientMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(None);
        }
        if (self.psi_half % 2) != (other.psi_half % 2) {
            return Ok(None);
        }
        let p = self.pi_pow - other.pi_pow;
        let k = self.psi_half.max(other.psi_half);
        let lift = |f: &Self| -> ExtElem {
            let delta = (k - f.psi_half) / 2;
            let mut num = f.num.scale_rat(&f.scalar);
            if delta > 0 {
                num = num.scale_poly(&f.psi.pow(delta));
            }
            num
        };
        let lhs = lift(self);
        let rhs = lift(other);
        // candidate ratio from the first term, then verify globally
        let (s0, p0) = match rhs.terms().next() {
            Some(t) => t,
            None => return Ok(None),
        };
        let l0 = lhs.coefficient(s0);
        if l0.is_zero() {
            return Ok(None);
        }
        let (m0, c_rhs) = p0.terms().next().expect("nonzero poly");
        let c_lhs = l0
            .terms()
            .find(|(m, _)| *m == m0)
            .map(|(_, c)| c.clone());
        let Some(c_lhs) = c_lhs else {
            return Ok(None);
        };
        let ratio = c_lhs / c_rhs;
        if lhs == rhs.scale_rat(&ratio) {
            Ok(Some((ratio, p)))
        } else {
            Ok(None)
        }
    }

    /// Pullback along subdividing edge `e` (1-based). The ambient polynomial
    /// is substituted as well; the caller checks it equals the subdivided
    /// graph's polynomial.
    pub fn pullback_subdivide(&self, e: usize) -> Self {
        let new_psi = {
            let images: Vec<MultiPoly> = (0..self.num_edges)
                .map(|v| {
                    let label = v + 1;
                    if label < e {
                        MultiPoly::var(v)
                    } else if label == e {
                        MultiPoly::var(v).add(&MultiPoly::var(v + 1))
                    } else {
                        MultiPoly::var(v + 1)
                    }
                })
                .collect();
            self.psi.substitute_all(&images)
        };
        Self::new(
            self.scalar.clone(),
            self.pi_pow,
            self.psi_half,
            self.num.pullback_subdivide(e, self.num_edges),
            new_psi,
            self.num_edges + 1,
        )
    }

    /// Structured serialization mirroring the canonical text form, with
    /// exact integer-pair rationals throughout.
    pub fn to_json_value(&self) -> serde_json::Value {
        let numerator: Vec<serde_json::Value> = self
            .num
            .terms()
            .map(|(s, p)| {
                serde_json::json!({
                    "edges": s,
                    "poly": p.to_json_value(),
                })
            })
            .collect();
        serde_json::json!({
            "scalar": [self.scalar.numer().to_string(), self.scalar.denom().to_string()],
            "pi_power": self.pi_pow,
            "psi_half_power": self.psi_half,
            "numerator": numerator,
            "psi": self.psi.to_json_value(),
            "num_edges": self.num_edges,
        })
    }

    /// Inverse of [`FormExpression::to_json_value`].
    pub fn from_json_value(value: &serde_json::Value) -> Option<Self> {
        let scalar = value.get("scalar")?.as_array()?;
        let numer: BigInt = scalar.first()?.as_str()?.parse().ok()?;
        let denom: BigInt = scalar.get(1)?.as_str()?.parse().ok()?;
        if denom.is_zero() {
            return None;
        }
        let pi_pow = value.get("pi_power")?.as_i64()? as i32;
        let psi_half = value.get("psi_half_power")?.as_u64()? as u32;
        let mut num = ExtElem::zero();
        for term in value.get("numerator")?.as_array()? {
            let labels: Vec<usize> = term
                .get("edges")?
                .as_array()?
                .iter()
                .map(|v| v.as_u64().map(|x| x as usize))
                .collect::<Option<_>>()?;
            let poly = MultiPoly::from_json_value(term.get("poly")?).ok()?;
            num = num.add(&ExtElem::term(&labels, poly));
        }
        let psi = MultiPoly::from_json_value(value.get("psi")?).ok()?;
        let num_edges = value.get("num_edges")?.as_u64()? as usize;
        Some(Self::new(
            BigRational::new(numer, denom),
            pi_pow,
            psi_half,
            num,
            psi,
            num_edges,
        ))
    }

    /// Scaling weight under `a -> lambda a`: for each term,
    /// `deg P_S + |S| - (k/2) deg psi`. Returns `Some(w)` when all numerator
    /// polynomials are homogeneous and agree on `w`; projective forms have
    /// weight zero. The zero form counts as projective.
    pub fn homogeneity_weight(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        let psi_deg = self.psi.degree().unwrap_or(0) as i64;
        let twice_denom = self.psi_half as i64 * psi_deg;
        if twice_denom % 2 != 0 {
            return None;
        }
        let mut weight = None;
        for (s, p) in self.num.terms() {
            let h = p.homogeneous_degree()? as i64;
            let w = h + s.len() as i64 - twice_denom / 2;
            match weight {
                None => weight = Some(w),
                Some(prev) if prev == w => {}
                _ => return None,
            }
        }
        weight
    }
}

impl fmt::Display for FormExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.scalar.denom().is_one() {
            write!(f, "({})", self.scalar.numer())?;
        } else {
            write!(f, "({}/{})", self.scalar.numer(), self.scalar.denom())?;
        }
        if self.pi_pow != 0 {
            write!(f, " * pi^({})", self.pi_pow)?;
        }
        write!(f, " * [ {} ]", self.num)?;
        if self.psi_half != 0 {
            write!(f, " / psi^({}/2)", self.psi_half)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    fn theta_psi() -> MultiPoly {
        p("a1*a2 + a1*a3 + a2*a3")
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zero_form_is_canonical() {
        let z = FormExpression::new(rat(3, 4), -2, 5, ExtElem::zero(), theta_psi(), 3);
        assert!(z.is_zero());
        assert_eq!(z, FormExpression::zero(theta_psi(), 3));
    }

    #[test]
    fn content_moves_to_scalar() {
        let num = ExtElem::term(&[1, 2], p("2*a3")).add(&ExtElem::term(&[1, 3], p("-2*a2")));
        let f = FormExpression::new(rat(1, 1), 0, 3, num, theta_psi(), 3);
        assert_eq!(*f.scalar(), rat(2, 1));
    }

    #[test]
    fn cancellation_equality() {
        // (psi * P) / psi^(3/2) equals P / psi^(1/2)
        let psi = theta_psi();
        let pnum = p("a1 + 5*a2");
        let f = FormExpression::new(
            rat(1, 1),
            0,
            3,
            ExtElem::term(&[1], psi.mul(&pnum)),
            psi.clone(),
            3,
        );
        let g = FormExpression::new(rat(1, 1), 0, 1, ExtElem::term(&[1], pnum), psi, 3);
        assert!(f.equals(&g).unwrap());
    }

    #[test]
    fn equality_rejects_different_pi_power() {
        let psi = theta_psi();
        let f = FormExpression::new(rat(1, 1), -1, 1, ExtElem::one(), psi.clone(), 3);
        let g = FormExpression::new(rat(1, 1), 0, 1, ExtElem::one(), psi, 3);
        assert!(!f.equals(&g).unwrap());
    }

    #[test]
    fn scale_ratio_finds_constant() {
        let psi = theta_psi();
        let num = ExtElem::term(&[1, 2], p("a3")).add(&ExtElem::term(&[1, 3], p("-a2")));
        let f = FormExpression::new(rat(1, 2), -1, 3, num.clone(), psi.clone(), 3);
        let g = FormExpression::new(rat(-2, 1), 0, 3, num, psi, 3);
        let (c, pi) = f.scale_ratio(&g).unwrap().unwrap();
        assert_eq!(c, rat(-1, 4));
        assert_eq!(pi, -1);
    }

    #[test]
    fn derivative_of_inverse_sqrt_psi() {
        // d(psi^(-1/2)) = -(1/2) psi^(-3/2) dpsi
        let psi = theta_psi();
        let f = FormExpression::new(rat(1, 1), 0, 1, ExtElem::one(), psi.clone(), 3);
        let df = f.exterior_derivative();
        let dpsi = ExtElem::from_poly(psi.clone()).exterior_derivative(3);
        let expected = FormExpression::new(rat(-1, 2), 0, 3, dpsi, psi, 3);
        assert!(df.equals(&expected).unwrap());
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        let f = FormExpression::constant(rat(7, 3), theta_psi(), 3);
        assert!(f.exterior_derivative().is_zero());
    }

    #[test]
    fn structured_serialization_round_trips() {
        let num = ExtElem::term(&[1, 2], p("a3")).add(&ExtElem::term(&[1, 3], p("-1/2*a2")));
        let f = FormExpression::new(rat(3, 8), -1, 3, num, theta_psi(), 3);
        let value = f.to_json_value();
        let back = FormExpression::from_json_value(&value).unwrap();
        assert_eq!(back, f);
        assert!(back.equals(&f).unwrap());
    }

    #[test]
    fn homogeneity_weight_projective() {
        // a3 da{1,2} / psi^(3/2): 1 + 2 - 3 = 0
        let f = FormExpression::new(
            rat(1, 1),
            0,
            3,
            ExtElem::term(&[1, 2], p("a3")),
            theta_psi(),
            3,
        );
        assert_eq!(f.homogeneity_weight(), Some(0));
        let g = FormExpression::new(
            rat(1, 1),
            0,
            1,
            ExtElem::term(&[1, 2], p("a3")),
            theta_psi(),
            3,
        );
        assert_eq!(g.homogeneity_weight(), Some(2));
    }
}
