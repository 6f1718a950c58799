//! Exact multivariate polynomials in the edge variables `a1, a2, ...` with
//! rational coefficients.
//!
//! Terms are kept in a canonical order (total degree first, ties broken by
//! comparing exponents from the highest variable down), which fixes both the
//! text serialization and iteration order bit-exactly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::ring::rational_gcd;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("unexpected character {0:?} at offset {1}")]
    UnexpectedChar(char, usize),
    #[error("malformed term near offset {0}")]
    MalformedTerm(usize),
    #[error("empty input")]
    Empty,
}

/// Exponent vector with trailing zeros trimmed, so a monomial is independent
/// of any ambient variable count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        let mut v = vec![0; index + 1];
        v[index] = 1;
        Monomial(v)
    }

    fn trim(mut v: Vec<u16>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![0u16; n];
        for (i, item) in v.iter_mut().enumerate() {
            *item = self.exponent(i) + other.exponent(i);
        }
        Monomial::trim(v)
    }

    /// Componentwise division; `None` when any exponent would go negative.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut v = self.0.clone();
        for (i, &e) in other.0.iter().enumerate() {
            if v[i] < e {
                return None;
            }
            v[i] -= e;
        }
        Some(Monomial::trim(v))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for pos in (0..n).rev() {
                let ord = self.exponent(pos).cmp(&other.exponent(pos));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn new() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        Self::new()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Exact polynomial division by cancelling leading terms; `None` when the
    /// division leaves a remainder.
    pub fn exact_div(&self, den: &Self) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = Self::new();
        let (dm, dc) = den.leading().expect("nonzero divisor");
        let (dm, dc) = (dm.clone(), dc.clone());
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().expect("nonzero remainder");
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            let mono = MultiPoly {
                terms: BTreeMap::from([(qm, qc)]),
            };
            rem = rem.sub(&mono.mul(den));
            quot = quot.add(&mono);
        }
        Some(quot)
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::new();
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(), c);
        }
        p
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable `a{index+1}` (0-based index).
    pub fn var(index: usize) -> Self {
        let mut p = Self::new();
        p.terms.insert(Monomial::var(index), BigRational::one());
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn insert_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let mut out = Self::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let dm = m.div(&Monomial::var(var)).expect("exponent checked");
            out.insert_term(dm, c * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Highest variable index that occurs, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.num_vars().checked_sub(1))
            .max()
    }

    /// Replace variable `var` by `image` (same ambient variables).
    pub fn substitute_var(&self, var: usize, image: &MultiPoly) -> Self {
        let mut out = Self::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let mut reduced = m.0.clone();
            if var < reduced.len() {
                reduced[var] = 0;
            }
            let base = MultiPoly {
                terms: BTreeMap::from([(Monomial::trim(reduced), c.clone())]),
            };
            let term = base.mul(&image.pow(e as u32));
            out = out.add(&term);
        }
        out
    }

    /// Map every variable `i` to `images[i]`; panics when an occurring
    /// variable has no image. The images may live in a different variable set.
    pub fn substitute_all(&self, images: &[MultiPoly]) -> Self {
        let mut out = Self::new();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for var in 0..m.num_vars() {
                let e = m.exponent(var);
                if e > 0 {
                    term = term.mul(&images[var].pow(e as u32));
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut v = c.numer().to_f64().unwrap_or(f64::NAN)
                / c.denom().to_f64().unwrap_or(f64::NAN);
            for var in 0..m.num_vars() {
                let e = m.exponent(var);
                if e > 0 {
                    v *= point[var].powi(e as i32);
                }
            }
            acc += v;
        }
        acc
    }

    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for var in 0..m.num_vars() {
                for _ in 0..m.exponent(var) {
                    v *= &point[var];
                }
            }
            acc += v;
        }
        acc
    }

    /// Total degree of the highest term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// `Some(d)` when nonzero and every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        let first = degrees.next()?;
        if degrees.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// True when every variable occurs with exponent at most one.
    pub fn is_multilinear(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.0.iter().all(|&e| e <= 1))
    }

    /// Positive rational content (gcd of all coefficients).
    pub fn content(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.terms.values() {
            acc = rational_gcd(&acc, c);
        }
        acc
    }

    fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }
}

impl Default for MultiPoly {
    fn default() -> Self {
        Self::new()
    }
}

impl crate::ring::Ring for MultiPoly {
    fn zero() -> Self {
        Self::new()
    }

    fn one() -> Self {
        MultiPoly::one()
    }

    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }

    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }

    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }

    fn size_hint(&self) -> usize {
        self.num_terms()
    }
}

impl crate::ring::Domain for MultiPoly {
    fn exact_div(&self, den: &Self) -> Option<Self> {
        MultiPoly::exact_div(self, den)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                if abs.denom().is_one() {
                    factors.push(abs.numer().to_string());
                } else {
                    factors.push(format!("{}/{}", abs.numer(), abs.denom()));
                }
            }
            for var in 0..m.num_vars() {
                match m.exponent(var) {
                    0 => {}
                    1 => factors.push(format!("a{}", var + 1)),
                    e => factors.push(format!("a{}^{}", var + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl MultiPoly {
    /// Structured serialization: a list of terms in canonical order, each
    /// with an exact `[numerator, denominator]` coefficient (decimal strings)
    /// and its exponent vector.
    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let exps: Vec<u16> = (0..m.num_vars()).map(|v| m.exponent(v)).collect();
                serde_json::json!({
                    "coeff": [c.numer().to_string(), c.denom().to_string()],
                    "exponents": exps,
                })
            })
            .collect();
        serde_json::Value::Array(terms)
    }

    /// Inverse of [`MultiPoly::to_json_value`].
    pub fn from_json_value(value: &serde_json::Value) -> Result<Self, PolyParseError> {
        let bad = || PolyParseError::MalformedTerm(0);
        let arr = value.as_array().ok_or_else(bad)?;
        let mut poly = MultiPoly::new();
        for term in arr {
            let coeff = term.get("coeff").and_then(|c| c.as_array()).ok_or_else(bad)?;
            if coeff.len() != 2 {
                return Err(bad());
            }
            let numer: BigInt = coeff[0]
                .as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(bad)?;
            let denom: BigInt = coeff[1]
                .as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(bad)?;
            if denom.is_zero() {
                return Err(bad());
            }
            let exps = term
                .get("exponents")
                .and_then(|e| e.as_array())
                .ok_or_else(bad)?;
            let mut mono = Monomial::unit();
            for (var, e) in exps.iter().enumerate() {
                let e = e.as_u64().ok_or_else(bad)?;
                for _ in 0..e {
                    mono = mono.mul(&Monomial::var(var));
                }
            }
            poly.insert_term(mono, BigRational::new(numer, denom));
        }
        Ok(poly)
    }
}

/// Parse the canonical text form produced by `Display`.
pub fn parse_poly(input: &str) -> Result<MultiPoly, PolyParseError> {
    let s: Vec<char> = input.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < s.len() && s[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == s.len() {
        return Err(PolyParseError::Empty);
    }
    let mut poly = MultiPoly::new();
    let mut sign = BigRational::one();
    loop {
        skip_ws(&mut pos);
        if pos < s.len() && (s[pos] == '+' || s[pos] == '-') {
            if s[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
            continue;
        }
        if pos >= s.len() {
            break;
        }
        // one term: factors joined by '*'
        let start = pos;
        let mut coeff = sign.clone();
        let mut mono = Monomial::unit();
        let mut saw_factor;
        loop {
            skip_ws(&mut pos);
            if pos < s.len() && s[pos] == 'a' {
                pos += 1;
                let idx = parse_uint(&s, &mut pos).ok_or(PolyParseError::MalformedTerm(start))?;
                if idx == 0 {
                    return Err(PolyParseError::MalformedTerm(start));
                }
                let mut exp = 1u64;
                if pos < s.len() && s[pos] == '^' {
                    pos += 1;
                    exp = parse_uint(&s, &mut pos).ok_or(PolyParseError::MalformedTerm(start))?;
                }
                for _ in 0..exp {
                    mono = mono.mul(&Monomial::var(idx as usize - 1));
                }
                saw_factor = true;
            } else if pos < s.len() && s[pos].is_ascii_digit() {
                let num = parse_uint(&s, &mut pos).ok_or(PolyParseError::MalformedTerm(start))?;
                let mut val = BigRational::from_integer(BigInt::from(num));
                if pos < s.len() && s[pos] == '/' {
                    pos += 1;
                    let den =
                        parse_uint(&s, &mut pos).ok_or(PolyParseError::MalformedTerm(start))?;
                    if den == 0 {
                        return Err(PolyParseError::MalformedTerm(start));
                    }
                    val /= BigRational::from_integer(BigInt::from(den));
                }
                coeff *= val;
                saw_factor = true;
            } else {
                return Err(match s.get(pos) {
                    Some(&c) => PolyParseError::UnexpectedChar(c, pos),
                    None => PolyParseError::MalformedTerm(start),
                });
            };
            skip_ws(&mut pos);
            if pos < s.len() && s[pos] == '*' {
                pos += 1;
                continue;
            }
            break;
        }
        if !saw_factor {
            return Err(PolyParseError::MalformedTerm(start));
        }
        poly.insert_term(mono, coeff);
        sign = BigRational::one();
        skip_ws(&mut pos);
        if pos >= s.len() {
            break;
        }
        match s[pos] {
            '+' => {
                pos += 1;
            }
            '-' => {
                sign = -sign;
                pos += 1;
            }
            c => return Err(PolyParseError::UnexpectedChar(c, pos)),
        }
    }
    Ok(poly)
}

fn parse_uint(s: &[char], pos: &mut usize) -> Option<u64> {
    let start = *pos;
    let mut val: u64 = 0;
    while *pos < s.len() && s[*pos].is_ascii_digit() {
        val = val.checked_mul(10)?.checked_add(s[*pos] as u64 - '0' as u64)?;
        *pos += 1;
    }
    if *pos == start {
        None
    } else {
        Some(val)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn canonical_term_order_matches_serialization() {
        let psi = p("a3*a4 + a1*a3 + a2*a4 + a2*a3 + a1*a4");
        assert_eq!(psi.to_string(), "a1*a3 + a2*a3 + a1*a4 + a2*a4 + a3*a4");
        let theta = p("a2*a3 + a1*a2 + a1*a3");
        assert_eq!(theta.to_string(), "a1*a2 + a1*a3 + a2*a3");
    }

    #[test]
    fn add_and_cancel() {
        let a = p("a1*a2 + a3");
        let b = p("-a1*a2 + a3");
        assert_eq!(a.add(&b).to_string(), "2*a3");
    }

    #[test]
    fn mul_expands() {
        let a = p("a1 + a2");
        let b = p("a1 - a2");
        assert_eq!(a.mul(&b).to_string(), "a1^2 - a2^2");
    }

    #[test]
    fn substitute_contraction_sets_variable_to_zero() {
        // theta graph polynomial with a3 -> 0 leaves the 2-banana polynomial
        let psi = p("a1*a2 + a1*a3 + a2*a3");
        let got = psi.substitute_var(2, &MultiPoly::zero());
        assert_eq!(got, p("a1*a2"));
    }

    #[test]
    fn substitute_subdivision_shift() {
        // a1 -> a1 + a2, a2 -> a3, a3 -> a4 on the theta polynomial
        let psi = p("a1*a2 + a1*a3 + a2*a3");
        let images = vec![p("a1 + a2"), p("a3"), p("a4")];
        let got = psi.substitute_all(&images);
        assert_eq!(got, p("a1*a3 + a2*a3 + a1*a4 + a2*a4 + a3*a4"));
    }

    #[test]
    fn partial_derivative_basic() {
        let psi = p("a1*a2 + a2*a3 + a1*a3");
        assert_eq!(psi.partial_derivative(0), p("a2 + a3"));
    }

    #[test]
    fn exact_division_round_trip() {
        let a = p("a1 + a2");
        let b = p("a1^2 + 2*a1*a2 + a2^2 + a3");
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a), Some(b));
        assert_eq!(p("a1^2 + 1").exact_div(&p("a1 + 1")), None);
    }

    #[test]
    fn display_parse_round_trip() {
        let cases = [
            "0",
            "1",
            "-3/2",
            "a1",
            "-a4",
            "1/2*a1*a2 - a3^2 + 5",
            "a1*a3 + a2*a3 + a1*a4 + a2*a4 + a3*a4",
        ];
        for c in cases {
            let poly = p(c);
            assert_eq!(p(&poly.to_string()), poly, "case {c}");
        }
    }

    #[test]
    fn json_round_trip() {
        let cases = ["0", "1/2*a1*a2 - a3^2 + 5", "a1*a3 + a2*a3 + a3*a4"];
        for c in cases {
            let poly = p(c);
            let back = MultiPoly::from_json_value(&poly.to_json_value()).unwrap();
            assert_eq!(back, poly, "case {c}");
        }
    }

    #[test]
    fn homogeneous_degree_detects_grading() {
        assert_eq!(p("a1*a2 + a2*a3").homogeneous_degree(), Some(2));
        assert_eq!(p("a1 + a2*a3").homogeneous_degree(), None);
        assert_eq!(MultiPoly::zero().homogeneous_degree(), None);
    }

    #[test]
    fn content_factors_out() {
        let poly = p("2*a1 + 4*a2 - 6*a3");
        assert_eq!(
            poly.content(),
            BigRational::from_integer(BigInt::from(2))
        );
    }
}
