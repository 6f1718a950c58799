//! Exterior algebra over the polynomial ring: finite sums `sum_S P_S da_S`
//! where `S` ranges over sorted sets of edge labels and `P_S` is a
//! [`MultiPoly`]. Edge subsets are kept in lexicographic order.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::poly::MultiPoly;

/// Element of the exterior algebra with polynomial coefficients.
///
/// The wedge product is associative and graded-commutative; elements of even
/// degree commute with everything, which is what the matrix kernels rely on.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtElem {
    terms: BTreeMap<Vec<usize>, MultiPoly>,
}

impl ExtElem {
    pub fn new() -> Self {
        ExtElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        Self::new()
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, p) in &other.terms {
            out.insert(s.clone(), p.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ExtElem {
            terms: self
                .terms
                .iter()
                .map(|(s, p)| (s.clone(), p.neg()))
                .collect(),
        }
    }

    /// Wedge product; also exposed as `Ring::mul` for the matrix kernels.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (sa, pa) in &self.terms {
            for (sb, pb) in &other.terms {
                if let Some((merged, sign)) = wedge_labels(sa, sb) {
                    let mut coeff = pa.mul(pb);
                    if sign < 0 {
                        coeff = coeff.neg();
                    }
                    out.insert(merged, coeff);
                }
            }
        }
        out
    }

    /// A polynomial viewed as a 0-form.
    pub fn from_poly(p: MultiPoly) -> Self {
        let mut out = Self::new();
        if !p.is_zero() {
            out.terms.insert(Vec::new(), p);
        }
        out
    }

    /// The 1-form `da_e` for a 1-based edge label.
    pub fn da(label: usize) -> Self {
        assert!(label >= 1, "edge labels are 1-based");
        let mut out = Self::new();
        out.terms.insert(vec![label], MultiPoly::one());
        out
    }

    /// `p * da_S` for a strictly increasing label list `S`.
    pub fn term(labels: &[usize], p: MultiPoly) -> Self {
        assert!(
            labels.windows(2).all(|w| w[0] < w[1]),
            "labels must be strictly increasing"
        );
        let mut out = Self::new();
        if !p.is_zero() {
            out.terms.insert(labels.to_vec(), p);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, labels: &[usize]) -> MultiPoly {
        self.terms.get(labels).cloned().unwrap_or_default()
    }

    fn insert(&mut self, labels: Vec<usize>, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(labels) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&p);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale_poly(&self, p: &MultiPoly) -> Self {
        let mut out = Self::new();
        for (s, q) in &self.terms {
            out.insert(s.clone(), q.mul(p));
        }
        out
    }

    pub fn scale_rat(&self, c: &BigRational) -> Self {
        let mut out = Self::new();
        for (s, q) in &self.terms {
            out.insert(s.clone(), q.scale(c));
        }
        out
    }

    /// Apply `f` to every coefficient polynomial, keeping the edge subsets.
    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        let mut out = Self::new();
        for (s, q) in &self.terms {
            out.insert(s.clone(), f(q));
        }
        out
    }

    /// Form degree when homogeneous: `Some(k)` if every subset has size `k`,
    /// `None` for the zero element or mixed degrees.
    pub fn degree(&self) -> Option<usize> {
        let mut sizes = self.terms.keys().map(|s| s.len());
        let first = sizes.next()?;
        if sizes.all(|k| k == first) {
            Some(first)
        } else {
            None
        }
    }

    /// True when all subsets have even size (such elements are central).
    pub fn is_even_graded(&self) -> bool {
        self.terms.keys().all(|s| s.len() % 2 == 0)
    }

    /// Exterior derivative with respect to `a_1..a_{num_edges}`.
    pub fn exterior_derivative(&self, num_edges: usize) -> Self {
        let mut out = Self::new();
        for (s, p) in &self.terms {
            for var in 0..num_edges {
                let dp = p.partial_derivative(var);
                if dp.is_zero() {
                    continue;
                }
                let label = var + 1;
                if let Some((merged, sign)) = wedge_labels(&[label], s) {
                    let coeff = if sign < 0 { dp.neg() } else { dp };
                    out.insert(merged, coeff);
                }
            }
        }
        out
    }

    /// Pullback along the subdivision of edge `e` (1-based): variables and
    /// `da` labels above `e` shift up by one, `a_e` becomes `a_e + a_{e+1}`
    /// and `da_e` becomes `da_e + da_{e+1}`.
    pub fn pullback_subdivide(&self, e: usize, num_edges: usize) -> Self {
        let images: Vec<MultiPoly> = (0..num_edges)
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
        let mut out = Self::new();
        for (s, p) in &self.terms {
            let p2 = p.substitute_all(&images);
            if p2.is_zero() {
                continue;
            }
            let branches = split_labels(s, e);
            for labels in branches {
                out.insert(labels, p2.clone());
            }
        }
        out
    }
}

/// Shifted label lists after subdividing edge `e`; a subset containing `e`
/// splits into one copy using `e` and one using `e+1`. Relative order is
/// preserved, so no signs arise.
fn split_labels(s: &[usize], e: usize) -> Vec<Vec<usize>> {
    let mapped: Vec<usize> = s
        .iter()
        .map(|&l| if l > e { l + 1 } else { l })
        .collect();
    match s.iter().position(|&l| l == e) {
        None => vec![mapped],
        Some(pos) => {
            let mut second = mapped.clone();
            second[pos] = e + 1;
            vec![mapped, second]
        }
    }
}

/// Merge two strictly increasing label lists; `None` on overlap, otherwise
/// the merged list and the shuffle sign.
fn wedge_labels(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut merged = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => return None,
            std::cmp::Ordering::Less => {
                merged.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // b[j] jumps over the remaining elements of a
                if (a.len() - i) % 2 == 1 {
                    sign = -sign;
                }
                merged.push(b[j]);
                j += 1;
            }
        }
    }
    merged.extend_from_slice(&a[i..]);
    merged.extend_from_slice(&b[j..]);
    Some((merged, sign))
}

impl Default for ExtElem {
    fn default() -> Self {
        Self::new()
    }
}

impl crate::ring::Ring for ExtElem {
    fn zero() -> Self {
        Self::new()
    }

    fn one() -> Self {
        ExtElem::one()
    }

    fn is_zero(&self) -> bool {
        ExtElem::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        ExtElem::add(self, other)
    }

    fn neg(&self) -> Self {
        ExtElem::neg(self)
    }

    fn mul(&self, other: &Self) -> Self {
        ExtElem::wedge(self, other)
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (s, p)) in self.terms.iter().enumerate() {
            // single negative terms print with a leading minus
            let negative = p.num_terms() == 1 && p.to_string().starts_with('-');
            let (sep, printable) = if negative {
                (if i == 0 { "-" } else { " - " }, p.neg())
            } else {
                (if i == 0 { "" } else { " + " }, p.clone())
            };
            let coeff = if printable.num_terms() > 1 {
                format!("({printable})")
            } else {
                format!("{printable}")
            };
            if s.is_empty() {
                write!(f, "{sep}{coeff}")?;
            } else {
                let labels: Vec<String> = s.iter().map(|l| l.to_string()).collect();
                write!(f, "{sep}{coeff} da{{{}}}", labels.join(","))?;
            }
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

    #[test]
    fn wedge_same_label_vanishes() {
        let da1 = ExtElem::da(1);
        assert!(da1.wedge(&da1).is_zero());
    }

    #[test]
    fn wedge_antisymmetry() {
        let a = ExtElem::term(&[1], p("a1"));
        let b = ExtElem::term(&[2], p("a2"));
        let ab = a.wedge(&b);
        let ba = b.wedge(&a);
        assert_eq!(ab, ExtElem::term(&[1, 2], p("a1*a2")));
        assert_eq!(ba, ab.neg());
    }

    #[test]
    fn wedge_sign_three_factors() {
        // da2 ^ da1 ^ da3 = -da1 ^ da2 ^ da3
        let w = ExtElem::da(2).wedge(&ExtElem::da(1)).wedge(&ExtElem::da(3));
        assert_eq!(w, ExtElem::term(&[1, 2, 3], p("-1")));
    }

    #[test]
    fn exterior_derivative_of_product_poly() {
        // d(a1*a2) = a2 da1 + a1 da2
        let f = ExtElem::from_poly(p("a1*a2"));
        let df = f.exterior_derivative(2);
        let expected = ExtElem::term(&[1], p("a2")).add(&ExtElem::term(&[2], p("a1")));
        assert_eq!(df, expected);
    }

    #[test]
    fn d_squared_is_zero() {
        let f = ExtElem::term(&[2], p("a1^2*a3 + a2"));
        let ddf = f.exterior_derivative(3).exterior_derivative(3);
        assert!(ddf.is_zero(), "got {ddf}");
    }

    #[test]
    fn pullback_splits_da() {
        // P da1 with P = a1 pulled back along subdividing edge 1:
        // (a1 + a2)(da1 + da2)
        let f = ExtElem::term(&[1], p("a1"));
        let g = f.pullback_subdivide(1, 1);
        let expected = ExtElem::term(&[1], p("a1 + a2")).add(&ExtElem::term(&[2], p("a1 + a2")));
        assert_eq!(g, expected);
    }

    #[test]
    fn pullback_shifts_higher_labels() {
        let f = ExtElem::term(&[2, 3], p("a2*a3"));
        let g = f.pullback_subdivide(1, 3);
        assert_eq!(g, ExtElem::term(&[3, 4], p("a3*a4")));
    }
}
