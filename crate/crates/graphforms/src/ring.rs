//! Minimal commutative-ring abstraction shared by the dense matrix kernels.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative ring with exact arithmetic.
///
/// Operations take references so that big-integer and polynomial entries are
/// not cloned more than necessary inside elimination loops.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Rough size of the element, used by elimination kernels to pick small
    /// pivots (polynomials report their term count).
    fn size_hint(&self) -> usize {
        1
    }
}

/// Integral domain whose exact divisions can be certified.
///
/// `exact_div` returns `None` when `den` does not divide `self`; fraction-free
/// elimination only ever performs divisions that are exact by construction,
/// so a `None` there indicates a bug and is treated as such by callers.
pub trait Domain: Ring {
    fn exact_div(&self, den: &Self) -> Option<Self>;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

impl Domain for BigInt {
    fn exact_div(&self, den: &Self) -> Option<Self> {
        if Zero::is_zero(den) {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, den);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

impl Domain for BigRational {
    fn exact_div(&self, den: &Self) -> Option<Self> {
        if Zero::is_zero(den) {
            None
        } else {
            Some(self / den)
        }
    }
}

/// Positive gcd of two rationals: gcd of numerators over lcm of denominators.
/// Used to factor the rational content out of polynomial collections.
pub fn rational_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    if Zero::is_zero(a) {
        return b.abs();
    }
    if Zero::is_zero(b) {
        return a.abs();
    }
    let num = num_integer::Integer::gcd(a.numer(), b.numer());
    let den = num_integer::Integer::lcm(a.denom(), b.denom());
    BigRational::new(num, den).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigint_exact_div() {
        let a = BigInt::from(12);
        let b = BigInt::from(4);
        assert_eq!(a.exact_div(&b), Some(BigInt::from(3)));
        assert_eq!(a.exact_div(&BigInt::from(5)), None);
        assert_eq!(a.exact_div(&BigInt::from(0)), None);
    }

    #[test]
    fn rational_gcd_simple() {
        let a = BigRational::new(BigInt::from(4), BigInt::from(3));
        let b = BigRational::new(BigInt::from(-2), BigInt::from(9));
        // gcd(4, 2) / lcm(3, 9) = 2/9
        assert_eq!(
            rational_gcd(&a, &b),
            BigRational::new(BigInt::from(2), BigInt::from(9))
        );
    }
}
