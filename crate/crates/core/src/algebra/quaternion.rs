use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{format_rational, rat, Field, Rational};
use crate::error::{Error, Result};

/// Element `t + x i + y j + z k` of the definite quaternion algebra
/// `(-1, -1 | Q)`, with `i^2 = j^2 = -1` and `ij = k = -ji`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuaternionRational {
    pub t: Rational,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl QuaternionRational {
    pub fn new(t: Rational, x: Rational, y: Rational, z: Rational) -> Self {
        Self { t, x, y, z }
    }

    pub fn from_ints(t: i64, x: i64, y: i64, z: i64) -> Self {
        Self::new(rat(t, 1), rat(x, 1), rat(y, 1), rat(z, 1))
    }

    pub fn scalar(t: Rational) -> Self {
        Self::new(t, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    /// `(-1 + i + j + k) / 2`, the extra generator of the Hurwitz order.
    pub fn hurwitz_omega() -> Self {
        Self::new(rat(-1, 2), rat(1, 2), rat(1, 2), rat(1, 2))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.t.clone(), -self.x.clone(), -self.y.clone(), -self.z.clone())
    }

    /// Reduced trace `2t`.
    pub fn trd(&self) -> Rational {
        &self.t * rat(2, 1)
    }

    /// Reduced norm `t^2 + x^2 + y^2 + z^2`.
    pub fn nrd(&self) -> Rational {
        &self.t * &self.t + &self.x * &self.x + &self.y * &self.y + &self.z * &self.z
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(&self.t * s, &self.x * s, &self.y * s, &self.z * s)
    }

    /// True when all four coordinates are integers (membership in the
    /// Lipschitz order).
    pub fn is_lipschitz(&self) -> bool {
        self.t.is_integer() && self.x.is_integer() && self.y.is_integer() && self.z.is_integer()
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.nrd();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    /// `self * other^{-1}`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }
}

impl Add for QuaternionRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for QuaternionRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.t - o.t, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for QuaternionRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.t, -self.x, -self.y, -self.z)
    }
}

impl Mul for QuaternionRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a1, b1, c1, d1) = (&self.t, &self.x, &self.y, &self.z);
        let (a2, b2, c2, d2) = (&o.t, &o.x, &o.y, &o.z);
        Self::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Zero for QuaternionRational {
    fn zero() -> Self {
        QuaternionRational::from_ints(0, 0, 0, 0)
    }
    fn is_zero(&self) -> bool {
        self.t.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl One for QuaternionRational {
    fn one() -> Self {
        QuaternionRational::from_ints(1, 0, 0, 0)
    }
}

impl Field for QuaternionRational {
    fn inv(&self) -> Option<Self> {
        QuaternionRational::inv(self).ok()
    }
    fn from_i64(n: i64) -> Self {
        Self::from_ints(n, 0, 0, 0)
    }
}

impl fmt::Debug for QuaternionRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuaternionRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}i + {}j + {}k",
            format_rational(&self.t),
            format_rational(&self.x),
            format_rational(&self.y),
            format_rational(&self.z)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type H = QuaternionRational;

    #[test]
    fn defining_relations() {
        assert_eq!(H::i() * H::j(), H::k());
        assert_eq!(H::j() * H::i(), -H::k());
        assert_eq!(H::i() * H::i(), -H::one());
        assert_eq!(H::k() * H::k(), -H::one());
    }

    #[test]
    fn norms_and_traces() {
        let a = -(H::i() + H::j()).scale(&rat(1, 2));
        let b = H::k().scale(&rat(1, 2));
        assert_eq!(a.nrd(), rat(1, 2));
        assert_eq!(b.nrd(), rat(1, 4));
        assert_eq!(a.nrd() * b.nrd(), rat(1, 8));
        assert_eq!(H::hurwitz_omega().trd(), rat(-1, 1));
        assert!(!H::hurwitz_omega().is_lipschitz());
    }

    #[test]
    fn inverse_and_division() {
        let a = H::from_ints(1, 2, -3, 4);
        assert_eq!(a.clone() * a.inv().unwrap(), H::one());
        assert_eq!(H::zero().inv(), Err(Error::DivisionByZero));
        assert!(a.div(&H::zero()).is_err());
    }
}
