use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::{format_rational, Field, Rational};
use super::integer::{sqrt_minus_one_mod, valuation_int};
use crate::error::{Error, Result};

/// Element `re + im*i` of Q(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        num_complex::Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", format_rational(&self.re))
        } else {
            write!(f, "{}+{}*i", format_rational(&self.re), format_rational(&self.im))
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::real(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl Field for GaussianRational {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }
    fn from_i64(n: i64) -> Self {
        Self::real(Rational::from_i64(n))
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        Self::real(q)
    }
}

/// Valuation value: a rational number or `+infinity` (the valuation of zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(Rational),
    Infinite,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Valuation::Finite(v) => v.is_positive(),
            Valuation::Infinite => true,
        }
    }

    pub fn add(&self, other: &Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

/// Selects the prime of Z[i] above an odd rational prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrimeBranch {
    /// `p ≡ 3 (mod 4)`: `p` stays prime in Z[i].
    Inert,
    /// `p ≡ 1 (mod 4)`: the prime on which `i ≡ i_mod_p (mod p)`.
    Split { i_mod_p: u64 },
}

impl PrimeBranch {
    /// The two branches above a split prime, ordered by the residue of `i`.
    pub fn split_branches(p: u64) -> Result<[PrimeBranch; 2]> {
        let r = sqrt_minus_one_mod(p)
            .ok_or_else(|| Error::PreconditionFailed(format!("{p} is not 1 mod 4")))?;
        let (a, b) = if r < p - r { (r, p - r) } else { (p - r, r) };
        Ok([PrimeBranch::Split { i_mod_p: a }, PrimeBranch::Split { i_mod_p: b }])
    }

    /// Default branch for `p`: inert when `p ≡ 3 (mod 4)`, otherwise the
    /// branch with the smaller residue of `i`.
    pub fn default_for(p: u64) -> Result<PrimeBranch> {
        match p % 4 {
            3 => Ok(PrimeBranch::Inert),
            1 => Ok(Self::split_branches(p)?[0].clone()),
            _ => Err(Error::UnsupportedCharacteristic(format!("p = {p}"))),
        }
    }
}

/// Hensel precision used for split primes unless a larger one is needed.
const DEFAULT_PRECISION: u32 = 64;

fn rational_valuation(q: &Rational, p: &BigInt) -> i64 {
    valuation_int(q.numer(), p) as i64 - valuation_int(q.denom(), p) as i64
}

/// Normalised valuation on Q(i) above the odd prime `p`, with `v(p) = 1`.
pub fn gaussian_valuation(x: &GaussianRational, p: u64, branch: &PrimeBranch) -> Result<Valuation> {
    if p == 2 {
        return Err(Error::Unsupported("valuation above the ramified prime 2".into()));
    }
    if p % 2 == 0 || p < 3 {
        return Err(Error::PreconditionFailed(format!("{p} is not an odd prime")));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let pb = BigInt::from(p);
    match (p % 4, branch) {
        (3, PrimeBranch::Inert) => {
            let v = rational_valuation(&x.norm(), &pb);
            Ok(Valuation::Finite(Rational::new(BigInt::from(v), BigInt::from(2))))
        }
        (1, PrimeBranch::Split { i_mod_p }) => {
            let i_mod_p = *i_mod_p % p;
            if (i_mod_p as u128 * i_mod_p as u128 + 1) % p as u128 != 0 {
                return Err(Error::PreconditionFailed(format!(
                    "{i_mod_p} is not a square root of -1 mod {p}"
                )));
            }
            // Clear denominators: x = (a + b i) / den with integers a, b.
            let den = x.re.denom().lcm(x.im.denom());
            let a = x.re.numer() * (&den / x.re.denom());
            let b = x.im.numer() * (&den / x.im.denom());
            let norm = &a * &a + &b * &b;
            let bound = valuation_int(&norm, &pb) as u32;
            let n = DEFAULT_PRECISION.max(bound + 1);
            let modulus = pb.pow(n);
            let r = hensel_sqrt_minus_one(i_mod_p, &pb, n);
            let image = (a + b * r).mod_floor(&modulus);
            let v_num = if image.is_zero() { n as u64 } else { valuation_int(&image, &pb) };
            let v = v_num as i64 - valuation_int(&den, &pb) as i64;
            Ok(Valuation::Finite(Rational::from_integer(BigInt::from(v))))
        }
        _ => Err(Error::PreconditionFailed(format!(
            "branch {branch:?} does not match the splitting of {p}"
        ))),
    }
}

/// Lifts a root of `t^2 + 1` modulo `p` to a root modulo `p^n`.
fn hensel_sqrt_minus_one(r0: u64, p: &BigInt, n: u32) -> BigInt {
    let modulus = p.pow(n);
    let mut r = BigInt::from(r0);
    let mut precision = 1u32;
    while precision < n {
        precision = (precision * 2).min(n);
        let m = p.pow(precision);
        let f = (&r * &r + 1u32).mod_floor(&m);
        let df = (BigInt::from(2u32) * &r).mod_floor(&m);
        let inv = mod_inverse(&df, &m);
        r = (&r - f * inv).mod_floor(&m);
    }
    r.mod_floor(&modulus)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn gi(a: i64, b: i64) -> GaussianRational {
        GaussianRational::new(rat(a, 1), rat(b, 1))
    }

    fn fin(n: i64) -> Valuation {
        Valuation::Finite(rat(n, 1))
    }

    #[test]
    fn valuation_of_p_is_one_on_every_branch() {
        for b in PrimeBranch::split_branches(5).unwrap() {
            assert_eq!(gaussian_valuation(&gi(5, 0), 5, &b).unwrap(), fin(1));
        }
        assert_eq!(gaussian_valuation(&gi(3, 0), 3, &PrimeBranch::Inert).unwrap(), fin(1));
    }

    #[test]
    fn two_plus_i_sits_on_one_prime_above_five() {
        // In Z[i]/(2+i) we have i ≡ -2 ≡ 3, so 2+i vanishes on that branch only.
        let on = gaussian_valuation(&gi(2, 1), 5, &PrimeBranch::Split { i_mod_p: 3 }).unwrap();
        let off = gaussian_valuation(&gi(2, 1), 5, &PrimeBranch::Split { i_mod_p: 2 }).unwrap();
        assert_eq!(on, fin(1));
        assert_eq!(off, fin(0));
    }

    #[test]
    fn units_and_zero() {
        for p in [3u64, 5, 7, 13] {
            let b = PrimeBranch::default_for(p).unwrap();
            assert_eq!(gaussian_valuation(&gi(0, 1), p, &b).unwrap(), fin(0));
            assert_eq!(gaussian_valuation(&gi(0, 0), p, &b).unwrap(), Valuation::Infinite);
        }
        assert!(gaussian_valuation(&gi(1, 1), 2, &PrimeBranch::Inert).is_err());
    }

    #[test]
    fn high_powers_exceed_default_precision() {
        let x = GaussianRational::real(Rational::from_integer(BigInt::from(5).pow(70)));
        let b = PrimeBranch::default_for(5).unwrap();
        assert_eq!(gaussian_valuation(&x, 5, &b).unwrap(), fin(70));
        let y = GaussianRational::real(rat(1, 125));
        assert_eq!(gaussian_valuation(&y, 5, &b).unwrap(), fin(-3));
    }

    #[test]
    fn inert_valuation_of_fraction() {
        let x = GaussianRational::new(rat(7, 3), rat(0, 1));
        assert_eq!(gaussian_valuation(&x, 3, &PrimeBranch::Inert).unwrap(), fin(-1));
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let x = gi(3, -4);
        assert_eq!(x.clone() * x.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
    }
}
