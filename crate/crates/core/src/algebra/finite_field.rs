//! Finite fields `F_{p^r}` realised as `F_p[x] / (m(x))` for a fixed monic
//! irreducible `m`.

use super::integer::{is_prime, mod_pow};
use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;

/// Element of `F_{p^r}`: coordinates in the power basis `1, x, ..., x^{r-1}`.
/// Coordinates beyond the field degree are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FfElem {
    coords: [u32; MAX_DEGREE],
}

impl FfElem {
    pub fn coords(&self) -> &[u32; MAX_DEGREE] {
        &self.coords
    }
}

/// The field `F_p[x]/(modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    r: usize,
    /// Monic modulus, ascending coefficients, length `r + 1`.
    modulus: Vec<u64>,
}

// ---- polynomial helpers over F_p (ascending coefficient vectors) ----

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    poly_rem(prod, m, p)
}

fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    let inv_lc = mod_pow(m[dm], p - 2, p);
    while a.len() > dm {
        let top = a.pop().unwrap();
        if top == 0 {
            continue;
        }
        let c = (top as u128 * inv_lc as u128 % p as u128) as u64;
        let base = a.len() - dm;
        for j in 0..dm {
            let sub = (c as u128 * m[j] as u128 % p as u128) as u64;
            a[base + j] = (a[base + j] + p - sub) % p;
        }
    }
    trim(a)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: `m` is irreducible iff `gcd(x^{p^i} - x, m) = 1` for all
/// `i <= deg(m) / 2`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let r = m.len() - 1;
    if r == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=r / 2 {
        xp = poly_pow_mod(&xp, p, m, p);
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(m, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn poly_pow_mod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(a.to_vec(), m, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, m, p);
        }
        base = poly_mul_mod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

impl FiniteField {
    /// `F_{p^r}` with the deterministic modulus: the first monic irreducible
    /// polynomial when candidates `x^r + c_{r-1} x^{r-1} + ... + c_0` are
    /// ordered lexicographically by `(c_{r-1}, ..., c_0)`.
    pub fn new(p: u64, r: usize) -> Result<Self> {
        Self::nth_standard(p, r, 0)
    }

    /// Like [`FiniteField::new`] but with the `n`-th irreducible modulus in
    /// the same ordering (used to test modulus independence).
    pub fn nth_standard(p: u64, r: usize, n: usize) -> Result<Self> {
        Self::check_params(p, r)?;
        let total = (p as u128).pow(r as u32);
        let mut found = 0;
        let mut idx: u128 = 0;
        while idx < total {
            // digits of idx, most significant digit = c_{r-1}
            let mut m = vec![0u64; r + 1];
            let mut t = idx;
            for k in 0..r {
                m[k] = (t % p as u128) as u64;
                t /= p as u128;
            }
            m[r] = 1;
            if is_irreducible(&m, p) {
                if found == n {
                    return Ok(Self { p, r, modulus: m });
                }
                found += 1;
            }
            idx += 1;
        }
        Err(Error::SearchExhausted(format!("fewer than {} irreducible polynomials", n + 1)))
    }

    /// Field with an explicit modulus (ascending coefficients, monic).
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self> {
        let r = modulus.len().saturating_sub(1);
        Self::check_params(p, r)?;
        if modulus[r] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::DegenerateInput("modulus must be monic and reduced".into()));
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::DegenerateInput("modulus is reducible".into()));
        }
        Ok(Self { p, r, modulus: modulus.to_vec() })
    }

    fn check_params(p: u64, r: usize) -> Result<()> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::DegenerateInput(format!("{p} is not a prime below 2^32")));
        }
        if r == 0 || r > MAX_DEGREE {
            return Err(Error::DegenerateInput(format!("extension degree {r} out of range")));
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.r as u32)
    }

    /// Stable identifier of the modulus, e.g. `"13^2:2,0,1"`.
    pub fn modulus_id(&self) -> String {
        let c: Vec<String> = self.modulus.iter().map(u64::to_string).collect();
        format!("{}^{}:{}", self.p, self.r, c.join(","))
    }

    pub fn zero(&self) -> FfElem {
        FfElem { coords: [0; MAX_DEGREE] }
    }

    pub fn one(&self) -> FfElem {
        self.from_u64(1)
    }

    /// Image of an integer in the prime field.
    pub fn from_u64(&self, n: u64) -> FfElem {
        let mut e = self.zero();
        e.coords[0] = (n % self.p) as u32;
        e
    }

    pub fn from_coords(&self, coords: &[u64]) -> FfElem {
        let mut e = self.zero();
        for (k, &c) in coords.iter().enumerate().take(self.r) {
            e.coords[k] = (c % self.p) as u32;
        }
        e
    }

    /// The generator `x` of the power basis.
    pub fn generator(&self) -> FfElem {
        if self.r == 1 {
            // In F_p the class of x is -m_0.
            return self.from_u64((self.p - self.modulus[0]) % self.p);
        }
        self.from_coords(&[0, 1])
    }

    /// Element with base-`p` digits of `idx` as coordinates.
    pub fn from_index(&self, mut idx: u128) -> FfElem {
        let mut e = self.zero();
        for k in 0..self.r {
            e.coords[k] = (idx % self.p as u128) as u32;
            idx /= self.p as u128;
        }
        e
    }

    pub fn index(&self, e: &FfElem) -> u128 {
        let mut idx: u128 = 0;
        for k in (0..self.r).rev() {
            idx = idx * self.p as u128 + e.coords[k] as u128;
        }
        idx
    }

    /// Advances `e` to the element with the next index (wrapping to zero).
    pub fn increment(&self, e: &mut FfElem) {
        for k in 0..self.r {
            let v = e.coords[k] as u64 + 1;
            if v < self.p {
                e.coords[k] = v as u32;
                return;
            }
            e.coords[k] = 0;
        }
    }

    pub fn is_zero(&self, e: &FfElem) -> bool {
        e.coords[..self.r].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let mut out = self.zero();
        for k in 0..self.r {
            let s = a.coords[k] as u64 + b.coords[k] as u64;
            out.coords[k] = (if s >= self.p { s - self.p } else { s }) as u32;
        }
        out
    }

    pub fn neg(&self, a: &FfElem) -> FfElem {
        let mut out = self.zero();
        for k in 0..self.r {
            let c = a.coords[k] as u64;
            out.coords[k] = (if c == 0 { 0 } else { self.p - c }) as u32;
        }
        out
    }

    pub fn sub(&self, a: &FfElem, b: &FfElem) -> FfElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let p = self.p;
        let r = self.r;
        if r == 1 {
            let mut out = self.zero();
            out.coords[0] = (a.coords[0] as u64 * b.coords[0] as u64 % p) as u32;
            return out;
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..r {
            let x = a.coords[i] as u64;
            if x == 0 {
                continue;
            }
            for j in 0..r {
                prod[i + j] = (prod[i + j] + x * b.coords[j] as u64) % p;
            }
        }
        for k in (r..2 * r - 1).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            for j in 0..r {
                let m = self.modulus[j];
                if m != 0 {
                    prod[k - r + j] = (prod[k - r + j] + t * (p - m)) % p;
                }
            }
        }
        let mut out = self.zero();
        for k in 0..r {
            out.coords[k] = prod[k] as u32;
        }
        out
    }

    pub fn square(&self, a: &FfElem) -> FfElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FfElem, mut e: u128) -> FfElem {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via `a^{q-2}`.
    pub fn inv(&self, a: &FfElem) -> Result<FfElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }
}

/// Quadratic character on `F_q`: 0 at zero, +1 on non-zero squares and -1
/// otherwise, computed as `x^{(q-1)/2}`.
pub fn quadratic_character(field: &FiniteField, x: &FfElem) -> Result<i8> {
    if field.p() == 2 {
        return Err(Error::UnsupportedCharacteristic("quadratic character in characteristic 2".into()));
    }
    if field.is_zero(x) {
        return Ok(0);
    }
    let e = field.pow(x, (field.order() - 1) / 2);
    if e == field.one() {
        Ok(1)
    } else if e == field.from_u64(field.p() - 1) {
        Ok(-1)
    } else {
        Err(Error::Internal("Euler criterion returned neither 1 nor -1".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_examples() {
        let f13 = FiniteField::new(13, 1).unwrap();
        assert_eq!(quadratic_character(&f13, &f13.from_u64(3)).unwrap(), 1);
        assert_eq!(quadratic_character(&f13, &f13.zero()).unwrap(), 0);
        // 2 generates F_13^*
        assert_eq!(quadratic_character(&f13, &f13.from_u64(2)).unwrap(), -1);
        let f2 = FiniteField::new(2, 1).unwrap();
        assert!(quadratic_character(&f2, &f2.one()).is_err());
    }

    #[test]
    fn deterministic_modulus() {
        let f = FiniteField::new(13, 2).unwrap();
        assert_eq!(f.modulus(), &[2, 0, 1]);
        assert_eq!(f.modulus_id(), "13^2:2,0,1");
        assert_eq!(FiniteField::new(3, 3).unwrap().modulus(), &[1, 2, 0, 1]);
        assert!(FiniteField::with_modulus(7, &[1, 0, 1]).is_ok());
        assert!(FiniteField::with_modulus(13, &[1, 0, 1]).is_err());
    }

    #[test]
    fn field_axioms_small() {
        let f = FiniteField::new(5, 3).unwrap();
        let q = f.order();
        for i in 1..q {
            let a = f.from_index(i);
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            assert_eq!(f.index(&a), i);
        }
        // the multiplicative group is cyclic of order q - 1
        let g = f.generator();
        assert_eq!(f.pow(&g, q - 1), f.one());
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(FiniteField::with_modulus(5, &[4, 0, 1]).is_err()); // x^2 - 1
        assert!(FiniteField::with_modulus(4, &[1, 1]).is_err());
    }

    #[test]
    fn increment_walks_all_elements() {
        let f = FiniteField::new(3, 2).unwrap();
        let mut e = f.zero();
        for i in 0..9u128 {
            assert_eq!(f.index(&e), i);
            f.increment(&mut e);
        }
        assert!(f.is_zero(&e));
    }
}
