//! Small integer utilities: primality, factorisation, modular powers, roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Rational;

/// `base^exp mod m` with 128-bit intermediates.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= n` (sieve of Eratosthenes).
pub fn primes_up_to(n: usize) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| k as u64).collect()
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n % q == 0 {
            let mut e = 0;
            while n % q == 0 {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A square root of `-1` modulo the prime `p`, if `p ≡ 1 (mod 4)`.
pub fn sqrt_minus_one_mod(p: u64) -> Option<u64> {
    if p % 4 != 1 {
        return None;
    }
    for a in 2..p {
        if mod_pow(a, (p - 1) / 2, p) == p - 1 {
            return Some(mod_pow(a, (p - 1) / 4, p));
        }
    }
    None
}

/// Exponent of the prime `p` in the non-zero integer `n` (0 for `n = 0`).
pub(crate) fn valuation_int(n: &BigInt, p: &BigInt) -> u64 {
    if n.is_zero() {
        return 0;
    }
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Exact `n`-th root of a non-negative integer, if it exists.
pub fn integer_nth_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.nth_root(n);
    if r.pow(n) == *x {
        Some(r)
    } else {
        None
    }
}

/// The positive rational `w` with `w^4 = v`, if one exists.
pub fn rational_fourth_root(v: &Rational) -> Option<Rational> {
    let n = integer_nth_root(v.numer(), 4)?;
    let d = integer_nth_root(v.denom(), 4)?;
    Some(Rational::new(n, d))
}

/// Squarefree part of a non-zero integer, keeping its sign
/// (e.g. `452 -> 113`, `-12 -> -3`). Uses trial division.
pub fn squarefree_kernel(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "squarefree kernel of zero");
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut q = BigInt::from(2);
    while &q * &q <= m {
        let mut e = 0u32;
        loop {
            let (d, r) = m.div_rem(&q);
            if !r.is_zero() {
                break;
            }
            m = d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &q;
        }
        q += 1;
    }
    sign * out * m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn primality_matches_sieve() {
        let sieve = primes_up_to(2000);
        for n in 0..2000u64 {
            assert_eq!(is_prime(n), sieve.binary_search(&n).is_ok(), "n = {n}");
        }
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(4_294_967_297));
    }

    #[test]
    fn sqrt_of_minus_one() {
        for p in primes_up_to(500).into_iter().filter(|p| p % 4 == 1) {
            let r = sqrt_minus_one_mod(p).unwrap();
            assert_eq!((r * r + 1) % p, 0);
        }
        assert!(sqrt_minus_one_mod(7).is_none());
    }

    #[test]
    fn kernels() {
        assert_eq!(squarefree_kernel(&BigInt::from(452)), BigInt::from(113));
        assert_eq!(squarefree_kernel(&BigInt::from(656)), BigInt::from(41));
        assert_eq!(squarefree_kernel(&BigInt::from(-12)), BigInt::from(-3));
        assert_eq!(squarefree_kernel(&BigInt::from(1)), BigInt::from(1));
    }

    #[test]
    fn fourth_roots() {
        assert_eq!(rational_fourth_root(&rat(81, 16)), Some(rat(3, 2)));
        assert_eq!(rational_fourth_root(&rat(16, 1)), Some(rat(2, 1)));
        assert_eq!(rational_fourth_root(&rat(-16, 1)), None);
        assert_eq!(rational_fourth_root(&rat(8, 1)), None);
        assert_eq!(rational_fourth_root(&rat(0, 1)), Some(rat(0, 1)));
    }

    #[test]
    fn factorisation() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(factorize(1), vec![]);
    }
}
