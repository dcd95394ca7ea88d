//! Resultants, discriminants and cyclotomic polynomials.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{Field, Rational};
use super::integer::factorize;
use super::linalg::det_over;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Sylvester-matrix resultant, normalised so that
/// `Res(f, g) = lc(f)^{deg g} * prod_{f(r) = 0} g(r)`.
pub fn resultant<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<F> {
    match (f.degree(), g.degree()) {
        (None, None) => Err(Error::DegenerateInput("resultant of two zero polynomials".into())),
        (None, _) | (_, None) => Ok(F::zero()),
        (Some(m), Some(n)) => {
            let size = m + n;
            let mut rows = vec![vec![F::zero(); size]; size];
            for r in 0..n {
                for k in 0..=m {
                    rows[r][r + k] = f.coeff(m - k);
                }
            }
            for r in 0..m {
                for k in 0..=n {
                    rows[n + r][r + k] = g.coeff(n - k);
                }
            }
            Ok(det_over(rows))
        }
    }
}

/// Discriminant `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
pub fn discriminant<F: Field>(f: &Poly<F>) -> Result<F> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::DegenerateInput("discriminant of a constant".into())),
    };
    let res = resultant(f, &f.derivative())?;
    let signed = if (n * (n - 1) / 2) % 2 == 1 { -res } else { res };
    signed.div(&f.lc())
}

/// Euler's totient.
pub fn euler_phi(k: u64) -> u64 {
    factorize(k).iter().fold(k, |acc, &(p, _)| acc / p * (p - 1))
}

fn divisors(k: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(k) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Exact division of integer polynomials (ascending coefficients) by a
/// monic divisor; panics if the division leaves a remainder.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    let mut q = vec![BigInt::zero(); num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            r[k + j] -= &c * d;
        }
        q[k] = c;
    }
    assert!(r.iter().all(Zero::is_zero), "inexact cyclotomic division");
    q
}

fn cyclotomic_memo(k: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(c) = memo.get(&k) {
        return c.clone();
    }
    let mut num = vec![BigInt::zero(); k as usize + 1];
    num[0] = -BigInt::one();
    num[k as usize] = BigInt::one();
    for d in divisors(k) {
        if d < k {
            let phi_d = cyclotomic_memo(d, memo);
            num = exact_div_monic(&num, &phi_d);
        }
    }
    memo.insert(k, num.clone());
    num
}

/// Integer coefficients (ascending) of the `k`-th cyclotomic polynomial,
/// obtained by dividing `x^k - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_int(k: u64) -> Result<Vec<BigInt>> {
    if k == 0 {
        return Err(Error::DegenerateInput("cyclotomic index 0".into()));
    }
    Ok(cyclotomic_memo(k, &mut HashMap::new()))
}

/// Memoised integer cyclotomic polynomials, for searches over many indices.
#[derive(Default)]
pub struct CyclotomicTable {
    memo: HashMap<u64, Vec<BigInt>>,
}

impl CyclotomicTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Φ_k` as ascending integer coefficients. Computed as
    /// `Φ_{rad(k)}(x^{k / rad(k)})`, the squarefree-radical part being
    /// obtained by iterated exact division.
    pub fn get(&mut self, k: u64) -> Vec<BigInt> {
        let rad: u64 = factorize(k).iter().map(|&(p, _)| p).product();
        let base = cyclotomic_memo(rad, &mut self.memo);
        let step = (k / rad) as usize;
        if step == 1 {
            return base;
        }
        let mut out = vec![BigInt::zero(); (base.len() - 1) * step + 1];
        for (i, c) in base.into_iter().enumerate() {
            out[i * step] = c;
        }
        out
    }
}

/// The `k`-th cyclotomic polynomial over Q.
pub fn cyclotomic(k: u64) -> Result<Poly<Rational>> {
    Ok(Poly::new(cyclotomic_int(k)?.into_iter().map(Rational::from_integer).collect()))
}
