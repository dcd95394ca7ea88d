//! Frobenius data of a fibre: point counts over `F_{p^r}`, the characteristic
//! polynomial `c_p` of Frobenius (optionally as a square `g_p^2`), its tensor
//! square, the cyclotomic part of the tensor square and the resulting
//! endomorphism dimensions.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    det_bareiss, discriminant, euler_phi, is_prime, rational_poly_roots, CyclotomicTable, FfElem,
    FiniteField, Poly, Rational,
};
use crate::error::{Error, Result};
use crate::family::{build_family_poly, FamilyParams};

/// Default counting budget: at most `2^32` field elements per count.
pub const DEFAULT_BUDGET: u128 = 1 << 32;

/// Fields up to this size use a precomputed table of squares.
const SQUARE_TABLE_LIMIT: u128 = 1 << 27;

/// Elements per parallel work unit.
const CHUNK: u128 = 1 << 14;

/// How to fit the L-polynomial from point counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ansatz {
    /// Fit all of `c_p` from counts at `r = 1..g`.
    Generic,
    /// Assume `c_p = g_p^2` and fit `g_p` from counts at `r = 1..g/2`.
    Square,
}

/// Everything computed about Frobenius at one prime.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LPolynomialReport {
    pub p: u64,
    pub g: usize,
    pub counts: BTreeMap<usize, u64>,
    #[serde(serialize_with = "crate::algebra::ser::poly")]
    pub c_p: Poly<Rational>,
    #[serde(serialize_with = "crate::algebra::ser::option_poly")]
    pub g_p: Option<Poly<Rational>>,
    /// Sign in `g_{g-j} = ε p^{g/2-j} g_j` for square fits.
    pub epsilon: Option<i8>,
    /// Extension degrees whose counts were used only as checks.
    pub verified_surplus: Vec<usize>,
    pub ordinary: bool,
    /// Orders `k_i` of the cyclotomic factors `Φ_{k_i}(pT)`, ascending.
    pub tensor_kset: Vec<u64>,
    /// Non-cyclotomic part `h(U)` of the tensor square, with `U = pT`.
    #[serde(serialize_with = "crate::algebra::ser::poly")]
    pub h: Poly<Rational>,
    pub endo_dims: BTreeMap<usize, u64>,
    pub endo_field_degree: u64,
}

/// Result of fitting the L-polynomial to counts.
#[derive(Clone, Debug, PartialEq)]
pub struct LFit {
    pub c_p: Poly<Rational>,
    pub g_p: Option<Poly<Rational>>,
    pub epsilon: Option<i8>,
    pub verified_surplus: Vec<usize>,
}

fn to_big(q: &Rational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

fn reduce_mod_p(q: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num = q.numer().mod_floor(&pb).to_u64()?;
    let den = den.to_u64()?;
    let inv = crate::algebra::mod_pow(den, p - 2, p);
    Some(((num as u128 * inv as u128) % p as u128) as u64)
}

/// Check that `y^2 = f(x)` has good reduction at `p`: `p` odd, coefficients
/// `p`-integral, leading coefficient and discriminant `p`-adic units.
pub fn check_good_reduction(f: &Poly<Rational>, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::PreconditionFailed(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::BadPrime(2));
    }
    let pb = BigInt::from(p);
    if f.coeffs().iter().any(|c| c.denom().is_multiple_of(&pb)) {
        return Err(Error::BadPrime(p));
    }
    if f.lc().numer().is_multiple_of(&pb) {
        return Err(Error::BadPrime(p));
    }
    let disc = discriminant(f)?;
    if disc.numer().is_multiple_of(&pb) || disc.denom().is_multiple_of(&pb) {
        return Err(Error::BadPrime(p));
    }
    Ok(())
}

/// Reduction of `f` modulo `p` as prime-field elements of `field`.
fn reduce_poly(f: &Poly<Rational>, field: &FiniteField) -> Result<Vec<FfElem>> {
    f.coeffs()
        .iter()
        .map(|c| {
            reduce_mod_p(c, field.p())
                .map(|v| field.from_u64(v))
                .ok_or(Error::BadPrime(field.p()))
        })
        .collect()
}

/// Evaluator for `f` over a finite field; odd `f = x F(x^2)` is evaluated
/// through `F` at `x^2`.
struct Evaluator {
    coeffs: Vec<FfElem>,
    odd: bool,
}

impl Evaluator {
    fn new(f: &[FfElem], field: &FiniteField) -> Self {
        let odd = f.iter().step_by(2).all(|c| field.is_zero(c));
        let coeffs = if odd { f.iter().skip(1).step_by(2).copied().collect() } else { f.to_vec() };
        Self { coeffs, odd }
    }

    fn eval(&self, field: &FiniteField, x: &FfElem) -> FfElem {
        let t = if self.odd { field.square(x) } else { *x };
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = field.add(&field.mul(&acc, &t), c);
        }
        if self.odd {
            field.mul(&acc, x)
        } else {
            acc
        }
    }
}

fn square_table(field: &FiniteField) -> Vec<u64> {
    let q = field.order();
    let words: Vec<AtomicU64> = (0..q.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let chunks = q.div_ceil(CHUNK);
    (0..chunks).into_par_iter().for_each(|c| {
        let start = c * CHUNK;
        let end = (start + CHUNK).min(q);
        let mut y = field.from_index(start);
        for _ in start..end {
            let idx = field.index(&field.square(&y)) as usize;
            words[idx / 64].fetch_or(1 << (idx % 64), Ordering::Relaxed);
            field.increment(&mut y);
        }
    });
    words.into_iter().map(AtomicU64::into_inner).collect()
}

/// Projective point count of `y^2 = f(x)` over the given field: one point at
/// infinity plus `1 + χ(f(x))` points over each `x`.
pub fn count_points_in_field(f: &Poly<Rational>, field: &FiniteField) -> Result<u64> {
    let reduced = reduce_poly(f, field)?;
    let ev = Evaluator::new(&reduced, field);
    let q = field.order();
    let table = (q <= SQUARE_TABLE_LIMIT).then(|| square_table(field));
    let half = (q - 1) / 2;
    let chi = |v: &FfElem| -> i64 {
        if field.is_zero(v) {
            return 0;
        }
        let is_square = match &table {
            Some(t) => {
                let idx = field.index(v) as usize;
                t[idx / 64] >> (idx % 64) & 1 == 1
            }
            None => field.pow(v, half) == field.one(),
        };
        if is_square {
            1
        } else {
            -1
        }
    };
    let chunks = q.div_ceil(CHUNK);
    let sum: i64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(q);
            let mut x = field.from_index(start);
            let mut s = 0i64;
            for _ in start..end {
                s += chi(&ev.eval(field, &x));
                field.increment(&mut x);
            }
            s
        })
        .sum();
    let count = q as i128 + 1 + sum as i128;
    Ok(count as u64)
}

/// `#C(F_{p^r})` for a fibre with rational model, using the standard modulus.
pub fn count_points(params: &FamilyParams, p: u64, r: usize, budget: u128) -> Result<u64> {
    count_points_with_modulus(params, p, r, budget, 0)
}

/// As [`count_points`] but over `F_p[x]/(m)` with `m` the `n`-th monic
/// irreducible in the standard order.
pub fn count_points_with_modulus(
    params: &FamilyParams,
    p: u64,
    r: usize,
    budget: u128,
    n: usize,
) -> Result<u64> {
    let f = rational_model(params)?;
    check_good_reduction(&f, p)?;
    if r == 0 {
        return Err(Error::PreconditionFailed("extension degree must be >= 1".into()));
    }
    let size = (p as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let field = FiniteField::nth_standard(p, r, n)?;
    let count = count_points_in_field(&f, &field)?;
    let deviation = (count as f64 - size as f64 - 1.0).abs();
    let bound = 2.0 * params.genus() as f64 * (size as f64).sqrt();
    if deviation > bound + 0.5 {
        return Err(Error::Internal(format!("count {count} over F_{p}^{r} violates the Weil bound")));
    }
    Ok(count)
}

/// The model polynomial over Q; fibres with non-rational models are unsupported.
pub fn rational_model(params: &FamilyParams) -> Result<Poly<Rational>> {
    build_family_poly(params)?
        .rational_f()
        .ok_or_else(|| Error::Unsupported("point counting needs a model over Q".into()))
}

/// Identifier of the modulus used by [`count_points`], for cache keys.
pub fn count_modulus_id(p: u64, r: usize) -> Result<String> {
    Ok(FiniteField::new(p, r)?.modulus_id())
}

/// Power sums `s_1..s_n` of the inverse roots of `c(T) = 1 + c_1 T + ...`.
pub fn power_sums(c: &Poly<Rational>, n: usize) -> Vec<Rational> {
    let mut s: Vec<Rational> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut v = -Rational::from_integer(BigInt::from(k)) * c.coeff(k);
        for i in 1..k {
            v -= &s[i - 1] * c.coeff(k - i);
        }
        s.push(v);
    }
    s
}

/// Coefficients `1, c_1, ..., c_n` from power sums via Newton's identities
/// `k c_k = -sum_{i=1}^k s_i c_{k-i}`; integrality is checked.
fn newton_coefficients(s: &[Rational]) -> Result<Vec<Rational>> {
    let mut c = vec![Rational::one()];
    for k in 1..=s.len() {
        let mut acc = Rational::zero();
        for i in 1..=k {
            acc += &s[i - 1] * &c[k - i];
        }
        let ck = -acc / Rational::from_integer(BigInt::from(k));
        if !ck.is_integer() {
            return Err(Error::AnsatzViolated(format!("coefficient c_{k} = {ck} is not an integer")));
        }
        c.push(ck);
    }
    Ok(c)
}

fn frobenius_trace(p: u64, r: usize, n: u64) -> Rational {
    let q = BigInt::from(p).pow(r as u32);
    Rational::from_integer(q + 1 - BigInt::from(n))
}

/// Complete `1, c_1..c_m` to degree `2m` with `c_{2m-j} = ε p^{m-j} c_j`.
fn complete_palindrome(low: &[Rational], p: u64, eps: i64) -> Poly<Rational> {
    let m = low.len() - 1;
    let mut c = vec![Rational::zero(); 2 * m + 1];
    for (j, v) in low.iter().enumerate() {
        c[j] = v.clone();
    }
    for j in 0..m {
        let pp = Rational::from_integer(BigInt::from(p).pow((m - j) as u32) * eps);
        c[2 * m - j] = pp * &low[j];
    }
    Poly::new(c)
}

fn surplus_matches(c: &Poly<Rational>, counts: &BTreeMap<usize, u64>, p: u64, from: usize) -> bool {
    let Some(&max_r) = counts.keys().next_back() else { return true };
    if max_r < from {
        return true;
    }
    let s = power_sums(c, max_r);
    counts.range(from..).all(|(&r, &n)| s[r - 1] == frobenius_trace(p, r, n))
}

/// Fit the L-polynomial of a genus-`g` curve to point counts.
pub fn fit_l_polynomial(
    counts: &BTreeMap<usize, u64>,
    p: u64,
    g: usize,
    ansatz: Ansatz,
) -> Result<LFit> {
    let needed = match ansatz {
        Ansatz::Generic => g,
        Ansatz::Square => {
            if g % 2 == 1 {
                return Err(Error::PreconditionFailed("square ansatz needs even genus".into()));
            }
            g / 2
        }
    };
    for r in 1..=needed {
        if !counts.contains_key(&r) {
            return Err(Error::PreconditionFailed(format!("missing count for r = {r}")));
        }
    }
    let traces: Vec<Rational> = (1..=needed).map(|r| frobenius_trace(p, r, counts[&r])).collect();
    let surplus: Vec<usize> = counts.keys().copied().filter(|&r| r > needed).collect();
    match ansatz {
        Ansatz::Generic => {
            let low = newton_coefficients(&traces)?;
            let c = complete_palindrome(&low, p, 1);
            if !surplus_matches(&c, counts, p, needed + 1) {
                return Err(Error::AnsatzViolated("surplus count disagrees with fitted c_p".into()));
            }
            Ok(LFit { c_p: c, g_p: None, epsilon: None, verified_surplus: surplus })
        }
        Ansatz::Square => {
            let two = Rational::from_integer(BigInt::from(2));
            let halves: Vec<Rational> = traces.iter().map(|t| t / &two).collect();
            if halves.iter().any(|t| !t.is_integer()) {
                return Err(Error::AnsatzViolated("odd trace is incompatible with c_p = g_p^2".into()));
            }
            let low = newton_coefficients(&halves)?;
            let middle_zero = low[needed].is_zero();
            let signs: &[i64] = if middle_zero { &[1, -1] } else { &[1] };
            let mut fits: Vec<(i64, Poly<Rational>)> = Vec::new();
            for &eps in signs {
                let gp = complete_palindrome(&low, p, eps);
                let c = &gp * &gp;
                if surplus_matches(&c, counts, p, needed + 1) {
                    fits.push((eps, gp));
                }
            }
            match fits.len() {
                0 => Err(Error::AnsatzViolated("surplus count disagrees with every square fit".into())),
                1 => {
                    let (eps, gp) = fits.pop().unwrap();
                    Ok(LFit {
                        c_p: &gp * &gp,
                        g_p: Some(gp),
                        epsilon: Some(eps as i8),
                        verified_surplus: surplus,
                    })
                }
                _ => Err(Error::PreconditionFailed(
                    "the sign of the upper half of g_p is not determined; supply a surplus count".into(),
                )),
            }
        }
    }
}

/// Tensor square `Res_z(c(z), z^{2g} c(T/z))`, computed by evaluating the
/// resultant at `4g^2 + 1` integer points and interpolating.
pub fn tensor_square(c: &Poly<Rational>, g: usize) -> Result<Poly<Rational>> {
    let n = 2 * g;
    if c.degree() != Some(n) {
        return Err(Error::PreconditionFailed(format!("tensor square expects degree {n}")));
    }
    let ci: Vec<BigInt> = c
        .coeffs()
        .iter()
        .map(|q| to_big(q).ok_or_else(|| Error::PreconditionFailed("non-integer coefficient".into())))
        .collect::<Result<_>>()?;
    let big_n = n * n;
    let values: Vec<BigInt> = (0..=big_n)
        .into_par_iter()
        .map(|t| {
            let t = BigInt::from(t);
            // h_t(z) = sum_j c_j t^j z^{n-j}, ascending in z.
            let mut h = vec![BigInt::zero(); n + 1];
            let mut tp = BigInt::one();
            for j in 0..=n {
                h[n - j] = &ci[j] * &tp;
                tp *= &t;
            }
            let size = 2 * n;
            let mut rows = vec![vec![BigInt::zero(); size]; size];
            for r in 0..n {
                for k in 0..=n {
                    rows[r][r + k] = ci[n - k].clone();
                    rows[n + r][r + k] = h[n - k].clone();
                }
            }
            det_bareiss(rows)
        })
        .collect();
    // Newton divided differences on nodes 0..N.
    let mut dd: Vec<Rational> = values.into_iter().map(Rational::from_integer).collect();
    for level in 1..=big_n {
        for i in (level..=big_n).rev() {
            let diff = &dd[i] - &dd[i - 1];
            dd[i] = diff / Rational::from_integer(BigInt::from(level));
        }
    }
    let mut poly = Poly::constant(dd[big_n].clone());
    for i in (0..big_n).rev() {
        let factor = Poly::new(vec![-Rational::from_integer(BigInt::from(i)), Rational::one()]);
        poly = &(&poly * &factor) + &Poly::constant(dd[i].clone());
    }
    if poly.coeff(0) != Rational::one() || poly.coeffs().iter().any(|q| !q.is_integer()) {
        return Err(Error::Internal("tensor square is not an integer polynomial with constant 1".into()));
    }
    Ok(poly)
}

/// Inverse roots of `c_p`, computed from its squarefree part.
pub fn inverse_roots(c: &Poly<Rational>) -> Result<Vec<num_complex::Complex64>> {
    let d = c.gcd(&c.derivative());
    let sqfree = c.exact_div(&d)?.ok_or_else(|| Error::Internal("gcd does not divide".into()))?;
    let n = sqfree.degree().unwrap_or(0);
    Ok(rational_poly_roots(&sqfree.reversed(n)))
}

fn sieve_phi(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for i in 2..=limit {
        if phi[i] == i as u64 {
            for j in (i..=limit).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    phi
}

const WITNESS_PRIME: u64 = (1 << 61) - 1;

fn reduce_big(v: &BigInt) -> u64 {
    v.mod_floor(&BigInt::from(WITNESS_PRIME)).to_u64().unwrap()
}

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % WITNESS_PRIME as u128) as u64
}

/// Remainder modulo the witness prime of `num` divided by monic `den`.
fn remainder_is_zero_mod_witness(num: &[u64], den: &[u64]) -> bool {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    for k in (0..=r.len() - 1 - dd).rev() {
        let c = r[k + dd];
        if c == 0 {
            continue;
        }
        for (j, &d) in den.iter().enumerate() {
            r[k + j] = (r[k + j] + WITNESS_PRIME - mulmod(c, d)) % WITNESS_PRIME;
        }
    }
    r.iter().all(|&v| v == 0)
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
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
    r.iter().all(Zero::is_zero).then_some(q)
}

/// Split `ct(T) = h(pT) prod_i Φ_{k_i}(pT)`. Returns the ascending multiset
/// `{k_i}` and `h(U)`. Every `k` with `φ(k)` not exceeding the degree is
/// tried; a nonzero remainder modulo a large prime certifies that `Φ_k` does
/// not divide, and every division that is performed is exact over Z.
pub fn cyclotomic_factorization(ct: &Poly<Rational>, p: u64) -> Result<(Vec<u64>, Poly<Rational>)> {
    let n = ct.degree().ok_or_else(|| Error::DegenerateInput("zero polynomial".into()))?;
    let pb = BigInt::from(p);
    // H(U) = p^n ct(U / p).
    let mut h: Vec<BigInt> = ct
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, q)| {
            to_big(q)
                .map(|v| v * pb.pow((n - j) as u32))
                .ok_or_else(|| Error::PreconditionFailed("non-integer coefficient".into()))
        })
        .collect::<Result<_>>()?;
    while h.last().is_some_and(Zero::is_zero) {
        h.pop();
    }
    let limit = 2 * n * n + 2;
    let phi = sieve_phi(limit);
    let mut table = CyclotomicTable::new();
    let mut kset = Vec::new();
    let mut h_mod: Vec<u64> = h.iter().map(reduce_big).collect();
    for k in 1..=limit {
        if phi[k] as usize > h.len().saturating_sub(1) {
            continue;
        }
        let phi_k = table.get(k as u64);
        let phi_k_mod: Vec<u64> = phi_k.iter().map(reduce_big).collect();
        while h.len() > phi_k.len() - 1 && remainder_is_zero_mod_witness(&h_mod, &phi_k_mod) {
            match divide_monic(&h, &phi_k) {
                Some(q) => {
                    h = q;
                    h_mod = h.iter().map(reduce_big).collect();
                    kset.push(k as u64);
                }
                None => break,
            }
        }
    }
    let degree_sum: u64 = kset.iter().map(|&k| euler_phi(k)).sum::<u64>() + (h.len() as u64 - 1);
    if degree_sum != n as u64 {
        return Err(Error::Internal("cyclotomic factor degrees do not add up".into()));
    }
    let scale = Rational::from_integer(pb.pow(n as u32));
    let h_poly = Poly::new(h.into_iter().map(|v| Rational::from_integer(v) / &scale).collect());
    Ok((kset, h_poly))
}

/// `dim End(A_{F_{p^r}}) = sum_{k_i | r} φ(k_i)` for `r = 1..r_max`, and the
/// degree `lcm(k_i)` of the endomorphism field.
pub fn endo_dimension_report(kset: &[u64], r_max: usize) -> Result<(BTreeMap<usize, u64>, u64)> {
    if kset.is_empty() {
        return Err(Error::DegenerateInput("empty cyclotomic multiset".into()));
    }
    let dims = (1..=r_max)
        .map(|r| (r, kset.iter().filter(|&&k| r as u64 % k == 0).map(|&k| euler_phi(k)).sum()))
        .collect();
    let k = kset.iter().fold(1u64, |acc, &k| acc.lcm(&k));
    Ok((dims, k))
}

/// True iff the middle coefficient of `g_p` is prime to `p`.
pub fn ordinarity_check(g_p: &Poly<Rational>, p: u64) -> Result<bool> {
    let deg = g_p.degree().unwrap_or(0);
    if deg % 2 == 1 {
        return Err(Error::DegenerateInput("odd-degree polynomial".into()));
    }
    let mid = g_p.coeff(deg / 2);
    let mid = to_big(&mid).ok_or_else(|| Error::PreconditionFailed("non-integer coefficient".into()))?;
    Ok(!mid.is_multiple_of(&BigInt::from(p)))
}

/// Check `c(0) = 1`, the functional equation and `|α| = √p` for all inverse roots.
pub fn check_weil_shape(c: &Poly<Rational>, p: u64, g: usize) -> Result<()> {
    if c.degree() != Some(2 * g) || c.coeff(0) != Rational::one() {
        return Err(Error::WeilShapeViolated("degree or constant term".into()));
    }
    for j in 0..=2 * g {
        let expected = if j <= g {
            c.coeff(j)
        } else {
            c.coeff(2 * g - j) * Rational::from_integer(BigInt::from(p).pow((j - g) as u32))
        };
        if c.coeff(j) != expected {
            return Err(Error::WeilShapeViolated(format!("functional equation fails at T^{j}")));
        }
    }
    let sqrt_p = (p as f64).sqrt();
    for a in inverse_roots(c)? {
        if (a.norm() - sqrt_p).abs() >= 1e-9 {
            return Err(Error::WeilShapeViolated(format!("inverse root of absolute value {}", a.norm())));
        }
    }
    Ok(())
}

fn default_r_max(k: u64) -> usize {
    (k as usize).max(12)
}

/// Extension degrees whose counts a report needs: the fitting range and, if
/// within budget, one surplus degree.
pub fn required_degrees(p: u64, g: usize, ansatz: Ansatz, budget: u128) -> Result<Vec<usize>> {
    let needed = match ansatz {
        Ansatz::Generic => g,
        Ansatz::Square => g / 2,
    };
    let size = |r: usize| (p as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if size(needed) > budget {
        return Err(Error::BudgetExceeded { size: size(needed), budget });
    }
    let mut rs: Vec<usize> = (1..=needed).collect();
    if size(needed + 1) <= budget {
        rs.push(needed + 1);
    }
    Ok(rs)
}

/// Build the full report from a count provider (`r -> #C(F_{p^r})`).
pub fn l_polynomial_report_with(
    g: usize,
    p: u64,
    ansatz: Ansatz,
    budget: u128,
    counter: &mut dyn FnMut(usize) -> Result<u64>,
) -> Result<LPolynomialReport> {
    let mut counts = BTreeMap::new();
    for r in required_degrees(p, g, ansatz, budget)? {
        counts.insert(r, counter(r)?);
    }
    let fit = fit_l_polynomial(&counts, p, g, ansatz)?;
    check_weil_shape(&fit.c_p, p, g)?;
    let ordinary = ordinarity_check(fit.g_p.as_ref().unwrap_or(&fit.c_p), p)?;
    let ct = tensor_square(&fit.c_p, g)?;
    let (tensor_kset, h) = cyclotomic_factorization(&ct, p)?;
    let (endo_dims, endo_field_degree) = if tensor_kset.is_empty() {
        (BTreeMap::new(), 0)
    } else {
        let (_, k) = endo_dimension_report(&tensor_kset, 1)?;
        endo_dimension_report(&tensor_kset, default_r_max(k))?
    };
    Ok(LPolynomialReport {
        p,
        g,
        counts,
        c_p: fit.c_p,
        g_p: fit.g_p,
        epsilon: fit.epsilon,
        verified_surplus: fit.verified_surplus,
        ordinary,
        tensor_kset,
        h,
        endo_dims,
        endo_field_degree,
    })
}

/// Build the full report, counting points directly.
pub fn l_polynomial_report(
    params: &FamilyParams,
    p: u64,
    ansatz: Ansatz,
    budget: u128,
) -> Result<LPolynomialReport> {
    check_good_reduction(&rational_model(params)?, p)?;
    l_polynomial_report_with(params.genus(), p, ansatz, budget, &mut |r| {
        count_points(params, p, r, budget)
    })
}

/// Integer coefficients of a polynomial known to be integral.
pub fn integer_coefficients(f: &Poly<Rational>) -> Result<Vec<BigInt>> {
    f.coeffs()
        .iter()
        .map(|q| to_big(q).ok_or_else(|| Error::Internal(format!("non-integer coefficient {q}"))))
        .collect()
}

/// Whether every coefficient satisfies `|c_j| <= binom(2g, j) p^{j/2}`.
pub fn within_weil_coefficient_bounds(c: &Poly<Rational>, p: u64, g: usize) -> bool {
    let n = 2 * g;
    let mut binom = BigInt::one();
    let sqrt_p = (p as f64).sqrt();
    for j in 0..=n {
        if j > 0 {
            binom = binom * BigInt::from(n - j + 1) / BigInt::from(j);
        }
        let bound = binom.to_f64().unwrap() * sqrt_p.powi(j as i32);
        let v = c.coeff(j).to_f64().unwrap_or(f64::INFINITY).abs();
        if v > bound * (1.0 + 1e-12) + 0.5 {
            return false;
        }
    }
    true
}
