//! The similitude character ω at split primes, candidate quadratic
//! extensions of Q(i) for the connected monodromy field, and certificates that
//! two Frobenius fields share no subfield beyond Q.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    discriminant, factorize, mod_pow, primes_up_to, rational_poly_roots, sqrt_minus_one_mod,
    squarefree_kernel, Poly, Rational,
};
use crate::error::{Error, Result};
use crate::frobenius::{integer_coefficients, LPolynomialReport};

/// ω(Frob_p) together with the polynomial it was read from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaDatum {
    pub p: u64,
    pub omega: i8,
    #[serde(serialize_with = "crate::algebra::ser::poly")]
    pub source_g_p: Poly<Rational>,
}

/// `ω(Frob_p)`: the sign of the `T^g` coefficient of `g_p` relative to `p^{g/2}`.
pub fn omega_of_frobenius(g_p: &Poly<Rational>, p: u64, g: usize) -> Result<i8> {
    if p % 4 != 1 {
        return Err(Error::PreconditionFailed(format!("ω is only read at primes p ≡ 1 mod 4, got {p}")));
    }
    if g % 2 == 1 || g_p.degree() != Some(g) || g_p.coeff(0) != Rational::one() {
        return Err(Error::PreconditionFailed("g_p must have degree g (even) and constant term 1".into()));
    }
    let top = g_p.coeff(g);
    let pg = Rational::from_integer(BigInt::from(p).pow((g / 2) as u32));
    if top == pg {
        Ok(1)
    } else if top == -pg {
        Ok(-1)
    } else {
        Err(Error::WeilShapeViolated(format!("T^{g} coefficient {top} is not ±p^{}", g / 2)))
    }
}

/// ω from a square-ansatz Frobenius report.
pub fn omega_from_report(report: &LPolynomialReport) -> Result<OmegaDatum> {
    let g_p = report
        .g_p
        .clone()
        .ok_or_else(|| Error::PreconditionFailed("ω needs a square-ansatz report".into()))?;
    let omega = omega_of_frobenius(&g_p, report.p, report.g)?;
    Ok(OmegaDatum { p: report.p, omega, source_g_p: g_p })
}

/// A quadratic extension `Q(i, √β)` of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CandidateField {
    /// Class of β modulo squares, e.g. `"i"`, `"3"`, `"3i"`.
    pub beta_class: String,
    pub galois_over_q: bool,
    /// For Galois classes, `β = n · i^e` with `n` squarefree.
    pub rational_part: Option<u64>,
    pub i_exponent: Option<u8>,
}

impl CandidateField {
    fn galois(n: u64, e: u8) -> Self {
        let beta_class = match (n, e) {
            (1, 1) => "i".to_string(),
            (n, 0) => n.to_string(),
            (n, _) => format!("{n}i"),
        };
        Self { beta_class, galois_over_q: true, rational_part: Some(n), i_exponent: Some(e) }
    }

    /// Human-readable field name.
    pub fn name(&self) -> String {
        match (self.rational_part, self.i_exponent) {
            (Some(1), Some(1)) => "Q(zeta8)".into(),
            (Some(n), Some(0)) => format!("Q(i,sqrt({n}))"),
            (Some(n), Some(_)) => format!("Q(i,sqrt({n}i))"),
            _ => format!("Q(i,sqrt({}))", self.beta_class),
        }
    }

    /// Minimal polynomial over Q of a primitive element of a Galois candidate:
    /// `(x^2 + 1)(x^2 - n)` or `x^4 + n^2`.
    pub fn defining_polynomials(&self) -> Option<Vec<Poly<Rational>>> {
        let n = self.rational_part? as i64;
        Some(match self.i_exponent? {
            0 => vec![Poly::from_i64(&[1, 0, 1]), Poly::from_i64(&[-n, 0, 1])],
            _ => vec![Poly::from_i64(&[n * n, 0, 0, 0, 1])],
        })
    }
}

/// A generator of `Q(i)^× / squares` used in the enumeration.
#[derive(Clone, Debug)]
struct Generator {
    name: String,
    /// Index of the generator its complex conjugate equals modulo squares,
    /// together with whether an extra factor `i` appears.
    conj_index: usize,
    conj_extra_i: bool,
    /// Rational prime below, for inert or split primes.
    prime: Option<u64>,
}

fn gaussian_prime_above(l: u64) -> (i64, i64) {
    for a in 1..l as i64 {
        let b2 = l as i64 - a * a;
        if b2 <= 0 {
            break;
        }
        let b = (b2 as f64).sqrt().round() as i64;
        if b * b == b2 && a % 2 == 1 {
            return (a, b);
        }
    }
    unreachable!("primes 1 mod 4 are sums of two squares")
}

fn generators(bad_primes: &BTreeSet<u64>) -> Vec<Generator> {
    let mut gens = vec![
        Generator { name: "i".into(), conj_index: 0, conj_extra_i: false, prime: None },
        // conj(1 + i) = 1 - i = -i(1 + i), and -1 is a square.
        Generator { name: "(1+i)".into(), conj_index: 1, conj_extra_i: true, prime: None },
    ];
    for &l in bad_primes.iter().filter(|&&l| l != 2) {
        if l % 4 == 3 {
            let k = gens.len();
            gens.push(Generator { name: l.to_string(), conj_index: k, conj_extra_i: false, prime: Some(l) });
        } else {
            let (a, b) = gaussian_prime_above(l);
            let k = gens.len();
            gens.push(Generator {
                name: format!("({a}+{b}i)"),
                conj_index: k + 1,
                conj_extra_i: false,
                prime: Some(l),
            });
            gens.push(Generator {
                name: format!("({a}-{b}i)"),
                conj_index: k,
                conj_extra_i: false,
                prime: Some(l),
            });
        }
    }
    gens
}

fn conjugate_class(v: &[bool], gens: &[Generator]) -> Vec<bool> {
    let mut out = vec![false; v.len()];
    for (k, &bit) in v.iter().enumerate() {
        if bit {
            out[gens[k].conj_index] ^= true;
            if gens[k].conj_extra_i {
                out[0] ^= true;
            }
        }
    }
    out
}

/// Every nonzero class of `⟨i, 1+i, odd bad primes⟩` modulo squares, with
/// its Galois-over-Q flag.
pub fn all_quadratic_classes(bad_primes: &BTreeSet<u64>) -> Vec<CandidateField> {
    let gens = generators(bad_primes);
    let n = gens.len();
    let mut out = Vec::new();
    for mask in 1u64..(1 << n) {
        let v: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
        let galois = conjugate_class(&v, &gens) == v;
        if galois {
            // Fixed classes contain no (1+i) and split primes in conjugate pairs.
            let mut rational = 1u64;
            let mut seen = BTreeSet::new();
            for (k, g) in gens.iter().enumerate().skip(2) {
                if v[k] && seen.insert(g.prime.unwrap()) {
                    rational *= g.prime.unwrap();
                }
            }
            out.push(CandidateField::galois(rational, v[0] as u8));
        } else {
            let tag: Vec<&str> = gens.iter().zip(&v).filter(|(_, &b)| b).map(|(g, _)| g.name.as_str()).collect();
            out.push(CandidateField {
                beta_class: tag.join("*"),
                galois_over_q: false,
                rational_part: None,
                i_exponent: None,
            });
        }
    }
    out.sort();
    out
}

/// Galois-over-Q quadratic extensions `Q(i, √β)` with `β` built from `i`,
/// `1+i` and the odd bad primes, ordered by `(n, e)` for `β = n i^e`.
pub fn candidate_fields(bad_primes: &BTreeSet<u64>) -> Vec<CandidateField> {
    let mut out: Vec<CandidateField> =
        all_quadratic_classes(bad_primes).into_iter().filter(|c| c.galois_over_q).collect();
    out.sort_by_key(|c| (c.rational_part, c.i_exponent));
    out.dedup();
    out
}

fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        0
    } else if mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Whether `p` splits completely in a Galois candidate `Q(i, √β)`.
pub fn splits_completely(p: u64, field: &CandidateField) -> Result<bool> {
    let (Some(n), Some(e)) = (field.rational_part, field.i_exponent) else {
        return Err(Error::PreconditionFailed(format!("{} is not Galois over Q", field.beta_class)));
    };
    if p == 2 || n % p == 0 {
        return Err(Error::RamifiedPrime(p));
    }
    if p % 4 != 1 {
        return Ok(false);
    }
    let s = sqrt_minus_one_mod(p).ok_or_else(|| Error::Internal(format!("no square root of -1 mod {p}")))?;
    let beta = if e == 1 { ((n % p) as u128 * s as u128 % p as u128) as u64 } else { n % p };
    Ok(legendre(beta, p) == 1)
}

/// Why a candidate was removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    pub field: String,
    pub p: u64,
    pub omega: i8,
    pub splits: bool,
}

/// Outcome of the identification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Identification {
    Field(CandidateField),
    Inconclusive(Vec<CandidateField>),
    NoCandidate,
}

/// Full verdict with its evidence trail.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonodromyVerdict {
    pub data: Vec<OmegaDatum>,
    pub candidates: Vec<CandidateField>,
    pub identified: Identification,
    pub eliminations: Vec<Elimination>,
    pub center_certificate: Option<CenterCertificate>,
}

/// Keep the candidates `L` with `ω(Frob_p) = +1` exactly when `p` splits
/// completely in `L`, for every datum.
pub fn identify_connected_monodromy_field(
    data: &[OmegaDatum],
    candidates: &[CandidateField],
) -> Result<MonodromyVerdict> {
    if data.is_empty() {
        return Err(Error::PreconditionFailed("no ω data".into()));
    }
    let mut survivors = Vec::new();
    let mut eliminations = Vec::new();
    for field in candidates {
        let mut alive = true;
        for d in data {
            let splits = splits_completely(d.p, field)?;
            if splits != (d.omega == 1) {
                eliminations.push(Elimination { field: field.name(), p: d.p, omega: d.omega, splits });
                alive = false;
                break;
            }
        }
        if alive {
            survivors.push(field.clone());
        }
    }
    let identified = match survivors.len() {
        0 => Identification::NoCandidate,
        1 => Identification::Field(survivors.pop().unwrap()),
        _ => Identification::Inconclusive(survivors),
    };
    Ok(MonodromyVerdict {
        data: data.to_vec(),
        candidates: candidates.to_vec(),
        identified,
        eliminations,
        center_certificate: None,
    })
}

/// Evidence that two Frobenius fields share no subfield besides Q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CenterCertificate {
    CertifiedTrivialCenter {
        /// Signed squarefree kernels of the discriminants of the two real
        /// subfield polynomials.
        real_kernels: (String, String),
        /// An auxiliary prime where the real subfield polynomials have
        /// different numbers of roots, if one was found.
        witness_prime: Option<(u64, usize, usize)>,
        /// `m` with `Q(√-m)` a subfield, for each input.
        imaginary_quadratic: (Vec<u64>, Vec<u64>),
    },
    Inconclusive(String),
}

/// `x^g g(1/x)`: monic integer polynomial whose roots are the inverse roots.
fn reversed_integer(g_p: &Poly<Rational>) -> Result<Vec<BigInt>> {
    let c = integer_coefficients(g_p)?;
    if c.first() != Some(&BigInt::one()) {
        return Err(Error::PreconditionFailed("constant term must be 1".into()));
    }
    Ok(c.into_iter().rev().collect())
}

fn int_poly(c: &[BigInt]) -> Poly<Rational> {
    Poly::new(c.iter().cloned().map(Rational::from_integer).collect())
}

fn roots_of(c: &[BigInt]) -> Vec<Complex64> {
    rational_poly_roots(&int_poly(c))
}

fn expand(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, v) in c.iter().enumerate() {
            next[k + 1] += v;
            next[k] -= v * r;
        }
        c = next;
    }
    c
}

fn round_near(v: f64) -> Option<BigInt> {
    let r = v.round();
    ((v - r).abs() < 1e-6 * r.abs().max(1.0)).then(|| BigInt::from(r as i128))
}

/// Exhaustive factor search: every conjugation-stable subset of roots of
/// size at most half the degree is expanded, rounded and tested by exact
/// division. Returns a nontrivial factor if one exists.
pub fn find_factor(c: &[BigInt]) -> Option<Poly<Rational>> {
    let n = c.len() - 1;
    let roots = roots_of(c);
    let full = int_poly(c);
    for mask in 1u64..(1 << n) {
        let k = mask.count_ones() as usize;
        if k > n / 2 {
            continue;
        }
        let sub: Vec<Complex64> = (0..n).filter(|&j| mask >> j & 1 == 1).map(|j| roots[j]).collect();
        let coeffs = expand(&sub);
        if coeffs.iter().any(|z| z.im.abs() > 1e-6 * z.norm().max(1.0)) {
            continue;
        }
        let Some(ints) = coeffs.iter().map(|z| round_near(z.re)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let factor = int_poly(&ints);
        if let Ok((_, r)) = full.div_rem(&factor) {
            if r.is_zero() {
                return Some(factor);
            }
        }
    }
    None
}

/// Real subfield polynomial `R` with `P(x) = x^{g/2} R(x + p/x)`, for `P`
/// satisfying `P_{g/2-k} = p^k P_{g/2+k}`.
pub fn real_subfield_polynomial(g_p: &Poly<Rational>, p: u64) -> Result<Poly<Rational>> {
    let pc = reversed_integer(g_p)?;
    let g = pc.len() - 1;
    let h = g / 2;
    let pb = BigInt::from(p);
    for k in 1..=h {
        if pc[h - k] != pb.pow(k as u32) * &pc[h + k] {
            return Err(Error::PreconditionFailed("polynomial is not of the form x^{g/2} R(x + p/x)".into()));
        }
    }
    let pr = Rational::from_integer(pb);
    let s = Poly::<Rational>::x();
    let mut d_prev = Poly::constant(Rational::from_integer(2.into()));
    let mut d_cur = s.clone();
    let mut r = Poly::constant(Rational::from_integer(pc[h].clone()));
    for k in 1..=h {
        r = &r + &d_cur.scale(&Rational::from_integer(pc[h + k].clone()));
        let next = &(&s * &d_cur) - &d_prev.scale(&pr);
        d_prev = d_cur;
        d_cur = next;
    }
    Ok(r)
}

fn signed_kernel(q: &Rational) -> BigInt {
    // The kernel of a rational is that of numerator times denominator.
    squarefree_kernel(&(q.numer() * q.denom()))
}

fn root_count_mod(c: &[BigInt], l: u64) -> usize {
    let lb = BigInt::from(l);
    let red: Vec<u64> = c.iter().map(|v| v.mod_floor(&lb).to_u64().unwrap()).collect();
    (0..l)
        .filter(|&x| red.iter().rev().fold(0u64, |acc, &a| ((acc as u128 * x as u128 + a as u128) % l as u128) as u64) == 0)
        .count()
}

/// Imaginary quadratic subfields `Q(√-m)` of `Q[x]/(P)`, found by testing
/// every splitting of the roots into complex-conjugate halves `S, conj(S)`:
/// with `F = prod_{α ∈ S}(x - α)` and `A = F + conj F`, `W = (F - conj F)/i`,
/// the candidate `m` is read off `W` and confirmed by `4P = A^2 + m B^2` exactly.
pub fn imaginary_quadratic_subfields(c: &[BigInt]) -> Result<Vec<u64>> {
    let n = c.len() - 1;
    let roots = roots_of(c);
    let target = int_poly(&c.iter().map(|v| v * 4).collect::<Vec<_>>());
    let mut out = BTreeSet::new();
    for mask in 1u64..(1 << n) {
        if mask.count_ones() as usize != n / 2 {
            continue;
        }
        let sub: Vec<Complex64> = (0..n).filter(|&j| mask >> j & 1 == 1).map(|j| roots[j]).collect();
        let rest: Vec<Complex64> = (0..n).filter(|&j| mask >> j & 1 == 0).map(|j| roots[j]).collect();
        // conj(S) must be the complement.
        let closed = sub.iter().all(|z| rest.iter().any(|w| (w - z.conj()).norm() < 1e-6 * z.norm().max(1.0)));
        if !closed {
            continue;
        }
        let f = expand(&sub);
        let Some(a) = f.iter().map(|z| round_near(2.0 * z.re)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let Some(w2) = f.iter().map(|z| round_near(4.0 * z.im * z.im)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let Some(first) = w2.iter().find(|v| !v.is_zero()) else { continue };
        let m = squarefree_kernel(first);
        if m <= BigInt::zero() {
            continue;
        }
        // B_k = sign(Im F_k) sqrt(w2_k / m).
        let mut b = Vec::with_capacity(w2.len());
        let mut ok = true;
        for (k, v) in w2.iter().enumerate() {
            if !v.is_multiple_of(&m) {
                ok = false;
                break;
            }
            let q = v / &m;
            let Some(root) = crate::algebra::integer_nth_root(&q, 2) else {
                ok = false;
                break;
            };
            b.push(if f[k].im < 0.0 { -root } else { root });
        }
        if !ok {
            continue;
        }
        let ap = int_poly(&a);
        let bp = int_poly(&b);
        let lhs = &(&ap * &ap) + &(&bp * &bp).scale(&Rational::from_integer(m.clone()));
        if lhs == target {
            out.insert(m.to_u64().ok_or_else(|| Error::Internal("subfield parameter overflow".into()))?);
        }
    }
    Ok(out.into_iter().collect())
}

/// Number of auxiliary primes scanned for a splitting witness.
const WITNESS_PRIMES: usize = 200;

/// Certify that `Q[T]/(g1)` and `Q[T]/(g2)` have no common subfield other
/// than Q. Subfields of a CM field of degree 4 or 6 are Q, imaginary
/// quadratic fields, the real subfield and the whole field, so it suffices to
/// separate the real subfields and the sets of imaginary quadratic subfields.
pub fn center_certificate(g1: &Poly<Rational>, p1: u64, g2: &Poly<Rational>, p2: u64) -> Result<CenterCertificate> {
    let c1 = reversed_integer(g1)?;
    let c2 = reversed_integer(g2)?;
    let g = c1.len() - 1;
    if c2.len() - 1 != g || !(g == 4 || g == 6) {
        return Err(Error::PreconditionFailed("inputs must both have degree 4 or both degree 6".into()));
    }
    for c in [&c1, &c2] {
        if let Some(f) = find_factor(c) {
            return Err(Error::NotSimpleInput(format!("factor {f}")));
        }
    }
    let (r1, r2) = match (real_subfield_polynomial(g1, p1), real_subfield_polynomial(g2, p2)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Ok(CenterCertificate::Inconclusive("no real subfield of the expected shape".into())),
    };
    let k1 = signed_kernel(&discriminant(&r1)?);
    let k2 = signed_kernel(&discriminant(&r2)?);
    let r1i = integer_coefficients(&r1)?;
    let r2i = integer_coefficients(&r2)?;
    let d1 = discriminant(&r1)?.numer().clone();
    let d2 = discriminant(&r2)?.numer().clone();
    let primes: Vec<u64> = primes_up_to(20_000)
        .into_iter()
        .filter(|&l| {
            let lb = BigInt::from(l);
            l > 2 && !d1.is_multiple_of(&lb) && !d2.is_multiple_of(&lb)
        })
        .take(WITNESS_PRIMES)
        .collect();
    let witness = primes
        .par_iter()
        .map(|&l| (l, root_count_mod(&r1i, l), root_count_mod(&r2i, l)))
        .find_first(|&(_, a, b)| a != b);
    if k1 == k2 && witness.is_none() {
        return Ok(CenterCertificate::Inconclusive("real subfields are not separated".into()));
    }
    let m1 = imaginary_quadratic_subfields(&c1)?;
    let m2 = imaginary_quadratic_subfields(&c2)?;
    if m1.iter().any(|m| m2.contains(m)) {
        return Ok(CenterCertificate::Inconclusive("a common imaginary quadratic subfield exists".into()));
    }
    Ok(CenterCertificate::CertifiedTrivialCenter {
        real_kernels: (k1.to_string(), k2.to_string()),
        witness_prime: witness,
        imaginary_quadratic: (m1, m2),
    })
}

/// Conclusion about the geometric endomorphism algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndoVerdict {
    QuaternionAlgebraOverQ,
    Inconclusive(String),
}

/// Combine two Frobenius reports with a center certificate. Steps: the Q8
/// action gives `(-1,-1 | Q) ⊆ End^0`; each report has geometric
/// endomorphism dimension `4g` over its endomorphism field, bounding
/// `dim End^0 ≤ 4g` per prime; the certificate makes the center Q; an
/// isogeny to a square would force the two Frobenius fields to share the
/// field of the factor, which the certificate excludes, so `End^0` is the
/// quaternion algebra itself.
pub fn endo_algebra_verdict(reports: &[LPolynomialReport], center: &CenterCertificate) -> EndoVerdict {
    if reports.len() < 2 {
        return EndoVerdict::Inconclusive("at least two primes are needed".into());
    }
    for r in reports {
        let expected = 4 * r.g as u64;
        if r.endo_field_degree == 0 || r.endo_dims.get(&(r.endo_field_degree as usize)) != Some(&expected) {
            return EndoVerdict::Inconclusive(format!("endomorphism dimension at p = {} is not {expected}", r.p));
        }
        if r.g_p.is_none() {
            return EndoVerdict::Inconclusive(format!("no square factorisation at p = {}", r.p));
        }
    }
    match center {
        CenterCertificate::CertifiedTrivialCenter { .. } => EndoVerdict::QuaternionAlgebraOverQ,
        CenterCertificate::Inconclusive(why) => EndoVerdict::Inconclusive(why.clone()),
    }
}

/// Primes `p ≡ 1 mod 4` below `bound` that divide none of `bad`.
pub fn split_good_primes(bound: u64, bad: &BTreeSet<u64>) -> Vec<u64> {
    primes_up_to(bound as usize)
        .into_iter()
        .filter(|p| p % 4 == 1 && !bad.contains(p))
        .collect()
}

/// Prime factors of a rational, as a set.
pub fn prime_support(q: &Rational) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for part in [q.numer(), q.denom()] {
        let mut v = part.abs();
        for l in primes_up_to(10_000) {
            let lb = BigInt::from(l);
            while v.is_multiple_of(&lb) && !v.is_zero() {
                out.insert(l);
                v /= &lb;
            }
        }
        if v > BigInt::one() {
            if let Some(small) = v.to_u64() {
                out.extend(factorize(small).into_iter().map(|(l, _)| l));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Poly<Rational> {
        Poly::from_i64(c)
    }

    fn g41() -> Poly<Rational> {
        poly(&[1, -2, -30, -82, 1681])
    }

    fn g73() -> Poly<Rational> {
        poly(&[1, 8, -2, 8 * 73, 73 * 73])
    }

    fn g13() -> Poly<Rational> {
        poly(&[1, -2, 0, 26, -169])
    }

    fn bad(list: &[u64]) -> BTreeSet<u64> {
        list.iter().copied().collect()
    }

    /// Oracle: `p` splits completely iff every defining polynomial has all
    /// its roots modulo `p`, counted by brute force.
    fn splits_by_root_count(p: u64, field: &CandidateField) -> bool {
        field.defining_polynomials().unwrap().iter().all(|f| {
            let c = integer_coefficients(f).unwrap();
            root_count_mod(&c, p) == c.len() - 1
        })
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_of_frobenius(&g13(), 13, 4), Ok(-1));
        assert_eq!(omega_of_frobenius(&g41(), 41, 4), Ok(1));
        assert_eq!(omega_of_frobenius(&g73(), 73, 4), Ok(1));
        assert!(matches!(omega_of_frobenius(&g41(), 43, 4), Err(Error::PreconditionFailed(_))));
        assert!(matches!(omega_of_frobenius(&poly(&[1, 0, 0, 0, 5]), 41, 4), Err(Error::WeilShapeViolated(_))));
    }

    #[test]
    fn candidates_for_two_three() {
        let c = candidate_fields(&bad(&[2, 3]));
        let tags: Vec<&str> = c.iter().map(|f| f.beta_class.as_str()).collect();
        assert_eq!(tags, vec!["i", "3", "3i"]);
        assert_eq!(c[0].name(), "Q(zeta8)");
        let all = all_quadratic_classes(&bad(&[2, 3]));
        assert_eq!(all.len(), 7);
        assert_eq!(all.iter().filter(|f| f.galois_over_q).count(), 3);
    }

    #[test]
    fn candidates_for_two_and_two_five() {
        let c = candidate_fields(&bad(&[2]));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].name(), "Q(zeta8)");
        let c = candidate_fields(&bad(&[2, 5]));
        let tags: Vec<&str> = c.iter().map(|f| f.beta_class.as_str()).collect();
        assert_eq!(tags, vec!["i", "5", "5i"]);
        assert_eq!(all_quadratic_classes(&bad(&[2, 5])).len(), 15);
    }

    #[test]
    fn splitting_examples() {
        let c = candidate_fields(&bad(&[2, 3]));
        assert!(!splits_completely(13, &c[0]).unwrap());
        assert!(splits_completely(13, &c[1]).unwrap());
        assert!(splits_completely(41, &c[0]).unwrap());
        assert_eq!(splits_completely(3, &c[1]), Err(Error::RamifiedPrime(3)));
        // 3i ≡ 6 modulo squares, and 6 is not a square modulo 13.
        assert!(!splits_completely(13, &c[2]).unwrap());
        assert!(!splits_by_root_count(13, &c[2]));
    }

    #[test]
    fn splitting_matches_root_counts() {
        for p in primes_up_to(1000).into_iter().filter(|&p| p > 5) {
            for field in candidate_fields(&bad(&[2, 3, 5])) {
                if field.rational_part.unwrap() % p == 0 {
                    continue;
                }
                assert_eq!(splits_completely(p, &field).unwrap(), splits_by_root_count(p, &field), "p = {p}, {}", field.name());
            }
            let zeta8 = &candidate_fields(&bad(&[2]))[0];
            assert_eq!(splits_completely(p, zeta8).unwrap(), p % 8 == 1);
        }
    }

    fn datum(p: u64, omega: i8) -> OmegaDatum {
        OmegaDatum { p, omega, source_g_p: Poly::one() }
    }

    #[test]
    fn identification_examples() {
        let c = candidate_fields(&bad(&[2, 3]));
        let v = identify_connected_monodromy_field(&[datum(13, -1), datum(41, 1)], &c).unwrap();
        assert_eq!(v.identified, Identification::Field(c[0].clone()));
        let v = identify_connected_monodromy_field(&[datum(13, -1), datum(41, 1), datum(73, 1)], &c).unwrap();
        assert_eq!(v.identified, Identification::Field(c[0].clone()));
        // 41 is inert in Q(i, √3) and Q(i, √6), so a single datum at 41 already
        // singles out Q(ζ8); 73 splits in all three candidates.
        let v = identify_connected_monodromy_field(&[datum(41, 1)], &c).unwrap();
        assert_eq!(v.identified, Identification::Field(c[0].clone()));
        let v = identify_connected_monodromy_field(&[datum(73, 1)], &c).unwrap();
        assert!(matches!(v.identified, Identification::Inconclusive(ref s) if s.len() == 3));
        // 41 ≡ 1 mod 8 removes Q(ζ8) and 13 removes Q(i, √3); Q(i, √(3i)) =
        // Q(i, √6) is consistent with all three data since 6 is a non-residue
        // mod 13 and mod 41 and a residue mod 73.
        let v = identify_connected_monodromy_field(&[datum(41, -1), datum(13, -1), datum(73, 1)], &c).unwrap();
        assert_eq!(v.identified, Identification::Field(c[2].clone()));
        let v = identify_connected_monodromy_field(&[datum(41, -1), datum(13, -1), datum(73, -1)], &c).unwrap();
        assert_eq!(v.identified, Identification::NoCandidate);
    }

    #[test]
    fn real_subfield_of_g41() {
        let r = real_subfield_polynomial(&g41(), 41).unwrap();
        assert_eq!(r, poly(&[-112, -2, 1]));
        let r = real_subfield_polynomial(&g73(), 73).unwrap();
        assert_eq!(r, poly(&[-148, 8, 1]));
        assert!(real_subfield_polynomial(&g13(), 13).is_err());
    }

    #[test]
    fn center_certificate_g4() {
        let cert = center_certificate(&g41(), 41, &g73(), 73).unwrap();
        match &cert {
            CenterCertificate::CertifiedTrivialCenter { real_kernels, .. } => {
                assert_eq!(real_kernels, &("113".to_string(), "41".to_string()));
            }
            other => panic!("{other:?}"),
        }
        let swapped = center_certificate(&g73(), 73, &g41(), 41).unwrap();
        assert!(matches!(swapped, CenterCertificate::CertifiedTrivialCenter { .. }));
        assert!(matches!(
            center_certificate(&g41(), 41, &g41(), 41).unwrap(),
            CenterCertificate::Inconclusive(_)
        ));
        assert!(matches!(center_certificate(&g13(), 13, &g41(), 41), Err(Error::NotSimpleInput(_))));
    }

    #[test]
    fn center_certificate_g6() {
        let g17 = poly(&[1, -2, -13, 44, -13 * 17, -2 * 289, 4913]);
        let g41_6 = poly(&[1, -14, 91, -540, 91 * 41, -14 * 1681, 68921]);
        let cert = center_certificate(&g17, 17, &g41_6, 41).unwrap();
        assert!(matches!(cert, CenterCertificate::CertifiedTrivialCenter { .. }), "{cert:?}");
    }

    #[test]
    fn imaginary_quadratic_subfield_detection() {
        // x^4 + 3x^2 + 4 = (x^2 - x + 2)(x^2 + x + 2) is reducible.
        let c: Vec<BigInt> = [4, 0, 3, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert!(find_factor(&c).is_some());
        // Irreducible biquadratic x^4 + 1 = Φ_8 contains Q(i) and Q(√-2).
        let c: Vec<BigInt> = [1, 0, 0, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert!(find_factor(&c).is_none());
        assert_eq!(imaginary_quadratic_subfields(&c).unwrap(), vec![1, 2]);
        // g41 has none.
        let c = reversed_integer(&g41()).unwrap();
        assert!(imaginary_quadratic_subfields(&c).unwrap().is_empty());
    }

    #[test]
    fn prime_support_of_discriminant() {
        let q = Rational::new(BigInt::from(-2i64.pow(12) * 729), BigInt::from(5));
        assert_eq!(prime_support(&q), bad(&[2, 3, 5]));
    }
}
