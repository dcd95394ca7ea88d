//! Numerical roots of polynomials with real or complex coefficients.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::field::Rational;
use super::poly::Poly;

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dv = dv * z + v;
        v = v * z + c;
    }
    (v, dv)
}

/// All complex roots (with multiplicity) of a polynomial given by ascending
/// complex coefficients, via companion-matrix eigenvalues followed by a few
/// Newton steps on the original polynomial.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|v| v.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lc = c[n];
    let monic: Vec<Complex64> = c.iter().map(|v| v / lc).collect();
    // Eigenvalues of the real companion matrix when the Schur iteration
    // converges; otherwise (complex input or no convergence) Aberth.
    let schur = monic.iter().all(|v| v.im == 0.0).then(|| {
        let mut m = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            m[(i, n - 1)] = -monic[i].re;
        }
        Schur::try_new(m, f64::EPSILON, 10_000)
    });
    let mut roots = match schur.flatten() {
        Some(s) => s.complex_eigenvalues().iter().copied().collect::<Vec<_>>(),
        None => aberth(&monic),
    };
    for z in roots.iter_mut() {
        for _ in 0..8 {
            let (v, dv) = horner(&monic, *z);
            if dv.norm() == 0.0 {
                break;
            }
            let step = v / dv;
            *z -= step;
            if step.norm() <= 1e-17 * z.norm().max(1.0) {
                break;
            }
        }
    }
    roots
}

fn aberth(monic: &[Complex64]) -> Vec<Complex64> {
    let n = monic.len() - 1;
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (v, dv) = horner(monic, z[k]);
            let ratio = v / dv;
            let sum: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let step = ratio / (1.0 - ratio * sum);
            z[k] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

/// Roots of a rational polynomial.
pub fn rational_poly_roots(f: &Poly<Rational>) -> Vec<Complex64> {
    let c: Vec<Complex64> =
        f.coeffs().iter().map(|q| Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)).collect();
    complex_roots(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_cyclotomic_and_complex() {
        let c: Vec<Complex64> = [1.0, 0.0, 1.0].iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let mut r = complex_roots(&c);
        r.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((r[0] - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((r[1] - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        // (x - i)(x - 2) = x^2 - (2+i) x + 2i
        let c = [Complex64::new(0.0, 2.0), Complex64::new(-2.0, -1.0), Complex64::new(1.0, 0.0)];
        let r = complex_roots(&c);
        assert!(r.iter().any(|z| (z - Complex64::new(0.0, 1.0)).norm() < 1e-12));
        assert!(r.iter().any(|z| (z - Complex64::new(2.0, 0.0)).norm() < 1e-12));
        // x^4 + 1 has an orthogonal companion matrix.
        let c: Vec<Complex64> = [1.0, 0.0, 0.0, 0.0, 1.0].iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let r = complex_roots(&c);
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|z| (z.powu(4) + 1.0).norm() < 1e-12));
    }
}
