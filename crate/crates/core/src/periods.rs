//! Numerical period matrices of the genus-4 fibers
//! `y^2 = x(x^4 - 1)(x^4 + 2a x^2 + 1)`.
//!
//! The homology basis is `γ_0, αγ_0, ..., γ_3, αγ_3`, where `γ_k` is the
//! closed lift of an arc `δ_k` joining two branch points and
//! `α(x, y) = (-x, iy)`. On `δ_k` the substitution `s = sin^2(πu/2)` removes
//! the square-root singularities at both ends, so Gauss-Legendre quadrature
//! in `u` converges geometrically.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{GaussianRational, IntMatrix};
use crate::error::{Error, Result};
use crate::torsion::homology_data;

/// Default minimal distance between a path and the branch points it does not end at.
pub const DEFAULT_CLEARANCE: f64 = 0.1;
/// Minimal admissible distance between two branch points.
pub const MIN_SEPARATION: f64 = 1e-6;
/// Sign `s` for which `s i Π E^{-1} Π^*` is positive definite, fixed at `a = 1/2`.
pub const POLARIZATION_SIGN: f64 = 1.0;

const INITIAL_NODES: usize = 16;
const MAX_NODES: usize = 4096;
const MAX_BISECTIONS: u32 = 40;

/// Column labels of the period matrix.
pub const BASIS_TAG: [&str; 8] = ["g0", "a.g0", "g1", "a.g1", "g2", "a.g2", "g3", "a.g3"];

/// A path in the x-plane parametrised by `s in [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Segment {
    Line { from: Complex64, to: Complex64 },
    /// `x(s) = from * exp(s log(to / from))`; a circular arc when `|from| = |to|`.
    Spiral { from: Complex64, to: Complex64 },
}

impl Segment {
    pub fn start(&self) -> Complex64 {
        match *self {
            Segment::Line { from, .. } | Segment::Spiral { from, .. } => from,
        }
    }

    pub fn end(&self) -> Complex64 {
        match *self {
            Segment::Line { to, .. } | Segment::Spiral { to, .. } => to,
        }
    }

    pub fn point(&self, s: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * s,
            Segment::Spiral { from, to } => from * ((to / from).ln() * s).exp(),
        }
    }

    pub fn derivative(&self, s: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => to - from,
            Segment::Spiral { from, to } => {
                let l = (to / from).ln();
                from * l * (l * s).exp()
            }
        }
    }

    /// The image under `x -> -x`.
    pub fn negated(&self) -> Segment {
        match *self {
            Segment::Line { from, to } => Segment::Line { from: -from, to: -to },
            Segment::Spiral { from, to } => Segment::Spiral { from: -from, to: -to },
        }
    }
}

/// The closed lift of a segment joining two branch points: the segment on the
/// sheet fixed by `initial_root` followed by its reverse on the other sheet.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchPath {
    pub label: String,
    pub segment: Segment,
    /// Interior subdivision points in `(0, 1)`, increasing.
    pub breaks: Vec<f64>,
    /// Value at `s = 0` of `h(s) = y(x(s)) / sqrt(s(1 - s))`, which fixes the sheet.
    pub initial_root: Complex64,
    pub closed: bool,
}

impl BranchPath {
    /// The same path with the parameter interval cut at `breaks`.
    pub fn with_breaks(&self, breaks: Vec<f64>) -> Result<BranchPath> {
        if breaks.windows(2).any(|w| w[0] >= w[1]) || breaks.iter().any(|&b| b <= 0.0 || b >= 1.0) {
            return Err(Error::PreconditionFailed("breaks must increase inside (0, 1)".into()));
        }
        Ok(BranchPath { breaks, ..self.clone() })
    }

    fn pieces(&self) -> Vec<(f64, f64)> {
        let mut cuts = vec![0.0];
        cuts.extend(&self.breaks);
        cuts.push(1.0);
        cuts.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

/// Periods `∫ x^{l-1} dx / y`, `l = 1..4`, over the basis columns.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodMatrix {
    /// 4 rows by 8 columns.
    pub entries: Vec<Vec<Complex64>>,
    pub error_bounds: Vec<Vec<f64>>,
    pub basis_tag: Vec<String>,
    pub nodes: usize,
}

impl PeriodMatrix {
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: f64) -> PeriodMatrix {
        PeriodMatrix {
            entries: self.entries.iter().map(|r| r.iter().map(|z| z * c).collect()).collect(),
            error_bounds: self.error_bounds.iter().map(|r| r.iter().map(|e| e * c.abs()).collect()).collect(),
            ..self.clone()
        }
    }

    fn to_dmatrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.entries.len(), self.entries[0].len(), |i, j| self.entries[i][j])
    }
}

fn fiber(a: Complex64, x: Complex64) -> Complex64 {
    let x2 = x * x;
    x * (x2 * x2 - 1.0) * (x2 * x2 + 2.0 * a * x2 + 1.0)
}

fn fiber_derivative(a: Complex64, x: Complex64) -> Complex64 {
    // f = x^9 + 2a x^7 - 2a x^3 - x
    let x2 = x * x;
    let x6 = x2 * x2 * x2;
    9.0 * x6 * x2 + 14.0 * a * x6 - 6.0 * a * x2 - 1.0
}

/// Branch points `0, 1, ζ6(a), i, ζ3(a), -1, -ζ6(a), -i, -ζ3(a)` (and `∞`).
/// At `a = 1/2`, `ζ6(a) = e^{iπ/3}` and `ζ3(a) = e^{2iπ/3}`.
pub fn branch_points(a: Complex64) -> Vec<Complex64> {
    let root = (1.0 - a * a).sqrt();
    let i = Complex64::i();
    let z6 = (-a + i * root).sqrt();
    let z3 = -(-a - i * root).sqrt();
    let one = Complex64::new(1.0, 0.0);
    vec![Complex64::new(0.0, 0.0), one, z6, i, z3, -one, -z6, -i, -z3]
}

fn h_squared(a: Complex64, seg: &Segment, s: f64) -> Complex64 {
    if s == 0.0 {
        fiber_derivative(a, seg.start()) * seg.derivative(0.0)
    } else if s == 1.0 {
        -fiber_derivative(a, seg.end()) * seg.derivative(1.0)
    } else {
        fiber(a, seg.point(s)) / (s * (1.0 - s))
    }
}

/// Continue `h` from `(s0, h0)` to `s1`, halving the step while `h^2` turns by
/// a quarter turn or more.
fn continue_root(a: Complex64, seg: &Segment, s0: f64, h0: Complex64, s1: f64, depth: u32) -> Result<Complex64> {
    let h2 = h_squared(a, seg, s1);
    if h2.norm() < 1e-300 {
        return Err(Error::ContinuationFailed(format!("y vanishes at s = {s1}")));
    }
    if (h2 / (h0 * h0)).arg().abs() < PI / 2.0 {
        let r = h2.sqrt();
        return Ok(if (r - h0).norm() <= (r + h0).norm() { r } else { -r });
    }
    if depth >= MAX_BISECTIONS {
        return Err(Error::ContinuationFailed(format!("no stable step near s = {s0}")));
    }
    let mid = 0.5 * (s0 + s1);
    let hm = continue_root(a, seg, s0, h0, mid, depth + 1)?;
    continue_root(a, seg, mid, hm, s1, depth + 1)
}

/// Gauss-Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n.div_ceil(2) {
        let mut x = (PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for m in 2..=n {
                let p2 = ((2 * m - 1) as f64 * x * p1 - (m - 1) as f64 * p0) / m as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = 0.5 * (1.0 - x);
        nodes[n - 1 - k] = 0.5 * (1.0 + x);
        weights[k] = 0.5 * w;
        weights[n - 1 - k] = 0.5 * w;
    }
    (nodes, weights)
}

/// `∮ x^{l-1} dx / y`, `l = 1..4`, over the closed lift of `path` with `n`
/// nodes per piece. Pieces are summed in the order given by `order`.
fn integrate_path(a: Complex64, path: &BranchPath, n: usize, order: Option<&[usize]>) -> Result<[Complex64; 4]> {
    let (nodes, weights) = gauss_legendre(n);
    let pieces = path.pieces();
    let mut samples: Vec<(f64, f64, usize)> = Vec::with_capacity(n * pieces.len());
    for (p, &(sa, sb)) in pieces.iter().enumerate() {
        for (&u, &w) in nodes.iter().zip(&weights) {
            let su = (PI * u / 2.0).sin();
            let cu = (PI * u / 2.0).cos();
            let s = sa + (sb - sa) * su * su;
            samples.push((s, w * (sb - sa) * PI * su * cu, p));
        }
    }
    samples.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut per_piece = vec![[Complex64::new(0.0, 0.0); 4]; pieces.len()];
    let (mut s_prev, mut h_prev) = (0.0, path.initial_root);
    for &(s, jw, p) in &samples {
        let h = continue_root(a, &path.segment, s_prev, h_prev, s, 0)?;
        let y = h * (s * (1.0 - s)).sqrt();
        let x = path.segment.point(s);
        let base = path.segment.derivative(s) * jw / y;
        let mut xp = Complex64::new(1.0, 0.0);
        for l in 0..4 {
            per_piece[p][l] += base * xp;
            xp *= x;
        }
        s_prev = s;
        h_prev = h;
    }
    let default: Vec<usize> = (0..pieces.len()).collect();
    let order = order.unwrap_or(&default);
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for &p in order {
        for l in 0..4 {
            out[l] += per_piece[p][l];
        }
    }
    let factor = if path.closed { 2.0 } else { 1.0 };
    Ok(out.map(|z| z * factor))
}

fn min_separation(points: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.min((points[i] - points[j]).norm());
        }
    }
    best
}

fn check_clearance(seg: &Segment, branch: &[Complex64], clearance: f64) -> Result<()> {
    let others: Vec<Complex64> = branch
        .iter()
        .copied()
        .filter(|b| (b - seg.start()).norm() > MIN_SEPARATION && (b - seg.end()).norm() > MIN_SEPARATION)
        .collect();
    for k in 1..64 {
        let x = seg.point(k as f64 / 64.0);
        if let Some(b) = others.iter().find(|b| (x - **b).norm() < clearance) {
            return Err(Error::IllConditioned(format!("path passes within {clearance} of branch point {b}")));
        }
    }
    Ok(())
}

/// The eight basis paths `γ_0, αγ_0, ..., γ_3, αγ_3` for the fiber at `a`,
/// with `δ_0 = [0, 1]` and `δ_1, δ_2, δ_3` the arcs `1 -> ζ6 -> i -> ζ3`.
pub fn build_homology_basis(a: Complex64) -> Result<Vec<BranchPath>> {
    build_homology_basis_with(a, DEFAULT_CLEARANCE)
}

pub fn build_homology_basis_with(a: Complex64, clearance: f64) -> Result<Vec<BranchPath>> {
    let bp = branch_points(a);
    let sep = min_separation(&bp);
    if !sep.is_finite() || sep < MIN_SEPARATION {
        return Err(Error::IllConditioned(format!("branch points only {sep:e} apart")));
    }
    let deltas = [
        Segment::Line { from: bp[0], to: bp[1] },
        Segment::Spiral { from: bp[1], to: bp[2] },
        Segment::Spiral { from: bp[2], to: bp[3] },
        Segment::Spiral { from: bp[3], to: bp[4] },
    ];
    let mut paths = Vec::with_capacity(8);
    for (k, seg) in deltas.iter().enumerate() {
        check_clearance(seg, &bp, clearance)?;
        let mut h0 = h_squared(a, seg, 0.0).sqrt();
        if h0.im < 0.0 {
            h0 = -h0;
        }
        if h0.im.abs() < 1e-12 * h0.norm() {
            return Err(Error::IllConditioned(format!("sheet of delta_{k} is not determined by Im y > 0")));
        }
        let gamma = BranchPath { label: format!("g{k}"), segment: *seg, breaks: vec![], initial_root: h0, closed: true };
        let image = BranchPath {
            label: format!("a.g{k}"),
            segment: seg.negated(),
            breaks: vec![],
            initial_root: Complex64::i() * h0,
            closed: true,
        };
        paths.push(gamma);
        paths.push(image);
    }
    Ok(paths)
}

/// Periods over `paths` with a fixed number of nodes per piece.
pub fn period_matrix_with_nodes(paths: &[BranchPath], a: Complex64, nodes: usize) -> Result<PeriodMatrix> {
    let cols: Vec<[Complex64; 4]> =
        paths.par_iter().map(|p| integrate_path(a, p, nodes, None)).collect::<Result<_>>()?;
    Ok(assemble(paths, &cols, vec![vec![0.0; paths.len()]; 4], nodes))
}

fn assemble(paths: &[BranchPath], cols: &[[Complex64; 4]], error_bounds: Vec<Vec<f64>>, nodes: usize) -> PeriodMatrix {
    PeriodMatrix {
        entries: (0..4).map(|l| cols.iter().map(|c| c[l]).collect()).collect(),
        error_bounds,
        basis_tag: paths.iter().map(|p| p.label.clone()).collect(),
        nodes,
    }
}

/// Periods with node doubling until successive estimates agree to `tol`;
/// the reported bound per entry is the last change.
pub fn compute_period_matrix(paths: &[BranchPath], a: Complex64, tol: f64) -> Result<PeriodMatrix> {
    if !(tol >= 1e-12) {
        return Err(Error::PreconditionFailed(format!("tolerance {tol:e} below 1e-12")));
    }
    let results: Vec<([Complex64; 4], [f64; 4], usize)> = paths
        .par_iter()
        .map(|p| {
            let mut n = INITIAL_NODES;
            let mut prev = integrate_path(a, p, n, None)?;
            loop {
                n *= 2;
                let next = integrate_path(a, p, n, None)?;
                let err: [f64; 4] = std::array::from_fn(|l| (next[l] - prev[l]).norm());
                if err.iter().all(|&e| e <= tol) {
                    return Ok((next, err, n));
                }
                if n >= MAX_NODES {
                    return Err(Error::IllConditioned(format!("quadrature on {} did not reach {tol:e}", p.label)));
                }
                prev = next;
            }
        })
        .collect::<Result<_>>()?;
    let cols: Vec<[Complex64; 4]> = results.iter().map(|r| r.0).collect();
    let bounds = (0..4).map(|l| results.iter().map(|r| r.1[l]).collect()).collect();
    let nodes = results.iter().map(|r| r.2).max().unwrap_or(0);
    Ok(assemble(paths, &cols, bounds, nodes))
}

/// Periods of a single path with its pieces summed in the given order.
pub fn path_periods(a: Complex64, path: &BranchPath, nodes: usize, order: &[usize]) -> Result<[Complex64; 4]> {
    if order.len() != path.breaks.len() + 1 {
        return Err(Error::PreconditionFailed("order must list every piece once".into()));
    }
    integrate_path(a, path, nodes, Some(order))
}

pub fn gaussian_to_complex(m: &[Vec<GaussianRational>]) -> Vec<Vec<Complex64>> {
    m.iter().map(|r| r.iter().map(|z| z.to_complex()).collect()).collect()
}

pub fn int_to_f64(m: &IntMatrix) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j) as f64).collect()).collect()
}

/// `max |M Π - Π R| / max |Π|`.
pub fn verify_analytic_rational(pi: &PeriodMatrix, m: &[Vec<Complex64>], r: &[Vec<f64>]) -> Result<f64> {
    let rows = pi.entries.len();
    let cols = pi.entries.first().map_or(0, Vec::len);
    if m.len() != rows || m.iter().any(|x| x.len() != rows) || r.len() != cols || r.iter().any(|x| x.len() != cols) {
        return Err(Error::PreconditionFailed("matrix shapes are incompatible".into()));
    }
    let p = pi.to_dmatrix();
    let mm = DMatrix::from_fn(rows, rows, |i, j| m[i][j]);
    let rr = DMatrix::from_fn(cols, cols, |i, j| Complex64::new(r[i][j], 0.0));
    let diff = &mm * &p - &p * &rr;
    let scale = pi.max_abs();
    Ok(diff.iter().map(|z| z.norm()).fold(0.0, f64::max) / if scale > 0.0 { scale } else { 1.0 })
}

/// Outcome of the Riemann bilinear relations check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RiemannCheck {
    /// `max |Π E^{-1} Π^t|`.
    pub residual: f64,
    /// Eigenvalues of `POLARIZATION_SIGN * i Π E^{-1} Π^*`, increasing.
    pub eigenvalues: Vec<f64>,
    pub positivity: bool,
    /// Whether the opposite sign would also give a positive form.
    pub opposite_sign_positive: bool,
}

pub fn verify_riemann_relations(pi: &PeriodMatrix, e: &IntMatrix) -> Result<RiemannCheck> {
    if e.transpose() != e.scale(-1) || e.det().magnitude() != &1u32.into() {
        return Err(Error::PreconditionFailed("E must be unimodular and alternating".into()));
    }
    let n = e.rows();
    if pi.entries.first().map_or(0, Vec::len) != n {
        return Err(Error::PreconditionFailed("period matrix and E have different sizes".into()));
    }
    let ef = DMatrix::from_fn(n, n, |i, j| e.get(i, j) as f64);
    let einv = ef.try_inverse().ok_or_else(|| Error::Internal("E is not invertible".into()))?;
    let einv = einv.map(|v| Complex64::new(v, 0.0));
    let p = pi.to_dmatrix();
    let sym = &p * &einv * p.transpose();
    let residual = sym.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let herm = (&p * &einv * p.adjoint()) * Complex64::new(0.0, POLARIZATION_SIGN);
    let herm = (&herm + herm.adjoint()) * Complex64::new(0.5, 0.0);
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    let scale = eigenvalues.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let eps = 1e-12 * scale.max(f64::MIN_POSITIVE);
    Ok(RiemannCheck {
        residual,
        positivity: eigenvalues.iter().all(|&v| v > eps),
        opposite_sign_positive: eigenvalues.iter().all(|&v| v < -eps),
        eigenvalues,
    })
}

/// Rank of the real lattice spanned by the columns of `Π`, via singular values.
pub fn real_column_rank(pi: &PeriodMatrix) -> usize {
    let rows = pi.entries.len();
    let cols = pi.entries[0].len();
    let m = DMatrix::from_fn(2 * rows, cols, |i, j| {
        let z = pi.entries[i % rows][j];
        if i < rows {
            z.re
        } else {
            z.im
        }
    });
    let sv = m.singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max);
    sv.iter().filter(|&&v| v > 1e-9 * top).count()
}

/// Residuals of `(M(α), R(α))` and `(M(β), R(β))` at one parameter value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepresentationResiduals {
    pub a: Complex64,
    pub alpha: f64,
    pub beta: f64,
}

pub fn representation_residuals(a: Complex64, tol: f64) -> Result<(PeriodMatrix, RepresentationResiduals)> {
    let h = homology_data()?;
    let paths = build_homology_basis(a)?;
    let pi = compute_period_matrix(&paths, a, tol)?;
    let alpha = verify_analytic_rational(&pi, &gaussian_to_complex(&h.m_alpha), &int_to_f64(&h.r_alpha))?;
    let beta = verify_analytic_rational(&pi, &gaussian_to_complex(&h.m_beta), &int_to_f64(&h.r_beta))?;
    Ok((pi, RepresentationResiduals { a, alpha, beta }))
}

/// Representation residuals at `count` seeded random points of the disc of
/// radius `radius` around `center`.
pub fn parameter_stability(center: Complex64, radius: f64, count: usize, seed: u64, tol: f64) -> Result<Vec<RepresentationResiduals>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Complex64> = (0..count)
        .map(|_| {
            let r = radius * rng.gen::<f64>().sqrt();
            let t = 2.0 * PI * rng.gen::<f64>();
            center + Complex64::from_polar(r, t)
        })
        .collect();
    points.into_par_iter().map(|a| representation_residuals(a, tol).map(|r| r.1)).collect()
}

/// Everything computed for one fiber.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodReport {
    pub a: Complex64,
    pub tol: f64,
    pub period_matrix: PeriodMatrix,
    pub residual_alpha: f64,
    pub residual_beta: f64,
    pub riemann: RiemannCheck,
    pub real_rank: usize,
}

pub fn period_report(a: Complex64, tol: f64) -> Result<PeriodReport> {
    let (pi, res) = representation_residuals(a, tol)?;
    let riemann = verify_riemann_relations(&pi, &homology_data()?.e)?;
    Ok(PeriodReport {
        a,
        tol,
        real_rank: real_column_rank(&pi),
        residual_alpha: res.alpha,
        residual_beta: res.beta,
        riemann,
        period_matrix: pi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn half() -> Complex64 {
        Complex64::new(0.5, 0.0)
    }

    fn identity(n: usize) -> Vec<Vec<f64>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
    }

    #[test]
    fn gauss_legendre_is_exact_on_polynomials() {
        let (x, w) = gauss_legendre(7);
        for k in 0..14 {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            assert!((q - 1.0 / (k as f64 + 1.0)).abs() < 1e-14, "degree {k}");
        }
    }

    #[test]
    fn branch_points_at_one_half_are_tenth_roots_set() {
        let bp = branch_points(half());
        let expected_angles = [0.0, 60.0, 90.0, 120.0, 180.0, 240.0, 270.0, 300.0];
        assert!(bp[0].norm() < 1e-15);
        for (z, deg) in bp[1..].iter().zip([0.0, 60.0, 90.0, 120.0, 180.0, 240.0, 270.0, 300.0]) {
            assert!((z.norm() - 1.0).abs() < 1e-14);
            let ang = z.arg().to_degrees().rem_euclid(360.0);
            assert!(expected_angles.contains(&deg));
            assert!((ang - deg).abs() < 1e-12, "{z} vs {deg}");
        }
        for z in &bp {
            assert!(fiber(half(), *z).norm() < 1e-13);
        }
    }

    #[test]
    fn basis_paths_are_closed_and_alpha_images_negate_x() {
        let paths = build_homology_basis(half()).unwrap();
        assert_eq!(paths.len(), 8);
        let bp = branch_points(half());
        for pair in paths.chunks(2) {
            let (g, ag) = (&pair[0], &pair[1]);
            assert!(g.closed && ag.closed);
            for p in [g, ag] {
                let ends = [p.segment.start(), p.segment.end()];
                assert!(ends.iter().all(|e| bp.iter().any(|b| (b - e).norm() < 1e-14)));
            }
            for k in 0..=10 {
                let s = k as f64 / 10.0;
                assert!((ag.segment.point(s) + g.segment.point(s)).norm() < 1e-14);
            }
            assert!(g.initial_root.im > 0.0);
        }
    }

    #[test]
    fn alpha_columns_match_pullback_formula() {
        // α^*(x^{l-1} dx / y) = i (-1)^{l-1} x^{l-1} dx / y
        let paths = build_homology_basis(half()).unwrap();
        let pi = compute_period_matrix(&paths, half(), 1e-12).unwrap();
        for k in 0..4 {
            for l in 0..4 {
                let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                let predicted = Complex64::i() * sign * pi.entries[l][2 * k];
                assert!((predicted - pi.entries[l][2 * k + 1]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn reversed_path_negates_periods() {
        let paths = build_homology_basis(half()).unwrap();
        let g = &paths[2];
        let rev_seg = match g.segment {
            Segment::Spiral { from, to } => Segment::Spiral { from: to, to: from },
            Segment::Line { from, to } => Segment::Line { from: to, to: from },
        };
        // Same sheet: continue h from the far end of the original path.
        let end = integrate_end_root(g);
        let rev = BranchPath { segment: rev_seg, initial_root: end, ..g.clone() };
        let fwd = period_matrix_with_nodes(std::slice::from_ref(g), half(), 256).unwrap();
        let back = period_matrix_with_nodes(&[rev], half(), 256).unwrap();
        for l in 0..4 {
            assert!((fwd.entries[l][0] + back.entries[l][0]).norm() < 1e-11);
        }
    }

    fn integrate_end_root(p: &BranchPath) -> Complex64 {
        // h(1) on the original sheet; for the reversed parametrisation
        // y / sqrt(s(1-s)) is unchanged while the x-derivative flips sign.
        let mut s = 0.0;
        let mut h = p.initial_root;
        for k in 1..=1000 {
            let t = k as f64 / 1000.0;
            h = continue_root(half(), &p.segment, s, h, t, 0).unwrap();
            s = t;
        }
        h
    }

    #[test]
    fn hyperelliptic_involution_negates_periods() {
        let paths = build_homology_basis(half()).unwrap();
        let p = &paths[0];
        let flipped = BranchPath { initial_root: -p.initial_root, ..p.clone() };
        let a = period_matrix_with_nodes(std::slice::from_ref(p), half(), 128).unwrap();
        let b = period_matrix_with_nodes(&[flipped], half(), 128).unwrap();
        for l in 0..4 {
            assert!((a.entries[l][0] + b.entries[l][0]).norm() < 1e-14);
        }
    }

    #[test]
    fn representations_hold_at_one_half() {
        let (pi, res) = representation_residuals(half(), 1e-10).unwrap();
        assert!(res.alpha < 1e-8, "alpha residual {}", res.alpha);
        assert!(res.beta < 1e-8, "beta residual {}", res.beta);
        assert!(pi.error_bounds.iter().flatten().all(|&e| e <= 1e-10));
        assert_eq!(real_column_rank(&pi), 8);
        let id4: Vec<Vec<Complex64>> =
            identity(4).iter().map(|r| r.iter().map(|&v| Complex64::new(v, 0.0)).collect()).collect();
        assert_eq!(verify_analytic_rational(&pi, &id4, &identity(8)).unwrap(), 0.0);
    }

    #[test]
    fn riemann_relations_fix_one_sign() {
        let report = period_report(half(), 1e-10).unwrap();
        assert!(report.riemann.residual < 1e-8, "{}", report.riemann.residual);
        assert!(report.riemann.positivity);
        assert!(!report.riemann.opposite_sign_positive);
        let doubled = verify_riemann_relations(&report.period_matrix.scaled(2.0), &homology_data().unwrap().e).unwrap();
        assert!(doubled.positivity);
    }

    #[test]
    fn random_period_matrices_fail_positivity() {
        let e = homology_data().unwrap().e;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut positive = 0;
        for _ in 0..40 {
            let entries: Vec<Vec<Complex64>> = (0..4)
                .map(|_| (0..8).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
                .collect();
            let pi = PeriodMatrix { entries, error_bounds: vec![vec![0.0; 8]; 4], basis_tag: vec![], nodes: 0 };
            let r = verify_riemann_relations(&pi, &e).unwrap();
            assert!(r.residual > 1e-3);
            positive += usize::from(r.positivity);
        }
        assert!(positive <= 8, "{positive} random matrices were positive");
    }

    #[test]
    fn doubling_nodes_is_below_tolerance() {
        let paths = build_homology_basis(half()).unwrap();
        let tol = 1e-10;
        let pi = compute_period_matrix(&paths, half(), tol).unwrap();
        let finer = period_matrix_with_nodes(&paths, half(), 2 * pi.nodes).unwrap();
        for (r1, r2) in pi.entries.iter().zip(&finer.entries) {
            for (a, b) in r1.iter().zip(r2) {
                assert!((a - b).norm() < tol);
            }
        }
    }

    #[test]
    fn subdivisions_and_their_order_do_not_matter() {
        let paths = build_homology_basis(half()).unwrap();
        for p in &paths {
            let whole = path_periods(half(), p, 128, &[0]).unwrap();
            for (breaks, order) in [(vec![0.5], vec![1, 0]), (vec![0.2, 0.7], vec![2, 0, 1]), (vec![0.1, 0.3, 0.9], vec![3, 1, 2, 0])] {
                let cut = p.with_breaks(breaks).unwrap();
                let v = path_periods(half(), &cut, 128, &order).unwrap();
                for l in 0..4 {
                    assert!((v[l] - whole[l]).norm() < 1e-10, "{} piece sums differ by {}", p.label, (v[l] - whole[l]).norm());
                }
            }
        }
    }

    #[test]
    fn near_singular_parameters_are_rejected() {
        assert!(matches!(build_homology_basis(Complex64::new(1.0, 0.0)), Err(Error::IllConditioned(_))));
        assert!(matches!(
            compute_period_matrix(&build_homology_basis(half()).unwrap(), half(), 1e-14),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn representations_are_locally_constant() {
        let res = parameter_stability(half(), 0.1, 20, 1, 1e-10).unwrap();
        assert_eq!(res.len(), 20);
        for r in res {
            assert!(r.alpha < 1e-7 && r.beta < 1e-7, "{r:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn alpha_relation_holds_near_one_half(re in 0.4f64..0.6, im in -0.1f64..0.1) {
            let a = Complex64::new(re, im);
            let (_, r) = representation_residuals(a, 1e-10).unwrap();
            prop_assert!(r.alpha < 1e-7 && r.beta < 1e-7);
        }
    }
}
