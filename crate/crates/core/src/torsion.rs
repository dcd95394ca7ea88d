//! The Q8 action on two-torsion, the genus-4 homology representation with its
//! intersection form, the Lipschitz-versus-Hurwitz obstruction, the 2-adic
//! non-freeness of the period lattice and the quaternionic form `T`.

use num_traits::{One, Zero};

use crate::algebra::{rank_f2, rank_over, GaussianRational, IntMatrix, QuaternionRational, Rational};
use crate::error::{Error, Result};
use crate::family::WeierstrassLabel;

/// The Q8-module `A[2]` over F2 in the basis `e_x`, `x` a finite nonzero
/// Weierstrass label, with `e_0` the sum of all basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoTorsionModule {
    pub g: usize,
    pub basis_labels: Vec<WeierstrassLabel>,
    pub alpha: IntMatrix,
    pub beta: IntMatrix,
}

fn mod2(m: &IntMatrix) -> IntMatrix {
    let rows: Vec<Vec<i64>> = m.to_rows().into_iter().map(|r| r.into_iter().map(|v| v.rem_euclid(2)).collect()).collect();
    IntMatrix::from_rows(&rows)
}

impl TwoTorsionModule {
    /// F2 coordinates of `e_x`.
    pub fn vector(&self, x: WeierstrassLabel) -> Vec<i64> {
        let n = self.basis_labels.len();
        if x == WeierstrassLabel::Zero {
            return vec![1; n];
        }
        let mut v = vec![0; n];
        if let Some(pos) = self.basis_labels.iter().position(|&l| l == x) {
            v[pos] = 1;
        }
        v
    }

    /// Apply a matrix to a vector over F2.
    pub fn apply(&self, m: &IntMatrix, v: &[i64]) -> Vec<i64> {
        m.mul_vec(v).into_iter().map(|c| c.rem_euclid(2)).collect()
    }
}

/// Matrices of α (`e_x -> e_{-x}`) and β (`e_x -> e_{1/x} + e_0`) on `A[2]`.
pub fn two_torsion_action(g: usize) -> Result<TwoTorsionModule> {
    if g < 4 || g % 2 == 1 {
        return Err(Error::DegenerateInput(format!("genus must be even and >= 4, got {g}")));
    }
    let labels: Vec<WeierstrassLabel> =
        WeierstrassLabel::finite_labels(g).into_iter().filter(|&l| l != WeierstrassLabel::Zero).collect();
    let n = labels.len();
    let mut module = TwoTorsionModule {
        g,
        basis_labels: labels.clone(),
        alpha: IntMatrix::zeros(n, n),
        beta: IntMatrix::zeros(n, n),
    };
    let e0 = module.vector(WeierstrassLabel::Zero);
    for (col, x) in labels.iter().enumerate() {
        let a = module.vector(x.negate());
        let b: Vec<i64> = module.vector(x.invert()).iter().zip(&e0).map(|(u, v)| (u + v) % 2).collect();
        for row in 0..n {
            module.alpha.set(row, col, a[row]);
            module.beta.set(row, col, b[row]);
        }
    }
    Ok(module)
}

/// Action of `2ω = -1 + i + j + k` on `A[2]`, i.e. `Id + α + β + αβ` over
/// F2. Returns whether it is nonzero and its F2 rank.
pub fn hurwitz_obstruction(g: usize) -> Result<(bool, usize)> {
    let m = two_torsion_action(g)?;
    Ok(two_omega_action(&m.alpha, &m.beta))
}

/// `(N != 0, rank N)` for `N = Id + A + B + AB` over F2.
pub fn two_omega_action(a: &IntMatrix, b: &IntMatrix) -> (bool, usize) {
    let id = IntMatrix::identity(a.rows());
    let n = mod2(&(&(&(&id + a) + b) + &(a * b)));
    (!n.is_zero_mod(2), n.rank_f2())
}

/// Exact genus-4 homology data: rational and analytic representations of
/// α and β and the intersection form.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyData {
    pub r_alpha: IntMatrix,
    pub r_beta: IntMatrix,
    pub e: IntMatrix,
    pub m_alpha: Vec<Vec<GaussianRational>>,
    pub m_beta: Vec<Vec<GaussianRational>>,
}

fn r_alpha_matrix() -> IntMatrix {
    let mut m = IntMatrix::zeros(8, 8);
    for k in 0..4 {
        m.set(2 * k, 2 * k + 1, -1);
        m.set(2 * k + 1, 2 * k, 1);
    }
    m
}

fn r_beta_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![1, 0, -1, -1, 0, 0, 0, 0],
        vec![0, -1, -1, 1, 0, 0, 0, 0],
        vec![1, 1, 0, -1, 0, 0, 0, 0],
        vec![1, -1, -1, 0, 0, 0, 0, 0],
        vec![0, 0, 0, -1, 0, 0, 0, 1],
        vec![0, 0, -1, 0, 0, 0, 1, 0],
        vec![1, 1, 0, -1, 0, -1, 0, 0],
        vec![1, -1, -1, 0, -1, 0, 0, 0],
    ])
}

fn intersection_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![0, -1, -1, 0, 0, 0, 0, 0],
        vec![1, 0, 0, -1, 0, 0, 0, 0],
        vec![1, 0, 0, 0, -1, 0, 0, 0],
        vec![0, 1, 0, 0, 0, -1, 0, 0],
        vec![0, 0, 1, 0, 0, 0, -1, 0],
        vec![0, 0, 0, 1, 0, 0, 0, -1],
        vec![0, 0, 0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 1, 0, 0],
    ])
}

fn gaussian_matrix(entries: &[(usize, usize, i64)]) -> Vec<Vec<GaussianRational>> {
    let mut m = vec![vec![<GaussianRational as Zero>::zero(); 4]; 4];
    for &(r, c, s) in entries {
        m[r][c] = GaussianRational::new(Rational::zero(), Rational::from_integer(s.into()));
    }
    m
}

fn gmul(a: &[Vec<GaussianRational>], b: &[Vec<GaussianRational>]) -> Vec<Vec<GaussianRational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(<GaussianRational as Zero>::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone()))
                .collect()
        })
        .collect()
}

fn gneg(a: &[Vec<GaussianRational>]) -> Vec<Vec<GaussianRational>> {
    a.iter().map(|r| r.iter().map(|v| -v.clone()).collect()).collect()
}

fn gidentity(n: usize) -> Vec<Vec<GaussianRational>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { <GaussianRational as One>::one() } else { <GaussianRational as Zero>::zero() }).collect())
        .collect()
}

/// Check every structural relation of the homology data.
pub fn check_homology_invariants(h: &HomologyData) -> Result<()> {
    let id = IntMatrix::identity(8);
    let minus_id = id.scale(-1);
    let ra = &h.r_alpha;
    let rb = &h.r_beta;
    let checks = [
        (ra * ra == minus_id, "R_alpha^2 = -Id"),
        (rb * rb == minus_id, "R_beta^2 = -Id"),
        (rb * ra == (ra * rb).scale(-1), "R_beta R_alpha = -R_alpha R_beta"),
        (&(&ra.transpose() * &h.e) * ra == h.e, "R_alpha preserves E"),
        (&(&rb.transpose() * &h.e) * rb == h.e, "R_beta preserves E"),
        (h.e.transpose() == h.e.scale(-1), "E is alternating"),
        (h.e.det() == 1.into(), "det E = 1"),
        (gmul(&h.m_alpha, &h.m_alpha) == gneg(&gidentity(4)), "M_alpha^2 = -Id"),
        (gmul(&h.m_beta, &h.m_beta) == gneg(&gidentity(4)), "M_beta^2 = -Id"),
        (gmul(&h.m_beta, &h.m_alpha) == gneg(&gmul(&h.m_alpha, &h.m_beta)), "M_beta M_alpha = -M_alpha M_beta"),
    ];
    for (ok, what) in checks {
        if !ok {
            return Err(Error::Internal(format!("homology data violates {what}")));
        }
    }
    Ok(())
}

/// The genus-4 homology data, with all invariants verified.
pub fn homology_data() -> Result<HomologyData> {
    let h = HomologyData {
        r_alpha: r_alpha_matrix(),
        r_beta: r_beta_matrix(),
        e: intersection_matrix(),
        m_alpha: gaussian_matrix(&[(0, 0, 1), (1, 1, -1), (2, 2, 1), (3, 3, -1)]),
        m_beta: gaussian_matrix(&[(0, 3, 1), (1, 2, 1), (2, 1, 1), (3, 0, 1)]),
    };
    check_homology_invariants(&h)?;
    Ok(h)
}

/// `R(q) = t Id + x R_alpha + y R_beta + z R_alpha R_beta` for `q = t + xi + yj + zk`.
pub fn rational_representation(h: &HomologyData, q: &QuaternionRational) -> Vec<Vec<Rational>> {
    let rk = &h.r_alpha * &h.r_beta;
    let id = IntMatrix::identity(8);
    (0..8)
        .map(|r| {
            (0..8)
                .map(|c| {
                    &q.t * Rational::from_integer(id.get(r, c).into())
                        + &q.x * Rational::from_integer(h.r_alpha.get(r, c).into())
                        + &q.y * Rational::from_integer(h.r_beta.get(r, c).into())
                        + &q.z * Rational::from_integer(rk.get(r, c).into())
                })
                .collect()
        })
        .collect()
}

/// `R(ω)` for `ω = (-1 + i + j + k)/2` and whether it is integral.
pub fn hurwitz_rational_rep() -> Result<(Vec<Vec<Rational>>, bool)> {
    let h = homology_data()?;
    let m = rational_representation(&h, &QuaternionRational::hurwitz_omega());
    let integral = m.iter().flatten().all(|v| v.is_integer());
    Ok((m, integral))
}

/// Rank of the rational span of `{Id, R_alpha, R_beta, R_alpha R_beta}`.
pub fn lipschitz_span_rank(h: &HomologyData) -> usize {
    let rk = &h.r_alpha * &h.r_beta;
    let mats = [IntMatrix::identity(8), h.r_alpha.clone(), h.r_beta.clone(), rk];
    let rows: Vec<Vec<Rational>> = mats
        .iter()
        .map(|m| m.to_rows().into_iter().flatten().map(|v| Rational::from_integer(v.into())).collect())
        .collect();
    rank_over(rows)
}

/// Verdict of the Nakayama test for freeness over the 2-adic Lipschitz order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Freeness {
    Free,
    NotLocallyFree,
}

/// `dim_F2(J Λ / 2Λ)` for the radical `J = (1+i, 1+j, 1+k)`, the quotient
/// dimension `n = dim Λ/JΛ`, and the verdict: `Λ_2` is free iff it has
/// Z2-rank `4n` (then the surjection `O_2^n -> Λ_2` given by Nakayama is an
/// isomorphism).
pub fn nonfreeness_for(r_i: &IntMatrix, r_j: &IntMatrix) -> (usize, usize, Freeness) {
    let n = r_i.rows();
    let id = IntMatrix::identity(n);
    let r_k = r_i * r_j;
    let block = IntMatrix::hstack(&[&(&id + r_i), &(&id + r_j), &(&id + &r_k)]);
    let dim_jl = rank_f2(&block.to_rows());
    let dim_q = n - dim_jl;
    let verdict = if 4 * dim_q == n { Freeness::Free } else { Freeness::NotLocallyFree };
    (dim_jl, dim_q, verdict)
}

/// The Nakayama test on the genus-4 period lattice.
pub fn nonfreeness_check() -> Result<(usize, usize, Freeness)> {
    let h = homology_data()?;
    Ok(nonfreeness_for(&h.r_alpha, &h.r_beta))
}

/// Left multiplication by `q` on `O^copies` in the basis `1, i, j, k` of each copy.
pub fn left_regular_representation(q: &QuaternionRational, copies: usize) -> Result<IntMatrix> {
    let basis = [QuaternionRational::one(), QuaternionRational::i(), QuaternionRational::j(), QuaternionRational::k()];
    let mut m = IntMatrix::zeros(4 * copies, 4 * copies);
    for (col, b) in basis.iter().enumerate() {
        let img = q.clone() * b.clone();
        for (row, v) in [&img.t, &img.x, &img.y, &img.z].into_iter().enumerate() {
            if !v.is_integer() {
                return Err(Error::PreconditionFailed("q is not in the Lipschitz order".into()));
            }
            let v: i64 = v.to_integer().try_into().map_err(|_| Error::Internal("overflow".into()))?;
            for c in 0..copies {
                m.set(4 * c + row, 4 * c + col, v);
            }
        }
    }
    Ok(m)
}

/// A 2×2 matrix over the rational quaternions.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionMatrix2 {
    pub entries: [[QuaternionRational; 2]; 2],
}

impl QuaternionMatrix2 {
    /// Conjugate transpose.
    pub fn conj_transpose(&self) -> Self {
        let e = &self.entries;
        Self {
            entries: [[e[0][0].conj(), e[1][0].conj()], [e[0][1].conj(), e[1][1].conj()]],
        }
    }

    pub fn neg(&self) -> Self {
        let e = &self.entries;
        Self { entries: [[-e[0][0].clone(), -e[0][1].clone()], [-e[1][0].clone(), -e[1][1].clone()]] }
    }
}

/// Form `T` with `trd(a^t T b') = Im H(φ(a), φ(b))` for the equivariant map
/// `φ(1,0) = e_1`, `φ(0,1) = e_5`, `Im H(u, v) = u^t E v`, for the left
/// module structure `i -> R_beta`, `j -> R_alpha`, `ij -> R_beta R_alpha`.
/// Each entry is recovered from `2t = trd(t) + trd(-ti)i + trd(-tj)j +
/// trd(-tk)k`, where `trd(t_{mn} conj(q)) = Im H(φ(e_m), φ(q e_n))`.
pub fn t_matrix() -> Result<QuaternionMatrix2> {
    let h = homology_data()?;
    let r_k = &h.r_beta * &h.r_alpha;
    let id = IntMatrix::identity(8);
    let reps = [&id, &h.r_beta, &h.r_alpha, &r_k];
    let basis_index = [0usize, 4];
    let im_h = |u: &[i64], v: &[i64]| -> i64 {
        let ev = h.e.mul_vec(v);
        u.iter().zip(ev).map(|(a, b)| a * b).sum()
    };
    let unit = |k: usize| -> Vec<i64> {
        let mut v = vec![0; 8];
        v[k] = 1;
        v
    };
    let half = Rational::new(1.into(), 2.into());
    let entry = |m: usize, n: usize| -> QuaternionRational {
        let u = unit(basis_index[m]);
        let c: Vec<Rational> = reps
            .iter()
            .map(|r| Rational::from_integer(im_h(&u, &r.mul_vec(&unit(basis_index[n]))).into()) * &half)
            .collect();
        QuaternionRational::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
    };
    let t = QuaternionMatrix2 { entries: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]] };
    // The defining identity must hold on all basis translates.
    let basis = [QuaternionRational::one(), QuaternionRational::i(), QuaternionRational::j(), QuaternionRational::k()];
    for m in 0..2 {
        for n in 0..2 {
            for (qa, ra) in basis.iter().zip(reps) {
                for (qb, rb) in basis.iter().zip(reps) {
                    let lhs = (qa.clone() * t.entries[m][n].clone() * qb.conj()).trd();
                    let rhs = im_h(&ra.mul_vec(&unit(basis_index[m])), &rb.mul_vec(&unit(basis_index[n])));
                    if lhs != Rational::from_integer(rhs.into()) {
                        return Err(Error::Internal("T does not represent the intersection form".into()));
                    }
                }
            }
        }
    }
    Ok(t)
}
