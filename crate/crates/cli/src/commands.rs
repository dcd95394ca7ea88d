//! Subcommand implementations. Each returns a JSON value.

use std::collections::BTreeSet;

use num_complex::Complex64;
use qmjac::algebra::{rat, GaussianRational, QuaternionRational, Rational};
use qmjac::degeneration::{
    bad_parameter_constructor, build_cluster_tree, padic_tree, reduction_verdict, t_adic_roots_g4, ClusterTree,
    FieldData, ValuationContext,
};
use qmjac::family::{
    build_family_poly, extra_automorphism_scan, family_discriminant, moduli_orbit_g4, verify_q8_symmetry,
    weierstrass_data, FamilyParams, ScanParameter, ScanResult,
};
use qmjac::frobenius::{
    check_good_reduction, count_modulus_id, count_points, l_polynomial_report_with, rational_model, Ansatz,
    LPolynomialReport,
};
use qmjac::monodromy::{
    candidate_fields, center_certificate, identify_connected_monodromy_field, omega_from_report, OmegaDatum,
};
use qmjac::periods::{parameter_stability, period_report};
use qmjac::schoen::{sign_control, verify_fourth_power_identity, SchoenContext};
use qmjac::torsion::{
    check_homology_invariants, homology_data, hurwitz_obstruction, hurwitz_rational_rep, left_regular_representation,
    lipschitz_span_rank, nonfreeness_check, nonfreeness_for, t_matrix, two_torsion_action,
};
use qmjac::{Error, Result};
use serde_json::{json, Value};

use crate::args::{AnsatzArg, FiberArgs};
use crate::cache::{CountCache, CountKey};
use crate::output::{int_matrix, poly, quaternion, rational, rationals, to_value};

/// Settings shared by every command.
#[derive(Debug)]
pub struct Context {
    pub budget: u128,
    pub seed: u64,
    pub cache: Option<CountCache>,
}

pub fn fiber_params(f: &FiberArgs) -> Result<FamilyParams> {
    match (&f.a, &f.b) {
        (_, Some(b)) => FamilyParams::from_b(f.g, b.0.iter().cloned().map(GaussianRational::real).collect()),
        (Some(a), None) => FamilyParams::from_a(f.g, a.0.clone()),
        (None, None) => FamilyParams::from_a(f.g, default_a(f.g)),
    }
}

/// `a = (1/2, 0, ..., 0)`.
pub fn default_a(g: usize) -> Vec<Rational> {
    let d = (g / 2).saturating_sub(1);
    (0..d).map(|j| if j == 0 { rat(1, 2) } else { rat(0, 1) }).collect()
}

pub fn family(params: &FamilyParams) -> Result<Value> {
    let model = build_family_poly(params)?;
    let f = model.rational_f();
    let disc = match f {
        Some(_) => Some(family_discriminant(params)?),
        None => None,
    };
    let mut out = json!({
        "fiber": params.canonical(),
        "genus": params.genus(),
        "model": f.as_ref().map(poly),
        "discriminant": disc.as_ref().map(rational),
        "q8_symmetric": verify_q8_symmetry(&model),
    });
    if let qmjac::family::Coordinates::B(_) = params.coords() {
        let ws = weierstrass_data(params)?;
        let stabilizers: serde_json::Map<String, Value> =
            ws.stabilizer_order.iter().map(|(l, n)| (l.to_string(), json!(n))).collect();
        out["weierstrass_stabilizers"] = Value::Object(stabilizers);
    }
    if params.genus() == 4 {
        let a = params.rational_a()?;
        if let Ok(orbit) = moduli_orbit_g4(&a[0]) {
            out["moduli_orbit"] = rationals(&orbit.into_iter().collect::<Vec<_>>());
        }
        if let qmjac::family::Coordinates::B(b) = params.coords() {
            if let ScanResult::Exact(maps) = extra_automorphism_scan(&ScanParameter::Exact(b[0].clone()))? {
                out["automorphisms"] = Value::Array(maps.iter().map(|m| json!(m.to_string())).collect());
            }
        }
    }
    Ok(out)
}

/// L-polynomial report, reading and writing counts through the cache.
pub fn frobenius_report(ctx: &mut Context, params: &FamilyParams, p: u64, ansatz: Ansatz) -> Result<LPolynomialReport> {
    check_good_reduction(&rational_model(params)?, p)?;
    let budget = ctx.budget;
    let cache = &mut ctx.cache;
    l_polynomial_report_with(params.genus(), p, ansatz, budget, &mut |r| {
        let key = CountKey { fiber: params.canonical(), p, r, modulus: count_modulus_id(p, r)? };
        if let Some(c) = cache.as_mut().and_then(|c| c.get(&key)) {
            return Ok(c);
        }
        let n = count_points(params, p, r, budget)?;
        if let Some(c) = cache.as_mut() {
            c.put(key, n).map_err(|e| Error::Internal(format!("cache write failed: {e}")))?;
        }
        Ok(n)
    })
}

pub fn ansatz(a: AnsatzArg) -> Ansatz {
    match a {
        AnsatzArg::Square => Ansatz::Square,
        AnsatzArg::Generic => Ansatz::Generic,
    }
}

pub fn frobenius(ctx: &mut Context, params: &FamilyParams, p: u64, a: Ansatz) -> Result<Value> {
    let rep = frobenius_report(ctx, params, p, a)?;
    Ok(json!({ "fiber": params.canonical(), "report": to_value(&rep) }))
}

pub fn monodromy(
    ctx: &mut Context,
    params: &FamilyParams,
    primes: &[u64],
    bad: &[u64],
    omega: Option<&[(u64, i8)]>,
    center: Option<&[u64]>,
) -> Result<Value> {
    let bad: BTreeSet<u64> = bad.iter().copied().collect();
    let mut reports = Vec::new();
    let data: Vec<OmegaDatum> = match omega {
        Some(list) => list.iter().map(|&(p, w)| OmegaDatum { p, omega: w, source_g_p: qmjac::algebra::Poly::one() }).collect(),
        None => {
            let mut out = Vec::new();
            for &p in primes {
                let rep = frobenius_report(ctx, params, p, Ansatz::Square)?;
                out.push(omega_from_report(&rep)?);
                reports.push(rep);
            }
            out
        }
    };
    let candidates = candidate_fields(&bad);
    let mut verdict = identify_connected_monodromy_field(&data, &candidates)?;
    if let Some(pair) = center {
        let [p1, p2] = pair else {
            return Err(Error::PreconditionFailed("--center takes exactly two primes".into()));
        };
        let mut g = Vec::new();
        for &p in [p1, p2] {
            let rep = match reports.iter().find(|r| r.p == p) {
                Some(r) => r.clone(),
                None => frobenius_report(ctx, params, p, Ansatz::Square)?,
            };
            g.push(rep.g_p.ok_or_else(|| Error::PreconditionFailed(format!("no square fit at {p}")))?);
        }
        verdict.center_certificate = Some(center_certificate(&g[0], *p1, &g[1], *p2)?);
    }
    Ok(json!({
        "fiber": params.canonical(),
        "bad_primes": bad,
        "candidate_names": verdict.candidates.iter().map(|c| c.name()).collect::<Vec<_>>(),
        "verdict": to_value(&verdict),
    }))
}

pub fn lattice() -> Result<Value> {
    let mut obstruction = serde_json::Map::new();
    for g in [4usize, 6] {
        let m = two_torsion_action(g)?;
        let (nonzero, rank) = hurwitz_obstruction(g)?;
        obstruction.insert(
            g.to_string(),
            json!({ "alpha": int_matrix(&m.alpha), "beta": int_matrix(&m.beta), "nonzero": nonzero, "rank": rank }),
        );
    }
    let h = homology_data()?;
    check_homology_invariants(&h)?;
    let (r_omega, integral) = hurwitz_rational_rep()?;
    let (dim_jl, dim_q, freeness) = nonfreeness_check()?;
    let ri = left_regular_representation(&QuaternionRational::i(), 2)?;
    let rj = left_regular_representation(&QuaternionRational::j(), 2)?;
    let (c_jl, c_q, c_free) = nonfreeness_for(&ri, &rj);
    let t = t_matrix()?;
    let t_entries: Vec<Vec<Value>> = t.entries.iter().map(|row| row.iter().map(quaternion).collect()).collect();
    Ok(json!({
        "two_torsion": obstruction,
        "homology": {
            "r_alpha": int_matrix(&h.r_alpha),
            "r_beta": int_matrix(&h.r_beta),
            "intersection": int_matrix(&h.e),
            "lipschitz_span_rank": lipschitz_span_rank(&h),
        },
        "r_omega": r_omega.iter().map(|r| rationals(r)).collect::<Vec<_>>(),
        "r_omega_integral": integral,
        "nonfreeness": { "dim_j_lambda": dim_jl, "quotient_dim": dim_q, "verdict": to_value(&freeness) },
        "free_control": { "dim_j_lambda": c_jl, "quotient_dim": c_q, "verdict": to_value(&c_free) },
        "t_matrix": t_entries,
        "t_is_skew_hermitian": t.conj_transpose() == t.neg(),
        "nrd_product": rational(&(t.entries[0][0].nrd() * t.entries[1][1].nrd())),
    }))
}

pub fn periods(a: Complex64, tol: f64, stability: usize, radius: f64, seed: u64) -> Result<Value> {
    let report = period_report(a, tol)?;
    let mut out = json!({ "report": to_value(&report) });
    if stability > 0 {
        let res = parameter_stability(a, radius, stability, seed, tol)?;
        out["stability"] = to_value(&res);
    }
    Ok(out)
}

fn tree_value(tree: &ClusterTree, field: &FieldData) -> Result<Value> {
    let verdict = reduction_verdict(tree, field)?;
    Ok(json!({
        "depths": rationals(&tree.depths()),
        "tree": to_value(tree),
        "verdict": to_value(&verdict),
    }))
}

pub fn clusters_pullback(k: i64) -> Result<Value> {
    let tree = build_cluster_tree(&t_adic_roots_g4(k), &ValuationContext::TAdic, Rational::from_integer(0.into()))?;
    tree_value(&tree, &FieldData { roots_unramified: true })
}

/// Roots `±b_j, ±1/b_j` lie in Q, and `±i` generate Q(i), which is unramified at odd `p`.
pub fn clusters_padic(b: &[Rational], p: u64) -> Result<Value> {
    let tree = padic_tree(b, p)?;
    let mut out = tree_value(&tree, &FieldData { roots_unramified: true })?;
    out["b"] = rationals(b);
    out["p"] = json!(p);
    Ok(out)
}

pub fn clusters_construct(g: usize, p: u64) -> Result<Value> {
    let b = bad_parameter_constructor(g, p)?;
    clusters_padic(&b, p)
}

pub fn schoen(g: usize, beta: Vec<Rational>, gamma: Option<Rational>, trials: usize, seed: u64, symbolic: bool) -> Result<Value> {
    let ctx = SchoenContext::new(g, beta, gamma)?;
    let report = verify_fourth_power_identity(&ctx, trials, seed, symbolic)?;
    let control = sign_control(&ctx, trials, seed)?;
    Ok(json!({ "report": to_value(&report), "sign_control_fourth_powers": control, "sign_control_trials": trials }))
}
