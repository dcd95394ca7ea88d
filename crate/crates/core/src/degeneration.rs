//! Cluster pictures of the Weierstrass roots over p-adic and t-adic fields,
//! the reduction criteria they drive, parameters with an even two-element
//! cluster, and the identities describing the degenerate fibers: the two
//! genus-2 to elliptic quotient maps and the j-invariant of `E_c`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{format_rational, gaussian_valuation, is_prime, GaussianRational, MPoly, PrimeBranch, Rational, Valuation};
use crate::error::{Error, Result};
use crate::family::WeierstrassLabel;

/// Exact Laurent polynomial in `t` with Q(i) coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, GaussianRational>,
}

impl Laurent {
    pub fn monomial(c: GaussianRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Laurent { terms }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let v = terms.remove(e).unwrap_or_else(<GaussianRational as Zero>::zero) - c.clone();
            if !v.is_zero() {
                terms.insert(*e, v);
            }
        }
        Laurent { terms }
    }

    pub fn neg(&self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    /// The t-adic valuation: the lowest exponent present.
    pub fn valuation(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(e) => Valuation::Finite(Rational::from_integer((*e).into())),
            None => Valuation::Infinite,
        }
    }
}

/// An element whose valuation can be measured in a [`ValuationContext`].
#[derive(Clone, Debug, PartialEq)]
pub enum ValuedElement {
    Gaussian(GaussianRational),
    Laurent(Laurent),
}

/// Valuation used to compare roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum ValuationContext {
    PAdic { p: u64, branch: PrimeBranch },
    TAdic,
}

impl ValuationContext {
    pub fn padic(p: u64) -> Result<Self> {
        Ok(ValuationContext::PAdic { p, branch: PrimeBranch::default_for(p)? })
    }

    /// Residue characteristic, `0` for the t-adic valuation on `Q((t))`.
    pub fn residue_characteristic(&self) -> u64 {
        match self {
            ValuationContext::PAdic { p, .. } => *p,
            ValuationContext::TAdic => 0,
        }
    }

    pub fn valuation_of_difference(&self, x: &ValuedElement, y: &ValuedElement) -> Result<Valuation> {
        match (self, x, y) {
            (ValuationContext::PAdic { p, branch }, ValuedElement::Gaussian(a), ValuedElement::Gaussian(b)) => {
                gaussian_valuation(&(a.clone() - b.clone()), *p, branch)
            }
            (ValuationContext::TAdic, ValuedElement::Laurent(a), ValuedElement::Laurent(b)) => Ok(a.sub(b).valuation()),
            (ValuationContext::TAdic, ValuedElement::Gaussian(a), ValuedElement::Gaussian(b)) => {
                Ok(if a == b { Valuation::Infinite } else { Valuation::Finite(Rational::zero()) })
            }
            _ => Err(Error::PreconditionFailed("element kind does not match the valuation".into())),
        }
    }
}

/// A labelled root.
#[derive(Clone, Debug, PartialEq)]
pub struct ValuedPoint {
    pub label: String,
    pub element: ValuedElement,
}

/// A cluster with at least one root. Roots are stored as sorted labels.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClusterNode {
    pub roots: Vec<String>,
    /// `min v(r - r')` over the cluster; absent for single roots.
    #[serde(serialize_with = "crate::algebra::ser::option")]
    pub depth: Option<Rational>,
    /// `v(c) + |s| d_s + sum_{r not in s} min_{r' in s} v(r - r')`; absent for single roots.
    #[serde(serialize_with = "crate::algebra::ser::option")]
    pub nu: Option<Rational>,
    pub children: Vec<ClusterNode>,
}

impl ClusterNode {
    pub fn size(&self) -> usize {
        self.roots.len()
    }

    pub fn is_proper(&self) -> bool {
        self.size() >= 2
    }

    pub fn is_even(&self) -> bool {
        self.size() % 2 == 0
    }

    /// Even with only even children.
    pub fn is_ubereven(&self) -> bool {
        self.is_even() && self.children.iter().all(ClusterNode::is_even)
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a ClusterNode>) {
        out.push(self);
        for c in &self.children {
            c.collect(out);
        }
    }
}

/// The cluster picture of a set of roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClusterTree {
    pub context: ValuationContext,
    #[serde(serialize_with = "crate::algebra::ser::rational")]
    pub leading_coeff_valuation: Rational,
    pub root: ClusterNode,
}

impl ClusterTree {
    /// All clusters with at least two roots, parents before children.
    pub fn proper_clusters(&self) -> Vec<&ClusterNode> {
        let mut all = Vec::new();
        self.root.collect(&mut all);
        all.into_iter().filter(|c| c.is_proper()).collect()
    }

    pub fn depths(&self) -> Vec<Rational> {
        self.proper_clusters().iter().filter_map(|c| c.depth.clone()).collect()
    }

    /// Genus of the curve `y^2 = c prod (x - r)`.
    pub fn genus(&self) -> usize {
        (self.root.size() - 1) / 2
    }

    fn is_principal(&self, s: &ClusterNode) -> bool {
        if s.size() < 3 {
            return false;
        }
        if s.roots == self.root.roots {
            let two_children = s.children.len() == 2 && s.children.iter().all(ClusterNode::is_proper);
            let big_child = s.children.iter().any(|c| c.size() == 2 * self.genus() + 1);
            return !(s.is_even() && (two_children || big_child));
        }
        true
    }
}

fn finite(v: Valuation, a: &str, b: &str) -> Result<Rational> {
    v.finite().cloned().ok_or_else(|| Error::DegenerateInput(format!("roots {a} and {b} coincide")))
}

/// Build the cluster picture of `roots` for the leading coefficient valuation `lc_val`.
pub fn build_cluster_tree(roots: &[ValuedPoint], context: &ValuationContext, lc_val: Rational) -> Result<ClusterTree> {
    if roots.is_empty() {
        return Err(Error::DegenerateInput("no roots".into()));
    }
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&a, &b| roots[a].label.cmp(&roots[b].label));
    if order.windows(2).any(|w| roots[w[0]].label == roots[w[1]].label) {
        return Err(Error::DegenerateInput("duplicate root labels".into()));
    }
    let pts: Vec<&ValuedPoint> = order.iter().map(|&i| &roots[i]).collect();
    let n = pts.len();
    let mut dist = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = context.valuation_of_difference(&pts[i].element, &pts[j].element)?;
            let v = finite(v, &pts[i].label, &pts[j].label)?;
            dist[i][j] = v.clone();
            dist[j][i] = v;
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let root = build_node(&all, &pts, &dist, &lc_val);
    Ok(ClusterTree { context: context.clone(), leading_coeff_valuation: lc_val, root })
}

fn build_node(members: &[usize], pts: &[&ValuedPoint], dist: &[Vec<Rational>], lc_val: &Rational) -> ClusterNode {
    let roots: Vec<String> = members.iter().map(|&i| pts[i].label.clone()).collect();
    if members.len() == 1 {
        return ClusterNode { roots, depth: None, nu: None, children: vec![] };
    }
    let depth = members
        .iter()
        .flat_map(|&i| members.iter().filter(move |&&j| j != i).map(move |&j| dist[i][j].clone()))
        .min()
        .expect("at least two members");
    // v(r - r') > depth is an equivalence relation by the ultrametric inequality.
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for &i in members {
        match parts.iter_mut().find(|p| dist[p[0]][i] > depth) {
            Some(p) => p.push(i),
            None => parts.push(vec![i]),
        }
    }
    let mut nu = lc_val + Rational::from_integer((members.len() as i64).into()) * &depth;
    for r in 0..pts.len() {
        if !members.contains(&r) {
            nu += members.iter().map(|&m| dist[r][m].clone()).min().expect("non-empty");
        }
    }
    let children = parts.iter().map(|p| build_node(p, pts, dist, lc_val)).collect();
    ClusterNode { roots, depth: Some(depth), nu: Some(nu), children }
}

/// Reduction type read off the cluster picture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionVerdict {
    GoodReduction,
    PotentiallyGood { failed: String },
    NotPotentiallyGood { even_cluster: Vec<String> },
    Inconclusive(String),
}

/// Whether the roots generate an unramified extension of the base field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldData {
    pub roots_unramified: bool,
}

/// Good reduction when the roots are unramified, every proper cluster other
/// than the top one is odd, and every proper cluster is principal with even
/// `ν`. A proper even cluster other than the top one with an odd child rules
/// out potentially good reduction.
pub fn reduction_verdict(tree: &ClusterTree, field: &FieldData) -> Result<ReductionVerdict> {
    if tree.context.residue_characteristic() == 2 {
        return Err(Error::Unsupported("residue characteristic 2".into()));
    }
    let proper = tree.proper_clusters();
    let lower: Vec<&&ClusterNode> = proper.iter().filter(|c| c.roots != tree.root.roots).collect();
    if let Some(s) = lower.iter().find(|c| c.is_even() && !c.is_ubereven()) {
        return Ok(ReductionVerdict::NotPotentiallyGood { even_cluster: s.roots.clone() });
    }
    if let Some(s) = lower.iter().find(|c| c.is_even()) {
        return Ok(ReductionVerdict::Inconclusive(format!("übereven cluster {{{}}}", s.roots.join(", "))));
    }
    if !field.roots_unramified {
        return Ok(ReductionVerdict::PotentiallyGood { failed: "roots generate a ramified extension".into() });
    }
    for s in &proper {
        if !tree.is_principal(s) {
            return Ok(ReductionVerdict::PotentiallyGood { failed: format!("cluster {{{}}} is not principal", s.roots.join(", ")) });
        }
        let nu = s.nu.as_ref().expect("proper cluster");
        if !nu.is_integer() || nu.to_integer() % 2 != 0.into() {
            return Ok(ReductionVerdict::PotentiallyGood {
                failed: format!("cluster {{{}}} has odd nu = {}", s.roots.join(", "), format_rational(nu)),
            });
        }
    }
    Ok(ReductionVerdict::GoodReduction)
}

/// Finite roots `0, ±1, ±i, ±b, ±1/b` of the genus-4 fiber over `Q((t))` with `b = t^k`.
pub fn t_adic_roots_g4(k: i64) -> Vec<ValuedPoint> {
    let g = |re: i64, im: i64| GaussianRational::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()));
    let c = |re, im| Laurent::constant(g(re, im));
    let b = Laurent::monomial(g(1, 0), k);
    let inv_b = Laurent::monomial(g(1, 0), -k);
    let mut out = vec![("0", Laurent::default()), ("1", c(1, 0)), ("-1", c(-1, 0)), ("i", c(0, 1)), ("-i", c(0, -1))];
    out.push(("b1", b.clone()));
    out.push(("-b1", b.neg()));
    out.push(("1/b1", inv_b.clone()));
    out.push(("-1/b1", inv_b.neg()));
    out.into_iter().map(|(l, e)| ValuedPoint { label: l.into(), element: ValuedElement::Laurent(e) }).collect()
}

/// Finite roots `0, ±1, ±i, ±b_j, ±1/b_j` of the genus-`2d+2` fiber.
pub fn gaussian_roots(b: &[GaussianRational]) -> Result<Vec<ValuedPoint>> {
    if b.iter().any(Zero::is_zero) {
        return Err(Error::DegenerateInput("b_j = 0".into()));
    }
    Ok(WeierstrassLabel::finite_labels(2 * b.len() + 2)
        .iter()
        .map(|l| ValuedPoint { label: l.to_string(), element: ValuedElement::Gaussian(l.value(b).expect("b_j non-zero")) })
        .collect())
}

/// Cluster picture of the fiber with parameters `b` at the odd prime `p`.
pub fn padic_tree(b: &[Rational], p: u64) -> Result<ClusterTree> {
    if !is_prime(p) {
        return Err(Error::PreconditionFailed(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::Unsupported("residue characteristic 2".into()));
    }
    let gb: Vec<GaussianRational> = b.iter().cloned().map(GaussianRational::real).collect();
    build_cluster_tree(&gaussian_roots(&gb)?, &ValuationContext::padic(p)?, Rational::zero())
}

fn unit_distance(x: &GaussianRational, y: &GaussianRational, p: u64, branch: &PrimeBranch) -> Result<bool> {
    Ok(gaussian_valuation(&(x.clone() - y.clone()), p, branch)? == Valuation::Finite(Rational::zero()))
}

/// Search for integers `b_1, ..., b_d` (`d = g/2 - 1`) outside `{0, ±1}` with
/// `v_p(b_1 - b_2) > 0` and `v_p(b_1 - r) = 0` for every other root `r`.
pub fn bad_parameter_constructor(g: usize, p: u64) -> Result<Vec<Rational>> {
    if g < 6 || g % 2 != 0 {
        return Err(Error::PreconditionFailed(format!("genus {g} must be even and at least 6")));
    }
    if !is_prime(p) || p == 2 {
        return Err(Error::PreconditionFailed(format!("{p} is not an odd prime")));
    }
    let d = g / 2 - 1;
    let bound = 4 * p as i64 + 4 * d as i64 + 8;
    let branch = PrimeBranch::default_for(p)?;
    let int = |n: i64| Rational::from_integer(n.into());
    for b1 in 2..=bound {
        let b2 = b1 + p as i64;
        let mut chosen = vec![int(b1), int(b2)];
        let mut next = 2i64;
        while chosen.len() < d && next <= bound {
            let cand = int(next);
            next += 1;
            if chosen.contains(&cand) {
                continue;
            }
            let mut trial = chosen.clone();
            trial.push(cand);
            if satisfies_bad_conditions(&trial, p, &branch)? {
                chosen = trial;
            }
        }
        if chosen.len() == d && satisfies_bad_conditions(&chosen, p, &branch)? {
            return Ok(chosen);
        }
    }
    Err(Error::SearchExhausted(format!("no tuple for g = {g}, p = {p} with entries up to {bound}")))
}

/// The two displayed conditions, plus distinctness of all roots.
pub fn satisfies_bad_conditions(b: &[Rational], p: u64, branch: &PrimeBranch) -> Result<bool> {
    if b.len() < 2 || b.iter().any(|x| x.is_zero() || x.abs() == Rational::one()) {
        return Ok(false);
    }
    let gb: Vec<GaussianRational> = b.iter().cloned().map(GaussianRational::real).collect();
    let labels = WeierstrassLabel::finite_labels(2 * b.len() + 2);
    let values: Vec<GaussianRational> = labels.iter().map(|l| l.value(&gb).expect("non-zero")).collect();
    for i in 0..values.len() {
        for j in 0..i {
            if values[i] == values[j] {
                return Ok(false);
            }
        }
    }
    let b1 = &gb[0];
    let b2 = &gb[1];
    if !gaussian_valuation(&(b1.clone() - b2.clone()), p, branch)?.is_positive() {
        return Ok(false);
    }
    for (l, r) in labels.iter().zip(&values) {
        let is_b1_or_b2 = matches!(l, WeierstrassLabel::B { j: 1 | 2, negative: false });
        if !is_b1_or_b2 && !unit_distance(b1, r, p, branch)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Variables of the splitting identity: `z, c, s = sqrt(c), v`.
const Z: usize = 0;
const C: usize = 1;
const S: usize = 2;
const V: usize = 3;

/// Whether `u = z + c/z`, `w = factor * v (z + sign s) / z^2` maps
/// `v^2 = -z(z^2 - 1)(z^2 - c^2)` to `w^2 = (u + 2 sign s)(u^2 - (c + 1)^2)`,
/// with `s^2 = c`. The check multiplies both sides by `z^4` and reduces
/// modulo `v^2` and `s^2`.
pub fn splitting_identity_with(sign: i8, factor: GaussianRational) -> Result<bool> {
    if sign != 1 && sign != -1 {
        return Err(Error::PreconditionFailed("sign must be ±1".into()));
    }
    type P = MPoly<GaussianRational>;
    let var = |i| P::var(4, i);
    let k = |n: i64| P::constant(4, GaussianRational::real(Rational::from_integer(n.into())));
    let (z, c, s, v) = (var(Z), var(C), var(S), var(V));
    let sgn = k(sign as i64);
    let signed_s = &sgn * &s;
    // z^2 w = factor * v (z ± s)
    let zw = &(&P::constant(4, factor) * &v) * &(&z + &signed_s);
    let lhs = &zw * &zw;
    // z u = z^2 + c
    let zu = &(&z * &z) + &c;
    let c1 = &c + &k(1);
    let rhs = &(&z * &(&zu + &(&(&k(2) * &signed_s) * &z))) * &(&(&zu * &zu) - &(&(&c1 * &c1) * &(&z * &z)));
    let curve = -&(&(&z * &(&(&z * &z) - &k(1))) * &(&(&z * &z) - &(&c * &c)));
    let diff = (&lhs - &rhs).reduce_power(V, 2, &curve).reduce_power(S, 2, &c);
    Ok(diff.is_zero())
}

/// The quotient map identity for the stated sign.
pub fn genus2_splitting_identity(sign: i8) -> Result<bool> {
    splitting_identity_with(sign, GaussianRational::i())
}

/// `j(E_c) = 1728 (c + 1/3)^3 (c + 3)^3 / ((c - 1)^4 (c + 1)^2)`.
pub fn j_invariant_ec(c: &Rational) -> Result<Rational> {
    let one = Rational::one();
    if c.abs() == one {
        return Err(Error::Pole(format!("c = {}", format_rational(c))));
    }
    let third = Rational::new(1.into(), 3.into());
    let three = Rational::from_integer(3.into());
    let cube = |x: Rational| x.clone() * x.clone() * x;
    let num = Rational::from_integer(1728.into()) * cube(c + third) * cube(c + three);
    let cm = c - &one;
    let cp = c + &one;
    let den = cm.clone() * cm.clone() * cm.clone() * cm * cp.clone() * cp;
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_rational, rat};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    fn sorted(v: &[&str]) -> Vec<String> {
        let mut out: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        out.sort();
        out
    }

    #[test]
    fn pullback_tree_at_t_zero() {
        let tree = build_cluster_tree(&t_adic_roots_g4(2), &ValuationContext::TAdic, Rational::zero()).unwrap();
        let proper = tree.proper_clusters();
        assert_eq!(proper.len(), 3);
        assert_eq!(tree.depths(), vec![rat(-2, 1), rat(0, 1), rat(2, 1)]);
        assert_eq!(proper[1].roots, sorted(&["0", "b1", "-b1", "1", "-1", "i", "-i"]));
        assert_eq!(proper[2].roots, sorted(&["0", "b1", "-b1"]));
        let nus: Vec<Rational> = proper.iter().map(|c| c.nu.clone().unwrap()).collect();
        assert_eq!(nus, vec![rat(-18, 1), rat(-4, 1), rat(2, 1)]);
        let v = reduction_verdict(&tree, &FieldData { roots_unramified: true }).unwrap();
        assert_eq!(v, ReductionVerdict::GoodReduction);
    }

    #[test]
    fn leading_coefficient_of_even_valuation_keeps_good_reduction() {
        let tree = build_cluster_tree(&t_adic_roots_g4(2), &ValuationContext::TAdic, rat(-4, 1)).unwrap();
        assert_eq!(reduction_verdict(&tree, &FieldData { roots_unramified: true }).unwrap(), ReductionVerdict::GoodReduction);
    }

    #[test]
    fn b_family_without_substitution_is_not_good() {
        let tree = build_cluster_tree(&t_adic_roots_g4(1), &ValuationContext::TAdic, Rational::zero()).unwrap();
        assert_eq!(tree.depths(), vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
        let odd_depths = tree.depths().iter().filter(|d| d.to_integer() % 2 != 0.into()).count();
        assert_eq!(odd_depths, 2);
        let v = reduction_verdict(&tree, &FieldData { roots_unramified: true }).unwrap();
        assert!(matches!(v, ReductionVerdict::PotentiallyGood { .. }), "{v:?}");
    }

    #[test]
    fn unit_distance_roots_form_one_cluster() {
        let tree = padic_tree(&ints(&[2]), 13).unwrap();
        assert_eq!(tree.proper_clusters().len(), 1);
        assert_eq!(tree.root.children.len(), 9);
        assert_eq!(tree.depths(), vec![rat(0, 1)]);
    }

    #[test]
    fn genus_six_bad_tuple_at_eleven() {
        let b = bad_parameter_constructor(6, 11).unwrap();
        assert_eq!(b, ints(&[2, 13]));
        let branch = PrimeBranch::default_for(11).unwrap();
        // v_11(13 - 2) = 1 and b1 - r is a unit for the other roots.
        let diff = GaussianRational::real(rat(11, 1));
        assert_eq!(gaussian_valuation(&diff, 11, &branch).unwrap(), Valuation::Finite(rat(1, 1)));
        assert!(satisfies_bad_conditions(&b, 11, &branch).unwrap());
        let tree = padic_tree(&b, 11).unwrap();
        let pair = tree.proper_clusters().into_iter().find(|c| c.roots == sorted(&["b1", "b2"])).unwrap();
        assert_eq!(pair.depth, Some(rat(1, 1)));
        let v = reduction_verdict(&tree, &FieldData { roots_unramified: true }).unwrap();
        assert!(matches!(v, ReductionVerdict::NotPotentiallyGood { .. }), "{v:?}");
    }

    #[test]
    fn three_entry_tuple_violates_unit_condition() {
        // With b3 = 5 the root -1/5 satisfies 2 - (-1/5) = 11/5, so b1 - r is not a unit.
        let b = ints(&[2, 13, 5]);
        let branch = PrimeBranch::default_for(11).unwrap();
        let r = GaussianRational::real(rat(11, 5));
        assert_eq!(gaussian_valuation(&r, 11, &branch).unwrap(), Valuation::Finite(rat(1, 1)));
        assert!(!satisfies_bad_conditions(&b, 11, &branch).unwrap());
        let tree = padic_tree(&b, 11).unwrap();
        let odd_triple = tree.proper_clusters().into_iter().find(|c| c.roots.contains(&"b1".to_string()) && c.size() < 15).unwrap();
        assert_eq!(odd_triple.roots, sorted(&["b1", "b2", "-1/b3"]));
    }

    #[test]
    fn genus_eight_at_thirteen() {
        let b = bad_parameter_constructor(8, 13).unwrap();
        assert_eq!(b.len(), 3);
        let branch = PrimeBranch::default_for(13).unwrap();
        assert!(satisfies_bad_conditions(&b, 13, &branch).unwrap());
    }

    #[test]
    fn small_prime_search_exhausts() {
        assert!(matches!(bad_parameter_constructor(6, 3), Err(Error::SearchExhausted(_))));
    }

    #[test]
    fn residue_characteristic_two_is_rejected() {
        assert!(matches!(padic_tree(&ints(&[3]), 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn coinciding_roots_are_degenerate() {
        let pts = vec![
            ValuedPoint { label: "x".into(), element: ValuedElement::Gaussian(GaussianRational::real(rat(2, 1))) },
            ValuedPoint { label: "y".into(), element: ValuedElement::Gaussian(GaussianRational::real(rat(2, 1))) },
        ];
        let r = build_cluster_tree(&pts, &ValuationContext::padic(5).unwrap(), Rational::zero());
        assert!(matches!(r, Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn splitting_maps() {
        assert!(genus2_splitting_identity(1).unwrap());
        assert!(genus2_splitting_identity(-1).unwrap());
        let one = GaussianRational::real(Rational::one());
        assert!(!splitting_identity_with(1, one.clone()).unwrap());
        assert!(!splitting_identity_with(-1, one).unwrap());
    }

    #[test]
    fn j_invariants() {
        let j2 = j_invariant_ec(&rat(2, 1)).unwrap();
        assert_eq!(j2, parse_rational("2744000/9").unwrap());
        assert!(!j2.is_integer());
        assert_eq!(j_invariant_ec(&rat(-3, 1)).unwrap(), Rational::zero());
        assert!(matches!(j_invariant_ec(&rat(1, 1)), Err(Error::Pole(_))));
        assert!(matches!(j_invariant_ec(&rat(-1, 1)), Err(Error::Pole(_))));
    }

    fn check_depth_monotone(node: &ClusterNode) {
        for c in &node.children {
            if let (Some(d), Some(dc)) = (&node.depth, &c.depth) {
                assert!(dc > d);
            }
            check_depth_monotone(c);
        }
    }

    proptest! {
        #[test]
        fn j_invariant_is_symmetric_under_inversion(n in -500i64..500, d in 1i64..500) {
            let c = rat(n, d);
            prop_assume!(!c.is_zero() && c.abs() != Rational::one());
            prop_assert_eq!(j_invariant_ec(&c).unwrap(), j_invariant_ec(&c.recip()).unwrap());
        }

        #[test]
        fn tree_ignores_root_order(b1 in 2i64..60, b2 in 2i64..60, p in prop::sample::select(vec![5u64, 7, 11, 13]), seed in any::<u64>()) {
            prop_assume!(b1 != b2);
            let gb: Vec<GaussianRational> = ints(&[b1, b2]).into_iter().map(GaussianRational::real).collect();
            let pts = gaussian_roots(&gb).unwrap();
            let ctx = ValuationContext::padic(p).unwrap();
            let Ok(base) = build_cluster_tree(&pts, &ctx, Rational::zero()) else { return Ok(()) };
            let mut shuffled = pts.clone();
            let n = shuffled.len();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                shuffled.swap(i, (s >> 33) as usize % (i + 1));
            }
            let other = build_cluster_tree(&shuffled, &ctx, Rational::zero()).unwrap();
            prop_assert_eq!(&base, &other);
            check_depth_monotone(&base.root);
        }

        #[test]
        fn constructed_tuples_round_trip(g in prop::sample::select(vec![6usize, 8, 10]), p in prop::sample::select(vec![17u64, 19, 23, 29, 31])) {
            let b = bad_parameter_constructor(g, p).unwrap();
            let tree = padic_tree(&b, p).unwrap();
            let v = reduction_verdict(&tree, &FieldData { roots_unramified: true }).unwrap();
            let bad = matches!(v, ReductionVerdict::NotPotentiallyGood { .. });
            prop_assert!(bad);
        }
    }
}
