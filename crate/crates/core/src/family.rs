//! The Q8-symmetric family: models, discriminants, the change between
//! `a`- and `b`-coordinates, Weierstrass data and automorphism scans.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{discriminant, format_rational, Field, GaussianRational, Poly, Rational};
use crate::error::{Error, Result};

/// Parameters of a fibre: either `a`-coordinates (rational) or
/// `b`-coordinates (roots `±b_j, ±1/b_j` of the last factor).
#[derive(Clone, Debug, PartialEq)]
pub enum Coordinates {
    A(Vec<Rational>),
    B(Vec<GaussianRational>),
}

/// A fibre of the genus-`g` family.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams {
    g: usize,
    coords: Coordinates,
}

impl FamilyParams {
    fn check_genus(g: usize) -> Result<()> {
        if g < 4 || g % 2 == 1 {
            return Err(Error::DegenerateInput(format!("genus must be even and >= 4, got {g}")));
        }
        Ok(())
    }

    pub fn from_a(g: usize, a: Vec<Rational>) -> Result<Self> {
        Self::check_genus(g)?;
        if a.len() != g / 2 - 1 {
            return Err(Error::DegenerateInput(format!(
                "genus {g} needs {} a-parameters, got {}",
                g / 2 - 1,
                a.len()
            )));
        }
        Ok(Self { g, coords: Coordinates::A(a) })
    }

    pub fn from_b(g: usize, b: Vec<GaussianRational>) -> Result<Self> {
        Self::check_genus(g)?;
        if b.len() != g / 2 - 1 {
            return Err(Error::DegenerateInput(format!(
                "genus {g} needs {} b-parameters, got {}",
                g / 2 - 1,
                b.len()
            )));
        }
        for bj in &b {
            if Zero::is_zero(bj) {
                return Err(Error::DegenerateInput("b_j = 0".into()));
            }
            let b4 = bj.clone() * bj.clone() * bj.clone() * bj.clone();
            if b4 == <GaussianRational as One>::one() {
                return Err(Error::SingularFiber(format!("b_j = {bj} satisfies b^4 = 1")));
            }
        }
        Ok(Self { g, coords: Coordinates::B(b) })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    /// Number `d = g/2 - 1` of free parameters.
    pub fn d(&self) -> usize {
        self.g / 2 - 1
    }

    pub fn coords(&self) -> &Coordinates {
        &self.coords
    }

    /// The `a`-vector, computed from `b` when necessary.
    pub fn a_values(&self) -> Result<Vec<GaussianRational>> {
        match &self.coords {
            Coordinates::A(a) => Ok(a.iter().cloned().map(GaussianRational::real).collect()),
            Coordinates::B(b) => base_change_b_to_a(self.g, b),
        }
    }

    /// The `a`-vector when it is rational.
    pub fn rational_a(&self) -> Result<Vec<Rational>> {
        self.a_values()?
            .into_iter()
            .map(|v| {
                if v.is_real() {
                    Ok(v.re)
                } else {
                    Err(Error::PreconditionFailed("parameters are not rational".into()))
                }
            })
            .collect()
    }

    /// Canonical text form used in cache keys, e.g. `g=4;a=1/2`.
    pub fn canonical(&self) -> String {
        match &self.coords {
            Coordinates::A(a) => {
                let s: Vec<String> = a.iter().map(format_rational).collect();
                format!("g={};a={}", self.g, s.join(","))
            }
            Coordinates::B(b) => {
                let s: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("g={};b={}", self.g, s.join(","))
            }
        }
    }
}

/// `y^2 = f(x)` with `deg f = 2g + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperellipticModel {
    pub genus: usize,
    pub f: Poly<GaussianRational>,
}

impl HyperellipticModel {
    /// The model polynomial over Q, if its coefficients are rational.
    pub fn rational_f(&self) -> Option<Poly<Rational>> {
        if self.f.coeffs().iter().all(GaussianRational::is_real) {
            Some(self.f.map(|c| c.re.clone()))
        } else {
            None
        }
    }
}

/// `x^{2g-4} + 1 + sum_j a_j (x^{2g-4-2j} + x^{2j})`.
fn last_factor(g: usize, a: &[GaussianRational]) -> Poly<GaussianRational> {
    let top = 2 * g - 4;
    let mut c = vec![<GaussianRational as Zero>::zero(); top + 1];
    c[0] = <GaussianRational as One>::one();
    c[top] = <GaussianRational as One>::one();
    for (j, aj) in a.iter().enumerate() {
        let j = j + 1;
        c[top - 2 * j] = c[top - 2 * j].clone() + aj.clone();
        c[2 * j] = c[2 * j].clone() + aj.clone();
    }
    Poly::new(c)
}

/// `x(x^4 - 1)`.
fn q8_core() -> Poly<GaussianRational> {
    Poly::from_i64(&[0, -1, 0, 0, 0, 1])
}

/// Expanded model `f(x) = x(x^4-1)(x^{2g-4} + 1 + sum_j a_j(x^{2g-4-2j} + x^{2j}))`.
pub fn build_family_poly(params: &FamilyParams) -> Result<HyperellipticModel> {
    let a = params.a_values()?;
    let f = &q8_core() * &last_factor(params.g, &a);
    Ok(HyperellipticModel { genus: params.g, f })
}

/// Polynomial discriminant `disc(f)` of the degree-(2g+1) model.
pub fn model_polynomial_discriminant(params: &FamilyParams) -> Result<Rational> {
    let model = build_family_poly(params)?;
    let f = model
        .rational_f()
        .ok_or_else(|| Error::PreconditionFailed("discriminant needs rational parameters".into()))?;
    discriminant(&f)
}

/// Discriminant of the curve `y^2 = f(x)`: `2^{4g} disc(f)` for the
/// odd-degree model. Zero iff the fibre is singular. In genus 4 this is
/// `-2^40 (a^2 - 1)^6`.
pub fn family_discriminant(params: &FamilyParams) -> Result<Rational> {
    let disc = model_polynomial_discriminant(params)?;
    let scale = Rational::from_integer(num_bigint::BigInt::from(2).pow(4 * params.g as u32));
    Ok(disc * scale)
}

/// The `a`-vector with `prod_j (x^2 - b_j^2)(x^2 - b_j^{-2}) = x^{2g-4} + 1 + sum_j a_j (x^{2g-4-2j} + x^{2j})`.
pub fn base_change_b_to_a(g: usize, b: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
    FamilyParams::check_genus(g)?;
    let d = g / 2 - 1;
    if b.len() != d {
        return Err(Error::DegenerateInput(format!("expected {d} b-parameters")));
    }
    let mut prod = Poly::<GaussianRational>::one();
    for bj in b {
        let inv = bj.inv().ok_or_else(|| Error::DegenerateInput("b_j = 0".into()))?;
        let b2 = bj.clone() * bj.clone();
        let ib2 = inv.clone() * inv;
        prod = &prod * &Poly::new(vec![-b2, <GaussianRational as Zero>::zero(), <GaussianRational as One>::one()]);
        prod = &prod * &Poly::new(vec![-ib2, <GaussianRational as Zero>::zero(), <GaussianRational as One>::one()]);
    }
    let top = 2 * g - 4;
    let half = GaussianRational::real(Rational::new(1.into(), 2.into()));
    let mut a = Vec::with_capacity(d);
    for j in 1..=d {
        if j < d {
            a.push(prod.coeff(top - 2 * j));
        } else {
            a.push(prod.coeff(2 * d) * half.clone());
        }
    }
    debug_assert_eq!(last_factor(g, &a), prod);
    Ok(a)
}

/// Checks `f(-x) = -f(x)` and `x^{2g+2} f(1/x) = -f(x)` exactly.
pub fn verify_q8_symmetry(model: &HyperellipticModel) -> bool {
    let n = 2 * model.genus + 1;
    if model.f.degree() != Some(n) {
        return false;
    }
    let minus_x = Poly::from_i64(&[0, -1]);
    let odd = model.f.compose(&minus_x) == -&model.f;
    let inverted = model.f.reversed(n + 1) == -&model.f;
    odd && inverted
}

/// Symbolic label of a Weierstrass point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum WeierstrassLabel {
    Zero,
    One,
    MinusOne,
    I,
    MinusI,
    /// `sign * b_j` (index `j` starting at 1).
    B { j: usize, negative: bool },
    /// `sign / b_j`.
    InvB { j: usize, negative: bool },
    Infinity,
}

impl fmt::Display for WeierstrassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeierstrassLabel::Zero => write!(f, "0"),
            WeierstrassLabel::One => write!(f, "1"),
            WeierstrassLabel::MinusOne => write!(f, "-1"),
            WeierstrassLabel::I => write!(f, "i"),
            WeierstrassLabel::MinusI => write!(f, "-i"),
            WeierstrassLabel::B { j, negative } => {
                write!(f, "{}b{j}", if *negative { "-" } else { "" })
            }
            WeierstrassLabel::InvB { j, negative } => {
                write!(f, "{}1/b{j}", if *negative { "-" } else { "" })
            }
            WeierstrassLabel::Infinity => write!(f, "inf"),
        }
    }
}

impl WeierstrassLabel {
    /// Value of the label for the given `b`; `None` at infinity.
    pub fn value(&self, b: &[GaussianRational]) -> Option<GaussianRational> {
        let sign = |neg: bool, v: GaussianRational| if neg { -v } else { v };
        Some(match *self {
            WeierstrassLabel::Zero => <GaussianRational as Zero>::zero(),
            WeierstrassLabel::One => <GaussianRational as One>::one(),
            WeierstrassLabel::MinusOne => -<GaussianRational as One>::one(),
            WeierstrassLabel::I => GaussianRational::i(),
            WeierstrassLabel::MinusI => -GaussianRational::i(),
            WeierstrassLabel::B { j, negative } => sign(negative, b[j - 1].clone()),
            WeierstrassLabel::InvB { j, negative } => sign(negative, b[j - 1].inv()?),
            WeierstrassLabel::Infinity => return None,
        })
    }

    /// Image under `x -> -x` (the action of α on the x-line).
    pub fn negate(&self) -> Self {
        match *self {
            WeierstrassLabel::One => WeierstrassLabel::MinusOne,
            WeierstrassLabel::MinusOne => WeierstrassLabel::One,
            WeierstrassLabel::I => WeierstrassLabel::MinusI,
            WeierstrassLabel::MinusI => WeierstrassLabel::I,
            WeierstrassLabel::B { j, negative } => WeierstrassLabel::B { j, negative: !negative },
            WeierstrassLabel::InvB { j, negative } => WeierstrassLabel::InvB { j, negative: !negative },
            other => other,
        }
    }

    /// Image under `x -> 1/x` (the action of β on the x-line).
    pub fn invert(&self) -> Self {
        match *self {
            WeierstrassLabel::Zero => WeierstrassLabel::Infinity,
            WeierstrassLabel::Infinity => WeierstrassLabel::Zero,
            WeierstrassLabel::I => WeierstrassLabel::MinusI,
            WeierstrassLabel::MinusI => WeierstrassLabel::I,
            WeierstrassLabel::B { j, negative } => WeierstrassLabel::InvB { j, negative },
            WeierstrassLabel::InvB { j, negative } => WeierstrassLabel::B { j, negative },
            other => other,
        }
    }

    /// Finite labels of a genus-`g` fibre in the fixed order
    /// `0, 1, -1, i, -i, b1, -b1, 1/b1, -1/b1, ...`.
    pub fn finite_labels(g: usize) -> Vec<Self> {
        let mut out = vec![
            WeierstrassLabel::Zero,
            WeierstrassLabel::One,
            WeierstrassLabel::MinusOne,
            WeierstrassLabel::I,
            WeierstrassLabel::MinusI,
        ];
        for j in 1..g / 2 {
            out.push(WeierstrassLabel::B { j, negative: false });
            out.push(WeierstrassLabel::B { j, negative: true });
            out.push(WeierstrassLabel::InvB { j, negative: false });
            out.push(WeierstrassLabel::InvB { j, negative: true });
        }
        out
    }
}

/// Weierstrass points of a fibre together with their stabiliser orders in Q8.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassSet {
    pub labels: Vec<WeierstrassLabel>,
    pub stabilizer_order: BTreeMap<WeierstrassLabel, usize>,
}

/// Labels, values and Q8-stabiliser orders of the Weierstrass points.
/// The order is `2 * #{h in {id, α, β, αβ} : h fixes the point}`, since the
/// centre of Q8 acts trivially on the x-line.
pub fn weierstrass_data(params: &FamilyParams) -> Result<WeierstrassSet> {
    let Coordinates::B(b) = params.coords() else {
        return Err(Error::PreconditionFailed("Weierstrass data needs b-coordinates".into()));
    };
    let finite = WeierstrassLabel::finite_labels(params.g);
    let values: Vec<GaussianRational> =
        finite.iter().map(|l| l.value(b).expect("finite label")).collect();
    for i in 0..values.len() {
        for j in 0..i {
            if values[i] == values[j] {
                return Err(Error::SingularFiber(format!(
                    "labels {} and {} coincide",
                    finite[i], finite[j]
                )));
            }
        }
    }
    let mut labels = finite;
    labels.push(WeierstrassLabel::Infinity);
    let mut stabilizer_order = BTreeMap::new();
    for l in &labels {
        let images = [*l, l.negate(), l.invert(), l.negate().invert()];
        let fixed = images.iter().filter(|m| *m == l).count();
        stabilizer_order.insert(*l, 2 * fixed);
    }
    Ok(WeierstrassSet { labels, stabilizer_order })
}

/// The orbit `{±a, ±(a+3)/(a-1), ±(a-3)/(a+1)}` of a genus-4 parameter.
pub fn moduli_orbit_g4(a: &Rational) -> Result<BTreeSet<Rational>> {
    let one = Rational::one();
    if a == &one || a == &-one.clone() {
        return Err(Error::SingularFiber(format!("a = {}", format_rational(a))));
    }
    let three = Rational::from_integer(3.into());
    let t1 = (a + &three) / (a - &one);
    let t2 = (a - &three) / (a + &one);
    Ok([a.clone(), t1, t2].into_iter().flat_map(|v| [-v.clone(), v]).collect())
}

/// Fractional-linear map `x -> (a x + b) / (c x + d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl fmt::Display for Mobius<GaussianRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})x + ({}) / ({})x + ({})", self.a, self.b, self.c, self.d)
    }
}

impl Mobius<GaussianRational> {
    /// Short name for the four maps `x, -x, 1/x, -1/x`, if applicable.
    pub fn name(&self) -> Option<&'static str> {
        let z = <GaussianRational as Zero>::zero();
        let o = <GaussianRational as One>::one();
        let m = -<GaussianRational as One>::one();
        match (&self.a, &self.b, &self.c, &self.d) {
            (a, b, c, d) if *a == o && b == &z && c == &z && *d == o => Some("x"),
            (a, b, c, d) if *a == m && b == &z && c == &z && *d == o => Some("-x"),
            (a, b, c, d) if a == &z && *b == o && *c == o && d == &z => Some("1/x"),
            (a, b, c, d) if a == &z && *b == m && *c == o && d == &z => Some("-1/x"),
            _ => None,
        }
    }
}

/// Input for the automorphism scan.
#[derive(Clone, Debug)]
pub enum ScanParameter {
    Exact(GaussianRational),
    Float { b: Complex64, tol: f64 },
}

/// Arithmetic needed by the scan, implemented exactly over Q(i) and with a
/// tolerance over complex floats.
trait ScanField: Clone + Send + Sync {
    fn origin() -> Self;
    fn unit() -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn over(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn negligible(&self, tol: f64) -> bool;
}

impl ScanField for GaussianRational {
    fn origin() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn minus(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn times(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn over(&self, o: &Self) -> Self {
        Field::div(self, o).expect("non-zero divisor")
    }
    fn negated(&self) -> Self {
        -self.clone()
    }
    fn negligible(&self, _tol: f64) -> bool {
        Zero::is_zero(self)
    }
}

impl ScanField for Complex64 {
    fn origin() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn unit() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
}

/// Projective point `[x : y]` with normalised representative.
#[derive(Clone, Debug)]
struct Proj<T> {
    x: T,
    y: T,
}

impl<T: ScanField> Proj<T> {
    fn finite(v: T) -> Self {
        Self { x: v, y: T::unit() }
    }
    fn infinity() -> Self {
        Self { x: T::unit(), y: T::origin() }
    }
    fn normalise(&self, tol: f64) -> Self {
        if self.y.negligible(tol) {
            Self::infinity()
        } else {
            Self { x: self.x.over(&self.y), y: T::unit() }
        }
    }
    fn same(&self, o: &Self, tol: f64) -> bool {
        self.x.times(&o.y).minus(&o.x.times(&self.y)).negligible(tol)
    }
}

/// `u_x v_y - u_y v_x`.
fn bracket<T: ScanField>(u: &Proj<T>, v: &Proj<T>) -> T {
    u.x.times(&v.y).minus(&u.y.times(&v.x))
}

fn scan_set<T: ScanField>(b: &T, i: T, tol: f64) -> Result<Vec<Proj<T>>> {
    if b.negligible(tol) {
        return Err(Error::SingularFiber("b = 0".into()));
    }
    let one = T::unit();
    let inv = one.over(b);
    Ok(vec![
        Proj::finite(T::origin()),
        Proj::infinity(),
        Proj::finite(one.clone()),
        Proj::finite(one.negated()),
        Proj::finite(i.clone()),
        Proj::finite(i.negated()),
        Proj::finite(b.clone()),
        Proj::finite(b.negated()),
        Proj::finite(inv.clone()),
        Proj::finite(inv.negated()),
    ])
}

fn scan_generic<T: ScanField>(set: Vec<Proj<T>>, tol: f64) -> Result<Vec<Mobius<T>>> {
    let n = set.len();
    for i in 0..n {
        for j in 0..i {
            if set[i].same(&set[j], tol) {
                return Err(Error::SingularFiber("points of the scan set collide".into()));
            }
        }
    }
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .filter(|&(i, j, k)| i != j && j != k && i != k)
        .collect();
    let maps: Vec<Option<Mobius<T>>> = triples
        .par_iter()
        .map(|&(i, j, k)| {
            let (z1, z2, z3) = (&set[i], &set[j], &set[k]);
            // z1 -> 0, z2 -> 1, z3 -> infinity
            let b23 = bracket(z2, z3);
            let b21 = bracket(z2, z1);
            let m = Mobius {
                a: b23.times(&z1.y),
                b: b23.times(&z1.x).negated(),
                c: b21.times(&z3.y),
                d: b21.times(&z3.x).negated(),
            };
            let keeps = set.iter().all(|pt| {
                let img = Proj { x: m.a.times(&pt.x).plus(&m.b.times(&pt.y)), y: m.c.times(&pt.x).plus(&m.d.times(&pt.y)) };
                let img = img.normalise(tol);
                set.iter().any(|q| q.same(&img, tol))
            });
            keeps.then_some(m)
        })
        .collect();
    Ok(maps.into_iter().flatten().collect())
}

fn normalise_map<T: ScanField>(m: Mobius<T>, tol: f64) -> Mobius<T> {
    let lead = [&m.a, &m.b, &m.c, &m.d]
        .into_iter()
        .find(|v| !v.negligible(tol))
        .cloned()
        .expect("invertible map");
    let (a, b, c, d) = (m.a.over(&lead), m.b.over(&lead), m.c.over(&lead), m.d.over(&lead));
    // prefer the representative whose first non-zero entry of (c, d) is 1
    let s = if !c.negligible(tol) { c.clone() } else { d.clone() };
    Mobius { a: a.over(&s), b: b.over(&s), c: c.over(&s), d: d.over(&s) }
}

/// Result of [`extra_automorphism_scan`].
#[derive(Clone, Debug)]
pub enum ScanResult {
    Exact(Vec<Mobius<GaussianRational>>),
    Float(Vec<Mobius<Complex64>>),
}

impl ScanResult {
    pub fn len(&self) -> usize {
        match self {
            ScanResult::Exact(v) => v.len(),
            ScanResult::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// All fractional-linear maps preserving `{0, inf, ±1, ±i, ±b, ±1/b}`.
///
/// Each ordered triple `(z1, z2, z3)` of the set gives the map sending it to
/// `(0, 1, inf)`; since those three points lie in the set, the maps that
/// preserve the set are in bijection with its stabiliser.
pub fn extra_automorphism_scan(param: &ScanParameter) -> Result<ScanResult> {
    match param {
        ScanParameter::Exact(b) => {
            let set = scan_set(b, GaussianRational::i(), 0.0)?;
            let maps = scan_generic(set, 0.0)?;
            Ok(ScanResult::Exact(maps.into_iter().map(|m| normalise_map(m, 0.0)).collect()))
        }
        ScanParameter::Float { b, tol } => {
            let set = scan_set(b, Complex64::new(0.0, 1.0), *tol)?;
            let maps = scan_generic(set, *tol)?;
            Ok(ScanResult::Float(maps.into_iter().map(|m| normalise_map(m, *tol)).collect()))
        }
    }
}

/// The finite roots `0, ±1, ±i, ±b_j, ±1/b_j` of the model.
pub fn finite_roots(b: &[GaussianRational]) -> Vec<GaussianRational> {
    WeierstrassLabel::finite_labels(2 * b.len() + 2)
        .iter()
        .map(|l| l.value(b).expect("b_j non-zero"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use num_bigint::BigInt;
    use num_traits::Signed;

    fn ga(v: &[i64]) -> Poly<GaussianRational> {
        Poly::from_i64(v)
    }

    fn gr(q: Rational) -> GaussianRational {
        GaussianRational::real(q)
    }

    #[test]
    fn genus_four_half() {
        let p = FamilyParams::from_a(4, vec![rat(1, 2)]).unwrap();
        let m = build_family_poly(&p).unwrap();
        assert_eq!(m.f, ga(&[0, -1, 0, -1, 0, 0, 0, 1, 0, 1]));
        assert!(verify_q8_symmetry(&m));
    }

    #[test]
    fn genus_ten_fibre() {
        let a = vec![rat(7, 1), rat(1, 1), rat(7, 1), rat(1, 2)];
        let m = build_family_poly(&FamilyParams::from_a(10, a).unwrap()).unwrap();
        let mut expected = vec![0i64; 22];
        expected[21] = 1;
        expected[19] = 7;
        expected[3] = -7;
        expected[1] = -1;
        assert_eq!(m.f, ga(&expected));
    }

    #[test]
    fn zero_parameter() {
        let m = build_family_poly(&FamilyParams::from_a(4, vec![rat(0, 1)]).unwrap()).unwrap();
        assert_eq!(m.f, ga(&[0, -1, 0, 0, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn discriminants() {
        let singular = FamilyParams::from_a(4, vec![rat(1, 1)]).unwrap();
        assert_eq!(family_discriminant(&singular).unwrap(), rat(0, 1));
        let half = FamilyParams::from_a(4, vec![rat(1, 2)]).unwrap();
        let d = family_discriminant(&half).unwrap();
        let expected = BigInt::from(2).pow(28) * BigInt::from(3).pow(6);
        assert_eq!(d.abs(), Rational::from_integer(expected));
        let poly = model_polynomial_discriminant(&half).unwrap();
        assert_eq!(poly.abs(), Rational::from_integer(BigInt::from(2).pow(12) * BigInt::from(3).pow(6)));
    }

    #[test]
    fn genus_four_discriminant_shape() {
        let scale = Rational::from_integer(BigInt::from(2).pow(40));
        for (n, d) in [(1, 3), (5, 7), (-2, 9), (11, 4), (3, 1)] {
            let a = rat(n, d);
            let p = FamilyParams::from_a(4, vec![a.clone()]).unwrap();
            let one = rat(1, 1);
            let shape = (&a * &a - &one).pow(6);
            assert_eq!(family_discriminant(&p).unwrap(), -(scale.clone() * shape));
        }
    }

    #[test]
    fn base_change_examples() {
        let a = base_change_b_to_a(4, &[gr(rat(2, 1))]).unwrap();
        assert_eq!(a, vec![gr(rat(-17, 8))]);
        let b = vec![gr(rat(2, 1)), gr(rat(3, 1))];
        let p = FamilyParams::from_a(6, base_change_b_to_a(6, &b).unwrap().into_iter().map(|v| v.re).collect())
            .unwrap();
        let f = build_family_poly(&p).unwrap().f;
        for r in [0i64, 1, -1, 2, -2, 3, -3] {
            assert!(f.eval(&gr(rat(r, 1))).is_zero());
        }
        for r in [rat(1, 2), rat(-1, 2), rat(1, 3), rat(-1, 3)] {
            assert!(f.eval(&gr(r)).is_zero());
        }
        assert!(f.eval(&GaussianRational::i()).is_zero());
        assert!(base_change_b_to_a(4, &[gr(rat(0, 1))]).is_err());
    }

    #[test]
    fn symmetry_checks() {
        let bad = HyperellipticModel { genus: 4, f: ga(&[0, 1, 0, 0, 0, 0, 0, 0, 0, 1]) };
        assert!(!verify_q8_symmetry(&bad));
        let good = HyperellipticModel { genus: 4, f: ga(&[0, -1, 0, 0, 0, 0, 0, 0, 0, 1]) };
        assert!(verify_q8_symmetry(&good));
        let wrong_degree = HyperellipticModel { genus: 6, f: good.f.clone() };
        assert!(!verify_q8_symmetry(&wrong_degree));
    }

    #[test]
    fn weierstrass_stabilisers() {
        let p = FamilyParams::from_b(4, vec![gr(rat(2, 1))]).unwrap();
        let w = weierstrass_data(&p).unwrap();
        assert_eq!(w.labels.len(), 10);
        assert_eq!(w.stabilizer_order[&WeierstrassLabel::Zero], 4);
        assert_eq!(w.stabilizer_order[&WeierstrassLabel::Infinity], 4);
        for l in [WeierstrassLabel::One, WeierstrassLabel::MinusOne, WeierstrassLabel::I, WeierstrassLabel::MinusI] {
            assert_eq!(w.stabilizer_order[&l], 4, "{l}");
        }
        assert_eq!(w.stabilizer_order[&WeierstrassLabel::B { j: 1, negative: false }], 2);
        let g6 = FamilyParams::from_b(6, vec![gr(rat(2, 1)), gr(rat(3, 1))]).unwrap();
        let w6 = weierstrass_data(&g6).unwrap();
        assert_eq!(w6.labels.iter().filter(|l| **l != WeierstrassLabel::Infinity).count(), 13);
        let clash = FamilyParams::from_b(6, vec![gr(rat(2, 1)), gr(rat(1, 2))]).unwrap();
        assert!(matches!(weierstrass_data(&clash), Err(Error::SingularFiber(_))));
    }

    #[test]
    fn orbits() {
        let o = moduli_orbit_g4(&rat(1, 2)).unwrap();
        let expected: BTreeSet<Rational> =
            [rat(1, 2), rat(-1, 2), rat(7, 1), rat(-7, 1), rat(5, 3), rat(-5, 3)].into_iter().collect();
        assert_eq!(o, expected);
        assert!(moduli_orbit_g4(&rat(3, 1)).unwrap().contains(&rat(3, 1)));
        assert!(moduli_orbit_g4(&rat(-1, 1)).is_err());
    }

    #[test]
    fn automorphism_scan_generic() {
        let res = extra_automorphism_scan(&ScanParameter::Exact(gr(rat(2, 1)))).unwrap();
        let ScanResult::Exact(maps) = res else { panic!("exact path expected") };
        let mut names: Vec<&str> = maps.iter().map(|m| m.name().expect("named map")).collect();
        names.sort();
        assert_eq!(names, vec!["-1/x", "-x", "1/x", "x"]);
        assert!(matches!(
            extra_automorphism_scan(&ScanParameter::Exact(GaussianRational::i())),
            Err(Error::SingularFiber(_))
        ));
    }

    #[test]
    fn automorphism_scan_exceptional() {
        // b = i (sqrt(2) - 1) satisfies b^4 + 6 b^2 + 1 = 0
        let b = Complex64::new(0.0, 2f64.sqrt() - 1.0);
        assert!((b.powi(4) + 6.0 * b * b + 1.0).norm() < 1e-12);
        let res = extra_automorphism_scan(&ScanParameter::Float { b, tol: 1e-9 }).unwrap();
        assert!(res.len() > 4, "found {}", res.len());
        let generic = extra_automorphism_scan(&ScanParameter::Float { b: Complex64::new(2.0, 0.3), tol: 1e-9 })
            .unwrap();
        assert_eq!(generic.len(), 4);
    }
}
