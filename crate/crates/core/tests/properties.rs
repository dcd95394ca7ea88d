//! Property suites for the exact algebra, the family models, Frobenius fits
//! and the monodromy routines.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use qmjac::algebra::{
    cyclotomic, discriminant, gaussian_valuation, quadratic_character, rat, resultant, FiniteField, GaussianRational,
    Poly, PrimeBranch, QuaternionRational, Rational, Valuation,
};
use qmjac::family::{build_family_poly, family_discriminant, moduli_orbit_g4, verify_q8_symmetry, FamilyParams};
use qmjac::frobenius::{inverse_roots, l_polynomial_report, tensor_square, Ansatz, DEFAULT_BUDGET};
use qmjac::monodromy::{
    candidate_fields, center_certificate, identify_connected_monodromy_field, omega_of_frobenius, split_good_primes,
    splits_completely, CenterCertificate, Identification, OmegaDatum,
};

fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(-6i64..=6, 1..=max_deg + 1).prop_map(|c| Poly::from_i64(&c))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = Poly<Rational>> {
    small_poly(max_deg).prop_filter("nonzero", |p| p.degree().is_some_and(|d| d >= 1))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| rat(n, d))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-60i64..=60, 1i64..=30, -60i64..=60, 1i64..=30).prop_map(|(a, b, c, d)| GaussianRational::new(rat(a, b), rat(c, d)))
}

fn quaternion() -> impl Strategy<Value = QuaternionRational> {
    prop::collection::vec(small_rational(), 4)
        .prop_map(|v| QuaternionRational::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn resultant_is_multiplicative(f in nonzero_poly(4), g in nonzero_poly(3), h in nonzero_poly(3)) {
        let gh = &g * &h;
        prop_assert_eq!(resultant(&f, &gh).unwrap(), resultant(&f, &g).unwrap() * resultant(&f, &h).unwrap());
    }

    #[test]
    fn discriminant_vanishes_iff_repeated_factor(f in nonzero_poly(5), square in nonzero_poly(2), repeat in any::<bool>()) {
        let f = if repeat { &f * &(&square * &square) } else { f };
        prop_assume!(f.degree().unwrap_or(0) <= 9 && f.degree().unwrap_or(0) >= 1);
        let repeated = f.gcd(&f.derivative()).degree().unwrap_or(0) > 0;
        prop_assert_eq!(discriminant(&f).unwrap().is_zero(), repeated);
    }

    #[test]
    fn gaussian_valuation_is_a_valuation(x in gaussian(), y in gaussian(), p in prop::sample::select(vec![3u64, 5, 7, 13])) {
        let branch = PrimeBranch::default_for(p).unwrap();
        let v = |z: &GaussianRational| gaussian_valuation(z, p, &branch).unwrap();
        prop_assert_eq!(v(&(x.clone() * y.clone())), v(&x).add(&v(&y)));
        prop_assert!(v(&(x.clone() + y.clone())) >= v(&x).min(v(&y)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reduced_norm_is_multiplicative(a in quaternion(), b in quaternion()) {
        prop_assert_eq!((a.clone() * b.clone()).nrd(), a.nrd() * b.nrd());
    }
}

#[test]
fn cyclotomic_products_give_x_n_minus_one() {
    for n in 1u64..=30 {
        let product = (1..=n).filter(|d| n % d == 0).fold(Poly::one(), |acc, d| &acc * &cyclotomic(d).unwrap());
        let mut target = vec![0i64; n as usize + 1];
        target[0] = -1;
        target[n as usize] = 1;
        assert_eq!(product, Poly::from_i64(&target), "n = {n}");
    }
}

#[test]
fn quadratic_character_is_multiplicative() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for (p, r) in [(13u64, 1usize), (13, 2), (41, 1), (41, 2)] {
        let field = FiniteField::new(p, r).unwrap();
        for _ in 0..2500 {
            let x = field.from_index(rng.gen_range(0..field.order()));
            let y = field.from_index(rng.gen_range(0..field.order()));
            let chi = |e| quadratic_character(&field, e).unwrap();
            assert_eq!(chi(&x) * chi(&y), chi(&field.mul(&x, &y)));
        }
    }
}

fn nonsingular_b() -> impl Strategy<Value = GaussianRational> {
    gaussian().prop_filter("b^4 != 1, b != 0", |b| {
        let b2 = b.clone() * b.clone();
        !b.is_zero() && b2.clone() * b2 != GaussianRational::one()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn b_coordinates_give_the_product_model(b in prop::collection::vec(nonsingular_b(), 1..=3)) {
        let g = 2 * b.len() + 2;
        let model = build_family_poly(&FamilyParams::from_b(g, b.clone()).unwrap()).unwrap();
        let x = Poly::<GaussianRational>::x();
        let one = GaussianRational::one();
        let mut expected = &x * &Poly::new(vec![-one.clone(), GaussianRational::zero(), GaussianRational::zero(), GaussianRational::zero(), one.clone()]);
        for bj in &b {
            let b2 = bj.clone() * bj.clone();
            let inv = qmjac::algebra::Field::inv(&b2).unwrap();
            expected = &expected * &Poly::new(vec![-b2, GaussianRational::zero(), one.clone()]);
            expected = &expected * &Poly::new(vec![-inv, GaussianRational::zero(), one.clone()]);
        }
        prop_assert_eq!(model.f, expected);
    }
}

fn genus_four_parameter() -> impl Strategy<Value = Rational> {
    prop_oneof![
        small_rational(),
        prop::sample::select(vec![rat(1, 1), rat(-1, 1), rat(0, 1)]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn discriminant_detects_repeated_roots(a in genus_four_parameter(), six in any::<bool>()) {
        let params = if six {
            FamilyParams::from_a(6, vec![a.clone(), rat(1, 3)]).unwrap()
        } else {
            FamilyParams::from_a(4, vec![a.clone()]).unwrap()
        };
        let f = build_family_poly(&params).unwrap().rational_f().unwrap();
        let repeated = f.gcd(&f.derivative()).degree().unwrap_or(0) > 0;
        prop_assert_eq!(family_discriminant(&params).unwrap().is_zero(), repeated);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn genus_four_discriminant_constant(a in small_rational()) {
        let one = Rational::one();
        prop_assume!(a != one && a != -one.clone());
        let disc = family_discriminant(&FamilyParams::from_a(4, vec![a.clone()]).unwrap()).unwrap();
        let base = &a * &a - &one;
        let ratio = disc.abs() / (0..6).fold(one, |acc, _| acc * base.abs());
        prop_assert_eq!(ratio, Rational::from_integer(BigInt::from(2).pow(40)));
    }

    #[test]
    fn orbit_members_keep_the_symmetry(a in small_rational()) {
        let one = Rational::one();
        prop_assume!(a != one && a != -one.clone());
        for member in moduli_orbit_g4(&a).unwrap() {
            let model = build_family_poly(&FamilyParams::from_a(4, vec![member]).unwrap()).unwrap();
            prop_assert!(verify_q8_symmetry(&model));
        }
    }
}

fn half_fibre() -> FamilyParams {
    FamilyParams::from_a(4, vec![rat(1, 2)]).unwrap()
}

#[test]
fn fitted_polynomials_satisfy_weil_conditions() {
    let params = half_fibre();
    for p in [5u64, 11, 13, 17, 29, 37, 41] {
        let rep = l_polynomial_report(&params, p, Ansatz::Generic, (p as u128).pow(4)).unwrap();
        let c = &rep.c_p;
        let g = 4usize;
        for j in 0..=2 * g {
            let pw = Rational::from_integer(BigInt::from(p).pow((g as i64 - j as i64).unsigned_abs() as u32));
            if j <= g {
                assert_eq!(c.coeff(2 * g - j), &pw * &c.coeff(j), "p = {p}, j = {j}");
            }
        }
        for alpha in inverse_roots(c).unwrap() {
            assert!((alpha.norm() - (p as f64).sqrt()).abs() < 1e-9, "p = {p}");
        }
    }
    for p in [13u64, 17, 41, 73] {
        let g = 4usize;
        let rep = l_polynomial_report(&params, p, Ansatz::Square, (p as u128).pow(3)).unwrap();
        // The surplus count r = g/2 + 1 is within the default budget.
        assert_eq!(rep.verified_surplus, vec![3]);
        {
            let g_p = rep.g_p.as_ref().unwrap();
            let omega = omega_of_frobenius(g_p, p, g).unwrap();
            let top = Rational::from_integer(BigInt::from(omega) * BigInt::from(p).pow(2));
            assert_eq!(g_p.coeff(g), top);
        }
    }
}

#[test]
fn omega_is_never_read_at_bad_primes() {
    let params = half_fibre();
    for p in [2u64, 3] {
        assert!(l_polynomial_report(&params, p, Ansatz::Square, DEFAULT_BUDGET).is_err());
    }
    assert!(omega_of_frobenius(&Poly::from_i64(&[1, 0, 0, 0, 9]), 3, 4).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// With `c(T) = prod (1 - α_i T)` over integers, the tensor square is
    /// `prod_{i,j} (1 - α_i α_j T)`.
    #[test]
    fn tensor_square_multiplies_inverse_roots(alpha in prop::collection::vec(-5i64..=5, 2..=4).prop_filter("even", |v| v.len() % 2 == 0)) {
        let linear = |a: i64| Poly::from_i64(&[1, -a]);
        let c = alpha.iter().fold(Poly::one(), |acc, &a| &acc * &linear(a));
        prop_assume!(c.degree() == Some(alpha.len()));
        let g = alpha.len() / 2;
        let mut expected = Poly::one();
        for &a in &alpha {
            for &b in &alpha {
                expected = &expected * &linear(a * b);
            }
        }
        let ct = tensor_square(&c, g).unwrap();
        prop_assert_eq!(ct.degree(), expected.degree());
        prop_assert_eq!(ct, expected);
    }
}

#[test]
fn zeta8_splitting_follows_p_mod_8() {
    let zeta8 = candidate_fields(&[2u64].into_iter().collect())
        .into_iter()
        .find(|f| f.name() == "Q(zeta8)")
        .unwrap();
    for p in qmjac::algebra::primes_up_to(1000).into_iter().filter(|&p| p > 2) {
        let splits = splits_completely(p, &zeta8).unwrap();
        assert_eq!(splits, p % 8 == 1, "p = {p}");
    }
}

fn survivors(id: &Identification, all: usize) -> usize {
    match id {
        Identification::Field(_) => 1,
        Identification::Inconclusive(v) => v.len(),
        Identification::NoCandidate => 0,
    }
    .min(all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn identification_is_monotone(
        picks in prop::collection::vec((0usize..20, any::<bool>()), 1..6),
        extra in (0usize..20, any::<bool>()),
    ) {
        let bad: BTreeSet<u64> = [2u64, 3].into_iter().collect();
        let primes = split_good_primes(400, &bad);
        let datum = |(k, plus): (usize, bool)| OmegaDatum { p: primes[k % primes.len()], omega: if plus { 1 } else { -1 }, source_g_p: Poly::one() };
        let candidates = candidate_fields(&bad);
        let data: Vec<OmegaDatum> = picks.into_iter().map(datum).collect();
        let mut more = data.clone();
        more.push(datum(extra));
        let before = identify_connected_monodromy_field(&data, &candidates).unwrap();
        let after = identify_connected_monodromy_field(&more, &candidates).unwrap();
        prop_assert!(survivors(&after.identified, candidates.len()) <= survivors(&before.identified, candidates.len()));
        prop_assert!(after.eliminations.len() >= before.eliminations.len());
    }
}

#[test]
fn center_certificate_is_symmetric() {
    let g41 = Poly::from_i64(&[1, -2, -30, -82, 1681]);
    let g73 = Poly::from_i64(&[1, 8, -2, 8 * 73, 73 * 73]);
    let g17 = Poly::from_i64(&[1, -2, -13, 44, -13 * 17, -2 * 289, 4913]);
    let g41_6 = Poly::from_i64(&[1, -14, 91, -540, 91 * 41, -14 * 1681, 68921]);
    for (a, p, b, q) in [(&g41, 41, &g73, 73), (&g17, 17, &g41_6, 41), (&g41, 41, &g41, 41)] {
        let forward = center_certificate(a, p, b, q).unwrap();
        let backward = center_certificate(b, q, a, p).unwrap();
        match (forward, backward) {
            (
                CenterCertificate::CertifiedTrivialCenter { real_kernels: (k1, k2), imaginary_quadratic: (i1, i2), .. },
                CenterCertificate::CertifiedTrivialCenter { real_kernels: (l1, l2), imaginary_quadratic: (j1, j2), .. },
            ) => {
                assert_eq!((k1, k2), (l2, l1));
                assert_eq!((i1, i2), (j2, j1));
            }
            (CenterCertificate::Inconclusive(_), CenterCertificate::Inconclusive(_)) => {}
            (f, b) => panic!("asymmetric certificates {f:?} and {b:?}"),
        }
    }
}

#[test]
fn valuation_of_zero_is_infinite() {
    let v = gaussian_valuation(&GaussianRational::zero(), 5, &PrimeBranch::default_for(5).unwrap()).unwrap();
    assert_eq!(v, Valuation::Infinite);
}
