mod common;

use std::f64::consts::PI;

use common::{random_coefficient, random_product_spec};
use hodgeloci::bounds::{linear_bound, tangent_codim, BoundClass};
use hodgeloci::exactnum::{rational, CyclotomicNumber};
use hodgeloci::fermat_hodge::{
    all_pairings, hessian_coefficient, intersection_factor, linear_cycle_poly, linear_cycle_specs, pair_classes, plane_in_fermat,
    product_class_poly, rationality_certificate, rationality_scan, recover_structure, LinearCycleSpec, Pairing, ProductClassSpec,
};
use hodgeloci::idealcalc::{colon_slice, FermatContext};
use hodgeloci::multipoly::{Monomial, Polynomial};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn derivative(p: &Polynomial, i: usize) -> Polynomial {
    let terms: Vec<(Monomial, CyclotomicNumber)> = p
        .terms()
        .filter(|(m, _)| m.exps()[i] > 0)
        .map(|(m, c)| {
            let mut e = m.exps().to_vec();
            let k = e[i] as i64;
            e[i] -= 1;
            (Monomial::new(e), c.scale(&rational(k, 1)))
        })
        .collect();
    Polynomial::from_terms(p.field(), p.nvars(), terms)
}

/// Leibniz expansion of a square matrix of polynomials.
fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    let field = m[0][0].field().clone();
    let mut total = Polynomial::zero(&field, m[0][0].nvars());
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term = Polynomial::constant(&field, m[0][0].nvars(), CyclotomicNumber::from_int_in(&field, 1));
        for (r, &c) in p.iter().enumerate() {
            term = &term * &m[r][c];
        }
        total = if inversions % 2 == 0 { &total + &term } else { &total - &term };
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

#[test]
fn hessian_coefficient_matches_symbolic_determinant() {
    for (n, d) in [(2, 3), (2, 4), (2, 5)] {
        let ctx = FermatContext::new(n, d).unwrap();
        let f = ctx.fermat();
        let grad: Vec<Polynomial> = (0..4).map(|i| derivative(&f, i)).collect();
        let hess: Vec<Vec<Polynomial>> = grad.iter().map(|g| (0..4).map(|j| derivative(g, j)).collect()).collect();
        let det = determinant(&hess);
        assert_eq!(det.num_terms(), 1);
        assert_eq!(det.coeff(&ctx.socle_monomial()).unwrap(), &hessian_coefficient(&ctx), "d = {d}");
    }
}

#[test]
fn intersection_factor_values() {
    // −(d−1)^{n+2} d / ((n/2)!)²
    assert_eq!(intersection_factor(&FermatContext::new(2, 3).unwrap()), rational(-48, 1));
    assert_eq!(intersection_factor(&FermatContext::new(4, 3).unwrap()), rational(-192, 4));
    assert_eq!(intersection_factor(&FermatContext::new(2, 5).unwrap()), rational(-1280, 1));
}

#[test]
fn cubic_surface_linear_cycle_expansion() {
    // ζ^{α0+α1} (x0 + ζ^{α0} x1)(x2 + ζ^{α1} x3), ζ = ζ_6
    let ctx = FermatContext::new(2, 3).unwrap();
    let z = |k: i64| ctx.zeta_pow(k);
    let mono = |e: [u32; 4]| Monomial::new(e.to_vec());
    for (a0, a1) in [(1, 1), (1, 3), (5, 3), (3, 5)] {
        let spec = LinearCycleSpec::new(vec![a0, a1], &ctx).unwrap();
        let expect = Polynomial::from_terms(
            ctx.field(),
            4,
            vec![
                (mono([1, 0, 1, 0]), z(a0 + a1)),
                (mono([1, 0, 0, 1]), z(a0 + 2 * a1)),
                (mono([0, 1, 1, 0]), z(2 * a0 + a1)),
                (mono([0, 1, 0, 1]), z(2 * a0 + 2 * a1)),
            ],
        );
        assert_eq!(linear_cycle_poly(&spec, &ctx).unwrap(), expect);
    }
}

#[test]
fn cubic_surface_pairings_by_hand() {
    // P_{(1,1)}² has x0x1x2x3-coefficient ζ²·(2ζ)² = 4; P_{(1,1)}·P_{(3,3)} has ζ⁸(ζ³+ζ)² = 1.
    // c = coefficient / 6⁴, intersection = −48 c.
    let ctx = FermatContext::new(2, 3).unwrap();
    let cycle = |a: i64| linear_cycle_poly(&LinearCycleSpec::new(vec![a, a], &ctx).unwrap(), &ctx).unwrap();
    let (p, q) = (cycle(1), cycle(3));
    let r = pair_classes(&p, &p, &ctx).unwrap();
    assert_eq!(r.c_rational, Some(rational(4, 1296)));
    assert_eq!(r.intersection_rational, Some(rational(-4, 27)));
    assert!(r.residual.is_zero());
    assert_eq!(pair_classes(&p, &q, &ctx).unwrap().intersection_rational, Some(rational(-1, 27)));
}

fn closed_form_ratio(a: &CyclotomicNumber, r: i64, s: i64, ctx: &FermatContext) -> Option<CyclotomicNumber> {
    let d = ctx.d() as i64;
    let one = ctx.scalar(1);
    let ad1 = a.pow(d - 1).unwrap();
    let num = &(&ad1 + &ctx.zeta_pow(r)) * &(&(a * &ctx.zeta_pow(s)) - &one);
    let den = &(&ad1 + &ctx.zeta_pow(s)) * &(&(a * &ctx.zeta_pow(r)) - &one);
    num.checked_div(&den).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pairing_ratio_closed_form(seed in any::<u64>(), d in 3u32..6) {
        let ctx = FermatContext::new(2, d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_product_spec(&mut rng, &ctx);
        let p = product_class_poly(&spec, &ctx).unwrap();
        let odd = |rng: &mut ChaCha8Rng| 2 * rng.gen_range(0..d as i64) + 1;
        let (r, s, other) = (odd(&mut rng), odd(&mut rng), odd(&mut rng));
        let cycle = |r: i64| linear_cycle_poly(&LinearCycleSpec::new(vec![2 * d as i64 - r, other], &ctx).unwrap(), &ctx).unwrap();
        let c_r = pair_classes(&p, &cycle(r), &ctx).unwrap().c;
        let c_s = pair_classes(&p, &cycle(s), &ctx).unwrap().c;
        if let (Some(expect), Ok(got)) = (closed_form_ratio(&spec.a[0], r, s, &ctx), c_r.checked_div(&c_s)) {
            prop_assert_eq!(got, expect);
        }
    }

    #[test]
    fn pairing_is_bilinear_and_symmetric(seed in any::<u64>(), d in 3u32..6) {
        let ctx = FermatContext::new(2, d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = product_class_poly(&random_product_spec(&mut rng, &ctx), &ctx).unwrap();
        let q = product_class_poly(&random_product_spec(&mut rng, &ctx), &ctx).unwrap();
        let lambda = random_coefficient(&mut rng, &ctx);
        let base = pair_classes(&p, &q, &ctx).unwrap();
        prop_assert_eq!(&pair_classes(&q, &p, &ctx).unwrap().c, &base.c);
        prop_assert_eq!(pair_classes(&p.scale(&lambda), &q, &ctx).unwrap().c, &base.c * &lambda);
        prop_assert_eq!(base.intersection, base.c.scale(&intersection_factor(&ctx)));
    }

    #[test]
    fn certificate_survives_rational_rescaling(seed in any::<u64>(), num in 1i64..9, den in 1i64..9) {
        let ctx = FermatContext::new(2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = product_class_poly(&random_product_spec(&mut rng, &ctx), &ctx).unwrap();
        let a = rationality_certificate(&p, &ctx, true).unwrap();
        let b = rationality_certificate(&p.scale(&ctx.scalar(1).scale(&rational(-num, den))), &ctx, true).unwrap();
        prop_assert_eq!(a.all_rational(), b.all_rational());
        for (x, y) in a.entries.iter().zip(&b.entries) {
            prop_assert_eq!(x.status, y.status);
        }
    }

    #[test]
    fn recover_round_trip(seed in any::<u64>(), shape in 0usize..3) {
        let (n, d) = [(2, 4), (2, 5), (4, 3)][shape];
        let ctx = FermatContext::new(n, d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut spec = random_product_spec(&mut rng, &ctx);
        let pairings = all_pairings(ctx.nvars());
        spec.pairing = pairings[rng.gen_range(0..pairings.len())].clone();
        spec.c_lambda = random_coefficient(&mut rng, &ctx);
        let p = product_class_poly(&spec, &ctx).unwrap();
        let back = recover_structure(&p, &ctx).unwrap();
        prop_assert_eq!(product_class_poly(&back, &ctx).unwrap(), p);
    }

    #[test]
    fn distinct_coefficients_give_distinct_degree_one_pieces(seed in any::<u64>()) {
        let ctx = FermatContext::new(2, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s1 = random_product_spec(&mut rng, &ctx);
        let mut s2 = s1.clone();
        s2.a[1] = random_coefficient(&mut rng, &ctx);
        prop_assume!(s2.a[1] != s1.a[1]);
        let j1 = |s: &ProductClassSpec| colon_slice(&product_class_poly(s, &ctx).unwrap(), 1, &ctx).unwrap().basis;
        prop_assert_ne!(j1(&s1), j1(&s2));
    }

    #[test]
    fn plane_lies_on_fermat_iff_every_coefficient_is_a_root_of_minus_one(ks in prop::collection::vec(0i64..8, 2), rationals in prop::collection::vec((1i64..3, 1i64..3), 2)) {
        let ctx = FermatContext::new(2, 4).unwrap();
        let a: Vec<CyclotomicNumber> = ks.iter().zip(&rationals).map(|(&k, &(p, q))| ctx.zeta_pow(k).scale(&rational(p, q))).collect();
        let forms: Vec<Polynomial> = a
            .iter()
            .enumerate()
            .map(|(i, ai)| &Polynomial::var(ctx.field(), 4, 2 * i) - &Polynomial::var(ctx.field(), 4, 2 * i + 1).scale(ai))
            .collect();
        let expect = a.iter().all(|ai| (&ai.pow(4).unwrap() + &ctx.scalar(1)).is_zero());
        let report = plane_in_fermat(&forms, &ctx).unwrap();
        prop_assert_eq!(report.contained, expect);
        prop_assert_eq!(report.decomposition.is_some(), expect);
    }
}

/// a = q·ζ_{2d}^j evaluated under the embedding ζ_{2d} ↦ e^{2πik/2d}.
fn embed(q: f64, j: i64, k: i64, d: u32) -> Complex64 {
    Complex64::from_polar(q, 2.0 * PI * (j * k) as f64 / (2 * d) as f64)
}

/// Classifies the scan by evaluating every ratio under all Galois embeddings.
fn float_scan(q: f64, j: i64, d: u32) -> (bool, usize) {
    let two_d = 2 * d as i64;
    let units: Vec<i64> = (1..two_d).filter(|k| num_integer::Integer::gcd(k, &two_d) == 1).collect();
    let ratio = |k: i64, r: i64, s: i64| -> Option<Complex64> {
        let a = embed(q, j, k, d);
        let (x, y) = (embed(1.0, r, k, d), embed(1.0, s, k, d));
        let ad1 = a.powu(d - 1);
        let den = (ad1 + y) * (a * x - 1.0);
        (den.norm() > 1e-9).then(|| (ad1 + x) * (a * y - 1.0) / den)
    };
    let mut skipped = 0;
    let mut all_rational = true;
    for r in (1..two_d).step_by(2) {
        for s in (1..two_d).step_by(2) {
            let Some(v) = ratio(1, r, s) else {
                skipped += 1;
                continue;
            };
            let fixed = v.im.abs() < 1e-7 && units.iter().all(|&k| (ratio(k, r, s).unwrap() - v).norm() < 1e-7 * (1.0 + v.norm()));
            all_rational &= fixed;
        }
    }
    (all_rational, skipped)
}

#[test]
fn rationality_scan_is_sound() {
    for d in [5u32, 7] {
        let m = 2 * d as i64;
        let values: Vec<(i64, i64, i64)> = (0..m).map(|j| (1, 1, j)).chain([(2, 1, 0), (-1, 2, 3), (3, 5, 1), (-7, 3, 4)]).collect();
        for (p, q, j) in values {
            let a = CyclotomicNumber::root_of_unity(m, j).unwrap().scale(&rational(p, q));
            let report = rationality_scan(&a, d).unwrap();
            let qf = p as f64 / q as f64;
            let (oracle_scan, oracle_skipped) = float_scan(qf, j, d);
            assert_eq!(report.scan, oracle_scan, "d = {d}, a = {p}/{q} ζ^{j}");
            if report.scan {
                assert_eq!(report.skipped, oracle_skipped);
            }
            let direct = (embed(qf, j, 1, d).powu(d) + 1.0).norm() < 1e-9;
            assert_eq!(report.direct, direct);
            assert!(!report.cross_ratio_rational);
            assert!(report.implication_holds, "d = {d}, a = {p}/{q} ζ^{j}");
        }
    }
}

#[test]
fn tangent_codimension_of_linear_cycles_is_uniform() {
    for (n, d) in [(2, 4), (2, 5), (4, 3)] {
        let ctx = FermatContext::new(n, d).unwrap();
        for spec in linear_cycle_specs(&ctx, true).into_iter().step_by(7) {
            let p = linear_cycle_poly(&spec, &ctx).unwrap();
            let report = tangent_codim(&p, &ctx).unwrap();
            assert_eq!(report.value, linear_bound(n, d), "{:?}", spec.alpha);
            assert_eq!(report.classification, BoundClass::AttainsLinearMinimum);
        }
    }
}

#[test]
fn pairing_permutations_are_validated() {
    let ctx = FermatContext::new(2, 4).unwrap();
    assert!(Pairing(vec![0, 1, 2]).validate(4).is_err());
    assert!(Pairing(vec![0, 1, 1, 3]).validate(4).is_err());
    assert!(LinearCycleSpec::new(vec![2, 1], &ctx).is_err());
    assert!(LinearCycleSpec::new(vec![9, 1], &ctx).is_err());
    assert_eq!(all_pairings(4).len(), 3);
    assert_eq!(all_pairings(6).len(), 15);
}
