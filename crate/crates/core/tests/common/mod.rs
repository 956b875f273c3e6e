#![allow(dead_code)]

use std::sync::Arc;

use hodgeloci::exactnum::{rational, CyclotomicField, CyclotomicNumber};
use hodgeloci::fermat_hodge::{Pairing, ProductClassSpec};
use hodgeloci::idealcalc::FermatContext;
use hodgeloci::multipoly::{Monomial, Polynomial};
use proptest::prelude::*;
use rand::Rng;

pub const CONDUCTORS: [u32; 8] = [1, 3, 4, 5, 6, 8, 10, 12];

pub fn field(m: u32) -> Arc<CyclotomicField> {
    CyclotomicField::get(m).unwrap()
}

pub fn small_rational() -> impl Strategy<Value = (i64, i64)> {
    (-9i64..=9, 1i64..=6)
}

/// Element of Q(ζ_m) with small rational coordinates in the power basis.
pub fn cyclotomic_in(m: u32) -> impl Strategy<Value = CyclotomicNumber> {
    let phi = field(m).degree();
    prop::collection::vec(small_rational(), phi).prop_map(move |cs| {
        let f = field(m);
        cs.iter().enumerate().fold(CyclotomicNumber::zero_in(&f), |acc, (k, &(p, q))| {
            &acc + &CyclotomicNumber::zeta_pow_in(&f, k as i64).scale(&rational(p, q))
        })
    })
}

pub fn any_conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(CONDUCTORS.to_vec())
}

/// Random sparse polynomial in `nvars` variables of total degree ≤ max_deg.
pub fn polynomial_in(m: u32, nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), cyclotomic_in(m)), 0..=max_terms).prop_map(move |ts| {
        let f = field(m);
        let terms = ts.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= max_deg).map(|(e, c)| (Monomial::new(e), c));
        Polynomial::from_terms(&f, nvars, terms.collect::<Vec<_>>())
    })
}

pub fn random_coefficient(rng: &mut impl Rng, ctx: &FermatContext) -> CyclotomicNumber {
    let m = ctx.conductor() as i64;
    loop {
        let a = ctx.zeta_pow(rng.gen_range(0..m)).scale(&rational(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
        let b = ctx.zeta_pow(rng.gen_range(0..m)).scale(&rational(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
        let c = &a + &b;
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn random_product_spec(rng: &mut impl Rng, ctx: &FermatContext) -> ProductClassSpec {
    ProductClassSpec {
        a: (0..ctx.pairs()).map(|_| random_coefficient(rng, ctx)).collect(),
        c_lambda: ctx.scalar(1),
        pairing: Pairing::standard(ctx.nvars()),
    }
}

/// Dense random degree-σ polynomial with reduced monomials.
pub fn random_class(rng: &mut impl Rng, ctx: &FermatContext) -> Polynomial {
    let monos = hodgeloci::multipoly::monomials_bounded(ctx.nvars(), ctx.sigma(), ctx.d() - 2);
    let terms: Vec<(Monomial, CyclotomicNumber)> = monos.into_iter().map(|m| (m, ctx.scalar(rng.gen_range(-3..=3)))).collect();
    let p = Polynomial::from_terms(ctx.field(), ctx.nvars(), terms);
    if !p.is_zero() {
        return p;
    }
    let e: Vec<u32> = (0..ctx.nvars()).map(|i| if i < ctx.pairs() { ctx.d() - 2 } else { 0 }).collect();
    Polynomial::monomial(ctx.field(), Monomial::new(e))
}

/// Gaussian elimination written out directly over the field; used as an
/// oracle independent of the library's elimination routine.
pub fn naive_rank(mut rows: Vec<Vec<CyclotomicNumber>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].checked_div(&pivot).unwrap();
                for j in c..ncols {
                    let sub = &rows[rank][j] * &f;
                    rows[r][j] = &rows[r][j] - &sub;
                }
            }
        }
        rank += 1;
    }
    rank
}
