//! Divisor counting and the two codimension bounds for Hodge loci.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::idealcalc::{colon_slice, colon_slice_with_order, lt_slice, standard_monomials, FermatContext};
use crate::multipoly::{monomials_bounded, monomials_of_degree, Monomial, MonomialOrder, Polynomial};

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// #{β : 0 ≤ β ≤ α componentwise, |β| = k}.
pub fn count_divisors(alpha: &[u32], k: usize) -> u64 {
    let mut ways = vec![0u64; k + 1];
    ways[0] = 1;
    for &a in alpha {
        let mut next = vec![0u64; k + 1];
        let mut window = 0u64;
        for t in 0..=k {
            window += ways[t];
            if t > a as usize {
                window -= ways[t - a as usize - 1];
            }
            next[t] = window;
        }
        ways = next;
    }
    ways[k]
}

/// C(n/2+d, d) − (n/2+1)².
pub fn linear_bound(n: usize, d: u32) -> i64 {
    let h = n / 2;
    binomial(h + d as usize, d as usize) as i64 - ((h + 1) * (h + 1)) as i64
}

/// C(n/2+d, d) + C(n/2+d−1, d−1) − (3n²/8 + 9n/4 + 2); the subtracted term is
/// an integer for even n.
pub fn second_bound(n: usize, d: u32) -> i64 {
    let h = n / 2;
    let d = d as usize;
    let n = n as i64;
    binomial(h + d, d) as i64 + binomial(h + d - 1, d - 1) as i64 - (3 * n * n + 18 * n + 16) / 8
}

fn check_nd(n: usize, d: u32) -> Result<()> {
    FermatContext::new(n, d).map(|_| ())
}

/// (0^{n/2+1}, (d−2)^{n/2+1}).
pub fn linear_template(n: usize, d: u32) -> Vec<u32> {
    let h = n / 2 + 1;
    [vec![0; h], vec![d - 2; h]].concat()
}

/// (0^{n/2}, 1, d−3, (d−2)^{n/2}).
pub fn second_template(n: usize, d: u32) -> Vec<u32> {
    let h = n / 2;
    [vec![0; h], vec![1, d - 3], vec![d - 2; h]].concat()
}

fn sorted(v: &[u32]) -> Vec<u32> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

/// Number of distinct coordinate relabelings of `template`.
pub fn orbit_size(template: &[u32]) -> u64 {
    let s = sorted(template);
    let mut total = 1u64;
    let mut left = s.len();
    for run in s.chunk_by(|a, b| a == b) {
        total *= binomial(left, run.len());
        left -= run.len();
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct DivisorScanReport {
    pub n: usize,
    pub d: u32,
    pub sigma: usize,
    pub enumerated: u64,
    /// Enumeration stopped at the budget; assertions cover only the prefix.
    pub partial: bool,
    pub min: u64,
    pub min_attainers_count: u64,
    pub linear_orbit_size: u64,
    /// Minimum over α outside the linear template orbit.
    pub second_min: Option<u64>,
    pub second_attainers_count: u64,
    pub second_orbit_size: u64,
    /// Up to eight attainers of each minimum that are not template relabelings.
    pub extra_min_attainers: Vec<Vec<u32>>,
    pub extra_second_attainers: Vec<Vec<u32>>,
    pub assertions: Vec<Assertion>,
}

impl DivisorScanReport {
    pub fn all_passed(&self) -> bool {
        !self.partial && self.assertions.iter().all(|a| a.passed)
    }
}

pub const DEFAULT_SCAN_BUDGET: u64 = 5_000_000;

pub fn scan_divisor_minima(n: usize, d: u32) -> Result<DivisorScanReport> {
    scan_divisor_minima_with_budget(n, d, DEFAULT_SCAN_BUDGET)
}

/// Exhaustive check over all α ≤ (d−2, …, d−2) of degree σ, in colex order.
pub fn scan_divisor_minima_with_budget(n: usize, d: u32, budget: u64) -> Result<DivisorScanReport> {
    check_nd(n, d)?;
    let sigma = (d as usize - 2) * (n / 2 + 1);
    let k = d as usize;
    let mut alphas: Vec<Vec<u32>> = monomials_bounded(n + 2, sigma, d - 2).into_iter().map(|m| m.exps().to_vec()).collect();
    alphas.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    let partial = alphas.len() as u64 > budget;
    alphas.truncate(budget.min(alphas.len() as u64) as usize);
    let counts: Vec<u64> = alphas.par_iter().map(|a| count_divisors(a, k)).collect();

    let lin = sorted(&linear_template(n, d));
    let sec = if d >= 4 { sorted(&second_template(n, d)) } else { Vec::new() };
    let min = counts.iter().copied().min().unwrap_or(0);
    let min_att: Vec<&Vec<u32>> = alphas.iter().zip(&counts).filter(|(_, &c)| c == min).map(|(a, _)| a).collect();
    let non_linear: Vec<(&Vec<u32>, u64)> = alphas.iter().zip(&counts).filter(|(a, _)| sorted(a) != lin).map(|(a, &c)| (a, c)).collect();
    let second_min = non_linear.iter().map(|(_, c)| *c).min();
    let second_att: Vec<&Vec<u32>> = non_linear.iter().filter(|(_, c)| Some(*c) == second_min).map(|(a, _)| *a).collect();
    let linear_orbit = orbit_size(&lin);
    let second_orbit = if d >= 4 { orbit_size(&sec) } else { 0 };
    let extras = |set: &[&Vec<u32>], tpl: &[u32]| -> Vec<Vec<u32>> {
        set.iter().filter(|a| sorted(a) != tpl).take(8).map(|a| (*a).clone()).collect()
    };
    let extra_min = extras(&min_att, &lin);
    let extra_second = if d >= 4 { extras(&second_att, &sec) } else { Vec::new() };

    let bound = linear_bound(n, d);
    let mut assertions = vec![
        Assertion { name: "minimum equals linear bound".into(), passed: min as i64 == bound, detail: format!("min {min}, bound {bound}") },
        Assertion {
            name: "minimum attained exactly on linear template".into(),
            passed: extra_min.is_empty() && min_att.len() as u64 == linear_orbit,
            detail: format!("{} attainers, {} relabelings of {:?}", min_att.len(), linear_orbit, linear_template(n, d)),
        },
    ];
    if d >= 4 {
        let t2 = second_bound(n, d);
        assertions.push(Assertion {
            name: "second minimum equals second bound".into(),
            passed: second_min.map(|m| m as i64) == Some(t2),
            detail: format!("second min {second_min:?}, bound {t2}"),
        });
        assertions.push(Assertion {
            name: "second minimum attained exactly on second template".into(),
            passed: extra_second.is_empty() && second_att.len() as u64 == second_orbit,
            detail: format!("{} attainers, {} relabelings of {:?}", second_att.len(), second_orbit, second_template(n, d)),
        });
    }
    let violations = exchange_violations(&alphas, k);
    assertions.push(Assertion {
        name: "exchange inequality".into(),
        passed: violations.is_empty(),
        detail: match violations.first() {
            None => "holds on every pair".into(),
            Some((a, i, j)) => format!("{} violations, first at α = {a:?}, i = {i}, j = {j}", violations.len()),
        },
    });
    Ok(DivisorScanReport {
        n,
        d,
        sigma,
        enumerated: alphas.len() as u64,
        partial,
        min,
        min_attainers_count: min_att.len() as u64,
        linear_orbit_size: linear_orbit,
        second_min,
        second_attainers_count: second_att.len() as u64,
        second_orbit_size: second_orbit,
        extra_min_attainers: extra_min,
        extra_second_attainers: extra_second,
        assertions,
    })
}

/// Checks #S^k_{α'} ≤ #S^k_α for α' = α − e_i + e_j whenever 0 < α_i ≤ α_j,
/// strictly when α_j ≤ k ≤ |α| − α_i.
pub fn exchange_holds(alpha: &[u32], i: usize, j: usize, k: usize) -> bool {
    let (ai, aj) = (alpha[i], alpha[j]);
    if i == j || ai == 0 || ai > aj {
        return true;
    }
    let mut moved = alpha.to_vec();
    moved[i] -= 1;
    moved[j] += 1;
    let (before, after) = (count_divisors(alpha, k), count_divisors(&moved, k));
    let total: usize = alpha.iter().map(|&a| a as usize).sum();
    let strict = aj as usize <= k && k + ai as usize <= total;
    if strict {
        after < before
    } else {
        after <= before
    }
}

fn exchange_violations(alphas: &[Vec<u32>], k: usize) -> Vec<(Vec<u32>, usize, usize)> {
    alphas
        .par_iter()
        .flat_map_iter(|a| {
            let n = a.len();
            (0..n)
                .flat_map(move |i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !exchange_holds(a, i, j, k))
                .map(|(i, j)| (a.clone(), i, j))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundClass {
    /// Below the linear bound; the divisor hypothesis behind it must fail.
    BelowLinear,
    AttainsLinearMinimum,
    AttainsSecondMinimum,
    Above,
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub value: i64,
    pub bound_linear: i64,
    pub bound_second: i64,
    pub classification: BoundClass,
    /// Echelon basis of the degree-1 colon slice, reported at the linear
    /// minimum when n(d−2) ≥ 6.
    pub j1: Option<Vec<Polynomial>>,
    /// dim J_1 = n/2 + 1 at the linear minimum when n(d−2) ≥ 6.
    pub j1_check: Option<bool>,
}

/// dim R_d of the quotient by (J^F : P), classified against both bounds.
pub fn tangent_codim(p: &Polynomial, ctx: &FermatContext) -> Result<BoundReport> {
    let (n, d) = (ctx.n(), ctx.d());
    let ord = MonomialOrder::lex(ctx.nvars());
    let value = standard_monomials(p, d as usize, ctx, &ord)?.len() as i64;
    let bound_linear = linear_bound(n, d);
    let bound_second = second_bound(n, d);
    let classification = if value < bound_linear {
        BoundClass::BelowLinear
    } else if value == bound_linear {
        BoundClass::AttainsLinearMinimum
    } else if d >= 4 && value == bound_second {
        BoundClass::AttainsSecondMinimum
    } else {
        BoundClass::Above
    };
    let (j1, j1_check) = if classification == BoundClass::AttainsLinearMinimum && n * (d as usize - 2) >= 6 {
        let basis = colon_slice(p, 1, ctx)?.basis;
        let ok = basis.len() == ctx.pairs();
        (Some(basis), Some(ok))
    } else {
        (None, None)
    };
    Ok(BoundReport { value, bound_linear, bound_second, classification, j1, j1_check })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LtShape {
    /// ⟨x_0, x_2, …, x_n, x_1^{d−1}, …, x_{n+1}^{d−1}⟩.
    Linear,
    /// ⟨x_0, …, x_{n−2}, x_n², x_1^{d−1}, …, x_{n−1}^{d−1}, x_{n+1}^{d−2}⟩.
    ConicPurePower,
    /// ⟨x_0, …, x_{n−2}, x_n², x_1^{d−1}, …, x_{n+1}^{d−1}, x_n x_{n+1}^{d−3}⟩.
    ConicMixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeMatch {
    pub shape: LtShape,
    /// Template variable t is sent to variable perm[t].
    pub relabeling: Vec<usize>,
}

fn pure(nv: usize, v: usize, e: u32) -> Monomial {
    let mut x = vec![0; nv];
    x[v] = e;
    Monomial::new(x)
}

/// Generators of a template ideal on n+2 variables.
pub fn template_generators(shape: LtShape, n: usize, d: u32) -> Vec<Monomial> {
    let nv = n + 2;
    let evens_below = |top: usize| (0..top).step_by(2).map(|v| pure(nv, v, 1));
    let odd_powers = |top: usize, e: u32| (1..top).step_by(2).map(move |v| pure(nv, v, e));
    match shape {
        LtShape::Linear => evens_below(nv).chain(odd_powers(nv, d - 1)).collect(),
        LtShape::ConicPurePower => {
            let mut g: Vec<Monomial> = evens_below(n).chain(odd_powers(n, d - 1)).collect();
            g.extend([pure(nv, n, 2), pure(nv, n + 1, d - 2)]);
            g
        }
        LtShape::ConicMixed => {
            let mut g: Vec<Monomial> = evens_below(n).chain(odd_powers(n, d - 1)).collect();
            let mut mixed = vec![0; nv];
            mixed[n] = 1;
            mixed[n + 1] = d - 3;
            g.extend([pure(nv, n, 2), pure(nv, n + 1, d - 1), Monomial::new(mixed)]);
            g
        }
    }
}

/// Smallest e with x_v^e in the ideal (up to degree `top`), per variable.
fn pure_power_signature(in_ideal: impl Fn(&Monomial) -> bool, nv: usize, top: u32) -> Vec<Option<u32>> {
    (0..nv).map(|v| (1..=top).find(|&e| in_ideal(&pure(nv, v, e)))).collect()
}

/// Bijections t ↦ perm[t] preserving the signature.
fn signature_relabelings(template_sig: &[Option<u32>], target_sig: &[Option<u32>]) -> Vec<Vec<usize>> {
    fn go(t: usize, ts: &[Option<u32>], gs: &[Option<u32>], used: &mut Vec<bool>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if t == ts.len() {
            out.push(acc.clone());
            return;
        }
        for v in 0..gs.len() {
            if !used[v] && gs[v] == ts[t] {
                used[v] = true;
                acc.push(v);
                go(t + 1, ts, gs, used, acc, out);
                acc.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, template_sig, target_sig, &mut vec![false; target_sig.len()], &mut Vec::new(), &mut out);
    out
}

fn relabel_monomial(m: &Monomial, perm: &[usize]) -> Monomial {
    let mut e = vec![0; m.nvars()];
    for (t, &v) in perm.iter().enumerate() {
        e[v] = m.exps()[t];
    }
    Monomial::new(e)
}

/// Matches ⟨LT(J^F : P)⟩ in degrees 1..=d against the templates, over all
/// relabelings compatible with the pure-power signature of each variable.
pub fn classify_lt_shape(p: &Polynomial, ord: &MonomialOrder, ctx: &FermatContext) -> Result<Option<ShapeMatch>> {
    let (n, d) = (ctx.n(), ctx.d());
    let nv = ctx.nvars();
    if ord.nvars() != nv {
        return Err(Error::VariableMismatch(ord.nvars(), nv));
    }
    let lts: Vec<BTreeSet<Monomial>> =
        (1..=d as usize).map(|k| colon_slice_with_order(p, k, ctx, ord).map(|s| lt_slice(&s, ord))).collect::<Result<_>>()?;
    let in_lt = |m: &Monomial| m.degree() >= 1 && m.degree() <= d as usize && lts[m.degree() - 1].contains(m);
    let target_sig = pure_power_signature(in_lt, nv, d);
    for shape in [LtShape::Linear, LtShape::ConicPurePower, LtShape::ConicMixed] {
        let gens = template_generators(shape, n, d);
        let in_template = |m: &Monomial| gens.iter().any(|g| g.divides(m));
        let template_sig = pure_power_signature(in_template, nv, d);
        for perm in signature_relabelings(&template_sig, &target_sig) {
            let moved: Vec<Monomial> = gens.iter().map(|g| relabel_monomial(g, &perm)).collect();
            let agrees = (1..=d as usize).all(|k| {
                let expect: BTreeSet<Monomial> =
                    monomials_of_degree(nv, k).into_iter().filter(|m| moved.iter().any(|g| g.divides(m))).collect();
                expect == lts[k - 1]
            });
            if agrees {
                return Ok(Some(ShapeMatch { shape, relabeling: perm }));
            }
        }
    }
    Ok(None)
}
