//! Hodge-class constructions specific to the Fermat variety.
//!
//! Classes are represented by their degree-σ polynomials in the Jacobian
//! ring. Linear cycles carry the scale convention `c_δ = 1`; every rationality
//! statement below is invariant under rational rescaling, so the convention
//! never changes a verdict.

use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{integer, CyclotomicField, CyclotomicNumber, Rational};
use crate::idealcalc::{
    colon_slice, echelonize, ideal_hilbert_function, ideal_square_membership, reduce_mod_jacobian, socle_degree, socle_generator,
    FermatContext, SquareTerm,
};
use crate::linalg::solve_in_span;
use crate::multipoly::{divide, geometric_factor, Monomial, MonomialOrder, Polynomial};

/// Grouping of the coordinates into ordered pairs (perm[0], perm[1]), (perm[2], perm[3]), ….
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Pairing(pub Vec<usize>);

impl Pairing {
    pub fn standard(nvars: usize) -> Self {
        Pairing((0..nvars).collect())
    }

    pub fn validate(&self, nvars: usize) -> Result<()> {
        let mut seen = vec![false; nvars];
        if self.0.len() != nvars {
            return Err(Error::InvalidArgument(format!("pairing has {} entries, expected {nvars}", self.0.len())));
        }
        for &p in &self.0 {
            if p >= nvars || seen[p] {
                return Err(Error::InvalidArgument(format!("pairing {:?} is not a permutation", self.0)));
            }
            seen[p] = true;
        }
        Ok(())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.chunks(2).map(|c| (c[0], c[1]))
    }
}

/// All perfect matchings of {0, …, nvars-1} as pairings with p < q inside each
/// pair, in a fixed recursive order starting with the standard pairing.
pub fn all_pairings(nvars: usize) -> Vec<Pairing> {
    fn go(free: &[usize], acc: &mut Vec<usize>, out: &mut Vec<Pairing>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(Pairing(acc.clone()));
            return;
        };
        for (i, &q) in rest.iter().enumerate() {
            let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
            acc.extend([first, q]);
            go(&remaining, acc, out);
            acc.truncate(acc.len() - 2);
        }
    }
    let mut out = Vec::new();
    go(&(0..nvars).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

/// A linear cycle {x_p − ζ_{2d}^{α_j} x_q = 0 for each pair (p, q)}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct LinearCycleSpec {
    pub alpha: Vec<i64>,
    pub pairing: Pairing,
}

impl LinearCycleSpec {
    pub fn new(alpha: Vec<i64>, ctx: &FermatContext) -> Result<Self> {
        let spec = LinearCycleSpec { alpha, pairing: Pairing::standard(ctx.nvars()) };
        spec.validate(ctx)?;
        Ok(spec)
    }

    pub fn with_pairing(alpha: Vec<i64>, pairing: Pairing, ctx: &FermatContext) -> Result<Self> {
        let spec = LinearCycleSpec { alpha, pairing };
        spec.validate(ctx)?;
        Ok(spec)
    }

    pub fn validate(&self, ctx: &FermatContext) -> Result<()> {
        self.pairing.validate(ctx.nvars())?;
        if self.alpha.len() != ctx.pairs() {
            return Err(Error::InvalidArgument(format!("alpha has {} entries, expected {}", self.alpha.len(), ctx.pairs())));
        }
        let top = 2 * ctx.d() as i64;
        if let Some(a) = self.alpha.iter().find(|&&a| a % 2 == 0 || a < 1 || a >= top) {
            return Err(Error::InvalidArgument(format!("alpha entry {a} must be odd and in 1..{}", top - 1)));
        }
        Ok(())
    }
}

/// All α tuples with odd entries in 1..2d-1, lexicographically.
pub fn alpha_tuples(ctx: &FermatContext) -> Vec<Vec<i64>> {
    let odds: Vec<i64> = (1..2 * ctx.d() as i64).step_by(2).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..ctx.pairs() {
        out = out.into_iter().flat_map(|t| odds.iter().map(move |&o| [t.clone(), vec![o]].concat())).collect();
    }
    out
}

/// Linear cycles over the standard pairing, or over every pairing.
pub fn linear_cycle_specs(ctx: &FermatContext, every_pairing: bool) -> Vec<LinearCycleSpec> {
    let pairings = if every_pairing { all_pairings(ctx.nvars()) } else { vec![Pairing::standard(ctx.nvars())] };
    let alphas = alpha_tuples(ctx);
    pairings.into_iter().flat_map(|p| alphas.iter().map(move |a| LinearCycleSpec { alpha: a.clone(), pairing: p.clone() })).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProductClassSpec {
    pub a: Vec<CyclotomicNumber>,
    pub c_lambda: CyclotomicNumber,
    pub pairing: Pairing,
}

impl ProductClassSpec {
    pub fn validate(&self, ctx: &FermatContext) -> Result<()> {
        self.pairing.validate(ctx.nvars())?;
        if self.a.len() != ctx.pairs() {
            return Err(Error::InvalidArgument(format!("a has {} entries, expected {}", self.a.len(), ctx.pairs())));
        }
        if self.c_lambda.is_zero() {
            return Err(Error::InvalidArgument("c_lambda must be nonzero".into()));
        }
        Ok(())
    }

    pub fn from_linear_cycle(spec: &LinearCycleSpec, ctx: &FermatContext) -> Self {
        ProductClassSpec {
            a: spec.alpha.iter().map(|&a| ctx.zeta_pow(a)).collect(),
            c_lambda: ctx.zeta_pow(spec.alpha.iter().sum()),
            pairing: spec.pairing.clone(),
        }
    }
}

fn into_field(x: &CyclotomicNumber, field: &Arc<CyclotomicField>) -> Result<CyclotomicNumber> {
    x.promote(field.conductor())
}

fn factor_product(a: &[CyclotomicNumber], pairing: &Pairing, ctx: &FermatContext) -> Result<Polynomial> {
    let mut acc = Polynomial::constant(ctx.field(), ctx.nvars(), ctx.scalar(1));
    for ((p, q), aj) in pairing.pairs().zip(a) {
        let aj = into_field(aj, ctx.field())?;
        acc = &acc * &geometric_factor(ctx.field(), ctx.nvars(), p, q, &aj, ctx.d())?;
    }
    Ok(acc)
}

pub fn linear_cycle_poly(spec: &LinearCycleSpec, ctx: &FermatContext) -> Result<Polynomial> {
    spec.validate(ctx)?;
    product_class_poly(&ProductClassSpec::from_linear_cycle(spec, ctx), ctx)
}

/// c_λ · ∏_j Σ_k x_p^{d-2-k} (a_j x_q)^k over the pairs (p, q).
pub fn product_class_poly(spec: &ProductClassSpec, ctx: &FermatContext) -> Result<Polynomial> {
    spec.validate(ctx)?;
    let c = into_field(&spec.c_lambda, ctx.field())?;
    Ok(factor_product(&spec.a, &spec.pairing, ctx)?.scale(&c))
}

/// Coefficient of (x_0⋯x_{n+1})^{d-2} in det Hess(F) = ∏ d(d-1) x_i^{d-2}.
pub fn hessian_coefficient(ctx: &FermatContext) -> CyclotomicNumber {
    let d = ctx.d() as i64;
    ctx.scalar(1).scale(&integer(d * (d - 1)).pow(ctx.nvars() as i32))
}

/// −(1/((n/2)!)²) · (d−1)^{n+2} · d, the factor turning c into an intersection number.
pub fn intersection_factor(ctx: &FermatContext) -> Rational {
    let half_fact: i64 = (1..=ctx.n() as i64 / 2).product();
    let d = ctx.d() as i64;
    -integer(d - 1).pow(ctx.nvars() as i32) * integer(d) / integer(half_fact * half_fact)
}

#[derive(Clone, Debug)]
pub struct PairingResult {
    pub c: CyclotomicNumber,
    pub intersection: CyclotomicNumber,
    pub c_rational: Option<Rational>,
    pub intersection_rational: Option<Rational>,
    /// Non-socle terms of reduce(P·Q); zero for genuine class pairs.
    pub residual: Polynomial,
}

fn reduced_product(p: &Polynomial, q: &Polynomial, ctx: &FermatContext) -> Polynomial {
    let qs: Vec<(&Monomial, &CyclotomicNumber)> = q.terms().collect();
    let terms = p.terms().flat_map(|(m, c)| {
        qs.iter().filter_map(move |(n, e)| {
            let t = m.mul(n);
            ctx.is_reduced(&t).then(|| (t, c * *e))
        })
    });
    Polynomial::from_terms(ctx.field(), ctx.nvars(), terms.collect::<Vec<_>>())
}

/// Socle coefficient of reduce(P·Q) without forming the product.
fn socle_coefficient(p_red: &Polynomial, q: &Polynomial, ctx: &FermatContext) -> CyclotomicNumber {
    let socle = ctx.socle_monomial();
    let mut acc = ctx.scalar(0);
    for (m, c) in q.terms() {
        if let Some(rest) = socle.div(m) {
            if let Some(e) = p_red.coeff(&rest) {
                acc += &(c * e);
            }
        }
    }
    acc
}

pub fn pair_classes(p: &Polynomial, q: &Polynomial, ctx: &FermatContext) -> Result<PairingResult> {
    ctx.check_class(p)?;
    ctx.check_class(q)?;
    let prod = reduced_product(p, q, ctx);
    let socle = ctx.socle_monomial();
    let raw = prod.coeff(&socle).cloned().unwrap_or_else(|| ctx.scalar(0));
    let c = raw.checked_div(&hessian_coefficient(ctx))?;
    let intersection = c.scale(&intersection_factor(ctx));
    Ok(PairingResult {
        c_rational: c.as_rational(),
        intersection_rational: intersection.as_rational(),
        c,
        intersection,
        residual: prod.filter_terms(|m| m != &socle),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rationality {
    Zero,
    Rational,
    Irrational,
}

impl Rationality {
    pub fn of(c: &CyclotomicNumber) -> Self {
        if c.is_zero() {
            Rationality::Zero
        } else if c.as_rational().is_some() {
            Rationality::Rational
        } else {
            Rationality::Irrational
        }
    }
}

#[derive(Clone, Debug)]
pub struct CertificateEntry {
    pub spec: LinearCycleSpec,
    pub c: CyclotomicNumber,
    pub status: Rationality,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub entries: Vec<CertificateEntry>,
    /// Index of the first irrational entry, if any.
    pub counterexample: Option<usize>,
}

impl Certificate {
    pub fn all_rational(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Pairs P against every linear cycle; entries follow the order of
/// [`linear_cycle_specs`] regardless of scheduling.
pub fn rationality_certificate(p: &Polynomial, ctx: &FermatContext, every_pairing: bool) -> Result<Certificate> {
    ctx.check_class(p)?;
    let p_red = reduce_mod_jacobian(p, ctx);
    let hess = hessian_coefficient(ctx);
    let entries = linear_cycle_specs(ctx, every_pairing)
        .into_par_iter()
        .map(|spec| {
            let q = linear_cycle_poly(&spec, ctx)?;
            let c = socle_coefficient(&p_red, &q, ctx).checked_div(&hess)?;
            Ok(CertificateEntry { status: Rationality::of(&c), spec, c })
        })
        .collect::<Result<Vec<_>>>()?;
    let counterexample = entries.iter().position(|e| e.status == Rationality::Irrational);
    Ok(Certificate { entries, counterexample })
}

/// Reads off the product structure from the degree-1 colon slice.
///
/// The slice is echelonized under lex; each form must be x_p − a x_q with q a
/// non-pivot variable. A bare x_p (a = 0) is paired with the lowest variable
/// left unpaired.
pub fn recover_structure(p: &Polynomial, ctx: &FermatContext) -> Result<ProductClassSpec> {
    let slice = colon_slice(p, 1, ctx)?;
    let expected = ctx.pairs();
    if slice.dim() != expected {
        return Err(Error::NoProductStructure { found: slice.dim(), expected });
    }
    let nv = ctx.nvars();
    let ord = MonomialOrder::lex(nv);
    let var_of = |m: &Monomial| m.exps().iter().position(|&e| e == 1).unwrap();
    let mut used = vec![false; nv];
    let mut slots: Vec<(usize, Option<usize>, CyclotomicNumber)> = Vec::new();
    for form in &slice.basis {
        let terms = form.sorted_terms(&ord);
        let p_var = var_of(terms[0].0);
        used[p_var] = true;
        match terms.len() {
            1 => slots.push((p_var, None, ctx.scalar(0))),
            2 => {
                let q_var = var_of(terms[1].0);
                if used[q_var] && slots.iter().any(|s| s.1 == Some(q_var)) {
                    return Err(Error::ShapeViolation(format!("variable x{q_var} occurs in two forms")));
                }
                used[q_var] = true;
                slots.push((p_var, Some(q_var), -terms[1].1.clone()));
            }
            k => return Err(Error::ShapeViolation(format!("degree-1 form {form} has {k} terms, expected a binomial"))),
        }
    }
    let mut pairing = Vec::with_capacity(nv);
    let mut a = Vec::with_capacity(expected);
    for (p_var, q_var, coeff) in slots {
        let q_var = match q_var {
            Some(q) => q,
            None => {
                let q = (0..nv).find(|&v| !used[v]).ok_or_else(|| Error::ShapeViolation("no free variable for a zero slot".into()))?;
                used[q] = true;
                q
            }
        };
        pairing.extend([p_var, q_var]);
        a.push(coeff);
    }
    let pairing = Pairing(pairing);
    let base = factor_product(&a, &pairing, ctx)?;
    let (lead, lc) = base.leading_term(&ord)?;
    let c_lambda = p.coeff(&lead).cloned().unwrap_or_else(|| ctx.scalar(0)).checked_div(&lc)?;
    let spec = ProductClassSpec { a, c_lambda, pairing };
    if spec.c_lambda.is_zero() || base.scale(&spec.c_lambda) != *p {
        return Err(Error::ShapeViolation("class is not a multiple of the recovered product".into()));
    }
    Ok(spec)
}

#[derive(Clone, Debug)]
pub struct RationalityScanReport {
    pub d: u32,
    /// a^d + 1 = 0.
    pub direct: bool,
    /// Every well-defined ratio is rational.
    pub scan: bool,
    /// (r, s) with x = ζ_{2d}^r, y = ζ_{2d}^s giving an irrational ratio.
    pub counterexample: Option<(i64, i64)>,
    pub skipped: usize,
    pub cross_ratio: CyclotomicNumber,
    pub cross_ratio_rational: bool,
    /// scan ∧ cross ratio irrational ⇒ direct.
    pub implication_holds: bool,
}

/// Scans (a^{d-1}+x)(ay-1) / ((a^{d-1}+y)(ax-1)) over odd powers x, y of ζ_{2d}.
pub fn rationality_scan(a: &CyclotomicNumber, d: u32) -> Result<RationalityScanReport> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("d = {d} must be at least 3")));
    }
    let m = (a.conductor() as u64).lcm(&(2 * d as u64)).lcm(&4);
    let m = u32::try_from(m).map_err(|_| Error::InvalidConductor(m as i64))?;
    let a = a.promote(m)?;
    let field = a.field().clone();
    let step = (m / (2 * d)) as i64;
    let zeta = |k: i64| CyclotomicNumber::zeta_pow_in(&field, k * step);
    let one = CyclotomicNumber::from_int_in(&field, 1);
    let ad1 = a.pow(d as i64 - 1)?;
    let direct = (&(&ad1 * &a) + &one).is_zero();
    let odds: Vec<i64> = (1..2 * d as i64).step_by(2).collect();
    let mut skipped = 0;
    let mut counterexample = None;
    'outer: for &r in &odds {
        for &s in &odds {
            let (x, y) = (zeta(r), zeta(s));
            let den = &(&ad1 + &y) * &(&(&a * &x) - &one);
            if den.is_zero() {
                skipped += 1;
                continue;
            }
            let num = &(&ad1 + &x) * &(&(&a * &y) - &one);
            if num.checked_div(&den)?.as_rational().is_none() {
                counterexample = Some((r, s));
                break 'outer;
            }
        }
    }
    let scan = counterexample.is_none();
    let zd = CyclotomicNumber::zeta_pow_in(&field, 2 * step);
    let cross_ratio = &(-&one) - &(&zd + &zd.inv()?);
    let cross_ratio_rational = cross_ratio.as_rational().is_some();
    let implication_holds = !(scan && !cross_ratio_rational) || direct;
    Ok(RationalityScanReport { d, direct, scan, counterexample, skipped, cross_ratio, cross_ratio_rational, implication_holds })
}

/// Linear forms solved for pivot variables: returns echelon rows and pivots.
fn pivot_forms(forms: &[Polynomial], ord: &MonomialOrder) -> Result<(Vec<Polynomial>, Vec<usize>)> {
    let rows = echelonize(forms, ord);
    if rows.len() < forms.len() {
        return Err(Error::DependentForms);
    }
    let pivots = rows.iter().map(|r| r.leading_monomial(ord).unwrap().exps().iter().position(|&e| e == 1).unwrap()).collect();
    Ok((rows, pivots))
}

#[derive(Clone, Debug)]
pub struct PlaneDecomposition {
    /// F = Σ L_i Q_i.
    pub q: Vec<Polynomial>,
    /// Quotient Hilbert function of ⟨L_i, Q_i⟩ in degrees 0..=σ+1.
    pub hilbert: Vec<usize>,
    pub socle_degree: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct PlaneReport {
    pub contained: bool,
    pub decomposition: Option<PlaneDecomposition>,
}

/// Decides whether {L_1 = … = L_{n/2+1} = 0} lies on the Fermat variety.
pub fn plane_in_fermat(forms: &[Polynomial], ctx: &FermatContext) -> Result<PlaneReport> {
    if forms.len() != ctx.pairs() {
        return Err(Error::InvalidArgument(format!("{} linear forms given, expected {}", forms.len(), ctx.pairs())));
    }
    for l in forms {
        ctx.check_poly(l)?;
        if !l.is_homogeneous_of(1) {
            return Err(Error::NotHomogeneous(1));
        }
    }
    let nv = ctx.nvars();
    let (rows, pivots) = pivot_forms(forms, &MonomialOrder::lex(nv))?;
    let mut restricted = ctx.fermat();
    for (row, &v) in rows.iter().zip(&pivots) {
        let replacement = &Polynomial::var(ctx.field(), nv, v) - row;
        restricted = restricted.substitute(v, &replacement)?;
    }
    if !restricted.is_zero() {
        return Ok(PlaneReport { contained: false, decomposition: None });
    }
    // Pivot variables first: each row's leading term is its own pivot and the
    // remainder is F restricted to the plane.
    let perm: Vec<usize> = pivots.iter().copied().chain((0..nv).filter(|v| !pivots.contains(v))).collect();
    let ord = MonomialOrder::from_perm(perm)?;
    let division = divide(&ctx.fermat(), &rows, &ord)?;
    debug_assert!(division.remainder.is_zero());
    // rows = T · forms, so Σ rows_i Q'_i = Σ_j forms_j (Σ_i T_ij Q'_i).
    let coords = |l: &Polynomial| -> Vec<CyclotomicNumber> {
        (0..nv).map(|v| l.coeff(&Monomial::var(nv, v)).cloned().unwrap_or_else(|| ctx.scalar(0))).collect()
    };
    let form_coords: Vec<Vec<CyclotomicNumber>> = forms.iter().map(coords).collect();
    let mut q = vec![Polynomial::zero(ctx.field(), nv); forms.len()];
    for (row, qi) in rows.iter().zip(&division.quotients) {
        let t = solve_in_span(ctx.field(), &form_coords, &coords(row)).ok_or(Error::DependentForms)?;
        for (j, tij) in t.iter().enumerate() {
            if !tij.is_zero() {
                q[j] = &q[j] + &qi.scale(tij);
            }
        }
    }
    let gens: Vec<Polynomial> = forms.iter().cloned().chain(q.iter().cloned()).collect();
    let hilbert = ideal_hilbert_function(&gens, ctx.sigma() + 1)?;
    let socle = socle_degree(&hilbert);
    Ok(PlaneReport { contained: true, decomposition: Some(PlaneDecomposition { q, hilbert, socle_degree: socle }) })
}

#[derive(Clone, Debug)]
pub struct SplitIntersection {
    /// f_1, g_1, f_2, g_2, ….
    pub generators: Vec<Polynomial>,
    /// Quotient Hilbert function in degrees 0..=σ+1.
    pub hilbert: Vec<usize>,
    pub socle_degree: Option<usize>,
    /// Σ (deg f_i − 1) + Σ (deg g_i − 1).
    pub expected_socle: usize,
    /// F as an element of the squared ideal, if it is one.
    pub square_witness: Option<Vec<SquareTerm>>,
}

impl SplitIntersection {
    pub fn socle_ok(&self) -> bool {
        self.socle_degree == Some(self.expected_socle)
    }
}

/// Checks F = Σ f_i g_i and computes the quotient data of ⟨f_i, g_i⟩.
pub fn split_intersection(f: &[Polynomial], g: &[Polynomial], ctx: &FermatContext) -> Result<SplitIntersection> {
    if f.len() != ctx.pairs() || g.len() != ctx.pairs() {
        return Err(Error::InvalidArgument(format!("expected {} pairs (f_i, g_i)", ctx.pairs())));
    }
    let mut expected_socle = 0;
    let mut sum = Polynomial::zero(ctx.field(), ctx.nvars());
    for (fi, gi) in f.iter().zip(g) {
        ctx.check_poly(fi)?;
        ctx.check_poly(gi)?;
        let (a, b) = match (fi.homogeneous_degree(), gi.homogeneous_degree()) {
            (Some(a), Some(b)) if a >= 1 && b >= 1 && a + b == ctx.d() as usize => (a, b),
            _ => return Err(Error::InvalidArgument(format!("deg f_i + deg g_i must equal {} with both positive", ctx.d()))),
        };
        expected_socle += a - 1 + b - 1;
        sum = &sum + &(fi * gi);
    }
    if sum != ctx.fermat() {
        return Err(Error::NotDecomposition);
    }
    let generators: Vec<Polynomial> = f.iter().zip(g).flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    let hilbert = ideal_hilbert_function(&generators, ctx.sigma() + 1)?;
    let square_witness = ideal_square_membership(&ctx.fermat(), &generators)?;
    Ok(SplitIntersection { socle_degree: socle_degree(&hilbert), generators, hilbert, expected_socle, square_witness })
}

/// Splits x_{2j}^d + x_{2j+1}^d = ∏_{k odd} (x_{2j} − ζ_{2d}^k x_{2j+1}): f_j
/// takes the first e_j factors and g_j the rest.
pub fn split_factors_of_type(types: &[usize], ctx: &FermatContext) -> Result<(Vec<Polynomial>, Vec<Polynomial>)> {
    if types.len() != ctx.pairs() {
        return Err(Error::InvalidArgument(format!("type has {} entries, expected {}", types.len(), ctx.pairs())));
    }
    let d = ctx.d() as usize;
    let nv = ctx.nvars();
    let mut f = Vec::new();
    let mut g = Vec::new();
    for (j, &e) in types.iter().enumerate() {
        if e == 0 || e >= d {
            return Err(Error::InvalidArgument(format!("type entry {e} must lie in 1..{}", d - 1)));
        }
        let x = Polynomial::var(ctx.field(), nv, 2 * j);
        let y = Polynomial::var(ctx.field(), nv, 2 * j + 1);
        let factor = |k: usize| &x - &y.scale(&ctx.zeta_pow(2 * k as i64 + 1));
        let one = Polynomial::constant(ctx.field(), nv, ctx.scalar(1));
        f.push((0..e).fold(one.clone(), |acc, k| &acc * &factor(k)));
        g.push((e..d).fold(one, |acc, k| &acc * &factor(k)));
    }
    Ok((f, g))
}

/// The class whose colon ideal contains ⟨f_i, g_i⟩.
pub fn split_intersection_class(ci: &SplitIntersection, ctx: &FermatContext) -> Result<Polynomial> {
    socle_generator(&ci.generators, ctx)
}

#[derive(Clone, Debug)]
pub struct SpecialFamily {
    pub spec: ProductClassSpec,
    pub class: Polynomial,
    /// Lexicographically first α with nonzero pairing; the class pairs to 1 with it.
    pub normalizer: Vec<i64>,
    pub certificate: Certificate,
    pub j1_dim: usize,
}

/// Prefactor and base conductor of G_d: G_3 = S¹ ∩ Q(ζ_3), G_4 = ζ_8 · (S¹ ∩ Q(i)), G_6 = i · (S¹ ∩ Q(ζ_3)).
fn family_shape(d: u32, ctx: &FermatContext) -> Result<(CyclotomicNumber, u32)> {
    match d {
        3 => Ok((ctx.scalar(1), 3)),
        4 => Ok((ctx.zeta_pow(1), 4)),
        6 => Ok((ctx.zeta_pow(3), 3)),
        _ => Err(Error::NotInFamily(format!("no family for d = {d}"), d)),
    }
}

/// Checks a_j ∈ G_d and returns the unit-circle part.
pub fn family_member_unit(a: &CyclotomicNumber, ctx: &FermatContext) -> Result<CyclotomicNumber> {
    let d = ctx.d();
    let (pre, base) = family_shape(d, ctx)?;
    let a = a.promote(ctx.conductor()).map_err(|_| Error::NotInFamily(format!("{a} is not in Q(ζ_{})", ctx.conductor()), d))?;
    let u = a.checked_div(&pre)?;
    let u = u.demote(base).ok_or_else(|| Error::NotInFamily(format!("{a} / prefactor is not in Q(ζ_{base})"), d))?;
    if !u.unit_circle_check() {
        return Err(Error::NotInFamily(format!("{a} / prefactor is not on the unit circle"), d));
    }
    Ok(u)
}

pub fn special_family(d: u32, a: &[CyclotomicNumber], ctx: &FermatContext, every_pairing: bool) -> Result<SpecialFamily> {
    if d != ctx.d() {
        return Err(Error::InvalidArgument(format!("d = {d} does not match the context degree {}", ctx.d())));
    }
    family_shape(d, ctx)?;
    let a: Vec<CyclotomicNumber> = a.iter().map(|x| x.promote(ctx.conductor())).collect::<Result<_>>()?;
    for x in &a {
        family_member_unit(x, ctx)?;
    }
    let base = ProductClassSpec { a: a.clone(), c_lambda: ctx.scalar(1), pairing: Pairing::standard(ctx.nvars()) };
    let p1 = product_class_poly(&base, ctx)?;
    let p1_red = reduce_mod_jacobian(&p1, ctx);
    let hess = hessian_coefficient(ctx);
    let (normalizer, c) = alpha_tuples(ctx)
        .into_iter()
        .map(|alpha| {
            let q = linear_cycle_poly(&LinearCycleSpec { alpha: alpha.clone(), pairing: Pairing::standard(ctx.nvars()) }, ctx)?;
            Ok((alpha, socle_coefficient(&p1_red, &q, ctx).checked_div(&hess)?))
        })
        .find(|r: &Result<(Vec<i64>, CyclotomicNumber)>| r.as_ref().map_or(true, |(_, c)| !c.is_zero()))
        .ok_or(Error::CannotNormalize)??;
    let spec = ProductClassSpec { a, c_lambda: c.inv()?, pairing: base.pairing };
    let class = product_class_poly(&spec, ctx)?;
    let certificate = rationality_certificate(&class, ctx, every_pairing)?;
    let j1_dim = colon_slice(&class, 1, ctx)?.dim();
    Ok(SpecialFamily { spec, class, normalizer, certificate, j1_dim })
}
