use hodgeloci::bounds::{classify_lt_shape, scan_divisor_minima_with_budget, tangent_codim, DEFAULT_SCAN_BUDGET};
use hodgeloci::exactnum::{parse_cyclotomic, parse_cyclotomic_list, CyclotomicNumber};
use hodgeloci::fermat_hodge::{
    linear_cycle_poly, pair_classes, plane_in_fermat, product_class_poly, rationality_certificate, rationality_scan, recover_structure,
    special_family, split_factors_of_type, split_intersection, Certificate, LinearCycleSpec, Pairing, ProductClassSpec, Rationality,
};
use hodgeloci::idealcalc::{
    buchberger, colon_generators, colon_slice_with_order, hilbert_profile, is_groebner_basis, pairing_rank, quotient_dims_from_leading,
    socle_generator, BuchbergerOptions, FermatContext, GroebnerStatus,
};
use hodgeloci::multipoly::{Monomial, MonomialOrder, Polynomial};
use hodgeloci::wire::{
    certificate_csv, json_error, BoundReportJson, CyclotomicJson, DivisorScanJson, PairingResultJson, PolynomialJson, ProductClassJson,
    ProfileJson, SliceJson,
};
use hodgeloci::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{ClassArgs, Cli, Dims, System, Verb};

pub enum Failure {
    /// Bad flags or literals: exit 2.
    Usage(String),
    /// Computation error: exit 1.
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

pub struct Outcome {
    pub value: Value,
    /// Rows for CSV output; verbs without a table emit key,value rows.
    pub csv: Option<String>,
    pub ok: bool,
}

impl Outcome {
    fn new(value: Value, ok: bool) -> Self {
        Outcome { value, csv: None, ok }
    }
}

fn usage<T>(e: impl std::fmt::Display) -> Res<T> {
    Err(Failure::Usage(e.to_string()))
}

fn input<T>(r: hodgeloci::Result<T>) -> Res<T> {
    r.map_err(|e| Failure::Usage(e.to_string()))
}

fn context(dims: &Dims) -> Res<FermatContext> {
    input(FermatContext::new(dims.n, dims.d))
}

fn read_inline_or_file(src: &str) -> Res<String> {
    let t = src.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(src.to_string())
    } else {
        std::fs::read_to_string(src).or_else(|e| usage(format!("cannot read {src}: {e}")))
    }
}

fn literals(src: &str, ctx: &FermatContext) -> Res<Vec<CyclotomicNumber>> {
    input(parse_cyclotomic_list(src, ctx.conductor(), ctx.conductor()))
}

fn literal(src: &str, ctx: &FermatContext) -> Res<CyclotomicNumber> {
    input(parse_cyclotomic(src, ctx.conductor(), ctx.conductor()))
}

fn pairing(p: &Option<Vec<usize>>, ctx: &FermatContext) -> Res<Pairing> {
    let p = p.clone().map(Pairing).unwrap_or_else(|| Pairing::standard(ctx.nvars()));
    input(p.validate(ctx.nvars()))?;
    Ok(p)
}

fn order(src: &Option<String>, ctx: &FermatContext, default: MonomialOrder) -> Res<MonomialOrder> {
    match src.as_deref() {
        None => Ok(default),
        Some("lex") => Ok(MonomialOrder::lex(ctx.nvars())),
        Some("evens-first") => Ok(MonomialOrder::evens_first(ctx.nvars())),
        Some(list) => {
            let perm = list.split(',').map(|s| s.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>();
            let perm = perm.or_else(|e| usage(format!("bad order {list:?}: {e}")))?;
            if perm.len() != ctx.nvars() {
                return usage(format!("order needs {} entries", ctx.nvars()));
            }
            input(MonomialOrder::from_perm(perm))
        }
    }
}

/// Nonzero a = ζ^k · p/q, sometimes plus a second such term.
fn random_coefficient(rng: &mut ChaCha8Rng, ctx: &FermatContext) -> CyclotomicNumber {
    let m = ctx.conductor() as i64;
    loop {
        let term = |rng: &mut ChaCha8Rng| {
            let q = hodgeloci::exactnum::rational(rng.gen_range(-5..=5), rng.gen_range(1..=4));
            ctx.zeta_pow(rng.gen_range(0..m)).scale(&q)
        };
        let mut a = term(rng);
        if rng.gen_bool(0.5) {
            a = &a + &term(rng);
        }
        if !a.is_zero() {
            return a;
        }
    }
}

pub fn random_product_class(ctx: &FermatContext, seed: u64) -> ProductClassSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ProductClassSpec {
        a: (0..ctx.pairs()).map(|_| random_coefficient(&mut rng, ctx)).collect(),
        c_lambda: ctx.scalar(1),
        pairing: Pairing::standard(ctx.nvars()),
    }
}

fn build_class(c: &ClassArgs, ctx: &FermatContext) -> Res<Polynomial> {
    let given = [c.alpha.is_some(), c.a.is_some(), c.poly.is_some(), c.ci_type.is_some(), c.random].iter().filter(|&&b| b).count();
    if given != 1 {
        return usage("give exactly one of --alpha, --a, --poly, --type, --random");
    }
    if let Some(alpha) = &c.alpha {
        let spec = input(LinearCycleSpec::with_pairing(alpha.clone(), pairing(&c.pairing, ctx)?, ctx))?;
        return Ok(linear_cycle_poly(&spec, ctx)?);
    }
    if let Some(a) = &c.a {
        let c_lambda = match &c.c_lambda {
            Some(s) => literal(s, ctx)?,
            None => ctx.scalar(1),
        };
        let spec = ProductClassSpec { a: literals(a, ctx)?, c_lambda, pairing: pairing(&c.pairing, ctx)? };
        input(spec.validate(ctx))?;
        return Ok(product_class_poly(&spec, ctx)?);
    }
    if let Some(src) = &c.poly {
        let text = read_inline_or_file(src)?;
        let j: PolynomialJson = serde_json::from_str(&text).map_err(|e| Failure::Usage(json_error(e).to_string()))?;
        return input(j.decode());
    }
    if let Some(t) = &c.ci_type {
        let (f, g) = input(split_factors_of_type(t, ctx))?;
        let gens: Vec<Polynomial> = f.into_iter().zip(g).flat_map(|(a, b)| [a, b]).collect();
        return Ok(socle_generator(&gens, ctx)?);
    }
    Ok(product_class_poly(&random_product_class(ctx, c.seed), ctx)?)
}

fn monomial_strings(ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(ToString::to_string).collect()
}

pub fn run(cli: &Cli) -> Res<Outcome> {
    match &cli.verb {
        Verb::Hilbert { dims, class, degree, check_pairing } => {
            let ctx = context(dims)?;
            let p = build_class(class, &ctx)?;
            let profile = hilbert_profile(&p, &ctx)?;
            let symmetric = profile.is_gorenstein_symmetric();
            let mut v = json!({ "profile": ProfileJson::from(&profile), "gorenstein_symmetric": symmetric });
            let mut ok = symmetric;
            if *check_pairing {
                let ranks = (0..=ctx.sigma()).map(|i| pairing_rank(&p, i, &ctx)).collect::<hodgeloci::Result<Vec<_>>>()?;
                ok &= ranks == profile.dims;
                v["pairing_ranks"] = json!(ranks);
            }
            if let Some(k) = degree {
                let slice = colon_slice_with_order(&p, *k, &ctx, &MonomialOrder::lex(ctx.nvars()))?;
                v["slice"] = json!(SliceJson::from(&slice));
            }
            Ok(Outcome::new(v, ok))
        }
        Verb::Tangent { dims, class, shape, order: ord } => {
            let ctx = context(dims)?;
            let ord = order(ord, &ctx, MonomialOrder::lex(ctx.nvars()))?;
            let p = build_class(class, &ctx)?;
            let report = tangent_codim(&p, &ctx)?;
            let mut v = json!(BoundReportJson::from(&report));
            if *shape {
                let m = classify_lt_shape(&p, &ord, &ctx)?;
                v["shape"] = json!(m.as_ref().map(|m| m.shape));
                v["relabeling"] = json!(m.map(|m| m.relabeling));
            }
            Ok(Outcome::new(v, report.j1_check != Some(false)))
        }
        Verb::LinearCycle { dims, alpha, pairing: pr } => {
            let ctx = context(dims)?;
            let spec = input(LinearCycleSpec::with_pairing(alpha.clone(), pairing(pr, &ctx)?, &ctx))?;
            let p = linear_cycle_poly(&spec, &ctx)?;
            Ok(Outcome::new(json!({ "spec": spec, "polynomial": PolynomialJson::from(&p) }), true))
        }
        Verb::Pair { dims, class, other } => {
            let ctx = context(dims)?;
            let p = build_class(class, &ctx)?;
            let q = build_class(&other.as_class(), &ctx)?;
            let r = pair_classes(&p, &q, &ctx)?;
            Ok(Outcome::new(json!(PairingResultJson::from(&r)), true))
        }
        Verb::Certify { dims, class, all_pairings } => {
            let ctx = context(dims)?;
            let p = build_class(class, &ctx)?;
            let cert = rationality_certificate(&p, &ctx, *all_pairings)?;
            Ok(Outcome { value: certificate_json(&cert), csv: Some(certificate_csv(&cert)), ok: true })
        }
        Verb::Recover { dims, class } => {
            let ctx = context(dims)?;
            let p = build_class(class, &ctx)?;
            let spec = recover_structure(&p, &ctx)?;
            Ok(Outcome::new(json!(ProductClassJson::from(&spec)), true))
        }
        Verb::CrossRatio { d, a } => {
            let ctx = input(FermatContext::new(2, *d))?;
            let m = if ctx.conductor() % 4 == 0 { ctx.conductor() } else { 2 * ctx.conductor() };
            let a = input(parse_cyclotomic(a, m, ctx.conductor()))?;
            let r = rationality_scan(&a, *d)?;
            let v = json!({
                "d": r.d,
                "a": CyclotomicJson::from(&a),
                "direct": r.direct,
                "scan": r.scan,
                "counterexample": r.counterexample.map(|(x, y)| [x, y]),
                "skipped": r.skipped,
                "cross_ratio": CyclotomicJson::from(&r.cross_ratio),
                "cross_ratio_rational": r.cross_ratio_rational,
                "implication_holds": r.implication_holds,
            });
            Ok(Outcome::new(v, r.implication_holds))
        }
        Verb::Plane { dims, a, forms } => {
            let ctx = context(dims)?;
            let forms = match (a, forms) {
                (Some(a), None) => {
                    let coeffs = literals(a, &ctx)?;
                    let nv = ctx.nvars();
                    coeffs
                        .iter()
                        .enumerate()
                        .map(|(i, c)| &Polynomial::var(ctx.field(), nv, 2 * i) - &Polynomial::var(ctx.field(), nv, 2 * i + 1).scale(c))
                        .collect::<Vec<_>>()
                }
                (None, Some(src)) => {
                    let text = read_inline_or_file(src)?;
                    let js: Vec<PolynomialJson> = serde_json::from_str(&text).map_err(|e| Failure::Usage(json_error(e).to_string()))?;
                    js.iter().map(|j| input(j.decode())).collect::<Res<Vec<_>>>()?
                }
                _ => return usage("give exactly one of --a, --forms"),
            };
            let r = plane_in_fermat(&forms, &ctx)?;
            let mut v = json!({ "contained": r.contained });
            let mut ok = true;
            if let Some(dec) = &r.decomposition {
                let socle_ok = dec.socle_degree == Some(ctx.sigma());
                ok = socle_ok;
                v["q"] = json!(dec.q.iter().map(PolynomialJson::from).collect::<Vec<_>>());
                v["hilbert"] = json!(dec.hilbert);
                v["socle_degree"] = json!(dec.socle_degree);
                v["socle_ok"] = json!(socle_ok);
            }
            Ok(Outcome::new(v, ok))
        }
        Verb::SplitIntersection { dims, ci_type } => {
            let ctx = context(dims)?;
            let (f, g) = input(split_factors_of_type(ci_type, &ctx))?;
            let ci = split_intersection(&f, &g, &ctx)?;
            let member = ci.square_witness.is_some();
            let v = json!({
                "type": ci_type,
                "generators": ci.generators.iter().map(PolynomialJson::from).collect::<Vec<_>>(),
                "hilbert": ci.hilbert,
                "degree_d_dim": ci.hilbert.get(ctx.d() as usize),
                "socle_degree": ci.socle_degree,
                "expected_socle": ci.expected_socle,
                "socle_ok": ci.socle_ok(),
                "square_member": member,
                "square_witness_terms": ci.square_witness.as_ref().map(Vec::len),
            });
            Ok(Outcome::new(v, ci.socle_ok() && member))
        }
        Verb::Special { dims, a, all_pairings } => {
            let ctx = context(dims)?;
            let a = literals(a, &ctx)?;
            let fam = match special_family(dims.d, &a, &ctx, *all_pairings) {
                Err(e @ (Error::NotInFamily(..) | Error::InvalidArgument(_))) => return usage(e),
                r => r?,
            };
            let ok = fam.certificate.all_rational() && fam.j1_dim == ctx.pairs();
            let mut v = certificate_json(&fam.certificate);
            v["spec"] = json!(ProductClassJson::from(&fam.spec));
            v["normalizer"] = json!(fam.normalizer);
            v["j1_dim"] = json!(fam.j1_dim);
            v["polynomial"] = json!(PolynomialJson::from(&fam.class));
            Ok(Outcome { value: v, csv: Some(certificate_csv(&fam.certificate)), ok })
        }
        Verb::ScanBounds { dims, budget } => {
            let r = input(scan_divisor_minima_with_budget(dims.n, dims.d, budget.unwrap_or(DEFAULT_SCAN_BUDGET)))?;
            Ok(Outcome::new(json!(DivisorScanJson::from(&r)), r.all_passed()))
        }
        Verb::Groebner { dims, class, system, degree, order: ord, product_criterion } => {
            let ctx = context(dims)?;
            let opts = BuchbergerOptions { product_criterion: *product_criterion };
            match system {
                System::Linear => {
                    let cap = degree.unwrap_or((ctx.sigma() + 1).max(2 * (ctx.d() as usize - 1)));
                    let ord = order(ord, &ctx, MonomialOrder::evens_first(ctx.nvars()))?;
                    let coeffs = match (&class.a, &class.alpha) {
                        (Some(a), None) => literals(a, &ctx)?,
                        (None, Some(al)) => al.iter().map(|&k| ctx.zeta_pow(k)).collect(),
                        _ => return usage("the linear system needs exactly one of --a, --alpha"),
                    };
                    if coeffs.len() != ctx.pairs() {
                        return usage(format!("expected {} coefficients", ctx.pairs()));
                    }
                    let nv = ctx.nvars();
                    let x = |i| Polynomial::var(ctx.field(), nv, i);
                    let mut gens: Vec<Polynomial> = coeffs.iter().enumerate().map(|(i, c)| &x(2 * i) - &x(2 * i + 1).scale(c)).collect();
                    gens.extend((0..ctx.pairs()).map(|i| x(2 * i + 1).pow(ctx.d() - 1)));
                    let gb = input(buchberger(&gens, &ord, cap, opts))?;
                    let verified = is_groebner_basis(&gens, &ord, cap)?;
                    let leads: Vec<Monomial> = gb.basis.iter().map(|g| g.leading_monomial(&ord).unwrap().clone()).collect();
                    let v = json!({
                        "generators": gens.len(),
                        "added": gb.added,
                        "status": status_json(&gb.status),
                        "is_groebner": verified,
                        "leading_monomials": monomial_strings(&leads),
                    });
                    Ok(Outcome::new(v, verified && gb.status == GroebnerStatus::Complete))
                }
                System::Colon => {
                    let cap = degree.unwrap_or(ctx.sigma() + 1);
                    let ord = order(ord, &ctx, MonomialOrder::lex(ctx.nvars()))?;
                    let p = build_class(class, &ctx)?;
                    let gens = colon_generators(&p, &ctx, &ord)?;
                    let gb = input(buchberger(&gens, &ord, cap, opts))?;
                    let leads: Vec<Monomial> = gb.basis.iter().map(|g| g.leading_monomial(&ord).unwrap().clone()).collect();
                    let top = cap.min(ctx.sigma() + 1);
                    let from_lt = quotient_dims_from_leading(&leads, ctx.nvars(), top);
                    let mut kernel = hilbert_profile(&p, &ctx)?.dims;
                    kernel.resize(top + 1, 0);
                    let agree = from_lt == kernel;
                    let v = json!({
                        "generators": gens.len(),
                        "added": gb.added,
                        "status": status_json(&gb.status),
                        "leading_monomials": monomial_strings(&leads),
                        "hilbert_from_leading": from_lt,
                        "hilbert_kernel": kernel,
                        "agree": agree,
                    });
                    Ok(Outcome::new(v, agree))
                }
            }
        }
    }
}

fn status_json(s: &GroebnerStatus) -> Value {
    match s {
        GroebnerStatus::Complete => json!("complete"),
        GroebnerStatus::Truncated { skipped_pairs } => json!({ "truncated": skipped_pairs }),
    }
}

fn certificate_json(cert: &Certificate) -> Value {
    let count = |s: Rationality| cert.entries.iter().filter(|e| e.status == s).count();
    json!({
        "convention": "c_delta = 1",
        "total": cert.entries.len(),
        "rational": count(Rationality::Rational),
        "zero": count(Rationality::Zero),
        "irrational": count(Rationality::Irrational),
        "all_rational": cert.all_rational(),
        "counterexample": cert.counterexample.map(|i| &cert.entries[i].spec),
        "entries": cert.entries.iter().map(|e| json!({
            "alpha": e.spec.alpha,
            "pairing": e.spec.pairing,
            "c": CyclotomicJson::from(&e.c),
            "status": e.status,
        })).collect::<Vec<_>>(),
    })
}
