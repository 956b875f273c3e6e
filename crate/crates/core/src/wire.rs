//! JSON encodings of exact values. Rationals travel as "p/q" strings, never
//! floats, so every value round-trips bit-exactly.

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundReport, DivisorScanReport};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, CyclotomicField, CyclotomicNumber};
use crate::fermat_hodge::{Certificate, Pairing, PairingResult, ProductClassSpec};
use crate::idealcalc::{DegreeSlice, HilbertProfile};
use crate::multipoly::{Monomial, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicJson {
    pub m: u32,
    pub coords: Vec<String>,
}

impl From<&CyclotomicNumber> for CyclotomicJson {
    fn from(z: &CyclotomicNumber) -> Self {
        CyclotomicJson { m: z.conductor(), coords: z.coords().iter().map(format_rational).collect() }
    }
}

impl CyclotomicJson {
    pub fn decode(&self) -> Result<CyclotomicNumber> {
        let coords = self.coords.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        CyclotomicNumber::from_coords(self.m, &coords)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub vars: usize,
    pub m: u32,
    pub terms: Vec<TermJson>,
}

impl From<&Polynomial> for PolynomialJson {
    /// Terms in decreasing default (lex) order.
    fn from(p: &Polynomial) -> Self {
        PolynomialJson {
            vars: p.nvars(),
            m: p.conductor(),
            terms: p
                .terms()
                .rev()
                .map(|(mono, c)| TermJson { exp: mono.exps().to_vec(), coeff: c.coords().iter().map(format_rational).collect() })
                .collect(),
        }
    }
}

impl PolynomialJson {
    pub fn decode(&self) -> Result<Polynomial> {
        let field = CyclotomicField::get(self.m)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.exp.len() != self.vars {
                return Err(Error::VariableMismatch(t.exp.len(), self.vars));
            }
            let coeff = CyclotomicJson { m: self.m, coords: t.coeff.clone() }.decode()?;
            terms.push((Monomial::new(t.exp.clone()), coeff));
        }
        Ok(Polynomial::from_terms(&field, self.vars, terms))
    }
}

pub fn polynomial_to_json(p: &Polynomial) -> String {
    serde_json::to_string(&PolynomialJson::from(p)).expect("polynomial JSON")
}

pub fn polynomial_from_json(s: &str) -> Result<Polynomial> {
    let j: PolynomialJson = serde_json::from_str(s).map_err(json_error)?;
    j.decode()
}

pub fn cyclotomic_to_json(z: &CyclotomicNumber) -> String {
    serde_json::to_string(&CyclotomicJson::from(z)).expect("cyclotomic JSON")
}

pub fn cyclotomic_from_json(s: &str) -> Result<CyclotomicNumber> {
    let j: CyclotomicJson = serde_json::from_str(s).map_err(json_error)?;
    j.decode()
}

/// Parse errors carry the byte column of the offending JSON token.
pub fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { pos: e.column(), msg: e.to_string() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceJson {
    pub k: usize,
    pub dim: usize,
    pub basis: Vec<PolynomialJson>,
}

impl From<&DegreeSlice> for SliceJson {
    fn from(s: &DegreeSlice) -> Self {
        SliceJson { k: s.k, dim: s.dim(), basis: s.basis.iter().map(PolynomialJson::from).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub sigma: usize,
    pub dims: Vec<usize>,
}

impl From<&HilbertProfile> for ProfileJson {
    fn from(h: &HilbertProfile) -> Self {
        ProfileJson { sigma: h.sigma, dims: h.dims.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingResultJson {
    pub c: CyclotomicJson,
    pub intersection: CyclotomicJson,
    pub c_rational: Option<String>,
    pub intersection_rational: Option<String>,
    pub residual: PolynomialJson,
}

impl From<&PairingResult> for PairingResultJson {
    fn from(r: &PairingResult) -> Self {
        PairingResultJson {
            c: (&r.c).into(),
            intersection: (&r.intersection).into(),
            c_rational: r.c_rational.as_ref().map(format_rational),
            intersection_rational: r.intersection_rational.as_ref().map(format_rational),
            residual: (&r.residual).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductClassJson {
    pub a: Vec<CyclotomicJson>,
    pub c_lambda: CyclotomicJson,
    pub pairing: Pairing,
}

impl From<&ProductClassSpec> for ProductClassJson {
    fn from(s: &ProductClassSpec) -> Self {
        ProductClassJson { a: s.a.iter().map(Into::into).collect(), c_lambda: (&s.c_lambda).into(), pairing: s.pairing.clone() }
    }
}

impl ProductClassJson {
    pub fn decode(&self) -> Result<ProductClassSpec> {
        Ok(ProductClassSpec {
            a: self.a.iter().map(CyclotomicJson::decode).collect::<Result<_>>()?,
            c_lambda: self.c_lambda.decode()?,
            pairing: self.pairing.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReportJson {
    pub value: i64,
    pub bound_linear: i64,
    pub bound_second: i64,
    pub classification: crate::bounds::BoundClass,
    pub j1_dim: Option<usize>,
    pub j1_check: Option<bool>,
    pub j1: Option<Vec<PolynomialJson>>,
}

impl From<&BoundReport> for BoundReportJson {
    fn from(r: &BoundReport) -> Self {
        BoundReportJson {
            value: r.value,
            bound_linear: r.bound_linear,
            bound_second: r.bound_second,
            classification: r.classification,
            j1_dim: r.j1.as_ref().map(Vec::len),
            j1_check: r.j1_check,
            j1: r.j1.as_ref().map(|b| b.iter().map(PolynomialJson::from).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorScanJson {
    pub n: usize,
    pub d: u32,
    pub sigma: usize,
    pub min: u64,
    pub min_attainers_count: u64,
    pub second_min: Option<u64>,
    pub second_attainers_count: u64,
    pub assertions: Vec<bool>,
    pub assertion_names: Vec<String>,
    pub assertion_details: Vec<String>,
    pub enumerated: u64,
    pub partial: bool,
    pub linear_orbit_size: u64,
    pub second_orbit_size: u64,
    pub extra_min_attainers: Vec<Vec<u32>>,
    pub extra_second_attainers: Vec<Vec<u32>>,
}

impl From<&DivisorScanReport> for DivisorScanJson {
    fn from(r: &DivisorScanReport) -> Self {
        DivisorScanJson {
            n: r.n,
            d: r.d,
            sigma: r.sigma,
            min: r.min,
            min_attainers_count: r.min_attainers_count,
            second_min: r.second_min,
            second_attainers_count: r.second_attainers_count,
            assertions: r.assertions.iter().map(|a| a.passed).collect(),
            assertion_names: r.assertions.iter().map(|a| a.name.clone()).collect(),
            assertion_details: r.assertions.iter().map(|a| a.detail.clone()).collect(),
            enumerated: r.enumerated,
            partial: r.partial,
            linear_orbit_size: r.linear_orbit_size,
            second_orbit_size: r.second_orbit_size,
            extra_min_attainers: r.extra_min_attainers.clone(),
            extra_second_attainers: r.extra_second_attainers.clone(),
        }
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

/// Certificate rows: alpha and pairing as ';'-joined integers, c in display
/// form, status.
pub fn certificate_csv(cert: &Certificate) -> String {
    let mut out = String::from("alpha,pairing,c,status\n");
    for e in &cert.entries {
        let status = serde_json::to_value(e.status).unwrap();
        out.push_str(&format!("{},{},{},{}\n", join(&e.spec.alpha), join(&e.spec.pairing.0), e.c, status.as_str().unwrap()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;
    use crate::fermat_hodge::{linear_cycle_poly, LinearCycleSpec};
    use crate::idealcalc::FermatContext;

    #[test]
    fn cyclotomic_round_trip() {
        let z = &CyclotomicNumber::root_of_unity(6, 1).unwrap() - &CyclotomicNumber::one(6).unwrap();
        let s = cyclotomic_to_json(&z);
        assert_eq!(s, r#"{"m":6,"coords":["-1","1"]}"#);
        assert_eq!(cyclotomic_from_json(&s).unwrap(), z);
        assert_eq!(format_rational(&parse_rational("22/7").unwrap()), "22/7");
        assert_eq!(parse_rational("22/7").unwrap(), rational(22, 7));
    }

    #[test]
    fn polynomial_round_trip() {
        let ctx = FermatContext::new(2, 5).unwrap();
        let p = linear_cycle_poly(&LinearCycleSpec::new(vec![3, 7], &ctx).unwrap(), &ctx).unwrap();
        let s = polynomial_to_json(&p);
        let back = polynomial_from_json(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(polynomial_to_json(&back), s);
        let first: PolynomialJson = serde_json::from_str(&s).unwrap();
        assert_eq!(first.terms[0].exp, vec![3, 0, 3, 0]);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(polynomial_from_json("{\"vars\": 4"), Err(Error::Parse { .. })));
        assert!(cyclotomic_from_json(r#"{"m":6,"coords":["1"]}"#).is_err());
        assert!(cyclotomic_from_json(r#"{"m":6,"coords":["1/0","1"]}"#).is_err());
        let bad = r#"{"vars":2,"m":6,"terms":[{"exp":[1],"coeff":["1","0"]}]}"#;
        assert!(matches!(polynomial_from_json(bad), Err(Error::VariableMismatch(1, 2))));
    }
}
