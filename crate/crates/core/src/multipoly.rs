//! Sparse multivariate polynomials over Q(ζ_m), lex orders with a variable
//! permutation, and multivariate division.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::{CyclotomicField, CyclotomicNumber};

/// Exponent vector of x_0, …, x_{N-1}. The derived `Ord` is lex with
/// x_0 > x_1 > …, the default order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Relabels variables: exponent of x_i moves to x_{perm[i]}.
    pub fn relabel(&self, perm: &[usize]) -> Monomial {
        let mut e = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            e[perm[i]] = x;
        }
        Monomial(e)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if any {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
            any = true;
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Every monomial of total degree `k` in `nvars` variables, ascending in the
/// default order.
pub fn monomials_of_degree(nvars: usize, k: usize) -> Vec<Monomial> {
    monomials_bounded(nvars, k, u32::MAX)
}

/// Monomials of degree `k` with every exponent at most `bound`, ascending.
pub fn monomials_bounded(nvars: usize, k: usize, bound: u32) -> Vec<Monomial> {
    fn rec(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, i: usize, left: usize, bound: u32) {
        let n = cur.len();
        if i == n - 1 {
            if left as u64 <= bound as u64 {
                cur[i] = left as u32;
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let hi = (left as u64).min(bound as u64) as u32;
        for e in 0..=hi {
            cur[i] = e;
            rec(out, cur, i + 1, left - e as usize, bound);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if k == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(&mut out, &mut vec![0; nvars], 0, k, bound);
    out
}

/// Lex order after permuting variables: x_{perm[0]} > x_{perm[1]} > ….
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder { perm: (0..nvars).collect() }
    }

    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidOrder(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(MonomialOrder { perm })
    }

    /// x_0 > x_2 > … > x_n > x_1 > x_3 > … > x_{n+1} on n+2 variables.
    pub fn evens_first(nvars: usize) -> Self {
        MonomialOrder { perm: (0..nvars).step_by(2).chain((1..nvars).step_by(2)).collect() }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &i in &self.perm {
            match a.0[i].cmp(&b.0[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Sorts in place, largest monomial first.
    pub fn sort_desc(&self, v: &mut [Monomial]) {
        v.sort_by(|a, b| self.cmp(b, a));
    }
}

#[derive(Clone)]
pub struct Polynomial {
    field: Arc<CyclotomicField>,
    nvars: usize,
    terms: BTreeMap<Monomial, CyclotomicNumber>,
}

impl Polynomial {
    pub fn zero(field: &Arc<CyclotomicField>, nvars: usize) -> Self {
        Polynomial { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Arc<CyclotomicField>, nvars: usize, c: CyclotomicNumber) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn term(field: &Arc<CyclotomicField>, mono: Monomial, c: CyclotomicNumber) -> Self {
        let mut p = Self::zero(field, mono.nvars());
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn monomial(field: &Arc<CyclotomicField>, mono: Monomial) -> Self {
        Self::term(field, mono, CyclotomicNumber::from_int_in(field, 1))
    }

    pub fn var(field: &Arc<CyclotomicField>, nvars: usize, i: usize) -> Self {
        Self::monomial(field, Monomial::var(nvars, i))
    }

    /// Σ coeffs[i] x_i.
    pub fn linear(field: &Arc<CyclotomicField>, coeffs: &[CyclotomicNumber]) -> Self {
        let n = coeffs.len();
        Self::from_terms(field, n, coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())))
    }

    /// Sums repeated monomials and drops zero coefficients.
    pub fn from_terms(field: &Arc<CyclotomicField>, nvars: usize, terms: impl IntoIterator<Item = (Monomial, CyclotomicNumber)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &CyclotomicNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms ascending in the default order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CyclotomicNumber)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&CyclotomicNumber> {
        self.terms.get(m)
    }

    /// Terms sorted largest-first under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(&Monomial, &CyclotomicNumber)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    /// The common degree of all terms, or `None` if inhomogeneous or zero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous_of(&self, deg: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == deg)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        if self.conductor() != other.conductor() {
            return Err(Error::ConductorMismatch(self.conductor(), other.conductor()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Polynomial::zero(&self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.field, self.nvars);
        }
        Polynomial { field: self.field.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// c · x^shift · self.
    pub fn mul_term(&self, shift: &Monomial, c: &CyclotomicNumber) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.field, self.nvars);
        }
        Polynomial { field: self.field.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.mul(shift), a * c)).collect() }
    }

    /// self -= c · x^shift · g
    fn sub_term_multiple(&mut self, shift: &Monomial, c: &CyclotomicNumber, g: &Polynomial) {
        for (m, a) in &g.terms {
            self.add_term(m.mul(shift), &-(a * c));
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.field, self.nvars, CyclotomicNumber::from_int_in(&self.field, 1));
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Keeps the terms for which `keep` holds.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Replaces x_var by `replacement`.
    pub fn substitute(&self, var: usize, replacement: &Polynomial) -> Result<Polynomial> {
        self.check(replacement)?;
        let mut powers = vec![Polynomial::constant(&self.field, self.nvars, CyclotomicNumber::from_int_in(&self.field, 1))];
        let mut out = Polynomial::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * replacement;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[var] = 0;
            for (pm, pc) in &powers[e].terms {
                out.add_term(pm.mul(&rest), &(pc * c));
            }
        }
        Ok(out)
    }

    pub fn relabel(&self, perm: &[usize]) -> Polynomial {
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.relabel(perm), c.clone())).collect(),
        }
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, CyclotomicNumber)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0)).map(|(m, c)| (m.clone(), c.clone())).ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Option<&Monomial> {
        self.terms.keys().max_by(|a, b| ord.cmp(a, b))
    }

    /// Scales so that the leading coefficient under `ord` is 1.
    pub fn monic(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            Ok((_, c)) => self.scale(&c.inv().expect("nonzero")),
            Err(_) => self.clone(),
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.conductor() == other.conductor() && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { field: self.field.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

/// Σ_{p+q=d-2} x_i^p (a x_j)^q, the quotient (x_i^{d-1} - (a x_j)^{d-1}) / (x_i - a x_j).
pub fn geometric_factor(
    field: &Arc<CyclotomicField>,
    nvars: usize,
    i: usize,
    j: usize,
    a: &CyclotomicNumber,
    d: u32,
) -> Result<Polynomial> {
    if i == j {
        return Err(Error::InvalidArgument("geometric factor needs two distinct variables".into()));
    }
    if i >= nvars || j >= nvars {
        return Err(Error::InvalidArgument(format!("variable index out of range for {nvars} variables")));
    }
    if d < 2 {
        return Err(Error::InvalidArgument(format!("degree {d} < 2")));
    }
    let top = d - 2;
    let mut apow = CyclotomicNumber::from_int_in(field, 1);
    let mut terms = Vec::with_capacity(top as usize + 1);
    for q in 0..=top {
        let mut e = vec![0; nvars];
        e[i] = top - q;
        e[j] = q;
        terms.push((Monomial(e), apow.clone()));
        apow = &apow * a;
    }
    Ok(Polynomial::from_terms(field, nvars, terms))
}

#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Multivariate division; the first divisor (in list order) whose leading
/// monomial divides the current leading monomial is used.
pub fn divide(f: &Polynomial, divisors: &[Polynomial], ord: &MonomialOrder) -> Result<Division> {
    let mut leads = Vec::with_capacity(divisors.len());
    for g in divisors {
        f.check(g)?;
        let (m, c) = g.leading_term(ord)?;
        leads.push((m, c.inv()?));
    }
    let mut p = f.clone();
    let mut quotients = vec![Polynomial::zero(&f.field, f.nvars); divisors.len()];
    let mut remainder = Polynomial::zero(&f.field, f.nvars);
    while let Ok((m, c)) = p.leading_term(ord) {
        let hit = leads.iter().position(|(lm, _)| lm.divides(&m));
        match hit {
            Some(i) => {
                let shift = m.div(&leads[i].0).unwrap();
                let coeff = &c * &leads[i].1;
                quotients[i].add_term(shift.clone(), &coeff);
                p.sub_term_multiple(&shift, &coeff, &divisors[i]);
            }
            None => {
                p.terms.remove(&m);
                remainder.add_term(m, &c);
            }
        }
    }
    Ok(Division { quotients, remainder })
}
