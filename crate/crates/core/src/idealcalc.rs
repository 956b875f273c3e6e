//! Graded ideal calculus over the Fermat Jacobian ring.
//!
//! The Jacobian ideal of `F = x_0^d + … + x_{n+1}^d` is the monomial ideal
//! `⟨x_i^{d-1}⟩`, so reduction modulo it just drops monomials with an exponent
//! of at least `d - 1`. Colon ideals `(J^F : P)` are computed one degree at a
//! time as kernels of multiplication-by-`P` maps into the reduced monomials.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::bounds::binomial;
use crate::error::{Error, Result};
use crate::exactnum::{CyclotomicField, CyclotomicNumber};
use crate::linalg::{solve_in_span, Matrix};
use crate::multipoly::{divide, monomials_bounded, monomials_of_degree, Monomial, MonomialOrder, Polynomial};

/// Fermat data: even dimension `n`, degree `d`, socle `σ = (d-2)(n/2+1)` and
/// the working conductor `m = 2d`.
#[derive(Clone, Debug)]
pub struct FermatContext {
    n: usize,
    d: u32,
    sigma: usize,
    field: Arc<CyclotomicField>,
}

impl FermatContext {
    pub fn new(n: usize, d: u32) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::InvalidArgument(format!("n = {n} must be even and positive")));
        }
        if d < 3 {
            return Err(Error::InvalidArgument(format!("d = {d} must be at least 3")));
        }
        let sigma = (d as usize - 2) * (n / 2 + 1);
        Ok(FermatContext { n, d, sigma, field: CyclotomicField::get(2 * d)? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn conductor(&self) -> u32 {
        2 * self.d
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.n + 2
    }

    /// Number of coordinate pairs, n/2 + 1.
    pub fn pairs(&self) -> usize {
        self.n / 2 + 1
    }

    /// ζ_{2d}^k.
    pub fn zeta_pow(&self, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow_in(&self.field, k)
    }

    pub fn scalar(&self, v: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_int_in(&self.field, v)
    }

    pub fn fermat(&self) -> Polynomial {
        let n = self.nvars();
        Polynomial::from_terms(
            &self.field,
            n,
            (0..n).map(|i| {
                let mut e = vec![0; n];
                e[i] = self.d;
                (Monomial::new(e), self.scalar(1))
            }),
        )
    }

    pub fn jacobian_generators(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| Polynomial::var(&self.field, self.nvars(), i).pow(self.d - 1)).collect()
    }

    /// (x_0 ⋯ x_{n+1})^{d-2}, the only reduced monomial of degree 2σ.
    pub fn socle_monomial(&self) -> Monomial {
        Monomial::new(vec![self.d - 2; self.nvars()])
    }

    pub fn is_reduced(&self, m: &Monomial) -> bool {
        m.exps().iter().all(|&e| e + 1 < self.d)
    }

    /// dim of the full degree-k space, C(n+1+k, k).
    pub fn full_dim(&self, k: usize) -> usize {
        binomial(self.nvars() - 1 + k, k) as usize
    }

    pub(crate) fn check_poly(&self, p: &Polynomial) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::VariableMismatch(p.nvars(), self.nvars()));
        }
        if p.conductor() != self.conductor() {
            return Err(Error::ConductorMismatch(p.conductor(), self.conductor()));
        }
        Ok(())
    }

    pub(crate) fn check_class(&self, p: &Polynomial) -> Result<()> {
        self.check_poly(p)?;
        if !p.is_homogeneous_of(self.sigma) {
            return Err(Error::NotHomogeneous(self.sigma));
        }
        Ok(())
    }
}

/// Normal form in R^F: drops every monomial with an exponent ≥ d-1.
pub fn reduce_mod_jacobian(p: &Polynomial, ctx: &FermatContext) -> Polynomial {
    p.filter_terms(|m| ctx.is_reduced(m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SliceKind {
    /// Degree-k piece of an ideal, as an echelon basis.
    Ideal,
    /// Degree-k piece of the quotient, as a basis of standard monomials.
    Quotient,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeSlice {
    pub k: usize,
    pub kind: SliceKind,
    pub order: MonomialOrder,
    pub basis: Vec<Polynomial>,
}

impl DegreeSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().filter_map(|p| p.leading_monomial(&self.order).cloned()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertProfile {
    pub sigma: usize,
    pub dims: Vec<usize>,
}

impl HilbertProfile {
    pub fn is_gorenstein_symmetric(&self) -> bool {
        let s = self.sigma;
        self.dims.len() == s + 1 && self.dims[0] == 1 && self.dims[s] == 1 && (0..=s).all(|k| self.dims[k] == self.dims[s - k])
    }
}

/// Sparse columns of the multiplication-by-P map, one per source monomial,
/// keyed by reduced target monomial.
fn product_columns(p_red: &Polynomial, sources: &[Monomial], ctx: &FermatContext) -> Vec<Vec<(Monomial, CyclotomicNumber)>> {
    let terms: Vec<(&Monomial, &CyclotomicNumber)> = p_red.terms().collect();
    sources
        .par_iter()
        .map(|src| {
            terms
                .iter()
                .filter_map(|(m, c)| {
                    let t = src.mul(m);
                    ctx.is_reduced(&t).then(|| (t, (*c).clone()))
                })
                .collect()
        })
        .collect()
}

fn columns_to_matrix(field: &Arc<CyclotomicField>, cols: &[Vec<(Monomial, CyclotomicNumber)>]) -> Matrix {
    let targets: BTreeSet<&Monomial> = cols.iter().flatten().map(|(m, _)| m).collect();
    let index: HashMap<&Monomial, usize> = targets.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = Matrix::zeros(field, index.len(), cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (m, c) in col {
            mat.set(index[m], j, c.clone());
        }
    }
    mat
}

struct KernelData {
    sources: Vec<Monomial>,
    rref: Matrix,
    pivots: Vec<usize>,
}

/// Eliminates with columns sorted ascending in `ord`. Pivots then sit on the
/// smallest possible monomials, so each free column yields a kernel vector
/// whose leading monomial is that column and whose other entries lie on pivot
/// columns only: a reduced echelon basis without a second pass.
fn kernel_data(p_red: &Polynomial, mut sources: Vec<Monomial>, ctx: &FermatContext, ord: &MonomialOrder) -> KernelData {
    sources.sort_by(|a, b| ord.cmp(a, b));
    sources.dedup();
    let cols = product_columns(p_red, &sources, ctx);
    let mut rref = columns_to_matrix(ctx.field(), &cols);
    let pivots = rref.rref();
    KernelData { sources, rref, pivots }
}

impl KernelData {
    fn kernel_basis(&self, ctx: &FermatContext, ord: &MonomialOrder) -> Vec<Polynomial> {
        let nv = ctx.nvars();
        let is_pivot: BTreeSet<usize> = self.pivots.iter().copied().collect();
        let mut basis: Vec<Polynomial> = (0..self.sources.len())
            .filter(|j| !is_pivot.contains(j))
            .map(|f| {
                let mut terms = vec![(self.sources[f].clone(), ctx.scalar(1))];
                for (r, &pc) in self.pivots.iter().enumerate() {
                    let v = self.rref.get(r, f);
                    if !v.is_zero() {
                        terms.push((self.sources[pc].clone(), -v));
                    }
                }
                Polynomial::from_terms(ctx.field(), nv, terms)
            })
            .collect();
        basis.reverse();
        debug_assert!(basis.windows(2).all(|w| ord.cmp(w[0].leading_monomial(ord).unwrap(), w[1].leading_monomial(ord).unwrap()).is_gt()));
        basis
    }

    fn standard_monomials(&self) -> Vec<Monomial> {
        self.pivots.iter().map(|&c| self.sources[c].clone()).collect()
    }
}

fn reduced_class(p: &Polynomial, ctx: &FermatContext) -> Result<Polynomial> {
    ctx.check_class(p)?;
    let r = reduce_mod_jacobian(p, ctx);
    if r.is_zero() {
        return Err(Error::ZeroPrimitivePart);
    }
    Ok(r)
}

fn full_space_slice(ctx: &FermatContext, k: usize, ord: &MonomialOrder) -> DegreeSlice {
    let mut monos = monomials_of_degree(ctx.nvars(), k);
    ord.sort_desc(&mut monos);
    DegreeSlice {
        k,
        kind: SliceKind::Ideal,
        order: ord.clone(),
        basis: monos.into_iter().map(|m| Polynomial::monomial(ctx.field(), m)).collect(),
    }
}

/// Degree-k piece of (J^F : P) under the default lex order.
pub fn colon_slice(p: &Polynomial, k: usize, ctx: &FermatContext) -> Result<DegreeSlice> {
    colon_slice_with_order(p, k, ctx, &MonomialOrder::lex(ctx.nvars()))
}

pub fn colon_slice_with_order(p: &Polynomial, k: usize, ctx: &FermatContext, ord: &MonomialOrder) -> Result<DegreeSlice> {
    colon_slice_enumerated(p, k, ctx, ord, monomials_of_degree(ctx.nvars(), k))
}

/// Same as [`colon_slice_with_order`] but with the caller's enumeration of the
/// degree-k monomials; the result does not depend on that enumeration.
pub fn colon_slice_enumerated(
    p: &Polynomial,
    k: usize,
    ctx: &FermatContext,
    ord: &MonomialOrder,
    sources: Vec<Monomial>,
) -> Result<DegreeSlice> {
    let p_red = reduced_class(p, ctx)?;
    if k > ctx.sigma() {
        return Ok(full_space_slice(ctx, k, ord));
    }
    if sources.iter().any(|m| m.nvars() != ctx.nvars() || m.degree() != k) {
        return Err(Error::InvalidArgument(format!("source monomials must have degree {k}")));
    }
    let data = kernel_data(&p_red, sources, ctx, ord);
    Ok(DegreeSlice { k, kind: SliceKind::Ideal, order: ord.clone(), basis: data.kernel_basis(ctx, ord) })
}

/// Monomials of degree k outside ⟨LT(J^F : P)⟩: a basis of R^{F,P}_k.
pub fn standard_monomials(p: &Polynomial, k: usize, ctx: &FermatContext, ord: &MonomialOrder) -> Result<Vec<Monomial>> {
    let p_red = reduced_class(p, ctx)?;
    if k > ctx.sigma() {
        return Ok(Vec::new());
    }
    Ok(kernel_data(&p_red, monomials_of_degree(ctx.nvars(), k), ctx, ord).standard_monomials())
}

/// The quotient piece R_k as a slice of standard monomials.
pub fn quotient_slice(p: &Polynomial, k: usize, ctx: &FermatContext, ord: &MonomialOrder) -> Result<DegreeSlice> {
    let mut monos = standard_monomials(p, k, ctx, ord)?;
    ord.sort_desc(&mut monos);
    Ok(DegreeSlice {
        k,
        kind: SliceKind::Quotient,
        order: ord.clone(),
        basis: monos.into_iter().map(|m| Polynomial::monomial(ctx.field(), m)).collect(),
    })
}

/// dim R_k of the quotient by (J^F : P), for k = 0..σ.
pub fn hilbert_profile(p: &Polynomial, ctx: &FermatContext) -> Result<HilbertProfile> {
    let p_red = reduced_class(p, ctx)?;
    let dims = (0..=ctx.sigma())
        .into_par_iter()
        .map(|k| {
            let sources = monomials_of_degree(ctx.nvars(), k);
            columns_to_matrix(ctx.field(), &product_columns(&p_red, &sources, ctx)).rank()
        })
        .collect();
    Ok(HilbertProfile { sigma: ctx.sigma(), dims })
}

/// Rank of R_i × R_{σ-i} → R_σ, on standard-monomial bases.
pub fn pairing_rank(p: &Polynomial, i: usize, ctx: &FermatContext) -> Result<usize> {
    let s = ctx.sigma();
    if i > s {
        return Err(Error::InvalidArgument(format!("degree {i} exceeds socle {s}")));
    }
    let p_red = reduced_class(p, ctx)?;
    let ord = MonomialOrder::lex(ctx.nvars());
    let left = standard_monomials(&p_red, i, ctx, &ord)?;
    let right = standard_monomials(&p_red, s - i, ctx, &ord)?;
    let socle = ctx.socle_monomial();
    let coeff_of = |m: &Monomial| -> CyclotomicNumber {
        match socle.div(m) {
            Some(rest) => p_red.coeff(&rest).cloned().unwrap_or_else(|| ctx.scalar(0)),
            None => ctx.scalar(0),
        }
    };
    let rows: Vec<Vec<CyclotomicNumber>> = left.iter().map(|a| right.iter().map(|b| coeff_of(&a.mul(b))).collect()).collect();
    Ok(Matrix::from_rows(ctx.field(), right.len(), rows).rank())
}

/// Reduced row echelon form of a list of polynomials under `ord`; rows are
/// monic and sorted by decreasing leading monomial.
pub fn echelonize(polys: &[Polynomial], ord: &MonomialOrder) -> Vec<Polynomial> {
    let Some(first) = polys.first() else { return Vec::new() };
    let field = first.field().clone();
    let nv = first.nvars();
    let mut monos: Vec<Monomial> =
        polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect::<BTreeSet<_>>().into_iter().collect();
    ord.sort_desc(&mut monos);
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let zero = CyclotomicNumber::zero_in(&field);
    let rows = polys
        .iter()
        .map(|p| {
            let mut row = vec![zero.clone(); monos.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect();
    let mut mat = Matrix::from_rows(&field, monos.len(), rows);
    mat.rref();
    (0..mat.nrows())
        .map(|r| {
            Polynomial::from_terms(
                &field,
                nv,
                mat.row(r).iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (monos[j].clone(), c.clone())),
            )
        })
        .collect()
}

/// {LT(f)} over an echelon basis of the slice under `ord`.
pub fn lt_slice(slice: &DegreeSlice, ord: &MonomialOrder) -> BTreeSet<Monomial> {
    let basis = if slice.kind == SliceKind::Ideal && &slice.order == ord { slice.basis.clone() } else { echelonize(&slice.basis, ord) };
    basis.iter().filter_map(|p| p.leading_monomial(ord).cloned()).collect()
}

fn check_homogeneous(gens: &[Polynomial]) -> Result<Vec<(usize, &Polynomial)>> {
    gens.iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.homogeneous_degree().map(|e| (e, g)).ok_or(Error::NotHomogeneous(g.total_degree().unwrap_or(0))))
        .collect()
}

/// Degree-k piece of the ideal generated by homogeneous `gens`.
pub fn ideal_slice(field: &Arc<CyclotomicField>, nvars: usize, gens: &[Polynomial], k: usize, ord: &MonomialOrder) -> Result<DegreeSlice> {
    let gens = check_homogeneous(gens)?;
    let products: Vec<Polynomial> = gens
        .iter()
        .filter(|(e, _)| *e <= k)
        .flat_map(|(e, g)| {
            monomials_of_degree(nvars, k - e).into_iter().map(move |b| g.mul_term(&b, &CyclotomicNumber::from_int_in(g.field(), 1)))
        })
        .collect();
    let _ = field;
    Ok(DegreeSlice { k, kind: SliceKind::Ideal, order: ord.clone(), basis: echelonize(&products, ord) })
}

fn union_find_root(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Groups generators into blocks with pairwise disjoint variable supports.
/// Returns (variables, generator indices) per block; variables untouched by
/// any generator form singleton blocks.
fn variable_blocks(nvars: usize, gens: &[&Polynomial], active: &[bool]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut parent: Vec<usize> = (0..nvars).collect();
    let supports: Vec<Vec<usize>> =
        gens.iter().map(|g| (0..nvars).filter(|&v| g.terms().any(|(m, _)| m.exps()[v] > 0)).collect()).collect();
    for s in &supports {
        for w in s.windows(2) {
            let (a, b) = (union_find_root(&mut parent, w[0]), union_find_root(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for v in (0..nvars).filter(|&v| active[v]) {
        let r = union_find_root(&mut parent, v);
        blocks.entry(r).or_default().0.push(v);
    }
    for (i, s) in supports.iter().enumerate() {
        if let Some(&v) = s.first() {
            let r = union_find_root(&mut parent, v);
            blocks.entry(r).or_default().1.push(i);
        }
    }
    blocks.into_values().collect()
}

fn monomials_in_vars(nvars: usize, vars: &[usize], k: usize, bound: u32) -> Vec<Monomial> {
    monomials_bounded(vars.len(), k, bound)
        .into_iter()
        .map(|m| {
            let mut e = vec![0; nvars];
            for (i, &v) in vars.iter().enumerate() {
                e[v] = m.exps()[i];
            }
            Monomial::new(e)
        })
        .collect()
}

fn block_hilbert(field: &Arc<CyclotomicField>, nvars: usize, vars: &[usize], gens: &[&Polynomial], max_degree: usize) -> Vec<usize> {
    (0..=max_degree)
        .map(|k| {
            let total = binomial(vars.len() + k - 1, k) as usize;
            let products: Vec<Polynomial> = gens
                .iter()
                .filter_map(|g| g.homogeneous_degree().map(|e| (e, g)))
                .filter(|(e, _)| *e <= k)
                .flat_map(|(e, g)| {
                    monomials_in_vars(nvars, vars, k - e, u32::MAX)
                        .into_iter()
                        .map(move |b| g.mul_term(&b, &CyclotomicNumber::from_int_in(field, 1)))
                })
                .collect();
            total - echelonize(&products, &MonomialOrder::lex(nvars)).len()
        })
        .collect()
}

/// Hilbert function of S / ⟨gens⟩ in degrees 0..=max_degree.
///
/// Linear generators are eliminated by substitution first, then the remaining
/// generators are split into blocks of disjoint variables; the Hilbert
/// function is the convolution of the block functions.
pub fn ideal_hilbert_function(gens: &[Polynomial], max_degree: usize) -> Result<Vec<usize>> {
    let hom = check_homogeneous(gens)?;
    let Some((_, first)) = hom.first() else { return Err(Error::InvalidArgument("empty generator list".into())) };
    let field = first.field().clone();
    let nv = first.nvars();
    if hom.iter().any(|(e, _)| *e == 0) {
        return Ok(vec![0; max_degree + 1]);
    }
    let ord = MonomialOrder::lex(nv);
    let linear: Vec<Polynomial> = hom.iter().filter(|(e, _)| *e == 1).map(|(_, g)| (*g).clone()).collect();
    let reduced_linear = echelonize(&linear, &ord);
    let mut active = vec![true; nv];
    let mut rest: Vec<Polynomial> = hom.iter().filter(|(e, _)| *e > 1).map(|(_, g)| (*g).clone()).collect();
    for l in &reduced_linear {
        let (lead, _) = l.leading_term(&ord)?;
        let v = lead.exps().iter().position(|&e| e == 1).unwrap();
        active[v] = false;
        let replacement = &Polynomial::var(&field, nv, v) - l;
        rest = rest.iter().map(|g| g.substitute(v, &replacement)).collect::<Result<Vec<_>>>()?;
    }
    rest.retain(|g| !g.is_zero());
    let refs: Vec<&Polynomial> = rest.iter().collect();
    let blocks = variable_blocks(nv, &refs, &active);
    let per_block: Vec<Vec<usize>> = blocks
        .par_iter()
        .map(|(vars, idx)| {
            let gs: Vec<&Polynomial> = idx.iter().map(|&i| refs[i]).collect();
            block_hilbert(&field, nv, vars, &gs, max_degree)
        })
        .collect();
    let mut acc = vec![0usize; max_degree + 1];
    acc[0] = 1;
    for h in per_block {
        let mut next = vec![0usize; max_degree + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in h.iter().enumerate() {
                if i + j <= max_degree {
                    next[i + j] += a * b;
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Largest degree with a nonzero quotient dimension.
pub fn socle_degree(dims: &[usize]) -> Option<usize> {
    dims.iter().rposition(|&x| x > 0)
}

#[derive(Clone, Debug)]
pub struct SquareTerm {
    pub a: usize,
    pub b: usize,
    pub shift: Monomial,
    pub coeff: CyclotomicNumber,
}

/// Decides whether `target` lies in ⟨gens⟩² by exact linear algebra; returns
/// an expression Σ coeff · x^shift · g_a · g_b on success.
pub fn ideal_square_membership(target: &Polynomial, gens: &[Polynomial]) -> Result<Option<Vec<SquareTerm>>> {
    let deg = target.homogeneous_degree().ok_or(Error::NotHomogeneous(target.total_degree().unwrap_or(0)))?;
    for g in gens {
        if g.nvars() != target.nvars() {
            return Err(Error::VariableMismatch(g.nvars(), target.nvars()));
        }
    }
    let hom = check_homogeneous(gens)?;
    let nv = target.nvars();
    let field = target.field().clone();
    let one = CyclotomicNumber::from_int_in(&field, 1);
    let mut labels = Vec::new();
    let mut vectors = Vec::new();
    for (ia, (ea, ga)) in hom.iter().enumerate() {
        for (ib, (eb, gb)) in hom.iter().enumerate().skip(ia) {
            if ea + eb > deg {
                continue;
            }
            let prod = *ga * *gb;
            for shift in monomials_of_degree(nv, deg - ea - eb) {
                vectors.push(prod.mul_term(&shift, &one));
                labels.push((ia, ib, shift));
            }
        }
    }
    let mut monos: BTreeSet<Monomial> = target.terms().map(|(m, _)| m.clone()).collect();
    for v in &vectors {
        monos.extend(v.terms().map(|(m, _)| m.clone()));
    }
    let monos: Vec<Monomial> = monos.into_iter().collect();
    let dense = |p: &Polynomial| -> Vec<CyclotomicNumber> {
        monos.iter().map(|m| p.coeff(m).cloned().unwrap_or_else(|| CyclotomicNumber::zero_in(&field))).collect()
    };
    let cols: Vec<Vec<CyclotomicNumber>> = vectors.iter().map(dense).collect();
    let Some(sol) = solve_in_span(&field, &cols, &dense(target)) else { return Ok(None) };
    let witness: Vec<SquareTerm> =
        sol.into_iter().zip(labels).filter(|(c, _)| !c.is_zero()).map(|(coeff, (a, b, shift))| SquareTerm { a, b, shift, coeff }).collect();
    Ok(Some(witness))
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial> {
    let (mf, cf) = f.leading_term(ord)?;
    let (mg, cg) = g.leading_term(ord)?;
    let l = mf.lcm(&mg);
    let a = f.mul_term(&l.div(&mf).unwrap(), &cf.inv()?);
    let b = g.mul_term(&l.div(&mg).unwrap(), &cg.inv()?);
    a.checked_sub(&b)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BuchbergerOptions {
    /// Skip pairs with coprime leading monomials.
    pub product_criterion: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroebnerStatus {
    Complete,
    /// Pairs whose S-polynomial degree exceeds the cap were not processed;
    /// the basis is only valid up to the cap.
    Truncated {
        skipped_pairs: usize,
    },
}

#[derive(Clone, Debug)]
pub struct GroebnerResult {
    pub basis: Vec<Polynomial>,
    pub added: usize,
    pub status: GroebnerStatus,
}

/// Buchberger's algorithm, processing pairs by increasing lcm degree and
/// stopping at `degree_cap`.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder, degree_cap: usize, opts: BuchbergerOptions) -> Result<GroebnerResult> {
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if basis.is_empty() {
        return Err(Error::InvalidArgument("empty generator list".into()));
    }
    if let Some(g) = basis.iter().find(|g| g.total_degree().unwrap() > degree_cap) {
        return Err(Error::InvalidArgument(format!("degree cap {degree_cap} below generator degree {}", g.total_degree().unwrap())));
    }
    let lead = |p: &Polynomial| p.leading_monomial(ord).unwrap().clone();
    let mut leads: Vec<Monomial> = basis.iter().map(lead).collect();
    let mut pairs: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((leads[i].lcm(&leads[j]).degree(), i, j));
        }
    }
    let mut added = 0;
    while let Some(&(deg, i, j)) = pairs.iter().next() {
        if deg > degree_cap {
            return Ok(GroebnerResult { basis, added, status: GroebnerStatus::Truncated { skipped_pairs: pairs.len() } });
        }
        pairs.remove(&(deg, i, j));
        if opts.product_criterion && leads[i].is_coprime(&leads[j]) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], ord)?;
        let r = divide(&s, &basis, ord)?.remainder;
        if r.is_zero() {
            continue;
        }
        let r = r.monic(ord);
        let lr = lead(&r);
        let k = basis.len();
        for (t, lt) in leads.iter().enumerate() {
            pairs.insert((lt.lcm(&lr).degree(), t, k));
        }
        basis.push(r);
        leads.push(lr);
        added += 1;
    }
    Ok(GroebnerResult { basis, added, status: GroebnerStatus::Complete })
}

/// True iff every S-polynomial of degree ≤ cap reduces to zero.
pub fn is_groebner_basis(gens: &[Polynomial], ord: &MonomialOrder, degree_cap: usize) -> Result<bool> {
    for j in 0..gens.len() {
        for i in 0..j {
            let l = gens[i]
                .leading_monomial(ord)
                .ok_or(Error::ZeroPolynomial)?
                .lcm(gens[j].leading_monomial(ord).ok_or(Error::ZeroPolynomial)?);
            if l.degree() > degree_cap {
                continue;
            }
            let s = s_polynomial(&gens[i], &gens[j], ord)?;
            if !divide(&s, gens, ord)?.remainder.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Kernel of the map P ↦ (reduce(g·P))_g over reduced monomials of degree
/// `degree` in `vars`; returns the kernel basis.
fn inverse_system(ctx: &FermatContext, vars: &[usize], gens: &[&Polynomial], degree: usize) -> Vec<Polynomial> {
    let nv = ctx.nvars();
    let unknowns = monomials_in_vars(nv, vars, degree, ctx.d() - 2);
    if unknowns.is_empty() {
        return Vec::new();
    }
    let mut rows: BTreeMap<(usize, Monomial), Vec<(usize, CyclotomicNumber)>> = BTreeMap::new();
    for (gi, g) in gens.iter().enumerate() {
        for (j, u) in unknowns.iter().enumerate() {
            for (m, c) in g.terms() {
                let t = m.mul(u);
                if ctx.is_reduced(&t) {
                    rows.entry((gi, t)).or_default().push((j, c.clone()));
                }
            }
        }
    }
    let mut mat = Matrix::zeros(ctx.field(), rows.len(), unknowns.len());
    for (r, entries) in rows.values().enumerate() {
        for (j, c) in entries {
            let cur = mat.get(r, *j) + c;
            mat.set(r, *j, cur);
        }
    }
    let pivots = mat.rref();
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    (0..unknowns.len())
        .filter(|j| !pivot_set.contains(j))
        .map(|f| {
            let mut terms = vec![(unknowns[f].clone(), ctx.scalar(1))];
            for (r, &pc) in pivots.iter().enumerate() {
                let v = mat.get(r, f);
                if !v.is_zero() {
                    terms.push((unknowns[pc].clone(), -v));
                }
            }
            Polynomial::from_terms(ctx.field(), nv, terms)
        })
        .collect()
}

/// The degree-σ polynomial P, unique up to scale, with gens·P ⊆ J^F; this is
/// the class whose colon ideal contains ⟨gens⟩. Blocks of generators in
/// disjoint variables are solved separately and multiplied.
pub fn socle_generator(gens: &[Polynomial], ctx: &FermatContext) -> Result<Polynomial> {
    for g in gens {
        ctx.check_poly(g)?;
    }
    let refs: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    let nv = ctx.nvars();
    let per_var = ctx.d() as usize - 2;
    let blocks = variable_blocks(nv, &refs, &vec![true; nv]);
    let split_ok = blocks.len() > 1 && blocks.iter().all(|(vars, _)| vars.len() % 2 == 0);
    let ord = MonomialOrder::lex(nv);
    if split_ok {
        let mut product = Polynomial::constant(ctx.field(), nv, ctx.scalar(1));
        let mut ok = true;
        for (vars, idx) in &blocks {
            let gs: Vec<&Polynomial> = idx.iter().map(|&i| refs[i]).collect();
            let sol = inverse_system(ctx, vars, &gs, per_var * vars.len() / 2);
            if sol.len() != 1 {
                ok = false;
                break;
            }
            product = &product * &sol[0];
        }
        if ok {
            return Ok(product.monic(&ord));
        }
    }
    let all: Vec<usize> = (0..nv).collect();
    let sol = inverse_system(ctx, &all, &refs, ctx.sigma());
    if sol.len() != 1 {
        return Err(Error::InvalidArgument(format!("inverse system in degree σ has dimension {}, expected 1", sol.len())));
    }
    Ok(sol[0].monic(&ord))
}

/// Generators of (J^F : P) in degrees 1..=σ+1: at each degree, the slice
/// elements not already spanned by multiples of lower-degree generators.
pub fn colon_generators(p: &Polynomial, ctx: &FermatContext, ord: &MonomialOrder) -> Result<Vec<Polynomial>> {
    let one = ctx.scalar(1);
    let mut gens: Vec<Polynomial> = Vec::new();
    let mut previous: Vec<Polynomial> = Vec::new();
    for k in 1..=ctx.sigma() + 1 {
        let slice = colon_slice_with_order(p, k, ctx, ord)?;
        // the ideal in degree k generated below k is x_i · I_{k-1}
        let span: Vec<Polynomial> = previous
            .iter()
            .flat_map(|g| (0..ctx.nvars()).map(|i| g.mul_term(&Monomial::var(ctx.nvars(), i), &one)).collect::<Vec<_>>())
            .collect();
        let mut rows = echelonize(&span, ord);
        let slice_basis = slice.basis;
        for f in &slice_basis {
            let r = reduce_by_echelon(f, &rows, ord);
            let Ok((lead, c)) = r.leading_term(ord) else { continue };
            let r = r.scale(&c.inv()?);
            for row in rows.iter_mut() {
                if let Some(a) = row.coeff(&lead).cloned() {
                    *row = &*row - &r.scale(&a);
                }
            }
            rows.push(r);
            gens.push(f.clone());
        }
        previous = slice_basis;
    }
    Ok(gens)
}

/// Remainder of `f` against fully reduced monic echelon rows.
fn reduce_by_echelon(f: &Polynomial, rows: &[Polynomial], ord: &MonomialOrder) -> Polynomial {
    let mut r = f.clone();
    for row in rows {
        let lead = row.leading_monomial(ord).expect("echelon rows are nonzero");
        if let Some(c) = r.coeff(lead).cloned() {
            r = &r - &row.scale(&c);
        }
    }
    r
}

/// Number of degree-k monomials outside the monomial ideal ⟨leads⟩, k = 0..=max_degree.
pub fn quotient_dims_from_leading(leads: &[Monomial], nvars: usize, max_degree: usize) -> Vec<usize> {
    (0..=max_degree).map(|k| monomials_of_degree(nvars, k).iter().filter(|m| !leads.iter().any(|l| l.divides(m))).count()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::geometric_factor;

    fn ctx(n: usize, d: u32) -> FermatContext {
        FermatContext::new(n, d).unwrap()
    }

    /// ζ^{α0+α1} · ∏ geometric factors over (x0,x1), (x2,x3).
    fn linear_cycle_22(c: &FermatContext, alpha: [i64; 2]) -> Polynomial {
        let f = c.field();
        let g0 = geometric_factor(f, 4, 0, 1, &c.zeta_pow(alpha[0]), c.d()).unwrap();
        let g1 = geometric_factor(f, 4, 2, 3, &c.zeta_pow(alpha[1]), c.d()).unwrap();
        (&g0 * &g1).scale(&c.zeta_pow(alpha[0] + alpha[1]))
    }

    #[test]
    fn context_validation() {
        assert!(FermatContext::new(3, 5).is_err());
        assert!(FermatContext::new(0, 5).is_err());
        assert!(FermatContext::new(2, 2).is_err());
        let c = ctx(4, 5);
        assert_eq!(c.sigma(), 9);
        assert_eq!(c.conductor(), 10);
        assert_eq!(c.full_dim(5), 252);
    }

    #[test]
    fn jacobian_reduction() {
        let c = ctx(2, 5);
        let f = c.field();
        let m = |e: Vec<u32>| Polynomial::monomial(f, Monomial::new(e));
        assert!(reduce_mod_jacobian(&m(vec![4, 1, 0, 0]), &c).is_zero());
        let top = m(vec![3, 3, 3, 3]);
        assert_eq!(reduce_mod_jacobian(&top, &c), top);
        let p = linear_cycle_22(&c, [1, 1]);
        assert_eq!(reduce_mod_jacobian(&p, &c), p);
    }

    #[test]
    fn linear_cycle_degree_one_slice() {
        let c = ctx(2, 5);
        let p = linear_cycle_22(&c, [1, 1]);
        let s = colon_slice(&p, 1, &c).unwrap();
        assert_eq!(s.dim(), 2);
        let f = c.field();
        let z = c.zeta_pow(1);
        let l0 = &Polynomial::var(f, 4, 0) - &Polynomial::var(f, 4, 1).scale(&z);
        let l1 = &Polynomial::var(f, 4, 2) - &Polynomial::var(f, 4, 3).scale(&z);
        assert_eq!(s.basis, vec![l0, l1]);
        assert_eq!(colon_slice(&p, 0, &c).unwrap().dim(), 0);
        assert_eq!(colon_slice(&p, 6, &c).unwrap().dim(), c.full_dim(6) - 1);
        assert_eq!(colon_slice(&p, 7, &c).unwrap().dim(), c.full_dim(7));
    }

    #[test]
    fn colon_errors() {
        let c = ctx(2, 5);
        let f = c.field();
        let in_jacobian = Polynomial::monomial(f, Monomial::new(vec![4, 2, 0, 0]));
        assert_eq!(colon_slice(&in_jacobian, 1, &c), Err(Error::ZeroPrimitivePart));
        let wrong_degree = Polynomial::monomial(f, Monomial::new(vec![1, 0, 0, 0]));
        assert_eq!(colon_slice(&wrong_degree, 1, &c), Err(Error::NotHomogeneous(6)));
    }

    #[test]
    fn linear_cycle_profile_and_pairing() {
        let c = ctx(2, 5);
        let p = linear_cycle_22(&c, [3, 7]);
        let h = hilbert_profile(&p, &c).unwrap();
        assert_eq!(h.dims, vec![1, 2, 3, 4, 3, 2, 1]);
        assert!(h.is_gorenstein_symmetric());
        assert_eq!(pairing_rank(&p, 0, &c).unwrap(), 1);
        assert_eq!(pairing_rank(&p, 6, &c).unwrap(), 1);
        assert_eq!(pairing_rank(&p, 2, &c).unwrap(), 3);
    }

    #[test]
    fn lt_slices() {
        let c = ctx(2, 5);
        let f = c.field();
        let a = c.zeta_pow(1);
        let b = c.zeta_pow(3);
        let s = DegreeSlice {
            k: 1,
            kind: SliceKind::Ideal,
            order: MonomialOrder::lex(4),
            basis: vec![
                &Polynomial::var(f, 4, 0) - &Polynomial::var(f, 4, 1).scale(&a),
                &Polynomial::var(f, 4, 2) - &Polynomial::var(f, 4, 3).scale(&b),
            ],
        };
        let ord = MonomialOrder::evens_first(4);
        let lts: Vec<Monomial> = lt_slice(&s, &ord).into_iter().collect();
        assert_eq!(lts, vec![Monomial::var(4, 2), Monomial::var(4, 0)]);
        let empty = DegreeSlice { basis: vec![], ..s };
        assert!(lt_slice(&empty, &ord).is_empty());
    }

    #[test]
    fn groebner_examples() {
        let c = ctx(2, 5);
        let f = c.field();
        let a = c.zeta_pow(3);
        let ord = MonomialOrder::lex(4);
        let gens = vec![&Polynomial::var(f, 4, 0) - &Polynomial::var(f, 4, 1).scale(&a), Polynomial::var(f, 4, 1).pow(4)];
        let r = buchberger(&gens, &ord, 8, BuchbergerOptions::default()).unwrap();
        assert_eq!(r.added, 0);
        assert_eq!(r.status, GroebnerStatus::Complete);
        assert!(is_groebner_basis(&gens, &ord, 8).unwrap());
        let monos = c.jacobian_generators();
        let r = buchberger(&monos, &ord, 8, BuchbergerOptions::default()).unwrap();
        assert_eq!(r.basis, monos);
        // x0 - x1, x0 - x2 needs x1 - x2
        let x = |i| Polynomial::var(f, 4, i);
        let gens = vec![&x(0) - &x(1), &x(0) - &x(2)];
        assert!(!is_groebner_basis(&gens, &ord, 4).unwrap());
        let r = buchberger(&gens, &ord, 4, BuchbergerOptions::default()).unwrap();
        assert_eq!(r.added, 1);
        assert!(is_groebner_basis(&r.basis, &ord, 4).unwrap());
        // cap below generator degree
        assert!(buchberger(&monos, &ord, 2, BuchbergerOptions::default()).is_err());
    }

    #[test]
    fn truncation_is_reported() {
        let c = ctx(2, 5);
        let f = c.field();
        let x = |i| Polynomial::var(f, 4, i);
        let gens = vec![&(&x(0) * &x(1)) - &(&x(2) * &x(2)), &(&x(0) * &x(2)) - &(&x(1) * &x(3))];
        let r = buchberger(&gens, &MonomialOrder::lex(4), 2, BuchbergerOptions::default()).unwrap();
        assert!(matches!(r.status, GroebnerStatus::Truncated { skipped_pairs: 1 }));
    }

    #[test]
    fn square_membership() {
        let c = ctx(2, 5);
        let f = c.field();
        let x = |i| Polynomial::var(f, 4, i);
        let fermat = c.fermat();
        assert!(ideal_square_membership(&fermat, &[x(0), x(1)]).unwrap().is_none());
        let lone = x(0).pow(5);
        assert!(ideal_square_membership(&lone, &[lone.clone()]).unwrap().is_none());
        let w = ideal_square_membership(&lone, &[x(0).pow(2), x(0).pow(3)]).unwrap().unwrap();
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn ideal_hilbert_of_linear_cycle_ideal() {
        let c = ctx(2, 5);
        let f = c.field();
        let z = c.zeta_pow(1);
        let x = |i| Polynomial::var(f, 4, i);
        let gens = vec![&x(0) - &x(1).scale(&z), &x(2) - &x(3).scale(&z), x(1).pow(4), x(3).pow(4)];
        let h = ideal_hilbert_function(&gens, 7).unwrap();
        assert_eq!(h, vec![1, 2, 3, 4, 3, 2, 1, 0]);
        assert_eq!(socle_degree(&h), Some(6));
    }

    #[test]
    fn generators_reproduce_profile() {
        let c = ctx(2, 4);
        let p = linear_cycle_22(&c, [1, 5]);
        let ord = MonomialOrder::lex(4);
        let gens = colon_generators(&p, &c, &ord).unwrap();
        let gb = buchberger(&gens, &ord, c.sigma() + 1, BuchbergerOptions::default()).unwrap();
        let leads: Vec<Monomial> = gb.basis.iter().map(|g| g.leading_monomial(&ord).unwrap().clone()).collect();
        let dims = quotient_dims_from_leading(&leads, 4, c.sigma());
        assert_eq!(dims, hilbert_profile(&p, &c).unwrap().dims);
    }

    #[test]
    fn inverse_system_recovers_linear_cycle() {
        let c = ctx(2, 5);
        let f = c.field();
        let z = c.zeta_pow(1);
        let x = |i| Polynomial::var(f, 4, i);
        let gens = vec![&x(0) - &x(1).scale(&z), &x(2) - &x(3).scale(&z), x(1).pow(4), x(3).pow(4)];
        let p = socle_generator(&gens, &c).unwrap();
        let expect = linear_cycle_22(&c, [1, 1]).monic(&MonomialOrder::lex(4));
        assert_eq!(p, expect);
    }
}
