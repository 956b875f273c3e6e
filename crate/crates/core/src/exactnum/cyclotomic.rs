//! Exact arithmetic in the cyclotomic field Q(ζ_m).
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(m)-1}` reduced modulo
//! the m-th cyclotomic polynomial, with integer numerators over one common
//! positive denominator. The representation is canonical: two elements of the
//! same field are equal iff their stored data are identical.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Static data for Q(ζ_m): the modulus Φ_m and the reduced powers of ζ_m.
pub struct CyclotomicField {
    m: u32,
    phi: usize,
    modulus: Vec<BigInt>,
    /// `powers[e]` lists the nonzero coordinates of ζ^e, for 0 ≤ e < m.
    powers: Vec<Vec<(usize, i64)>>,
    units: Vec<u32>,
}

static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();

fn int_poly_divexact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dl = den.len();
    let ql = num.len() + 1 - dl;
    let mut q = vec![BigInt::zero(); ql];
    for i in (0..ql).rev() {
        let c = rem[i + dl - 1].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// Φ_m with coefficients listed from the constant term upward.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1);
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = BigInt::from(-1);
    p[m as usize] = BigInt::one();
    for e in 1..m {
        if m % e == 0 {
            p = int_poly_divexact(&p, &cyclotomic_polynomial(e));
        }
    }
    p
}

impl CyclotomicField {
    pub fn get(m: u32) -> Result<Arc<CyclotomicField>> {
        if m == 0 {
            return Err(Error::InvalidConductor(0));
        }
        let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&m) {
            return Ok(f.clone());
        }
        let field = Arc::new(Self::build(m)?);
        Ok(cache.lock().unwrap().entry(m).or_insert(field).clone())
    }

    fn build(m: u32) -> Result<Self> {
        let modulus = cyclotomic_polynomial(m);
        let phi = modulus.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        for _ in 0..m {
            let sparse = cur
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| c.to_i64().map(|v| (i, v)).ok_or(Error::InvalidConductor(m as i64)))
                .collect::<Result<Vec<_>>>()?;
            powers.push(sparse);
            // multiply by x, reduce with the monic modulus
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for i in 0..phi {
                    cur[i] -= &top * &modulus[i];
                }
            }
        }
        let units = (1..=m).filter(|k| k.gcd(&m) == 1 && *k < m.max(2)).collect();
        Ok(CyclotomicField { m, phi, modulus, powers, units })
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.m)
    }
}

#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    pub fn zero_in(field: &Arc<CyclotomicField>) -> Self {
        CyclotomicNumber { field: field.clone(), num: vec![BigInt::zero(); field.phi], den: BigInt::one() }
    }

    pub fn from_rational_in(field: &Arc<CyclotomicField>, q: &Rational) -> Self {
        let mut z = Self::zero_in(field);
        z.num[0] = q.numer().clone();
        z.den = q.denom().clone();
        z
    }

    pub fn from_int_in(field: &Arc<CyclotomicField>, v: i64) -> Self {
        let mut z = Self::zero_in(field);
        z.num[0] = BigInt::from(v);
        z
    }

    /// ζ_m^k inside the given field (whose conductor is m).
    pub fn zeta_pow_in(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let m = field.m as i64;
        let e = k.rem_euclid(m) as usize;
        let mut z = Self::zero_in(field);
        for &(i, c) in &field.powers[e] {
            z.num[i] = BigInt::from(c);
        }
        z
    }

    pub fn zero(m: u32) -> Result<Self> {
        Ok(Self::zero_in(&CyclotomicField::get(m)?))
    }

    pub fn one(m: u32) -> Result<Self> {
        Ok(Self::from_int_in(&CyclotomicField::get(m)?, 1))
    }

    pub fn from_rational(m: u32, q: &Rational) -> Result<Self> {
        Ok(Self::from_rational_in(&CyclotomicField::get(m)?, q))
    }

    pub fn from_int(m: u32, v: i64) -> Result<Self> {
        Ok(Self::from_int_in(&CyclotomicField::get(m)?, v))
    }

    /// ζ_m^k in canonical form.
    pub fn root_of_unity(m: i64, k: i64) -> Result<Self> {
        if m <= 0 || m > u32::MAX as i64 {
            return Err(Error::InvalidConductor(m));
        }
        Ok(Self::zeta_pow_in(&CyclotomicField::get(m as u32)?, k))
    }

    /// Builds an element from its φ(m) power-basis coordinates.
    pub fn from_coords(m: u32, coords: &[Rational]) -> Result<Self> {
        let field = CyclotomicField::get(m)?;
        if coords.len() != field.phi {
            return Err(Error::InvalidArgument(format!("expected {} coordinates for conductor {m}, got {}", field.phi, coords.len())));
        }
        Ok(Self::from_power_series(&field, coords))
    }

    /// Σ c_e ζ^e for an arbitrary-length coefficient list, reduced.
    pub fn from_power_series(field: &Arc<CyclotomicField>, coeffs: &[Rational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut num = vec![BigInt::zero(); field.phi];
        let m = field.m as usize;
        for (e, q) in coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let scaled = q.numer() * (&den / q.denom());
            for &(i, c) in &field.powers[e % m] {
                num[i] += &scaled * c;
            }
        }
        let mut z = CyclotomicNumber { field: field.clone(), num, den };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.m
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when every coordinate past the constant one vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn zero_like(&self) -> Self {
        Self::zero_in(&self.field)
    }

    pub fn one_like(&self) -> Self {
        Self::from_int_in(&self.field, 1)
    }

    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field.m == other.field.m
    }

    /// Brings both operands into one field, embedding a rational operand
    /// (φ = 1) into the other operand's field; anything else must match.
    fn align<'a>(&'a self, other: &'a Self) -> Result<(std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>)> {
        use std::borrow::Cow;
        if self.same_field(other) {
            return Ok((Cow::Borrowed(self), Cow::Borrowed(other)));
        }
        if other.field.phi == 1 {
            let q = other.as_rational().unwrap();
            return Ok((Cow::Borrowed(self), Cow::Owned(Self::from_rational_in(&self.field, &q))));
        }
        if self.field.phi == 1 {
            let q = self.as_rational().unwrap();
            return Ok((Cow::Owned(Self::from_rational_in(&other.field, &q)), Cow::Borrowed(other)));
        }
        Err(Error::ConductorMismatch(self.field.m, other.field.m))
    }

    fn add_same(&self, other: &Self, negate: bool) -> Self {
        let (num, den) = if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| if negate { a - b } else { a + b }).collect();
            (num, self.den.clone())
        } else {
            let l = self.den.lcm(&other.den);
            let fa = &l / &self.den;
            let fb = &l / &other.den;
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let x = a * &fa;
                    let y = b * &fb;
                    if negate {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect();
            (num, l)
        };
        let mut z = CyclotomicNumber { field: self.field.clone(), num, den };
        z.normalize();
        z
    }

    fn scale_int(&self, n: &BigInt, d: &BigInt) -> Self {
        let mut z = CyclotomicNumber { field: self.field.clone(), num: self.num.iter().map(|c| c * n).collect(), den: &self.den * d };
        z.normalize();
        z
    }

    fn mul_same(&self, other: &Self) -> Self {
        if other.is_rational() {
            return self.scale_int(&other.num[0], &other.den);
        }
        if self.is_rational() {
            return other.scale_int(&self.num[0], &self.den);
        }
        let phi = self.field.phi;
        let m = self.field.m as usize;
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = conv.drain(..phi).collect();
        for (k, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, p) in &self.field.powers[(k + phi) % m] {
                num[i] += &c * p;
            }
        }
        let mut z = CyclotomicNumber { field: self.field.clone(), num, den: &self.den * &other.den };
        z.normalize();
        z
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        Ok(a.add_same(&b, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        Ok(a.add_same(&b, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        Ok(a.mul_same(&b))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        Ok(a.mul_same(&b.inv()?))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.scale_int(q.numer(), q.denom())
    }

    /// The Galois automorphism ζ ↦ ζ^k (k coprime to m).
    pub fn galois(&self, k: i64) -> Self {
        let m = self.field.m as i64;
        let mut num = vec![BigInt::zero(); self.field.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j as i64 * k).rem_euclid(m) as usize;
            for &(i, p) in &self.field.powers[e] {
                num[i] += c * p;
            }
        }
        let mut z = CyclotomicNumber { field: self.field.clone(), num, den: self.den.clone() };
        z.normalize();
        z
    }

    /// Complex conjugation, ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            let mut z = self.zero_like();
            z.num[0] = self.den.clone();
            z.den = self.num[0].clone();
            z.normalize();
            return Ok(z);
        }
        // x^{-1} = (∏_{k≠1} σ_k x) / N(x)
        let mut cofactor = self.one_like();
        for &k in &self.field.units {
            if k != 1 {
                cofactor = cofactor.mul_same(&self.galois(k as i64));
            }
        }
        let norm = self.mul_same(&cofactor);
        let n = norm.as_rational().expect("field norm is rational");
        Ok(cofactor.scale(&n.recip()))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one_like();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_same(&b);
            }
        }
        Ok(acc)
    }

    /// True iff z · conj(z) = 1.
    pub fn unit_circle_check(&self) -> bool {
        !self.is_zero() && self.mul_same(&self.conj()).is_one()
    }

    /// Embeds into Q(ζ_target); requires m | target.
    pub fn promote(&self, target: u32) -> Result<Self> {
        let m = self.field.m;
        if target == 0 || target % m != 0 {
            return Err(Error::ConductorMismatch(m, target));
        }
        if target == m {
            return Ok(self.clone());
        }
        let field = CyclotomicField::get(target)?;
        let step = (target / m) as usize;
        let t = target as usize;
        let mut num = vec![BigInt::zero(); field.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, p) in &field.powers[(j * step) % t] {
                num[i] += c * p;
            }
        }
        let mut z = CyclotomicNumber { field, num, den: self.den.clone() };
        z.normalize();
        Ok(z)
    }

    /// Rewrites the value in Q(ζ_target) when it lies in that subfield.
    pub fn demote(&self, target: u32) -> Option<Self> {
        if target == 0 {
            return None;
        }
        let m = self.field.m;
        let l = (m as u64).lcm(&(target as u64));
        let l = u32::try_from(l).ok()?;
        let here = self.promote(l).ok()?;
        let small = CyclotomicField::get(target).ok()?;
        let cols: Vec<Vec<Rational>> = (0..small.phi).map(|j| Self::zeta_pow_in(&small, j as i64).promote(l).unwrap().coords()).collect();
        let sol = solve_rational(&cols, &here.coords())?;
        Some(Self::from_power_series(&small, &sol))
    }

    /// Promotes both values to the conductor lcm(m_1, m_2).
    pub fn promote_pair(a: &Self, b: &Self) -> Result<(Self, Self)> {
        let l = (a.conductor() as u64).lcm(&(b.conductor() as u64));
        let l = u32::try_from(l).map_err(|_| Error::InvalidConductor(l as i64))?;
        Ok((a.promote(l)?, b.promote(l)?))
    }
}

/// Solves Σ_j c_j cols[j] = target over Q; `None` when inconsistent.
fn solve_rational(cols: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let rows = target.len();
    let ncols = cols.len();
    let mut a: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=ncols {
                    let v = &a[r][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = a[i][ncols].clone();
    }
    Some(sol)
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.den == other.den && self.num == other.num
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, q) in self.coords().iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = format_rational(&q.abs());
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = match (i, mag.as_str()) {
                (0, _) => mag.clone(),
                (1, "1") => "z".to_string(),
                (_, "1") => format!("z^{i}"),
                (1, _) => format!("{mag}*z"),
                _ => format!("{mag}*z^{i}"),
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self, self.field.m)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(rhs)
            }
        }
    };
}

// Operators panic on a conductor mismatch between two non-rational operands;
// use the `checked_*` methods where that can happen.
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, rhs: &CyclotomicNumber) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn sub_assign(&mut self, rhs: &CyclotomicNumber) {
        *self = &*self - rhs;
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { field: self.field.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}
