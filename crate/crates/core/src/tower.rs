//! Exact arithmetic in the 2-power cyclotomic tower `L_k = Q(zeta_{2^k})`.
//!
//! An element of `L_k` is stored in the power basis `1, z, ..., z^{N-1}` with
//! `N = 2^{k-1}` and `z^N = -1`. Only nonzero coefficients are kept, sorted by
//! exponent, and every value is kept at the smallest level that contains it,
//! so derived equality and hashing are equality and hashing of field values.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Default cap on tower depth used by searches and the expression parser.
pub const DEFAULT_MAX_LEVEL: u32 = 16;

/// Hard representation limit: exponents must fit comfortably in `usize`.
pub const MAX_REPRESENTABLE_LEVEL: u32 = 40;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Number of power-basis coordinates of `L_k` over `Q`.
pub fn degree_of_level(level: u32) -> usize {
    1usize << (level - 1)
}

/// Which field of the second kind with respect to 2 a computation lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// `K = U_k Q(z_k + z_k^-1)`, so `K != K(i)`. Members are the conj-fixed elements.
    RealTower,
    /// `K = K(i) = U_k Q(z_k)`. Every element is a member.
    FullTower,
}

impl FieldSpec {
    pub fn is_member(self, x: &CycloElem) -> bool {
        match self {
            FieldSpec::FullTower => true,
            FieldSpec::RealTower => x.is_real(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FieldSpec::RealTower => "real",
            FieldSpec::FullTower => "full",
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A field choice together with the depth budget for searches in it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tower {
    pub field: FieldSpec,
    pub max_level: u32,
}

impl Tower {
    pub fn new(field: FieldSpec) -> Self {
        Tower {
            field,
            max_level: DEFAULT_MAX_LEVEL,
        }
    }

    pub fn real() -> Self {
        Self::new(FieldSpec::RealTower)
    }

    pub fn full() -> Self {
        Self::new(FieldSpec::FullTower)
    }

    pub fn with_max_level(mut self, max_level: u32) -> Self {
        self.max_level = max_level.min(MAX_REPRESENTABLE_LEVEL);
        self
    }

    pub fn is_member(&self, x: &CycloElem) -> bool {
        self.field.is_member(x)
    }

    pub(crate) fn check_level(&self, needed: u32) -> Result<()> {
        if needed > self.max_level {
            Err(Error::LevelBudgetExceeded {
                needed,
                max: self.max_level,
            })
        } else {
            Ok(())
        }
    }
}

/// An exact element of `L_level`, in canonical (minimal-level) form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    level: u32,
    terms: Vec<(usize, Rational)>,
}

impl CycloElem {
    pub fn zero() -> Self {
        CycloElem {
            level: 1,
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let terms = if q.is_zero() {
            Vec::new()
        } else {
            vec![(0, q)]
        };
        CycloElem { level: 1, terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    /// The distinguished primitive `2^k`-th root of unity; `zeta(k+1)^2 = zeta(k)`.
    pub fn zeta(k: u32) -> Self {
        assert!(
            (1..=MAX_REPRESENTABLE_LEVEL).contains(&k),
            "zeta level {k} out of range"
        );
        Self::monomial(Rational::one(), k, 1)
    }

    /// `zeta(k)^j` for any integer `j`.
    pub fn zeta_pow(k: u32, j: i64) -> Self {
        assert!(
            (1..=MAX_REPRESENTABLE_LEVEL).contains(&k),
            "zeta level {k} out of range"
        );
        let period = 2 * degree_of_level(k) as i64;
        Self::monomial(Rational::one(), k, j.rem_euclid(period) as usize)
    }

    /// `zeta(k) + zeta(k)^-1`.
    pub fn cosgen(k: u32) -> Self {
        assert!(k >= 2, "cosgen needs level >= 2");
        let z = Self::zeta(k);
        &z + &z.conj()
    }

    /// `c * zeta(level)^j`, with `j` taken modulo `2N` (the order of the root).
    pub(crate) fn monomial(c: Rational, level: u32, j: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let n = degree_of_level(level);
        let j = j % (2 * n);
        let (idx, c) = if j >= n { (j - n, -c) } else { (j, c) };
        Self::from_terms(level, vec![(idx, c)])
    }

    /// Builds an element from sorted, nonzero, in-range terms and canonicalizes it.
    fn from_terms(level: u32, terms: Vec<(usize, Rational)>) -> Self {
        let mut x = CycloElem { level, terms };
        x.canonicalize();
        x
    }

    /// Builds an element at `level` from a dense coefficient list of length `2^(level-1)`.
    pub fn from_coeffs(level: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if !(1..=MAX_REPRESENTABLE_LEVEL).contains(&level) {
            return Err(Error::InvalidArgument(format!(
                "level {level} out of range"
            )));
        }
        if coeffs.len() != degree_of_level(level) {
            return Err(Error::InvalidArgument(format!(
                "level {level} needs {} coefficients, got {}",
                degree_of_level(level),
                coeffs.len()
            )));
        }
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(Self::from_terms(level, terms))
    }

    fn canonicalize(&mut self) {
        if self.terms.is_empty() {
            self.level = 1;
            return;
        }
        let mut shift = 0;
        while self.level - shift > 1 && self.terms.iter().all(|(i, _)| i % (1 << (shift + 1)) == 0)
        {
            shift += 1;
        }
        if shift > 0 {
            for t in &mut self.terms {
                t.0 >>= shift;
            }
            self.level -= shift;
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> &[(usize, Rational)] {
        &self.terms
    }

    /// Dense coefficient list at the element's own level.
    pub fn coeffs(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); degree_of_level(self.level)];
        for (i, c) in &self.terms {
            out[*i] = c.clone();
        }
        out
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.terms
            .binary_search_by_key(&j, |t| t.0)
            .map(|k| self.terms[k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.level == 1 && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.level == 1).then(|| self.coeff(0))
    }

    /// `Some((c, j))` when the element is `c * zeta(level)^j`.
    pub fn as_monomial(&self) -> Option<(&Rational, usize)> {
        match self.terms.as_slice() {
            [(j, c)] => Some((c, *j)),
            _ => None,
        }
    }

    /// Representation of `self` at a higher level `k` (not canonical when `k > level`).
    pub fn lift(&self, k: u32) -> Result<LiftedElem> {
        if k < self.level || k > MAX_REPRESENTABLE_LEVEL {
            return Err(Error::InvalidArgument(format!(
                "cannot lift a level-{} element to level {k}",
                self.level
            )));
        }
        let shift = k - self.level;
        Ok(LiftedElem {
            level: k,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (i << shift, c.clone()))
                .collect(),
        })
    }

    fn terms_at(&self, k: u32) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        let shift = k - self.level;
        self.terms.iter().map(move |(i, c)| (i << shift, c))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CycloElem {
            level: self.level,
            terms: self.terms.iter().map(|(i, c)| (*i, c * q)).collect(),
        }
    }

    /// Complex conjugation `z -> z^-1`.
    pub fn conj(&self) -> Self {
        if self.level == 1 {
            return self.clone();
        }
        let n = degree_of_level(self.level);
        let mut terms: Vec<(usize, Rational)> = self
            .terms
            .iter()
            .map(|(i, c)| if *i == 0 { (0, c.clone()) } else { (n - i, -c) })
            .collect();
        terms.sort_by_key(|t| t.0);
        CycloElem {
            level: self.level,
            terms,
        }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Norm of `K(i)/K`: `x * conj(x)`.
    pub fn norm2(&self) -> Self {
        self * &self.conj()
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some((c, j)) = self.as_monomial() {
            let n = degree_of_level(self.level);
            return Ok(Self::monomial(c.recip(), self.level, 2 * n - j));
        }
        let n = degree_of_level(self.level);
        let p = self.coeffs();
        let inv = dense::inverse_mod_cyclotomic(p, n).ok_or_else(|| {
            Error::InternalVerificationFailure("power-basis polynomial not invertible".into())
        })?;
        Self::from_coeffs(self.level, inv)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.invert()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        Ok(base.pow_u(e.unsigned_abs()))
    }

    pub fn pow_u(&self, mut e: u64) -> Self {
        if let Some((c, j)) = self.as_monomial() {
            if e <= u32::MAX as u64 {
                let n = 2 * degree_of_level(self.level) as u64;
                let idx = ((j as u64 % n) * (e % n)) % n;
                return Self::monomial(
                    num_traits::pow(c.clone(), e as usize),
                    self.level,
                    idx as usize,
                );
            }
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Repeated squaring: `self^(2^s)`.
    pub fn pow2k(&self, s: u32) -> Self {
        let mut x = self.clone();
        for _ in 0..s {
            x = &x * &x;
        }
        x
    }

    /// Splits `x = x0 + x1 * zeta(m)` with `x0, x1` in `L_{m-1}` (`m >= 2`).
    pub(crate) fn split(&self, m: u32) -> (Self, Self) {
        debug_assert!(m >= 2 && m >= self.level);
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for (i, c) in self.terms_at(m) {
            if i % 2 == 0 {
                even.push((i / 2, c.clone()));
            } else {
                odd.push((i / 2, c.clone()));
            }
        }
        (Self::from_terms(m - 1, even), Self::from_terms(m - 1, odd))
    }

    /// Sign of the lowest-exponent nonzero coefficient (0 for zero).
    pub fn leading_sign(&self) -> i32 {
        match self.terms.first() {
            None => 0,
            Some((_, c)) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// A total order on canonical forms: level, then terms lexicographically.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.level.cmp(&other.level).then_with(|| {
            for (a, b) in self.terms.iter().zip(&other.terms) {
                let o = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
                if o != Ordering::Equal {
                    return o;
                }
            }
            self.terms.len().cmp(&other.terms.len())
        })
    }

    /// Image under the embedding `zeta(k) -> exp(2 pi i / 2^k)`.
    pub fn to_complex(&self) -> Complex64 {
        let period = 2.0 * degree_of_level(self.level) as f64;
        self.terms
            .iter()
            .map(|(j, c)| {
                let angle = 2.0 * PI * (*j as f64) / period;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }
}

/// A non-canonical view of an element at an explicitly chosen level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedElem {
    pub level: u32,
    pub terms: Vec<(usize, Rational)>,
}

impl LiftedElem {
    pub fn coeffs(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); degree_of_level(self.level)];
        for (i, c) in &self.terms {
            out[*i] = c.clone();
        }
        out
    }

    pub fn normalize(&self) -> CycloElem {
        CycloElem::from_terms(self.level, self.terms.clone())
    }
}

/// Canonical minimal-level representative of a dense coefficient list.
pub fn normalize(level: u32, coeffs: Vec<Rational>) -> Result<CycloElem> {
    CycloElem::from_coeffs(level, coeffs)
}

fn merge_terms<'a>(
    level: u32,
    a: impl Iterator<Item = (usize, &'a Rational)>,
    b: impl Iterator<Item = (usize, Rational)>,
) -> CycloElem {
    let mut a = a.peekable();
    let mut b = b.peekable();
    let mut out = Vec::new();
    loop {
        match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => {
                let (i, c) = a.next().unwrap();
                out.push((i, c.clone()));
            }
            (None, Some(_)) => out.push(b.next().unwrap()),
            (Some((i, _)), Some((j, _))) => match i.cmp(j) {
                Ordering::Less => {
                    let (i, c) = a.next().unwrap();
                    out.push((i, c.clone()));
                }
                Ordering::Greater => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (i, c) = a.next().unwrap();
                    let (_, d) = b.next().unwrap();
                    let s = c + d;
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
            },
        }
    }
    CycloElem::from_terms(level, out)
}

fn add_ref(x: &CycloElem, y: &CycloElem) -> CycloElem {
    let k = x.level.max(y.level);
    merge_terms(k, x.terms_at(k), y.terms_at(k).map(|(i, c)| (i, c.clone())))
}

fn sub_ref(x: &CycloElem, y: &CycloElem) -> CycloElem {
    let k = x.level.max(y.level);
    merge_terms(k, x.terms_at(k), y.terms_at(k).map(|(i, c)| (i, -c)))
}

fn mul_ref(x: &CycloElem, y: &CycloElem) -> CycloElem {
    if x.is_zero() || y.is_zero() {
        return CycloElem::zero();
    }
    let k = x.level.max(y.level);
    let n = degree_of_level(k);
    let work = x.terms.len() * y.terms.len();
    let put = |acc: &mut dyn FnMut(usize, Rational)| {
        for (i, a) in x.terms_at(k) {
            for (j, b) in y.terms_at(k) {
                let idx = i + j;
                if idx >= n {
                    acc(idx - n, -(a * b));
                } else {
                    acc(idx, a * b);
                }
            }
        }
    };
    let terms: Vec<(usize, Rational)> = if work * 4 < n {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        put(&mut |idx, v| {
            let e = map.entry(idx).or_insert_with(Rational::zero);
            *e += v;
        });
        map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    } else {
        let mut dense: Vec<Option<Rational>> = vec![None; n];
        put(&mut |idx, v| match &mut dense[idx] {
            Some(c) => *c += v,
            slot @ None => *slot = Some(v),
        });
        dense
            .into_iter()
            .enumerate()
            .filter_map(|(i, c)| c.filter(|c| !c.is_zero()).map(|c| (i, c)))
            .collect()
    };
    CycloElem::from_terms(k, terms)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $f:ident) => {
        impl $tr<&CycloElem> for &CycloElem {
            type Output = CycloElem;
            fn $method(self, rhs: &CycloElem) -> CycloElem {
                $f(self, rhs)
            }
        }
        impl $tr<CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $method(self, rhs: CycloElem) -> CycloElem {
                $f(&self, &rhs)
            }
        }
        impl $tr<&CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $method(self, rhs: &CycloElem) -> CycloElem {
                $f(&self, rhs)
            }
        }
        impl $tr<CycloElem> for &CycloElem {
            type Output = CycloElem;
            fn $method(self, rhs: CycloElem) -> CycloElem {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            level: self.level,
            terms: self.terms.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        -&self
    }
}

impl From<i64> for CycloElem {
    fn from(n: i64) -> Self {
        CycloElem::from_int(n)
    }
}

impl From<Rational> for CycloElem {
    fn from(q: Rational) -> Self {
        CycloElem::from_rational(q)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::render_element(self))
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElem({})", crate::expr::render_element(self))
    }
}

/// Dense rational polynomial helpers for inversion modulo `x^N + 1`.
mod dense {
    use super::Rational;
    use num_traits::{One, Zero};

    fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    fn divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut rem = num.to_vec();
        trim(&mut rem);
        let dl = den.len();
        if rem.len() < dl {
            return (Vec::new(), rem);
        }
        let lead_inv = den[dl - 1].recip();
        let mut quot = vec![Rational::zero(); rem.len() - dl + 1];
        while rem.len() >= dl {
            let shift = rem.len() - dl;
            let q = &rem[rem.len() - 1] * &lead_inv;
            for (i, d) in den.iter().enumerate() {
                if !d.is_zero() {
                    rem[shift + i] -= &q * d;
                }
            }
            quot[shift] = q;
            trim(&mut rem);
        }
        (quot, rem)
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        trim(&mut out);
        out
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(&mut out);
        out
    }

    /// Extended Euclid: `u` with `u * p = 1 (mod x^n + 1)`, padded to length `n`.
    pub(super) fn inverse_mod_cyclotomic(p: Vec<Rational>, n: usize) -> Option<Vec<Rational>> {
        let mut modulus = vec![Rational::zero(); n + 1];
        modulus[0] = Rational::one();
        modulus[n] = Rational::one();
        let mut r0 = modulus.clone();
        let mut r1 = p;
        trim(&mut r1);
        let mut t0: Vec<Rational> = Vec::new();
        let mut t1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let t2 = sub(&t0, &mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.len() != 1 {
            return None;
        }
        let g_inv = r0[0].recip();
        let scaled: Vec<Rational> = t0.iter().map(|c| c * &g_inv).collect();
        let (_, mut rem) = divrem(&scaled, &modulus);
        rem.resize(n, Rational::zero());
        Some(rem)
    }
}
