//! Factorization of `x^(2^n) - a` into irreducible factors over the chosen tower.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::membership::{height, pow2_root, sqrt_in_tower, HeightResult, Kind};
use crate::tower::{ratio, CycloElem, FieldSpec, Tower};

/// Largest supported `n` in `x^(2^n) - a`.
pub const MAX_N: u32 = 12;

/// Dense univariate polynomial over the tower; `coeffs[d]` is the coefficient of `x^d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<CycloElem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<CycloElem>) -> Self {
        while coeffs.last().is_some_and(CycloElem::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(CycloElem::one())
    }

    pub fn constant(c: CycloElem) -> Self {
        Poly::new(vec![c])
    }

    /// `x^m - alpha`.
    pub fn binomial(m: usize, alpha: &CycloElem) -> Self {
        let mut coeffs = vec![CycloElem::zero(); m + 1];
        coeffs[0] = -alpha;
        coeffs[m] = CycloElem::one();
        Poly::new(coeffs)
    }

    /// `x^(2m) + p x^m + q`.
    pub fn quadratic_in(m: usize, p: &CycloElem, q: &CycloElem) -> Self {
        let mut coeffs = vec![CycloElem::zero(); 2 * m + 1];
        coeffs[0] = q.clone();
        coeffs[m] = &coeffs[m] + p;
        coeffs[2 * m] = CycloElem::one();
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[CycloElem] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> CycloElem {
        self.coeffs.get(d).cloned().unwrap_or_else(CycloElem::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&CycloElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(CycloElem::is_one)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![CycloElem::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|d| self.coeff(d) - other.coeff(d)).collect())
    }

    pub fn scale(&self, c: &CycloElem) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Euclidean division by a nonzero polynomial.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dl = divisor.coeffs.len();
        let lead_inv = divisor.leading().ok_or(Error::DivisionByZero)?.invert()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![CycloElem::zero(); rem.len().saturating_sub(dl) + 1];
        while rem.len() >= dl {
            let top = rem.len() - 1;
            let shift = top - (dl - 1);
            let q = &rem[top] * &lead_inv;
            if !q.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] = &rem[shift + i] - &(&q * d);
                }
            }
            quot[shift] = q;
            rem.pop();
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Value at a complex point under the embedding `zeta(k) -> exp(2 pi i / 2^k)`.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_complex())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.coeffs.iter().map(|c| c.to_string()))
            .finish()
    }
}

/// Exact product of a list of polynomials (the empty product is 1).
pub fn expand_product(factors: &[Poly]) -> Poly {
    factors.iter().fold(Poly::one(), |acc, f| acc.mul(f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorCase {
    /// Full tower: `2^s` binomial factors `x^(2^(n-s)) - b zeta_s^i`.
    Case1SplitTower,
    /// Real tower with `s = 0`, or `s = 1` and `a` of the second kind.
    Case2Irreducible,
    /// Real tower, `s >= 1`, first kind.
    Case3FirstKind,
    /// Real tower, `s >= 2`, second kind.
    Case4SecondKind,
}

impl FactorCase {
    pub fn number(self) -> u8 {
        match self {
            FactorCase::Case1SplitTower => 1,
            FactorCase::Case2Irreducible => 2,
            FactorCase::Case3FirstKind => 3,
            FactorCase::Case4SecondKind => 4,
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            FactorCase::Case1SplitTower => "split tower",
            FactorCase::Case2Irreducible => "irreducible",
            FactorCase::Case3FirstKind => "first kind",
            FactorCase::Case4SecondKind => "second kind",
        }
    }

    /// Expected number of irreducible factors (and of minimal idempotents).
    pub fn expected_count(self, s: u32) -> usize {
        match self {
            FactorCase::Case1SplitTower => 1 << s,
            FactorCase::Case2Irreducible => 1,
            FactorCase::Case3FirstKind => (1 << (s - 1)) + 1,
            FactorCase::Case4SecondKind => 1 << (s - 1),
        }
    }

    pub fn for_height(field: FieldSpec, h: &HeightResult) -> Self {
        match (field, h.s, h.kind) {
            (FieldSpec::FullTower, _, _) => FactorCase::Case1SplitTower,
            (FieldSpec::RealTower, 0, _) | (FieldSpec::RealTower, 1, Kind::Second) => {
                FactorCase::Case2Irreducible
            }
            (FieldSpec::RealTower, _, Kind::First) => FactorCase::Case3FirstKind,
            (FieldSpec::RealTower, _, Kind::Second) => FactorCase::Case4SecondKind,
        }
    }
}

impl fmt::Display for FactorCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.number(), self.description())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub case: FactorCase,
    pub n: u32,
    pub a: CycloElem,
    pub height: HeightResult,
    pub factors: Vec<Poly>,
}

pub(crate) fn check_n(n: u32) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "n must lie in 1..={MAX_N}, got {n}"
        )))
    }
}

pub fn classify(n: u32, a: &CycloElem, tower: &Tower) -> Result<FactorCase> {
    check_n(n)?;
    let h = height(a, n, tower)?;
    Ok(FactorCase::for_height(tower.field, &h))
}

/// `zeta_s^i`, with `zeta_0 = 1`.
pub(crate) fn eps_pow(s: u32, i: i64) -> CycloElem {
    if s == 0 {
        CycloElem::one()
    } else {
        CycloElem::zeta_pow(s, i)
    }
}

/// The factor list of the given case for witness `b`, in emission order.
pub fn factors_from_witness(
    case: FactorCase,
    n: u32,
    s: u32,
    a: &CycloElem,
    b: &CycloElem,
) -> Vec<Poly> {
    let m = 1usize << (n - s);
    let b2 = b * b;
    match case {
        FactorCase::Case1SplitTower => (0..1i64 << s)
            .map(|i| Poly::binomial(m, &(b * &eps_pow(s, i))))
            .collect(),
        FactorCase::Case2Irreducible => vec![Poly::binomial(1 << n, a)],
        FactorCase::Case3FirstKind => {
            let mut out = vec![Poly::binomial(m, b), Poly::binomial(m, &-b)];
            for i in 1..1i64 << (s - 1) {
                let c = &eps_pow(s, i) + &eps_pow(s, -i);
                out.push(Poly::quadratic_in(m, &-(&c * b), &b2));
            }
            out
        }
        FactorCase::Case4SecondKind => {
            let lift = CycloElem::zeta(s + 1);
            (0..1i64 << (s - 1))
                .map(|i| {
                    let c = &(&eps_pow(s, i) + &eps_pow(s, -i - 1)) * &lift;
                    Poly::quadratic_in(m, &-(&c * b), &b2)
                })
                .collect()
        }
    }
}

/// Splits `x^(2^n) - a` into irreducible factors and checks the product exactly.
pub fn factorize(n: u32, a: &CycloElem, tower: &Tower) -> Result<Factorization> {
    check_n(n)?;
    let h = height(a, n, tower)?;
    let case = FactorCase::for_height(tower.field, &h);
    let factors = factors_from_witness(case, n, h.s, a, &h.witness);

    for f in &factors {
        if !f.is_monic() {
            return Err(Error::InternalVerificationFailure(format!(
                "factor {f:?} is not monic"
            )));
        }
        if let Some(c) = f.coeffs().iter().find(|c| !tower.is_member(c)) {
            return Err(Error::InternalVerificationFailure(format!(
                "factor {f:?} has coefficient {c} outside the field"
            )));
        }
    }
    if factors.len() != case.expected_count(h.s) {
        return Err(Error::InternalVerificationFailure(format!(
            "case {case} produced {} factors",
            factors.len()
        )));
    }
    let target = Poly::binomial(1 << n, a);
    if expand_product(&factors) != target {
        return Err(Error::InternalVerificationFailure(format!(
            "factors of x^{} - ({a}) do not multiply back",
            1u64 << n
        )));
    }
    Ok(Factorization {
        case,
        n,
        a: a.clone(),
        height: h,
        factors,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// The square root (or fourth root) that splits the polynomial.
    Reducible {
        witness: CycloElem,
    },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Decides irreducibility of binomials `x^m - alpha` (`m` a power of 2),
/// quadratics, and quadratics in `x^m`.
///
/// Quadratics in `x^m` over the real tower are handled through the full tower:
/// if the discriminant has a root there but not in `K`, the polynomial is
/// `(x^m - rho)(x^m - conj(rho))` and is irreducible over `K` exactly when
/// `x^m - rho` is irreducible over `K(i)`.
pub fn irreducibility_witness(p: &Poly, tower: &Tower) -> Result<Irreducibility> {
    let Some(deg) = p.degree().filter(|d| *d >= 1) else {
        return Err(Error::UnsupportedShape("constant polynomial".into()));
    };
    if let Some(c) = p.coeffs().iter().find(|c| !tower.is_member(c)) {
        return Err(Error::NotAMember(c.to_string()));
    }
    if deg == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let p = p.scale(&p.leading().expect("nonzero").invert()?);
    let support: Vec<usize> = (0..deg).filter(|d| !p.coeff(*d).is_zero()).collect();

    if deg.is_power_of_two() && support.iter().all(|d| *d == 0) {
        let alpha = -p.coeff(0);
        if alpha.is_zero() {
            return Ok(Irreducibility::Reducible { witness: alpha });
        }
        return binomial_irreducibility(deg, &alpha, tower);
    }
    if deg == 2 {
        return quadratic_irreducibility(&p.coeff(1), &p.coeff(0), tower);
    }
    if deg == 4 && support.iter().all(|d| *d == 0 || *d == 2) {
        let (pm, q) = (p.coeff(2), p.coeff(0));
        if q.is_zero() {
            return Ok(Irreducibility::Reducible { witness: q });
        }
        let disc = &(&pm * &pm) - &q.scale(&ratio(4, 1));
        if disc.is_zero() {
            return Ok(Irreducibility::Reducible { witness: disc });
        }
        if let Some(r) = sqrt_in_tower(&disc, tower)? {
            return Ok(Irreducibility::Reducible { witness: r });
        }
        let full = Tower {
            field: FieldSpec::FullTower,
            ..*tower
        };
        if tower.field == FieldSpec::RealTower {
            if let Some(r) = sqrt_in_tower(&disc, &full)? {
                let rho = (&r - &pm).scale(&ratio(1, 2));
                return Ok(match sqrt_in_tower(&rho, &full)? {
                    Some(w) => Irreducibility::Reducible { witness: w },
                    None => Irreducibility::Irreducible,
                });
            }
        }
        return Err(Error::UnsupportedShape(
            "discriminant has no square root in the full tower".into(),
        ));
    }
    Err(Error::UnsupportedShape(format!("{p:?}")))
}

fn binomial_irreducibility(m: usize, alpha: &CycloElem, tower: &Tower) -> Result<Irreducibility> {
    if let Some(w) = sqrt_in_tower(alpha, tower)? {
        return Ok(Irreducibility::Reducible { witness: w });
    }
    if tower.field == FieldSpec::RealTower && m >= 4 {
        // -4K^4 = -K^4 because 4 = cosgen(3)^4
        if let Some(w) = pow2_root(&-alpha, 2, tower)? {
            return Ok(Irreducibility::Reducible { witness: w });
        }
    }
    Ok(Irreducibility::Irreducible)
}

fn quadratic_irreducibility(p: &CycloElem, q: &CycloElem, tower: &Tower) -> Result<Irreducibility> {
    let disc = &(p * p) - &q.scale(&ratio(4, 1));
    if disc.is_zero() {
        return Ok(Irreducibility::Reducible { witness: disc });
    }
    Ok(match sqrt_in_tower(&disc, tower)? {
        Some(w) => Irreducibility::Reducible { witness: w },
        None => Irreducibility::Irreducible,
    })
}
