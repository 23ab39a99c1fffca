//! Square roots and 2-power roots inside the towers, and the 2-height `H_n(a)`.
//!
//! Square roots are decided in the infinite union `L = U_k L_k`: for `a` at
//! level `k >= 2` any square root in `L` already lies in `L_{k+1}`, because the
//! Galois group of `L` over `L_k` is procyclic and has a single quadratic
//! subextension. Rationals are lifted to level 2 first (their quadratic
//! subfields `Q(i)`, `Q(sqrt 2)`, `Q(sqrt -2)` all sit in `L_3`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::tower::{ratio, CycloElem, FieldSpec, Rational, Tower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// `a` is a `2^s`-th power in `K`.
    First,
    /// `-a` is a `2^s`-th power in `K`.
    Second,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::First => "first",
            Kind::Second => "second",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `H_n(a) = s` together with the kind of `a` and a witness `b` in `K`
/// with `b^(2^s) = a` (first kind) or `b^(2^s) = -a` (second kind).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightResult {
    pub s: u32,
    pub kind: Kind,
    pub witness: CycloElem,
}

fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Nonnegative square root in `Q`, if `q` is a rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let num = integer_sqrt_exact(q.numer())?;
    let den = integer_sqrt_exact(q.denom())?;
    Some(Rational::new(num, den))
}

/// A square root of a rational somewhere in the full tower, using
/// `sqrt(-1) = zeta(2)` and `sqrt(2) = cosgen(3)`.
fn rational_sqrt_in_tower(q: &Rational) -> Option<CycloElem> {
    if q.is_zero() {
        return Some(CycloElem::zero());
    }
    let i = CycloElem::zeta(2);
    let sqrt2 = CycloElem::cosgen(3);
    let half = ratio(1, 2);
    if let Some(r) = rational_sqrt(q) {
        return Some(CycloElem::from_rational(r));
    }
    if let Some(r) = rational_sqrt(&-q) {
        return Some(i.scale(&r));
    }
    if let Some(r) = rational_sqrt(&(q * &half)) {
        return Some(sqrt2.scale(&r));
    }
    if let Some(r) = rational_sqrt(&-(q * &half)) {
        return Some((&i * &sqrt2).scale(&r));
    }
    None
}

/// A square root of `x` inside the fixed level `L_m` (`x` must lie in `L_m`).
///
/// Writing `x = x0 + x1 z` with `z = zeta(m)` and a root `u + v z`, we need
/// `u^2 + v^2 z^2 = x0` and `2uv = x1`. The relative norm `x0^2 - x1^2 z^2`
/// must then be a square `rho^2` in `L_{m-1}`, and `u^2 = (x0 + rho) / 2`.
pub fn sqrt_in_level(x: &CycloElem, m: u32) -> Option<CycloElem> {
    debug_assert!(x.level() <= m);
    if x.is_zero() {
        return Some(CycloElem::zero());
    }
    if let Some((c, j)) = x.as_monomial() {
        // the roots of c z_k^j are +-sqrt(c) z_{k+1}^j
        let r = rational_sqrt_in_tower(c)?;
        let beta = &r * &CycloElem::zeta_pow(x.level() + 1, j as i64);
        return (beta.level() <= m).then_some(beta);
    }
    // non-monomials live at level >= 2
    let (x0, x1) = x.split(m);
    let z_prev = CycloElem::zeta(m - 1);
    if x1.is_zero() {
        if let Some(u) = sqrt_in_level(&x0, m - 1) {
            return Some(u);
        }
        let shifted = &x0 * &CycloElem::zeta_pow(m - 1, -1);
        return sqrt_in_level(&shifted, m - 1).map(|v| &v * &CycloElem::zeta(m));
    }
    let disc = &(&x0 * &x0) - &(&(&x1 * &x1) * &z_prev);
    let rho = sqrt_in_level(&disc, m - 1)?;
    let half = ratio(1, 2);
    for rho in [rho.clone(), -rho] {
        let t = (&x0 + &rho).scale(&half);
        if t.is_zero() {
            continue;
        }
        let Some(u) = sqrt_in_level(&t, m - 1) else {
            continue;
        };
        let v = x1.scale(&half) * u.invert().expect("nonzero");
        let beta = &u + &(&v * &CycloElem::zeta(m));
        if &beta * &beta == *x {
            return Some(beta);
        }
    }
    None
}

/// A member square root of `a` in the chosen tower, or `None`.
pub fn sqrt_in_tower(a: &CycloElem, tower: &Tower) -> Result<Option<CycloElem>> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let k = a.level().max(2);
    tower.check_level(k + 1)?;
    let root = sqrt_in_level(a, k).or_else(|| {
        let shifted = a * &CycloElem::zeta_pow(k, -1);
        sqrt_in_level(&shifted, k).map(|v| &v * &CycloElem::zeta(k + 1))
    });
    let Some(beta) = root else {
        return Ok(None);
    };
    if &beta * &beta != *a {
        return Err(Error::InternalVerificationFailure(format!(
            "square root {beta} does not square to {a}"
        )));
    }
    let beta = match tower.field {
        FieldSpec::FullTower => beta,
        // conj(beta) = +-beta; only the fixed case gives a real root
        FieldSpec::RealTower if beta.is_real() => beta,
        FieldSpec::RealTower => return Ok(None),
    };
    Ok(Some(if beta.leading_sign() < 0 { -beta } else { beta }))
}

/// One squaring-root stage over a set of member roots.
fn next_stage(current: &[CycloElem], tower: &Tower) -> Result<Vec<CycloElem>> {
    match tower.field {
        // every 2^s-th root of a in the full tower is one root times a root of
        // unity, so a single representative carries the whole stage
        FieldSpec::FullTower => match current.first() {
            Some(beta) => Ok(sqrt_in_tower(beta, tower)?.into_iter().collect()),
            None => Ok(Vec::new()),
        },
        FieldSpec::RealTower => {
            let mut next: Vec<CycloElem> = Vec::new();
            for beta in current {
                if let Some(r) = sqrt_in_tower(beta, tower)? {
                    for cand in [-&r, r] {
                        if !next.contains(&cand) {
                            next.push(cand);
                        }
                    }
                }
            }
            Ok(next)
        }
    }
}

/// Deterministic choice among equivalent witnesses: positive leading
/// coefficient first, then the smallest canonical form.
fn pick_witness(roots: &[CycloElem]) -> Option<CycloElem> {
    roots
        .iter()
        .map(|r| if r.leading_sign() < 0 { -r } else { r.clone() })
        .min_by(|a, b| a.canonical_cmp(b))
}

/// Some member `b` with `b^(2^s) = a`, if one exists.
pub fn pow2_root(a: &CycloElem, s: u32, tower: &Tower) -> Result<Option<CycloElem>> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    if s == 0 {
        return Ok(tower.is_member(a).then(|| a.clone()));
    }
    let mut stage = vec![a.clone()];
    for _ in 0..s {
        stage = next_stage(&stage, tower)?;
        if stage.is_empty() {
            return Ok(None);
        }
    }
    let b = pick_witness(&stage).expect("nonempty stage");
    if b.pow2k(s) != *a {
        return Err(Error::InternalVerificationFailure(format!(
            "2^{s}-th root {b} does not re-raise to {a}"
        )));
    }
    Ok(Some(b))
}

/// The `n`-height of `a`: the largest `s <= n` with `a` in `K^(2^s)` or `-K^(2^s)`.
pub fn height(a: &CycloElem, n: u32, tower: &Tower) -> Result<HeightResult> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    if !tower.is_member(a) {
        return Err(Error::NotAMember(a.to_string()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut best = HeightResult {
        s: 0,
        kind: Kind::First,
        witness: a.clone(),
    };
    let mut plus = vec![a.clone()];
    let mut minus = vec![-a];
    for s in 1..=n {
        plus = next_stage(&plus, tower)?;
        minus = next_stage(&minus, tower)?;
        if tower.field == FieldSpec::RealTower && !plus.is_empty() && !minus.is_empty() {
            return Err(Error::InternalVerificationFailure(format!(
                "{a} is both a 2^{s}-th power and minus a 2^{s}-th power in the real tower"
            )));
        }
        best = if let Some(b) = pick_witness(&plus) {
            HeightResult {
                s,
                kind: Kind::First,
                witness: b,
            }
        } else if let Some(b) = pick_witness(&minus) {
            HeightResult {
                s,
                kind: Kind::Second,
                witness: b,
            }
        } else {
            break;
        };
    }
    let raised = best.witness.pow2k(best.s);
    let target = match best.kind {
        Kind::First => a.clone(),
        Kind::Second => -a,
    };
    if raised != target {
        return Err(Error::InternalVerificationFailure(format!(
            "height witness {} does not re-raise to {target}",
            best.witness
        )));
    }
    Ok(best)
}
