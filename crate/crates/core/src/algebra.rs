//! The twisted group algebra of a cyclic group of order `2^n`, realized as
//! `K[x]/(x^(2^n) - a)` with `g = x`, and its minimal idempotents.

use std::fmt;
use std::sync::Arc;

use crate::binomial::{check_n, eps_pow, factorize, FactorCase, Poly};
use crate::error::{Error, Result};
use crate::membership::{height, HeightResult};
use crate::tower::{ratio, CycloElem, Tower};

/// The algebra defined by `g^(2^n) = a` over the chosen tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub n: u32,
    pub a: CycloElem,
    pub tower: Tower,
}

impl AlgebraSpec {
    pub fn new(n: u32, a: CycloElem, tower: Tower) -> Result<Arc<Self>> {
        check_n(n)?;
        if a.is_zero() {
            return Err(Error::ZeroArgument);
        }
        if !tower.is_member(&a) {
            return Err(Error::NotAMember(a.to_string()));
        }
        Ok(Arc::new(AlgebraSpec { n, a, tower }))
    }

    /// Dimension `2^n` over `K`.
    pub fn dim(&self) -> usize {
        1 << self.n
    }
}

/// `sum_j coeffs[j] g^j`.
#[derive(Clone)]
pub struct AlgebraElem {
    spec: Arc<AlgebraSpec>,
    coeffs: Vec<CycloElem>,
}

impl PartialEq for AlgebraElem {
    fn eq(&self, other: &Self) -> bool {
        same_spec(&self.spec, &other.spec) && self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraElem {}

impl fmt::Debug for AlgebraElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.coeffs.iter().map(|c| c.to_string()))
            .finish()
    }
}

fn same_spec(a: &Arc<AlgebraSpec>, b: &Arc<AlgebraSpec>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl AlgebraElem {
    pub fn zero(spec: &Arc<AlgebraSpec>) -> Self {
        AlgebraElem {
            spec: spec.clone(),
            coeffs: vec![CycloElem::zero(); spec.dim()],
        }
    }

    pub fn one(spec: &Arc<AlgebraSpec>) -> Self {
        let mut e = Self::zero(spec);
        e.coeffs[0] = CycloElem::one();
        e
    }

    /// `g^j` for `0 <= j < 2^n`.
    pub fn g_pow(spec: &Arc<AlgebraSpec>, j: usize) -> Self {
        let mut e = Self::zero(spec);
        e.coeffs[j % spec.dim()] = spec.a.pow_u((j / spec.dim()) as u64);
        e
    }

    pub fn from_coeffs(spec: &Arc<AlgebraSpec>, coeffs: Vec<CycloElem>) -> Result<Self> {
        if coeffs.len() != spec.dim() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                spec.dim(),
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| !spec.tower.is_member(c)) {
            return Err(Error::NotAMember(c.to_string()));
        }
        Ok(AlgebraElem {
            spec: spec.clone(),
            coeffs,
        })
    }

    /// Image of `p(x)` under `x -> g`, reducing `g^(2^n)` to `a`.
    pub fn from_poly(spec: &Arc<AlgebraSpec>, p: &Poly) -> Result<Self> {
        let dim = spec.dim();
        let mut coeffs = vec![CycloElem::zero(); dim];
        let mut power_of_a = CycloElem::one();
        for (block, chunk) in p.coeffs().chunks(dim).enumerate() {
            if block > 0 {
                power_of_a = &power_of_a * &spec.a;
            }
            for (j, c) in chunk.iter().enumerate() {
                if !c.is_zero() {
                    coeffs[j] = &coeffs[j] + &(c * &power_of_a);
                }
            }
        }
        Self::from_coeffs(spec, coeffs)
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[CycloElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloElem::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(CycloElem::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn scale(&self, c: &CycloElem) -> Self {
        AlgebraElem {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&CycloElem, &CycloElem) -> CycloElem,
    ) -> Result<Self> {
        if !same_spec(&self.spec, &other.spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(AlgebraElem {
            spec: self.spec.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| f(x, y))
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        alg_mul(self, other)
    }

    /// `self * g^shift`, as a cyclic shift that multiplies wrapped entries by `a`.
    fn mul_g_pow(&self, shift: usize) -> Vec<CycloElem> {
        let dim = self.spec.dim();
        let mut out = vec![CycloElem::zero(); dim];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = j + shift;
            out[k % dim] = if k >= dim {
                c * &self.spec.a
            } else {
                c.clone()
            };
        }
        out
    }
}

/// Product in `K^t<g>`: convolution with `g^(2^n)` folded back to `a`.
pub fn alg_mul(u: &AlgebraElem, v: &AlgebraElem) -> Result<AlgebraElem> {
    if !same_spec(&u.spec, &v.spec) {
        return Err(Error::SpecMismatch);
    }
    let dim = u.spec.dim();
    let mut low = vec![CycloElem::zero(); dim];
    let mut high = vec![CycloElem::zero(); dim];
    for (i, x) in u.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in v.coeffs.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let k = i + j;
            let slot = if k >= dim {
                &mut high[k - dim]
            } else {
                &mut low[k]
            };
            *slot = &*slot + &(x * y);
        }
    }
    for (l, h) in low.iter_mut().zip(&high) {
        if !h.is_zero() {
            *l = &*l + &(h * &u.spec.a);
        }
    }
    Ok(AlgebraElem {
        spec: u.spec.clone(),
        coeffs: low,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    E(usize),
    F(usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::E(i) => write!(f, "e_{i}"),
            Label::F(k) => write!(f, "f_{k}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct IdempotentSet {
    pub spec: Arc<AlgebraSpec>,
    pub case: FactorCase,
    pub height: HeightResult,
    pub members: Vec<(Label, AlgebraElem)>,
}

/// Builds `(1/2^s) sum_j coef(j) g^(2^(n-s) j)`.
fn spread(spec: &Arc<AlgebraSpec>, s: u32, coef: impl Fn(i64) -> CycloElem) -> AlgebraElem {
    let step = 1usize << (spec.n - s);
    let norm = ratio(1, 1i64 << s);
    let mut e = AlgebraElem::zero(spec);
    for j in 0..1i64 << s {
        e.coeffs[j as usize * step] = coef(j).scale(&norm);
    }
    e
}

/// The minimal idempotents of the algebra, in the same order as the
/// irreducible factors emitted by [`factorize`], verified before return.
pub fn idempotents(spec: &Arc<AlgebraSpec>) -> Result<IdempotentSet> {
    let h = height(&spec.a, spec.n, &spec.tower)?;
    let case = FactorCase::for_height(spec.tower.field, &h);
    let s = h.s;
    let b_inv = h.witness.invert()?;
    let b_inv_pows: Vec<CycloElem> =
        std::iter::successors(Some(CycloElem::one()), |p| Some(p * &b_inv))
            .take(1 << s)
            .collect();
    let bp = |j: i64| b_inv_pows[j as usize].clone();

    let members: Vec<(Label, AlgebraElem)> = match case {
        FactorCase::Case1SplitTower => (0..1i64 << s)
            .map(|i| {
                (
                    Label::E(i as usize),
                    spread(spec, s, |j| &eps_pow(s, -i * j) * &bp(j)),
                )
            })
            .collect(),
        FactorCase::Case2Irreducible => vec![(Label::E(0), AlgebraElem::one(spec))],
        FactorCase::Case3FirstKind => {
            let mut out = vec![
                (Label::F(1), spread(spec, s, bp)),
                (
                    Label::F(2),
                    spread(spec, s, |j| if j % 2 == 0 { bp(j) } else { -bp(j) }),
                ),
            ];
            for i in 1..1i64 << (s - 1) {
                let e = spread(spec, s, |j| {
                    &(&eps_pow(s, i * j) + &eps_pow(s, -i * j)) * &bp(j)
                });
                out.push((Label::E(i as usize), e));
            }
            out
        }
        FactorCase::Case4SecondKind => (0..1i64 << (s - 1))
            .map(|i| {
                let e = spread(spec, s, |j| {
                    let c = &eps_pow(s, i * j + j) + &eps_pow(s, -i * j);
                    &(&c * &CycloElem::zeta_pow(s + 1, -j)) * &bp(j)
                });
                (Label::E(i as usize), e)
            })
            .collect(),
    };

    for (label, e) in &members {
        if let Some(c) = e.coeffs.iter().find(|c| !spec.tower.is_member(c)) {
            return Err(Error::InternalVerificationFailure(format!(
                "{label} has coefficient {c} outside the field"
            )));
        }
    }
    let set = IdempotentSet {
        spec: spec.clone(),
        case,
        height: h,
        members,
    };
    let report = verify_system(&set);
    if !report.all_passed() {
        return Err(Error::InternalVerificationFailure(format!(
            "idempotent system failed verification: {report:?}"
        )));
    }
    Ok(set)
}

/// Outcome of the exact checks on an idempotent system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// `e * e = e`, per member.
    pub idempotent: Vec<bool>,
    /// Index pairs whose product is nonzero.
    pub non_orthogonal: Vec<(usize, usize)>,
    /// Members sum to 1.
    pub complete: bool,
    /// Member count equals factor count equals the case formula.
    pub count_matches: bool,
    /// `phi_i(g) * e_i = 0` under positional pairing.
    pub annihilated: Vec<bool>,
    /// `dim_K(e_i A)`, `None` when the member is not idempotent.
    pub dimensions: Vec<Option<usize>>,
    pub factor_degrees: Vec<usize>,
    pub factorization_error: Option<String>,
}

impl VerificationReport {
    pub fn orthogonal(&self) -> bool {
        self.non_orthogonal.is_empty()
    }

    pub fn dimensions_match(&self) -> bool {
        self.dimensions.len() == self.factor_degrees.len()
            && self
                .dimensions
                .iter()
                .zip(&self.factor_degrees)
                .all(|(d, f)| *d == Some(*f))
    }

    pub fn all_passed(&self) -> bool {
        self.factorization_error.is_none()
            && self.idempotent.iter().all(|b| *b)
            && self.orthogonal()
            && self.complete
            && self.count_matches
            && self.annihilated.iter().all(|b| *b)
            && self.dimensions_match()
    }
}

/// Runs every exact check on an idempotent system; failures become report entries.
pub fn verify_system(set: &IdempotentSet) -> VerificationReport {
    let spec = &set.spec;
    let members: Vec<&AlgebraElem> = set.members.iter().map(|(_, e)| e).collect();
    let prod = |x: &AlgebraElem, y: &AlgebraElem| alg_mul(x, y).ok();

    let idempotent: Vec<bool> = members
        .iter()
        .map(|e| prod(e, e).is_some_and(|ee| ee == **e))
        .collect();

    let mut non_orthogonal = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if !prod(members[i], members[j]).is_some_and(|p| p.is_zero()) {
                non_orthogonal.push((i, j));
            }
        }
    }

    let complete = members
        .iter()
        .try_fold(AlgebraElem::zero(spec), |acc, e| acc.add(e).ok())
        .is_some_and(|sum| sum.is_one());

    let dimensions: Vec<Option<usize>> = members
        .iter()
        .map(|e| component_dimension(e).ok())
        .collect();

    let (factors, factorization_error) = match factorize(spec.n, &spec.a, &spec.tower) {
        Ok(f) => (f.factors, None),
        Err(err) => (Vec::new(), Some(err.to_string())),
    };
    let factor_degrees: Vec<usize> = factors.iter().filter_map(Poly::degree).collect();
    let count_matches =
        members.len() == factors.len() && members.len() == set.case.expected_count(set.height.s);

    let annihilated: Vec<bool> = members
        .iter()
        .enumerate()
        .map(|(i, e)| {
            factors
                .get(i)
                .and_then(|phi| AlgebraElem::from_poly(spec, phi).ok())
                .and_then(|phi_g| prod(&phi_g, e))
                .is_some_and(|p| p.is_zero())
        })
        .collect();

    VerificationReport {
        idempotent,
        non_orthogonal,
        complete,
        count_matches,
        annihilated,
        dimensions,
        factor_degrees,
        factorization_error,
    }
}

/// `dim_K(e A)` for an idempotent `e`: the rank of `y -> e y`.
///
/// The map is `K`-linear, so its rank over `Q` on the rational coordinates is
/// `d` times its rank over the coefficient field, where `d` is the degree of
/// that field over `Q`; the elimination runs over the coefficient field.
pub fn component_dimension(e: &AlgebraElem) -> Result<usize> {
    if alg_mul(e, e)? != *e {
        return Err(Error::NotIdempotent);
    }
    let dim = e.spec.dim();
    // column c holds the coordinates of e * g^c
    let columns: Vec<Vec<CycloElem>> = (0..dim).map(|c| e.mul_g_pow(c)).collect();
    let rows: Vec<Vec<CycloElem>> = (0..dim)
        .map(|r| columns.iter().map(|col| col[r].clone()).collect())
        .collect();
    Ok(rank(rows))
}

/// Rank of a matrix over the cyclotomic field by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<CycloElem>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        // cheapest pivot: fewest power-basis terms
        let Some(p) = (rank..rows.len())
            .filter(|r| !rows[*r][col].is_zero())
            .min_by_key(|r| rows[*r][col].terms().len())
        else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].invert().expect("nonzero pivot");
        let pivot: Vec<CycloElem> = rows[rank]
            .iter()
            .map(|x| if x.is_zero() { x.clone() } else { x * &inv })
            .collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col].clone();
            if f.is_zero() {
                continue;
            }
            for (k, pk) in pivot.iter().enumerate().skip(col) {
                if !pk.is_zero() {
                    row[k] = &row[k] - &(&f * pk);
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}
