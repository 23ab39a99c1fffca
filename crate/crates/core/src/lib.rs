//! Exact factorization of `x^(2^n) - a` over fields of the second kind with
//! respect to 2, and the minimal idempotents of the twisted group algebra of
//! a cyclic group of order `2^n`.
//!
//! Two concrete fields are available: the real 2-power cyclotomic tower
//! `K = U_k Q(zeta_{2^k} + zeta_{2^k}^-1)` ([`FieldSpec::RealTower`]) and the
//! full tower `K = U_k Q(zeta_{2^k})` ([`FieldSpec::FullTower`]).
//!
//! ```
//! use cyclotwist::{factorize, CycloElem, Tower};
//!
//! // x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2)
//! let f = factorize(2, &CycloElem::from_int(-4), &Tower::real()).unwrap();
//! assert_eq!(f.factors.len(), 2);
//! ```

pub mod algebra;
pub mod binomial;
pub mod cli;
pub mod error;
pub mod expr;
pub mod membership;
pub mod tower;

pub use algebra::{
    alg_mul, component_dimension, idempotents, verify_system, AlgebraElem, AlgebraSpec,
    IdempotentSet, Label, VerificationReport,
};
pub use binomial::{
    classify, expand_product, factorize, irreducibility_witness, FactorCase, Factorization,
    Irreducibility, Poly,
};
pub use error::{Error, Result};
pub use expr::{parse_element, parse_element_with, render_element};
pub use membership::{height, pow2_root, rational_sqrt, sqrt_in_tower, HeightResult, Kind};
pub use tower::{CycloElem, FieldSpec, Rational, Tower};
