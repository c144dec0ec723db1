//! Scalar fields, polynomials, extension fields and dense linear algebra.

pub mod ext;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod spec;

pub use ext::ExtField;
pub use field::{is_prime, parse_rational, Field, Irreducibility, PrimeField, Rationals};
pub use linalg::Matrix;
pub use poly::{factor_over, Poly};
pub use spec::AnyField;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial `{0}` is not monic")]
    NotMonic(String),
    #[error("polynomial `{0}` is not irreducible")]
    NotIrreducible(String),
    #[error("irreducibility of `{0}` cannot be decided over this field; pass it as trusted")]
    IrreducibilityUnknown(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live over different fields")]
    FieldMismatch,
}
