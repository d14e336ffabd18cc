//! Exact polynomial arithmetic, term orders, division, Gröbner verification,
//! variable quotients and standard-monomial counts.

pub mod division;
pub mod groebner;
pub mod hilbert;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod quotient;
pub mod text;

pub use division::{divide, s_polynomial, Division};
pub use groebner::{
    groebner_basis, normal_form, verify_groebner, GBCertificate, GbStatus, Limits, PairStats,
};
pub use hilbert::{standard_monomial_count, Grading, MultiDegree};
pub use matrix::poly_det;
pub use monomial::{Monomial, Var};
pub use order::{OrderKind, Scheme, TermOrder};
pub use poly::{q_int, IntEvaluator, Polynomial, Q};
pub use quotient::{
    is_multilinear, is_radical_certified, is_well_supported, quotient_by_variable, QuotientMode,
};
pub use text::{format_poly, parse_poly, NamedVars, VarNames};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("certificate is not verified")]
    UnverifiedBasis,
    #[error("total degree {total} exceeds {max}")]
    DegreeTooLarge { total: u32, max: u32 },
}
