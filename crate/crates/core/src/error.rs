use thiserror::Error;

use crate::algebra::laurent::Valuation;
use crate::algebra::text::ParseError;

/// Errors raised by the library.
///
/// The CLI maps [`Error::Parse`] and [`Error::InvalidField`] to usage
/// failures and everything else to domain failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient rings differ")]
    RingMismatch,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("invalid field descriptor `{0}` (expected `Q` or `Fp:<prime>`)")]
    InvalidField(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("requires field extension: {0}")]
    FieldExtension(String),
    #[error("degree 1 map has no indeterminacy point")]
    DegreeOne,
    #[error("not invertible over the coefficient ring: {0}")]
    NotInvertible(String),
    #[error("not algebraic: deg(f^2) > deg(f)")]
    NotAlgebraic,
    #[error("not special: Jacobian is {0}")]
    NotSpecial(String),
    #[error("pole at t=0 (valuation {0})")]
    Pole(Valuation),
    #[error("no pole at t=0 (valuation {0})")]
    NoPole(Valuation),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
