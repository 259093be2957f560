//! Exact coefficient rings, sparse polynomials and the text grammar.

pub mod field;
pub mod laurent;
pub mod poly;
pub mod text;
pub mod unipoly;

pub use field::{Ring, RootSearch, Scalar, ScalarField};
pub use laurent::{LaurentRing, LaurentScalar, Valuation};
pub use poly::{Degree, Monomial, MultiPoly};
pub use unipoly::UniPoly;
