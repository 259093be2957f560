//! Factorization of plane automorphisms into affine and triangular factors.

pub mod factor;
pub mod henon;
pub mod word;

pub use factor::{AffineFactor, Factor, JonquieresFactor, Tag};
pub use henon::{henon_invariants, henon_normalize, HenonForm, HenonInvariants, Normalized};
pub use word::{elementary_factors, factor_map, AmalgamWord};
