//! One-parameter families over K[t, t⁻¹], their behavior at `t = 0`, and
//! explicit degenerations of conjugacy classes.

pub mod family;
pub mod witness;

pub use family::{
    conjugate_family, diagonal, family_at, family_inverse, family_valuation, family_value_at_zero, lift,
    pole_propagation_check, substitute_power, x_alpha, PolePropagation, TFamily, XAlphaSet,
};
pub use witness::{
    degenerate_family_ii, degenerate_family_iii, degenerate_family_iv, specialization_points, Check,
    DegenerationWitness, TranslationParameters, Variant,
};
