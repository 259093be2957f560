//! Normal forms and conjugacy decisions for plane automorphisms.

pub mod charp;
pub mod decide;
pub mod normal_form;

pub use charp::{decompose_v_delta, delta_map, in_v, n_map, CharPDecomposition};
pub use decide::{
    are_conjugate, are_conjugate_algebraic, conjugates, minimize_conjugator, verify_conjugacy_certificate,
    AlgebraicDecision, CertificateReport, Verdict,
};
pub use normal_form::{normal_form, NormalForm, NormalFormResult};
