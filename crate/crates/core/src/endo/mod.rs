//! Polynomial endomorphisms, their behavior at infinity, and plane
//! automorphisms.

pub mod infinity;
pub mod map;
pub mod plane;

pub use infinity::{image_point_at_infinity, indeterminacy_point, InfinityPoint};
pub use map::Endo;
pub use plane::{degree_multiplicativity_test, MultiplicativityReport, PlaneAut, RegularityReport};
