pub mod algebra;
pub mod amalgam;
pub mod cli;
pub mod conjugacy;
pub mod degeneration;
pub mod endo;
pub mod error;

pub use error::{Error, Result};
