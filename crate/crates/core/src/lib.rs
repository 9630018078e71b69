//! Braid-group cryptanalysis workbench.

pub mod attack;
pub mod braid;
pub mod error;
pub mod extract;
pub mod protocol;
pub mod solve;
pub mod subgroup;

pub use error::{Error, Result};
