//! Two-qubit gate classes: Cartan coordinates and KAK, Weyl-chamber symmetries,
//! quantum Littlewood–Richardson inequalities, two-application coverage
//! polytopes and circuit synthesis.

pub mod cartan;
pub mod cli;
pub mod coverage;
pub mod error;
pub mod gates;
pub mod exact;
pub mod families;
pub mod numerics;
pub mod qlr;
pub mod symmetry;
pub mod synthesis;

pub use error::{Error, Result};
