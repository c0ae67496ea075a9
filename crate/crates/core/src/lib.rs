pub mod canonical;
pub mod cli;
pub mod cosine;
pub mod error;
pub mod flat_reference;
pub mod geometry;
pub mod kernel;
pub mod linalg;
pub mod output;
pub mod quadrature;
pub mod solver;
pub mod spectral;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
