//! Exact verification of Rota-Baxter operators, r-matrices and reflection equations
//! on finite-dimensional Lie algebras over the Gaussian rationals.

pub mod bialgebra;
pub mod catalog;
pub mod error;
pub mod groupeval;
pub mod lie;
pub mod relative;
pub mod linalg;
pub mod rotabaxter;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::GaussRat;
