pub mod applications;
pub mod budget;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod matrix;
pub mod mc;
pub mod model;
pub mod multivariate;
pub mod numeric;
pub mod univariate;

#[cfg(test)]
mod testutil;

pub use error::{Error, ErrorClass, Result};
pub use matrix::ComplexMatrix;
pub use model::{Convention, TraceCache, WishartParams};
pub use numeric::C64;
