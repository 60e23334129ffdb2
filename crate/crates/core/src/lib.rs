pub mod borcherds;
pub mod cli;
pub mod error;
pub mod limit;
pub mod linalg;
pub mod orbifold;
pub mod perm;
pub mod ring;
pub mod scalar;
pub mod seed;
pub mod tensor;

pub use error::{Error, Result};
pub use ring::Ring;
pub use scalar::{RadicalScalar, Rational};
