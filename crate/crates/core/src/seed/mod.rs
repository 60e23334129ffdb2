//! Seed vertex algebras from generator mode algebras.

mod algebra;
mod va;
mod word;

pub use algebra::{Brackets, Generator, ModeAlgebra, SeedSpec};
pub use va::SeedVA;
pub use word::{add_term, axpy, single, DisplayVector, Mode, Vector, Word};
