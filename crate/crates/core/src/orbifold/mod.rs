//! Permutation orbifolds: orbit bases, connecting maps and structure constants.

mod constants;
mod mfactor;
mod tower;

pub use constants::{Method, OligoDecomposition, OligoTerm, OrbifoldVA, GROUP_SUM_BUDGET};
pub use mfactor::{
    m_exponent, m_factor, m_factor_product_form, m_limit, m_squared_from_shapes, place_configuration, symmetric_m,
    triple_product_size,
};
pub use tower::{OrbifoldTower, OrbitExpansion, OrbitLabel, OrbitVector};
