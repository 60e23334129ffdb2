//! Minimal commutative-ring interface shared by exact and floating structure constants.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::scalar::RadicalScalar;

pub trait Ring: Clone + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

impl Ring for RadicalScalar {
    fn zero() -> Self {
        RadicalScalar::zero()
    }
    fn one() -> Self {
        RadicalScalar::one()
    }
    fn from_bigint(n: &BigInt) -> Self {
        RadicalScalar::from_bigint(n.clone())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        RadicalScalar::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        RadicalScalar::to_f64(self)
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}
