use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::group::symmetric_generators;
use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// One level of a user-supplied family: generators as 0-based image lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomLevel {
    pub level: usize,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

/// A rule `N ↦ G_N ≤ Sym(I_N)` with `I_N = {0, …, domain_size(N) - 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroupFamily {
    /// `S_N` on `N` sites.
    Symmetric,
    /// Permutations of `N` sites fixing site 0.
    PointedSymmetric,
    /// `S_N × S_N` on `2N` sites: one factor on even sites, one on odd sites.
    Product,
    /// The trivial group on `N` sites (plain tensor powers).
    Trivial,
    Custom { levels: Vec<CustomLevel> },
}

/// `Π_j (N - s_j)!` as a function of the level `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorialProduct {
    pub shifts: Vec<usize>,
}

impl FactorialProduct {
    pub fn eval(&self, level: usize) -> Option<BigUint> {
        let mut out = BigUint::one();
        for &s in &self.shifts {
            out *= factorial(level.checked_sub(s)?);
        }
        Some(out)
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

impl GroupFamily {
    pub fn name(&self) -> &'static str {
        match self {
            GroupFamily::Symmetric => "symmetric",
            GroupFamily::PointedSymmetric => "pointed_symmetric",
            GroupFamily::Product => "product",
            GroupFamily::Trivial => "trivial",
            GroupFamily::Custom { .. } => "custom",
        }
    }

    pub fn min_level(&self) -> usize {
        match self {
            GroupFamily::Custom { levels } => levels.iter().map(|l| l.level).min().unwrap_or(1),
            _ => 1,
        }
    }

    pub fn domain_size(&self, level: usize) -> Result<usize> {
        Ok(match self {
            GroupFamily::Product => 2 * level,
            GroupFamily::Custom { .. } => self.custom_level(level)?.degree,
            _ => level,
        })
    }

    fn custom_level(&self, level: usize) -> Result<&CustomLevel> {
        let GroupFamily::Custom { levels } = self else { unreachable!() };
        levels.iter().find(|l| l.level == level).ok_or_else(|| Error::Recipe {
            family: "custom".into(),
            level,
            reason: "no generators given for this level".into(),
        })
    }

    pub fn group(&self, level: usize) -> Result<PermGroup> {
        if level == 0 {
            return Err(Error::Recipe { family: self.name().into(), level, reason: "levels start at 1".into() });
        }
        let d = self.domain_size(level)?;
        let gens = match self {
            GroupFamily::Symmetric => symmetric_generators(d, 0..d),
            GroupFamily::PointedSymmetric => symmetric_generators(d, 1..d),
            GroupFamily::Product => {
                let mut g = symmetric_generators(d, (0..d).step_by(2));
                g.extend(symmetric_generators(d, (1..d).step_by(2)));
                g
            }
            GroupFamily::Trivial => Vec::new(),
            GroupFamily::Custom { .. } => self
                .custom_level(level)?
                .generators
                .iter()
                .map(|g| {
                    if g.len() != d {
                        return Err(Error::DegreeMismatch { left: g.len(), right: d });
                    }
                    Permutation::from_images(g.clone())
                })
                .collect::<Result<_>>()?,
        };
        PermGroup::new(d, gens)
    }

    /// Closed form for `|G_N|`, when the family has one.
    pub fn order_shape(&self) -> Option<FactorialProduct> {
        let shifts = match self {
            GroupFamily::Symmetric => vec![0],
            GroupFamily::PointedSymmetric => vec![1],
            GroupFamily::Product => vec![0, 0],
            GroupFamily::Trivial => vec![],
            GroupFamily::Custom { .. } => return None,
        };
        Some(FactorialProduct { shifts })
    }

    /// Closed form for the pointwise stabilizer order of `set`, valid at
    /// every level whose domain contains `set`.
    pub fn pointwise_shape(&self, set: &[usize]) -> Option<FactorialProduct> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        let shifts = match self {
            GroupFamily::Symmetric => vec![s.len()],
            GroupFamily::PointedSymmetric => vec![1 + s.iter().filter(|&&i| i != 0).count()],
            GroupFamily::Product => {
                let even = s.iter().filter(|&&i| i % 2 == 0).count();
                vec![even, s.len() - even]
            }
            GroupFamily::Trivial => vec![],
            GroupFamily::Custom { .. } => return None,
        };
        Some(FactorialProduct { shifts })
    }

    /// Smallest level whose domain contains every site in `set`.
    pub fn first_level_containing(&self, set: &[usize]) -> Result<usize> {
        let max = set.iter().copied().max().map_or(0, |m| m + 1);
        let mut level = self.min_level();
        while self.domain_size(level)? < max {
            level += 1;
        }
        Ok(level)
    }
}
