//! Run configuration: one TOML or JSON file, with flags layered on top.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::orbifold::Method;
use crate::perm::GroupFamily;
use crate::scalar::RationalValue;
use crate::seed::SeedSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

/// Which structure-constant table a command works on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Seed,
    /// The finite orbifold at `n_max`.
    Orbifold,
    /// The large-N limit, with labels saturated by `n_max`.
    Limit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScParams {
    /// Bound on `wt a + wt b + wt c`.
    pub max_total: u32,
    pub methods: Vec<Method>,
}

impl Default for ScParams {
    fn default() -> Self {
        Self { max_total: 2, methods: Method::ALL.to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LimitParams {
    pub max_total: u32,
    /// Levels sampled for convergence, independent of `n_min..=n_max`.
    pub levels: Vec<usize>,
    /// When set, sample the rescaled Virasoro sequence at this central charge
    /// instead of an orbifold tower.
    pub rescaled_virasoro: Option<RationalValue>,
}

impl Default for LimitParams {
    fn default() -> Self {
        Self { max_total: 3, levels: (4..=12).map(|k| 1usize << k).collect(), rescaled_virasoro: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BorcherdsParams {
    pub target: Target,
    pub total: u32,
}

impl Default for BorcherdsParams {
    fn default() -> Self {
        Self { target: Target::Seed, total: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FactorizeParams {
    pub target: Target,
    /// Generators are single-trace labels (or seed generators) up to this weight.
    pub max_weight: u32,
}

impl Default for FactorizeParams {
    fn default() -> Self {
        Self { target: Target::Limit, max_weight: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WickParams {
    /// Seed generator index of each insertion.
    pub insertions: Vec<u16>,
    /// Mode-space truncation for the direct comparison.
    pub order: i64,
    /// Optional evaluation point.
    pub z: Option<Vec<RationalValue>>,
}

impl Default for WickParams {
    fn default() -> Self {
        Self { insertions: vec![0; 4], order: 6, z: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CharParams {
    pub k: u32,
    pub order: usize,
}

impl Default for CharParams {
    fn default() -> Self {
        Self { k: 1, order: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DecomposeParams {
    pub target: Target,
    pub order: usize,
}

impl Default for DecomposeParams {
    fn default() -> Self {
        Self { target: Target::Limit, order: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: SeedSpec,
    pub family: GroupFamily,
    pub cutoff: u32,
    pub n_min: usize,
    pub n_max: usize,
    pub tolerance: f64,
    pub format: Format,
    pub sc: ScParams,
    pub limit: LimitParams,
    pub borcherds: BorcherdsParams,
    pub factorize: FactorizeParams,
    pub wick: WickParams,
    pub char: CharParams,
    pub decompose: DecomposeParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: SeedSpec::Heisenberg,
            family: GroupFamily::Symmetric,
            cutoff: 3,
            n_min: 1,
            n_max: 4,
            tolerance: 1e-8,
            format: Format::Json,
            sc: ScParams::default(),
            limit: LimitParams::default(),
            borcherds: BorcherdsParams::default(),
            factorize: FactorizeParams::default(),
            wick: WickParams::default(),
            char: CharParams::default(),
            decompose: DecomposeParams::default(),
        }
    }
}

impl RunConfig {
    /// TOML unless the extension is `.json`.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
        } else {
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
        }
    }

    pub fn levels(&self) -> Vec<usize> {
        (self.n_min..=self.n_max).collect()
    }

    /// Checks the shared keys and the section belonging to `command`.
    pub fn validate(&self, command: &str) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.n_min > self.n_max {
            return bad(format!("empty level range {}..={}", self.n_min, self.n_max));
        }
        if self.n_max < self.family.min_level() {
            return bad(format!("n_max {} is below the family's first level {}", self.n_max, self.family.min_level()));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return bad(format!("tolerance must be positive, got {}", self.tolerance));
        }
        if command == "borcherds" && self.borcherds.total > self.cutoff {
            return bad(format!("borcherds.total {} exceeds cutoff {}", self.borcherds.total, self.cutoff));
        }
        if command == "decompose" && self.decompose.order > self.cutoff as usize {
            return bad(format!("decompose.order {} exceeds cutoff {}", self.decompose.order, self.cutoff));
        }
        if command == "factorize" && self.factorize.max_weight > self.cutoff {
            return bad(format!("factorize.max_weight {} exceeds cutoff {}", self.factorize.max_weight, self.cutoff));
        }
        if command == "sc" && self.sc.methods.is_empty() {
            return bad("sc.methods is empty".into());
        }
        if command == "limit" && (self.limit.levels.is_empty() || self.limit.levels.contains(&0)) {
            return bad("limit.levels must be nonempty and positive".into());
        }
        if command == "char" && self.char.k == 0 {
            return bad("char.k must be at least 1".into());
        }
        if let (true, Some(z)) = (command == "wick", &self.wick.z) {
            if z.len() != self.wick.insertions.len() {
                return bad(format!("wick.z has {} points for {} insertions", z.len(), self.wick.insertions.len()));
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config serializes");
        format!("{:x}", Sha256::digest(canonical))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip() {
        let text = r#"
            cutoff = 4
            n_max = 6
            [seed]
            kind = "virasoro"
            c = "1/2"
            [family]
            family = "pointed_symmetric"
            [char]
            k = 2
        "#;
        let c: RunConfig = toml::from_str(text).unwrap();
        assert_eq!(c.seed, SeedSpec::virasoro(crate::scalar::rat(1, 2)));
        assert_eq!(c.family, GroupFamily::PointedSymmetric);
        assert_eq!(c.char.k, 2);
        assert_eq!(c.n_min, 1);
        c.validate("char").unwrap();
        let again: RunConfig = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(again.hash(), c.hash());
    }

    #[test]
    fn rejects_unknown_keys_and_empty_ranges() {
        assert!(toml::from_str::<RunConfig>("cutof = 3").is_err());
        let c = RunConfig { n_min: 5, n_max: 4, ..RunConfig::default() };
        assert_eq!(c.validate("dims").unwrap_err().kind(), "config");
        let c = RunConfig { cutoff: 2, ..RunConfig::default() };
        assert!(c.validate("dims").is_ok() && c.validate("borcherds").is_err());
    }
}
