use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::PermGroup;
use crate::error::{Error, Result};

/// Budget on the number of (A2, A3) pairs scanned per configuration enumeration.
pub const CONFIGURATION_BUDGET: u128 = 100_000;

/// Three supports `K1, K2, K3`; the derived sets are computed on demand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SupportConfiguration {
    pub sets: [Vec<usize>; 3],
}

impl SupportConfiguration {
    pub fn new(k1: &[usize], k2: &[usize], k3: &[usize]) -> Self {
        let norm = |k: &[usize]| {
            let mut v = k.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        Self { sets: [norm(k1), norm(k2), norm(k3)] }
    }

    fn count(&self, site: usize) -> usize {
        self.sets.iter().filter(|s| s.binary_search(&site).is_ok()).count()
    }

    /// `K_123 = K1 ∪ K2 ∪ K3`.
    pub fn union(&self) -> Vec<usize> {
        let mut u: Vec<usize> = self.sets.iter().flatten().copied().collect();
        u.sort_unstable();
        u.dedup();
        u
    }

    /// `K_t = K1 ∩ K2 ∩ K3`.
    pub fn triple_overlap(&self) -> Vec<usize> {
        self.union().into_iter().filter(|&i| self.count(i) == 3).collect()
    }

    /// `K_o`: sites lying in exactly one of the sets.
    pub fn one_point(&self) -> Vec<usize> {
        self.union().into_iter().filter(|&i| self.count(i) == 1).collect()
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.sets[0].len(), self.sets[1].len(), self.sets[2].len()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlacedConfiguration {
    pub config: SupportConfiguration,
    /// Size of the diagonal orbit of the placed triple.
    pub orbit_size: usize,
}

/// Diagonal orbits of triples `(A1, A2, A3)` with `Ai` in the orbit of `Ki`.
///
/// The group is transitive on the orbit of `K1`, so the first component is
/// pinned to its minimal member and the setwise stabilizer of that member
/// acts on the remaining pairs.
pub fn placed_support_orbits(group: &PermGroup, k1: &[usize], k2: &[usize], k3: &[usize]) -> Result<Vec<PlacedConfiguration>> {
    let mut o1 = group.set_orbit(k1)?;
    let o2 = group.set_orbit(k2)?;
    let o3 = group.set_orbit(k3)?;
    let pairs = (o2.len() as u128) * (o3.len() as u128);
    if pairs > CONFIGURATION_BUDGET {
        return Err(Error::Budget { what: "placed support pairs".into(), needed: pairs, budget: CONFIGURATION_BUDGET });
    }
    o1.sort();
    let a1 = o1[0].clone();
    let stab = group.setwise_stabilizer(&a1)?;
    let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    let mut out = Vec::new();
    for a2 in &o2 {
        for a3 in &o3 {
            let key = (a2.clone(), a3.clone());
            if seen.contains(&key) {
                continue;
            }
            let orbit = stab.orbit_by(key, |g, (x, y)| (g.apply_set(x), g.apply_set(y)));
            let rep = orbit.iter().min().expect("nonempty").clone();
            let size = orbit.len() * o1.len();
            seen.extend(orbit);
            out.push(PlacedConfiguration { config: SupportConfiguration { sets: [a1.clone(), rep.0, rep.1] }, orbit_size: size });
        }
    }
    out.sort_by(|a, b| a.config.cmp(&b.config));
    Ok(out)
}
