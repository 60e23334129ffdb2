//! Factorization: generator commutators that are multiples of the identity.

use serde::Serialize;

use super::orbifold::OrbifoldLimit;
use crate::borcherds::StructureConstants;
use crate::error::Result;
use crate::orbifold::{m_limit, OrbitLabel};
use crate::perm::{GroupFamily, SupportConfiguration};
use crate::ring::Ring;
use crate::scalar::RadicalScalar;

/// Orbit lengths of single sites across levels.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitDiagnostic {
    pub levels: Vec<usize>,
    /// `(site, orbit length at each level)` for sites of the first level.
    pub orbit_lengths: Vec<(usize, Vec<usize>)>,
    /// Sites whose orbit length is constant over the second half of the levels.
    pub finite_orbits: Vec<usize>,
}

impl OrbitDiagnostic {
    pub fn no_finite_orbits(&self) -> bool {
        self.finite_orbits.is_empty()
    }
}

pub fn orbit_diagnostic(family: &GroupFamily, levels: &[usize]) -> Result<OrbitDiagnostic> {
    let mut levels = levels.to_vec();
    levels.sort_unstable();
    levels.dedup();
    let first = family.domain_size(levels[0])?;
    let groups = levels.iter().map(|&n| family.group(n)).collect::<Result<Vec<_>>>()?;
    let mut orbit_lengths = Vec::new();
    let mut finite_orbits = Vec::new();
    for site in 0..first {
        let lens = groups.iter().map(|g| g.set_orbit_length(&[site])).collect::<Result<Vec<_>>>()?;
        let half = &lens[lens.len() / 2..];
        if lens.len() >= 2 && half.windows(2).all(|w| w[0] == w[1]) {
            finite_orbits.push(site);
        }
        orbit_lengths.push((site, lens));
    }
    Ok(OrbitDiagnostic { levels, orbit_lengths, finite_orbits })
}

/// A nonvanishing `C_{w, u, v}` with `w` off the vacuum and `u_(k) v` at `k ≥ 0`.
#[derive(Clone, Debug, Serialize)]
pub struct CommutatorWitness {
    pub u: String,
    pub v: String,
    pub w: String,
    pub mode: i64,
    pub value: f64,
    pub exact: Option<RadicalScalar>,
    /// A configuration with `K_t ≠ ∅` that survives the limit.
    pub config: Option<SupportConfiguration>,
    pub m_samples: Vec<(usize, RadicalScalar)>,
    pub m_constant: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationVerdict {
    pub factorizes: bool,
    pub checked: usize,
    pub max_abs: f64,
    pub tolerance: f64,
    pub witnesses: Vec<CommutatorWitness>,
    pub diagnostic: Option<OrbitDiagnostic>,
}

impl FactorizationVerdict {
    /// The verdict agrees with the orbit criterion.
    pub fn matches_diagnostic(&self) -> Option<bool> {
        self.diagnostic.as_ref().map(|d| d.no_finite_orbits() == self.factorizes)
    }
}

/// Checks `C_{w,u,v} = 0` for every pair of generators, every nonvacuum basis
/// vector `w` and every `k = wt u + wt v - wt w - 1 ≥ 0` within the cutoff.
pub fn commutator_check<S: StructureConstants>(
    sys: &S,
    generators: &[S::Label],
    tolerance: f64,
    describe: impl Fn(&S::Label) -> String,
) -> Result<FactorizationVerdict> {
    let mut checked = 0;
    let mut max_abs: f64 = 0.0;
    let mut witnesses = Vec::new();
    for u in generators {
        for v in generators {
            let top = sys.weight(u) + sys.weight(v);
            for ww in 1..top.min(sys.cutoff() + 1) {
                for w in sys.basis(ww)? {
                    let c = sys.constant(&w, u, v)?;
                    let x = c.to_f64().abs();
                    checked += 1;
                    max_abs = max_abs.max(x);
                    if x >= tolerance {
                        witnesses.push(CommutatorWitness {
                            u: describe(u),
                            v: describe(v),
                            w: describe(&w),
                            mode: top as i64 - ww as i64 - 1,
                            value: c.to_f64(),
                            exact: None,
                            config: None,
                            m_samples: Vec::new(),
                            m_constant: false,
                        });
                    }
                }
            }
        }
    }
    Ok(FactorizationVerdict { factorizes: witnesses.is_empty(), checked, max_abs, tolerance, witnesses, diagnostic: None })
}

/// Single-trace limit labels (support of size one) of weight `1..=max_weight`.
pub fn single_trace_generators(limit: &OrbifoldLimit, max_weight: u32) -> Result<Vec<OrbitLabel>> {
    let mut out = Vec::new();
    for n in 1..=max_weight.min(limit.basis().cutoff()) {
        out.extend(limit.labels(n)?.iter().filter(|l| l.rep.support().len() == 1).cloned());
    }
    Ok(out)
}

/// The commutator criterion on limit constants, with the orbit diagnostic and,
/// for each nonvanishing commutator, a surviving configuration with `K_t ≠ ∅`
/// and its `M` across `levels`.
pub fn factorization_check(
    limit: &OrbifoldLimit,
    generators: &[OrbitLabel],
    levels: &[usize],
    tolerance: f64,
) -> Result<FactorizationVerdict> {
    let tower = limit.tower();
    let mut verdict = commutator_check(limit, generators, tolerance, |x| limit.label_text(x))?;
    verdict.diagnostic = Some(orbit_diagnostic(tower.family(), levels)?);
    let family = tower.family();
    let mut detailed = Vec::new();
    for u in generators {
        for v in generators {
            let top = u.weight() + v.weight();
            for ww in 1..top.min(limit.basis().cutoff() + 1) {
                for w in limit.labels(ww)? {
                    let c = limit.limit_constant(w, u, v)?;
                    if c.to_f64().abs() < tolerance {
                        continue;
                    }
                    let d = limit.decomposition(w, u, v)?;
                    let survivor = d.terms.iter().find(|t| {
                        !t.inner.is_zero()
                            && !t.config.triple_overlap().is_empty()
                            && m_limit(family, &t.config).is_some_and(|m| !m.is_zero())
                    });
                    let (config, m_samples) = match survivor {
                        Some(t) => {
                            let usable: Vec<usize> =
                                levels.iter().copied().filter(|&n| n >= d.level).collect();
                            (Some(t.config.clone()), limit.m_samples(&t.config, &usable)?)
                        }
                        None => (None, Vec::new()),
                    };
                    let m_constant = m_samples.len() >= 2 && m_samples.windows(2).all(|p| p[0].1 == p[1].1);
                    detailed.push(CommutatorWitness {
                        u: limit.label_text(u),
                        v: limit.label_text(v),
                        w: limit.label_text(w),
                        mode: top as i64 - ww as i64 - 1,
                        value: c.to_f64(),
                        exact: Some(c),
                        config,
                        m_samples,
                        m_constant,
                    });
                }
            }
        }
    }
    verdict.witnesses = detailed;
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagnostics_of_standard_families() {
        let levels: Vec<usize> = (2..=8).collect();
        assert!(orbit_diagnostic(&GroupFamily::Symmetric, &levels).unwrap().no_finite_orbits());
        let pointed = orbit_diagnostic(&GroupFamily::PointedSymmetric, &levels).unwrap();
        assert_eq!(pointed.finite_orbits, vec![0]);
        assert!(orbit_diagnostic(&GroupFamily::Product, &levels).unwrap().no_finite_orbits());
        assert_eq!(orbit_diagnostic(&GroupFamily::Trivial, &levels).unwrap().finite_orbits, vec![0, 1]);
    }

    #[test]
    fn free_seed_factorizes() {
        let seed = crate::seed::SeedVA::new(crate::seed::SeedSpec::Heisenberg, 4).unwrap();
        let gens = vec![seed.generator(0)];
        let v = commutator_check(&seed, &gens, 1e-12, |w| seed.label(w)).unwrap();
        assert!(v.factorizes && v.checked > 0);
        let vir = crate::seed::SeedVA::new(crate::seed::SeedSpec::virasoro(crate::scalar::rat(1, 2)), 4).unwrap();
        let v = commutator_check(&vir, &[vir.generator(0)], 1e-12, |w| vir.label(w)).unwrap();
        assert!(!v.factorizes);
    }
}
