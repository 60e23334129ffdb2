use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{function_orbit, function_orbit_reps, GroupFamily, PermGroup};
use crate::scalar::{RadicalScalar, Rational};
use crate::seed::SeedVA;
use crate::tensor::{FockWord, TensorVector};

/// A `G_N`-orbit basis vector `π_N(rep)`, with `rep` minimal in its orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitVector {
    #[serde(skip)]
    pub rep: FockWord,
    pub orbit_length: usize,
}

/// Coefficients over orbit vectors, keyed by canonical representative.
pub type OrbitExpansion = BTreeMap<FockWord, RadicalScalar>;

/// The basis vector `f_{MN}(π_M(rep))` of any level `N ≥ M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitLabel {
    pub base: usize,
    pub rep: FockWord,
}

impl OrbitLabel {
    pub fn weight(&self) -> u32 {
        self.rep.weight()
    }
}

pub(crate) fn ratio(num: &BigUint, den: &BigUint) -> Rational {
    Rational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// Permutation orbifolds of one seed over every level of a group family.
pub struct OrbifoldTower {
    seed: Arc<SeedVA>,
    family: GroupFamily,
    groups: Mutex<BTreeMap<usize, Arc<PermGroup>>>,
    bases: Mutex<HashMap<(usize, u32), Arc<Vec<OrbitVector>>>>,
    orbits: Mutex<HashMap<(usize, FockWord), Arc<Vec<FockWord>>>>,
}

impl OrbifoldTower {
    pub fn new(seed: Arc<SeedVA>, family: GroupFamily) -> Self {
        Self {
            seed,
            family,
            groups: Mutex::new(BTreeMap::new()),
            bases: Mutex::new(HashMap::new()),
            orbits: Mutex::new(HashMap::new()),
        }
    }

    pub fn seed(&self) -> &Arc<SeedVA> {
        &self.seed
    }

    pub fn family(&self) -> &GroupFamily {
        &self.family
    }

    pub fn group(&self, level: usize) -> Result<Arc<PermGroup>> {
        if let Some(g) = self.groups.lock().unwrap().get(&level) {
            return Ok(g.clone());
        }
        let g = Arc::new(self.family.group(level)?);
        self.groups.lock().unwrap().insert(level, g.clone());
        Ok(g)
    }

    pub fn degree(&self, level: usize) -> Result<usize> {
        self.family.domain_size(level)
    }

    /// `Φ^N_n`, sorted by representative.
    pub fn basis(&self, level: usize, n: u32) -> Result<Arc<Vec<OrbitVector>>> {
        if let Some(b) = self.bases.lock().unwrap().get(&(level, n)) {
            return Ok(b.clone());
        }
        if n > self.seed.cutoff() {
            return Err(Error::CutoffExceeded { weight: n as i64, cutoff: self.seed.cutoff() });
        }
        let g = self.group(level)?;
        let dims = self.seed.dims()?;
        let orbits = function_orbit_reps(&g, &dims, n as usize)?;
        let mut out = Vec::with_capacity(orbits.count);
        for (rep, len) in orbits.reps.iter().zip(&orbits.orbit_lengths) {
            let mut entries = Vec::with_capacity(rep.len());
            for (site, label) in rep {
                entries.push((*site, self.seed.basis(label.weight)?[label.index as usize].clone()));
            }
            out.push(OrbitVector { rep: FockWord::from_sorted(g.degree(), entries), orbit_length: *len });
        }
        let out = Arc::new(out);
        self.bases.lock().unwrap().insert((level, n), out.clone());
        Ok(out)
    }

    pub fn b_n(&self, level: usize, n: u32) -> Result<usize> {
        Ok(self.basis(level, n)?.len())
    }

    /// Least `M` with `b_n(G_k) = b_n(G_max)` for all `M ≤ k ≤ max`, or `None`
    /// when only `max` itself qualifies.
    pub fn saturation(&self, n: u32, max_level: usize) -> Result<Option<usize>> {
        let top = self.b_n(max_level, n)?;
        let mut m = max_level;
        while m > self.family.min_level() && self.b_n(m - 1, n)? == top {
            m -= 1;
        }
        Ok((m < max_level).then_some(m))
    }

    /// Whether weight `n` has the same dimension at every level in `from..=to`.
    pub fn stable_between(&self, n: u32, from: usize, to: usize) -> Result<bool> {
        let top = self.b_n(to, n)?;
        for k in from..to {
            if self.b_n(k, n)? != top {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The `G_N`-orbit of `x`, minimal member first.
    pub fn orbit(&self, level: usize, x: &FockWord) -> Result<Arc<Vec<FockWord>>> {
        let key = (level, x.clone());
        if let Some(o) = self.orbits.lock().unwrap().get(&key) {
            return Ok(o.clone());
        }
        let g = self.group(level)?;
        if x.degree() != g.degree() {
            return Err(Error::DegreeMismatch { left: x.degree(), right: g.degree() });
        }
        let orbit: Vec<FockWord> =
            function_orbit(&g, x.entries()).into_iter().map(|e| FockWord::from_sorted(g.degree(), e)).collect();
        let orbit = Arc::new(orbit);
        let mut cache = self.orbits.lock().unwrap();
        for member in orbit.iter() {
            cache.insert((level, member.clone()), orbit.clone());
        }
        Ok(orbit)
    }

    pub fn canonical(&self, level: usize, x: &FockWord) -> Result<FockWord> {
        Ok(self.orbit(level, x)?[0].clone())
    }

    /// `π_N(v)` over orbit vectors: each orbit collects the sum of its coefficients.
    pub fn project(&self, level: usize, v: &TensorVector) -> Result<OrbitExpansion> {
        let mut out = OrbitExpansion::new();
        for (x, c) in v {
            let rep = self.canonical(level, x)?;
            *out.entry(rep).or_insert_with(RadicalScalar::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Writes orbit vectors back out as tensor words.
    pub fn expand(&self, level: usize, e: &OrbitExpansion) -> Result<TensorVector> {
        let mut out = TensorVector::new();
        for (rep, c) in e {
            let orbit = self.orbit(level, rep)?;
            let share = c.scale(&Rational::new(1.into(), (orbit.len() as i64).into()));
            for x in orbit.iter() {
                *out.entry(x.clone()).or_insert_with(RadicalScalar::zero) += &share;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    fn orbit_ratio(&self, support: &[usize], level: usize) -> Result<Rational> {
        let g = self.group(level)?;
        Ok(ratio(g.order(), &g.pointwise_stabilizer_order(support)?))
    }

    /// Scale of `f̄_{N,M}` on a vector supported on `support`:
    /// `√(|G_M||Ĝ_N^K| / (|G_N||Ĝ_M^K|))`, which keeps the bilinear form of
    /// averaged orbit vectors unchanged.
    pub fn connecting_prefactor(&self, support: &[usize], from: usize, to: usize) -> Result<RadicalScalar> {
        RadicalScalar::sqrt_of_rational(&(self.orbit_ratio(support, to)? / self.orbit_ratio(support, from)?))
    }

    /// The reciprocal `√(|G_N||Ĝ_N^K| / (|G_M||Ĝ_M^K|))`, which is the isometric
    /// scale for unnormalized orbit sums instead of averages.
    pub fn summed_prefactor(&self, support: &[usize], from: usize, to: usize) -> Result<RadicalScalar> {
        let g = |l: usize| -> Result<Rational> {
            let grp = self.group(l)?;
            Ok(Rational::from(BigInt::from(grp.order().clone()))
                * Rational::from(BigInt::from(grp.pointwise_stabilizer_order(support)?)))
        };
        RadicalScalar::sqrt_of_rational(&(g(from)? / g(to)?))
    }

    /// `f̄_{N,N+1}` applied term by term: prefactor times `π_{N+1}` of the padded word.
    pub fn connect(&self, level: usize, v: &TensorVector) -> Result<TensorVector> {
        let next = level + 1;
        let d = self.degree(next)?;
        let mut prefactors: HashMap<Vec<usize>, RadicalScalar> = HashMap::new();
        let mut acc: BTreeMap<FockWord, RadicalScalar> = BTreeMap::new();
        for (x, c) in v {
            let support = x.support();
            let p = match prefactors.get(&support) {
                Some(p) => p.clone(),
                None => {
                    let p = self.connecting_prefactor(&support, level, next)?;
                    prefactors.insert(support, p.clone());
                    p
                }
            };
            let rep = self.canonical(next, &x.embed(d)?)?;
            *acc.entry(rep).or_insert_with(RadicalScalar::zero) += &(c * &p);
        }
        acc.retain(|_, c| !c.is_zero());
        self.expand(next, &acc)
    }

    pub fn connect_to(&self, from: usize, v: &TensorVector, to: usize) -> Result<TensorVector> {
        if to < from {
            return Err(Error::DegreeMismatch { left: to, right: from });
        }
        let mut v = v.clone();
        for level in from..to {
            v = self.connect(level, &v)?;
        }
        Ok(v)
    }

    /// `f_{MN}(π_M(rep))` by iterating the one-step maps.
    pub fn basis_vector(&self, label: &OrbitLabel, level: usize) -> Result<TensorVector> {
        let start = self.expand(label.base, &OrbitExpansion::from([(label.rep.clone(), RadicalScalar::one())]))?;
        self.connect_to(label.base, &start, level)
    }

    /// The saturated shortcut: telescoped prefactor times `π_N` of the padded representative.
    pub fn basis_vector_closed(&self, label: &OrbitLabel, level: usize) -> Result<TensorVector> {
        let p = self.connecting_prefactor(&label.rep.support(), label.base, level)?;
        let rep = self.canonical(level, &label.rep.embed(self.degree(level)?)?)?;
        self.expand(level, &OrbitExpansion::from([(rep, p)]))
    }

    pub(crate) fn check_label(&self, label: &OrbitLabel, level: usize) -> Result<()> {
        if label.base > level || label.rep.degree() != self.degree(label.base)? {
            return Err(Error::DegreeMismatch { left: label.rep.degree(), right: self.degree(label.base.min(level))? });
        }
        if !self.stable_between(label.weight(), label.base, level)? {
            return Err(Error::Unsaturated { weight: label.weight(), level: label.base });
        }
        Ok(())
    }

    /// Labels of `Φ_n` anchored at `base`.
    pub fn labels(&self, base: usize, n: u32) -> Result<Vec<OrbitLabel>> {
        Ok(self.basis(base, n)?.iter().map(|v| OrbitLabel { base, rep: v.rep.clone() }).collect())
    }
}
