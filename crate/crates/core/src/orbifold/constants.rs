use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::mfactor::m_factor;
use super::tower::{ratio, OrbifoldTower, OrbitLabel};
use crate::borcherds::StructureConstants;
use crate::error::{Error, Result};
use crate::perm::{placed_support_orbits, Permutation, SupportConfiguration};
use crate::scalar::{RadicalScalar, Rational};
use crate::seed::Word;
use crate::tensor::{tensor_structure_constant, FockWord};

/// Upper bound on `|G_N|³` for the group-sum route.
pub const GROUP_SUM_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Definition,
    GroupSum,
    Oligo,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Definition, Method::GroupSum, Method::Oligo];

    pub fn name(self) -> &'static str {
        match self {
            Method::Definition => "definition",
            Method::GroupSum => "group_sum",
            Method::Oligo => "oligo",
        }
    }
}

/// One configuration class: `symmetry · M · inner`, where `inner` sums the
/// tensor constants over the three restriction groups and `symmetry` is
/// `|Ĝ^{K123}| / |D|` with `D` the common setwise stabilizer of the placed sets.
#[derive(Clone, Debug, Serialize)]
pub struct OligoTerm {
    pub config: SupportConfiguration,
    pub orbit_size: usize,
    pub m: RadicalScalar,
    pub symmetry: Rational,
    pub inner: RadicalScalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct OligoDecomposition {
    pub level: usize,
    /// `Λ · Π_x √(|G_{M_x}||Ĝ_{M_x}^{K_x}|)`; independent of the level.
    pub prefactor: RadicalScalar,
    pub terms: Vec<OligoTerm>,
}

impl OligoDecomposition {
    pub fn value(&self) -> RadicalScalar {
        let sum: RadicalScalar =
            self.terms.iter().map(|t| (&t.m * &t.inner).scale(&t.symmetry)).sum();
        &self.prefactor * &sum
    }

    /// The value with each `M` replaced by `m(term)`.
    pub fn value_with(&self, mut m: impl FnMut(&OligoTerm) -> Option<RadicalScalar>) -> Option<RadicalScalar> {
        let mut sum = RadicalScalar::zero();
        for t in &self.terms {
            sum += &(&m(t)? * &t.inner).scale(&t.symmetry);
        }
        Some(&self.prefactor * &sum)
    }
}

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

fn rat_of(n: &BigUint) -> Rational {
    ratio(n, &BigUint::one())
}

impl OrbifoldTower {
    /// `C^N_{abc}` for the basis vectors `f_{M_x N}(π_{M_x}(x))`, under the dual
    /// pairing of the orbit basis.
    pub fn sc_finite(&self, level: usize, a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel, method: Method) -> Result<RadicalScalar> {
        for x in [a, b, c] {
            self.check_label(x, level)?;
        }
        match method {
            Method::Definition => self.sc_definition(level, a, b, c),
            Method::GroupSum => self.sc_group_sum(level, a, b, c),
            Method::Oligo => Ok(self.oligo(level, a, b, c)?.value()),
        }
    }

    /// Ground truth: build the three vectors through the connecting maps and
    /// read off the coefficient of `f(a)` in `f(b)_(k) f(c)`.
    fn sc_definition(&self, level: usize, a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<RadicalScalar> {
        let fa = self.basis_vector(a, level)?;
        let fb = self.basis_vector(b, level)?;
        let fc = self.basis_vector(c, level)?;
        let (x, ax) = fa.iter().next().ok_or(Error::DivisionByZero)?;
        if self.project(level, &fa)?.len() != 1 {
            return Err(Error::Unsaturated { weight: a.weight(), level: a.base });
        }
        let seed = self.seed();
        let mut y = RadicalScalar::zero();
        for (bx, cb) in &fb {
            for (cx, cc) in &fc {
                let t = tensor_structure_constant(seed, x, bx, cx)?;
                if !t.is_zero() {
                    y += &(&(cb * cc) * &t);
                }
            }
        }
        Ok(&y * &ax.inverse()?)
    }

    /// `|Aut_N(a)|`: the stabilizer of the word `a` inside the restriction to its support.
    fn automorphisms(&self, level: usize, x: &FockWord) -> Result<Rational> {
        let g = self.group(level)?;
        let orbit = self.orbit(level, x)?.len();
        Ok(ratio(g.order(), &(big(orbit) * g.pointwise_stabilizer_order(&x.support())?)))
    }

    fn embedded(&self, level: usize, x: &OrbitLabel) -> Result<FockWord> {
        x.rep.embed(self.degree(level)?)
    }

    /// `Λ = 1 / (|Aut_N(a)| |G_{M_b}| |G_{M_c}| |Ĝ_{M_a}^{K_a}|)`.
    fn lambda(&self, level: usize, a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<Rational> {
        let aut = self.automorphisms(level, &self.embedded(level, a)?)?;
        let gb = rat_of(self.group(b.base)?.order());
        let gc = rat_of(self.group(c.base)?.order());
        let ha = rat_of(&self.group(a.base)?.pointwise_stabilizer_order(&a.rep.support())?);
        Ok(Rational::one() / (aut * gb * gc * ha))
    }

    /// `Λ · Π_x √(|G_{M_x}||Ĝ_{M_x}^{K_x}| / (|G_N||Ĝ_N^{K_x}|))`, the factor in front
    /// of the triple group sum.
    pub fn group_sum_normalization(&self, level: usize, a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<RadicalScalar> {
        let g = self.group(level)?;
        let lambda = self.lambda(level, a, b, c)?;
        let mut inside = Rational::one();
        for x in [a, b, c] {
            let gm = self.group(x.base)?;
            let k = x.rep.support();
            inside = inside * ratio(&(gm.order() * gm.pointwise_stabilizer_order(&k)?), &(g.order() * g.pointwise_stabilizer_order(&k)?));
        }
        Ok(RadicalScalar::sqrt_of_rational(&inside)?.scale(&lambda))
    }

    fn sc_group_sum(&self, level: usize, a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<RadicalScalar> {
        let g = self.group(level)?;
        let order: u128 = g.order().try_into().unwrap_or(u128::MAX);
        let needed = order.saturating_mul(order).saturating_mul(order);
        if needed > GROUP_SUM_BUDGET {
            return Err(Error::Budget { what: "triple group sum".into(), needed, budget: GROUP_SUM_BUDGET });
        }
        let elements = g.elements()?;
        let images = |x: &OrbitLabel| -> Result<Vec<FockWord>> {
            let e = self.embedded(level, x)?;
            elements.iter().map(|s| e.act(s)).collect()
        };
        let (ia, ib, ic) = (images(a)?, images(b)?, images(c)?);
        let seed = self.seed();
        let mut sum = RadicalScalar::zero();
        for x in &ia {
            for y in &ib {
                for z in &ic {
                    let t = tensor_structure_constant(seed, x, y, z)?;
                    if !t.is_zero() {
                        sum += &t;
                    }
                }
            }
        }
        Ok(&self.group_sum_normalization(level, a, b, c)? * &sum)
    }

    /// The configuration decomposition: a level-independent prefactor times a
    /// sum over diagonal orbits of placed supports, where only `M` depends on the level.
    pub fn oligo(&self, level: usize, a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<OligoDecomposition> {
        for x in [a, b, c] {
            self.check_label(x, level)?;
        }
        let g = self.group(level)?;
        let words = [self.embedded(level, a)?, self.embedded(level, b)?, self.embedded(level, c)?];
        let supports: Vec<Vec<usize>> = words.iter().map(|w| w.support()).collect();
        let mut prefactor_sq = Rational::one();
        for x in [a, b, c] {
            let gm = self.group(x.base)?;
            prefactor_sq = prefactor_sq * rat_of(&(gm.order() * gm.pointwise_stabilizer_order(&x.rep.support())?));
        }
        let prefactor = RadicalScalar::sqrt_of_rational(&prefactor_sq)?.scale(&self.lambda(level, a, b, c)?);

        // All images of each word under its setwise stabilizer, relabelled onto
        // the sorted support; placed copies are transported by one group element.
        let mut local: Vec<Vec<Vec<(usize, Word)>>> = Vec::new();
        let mut transports: Vec<Vec<(Vec<usize>, Permutation)>> = Vec::new();
        for (w, k) in words.iter().zip(&supports) {
            if k.is_empty() {
                local.push(vec![Vec::new()]);
                transports.push(vec![(Vec::new(), Permutation::identity(g.degree()))]);
                continue;
            }
            let r = g.restriction_group(k)?;
            let mut imgs = Vec::new();
            for rho in r.group.elements()? {
                let mut e: Vec<(usize, Word)> =
                    w.entries().iter().enumerate().map(|(j, (_, word))| (rho.apply(j), word.clone())).collect();
                e.sort_by_key(|p| p.0);
                imgs.push(e);
            }
            local.push(imgs);
            let mut t = g.tuple_transversal(k)?;
            for (tuple, _) in t.iter_mut() {
                tuple.sort_unstable();
            }
            transports.push(t);
        }
        let place = |i: usize, set: &[usize]| -> Result<Vec<FockWord>> {
            let (_, kappa) = transports[i]
                .iter()
                .find(|(t, _)| t.as_slice() == set)
                .ok_or_else(|| Error::Unrealizable(format!("no element maps {:?} onto {set:?}", supports[i])))?;
            let pts = &supports[i];
            Ok(local[i]
                .iter()
                .map(|e| {
                    let mut placed: Vec<(usize, Word)> = e.iter().map(|(j, w)| (kappa.apply(pts[*j]), w.clone())).collect();
                    placed.sort_by_key(|p| p.0);
                    FockWord::from_sorted(g.degree(), placed)
                })
                .collect())
        };

        let seed = self.seed();
        let mut terms = Vec::new();
        for pc in placed_support_orbits(&g, &supports[0], &supports[1], &supports[2])? {
            let conf = pc.config;
            if !conf.one_point().is_empty() {
                continue;
            }
            let m = m_factor(&g, &conf)?;
            let union = g.pointwise_stabilizer_order(&conf.union())?;
            let symmetry = ratio(&(union * big(pc.orbit_size)), g.order());
            let (l1, l2, l3) = (place(0, &conf.sets[0])?, place(1, &conf.sets[1])?, place(2, &conf.sets[2])?);
            let mut inner = RadicalScalar::zero();
            for x in &l1 {
                for y in &l2 {
                    for z in &l3 {
                        let t = tensor_structure_constant(seed, x, y, z)?;
                        if !t.is_zero() {
                            inner += &t;
                        }
                    }
                }
            }
            terms.push(OligoTerm { config: conf, orbit_size: pc.orbit_size, m, symmetry, inner });
        }
        Ok(OligoDecomposition { level, prefactor, terms })
    }
}

/// The orbifold at one level as a table of structure constants in its own
/// orbit basis, for Borcherds checks.
pub struct OrbifoldVA {
    tower: Arc<OrbifoldTower>,
    level: usize,
    cutoff: u32,
    cache: Mutex<HashMap<[FockWord; 3], RadicalScalar>>,
}

impl OrbifoldVA {
    pub fn new(tower: Arc<OrbifoldTower>, level: usize, cutoff: u32) -> Result<Self> {
        if cutoff > tower.seed().cutoff() {
            return Err(Error::CutoffExceeded { weight: cutoff as i64, cutoff: tower.seed().cutoff() });
        }
        tower.group(level)?;
        Ok(Self { tower, level, cutoff, cache: Mutex::new(HashMap::new()) })
    }

    pub fn tower(&self) -> &Arc<OrbifoldTower> {
        &self.tower
    }

    pub fn level(&self) -> usize {
        self.level
    }
}

impl StructureConstants for OrbifoldVA {
    type Label = FockWord;
    type Scalar = RadicalScalar;

    fn cutoff(&self) -> u32 {
        self.cutoff
    }

    fn basis(&self, weight: u32) -> Result<Vec<FockWord>> {
        if weight > self.cutoff {
            return Err(Error::CutoffExceeded { weight: weight as i64, cutoff: self.cutoff });
        }
        Ok(self.tower.basis(self.level, weight)?.iter().map(|v| v.rep.clone()).collect())
    }

    fn weight(&self, label: &FockWord) -> u32 {
        label.weight()
    }

    /// `|O_a| / (|O_b||O_c|) · Σ_{b' ∈ O_b, c' ∈ O_c} c(a, b', c')`.
    fn constant(&self, a: &FockWord, b: &FockWord, c: &FockWord) -> Result<RadicalScalar> {
        let key = [a.clone(), b.clone(), c.clone()];
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let oa = self.tower.orbit(self.level, a)?.len();
        let ob = self.tower.orbit(self.level, b)?;
        let oc = self.tower.orbit(self.level, c)?;
        let seed = self.tower.seed();
        let mut sum = RadicalScalar::zero();
        for y in ob.iter() {
            for z in oc.iter() {
                let t = tensor_structure_constant(seed, a, y, z)?;
                if !t.is_zero() {
                    sum += &t;
                }
            }
        }
        let v = sum.scale(&Rational::new((oa as i64).into(), ((ob.len() * oc.len()) as i64).into()));
        self.cache.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }
}
