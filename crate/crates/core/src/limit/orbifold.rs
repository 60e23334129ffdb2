//! Large-N limits of orbifold structure constants.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use super::convergence::{analyze, ConvergenceReport, Sample};
use crate::borcherds::StructureConstants;
use crate::error::{Error, Result};
use crate::orbifold::{m_factor, m_limit, m_squared_from_shapes, Method, OligoDecomposition, OrbifoldTower, OrbitLabel};
use crate::perm::SupportConfiguration;
use crate::scalar::RadicalScalar;
use crate::tensor::FockWord;

/// Labels of `Φ_n` anchored at the saturation level of weight `n`.
#[derive(Clone, Debug, Serialize)]
pub struct WeightBasis {
    pub weight: u32,
    pub saturation: usize,
    #[serde(skip)]
    pub labels: Vec<OrbitLabel>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitBasis {
    pub max_level: usize,
    pub weights: Vec<WeightBasis>,
}

impl LimitBasis {
    /// Saturation is read off `b_n` over `min_level..=max_level`; a weight
    /// that only stabilizes at `max_level` itself is rejected.
    pub fn new(tower: &OrbifoldTower, cutoff: u32, max_level: usize) -> Result<Self> {
        let mut weights = Vec::new();
        for n in 0..=cutoff {
            let m = tower.saturation(n, max_level)?.ok_or(Error::Unsaturated { weight: n, level: max_level })?;
            weights.push(WeightBasis { weight: n, saturation: m, labels: tower.labels(m, n)? });
        }
        Ok(Self { max_level, weights })
    }

    pub fn cutoff(&self) -> u32 {
        self.weights.len() as u32 - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.weights.iter().map(|w| w.labels.len()).collect()
    }
}

/// One configuration class of the limit decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct TermReport {
    pub config: SupportConfiguration,
    pub triple_overlap: Vec<usize>,
    pub m_limit: Option<RadicalScalar>,
    pub contribution: RadicalScalar,
    pub vanishing: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    #[serde(flatten)]
    pub convergence: ConvergenceReport,
    pub base_level: usize,
    pub terms: Vec<TermReport>,
}

/// The limit algebra of a tower: a saturated basis and exact limit constants.
pub struct OrbifoldLimit {
    tower: Arc<OrbifoldTower>,
    basis: LimitBasis,
    cache: RwLock<HashMap<[OrbitLabel; 3], RadicalScalar>>,
}

impl OrbifoldLimit {
    pub fn new(tower: Arc<OrbifoldTower>, cutoff: u32, max_level: usize) -> Result<Self> {
        let basis = LimitBasis::new(&tower, cutoff, max_level)?;
        Ok(Self { tower, basis, cache: RwLock::new(HashMap::new()) })
    }

    pub fn tower(&self) -> &Arc<OrbifoldTower> {
        &self.tower
    }

    pub fn basis(&self) -> &LimitBasis {
        &self.basis
    }

    pub fn labels(&self, weight: u32) -> Result<&[OrbitLabel]> {
        self.basis
            .weights
            .get(weight as usize)
            .map(|w| w.labels.as_slice())
            .ok_or(Error::CutoffExceeded { weight: weight as i64, cutoff: self.basis.cutoff() })
    }

    pub fn vacuum(&self) -> &OrbitLabel {
        &self.basis.weights[0].labels[0]
    }

    pub fn label_text(&self, x: &OrbitLabel) -> String {
        x.rep.label(self.tower.seed())
    }

    /// The limit label whose orbit contains `word` (any degree at least the base level's).
    pub fn find(&self, word: &FockWord) -> Result<OrbitLabel> {
        let labels = self.labels(word.weight())?;
        let level = labels.first().map_or(1, |l| l.base);
        let top = self.tower.family().first_level_containing(&word.support())?.max(level);
        let d = self.tower.degree(top)?;
        let target = self.tower.canonical(top, &FockWord::new(d, word.entries().iter().cloned())?)?;
        for l in labels {
            if self.tower.canonical(top, &l.rep.embed(d)?)? == target {
                return Ok(l.clone());
            }
        }
        Err(Error::Parse { input: word.label(self.tower.seed()), reason: "not a limit basis vector".into() })
    }

    /// A level from which the set of configuration classes no longer changes:
    /// every contributing union has at most half the summed support sizes.
    pub fn stable_level(&self, a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> usize {
        let total: usize = [a, b, c].iter().map(|x| x.rep.support().len()).sum();
        [a.base, b.base, c.base, total / 2 + 1, self.tower.family().min_level()].into_iter().max().unwrap_or(1)
    }

    pub fn decomposition(&self, a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<OligoDecomposition> {
        self.tower.oligo(self.stable_level(a, b, c), a, b, c)
    }

    /// `C^N_abc` at any saturated level. Above the stable level only `M`
    /// moves, so families with closed-form orders are evaluated without
    /// building `G_N`.
    pub fn sample(&self, a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel, level: usize) -> Result<RadicalScalar> {
        let n0 = self.stable_level(a, b, c);
        let family = self.tower.family();
        if level < n0 || family.order_shape().is_none() {
            return self.tower.sc_finite(level, a, b, c, Method::Oligo);
        }
        for x in [a, b, c] {
            if !self.tower.stable_between(x.weight(), x.base, n0)? {
                return Err(Error::Unsaturated { weight: x.weight(), level: x.base });
            }
        }
        let d = self.decomposition(a, b, c)?;
        let value = d.value_with(|t| {
            let sq = m_squared_from_shapes(family, &t.config, level)?;
            RadicalScalar::sqrt_of_rational(&sq).ok()
        });
        value.ok_or_else(|| Error::Unrealizable(format!("level {level} is below a configuration of the decomposition")))
    }

    /// `C^∞_abc` exactly, when every `M` has a closed-form limit.
    pub fn exact_limit(&self, a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<Option<RadicalScalar>> {
        let family = self.tower.family();
        Ok(self.decomposition(a, b, c)?.value_with(|t| m_limit(family, &t.config)))
    }

    pub fn limit_constant(&self, a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<RadicalScalar> {
        let key = [a.clone(), b.clone(), c.clone()];
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = self.exact_limit(a, b, c)?.ok_or_else(|| {
            Error::Unrealizable(format!("no closed-form limit of M for the `{}` family", self.tower.family().name()))
        })?;
        self.cache.write().unwrap().entry(key).or_insert(v.clone());
        Ok(v)
    }

    /// Samples `C^N` over `levels` (saturated levels only) and classifies the sequence.
    pub fn report(&self, a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel, levels: &[usize], tolerance: f64) -> Result<LimitReport> {
        let lo = a.base.max(b.base).max(c.base);
        let mut used: Vec<usize> = levels.iter().copied().filter(|&n| n >= lo).collect();
        used.sort_unstable();
        used.dedup();
        if used.is_empty() {
            let w = [a, b, c].into_iter().max_by_key(|x| x.base).expect("three labels");
            return Err(Error::Unsaturated { weight: w.weight(), level: levels.iter().copied().max().unwrap_or(0) });
        }
        let samples = used
            .iter()
            .map(|&n| Ok(Sample::new(n as u64, self.sample(a, b, c, n)?)))
            .collect::<Result<Vec<_>>>()?;
        let family = self.tower.family();
        let d = self.decomposition(a, b, c)?;
        let terms = d
            .terms
            .iter()
            .map(|t| {
                let ml = m_limit(family, &t.config);
                let contribution = match &ml {
                    Some(m) => (&(&d.prefactor * m) * &t.inner).scale(&t.symmetry),
                    None => RadicalScalar::zero(),
                };
                TermReport {
                    triple_overlap: t.config.triple_overlap(),
                    vanishing: ml.as_ref().is_some_and(|m| m.is_zero()) || t.inner.is_zero(),
                    config: t.config.clone(),
                    m_limit: ml,
                    contribution,
                }
            })
            .collect();
        let labels = [self.label_text(a), self.label_text(b), self.label_text(c)];
        let convergence = analyze(labels, samples, self.exact_limit(a, b, c)?, tolerance)?;
        Ok(LimitReport { convergence, base_level: self.stable_level(a, b, c), terms })
    }

    /// Independent reports for many triples; order of the output matches the input.
    pub fn reports(&self, triples: &[[OrbitLabel; 3]], levels: &[usize], tolerance: f64) -> Result<Vec<LimitReport>> {
        triples.par_iter().map(|[a, b, c]| self.report(a, b, c, levels, tolerance)).collect()
    }

    /// `M(K, N)` at each level, for witnesses.
    pub fn m_samples(&self, conf: &SupportConfiguration, levels: &[usize]) -> Result<Vec<(usize, RadicalScalar)>> {
        levels.iter().map(|&n| Ok((n, m_factor(&*self.tower.group(n)?, conf)?))).collect()
    }
}

impl StructureConstants for OrbifoldLimit {
    type Label = OrbitLabel;
    type Scalar = RadicalScalar;

    fn cutoff(&self) -> u32 {
        self.basis.cutoff()
    }

    fn basis(&self, weight: u32) -> Result<Vec<OrbitLabel>> {
        Ok(self.labels(weight)?.to_vec())
    }

    fn weight(&self, label: &OrbitLabel) -> u32 {
        label.weight()
    }

    fn constant(&self, a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<RadicalScalar> {
        self.limit_constant(a, b, c)
    }
}

/// Single-trace generation at one basis vector: `u` is the entry at the
/// first site of `v`, `w` the rest.
#[derive(Clone, Debug, Serialize)]
pub struct SingleTraceCheck {
    pub v: String,
    pub u: String,
    pub w: String,
    pub support: usize,
    /// Coefficient of `v` in `u_(-1) w`.
    pub coefficient: RadicalScalar,
    /// Basis vectors other than `v` with support above `s - 2` and a nonzero coefficient.
    pub violations: Vec<String>,
}

impl SingleTraceCheck {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && !self.coefficient.is_zero()
    }
}

pub fn single_trace_check(limit: &OrbifoldLimit, max_support: usize) -> Result<Vec<SingleTraceCheck>> {
    let mut out = Vec::new();
    for wb in &limit.basis.weights {
        for v in &wb.labels {
            let s = v.rep.support().len();
            if s < 2 || s > max_support {
                continue;
            }
            let (site, word) = v.rep.entries()[0].clone();
            let u = limit.find(&FockWord::new(v.rep.degree(), [(site, word)])?)?;
            let w = limit.find(&FockWord::new(v.rep.degree(), v.rep.entries()[1..].iter().cloned())?)?;
            let mut coefficient = RadicalScalar::zero();
            let mut violations = Vec::new();
            for x in &wb.labels {
                let cx = limit.limit_constant(x, &u, &w)?;
                if x == v {
                    coefficient = cx;
                } else if x.rep.support().len() + 2 > s && !cx.is_zero() {
                    violations.push(limit.label_text(x));
                }
            }
            out.push(SingleTraceCheck {
                v: limit.label_text(v),
                u: limit.label_text(&u),
                w: limit.label_text(&w),
                support: s,
                coefficient,
                violations,
            });
        }
    }
    Ok(out)
}
