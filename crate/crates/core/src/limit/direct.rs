//! Checks that the connecting maps form a direct system of graded spaces.

use serde::Serialize;

use crate::error::Result;
use crate::linalg;
use crate::orbifold::{OrbifoldTower, OrbitExpansion};
use crate::scalar::RadicalScalar;
use crate::tensor::{FockWord, TensorVector};

#[derive(Clone, Debug, Serialize)]
pub struct WeightSaturation {
    pub weight: u32,
    pub dims: Vec<usize>,
    pub saturation: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectSystemReport {
    pub max_weight: u32,
    pub max_level: usize,
    /// `f_NN = id` and `f_MN ∘ f_LM = f_LN`, exactly.
    pub composition: bool,
    /// Iterated maps agree with the saturated closed form.
    pub closed_form: bool,
    /// `f_LN` is injective on each `Φ^L_n`.
    pub injective: bool,
    /// Images stay in weight `n`, and the vacuum maps to the vacuum.
    pub grading: bool,
    pub vacuum: bool,
    pub saturation: Vec<WeightSaturation>,
    pub saturated: bool,
    /// No negative weights and `dim V_(0) = 1` at every level.
    pub lower_bound: bool,
    pub maps_checked: usize,
}

impl DirectSystemReport {
    pub fn ok(&self) -> bool {
        self.composition && self.closed_form && self.injective && self.grading && self.vacuum && self.saturated && self.lower_bound
    }
}

fn unit(tower: &OrbifoldTower, level: usize, rep: &FockWord) -> Result<TensorVector> {
    tower.expand(level, &OrbitExpansion::from([(rep.clone(), RadicalScalar::one())]))
}

pub fn direct_system_check(tower: &OrbifoldTower, max_weight: u32, max_level: usize) -> Result<DirectSystemReport> {
    let lo = tower.family().min_level();
    let mut report = DirectSystemReport {
        max_weight,
        max_level,
        composition: true,
        closed_form: true,
        injective: true,
        grading: true,
        vacuum: true,
        saturation: Vec::new(),
        saturated: true,
        lower_bound: true,
        maps_checked: 0,
    };
    for l in lo..=max_level {
        if tower.b_n(l, 0)? != 1 {
            report.lower_bound = false;
        }
        let vac = FockWord::vacuum(tower.degree(l)?);
        let image = tower.connect_to(l, &TensorVector::from([(vac, RadicalScalar::one())]), max_level)?;
        report.vacuum &= image == TensorVector::from([(FockWord::vacuum(tower.degree(max_level)?), RadicalScalar::one())]);
    }
    for n in 0..=max_weight {
        let dims: Vec<usize> = (lo..=max_level).map(|l| tower.b_n(l, n)).collect::<Result<_>>()?;
        let saturation = tower.saturation(n, max_level)?;
        report.saturated &= saturation.is_some_and(|m| m < max_level);
        report.saturation.push(WeightSaturation { weight: n, dims, saturation });
        for l in lo..=max_level {
            let basis = tower.basis(l, n)?;
            let mut images_at: Vec<Vec<TensorVector>> = Vec::new();
            for v in basis.iter() {
                let start = unit(tower, l, &v.rep)?;
                report.composition &= tower.connect_to(l, &start, l)? == start;
                let mut row = Vec::new();
                for m in l..=max_level {
                    row.push(tower.connect_to(l, &start, m)?);
                }
                images_at.push(row);
            }
            for m in l..=max_level {
                let idx = m - l;
                for (v, row) in basis.iter().zip(&images_at) {
                    let image = &row[idx];
                    report.grading &= image.keys().all(|x| x.weight() == n);
                    for k in m..=max_level {
                        report.composition &= tower.connect_to(m, image, k)? == row[k - l];
                        report.maps_checked += 1;
                    }
                    if saturation.is_some_and(|s| s <= l) {
                        let label = crate::orbifold::OrbitLabel { base: l, rep: v.rep.clone() };
                        report.closed_form &= tower.basis_vector_closed(&label, m)? == *image;
                    }
                }
                // injectivity: the projected images are independent
                // basis reps need not be the canonical orbit member
                let target: Vec<FockWord> =
                    tower.basis(m, n)?.iter().map(|t| tower.canonical(m, &t.rep)).collect::<Result<_>>()?;
                let rows: linalg::Matrix = images_at
                    .iter()
                    .map(|row| {
                        let p = tower.project(m, &row[idx])?;
                        Ok(target.iter().map(|t| p.get(t).cloned().unwrap_or_else(RadicalScalar::zero)).collect())
                    })
                    .collect::<Result<_>>()?;
                if !rows.is_empty() && linalg::rank(rows)? != basis.len() {
                    report.injective = false;
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::perm::GroupFamily;
    use crate::seed::{SeedSpec, SeedVA};

    #[test]
    fn symmetric_heisenberg_small() {
        let tower = OrbifoldTower::new(Arc::new(SeedVA::new(SeedSpec::Heisenberg, 3).unwrap()), GroupFamily::Symmetric);
        let r = direct_system_check(&tower, 3, 5).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.saturation[2].saturation, Some(2));
    }

    #[test]
    fn trivial_family_never_saturates() {
        let tower = OrbifoldTower::new(Arc::new(SeedVA::new(SeedSpec::Heisenberg, 2).unwrap()), GroupFamily::Trivial);
        let r = direct_system_check(&tower, 2, 4).unwrap();
        assert!(!r.saturated);
        assert!(r.composition && r.injective);
    }
}
