use std::ops::RangeInclusive;

use serde::Serialize;

use super::{function_orbit_reps, GroupFamily, Permutation};
use crate::error::Result;

/// Per-level checks of the nested-oligomorphic conditions for one support
/// `K` and one weight `n`.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub levels: Vec<usize>,
    pub domain_sizes: Vec<usize>,
    /// `(N, ok)`: the restriction of `G_N` to `I_{N-1}` lies in `G_{N-1}`.
    pub nested: Vec<(usize, bool)>,
    pub restriction_orders: Vec<String>,
    pub restriction_stabilized: bool,
    /// Generators of the restriction group at the last level.
    pub stable_restriction: Vec<Permutation>,
    pub weight: usize,
    pub b_n: Vec<usize>,
    pub saturation: Option<usize>,
    pub orbit_lengths: Vec<usize>,
    /// Orbit length of `K` constant over the second half of the range.
    pub finite_orbit: bool,
}

pub fn family_diagnostics(
    family: &GroupFamily,
    set: &[usize],
    n: usize,
    dims: &[usize],
    levels: RangeInclusive<usize>,
) -> Result<FamilyReport> {
    let levels: Vec<usize> = levels.collect();
    let mut domain_sizes = Vec::new();
    let mut nested = Vec::new();
    let mut restriction_orders = Vec::new();
    let mut restrictions = Vec::new();
    let mut b_n = Vec::new();
    let mut orbit_lengths = Vec::new();
    let mut previous = None;
    for &level in &levels {
        let g = family.group(level)?;
        let d = g.degree();
        domain_sizes.push(d);
        if let Some((prev_level, prev)) = previous.take() {
            let prev: super::PermGroup = prev;
            let d_prev = prev.degree();
            let ok = d_prev < d
                && (d_prev == 0 || {
                    let r = g.restriction_group(&(0..d_prev).collect::<Vec<_>>())?;
                    r.group.generators().iter().all(|h| prev.contains(h))
                });
            debug_assert_eq!(prev_level + 1, level);
            nested.push((level, ok));
        }
        b_n.push(function_orbit_reps(&g, dims, n)?.count);
        if set.iter().all(|&i| i < d) {
            orbit_lengths.push(g.set_orbit_length(set)?);
            if !set.is_empty() {
                let r = g.restriction_group(set)?;
                restriction_orders.push(r.group.order().to_string());
                restrictions.push(r.group);
            }
        }
        previous = Some((level, g));
    }
    let restriction_stabilized = restrictions.len() >= 2 && {
        let last = &restrictions[restrictions.len() - 1];
        restrictions[restrictions.len() / 2..].iter().all(|r| r.same_group(last))
    };
    let stable_restriction = restrictions.last().map(|r| r.generators().to_vec()).unwrap_or_default();
    let saturation = (0..levels.len()).find(|&i| b_n[i..].iter().all(|&b| b == b_n[i])).map(|i| levels[i]);
    let tail = &orbit_lengths[orbit_lengths.len() / 2..];
    let finite_orbit = tail.len() >= 2 && tail.iter().all(|&l| l == tail[0]);
    Ok(FamilyReport {
        family: family.name().into(),
        levels,
        domain_sizes,
        nested,
        restriction_orders,
        restriction_stabilized,
        stable_restriction,
        weight: n,
        b_n,
        saturation,
        orbit_lengths,
        finite_orbit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEIS: [usize; 5] = [1, 1, 2, 3, 5];

    #[test]
    fn symmetric_family() {
        let r = family_diagnostics(&GroupFamily::Symmetric, &[0], 2, &HEIS, 2..=8).unwrap();
        assert!(r.nested.iter().all(|x| x.1));
        assert_eq!(r.orbit_lengths, (2..=8).collect::<Vec<_>>());
        assert!(!r.finite_orbit);
        assert!(r.restriction_stabilized);
        let r = family_diagnostics(&GroupFamily::Symmetric, &[0], 2, &HEIS, 1..=6).unwrap();
        assert_eq!(r.b_n, vec![2, 3, 3, 3, 3, 3]);
        assert_eq!(r.saturation, Some(2));
    }

    #[test]
    fn pointed_family_has_finite_orbit() {
        let r = family_diagnostics(&GroupFamily::PointedSymmetric, &[0], 1, &HEIS, 2..=8).unwrap();
        assert!(r.orbit_lengths.iter().all(|&l| l == 1));
        assert!(r.finite_orbit);
        assert!(r.nested.iter().all(|x| x.1));
    }

    #[test]
    fn product_family_nests() {
        let r = family_diagnostics(&GroupFamily::Product, &[0, 1], 1, &HEIS, 1..=4).unwrap();
        assert!(r.nested.iter().all(|x| x.1));
        assert_eq!(r.b_n, vec![2, 2, 2, 2]);
    }
}
