use std::cmp::Ordering;
use std::collections::HashSet;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// Maximum number of weight-n functions enumerated by [`function_orbit_reps`].
pub const FUNCTION_BUDGET: u128 = 2_000_000;

/// A seed basis vector named by its weight and its position in the weight-`weight` basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SeedLabel {
    pub weight: u32,
    pub index: u32,
}

/// Dense comparison of sparse functions `site ↦ label`, with the vacuum
/// ordered after every label. Minimal functions pack onto the first sites.
pub fn cmp_functions<L: Ord>(a: &[(usize, L)], b: &[(usize, L)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
            (Some((sa, la)), Some((sb, lb))) => match sa.cmp(sb) {
                Ordering::Less => return Ordering::Less,
                Ordering::Greater => return Ordering::Greater,
                Ordering::Equal => match la.cmp(lb) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    o => return o,
                },
            },
        }
    }
}

/// `(σ·f)(σ(i)) = f(i)`.
pub fn act_function<L: Clone>(g: &Permutation, f: &[(usize, L)]) -> Vec<(usize, L)> {
    let mut out: Vec<(usize, L)> = f.iter().map(|(i, l)| (g.apply(*i), l.clone())).collect();
    out.sort_unstable_by_key(|e| e.0);
    out
}

/// Orbit of a function under `group`, with its minimal member first.
pub fn function_orbit<L: Clone + Ord + Hash>(group: &PermGroup, f: &[(usize, L)]) -> Vec<Vec<(usize, L)>> {
    let mut orbit = group.orbit_by(f.to_vec(), |g, x| act_function(g, x));
    let k = (0..orbit.len()).min_by(|&x, &y| cmp_functions(&orbit[x], &orbit[y])).expect("nonempty orbit");
    orbit.swap(0, k);
    orbit
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctionOrbits {
    pub count: usize,
    pub reps: Vec<Vec<(usize, SeedLabel)>>,
    pub orbit_lengths: Vec<usize>,
}

/// Number of weight-`n` functions on `sites` sites with `dims[w]` labels of weight `w`.
pub fn count_functions(dims: &[usize], sites: usize, n: usize) -> u128 {
    // ways[k] after processing all sites: functions of total weight k.
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for _ in 0..sites {
        let mut next = vec![0u128; n + 1];
        for (k, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for (wt, &d) in dims.iter().enumerate().take(n - k + 1) {
                let d = if wt == 0 { 1 } else { d as u128 };
                next[k + wt] = next[k + wt].saturating_add(w.saturating_mul(d));
            }
        }
        ways = next;
    }
    ways[n]
}

/// Orbit representatives of weight-`n` functions `I → Ψ` under `group`.
pub fn function_orbit_reps(group: &PermGroup, dims: &[usize], n: usize) -> Result<FunctionOrbits> {
    let sites = group.degree();
    let total = count_functions(dims, sites, n);
    if total > FUNCTION_BUDGET {
        return Err(Error::Budget { what: format!("weight-{n} functions on {sites} sites"), needed: total, budget: FUNCTION_BUDGET });
    }
    let mut all = Vec::new();
    enumerate(dims, sites, 0, n, &mut Vec::new(), &mut all);
    let mut seen: HashSet<Vec<(usize, SeedLabel)>> = HashSet::new();
    let mut found = Vec::new();
    for f in all {
        if seen.contains(&f) {
            continue;
        }
        let orbit = function_orbit(group, &f);
        let len = orbit.len();
        let rep = orbit[0].clone();
        seen.extend(orbit);
        found.push((rep, len));
    }
    found.sort_by(|a, b| cmp_functions(&a.0, &b.0));
    let (reps, orbit_lengths): (Vec<_>, Vec<_>) = found.into_iter().unzip();
    Ok(FunctionOrbits { count: reps.len(), reps, orbit_lengths })
}

fn enumerate(
    dims: &[usize],
    sites: usize,
    site: usize,
    remaining: usize,
    current: &mut Vec<(usize, SeedLabel)>,
    out: &mut Vec<Vec<(usize, SeedLabel)>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    if site == sites {
        return;
    }
    enumerate(dims, sites, site + 1, remaining, current, out);
    for w in 1..=remaining.min(dims.len().saturating_sub(1)) {
        for index in 0..dims[w] {
            current.push((site, SeedLabel { weight: w as u32, index: index as u32 }));
            enumerate(dims, sites, site + 1, remaining - w, current, out);
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEIS: [usize; 6] = [1, 1, 2, 3, 5, 7];

    #[test]
    fn b2_examples() {
        assert_eq!(function_orbit_reps(&PermGroup::symmetric(1), &HEIS, 2).unwrap().count, 2);
        for n in 2..=5 {
            assert_eq!(function_orbit_reps(&PermGroup::symmetric(n), &HEIS, 2).unwrap().count, 3);
        }
        assert_eq!(function_orbit_reps(&PermGroup::symmetric(3), &HEIS, 0).unwrap().count, 1);
    }

    #[test]
    fn reps_are_minimal_and_packed() {
        let fo = function_orbit_reps(&PermGroup::symmetric(4), &HEIS, 3).unwrap();
        for rep in &fo.reps {
            let sites: Vec<usize> = rep.iter().map(|e| e.0).collect();
            assert_eq!(sites, (0..rep.len()).collect::<Vec<_>>());
        }
        let total: usize = fo.orbit_lengths.iter().sum();
        assert_eq!(total as u128, count_functions(&HEIS, 4, 3));
    }

    #[test]
    fn counting_matches_enumeration() {
        let mut all = Vec::new();
        enumerate(&HEIS, 3, 0, 4, &mut Vec::new(), &mut all);
        assert_eq!(all.len() as u128, count_functions(&HEIS, 3, 4));
    }
}
