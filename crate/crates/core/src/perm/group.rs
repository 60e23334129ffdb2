use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::Permutation;
use crate::error::{Error, Result};

/// Largest group order for which the element list is materialized.
pub const ELEMENT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    /// `trans[β] = u` with `u(point) = β`.
    trans: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

/// A permutation group given by generators, with an eagerly built
/// stabilizer chain and a lazily enumerated element list.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
    elements: OnceLock<Vec<Permutation>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        Self {
            degree: self.degree,
            generators: self.generators.clone(),
            levels: self.levels.clone(),
            order: self.order.clone(),
            elements: self.elements.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerData {
    pub order: BigUint,
    pub setwise: BigUint,
    pub pointwise: BigUint,
    pub orbit_length: BigUint,
}

/// The faithful action of the setwise stabilizer of `points` on `points`,
/// relabelled so that `points[i]` becomes `i`.
#[derive(Clone, Debug)]
pub struct RestrictionGroup {
    pub points: Vec<usize>,
    pub group: PermGroup,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { left: g.degree(), right: degree });
            }
        }
        let generators: Vec<Permutation> = {
            let mut seen = HashSet::new();
            generators.into_iter().filter(|g| !g.is_identity() && seen.insert(g.clone())).collect()
        };
        let mut levels = Vec::new();
        for g in &generators {
            insert_generator(&mut levels, degree, g);
        }
        let order = levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
        Ok(Self { degree, generators, levels, order, elements: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("no generators")
    }

    /// Full symmetric group on `degree` points.
    pub fn symmetric(degree: usize) -> Self {
        Self::new(degree, symmetric_generators(degree, 0..degree)).expect("valid generators")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = sift(&self.levels, 0, g.clone());
        j == self.levels.len() && h.is_identity()
    }

    /// All elements, sorted; fails beyond [`ELEMENT_BUDGET`].
    pub fn elements(&self) -> Result<&[Permutation]> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let n = self.order.to_u64().filter(|&n| n <= ELEMENT_BUDGET).ok_or_else(|| Error::Budget {
            what: "group elements".into(),
            needed: self.order.to_u128().unwrap_or(u128::MAX),
            budget: ELEMENT_BUDGET as u128,
        })?;
        let mut out = vec![Permutation::identity(self.degree)];
        // Products of transversal elements, one per level.
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &b in &level.orbit {
                let u = level.trans[b].as_ref().expect("orbit point has transversal");
                next.extend(out.iter().map(|g| u.compose(g)));
            }
            out = next;
        }
        debug_assert_eq!(out.len() as u64, n);
        out.sort();
        Ok(self.elements.get_or_init(|| out))
    }

    /// Orbit of an ordered tuple under the group.
    pub fn tuple_orbit(&self, tuple: &[usize]) -> Result<Vec<Vec<usize>>> {
        self.check_sites(tuple)?;
        Ok(self.orbit_by(tuple.to_vec(), |g, t| t.iter().map(|&i| g.apply(i)).collect()))
    }

    /// Orbit of a set; members are sorted vectors.
    pub fn set_orbit(&self, set: &[usize]) -> Result<Vec<Vec<usize>>> {
        self.check_sites(set)?;
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        Ok(self.orbit_by(s, |g, t| g.apply_set(t)))
    }

    /// Breadth-first orbit of `start` under the generators.
    pub fn orbit_by<T, F>(&self, start: T, act: F) -> Vec<T>
    where
        T: Clone + Eq + std::hash::Hash,
        F: Fn(&Permutation, &T) -> T,
    {
        let mut seen = HashSet::new();
        seen.insert(start.clone());
        let mut out = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = act(g, &x);
                if seen.insert(y.clone()) {
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        out
    }

    fn chain_with_prefix(&self, prefix: &[usize]) -> Vec<Level> {
        let mut levels: Vec<Level> = prefix
            .iter()
            .map(|&p| Level { point: p, gens: Vec::new(), trans: new_trans(self.degree, p), orbit: vec![p] })
            .collect();
        for g in &self.generators {
            insert_generator(&mut levels, self.degree, g);
        }
        levels
    }

    pub fn pointwise_stabilizer_order(&self, set: &[usize]) -> Result<BigUint> {
        let s = normalize_set(self.degree, set)?;
        let levels = self.chain_with_prefix(&s);
        Ok(levels[s.len()..].iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len())))
    }

    /// Length of the orbit of `set` (as a set).
    pub fn set_orbit_length(&self, set: &[usize]) -> Result<usize> {
        let s = normalize_set(self.degree, set)?;
        let c = complement(self.degree, &s);
        Ok(self.set_orbit(if c.len() < s.len() { &c } else { &s })?.len())
    }

    pub fn setwise_stabilizer_order(&self, set: &[usize]) -> Result<BigUint> {
        Ok(&self.order / BigUint::from(self.set_orbit_length(set)?))
    }

    pub fn stabilizer_data(&self, set: &[usize]) -> Result<StabilizerData> {
        let orbit_length = BigUint::from(self.set_orbit_length(set)?);
        Ok(StabilizerData {
            order: self.order.clone(),
            setwise: &self.order / &orbit_length,
            pointwise: self.pointwise_stabilizer_order(set)?,
            orbit_length,
        })
    }

    /// Pointwise stabilizer of `set`, read off a chain whose base starts with `set`.
    pub fn pointwise_stabilizer(&self, set: &[usize]) -> Result<PermGroup> {
        let s = normalize_set(self.degree, set)?;
        let levels = self.chain_with_prefix(&s);
        let gens: Vec<Permutation> = levels[s.len()..].iter().flat_map(|l| l.gens.iter().cloned()).collect();
        PermGroup::new(self.degree, gens)
    }

    /// Orbit of a tuple together with, for each member `t`, an element mapping the tuple to `t`.
    pub fn tuple_transversal(&self, tuple: &[usize]) -> Result<Vec<(Vec<usize>, Permutation)>> {
        self.check_sites(tuple)?;
        let start = (tuple.to_vec(), Permutation::identity(self.degree));
        let mut seen = HashSet::from([start.0.clone()]);
        let mut out = vec![start];
        let mut k = 0;
        while k < out.len() {
            for g in &self.generators {
                let t: Vec<usize> = out[k].0.iter().map(|&i| g.apply(i)).collect();
                if seen.insert(t.clone()) {
                    let u = g.compose(&out[k].1);
                    out.push((t, u));
                }
            }
            k += 1;
        }
        Ok(out)
    }

    /// Setwise stabilizer of `set`: the pointwise stabilizer plus one element
    /// for each rearrangement of the set that the group realizes.
    pub fn setwise_stabilizer(&self, set: &[usize]) -> Result<PermGroup> {
        let s = normalize_set(self.degree, set)?;
        let c = complement(self.degree, &s);
        let small = if c.len() < s.len() { c } else { s };
        let mut gens = self.pointwise_stabilizer(&small)?.generators;
        for (t, u) in self.tuple_transversal(&small)? {
            let mut sorted = t;
            sorted.sort_unstable();
            if sorted == small {
                gens.push(u);
            }
        }
        PermGroup::new(self.degree, gens)
    }

    pub fn restriction_group(&self, set: &[usize]) -> Result<RestrictionGroup> {
        if set.is_empty() {
            return Err(Error::EmptySubset);
        }
        let points = normalize_set(self.degree, set)?;
        let index: HashMap<usize, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let gens = self
            .setwise_stabilizer(&points)?
            .generators
            .iter()
            .map(|g| Permutation::from_images(points.iter().map(|&p| index[&g.apply(p)]).collect()))
            .collect::<Result<Vec<_>>>()?;
        let group = PermGroup::new(points.len(), gens)?;
        Ok(RestrictionGroup { points, group })
    }

    /// Same group, as a set: equal orders and mutual generator membership.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order == other.order
            && other.generators.iter().all(|g| self.contains(g))
    }

    fn check_sites(&self, sites: &[usize]) -> Result<()> {
        match sites.iter().find(|&&i| i >= self.degree) {
            Some(&site) => Err(Error::SiteOutOfRange { site, degree: self.degree }),
            None => Ok(()),
        }
    }
}

fn normalize_set(degree: usize, set: &[usize]) -> Result<Vec<usize>> {
    if let Some(&site) = set.iter().find(|&&i| i >= degree) {
        return Err(Error::SiteOutOfRange { site, degree });
    }
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

fn complement(degree: usize, sorted: &[usize]) -> Vec<usize> {
    (0..degree).filter(|i| sorted.binary_search(i).is_err()).collect()
}

/// Transposition and long cycle generating the symmetric group on `points`.
pub fn symmetric_generators(degree: usize, points: impl IntoIterator<Item = usize>) -> Vec<Permutation> {
    let pts: Vec<usize> = points.into_iter().collect();
    if pts.len() < 2 {
        return Vec::new();
    }
    let mut swap: Vec<usize> = (0..degree).collect();
    swap.swap(pts[0], pts[1]);
    let mut cycle: Vec<usize> = (0..degree).collect();
    for k in 0..pts.len() {
        cycle[pts[k]] = pts[(k + 1) % pts.len()];
    }
    let mut out = vec![Permutation::from_images(swap).expect("transposition")];
    if pts.len() > 2 {
        out.push(Permutation::from_images(cycle).expect("cycle"));
    }
    out
}

fn new_trans(degree: usize, point: usize) -> Vec<Option<Permutation>> {
    let mut trans = vec![None; degree];
    trans[point] = Some(Permutation::identity(degree));
    trans
}

fn sift(levels: &[Level], from: usize, mut h: Permutation) -> (Permutation, usize) {
    for (j, level) in levels.iter().enumerate().skip(from) {
        match &level.trans[h.apply(level.point)] {
            Some(u) => h = u.inverse().compose(&h),
            None => return (h, j),
        }
    }
    (h, levels.len())
}

/// Adds an input generator at the first level whose base point it moves.
fn insert_generator(levels: &mut Vec<Level>, degree: usize, g: &Permutation) {
    let (h, j) = sift(levels, 0, g.clone());
    if j == levels.len() && h.is_identity() {
        return;
    }
    let i = levels.iter().position(|l| g.apply(l.point) != l.point).unwrap_or(levels.len());
    push_generator(levels, degree, i, g.clone());
    for k in (0..=i).rev() {
        complete_level(levels, k);
    }
}

fn push_generator(levels: &mut Vec<Level>, degree: usize, i: usize, g: Permutation) {
    if i == levels.len() {
        let point = g.first_moved_point().expect("non-identity generator");
        levels.push(Level { point, gens: Vec::new(), trans: new_trans(degree, point), orbit: vec![point] });
    }
    levels[i].gens.push(g);
}

/// Closes the basic orbit at level `i` and sifts every Schreier generator,
/// adding residues as new strong generators until all sift to the identity.
/// A residue added at level `j` belongs to the generating sets of all levels
/// `i+1..=j`, so those are completed again, deepest first.
fn complete_level(levels: &mut Vec<Level>, i: usize) {
    let degree = levels[i].trans.len();
    loop {
        let gens: Vec<Permutation> = levels[i..].iter().flat_map(|l| l.gens.iter().cloned()).collect();
        close_orbit(&mut levels[i], &gens);
        let mut residue = None;
        'search: for &b in &levels[i].orbit {
            let ub = levels[i].trans[b].as_ref().expect("orbit point");
            for s in &gens {
                let usb = levels[i].trans[s.apply(b)].as_ref().expect("closed orbit");
                let schreier = usb.inverse().compose(&s.compose(ub));
                let (h, j) = sift(levels, i + 1, schreier);
                if !h.is_identity() {
                    residue = Some((h, j));
                    break 'search;
                }
            }
        }
        let Some((h, j)) = residue else { return };
        push_generator(levels, degree, j, h);
        for k in (i + 1..=j).rev() {
            complete_level(levels, k);
        }
    }
}

fn close_orbit(level: &mut Level, gens: &[Permutation]) {
    let mut k = 0;
    while k < level.orbit.len() {
        let b = level.orbit[k];
        let ub = level.trans[b].clone().expect("orbit point");
        for s in gens {
            let c = s.apply(b);
            if level.trans[c].is_none() {
                level.trans[c] = Some(s.compose(&ub));
                level.orbit.push(c);
            }
        }
        k += 1;
    }
}
