//! Tensor powers of a seed: sparse basis words, permutation action and product constants.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{cmp_functions, Permutation, SupportConfiguration};
use crate::scalar::RadicalScalar;
use crate::seed::{SeedVA, Word};

/// A tensor-power basis vector: nonvacuum seed words at finitely many sites.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FockWord {
    degree: usize,
    entries: Vec<(usize, Word)>,
}

impl FockWord {
    pub fn vacuum(degree: usize) -> Self {
        Self { degree, entries: Vec::new() }
    }

    /// Vacuum entries are dropped; sites must be distinct and in range.
    pub fn new(degree: usize, entries: impl IntoIterator<Item = (usize, Word)>) -> Result<Self> {
        let mut entries: Vec<(usize, Word)> = entries.into_iter().filter(|(_, w)| !w.is_vacuum()).collect();
        entries.sort_by_key(|e| e.0);
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::InvalidPermutation(format!("site {} given twice", pair[0].0)));
            }
        }
        if let Some((site, _)) = entries.iter().find(|(s, _)| *s >= degree) {
            return Err(Error::SiteOutOfRange { site: *site, degree });
        }
        Ok(Self { degree, entries })
    }

    /// Entries already sorted by site, distinct and nonvacuum.
    pub(crate) fn from_sorted(degree: usize, entries: Vec<(usize, Word)>) -> Self {
        debug_assert!(entries.windows(2).all(|p| p[0].0 < p[1].0));
        Self { degree, entries }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> &[(usize, Word)] {
        &self.entries
    }

    pub fn at(&self, site: usize) -> Option<&Word> {
        self.entries.binary_search_by_key(&site, |e| e.0).ok().map(|i| &self.entries[i].1)
    }

    pub fn weight(&self) -> u32 {
        self.entries.iter().map(|(_, w)| w.weight()).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.0).collect()
    }

    /// `(σ·a)(σ(i)) = a(i)`.
    pub fn act(&self, g: &Permutation) -> Result<Self> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch { left: g.degree(), right: self.degree });
        }
        let mut entries: Vec<(usize, Word)> = self.entries.iter().map(|(i, w)| (g.apply(*i), w.clone())).collect();
        entries.sort_by_key(|e| e.0);
        Ok(Self { degree: self.degree, entries })
    }

    /// Pads with vacua up to degree `m`.
    pub fn embed(&self, m: usize) -> Result<Self> {
        if m < self.degree {
            return Err(Error::DegreeMismatch { left: m, right: self.degree });
        }
        Ok(Self { degree: m, entries: self.entries.clone() })
    }

    pub fn label(&self, seed: &SeedVA) -> String {
        if self.entries.is_empty() {
            return "vac".into();
        }
        let parts: Vec<String> = self.entries.iter().map(|(i, w)| format!("{i}:[{}]", seed.label(w))).collect();
        parts.join(" ")
    }

    pub fn to_json(&self, seed: &SeedVA) -> FockWordJson {
        FockWordJson {
            degree: self.degree,
            entries: self.entries.iter().map(|(i, w)| EntryJson { site: *i, state: seed.label(w) }).collect(),
        }
    }

    pub fn from_json(json: &FockWordJson, seed: &SeedVA) -> Result<Self> {
        let entries = json.entries.iter().map(|e| Ok((e.site, seed.parse(&e.state)?))).collect::<Result<Vec<_>>>()?;
        Self::new(json.degree, entries)
    }
}

/// Same degree compared by dense site labels, vacuum last.
impl Ord for FockWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| cmp_functions(&self.entries, &other.entries))
    }
}

impl PartialOrd for FockWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub site: usize,
    pub state: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockWordJson {
    pub degree: usize,
    pub entries: Vec<EntryJson>,
}

/// A finite linear combination of tensor words.
pub type TensorVector = BTreeMap<FockWord, RadicalScalar>;

pub fn overlap_sets(a: &FockWord, b: &FockWord, c: &FockWord) -> Result<SupportConfiguration> {
    if a.degree != b.degree || a.degree != c.degree {
        return Err(Error::DegreeMismatch { left: a.degree, right: if a.degree != b.degree { b.degree } else { c.degree } });
    }
    Ok(SupportConfiguration::new(&a.support(), &b.support(), &c.support()))
}

/// Product over sites of seed constants, with the vacuum at absent sites.
pub fn tensor_structure_constant(seed: &SeedVA, a: &FockWord, b: &FockWord, c: &FockWord) -> Result<RadicalScalar> {
    let conf = overlap_sets(a, b, c)?;
    if !conf.one_point().is_empty() {
        return Ok(RadicalScalar::zero());
    }
    let vac = Word::vacuum();
    let mut out = RadicalScalar::one();
    for site in conf.union() {
        let f = seed.structure_constant(a.at(site).unwrap_or(&vac), b.at(site).unwrap_or(&vac), c.at(site).unwrap_or(&vac))?;
        if f.is_zero() {
            return Ok(f);
        }
        out = &out * &f;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::seed::SeedSpec;

    #[test]
    fn constant_examples() {
        let v = SeedVA::new(SeedSpec::virasoro(rat(1, 2)), 4).unwrap();
        let w = v.parse("L-2").unwrap();
        let vac = FockWord::vacuum(3);
        assert!(tensor_structure_constant(&v, &vac, &vac, &vac).unwrap().is_one());
        let at = |i: usize| FockWord::new(3, [(i, w.clone())]).unwrap();
        assert!(tensor_structure_constant(&v, &at(0), &at(1), &at(2)).unwrap().is_zero());
        assert_eq!(tensor_structure_constant(&v, &at(0), &at(0), &at(0)).unwrap(), RadicalScalar::from_int(2));
    }

    #[test]
    fn action_and_embedding() {
        let h = SeedVA::new(SeedSpec::Heisenberg, 4).unwrap();
        let a = h.parse("a-1").unwrap();
        let x = FockWord::new(2, [(0, a.clone())]).unwrap();
        let swap = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        assert_eq!(x.act(&swap).unwrap(), FockWord::new(2, [(1, a.clone())]).unwrap());
        assert_eq!(x.act(&Permutation::identity(2)).unwrap(), x);
        let y = x.embed(5).unwrap();
        assert_eq!((y.degree(), y.weight(), y.support()), (5, 1, vec![0]));
        assert!(x.embed(1).is_err());
        let json = serde_json::to_string(&y.to_json(&h)).unwrap();
        assert_eq!(json, r#"{"degree":5,"entries":[{"site":0,"state":"a-1"}]}"#);
        assert_eq!(FockWord::from_json(&serde_json::from_str(&json).unwrap(), &h).unwrap(), y);
    }

    #[test]
    fn canonical_order_packs_low_sites() {
        let h = SeedVA::new(SeedSpec::Heisenberg, 4).unwrap();
        let a = h.parse("a-1").unwrap();
        let x0 = FockWord::new(3, [(0, a.clone())]).unwrap();
        let x2 = FockWord::new(3, [(2, a.clone())]).unwrap();
        assert!(x0 < x2);
        assert!(FockWord::new(3, [(0, a.clone()), (1, a.clone())]).unwrap() < x0);
    }
}
