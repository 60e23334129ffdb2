//! Tables of limit constants and Borcherds' identity evaluated on them.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::RwLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::borcherds::{borcherds_residual, intermediate_bounds, StructureConstants};
use crate::error::{Error, Result};
use crate::scalar::RadicalScalar;

/// A graded basis with an insert-once table of constants; lookups of
/// absent entries fail instead of computing.
pub struct LimitTable<L> {
    bases: Vec<Vec<L>>,
    weights: HashMap<L, u32>,
    entries: RwLock<HashMap<(L, L, L), RadicalScalar>>,
}

impl<L: Clone + Eq + Hash + Debug + Send + Sync> LimitTable<L> {
    pub fn new(bases: Vec<Vec<L>>) -> Self {
        let weights = bases.iter().enumerate().flat_map(|(w, b)| b.iter().map(move |l| (l.clone(), w as u32))).collect();
        Self { bases, weights, entries: RwLock::new(HashMap::new()) }
    }

    /// Copies every constant with all three weights at most `cutoff`, in parallel.
    pub fn from_constants<S>(sys: &S, cutoff: u32) -> Result<Self>
    where
        S: StructureConstants<Label = L, Scalar = RadicalScalar> + Sync,
    {
        let bases: Vec<Vec<L>> = (0..=cutoff).map(|w| sys.basis(w)).collect::<Result<_>>()?;
        let table = Self::new(bases);
        let all: Vec<&L> = table.bases.iter().flatten().collect();
        let rows: Vec<Vec<((L, L, L), RadicalScalar)>> = all
            .par_iter()
            .map(|a| {
                let mut row = Vec::new();
                for b in &all {
                    for c in &all {
                        row.push((((*a).clone(), (*b).clone(), (*c).clone()), sys.constant(a, b, c)?));
                    }
                }
                Ok(row)
            })
            .collect::<Result<_>>()?;
        for row in rows {
            for ((a, b, c), v) in row {
                table.insert(a, b, c, v)?;
            }
        }
        Ok(table)
    }

    /// Inserting the same key twice is allowed only with the same value.
    pub fn insert(&self, a: L, b: L, c: L, value: RadicalScalar) -> Result<()> {
        let mut entries = self.entries.write().unwrap();
        let key = (a, b, c);
        if let Some(old) = entries.get(&key) {
            if *old != value {
                return Err(Error::Config(format!("conflicting values for {key:?}")));
            }
            return Ok(());
        }
        entries.insert(key, value);
        Ok(())
    }

    pub fn get(&self, a: &L, b: &L, c: &L) -> Option<RadicalScalar> {
        self.entries.read().unwrap().get(&(a.clone(), b.clone(), c.clone())).cloned()
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<L: Clone + Eq + Hash + Debug + Send + Sync> StructureConstants for LimitTable<L> {
    type Label = L;
    type Scalar = RadicalScalar;

    fn cutoff(&self) -> u32 {
        self.bases.len() as u32 - 1
    }

    fn basis(&self, weight: u32) -> Result<Vec<L>> {
        self.bases
            .get(weight as usize)
            .cloned()
            .ok_or(Error::CutoffExceeded { weight: weight as i64, cutoff: self.cutoff() })
    }

    fn weight(&self, label: &L) -> u32 {
        self.weights[label]
    }

    fn constant(&self, a: &L, b: &L, c: &L) -> Result<RadicalScalar> {
        self.get(a, b, c).ok_or_else(|| Error::MissingConstants(vec![format!("C({a:?}, {b:?}, {c:?})")]))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BorcherdsCheck {
    pub residual: f64,
    pub exact: RadicalScalar,
    pub exact_zero: bool,
}

/// Entries of the table that the residual at `(e, a, b, c; k, m, n)` reads.
pub fn required_entries<L: Clone + Eq + Hash + Debug + Send + Sync>(
    table: &LimitTable<L>,
    [e, a, b, c]: [&L; 4],
    (k, m, n): (i64, i64, i64),
) -> Result<Vec<(L, L, L)>> {
    let w = |x: &L| table.weight(x) as i64;
    let (we, wa, wb, wc) = (w(e), w(a), w(b), w(c));
    if we != wa + wb + wc - k - m - n - 2 {
        return Ok(Vec::new());
    }
    let top = intermediate_bounds(wa, wb, wc, k, m, n).into_iter().max().unwrap_or(-1);
    let mut out = Vec::new();
    for wd in 0..=top {
        let Some(basis) = table.bases.get(wd as usize) else {
            return Err(Error::CutoffExceeded { weight: wd, cutoff: table.cutoff() });
        };
        for d in basis {
            if wa + wb - wd - n - 1 >= 0 {
                out.push((e.clone(), d.clone(), c.clone()));
                out.push((d.clone(), a.clone(), b.clone()));
            }
            if wb + wc - wd - k - 1 >= 0 {
                out.push((e.clone(), a.clone(), d.clone()));
                out.push((d.clone(), b.clone(), c.clone()));
            }
            if wa + wc - wd - m - 1 >= 0 {
                out.push((e.clone(), b.clone(), d.clone()));
                out.push((d.clone(), a.clone(), c.clone()));
            }
        }
    }
    Ok(out)
}

/// The Borcherds residual on limit constants. Missing entries are reported
/// all at once.
pub fn limit_borcherds_check<L: Clone + Eq + Hash + Debug + Send + Sync>(
    table: &LimitTable<L>,
    quad: [&L; 4],
    kmn: (i64, i64, i64),
) -> Result<BorcherdsCheck> {
    let missing: Vec<String> = required_entries(table, quad, kmn)?
        .into_iter()
        .filter(|(x, y, z)| table.get(x, y, z).is_none())
        .map(|(x, y, z)| format!("C({x:?}, {y:?}, {z:?})"))
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingConstants(missing));
    }
    let [e, a, b, c] = quad;
    let exact = borcherds_residual(table, e, a, b, c, kmn.0, kmn.1, kmn.2)?;
    Ok(BorcherdsCheck { residual: exact.to_f64(), exact_zero: exact.is_zero(), exact })
}
