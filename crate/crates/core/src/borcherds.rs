//! Borcherds' identity in structure-constant form, for any graded table of constants.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalar::binomial;

/// A homogeneous basis with structure constants `C_abc`, the coefficient of
/// `a` in `b_(wt b + wt c - wt a - 1) c`.
pub trait StructureConstants {
    type Label: Clone + Eq + Hash + Debug;
    type Scalar: Ring;

    /// Largest weight whose basis is available.
    fn cutoff(&self) -> u32;
    fn basis(&self, weight: u32) -> Result<Vec<Self::Label>>;
    fn weight(&self, label: &Self::Label) -> u32;
    fn constant(&self, a: &Self::Label, b: &Self::Label, c: &Self::Label) -> Result<Self::Scalar>;
}

/// The three largest intermediate weights `wt d` that can contribute.
pub fn intermediate_bounds(wa: i64, wb: i64, wc: i64, k: i64, m: i64, n: i64) -> [i64; 3] {
    [wa + wb - n - 1, wb + wc - k - 1, wa + wc - m - 1]
}

/// LHS − RHS of
/// `Σ_d C(m,j1) C_edc C_dab = Σ_d (-1)^j2 C(n,j2) C_ead C_dbc − Σ_d (-1)^(j3+n) C(n,j3) C_ebd C_dac`
/// with `j1 = wt a + wt b − wt d − n − 1`, `j2 = wt b + wt c − wt d − k − 1`,
/// `j3 = wt a + wt c − wt d − m − 1`. Every term vanishes unless
/// `wt e = wt a + wt b + wt c − k − m − n − 2`.
#[allow(clippy::too_many_arguments)]
pub fn borcherds_residual<S: StructureConstants>(
    sys: &S,
    e: &S::Label,
    a: &S::Label,
    b: &S::Label,
    c: &S::Label,
    k: i64,
    m: i64,
    n: i64,
) -> Result<S::Scalar> {
    let (we, wa, wb, wc) = (sys.weight(e) as i64, sys.weight(a) as i64, sys.weight(b) as i64, sys.weight(c) as i64);
    if we != wa + wb + wc - k - m - n - 2 {
        return Ok(S::Scalar::zero());
    }
    let bounds = intermediate_bounds(wa, wb, wc, k, m, n);
    if let Some(&too_big) = bounds.iter().find(|&&w| w > sys.cutoff() as i64) {
        return Err(Error::CutoffExceeded { weight: too_big, cutoff: sys.cutoff() });
    }
    let mut lhs = S::Scalar::zero();
    let mut rhs = S::Scalar::zero();
    for wd in 0..=bounds.iter().copied().max().unwrap_or(-1) {
        let basis = sys.basis(wd as u32)?;
        let j1 = wa + wb - wd - n - 1;
        let j2 = wb + wc - wd - k - 1;
        let j3 = wa + wc - wd - m - 1;
        for d in &basis {
            if j1 >= 0 {
                let f = binomial(m, j1);
                if f.sign() != num_bigint::Sign::NoSign {
                    let t = sys.constant(e, d, c)?.mul(&sys.constant(d, a, b)?);
                    lhs = lhs.add(&S::Scalar::from_bigint(&f).mul(&t));
                }
            }
            if j2 >= 0 {
                let f = binomial(n, j2) * num_bigint::BigInt::from(if j2 % 2 == 0 { 1 } else { -1 });
                if f.sign() != num_bigint::Sign::NoSign {
                    let t = sys.constant(e, a, d)?.mul(&sys.constant(d, b, c)?);
                    rhs = rhs.add(&S::Scalar::from_bigint(&f).mul(&t));
                }
            }
            if j3 >= 0 {
                let f = binomial(n, j3) * num_bigint::BigInt::from(if (j3 + n).rem_euclid(2) == 0 { 1 } else { -1 });
                if f.sign() != num_bigint::Sign::NoSign {
                    let t = sys.constant(e, b, d)?.mul(&sys.constant(d, a, c)?);
                    rhs = rhs.sub(&S::Scalar::from_bigint(&f).mul(&t));
                }
            }
        }
    }
    Ok(lhs.sub(&rhs))
}

/// Index triples `(k, m, n)` consistent with the four weights and whose
/// intermediate sums stay within `cutoff`; at least one sum is nonempty.
pub fn admissible_indices(we: u32, wa: u32, wb: u32, wc: u32, cutoff: u32) -> Vec<(i64, i64, i64)> {
    let (we, wa, wb, wc, cut) = (we as i64, wa as i64, wb as i64, wc as i64, cutoff as i64);
    let mut out = Vec::new();
    for b1 in -1..=cut {
        let n = wa + wb - 1 - b1;
        for b2 in -1..=cut {
            let k = wb + wc - 1 - b2;
            let m = wa + wb + wc - k - n - 2 - we;
            let b3 = wa + wc - m - 1;
            if (-1..=cut).contains(&b3) && (b1 >= 0 || b2 >= 0 || b3 >= 0) {
                out.push((k, m, n));
            }
        }
    }
    out
}

/// All residuals over basis 4-tuples with `wt e + wt a + wt b + wt c ≤ total`
/// and admissible indices; returns the number of checks and the nonzero cases.
#[allow(clippy::type_complexity)]
pub fn sweep<S: StructureConstants>(
    sys: &S,
    total: u32,
) -> Result<(usize, Vec<([S::Label; 4], (i64, i64, i64), S::Scalar)>)> {
    let bases: Vec<Vec<S::Label>> = (0..=total.min(sys.cutoff())).map(|w| sys.basis(w)).collect::<Result<_>>()?;
    let mut checks = 0;
    let mut failures = Vec::new();
    for we in 0..bases.len() {
        for wa in 0..bases.len() - we {
            for wb in 0..bases.len() - we - wa {
                for wc in 0..bases.len() - we - wa - wb {
                    if (we + wa + wb + wc) as u32 > total {
                        continue;
                    }
                    let idx = admissible_indices(we as u32, wa as u32, wb as u32, wc as u32, sys.cutoff());
                    for e in &bases[we] {
                        for a in &bases[wa] {
                            for b in &bases[wb] {
                                for c in &bases[wc] {
                                    for &(k, m, n) in &idx {
                                        let r = borcherds_residual(sys, e, a, b, c, k, m, n)?;
                                        checks += 1;
                                        if !r.is_zero() {
                                            failures.push(([e.clone(), a.clone(), b.clone(), c.clone()], (k, m, n), r));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((checks, failures))
}
