//! Free generators: `F^k` characters, central commutators and the
//! decomposition of a factorizing algebra into free pieces.

use serde::Serialize;

use crate::borcherds::StructureConstants;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{binomial, RadicalScalar, Rational};

/// Coefficients of `Π_{n ≥ k} (1 - q^n)^{-1}` up to `q^order`.
pub fn fk_character(k: u32, order: usize) -> Vec<u64> {
    assert!(k >= 1, "F^k needs k ≥ 1");
    let mut c = vec![0u64; order + 1];
    c[0] = 1;
    for part in k as usize..=order {
        for j in part..=order {
            c[j] += c[j - part];
        }
    }
    c
}

/// Truncated product of power series.
pub fn series_product(a: &[u64], b: &[u64], order: usize) -> Vec<u64> {
    let mut out = vec![0u64; order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Π_k Z_k^{N_k}` up to `q^order`; `multiplicities[k]` is `N_k` (index 0 ignored).
pub fn free_character(multiplicities: &[usize], order: usize) -> Vec<u64> {
    let mut out = vec![0u64; order + 1];
    out[0] = 1;
    for (k, &n) in multiplicities.iter().enumerate().skip(1) {
        if k > order {
            break;
        }
        let z = fk_character(k as u32, order);
        for _ in 0..n {
            out = series_product(&out, &z, order);
        }
    }
    out
}

/// `[a_(n), b_(m)] = B(a,b) C(n, wt a + wt b - 1) δ_{n - wt a + 1, -m + wt b - 1} · 1`.
pub fn commutator_from_b(wa: u32, wb: u32, b: &RadicalScalar, n: i64, m: i64) -> RadicalScalar {
    assert!(wa >= 1 && wb >= 1, "generator weights must be at least 1");
    let (wa, wb) = (wa as i64, wb as i64);
    if n - wa + 1 != -m + wb - 1 {
        return RadicalScalar::zero();
    }
    b.scale(&Rational::from_integer(binomial(n, wa + wb - 1)))
}

pub fn fk_commutator(k: u32, n: i64, m: i64) -> RadicalScalar {
    commutator_from_b(k, k, &RadicalScalar::one(), n, m)
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeDecomposition {
    pub order: usize,
    pub dims: Vec<usize>,
    /// `N_k` for `k = 0..=order` (entry 0 is always 0).
    pub multiplicities: Vec<usize>,
    /// Diagonal of the form on the new generators of each weight after
    /// orthogonalization (all positive).
    pub norms: Vec<Vec<RadicalScalar>>,
    pub character: Vec<u64>,
    pub certificate: bool,
}

type Vector = Vec<RadicalScalar>;

fn dot(a: &[RadicalScalar], b: &[RadicalScalar]) -> RadicalScalar {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

fn mat_vec(m: &Matrix, v: &[RadicalScalar]) -> Vector {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Weight by weight, the span of `g_(j) x` (`j ≤ -1`, `g` a generator found at a
/// lower weight, `x` any basis vector) is the generated part; its orthogonal
/// complement under `B(a, b) = C_{0,a,b}` supplies the new generators.
pub fn free_decomposition<S>(sys: &S, order: usize) -> Result<FreeDecomposition>
where
    S: StructureConstants<Scalar = RadicalScalar>,
{
    if order as u32 > sys.cutoff() {
        return Err(Error::CutoffExceeded { weight: order as i64, cutoff: sys.cutoff() });
    }
    let bases: Vec<Vec<S::Label>> = (0..=order as u32).map(|w| sys.basis(w)).collect::<Result<_>>()?;
    let vac = bases[0].first().cloned().ok_or_else(|| Error::Config("weight 0 is empty".into()))?;
    let mut generators: Vec<(usize, Vector)> = Vec::new();
    let mut multiplicities = vec![0usize; order + 1];
    let mut norms = vec![Vec::new(); order + 1];
    for n in 1..=order {
        let basis = &bases[n];
        let mut gram: Matrix = Vec::with_capacity(basis.len());
        for a in basis {
            gram.push(basis.iter().map(|b| sys.constant(&vac, a, b)).collect::<Result<_>>()?);
        }
        let mut spanning: Vec<Vector> = Vec::new();
        for (wg, g) in &generators {
            for wx in 0..=(n - wg) {
                for x in &bases[wx] {
                    let mut v = vec![RadicalScalar::zero(); basis.len()];
                    for (gi, gl) in bases[*wg].iter().enumerate() {
                        if g[gi].is_zero() {
                            continue;
                        }
                        for (di, d) in basis.iter().enumerate() {
                            let c = sys.constant(d, gl, x)?;
                            if !c.is_zero() {
                                v[di] += &(&g[gi] * &c);
                            }
                        }
                    }
                    if v.iter().any(|c| !c.is_zero()) {
                        spanning.push(v);
                    }
                }
            }
        }
        let span: Vec<Vector> = if spanning.is_empty() {
            Vec::new()
        } else {
            let (r, pivots) = linalg::rref(spanning)?;
            r.into_iter().take(pivots.len()).collect()
        };
        let restricted: Matrix = span.iter().map(|s| span.iter().map(|t| dot(s, &mat_vec(&gram, t))).collect()).collect();
        if !span.is_empty() && linalg::determinant(restricted)?.is_zero() {
            return Err(Error::DegenerateForm { weight: n as u32 });
        }
        let constraints: Matrix = span.iter().map(|s| mat_vec(&gram, s)).collect();
        let complement = linalg::kernel(constraints, basis.len())?;
        // Gram-Schmidt on the complement; pivots must be positive.
        let mut ortho: Vec<Vector> = Vec::new();
        let mut diag = Vec::new();
        for v in complement {
            let mut w = v.clone();
            for (u, du) in ortho.iter().zip(&diag) {
                let proj = &dot(u, &mat_vec(&gram, &v)) * &RadicalScalar::inverse(du)?;
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= &(&proj * ui);
                }
            }
            let d = dot(&w, &mat_vec(&gram, &w));
            match d.signum() {
                0 => return Err(Error::DegenerateForm { weight: n as u32 }),
                s if s < 0 => return Err(Error::IndefiniteForm { weight: n as u32 }),
                _ => {}
            }
            ortho.push(w);
            diag.push(d);
        }
        multiplicities[n] = ortho.len();
        norms[n] = diag;
        generators.extend(ortho.into_iter().map(|v| (n, v)));
    }
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let character = free_character(&multiplicities, order);
    let certificate = character.iter().zip(&dims).all(|(c, d)| *c == *d as u64);
    Ok(FreeDecomposition { order, dims, multiplicities, norms, character, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::seed::{Mode, SeedSpec, SeedVA};

    /// Partitions of `n` into parts of size at least `k`, by recursion on the largest part.
    fn partitions(n: usize, min: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (min..=n).map(|p| partitions(n - p, p)).sum()
    }

    #[test]
    fn characters() {
        assert_eq!(fk_character(1, 6), vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(fk_character(2, 6), vec![1, 0, 1, 1, 2, 2, 4]);
        assert_eq!(fk_character(9, 6), vec![1, 0, 0, 0, 0, 0, 0]);
        for k in 1..=5 {
            let c = fk_character(k, 20);
            for (j, x) in c.iter().enumerate() {
                assert_eq!(*x, partitions(j, k as usize), "k={k} j={j}");
            }
        }
    }

    #[test]
    fn commutators() {
        let one = RadicalScalar::one();
        assert!(commutator_from_b(1, 1, &one, 1, -1).is_one());
        assert!(commutator_from_b(1, 1, &one, 1, -2).is_zero());
        let seed = SeedVA::new(SeedSpec::Heisenberg, 2).unwrap();
        for n in -10..=10i64 {
            for m in -10..=10i64 {
                let (_, central) = seed.algebra().bracket(Mode::new(0, n as i32), Mode::new(0, m as i32));
                assert_eq!(fk_commutator(1, n, m), central, "{n} {m}");
            }
        }
        let f3 = SeedVA::new(SeedSpec::Fk { k: 3 }, 2).unwrap();
        for n in -6..=6i64 {
            for m in -6..=6i64 {
                let (_, central) = f3.algebra().bracket(f3.generator_mode(0, n), f3.generator_mode(0, m));
                assert_eq!(fk_commutator(3, n, m), central, "{n} {m}");
            }
        }
    }

    #[test]
    fn decompositions() {
        let heis = SeedVA::new(SeedSpec::Heisenberg, 8).unwrap();
        let d = free_decomposition(&heis, 8).unwrap();
        assert!(d.certificate);
        assert_eq!(d.multiplicities, vec![0, 1, 0, 0, 0, 0, 0, 0, 0]);

        let vir = SeedVA::new(SeedSpec::virasoro_limit(rat(1, 2)), 8).unwrap();
        let d = free_decomposition(&vir, 8).unwrap();
        assert!(d.certificate);
        assert_eq!(d.multiplicities, vec![0, 0, 1, 0, 0, 0, 0, 0, 0]);

        let two = SeedVA::new(SeedSpec::Free { weights: vec![1, 1], gram: None, names: None }, 6).unwrap();
        let d = free_decomposition(&two, 6).unwrap();
        assert!(d.certificate);
        assert_eq!(d.multiplicities[1], 2);
        assert_eq!(d.multiplicities.iter().sum::<usize>(), 2);
    }

    #[test]
    fn interacting_seed_is_not_free() {
        // The linear term in the Virasoro bracket makes `L_(1) L` nonzero, but
        // the decomposition only counts states, so it still matches: the
        // factorization check is what separates the two.
        let vir = SeedVA::new(SeedSpec::virasoro(rat(1, 2)), 4).unwrap();
        let d = free_decomposition(&vir, 4).unwrap();
        assert_eq!(d.multiplicities[2], 1);
    }
}
