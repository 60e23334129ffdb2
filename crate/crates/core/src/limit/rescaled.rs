//! The rescaled Virasoro sequence: `L̃ = L/√N` in `Vir_{cN}`, whose constants
//! are polynomials in `λ = N^{-1/2}` and tend to those of the algebra with the
//! linear bracket term dropped.

use rayon::prelude::*;

use super::convergence::{analyze, ConvergenceReport, Sample};
use crate::error::{Error, Result};
use crate::scalar::{rat, RadicalScalar, Rational};
use crate::seed::{SeedSpec, SeedVA, Word};

/// `N ∈ {16, 32, …, 4096}`.
pub fn default_levels() -> Vec<u64> {
    (4..=12).map(|k| 1u64 << k).collect()
}

/// Basis triples with `wt a + wt b + wt c ≤ total`.
pub fn triples(seed: &SeedVA, total: u32) -> Result<Vec<[Word; 3]>> {
    let mut out = Vec::new();
    for wa in 0..=total {
        for wb in 0..=total - wa {
            for wc in 0..=total - wa - wb {
                for a in seed.basis(wa)?.iter() {
                    for b in seed.basis(wb)?.iter() {
                        for c in seed.basis(wc)?.iter() {
                            out.push([a.clone(), b.clone(), c.clone()]);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// One report per triple; the exact limit is taken from the limit algebra.
pub fn rescaled_virasoro_reports(c: &Rational, levels: &[u64], total: u32, tolerance: f64) -> Result<Vec<ConvergenceReport>> {
    let seeds: Vec<SeedVA> =
        levels.iter().map(|&n| SeedVA::new(SeedSpec::virasoro_rescaled(c.clone(), n), total)).collect::<Result<_>>()?;
    let limit = SeedVA::new(SeedSpec::virasoro_limit(c.clone()), total)?;
    let all = triples(&limit, total)?;
    all.par_iter()
        .map(|[a, b, x]| {
            let samples = levels
                .iter()
                .zip(&seeds)
                .map(|(&n, s)| Ok(Sample::new(n, s.structure_constant(a, b, x)?)))
                .collect::<Result<Vec<_>>>()?;
            let labels = [limit.label(a), limit.label(b), limit.label(x)];
            analyze(labels, samples, Some(limit.structure_constant(a, b, x)?), tolerance)
        })
        .collect()
}

/// `λ = N^{-1/2}` when `N` is a perfect square.
pub fn rational_lambda(n: u64) -> Option<Rational> {
    let r = (n as f64).sqrt().round() as u64;
    (r * r == n && r > 0).then(|| rat(1, r as i64))
}

/// Newton interpolation through `(x_i, y_i)`; coefficients of `Σ c_j x^j`.
pub fn interpolate(xs: &[Rational], ys: &[RadicalScalar]) -> Result<Vec<RadicalScalar>> {
    let n = xs.len();
    if n != ys.len() || n == 0 {
        return Err(Error::Config("interpolation needs matching, nonempty node lists".into()));
    }
    let mut dd: Vec<RadicalScalar> = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            let den = &xs[i] - &xs[i - k];
            if den == Rational::from_integer(0.into()) {
                return Err(Error::DivisionByZero);
            }
            dd[i] = (&dd[i] - &dd[i - 1]).scale(&den.recip());
        }
    }
    // expand Newton form into monomials
    let mut coeffs = vec![RadicalScalar::zero(); n];
    let mut basis = vec![Rational::from_integer(1.into())];
    for k in 0..n {
        for (j, b) in basis.iter().enumerate() {
            coeffs[j] += &dd[k].scale(b);
        }
        let mut next = vec![Rational::from_integer(0.into()); basis.len() + 1];
        for (j, b) in basis.iter().enumerate() {
            next[j + 1] += b;
            next[j] -= b * &xs[k];
        }
        basis = next;
    }
    Ok(coeffs)
}

pub fn evaluate(coeffs: &[RadicalScalar], x: &RadicalScalar) -> RadicalScalar {
    coeffs.iter().rev().fold(RadicalScalar::zero(), |acc, c| &(&acc * x) + c)
}

/// Exact constant term of a report's samples as a polynomial in `λ`, fitted on
/// the perfect-square levels and confirmed at every other level.
pub fn exact_constant_term(report: &ConvergenceReport) -> Result<Option<RadicalScalar>> {
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for s in &report.samples {
        if let Some(l) = rational_lambda(s.level) {
            xs.push(l);
            ys.push(s.exact.clone());
        }
    }
    if xs.is_empty() {
        return Ok(None);
    }
    let coeffs = interpolate(&xs, &ys)?;
    for s in &report.samples {
        let lambda = RadicalScalar::sqrt_of_rational(&rat(1, s.level as i64))?;
        if evaluate(&coeffs, &lambda) != s.exact {
            return Ok(None);
        }
    }
    Ok(Some(coeffs[0].clone()))
}
