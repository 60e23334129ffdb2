//! Convergence detection and power-law rate fitting for sequences `C^N`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::RadicalScalar;

/// Cauchy tolerance used when the caller gives none.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    pub level: u64,
    pub exact: RadicalScalar,
    pub value: f64,
}

impl Sample {
    pub fn new(level: u64, exact: RadicalScalar) -> Self {
        let value = exact.to_f64();
        Self { level, exact, value }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// The exact values are constant on the tail.
    ExactTail,
    /// The float tail is Cauchy under the tolerance.
    Cauchy,
    /// Not Cauchy on the sampled range, but the exact limit is known and the
    /// distance to it decays with a positive fitted exponent.
    Extrapolated,
    /// Even and odd subsequences settle on different values.
    BoundedNonconvergent,
    Unknown,
}

/// Least-squares fit of `log|C^N - C^∞| = log A - p log N`.
#[derive(Clone, Debug, Serialize)]
pub struct RateFit {
    pub exponent: f64,
    pub amplitude: f64,
    pub r_squared: f64,
    pub points: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub labels: [String; 3],
    pub samples: Vec<Sample>,
    pub status: Status,
    pub converged: bool,
    pub tolerance: f64,
    /// `max - min` over the tail (second half of the samples).
    pub tail_gap: f64,
    pub limit_estimate: f64,
    pub limit_exact: Option<RadicalScalar>,
    pub rate: Option<RateFit>,
    pub cluster_values: Option<[f64; 2]>,
}

impl ConvergenceReport {
    /// Samples are not all exactly equal.
    pub fn nonconstant(&self) -> bool {
        self.samples.windows(2).any(|w| w[0].exact != w[1].exact)
    }
}

fn tail<T>(xs: &[T]) -> &[T] {
    let keep = xs.len().div_ceil(2).max(xs.len().min(2));
    &xs[xs.len() - keep..]
}

fn spread(xs: impl Iterator<Item = f64>) -> f64 {
    let (lo, hi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    if lo.is_finite() {
        hi - lo
    } else {
        0.0
    }
}

/// Fit over the largest decade of available levels, skipping exact hits.
pub fn fit_rate(samples: &[Sample], limit: f64) -> Option<RateFit> {
    let top = samples.last()?.level as f64;
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.level as f64 >= top / 10.0)
        .map(|s| (s.level as f64, (s.value - limit).abs()))
        .filter(|&(_, d)| d > 0.0 && d.is_finite())
        .map(|(n, d)| (n.ln(), d.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some(RateFit { exponent: -slope, amplitude: (my - slope * mx).exp(), r_squared, points: pts.len() })
}

/// Classifies a sampled sequence. `exact_limit` is a limit known by other
/// means (closed-form asymptotics); it is never taken on trust when the
/// exact tail is constant.
pub fn analyze(
    labels: [String; 3],
    samples: Vec<Sample>,
    exact_limit: Option<RadicalScalar>,
    tolerance: f64,
) -> Result<ConvergenceReport> {
    if samples.is_empty() {
        return Err(Error::Config("a convergence report needs at least one sample".into()));
    }
    if samples.windows(2).any(|w| w[0].level >= w[1].level) {
        return Err(Error::Config("sample levels must be strictly increasing".into()));
    }
    let t = tail(&samples);
    let tail_gap = spread(t.iter().map(|s| s.value));
    let last = samples.last().expect("nonempty");
    let exact_tail = samples.len() >= 2 && t.windows(2).all(|w| w[0].exact == w[1].exact);

    let mut report = ConvergenceReport {
        labels,
        status: Status::Unknown,
        converged: false,
        tolerance,
        tail_gap,
        limit_estimate: last.value,
        limit_exact: None,
        rate: None,
        cluster_values: None,
        samples: Vec::new(),
    };
    if exact_tail {
        report.status = Status::ExactTail;
        report.converged = true;
        report.limit_exact = Some(last.exact.clone());
    } else if tail_gap < tolerance {
        report.status = Status::Cauchy;
        report.converged = true;
        report.limit_exact = exact_limit.clone();
        report.rate = match &exact_limit {
            Some(l) => {
                report.limit_estimate = l.to_f64();
                fit_rate(&samples, report.limit_estimate)
            }
            // the last value stands in for the limit, so it cannot be a fit point
            None => fit_rate(&samples[..samples.len() - 1], report.limit_estimate),
        };
    } else if let Some(l) = exact_limit {
        let lf = l.to_f64();
        report.rate = fit_rate(&samples, lf);
        let first = (t[0].value - lf).abs();
        let end = (last.value - lf).abs();
        if report.rate.as_ref().is_some_and(|r| r.exponent > 0.0) && end < first {
            report.status = Status::Extrapolated;
            report.limit_estimate = lf;
            report.limit_exact = Some(l);
        }
    }
    if report.status == Status::Unknown && samples.len() >= 4 {
        let even: Vec<f64> = samples.iter().step_by(2).map(|s| s.value).collect();
        let odd: Vec<f64> = samples.iter().skip(1).step_by(2).map(|s| s.value).collect();
        let (ge, go) = (spread(tail(&even).iter().copied()), spread(tail(&odd).iter().copied()));
        let (ve, vo) = (*even.last().expect("nonempty"), *odd.last().expect("nonempty"));
        if ge < tolerance && go < tolerance && (ve - vo).abs() >= tolerance {
            report.status = Status::BoundedNonconvergent;
            report.cluster_values = Some([ve, vo]);
        }
    }
    report.samples = samples;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn seq(levels: &[u64], f: impl Fn(u64) -> RadicalScalar) -> Vec<Sample> {
        levels.iter().map(|&n| Sample::new(n, f(n))).collect()
    }

    fn labels() -> [String; 3] {
        ["a".into(), "b".into(), "c".into()]
    }

    #[test]
    fn constant_tail_is_exact() {
        let s = seq(&[2, 3, 4, 5], |n| if n < 3 { RadicalScalar::zero() } else { RadicalScalar::one() });
        let r = analyze(labels(), s, None, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.status, Status::ExactTail);
        assert!(r.converged && r.rate.is_none());
        assert!(r.limit_exact.unwrap().is_one());
    }

    #[test]
    fn inverse_sqrt_decay() {
        let levels: Vec<u64> = (4..=12).map(|k| 1 << k).collect();
        let s = seq(&levels, |n| RadicalScalar::sqrt_of_rational(&rat(4, n as i64)).unwrap());
        let r = analyze(labels(), s, Some(RadicalScalar::zero()), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.status, Status::Extrapolated);
        assert!(!r.converged);
        let fit = r.rate.unwrap();
        assert!((fit.exponent - 0.5).abs() < 1e-9, "{fit:?}");
        assert!((fit.amplitude - 2.0).abs() < 1e-6);
    }

    #[test]
    fn fast_decay_is_cauchy() {
        let s = seq(&[10, 100, 1000, 10_000], |n| RadicalScalar::from_rational(rat(1, (n * n * n) as i64)));
        let r = analyze(labels(), s, None, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.status, Status::Cauchy);
        assert!((r.rate.unwrap().exponent - 3.0).abs() < 0.2);
    }

    #[test]
    fn oscillation_is_flagged() {
        let s = seq(&[1, 2, 3, 4, 5, 6, 7, 8], |n| RadicalScalar::from_int(if n % 2 == 0 { 1 } else { -1 }));
        let r = analyze(labels(), s, None, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.status, Status::BoundedNonconvergent);
        assert_eq!(r.cluster_values, Some([-1.0, 1.0]));
    }

    #[test]
    fn rejects_unsorted_levels() {
        let s = seq(&[3, 2], |_| RadicalScalar::one());
        assert!(analyze(labels(), s, None, DEFAULT_TOLERANCE).is_err());
    }
}
