//! Wick's theorem for free generators: correlators as sums over pairings.

use std::fmt::Write as _;

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{binomial, RadicalScalar, Rational};
use crate::seed::{Mode, SeedVA, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Insertion {
    pub label: String,
    /// Index into the generator form.
    pub generator: usize,
    pub weight: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Pairing {
    pub pairs: Vec<(usize, usize)>,
    /// `Π B(a_i, a_j)` over the pairs.
    pub coefficient: Rational,
}

/// `Σ_P Π_{(i,j) ∈ P} B(a_i, a_j) / (z_i - z_j)^{wt_i + wt_j}`.
#[derive(Clone, Debug, Serialize)]
pub struct PairingSum {
    pub insertions: Vec<Insertion>,
    pub pairings: Vec<Pairing>,
}

/// All perfect matchings of `0..m` as sorted pair lists; empty for odd `m`.
pub fn perfect_matchings(m: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(rest: &[usize], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(cur.clone());
            return;
        };
        for k in 0..tail.len() {
            cur.push((first, tail[k]));
            let remaining: Vec<usize> = tail.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect();
            go(&remaining, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m % 2 == 0 {
        go(&(0..m).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    }
    out
}

pub fn double_factorial(n: i64) -> u128 {
    (1..=n.max(0)).rev().step_by(2).map(|k| k as u128).product()
}

pub fn wick_correlator(insertions: &[Insertion], form: &[Vec<Rational>]) -> Result<PairingSum> {
    if let Some(x) = insertions.iter().find(|x| x.generator >= form.len() || form[x.generator].len() != form.len()) {
        return Err(Error::Config(format!("generator {} outside the {}×{} form", x.generator, form.len(), form.len())));
    }
    let pairings = perfect_matchings(insertions.len())
        .into_iter()
        .map(|pairs| {
            let coefficient = pairs
                .iter()
                .map(|&(i, j)| form[insertions[i].generator][insertions[j].generator].clone())
                .fold(Rational::one(), |a, b| a * b);
            Pairing { pairs, coefficient }
        })
        .collect();
    Ok(PairingSum { insertions: insertions.to_vec(), pairings })
}

impl PairingSum {
    fn exponent(&self, i: usize, j: usize) -> i32 {
        (self.insertions[i].weight + self.insertions[j].weight) as i32
    }

    pub fn evaluate(&self, z: &[f64]) -> f64 {
        self.pairings
            .iter()
            .map(|p| {
                let c = p.coefficient.to_f64().unwrap_or(f64::NAN);
                p.pairs.iter().fold(c, |acc, &(i, j)| acc / (z[i] - z[j]).powi(self.exponent(i, j)))
            })
            .sum()
    }

    pub fn evaluate_exact(&self, z: &[Rational]) -> Result<Rational> {
        let mut total = Rational::zero();
        for p in &self.pairings {
            let mut term = p.coefficient.clone();
            for &(i, j) in &p.pairs {
                let d = &z[i] - &z[j];
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                term /= num_traits::pow(d, self.exponent(i, j) as usize);
            }
            total += term;
        }
        Ok(total)
    }

    /// Coefficient of `Π z_i^{-p_i - wt_i}` in the expansion at
    /// `|z_1| > … > |z_m|`, i.e. the Wick prediction for `⟨0|X_{p_1} … X_{p_m}|0⟩`.
    pub fn mode_coefficient(&self, p: &[i64]) -> Rational {
        let mut total = Rational::zero();
        'pairings: for pairing in &self.pairings {
            let mut term = pairing.coefficient.clone();
            for &(i, j) in &pairing.pairs {
                // (z_i - z_j)^{-h} = Σ_q C(q+h-1, h-1) z_i^{-h-q} z_j^q
                let (wi, wj) = (self.insertions[i].weight as i64, self.insertions[j].weight as i64);
                let q = p[i] - wj;
                if q < 0 || p[j] != -q - wj {
                    continue 'pairings;
                }
                term *= Rational::from_integer(binomial(p[i] + wi - 1, wi + wj - 1));
            }
            total += term;
        }
        total
    }

    pub fn to_latex(&self) -> String {
        if self.pairings.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, p) in self.pairings.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            let mut num = p.coefficient.to_string();
            if num.contains('/') {
                num = format!("({num})");
            }
            let _ = write!(s, "\\frac{{{num}}}{{");
            for &(i, j) in &p.pairs {
                let _ = write!(s, "(z_{{{}}}-z_{{{}}})^{{{}}}", i + 1, j + 1, self.exponent(i, j));
            }
            s.push('}');
        }
        s
    }
}

/// `⟨0| X_{p_1} … X_{p_m} |0⟩` computed by normal ordering in the seed.
pub fn mode_correlator(seed: &SeedVA, insertions: &[Insertion], p: &[i64]) -> Result<RadicalScalar> {
    let mut v = crate::seed::single(Word::vacuum());
    for (x, &pm) in insertions.iter().zip(p).rev() {
        let m = i32::try_from(pm).map_err(|_| Error::Config(format!("mode {pm} out of range")))?;
        v = seed.apply_mode_vec(Mode::new(x.generator as u16, m), &v);
        if v.is_empty() {
            return Ok(RadicalScalar::zero());
        }
    }
    Ok(v.get(&Word::vacuum()).cloned().unwrap_or_else(RadicalScalar::zero))
}

/// Mode tuples with `Σ p_i = 0` and positive part at most `order`, restricted
/// to `p_1 ≥ wt_1` and `p_m ≤ -wt_m` (otherwise the vacuum kills the product).
pub fn mode_tuples(weights: &[u32], order: i64) -> Vec<Vec<i64>> {
    fn go(weights: &[u32], i: usize, pos: i64, sum: i64, order: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let m = weights.len();
        if i == m {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let (mut lo, mut hi) = (-order, order - pos);
        if i == 0 {
            lo = lo.max(weights[0] as i64);
        }
        if i == m - 1 {
            hi = hi.min(-(weights[m - 1] as i64));
        }
        for p in lo..=hi {
            // remaining negative budget must be able to cancel
            let next_sum = sum + p;
            if next_sum < -order || next_sum > order {
                continue;
            }
            cur.push(p);
            go(weights, i + 1, pos + p.max(0), next_sum, order, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if !weights.is_empty() {
        go(weights, 0, 0, 0, order, &mut Vec::new(), &mut out);
    }
    out
}

/// Compares Wick and direct mode evaluation on every tuple from
/// [`mode_tuples`]; returns the number of tuples and the mismatches.
pub fn compare_with_modes(seed: &SeedVA, sum: &PairingSum, order: i64) -> Result<(usize, Vec<Vec<i64>>)> {
    let weights: Vec<u32> = sum.insertions.iter().map(|x| x.weight).collect();
    let tuples = mode_tuples(&weights, order);
    let mut bad = Vec::new();
    for p in &tuples {
        let direct = mode_correlator(seed, &sum.insertions, p)?;
        if direct != RadicalScalar::from_rational(sum.mode_coefficient(p)) {
            bad.push(p.clone());
        }
    }
    Ok((tuples.len(), bad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use crate::seed::SeedSpec;

    fn bosons(m: usize) -> Vec<Insertion> {
        (0..m).map(|_| Insertion { label: "a".into(), generator: 0, weight: 1 }).collect()
    }

    #[test]
    fn matchings_count() {
        for m in 0..=8 {
            let n = perfect_matchings(m).len() as u128;
            assert_eq!(n, if m % 2 == 0 { double_factorial(m as i64 - 1) } else { 0 });
        }
        assert_eq!(perfect_matchings(4), vec![vec![(0, 1), (2, 3)], vec![(0, 2), (1, 3)], vec![(0, 3), (1, 2)]]);
    }

    #[test]
    fn two_and_four_points() {
        let form = vec![vec![rat_int(1)]];
        let two = wick_correlator(&bosons(2), &form).unwrap();
        assert_eq!(two.to_latex(), "\\frac{1}{(z_{1}-z_{2})^{2}}");
        assert_eq!(two.evaluate_exact(&[rat_int(3), rat_int(1)]).unwrap(), rat(1, 4));
        let four = wick_correlator(&bosons(4), &form).unwrap();
        assert_eq!(four.pairings.len(), 3);
        let z: [f64; 4] = [4.0, 2.5, 1.0, 0.5];
        let direct = 1.0 / ((z[0] - z[1]) * (z[2] - z[3])).powi(2)
            + 1.0 / ((z[0] - z[2]) * (z[1] - z[3])).powi(2)
            + 1.0 / ((z[0] - z[3]) * (z[1] - z[2])).powi(2);
        assert!((four.evaluate(&z) - direct).abs() < 1e-12);
        assert!(wick_correlator(&bosons(3), &form).unwrap().pairings.is_empty());
    }

    #[test]
    fn heisenberg_four_point_modes() {
        let seed = SeedVA::new(SeedSpec::Heisenberg, 8).unwrap();
        let sum = wick_correlator(&bosons(4), &[vec![rat_int(1)]]).unwrap();
        let (n, bad) = compare_with_modes(&seed, &sum, 4).unwrap();
        assert!(n > 10);
        assert!(bad.is_empty(), "{bad:?}");
    }
}
