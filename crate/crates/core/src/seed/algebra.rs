use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::word::Mode;
use crate::error::{Error, Result};
use crate::scalar::{binomial, rat, rat_int, RadicalScalar, Rational, RationalValue};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub weight: u32,
}

/// Generator commutators; only these are taken as axioms.
#[derive(Clone, Debug, PartialEq)]
pub enum Brackets {
    /// `[X_p, Y_q] = B_xy · binom(p + wt x - 1, wt x + wt y - 1) · δ_{p+q,0}`.
    Free { gram: Vec<Vec<Rational>> },
    /// `[L_m, L_n] = λ(m - n)L_{m+n} + (c/12)(m³ - m)δ_{m+n,0}`.
    Virasoro { lambda: RadicalScalar, c: Rational },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModeAlgebra {
    pub generators: Vec<Generator>,
    pub brackets: Brackets,
}

/// Seed vertex algebras understood by [`super::SeedVA::new`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeedSpec {
    Heisenberg,
    /// One weight-`k` generator with `[A_p, A_q] = binom(p+k-1, 2k-1) δ_{p+q,0}`.
    Fk { k: u32 },
    /// Several free generators; `gram` defaults to the identity.
    Free {
        weights: Vec<u32>,
        #[serde(default)]
        gram: Option<Vec<Vec<RationalValue>>>,
        #[serde(default)]
        names: Option<Vec<String>>,
    },
    Virasoro { c: RationalValue },
    /// `L̃ = L/√n` in `Vir_{c·n}`: bracket scaled by `1/√n`, central term `c`.
    VirasoroRescaled { c: RationalValue, n: u64 },
    /// The bracket with the linear term dropped.
    VirasoroLimit { c: RationalValue },
}

impl SeedSpec {
    pub fn virasoro(c: Rational) -> Self {
        SeedSpec::Virasoro { c: RationalValue(c) }
    }

    pub fn virasoro_rescaled(c: Rational, n: u64) -> Self {
        SeedSpec::VirasoroRescaled { c: RationalValue(c), n }
    }

    pub fn virasoro_limit(c: Rational) -> Self {
        SeedSpec::VirasoroLimit { c: RationalValue(c) }
    }

    pub fn name(&self) -> String {
        match self {
            SeedSpec::Heisenberg => "heisenberg".into(),
            SeedSpec::Fk { k } => format!("F^{k}"),
            SeedSpec::Free { weights, .. } => format!("free{weights:?}"),
            SeedSpec::Virasoro { c } => format!("virasoro(c={})", c.0),
            SeedSpec::VirasoroRescaled { c, n } => format!("virasoro_rescaled(c={}, N={n})", c.0),
            SeedSpec::VirasoroLimit { c } => format!("virasoro_limit(c={})", c.0),
        }
    }
}

fn default_names(n: usize) -> Vec<String> {
    if n == 1 {
        return vec!["a".into()];
    }
    (0..n)
        .map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("g{i}_") })
        .collect()
}

impl ModeAlgebra {
    pub fn from_spec(spec: &SeedSpec) -> Result<Self> {
        let virasoro = |lambda: RadicalScalar, c: &Rational| ModeAlgebra {
            generators: vec![Generator { name: "L".into(), weight: 2 }],
            brackets: Brackets::Virasoro { lambda, c: c.clone() },
        };
        Ok(match spec {
            SeedSpec::Heisenberg => Self::free(vec![1], None, None)?,
            SeedSpec::Fk { k } => {
                if *k == 0 {
                    return Err(Error::UnsupportedSeed("F^k needs k ≥ 1".into()));
                }
                Self::free(vec![*k], None, None)?
            }
            SeedSpec::Free { weights, gram, names } => {
                let gram = gram.as_ref().map(|g| g.iter().map(|row| row.iter().map(|x| x.0.clone()).collect()).collect());
                Self::free(weights.clone(), gram, names.clone())?
            }
            SeedSpec::Virasoro { c } => virasoro(RadicalScalar::one(), &c.0),
            SeedSpec::VirasoroRescaled { c, n } => {
                if *n == 0 {
                    return Err(Error::UnsupportedSeed("rescaled Virasoro needs N ≥ 1".into()));
                }
                virasoro(RadicalScalar::sqrt_of_rational(&rat(1, *n as i64))?, &c.0)
            }
            SeedSpec::VirasoroLimit { c } => virasoro(RadicalScalar::zero(), &c.0),
        })
    }

    pub fn free(weights: Vec<u32>, gram: Option<Vec<Vec<Rational>>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = weights.len();
        if n == 0 || n > u16::MAX as usize {
            return Err(Error::UnsupportedSeed("free seed needs at least one generator".into()));
        }
        if weights.contains(&0) {
            return Err(Error::UnsupportedSeed("generator weights must be ≥ 1".into()));
        }
        let gram = gram.unwrap_or_else(|| {
            (0..n).map(|i| (0..n).map(|j| if i == j { rat_int(1) } else { Rational::zero() }).collect()).collect()
        });
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(Error::UnsupportedSeed(format!("gram matrix must be {n}×{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let sign = if (weights[i] + weights[j]) % 2 == 0 { 1 } else { -1 };
                if gram[i][j] != gram[j][i].clone() * rat_int(sign) {
                    return Err(Error::UnsupportedSeed("gram matrix violates B(a,b) = (-1)^(wt a + wt b) B(b,a)".into()));
                }
                if weights[i] != weights[j] && !gram[i][j].is_zero() {
                    return Err(Error::UnsupportedSeed("generators of different weight must be B-orthogonal".into()));
                }
            }
        }
        let names = names.unwrap_or_else(|| default_names(n));
        if names.len() != n || names.iter().any(|s| s.is_empty() || s.contains(|c: char| c == '-' || c == '+' || c.is_whitespace() || c.is_ascii_digit())) {
            return Err(Error::UnsupportedSeed("generator names must be nonempty and free of digits, signs and spaces".into()));
        }
        let generators = names.into_iter().zip(weights).map(|(name, weight)| Generator { name, weight }).collect();
        Ok(Self { generators, brackets: Brackets::Free { gram } })
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn weight(&self, gen: u16) -> u32 {
        self.generators[gen as usize].weight
    }

    /// `X_m|0⟩ = 0` exactly when `m > -wt x`.
    pub fn is_creation(&self, x: Mode) -> bool {
        x.m <= -(self.weight(x.gen) as i32)
    }

    /// `[x, y]` as (linear part, central part).
    pub fn bracket(&self, x: Mode, y: Mode) -> (Vec<(Mode, RadicalScalar)>, RadicalScalar) {
        match &self.brackets {
            Brackets::Free { gram } => {
                if x.m + y.m != 0 {
                    return (Vec::new(), RadicalScalar::zero());
                }
                let (wx, wy) = (self.weight(x.gen) as i64, self.weight(y.gen) as i64);
                let b = &gram[x.gen as usize][y.gen as usize];
                let coef = b * Rational::from_integer(binomial(x.m as i64 + wx - 1, wx + wy - 1));
                (Vec::new(), RadicalScalar::from_rational(coef))
            }
            Brackets::Virasoro { lambda, c } => {
                let (m, n) = (x.m as i64, y.m as i64);
                let mut lin = Vec::new();
                if m != n && !lambda.is_zero() {
                    lin.push((Mode::new(0, (m + n) as i32), lambda.scale(&rat_int(m - n))));
                }
                let central = if m + n == 0 {
                    RadicalScalar::from_rational(c * rat(m * m * m - m, 12))
                } else {
                    RadicalScalar::zero()
                };
                (lin, central)
            }
        }
    }

    /// Gram entry `B(x, y)` between generators.
    pub fn generator_form(&self, x: u16, y: u16) -> Rational {
        match &self.brackets {
            Brackets::Free { gram } => gram[x as usize][y as usize].clone(),
            Brackets::Virasoro { c, .. } => c / rat_int(2),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brackets_are_antisymmetric() {
        let specs = [
            SeedSpec::Heisenberg,
            SeedSpec::Fk { k: 3 },
            SeedSpec::virasoro(rat(1, 2)),
            SeedSpec::virasoro_rescaled(rat(1, 1), 7),
            SeedSpec::virasoro_limit(rat(3, 1)),
        ];
        for spec in specs {
            let alg = ModeAlgebra::from_spec(&spec).unwrap();
            for p in -6..=6 {
                for q in -6..=6 {
                    let (l1, c1) = alg.bracket(Mode::new(0, p), Mode::new(0, q));
                    let (l2, c2) = alg.bracket(Mode::new(0, q), Mode::new(0, p));
                    assert_eq!(c1, -c2, "{spec:?} {p} {q}");
                    assert_eq!(l1.len(), l2.len());
                    for ((m1, a), (m2, b)) in l1.iter().zip(&l2) {
                        assert_eq!(m1, m2);
                        assert_eq!(a, &-b);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_free_data() {
        assert!(ModeAlgebra::free(vec![1, 2], Some(vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(1, 1)]]), None).is_err());
        assert!(ModeAlgebra::free(vec![1], Some(vec![vec![rat(1, 1)]]), Some(vec!["x1".into()])).is_err());
        assert!(ModeAlgebra::from_spec(&SeedSpec::Fk { k: 0 }).is_err());
    }

    #[test]
    fn spec_parses_from_config_text() {
        let spec: SeedSpec = serde_json::from_str(r#"{"kind":"virasoro","c":"1/2"}"#).unwrap();
        assert_eq!(spec, SeedSpec::virasoro(rat(1, 2)));
        let spec: SeedSpec = toml::from_str("kind = \"virasoro_rescaled\"\nc = 0.5\nn = 16").unwrap();
        assert_eq!(spec, SeedSpec::virasoro_rescaled(rat(1, 2), 16));
    }
}
