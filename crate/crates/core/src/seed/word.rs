use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::RadicalScalar;

/// The physics mode `X_m` of generator `gen`; it raises the weight by `-m`.
/// Field order gives the canonical order: more negative modes first, then generator id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mode {
    pub m: i32,
    pub gen: u16,
}

impl Mode {
    pub fn new(gen: u16, m: i32) -> Self {
        Self { m, gen }
    }
}

/// A canonically ordered product of creation modes applied to the vacuum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Mode>);

impl Word {
    pub fn vacuum() -> Self {
        Self(Vec::new())
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|x| (-x.m) as u32).sum()
    }

    pub fn modes(&self) -> &[Mode] {
        &self.0
    }

    pub fn label(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "vac".into();
        }
        let parts: Vec<String> = self.0.iter().map(|x| format!("{}{}", names[x.gen as usize], x.m)).collect();
        parts.join(" ")
    }

    /// Parses labels like `"a-1 a-2"`, `"L-2"` or `"vac"`; modes are sorted into canonical order.
    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let t = text.trim();
        if t == "vac" || t.is_empty() {
            return Ok(Self::vacuum());
        }
        let err = |reason: &str| Error::Parse { input: text.into(), reason: reason.into() };
        let mut modes = Vec::new();
        for tok in t.split_whitespace() {
            let split = tok.find(['-', '+']).or_else(|| tok.find(|c: char| c.is_ascii_digit())).ok_or_else(|| err("missing mode index"))?;
            let (name, idx) = tok.split_at(split);
            let gen = names.iter().position(|n| n == name).ok_or_else(|| err("unknown generator"))?;
            let m: i32 = idx.trim_start_matches('+').parse().map_err(|_| err("bad mode index"))?;
            modes.push(Mode::new(gen as u16, m));
        }
        modes.sort();
        Ok(Self(modes))
    }
}

/// A finite linear combination of words.
pub type Vector = BTreeMap<Word, RadicalScalar>;

pub fn single(w: Word) -> Vector {
    Vector::from([(w, RadicalScalar::one())])
}

/// `out += coef · v`, dropping cancelled entries.
pub fn axpy(out: &mut Vector, coef: &RadicalScalar, v: &Vector) {
    if coef.is_zero() {
        return;
    }
    for (w, c) in v {
        add_term(out, w, &(coef * c));
    }
}

pub fn add_term(out: &mut Vector, w: &Word, c: &RadicalScalar) {
    if c.is_zero() {
        return;
    }
    match out.get_mut(w) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                out.remove(w);
            }
        }
        None => {
            out.insert(w.clone(), c.clone());
        }
    }
}

pub struct DisplayVector<'a>(pub &'a Vector, pub &'a [String]);

impl fmt::Display for DisplayVector<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*[{}]", w.label(self.1))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        let names = vec!["a".to_string(), "L".to_string()];
        let w = Word::parse("a-1 a-2", &names).unwrap();
        assert_eq!(w.label(&names), "a-2 a-1");
        assert_eq!(w.weight(), 3);
        assert_eq!(Word::parse("vac", &names).unwrap(), Word::vacuum());
        assert_eq!(Word::parse("L-2", &names).unwrap().0, vec![Mode::new(1, -2)]);
        assert!(Word::parse("b-1", &names).is_err());
    }
}
