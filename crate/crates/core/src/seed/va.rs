use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::algebra::{ModeAlgebra, SeedSpec};
use super::word::{add_term, axpy, single, Mode, Vector, Word};
use crate::borcherds::StructureConstants;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{binomial, rat_int, RadicalScalar};

type ModeKey = (Mode, Word);
type IterateKey = (Word, i64, Word);

/// A seed vertex algebra realized on normal-ordered words of generator modes.
///
/// Generator modes act by commuting to the right until they hit the vacuum;
/// modes of composite words come from the iterate formula. Results are
/// memoized, so repeated structure-constant queries are cheap.
pub struct SeedVA {
    spec: SeedSpec,
    algebra: ModeAlgebra,
    names: Vec<String>,
    cutoff: u32,
    bases: Mutex<HashMap<u32, Arc<Vec<Word>>>>,
    modes: Mutex<HashMap<ModeKey, Arc<Vector>>>,
    iterates: Mutex<HashMap<IterateKey, Arc<Vector>>>,
}

impl std::fmt::Debug for SeedVA {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SeedVA").field("spec", &self.spec).field("cutoff", &self.cutoff).finish()
    }
}

impl SeedVA {
    pub fn new(spec: SeedSpec, cutoff: u32) -> Result<Self> {
        let algebra = ModeAlgebra::from_spec(&spec)?;
        let names = algebra.names();
        Ok(Self {
            spec,
            algebra,
            names,
            cutoff,
            bases: Mutex::default(),
            modes: Mutex::default(),
            iterates: Mutex::default(),
        })
    }

    pub fn spec(&self) -> &SeedSpec {
        &self.spec
    }

    pub fn algebra(&self) -> &ModeAlgebra {
        &self.algebra
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn label(&self, w: &Word) -> String {
        w.label(&self.names)
    }

    /// Parses a label and checks that it names a basis word.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let w = Word::parse(text, &self.names)?;
        if !w.modes().iter().all(|&x| self.algebra.is_creation(x)) {
            return Err(Error::Parse { input: text.into(), reason: "contains an annihilation mode".into() });
        }
        Ok(w)
    }

    /// The generator state `x_{-1}|0⟩`.
    pub fn generator(&self, gen: u16) -> Word {
        Word(vec![Mode::new(gen, -(self.algebra.weight(gen) as i32))])
    }

    fn check_weight(&self, w: u32) -> Result<()> {
        if w > self.cutoff {
            return Err(Error::CutoffExceeded { weight: w as i64, cutoff: self.cutoff });
        }
        Ok(())
    }

    /// Canonical words of weight `n`, sorted.
    pub fn basis(&self, n: u32) -> Result<Arc<Vec<Word>>> {
        self.check_weight(n)?;
        if let Some(b) = self.bases.lock().expect("basis cache").get(&n) {
            return Ok(b.clone());
        }
        let mut out = Vec::new();
        self.enumerate(n, None, &mut Vec::new(), &mut out);
        out.sort();
        let out = Arc::new(out);
        self.bases.lock().expect("basis cache").insert(n, out.clone());
        Ok(out)
    }

    fn enumerate(&self, remaining: u32, min: Option<Mode>, current: &mut Vec<Mode>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word(current.clone()));
            return;
        }
        for m in -(remaining as i32)..0 {
            for gen in 0..self.algebra.generators.len() as u16 {
                let x = Mode::new(gen, m);
                if !self.algebra.is_creation(x) || min.is_some_and(|lo| x < lo) {
                    continue;
                }
                current.push(x);
                self.enumerate(remaining - (-m) as u32, Some(x), current, out);
                current.pop();
            }
        }
    }

    /// `dim V_(n)` for `n = 0..=cutoff`.
    pub fn dims(&self) -> Result<Vec<usize>> {
        (0..=self.cutoff).map(|n| Ok(self.basis(n)?.len())).collect()
    }

    /// `X_m · w` in the word basis.
    pub fn apply_mode(&self, x: Mode, w: &Word) -> Arc<Vector> {
        let key = (x, w.clone());
        if let Some(v) = self.modes.lock().expect("mode cache").get(&key) {
            return v.clone();
        }
        let out = Arc::new(self.compute_mode(x, w));
        self.modes.lock().expect("mode cache").insert(key, out.clone());
        out
    }

    fn compute_mode(&self, x: Mode, w: &Word) -> Vector {
        let creation = self.algebra.is_creation(x);
        let Some((&y, rest)) = w.modes().split_first() else {
            return if creation { single(Word(vec![x])) } else { Vector::new() };
        };
        if creation && x <= y {
            let mut modes = Vec::with_capacity(w.modes().len() + 1);
            modes.push(x);
            modes.extend_from_slice(w.modes());
            return single(Word(modes));
        }
        // x y rest = y (x rest) + [x, y] rest
        let rest = Word(rest.to_vec());
        let mut out = Vector::new();
        for (t, c) in self.apply_mode(x, &rest).iter() {
            axpy(&mut out, c, &self.apply_mode(y, t));
        }
        let (lin, central) = self.algebra.bracket(x, y);
        add_term(&mut out, &rest, &central);
        for (z, c) in lin {
            axpy(&mut out, &c, &self.apply_mode(z, &rest));
        }
        out
    }

    pub fn apply_mode_vec(&self, x: Mode, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (w, c) in v {
            axpy(&mut out, c, &self.apply_mode(x, w));
        }
        out
    }

    /// The VA mode `x_(n) = X_{n - wt x + 1}` of a generator.
    pub fn generator_mode(&self, gen: u16, n: i64) -> Mode {
        Mode::new(gen, (n - self.algebra.weight(gen) as i64 + 1) as i32)
    }

    /// `b_(k) c` without cutoff checks.
    fn iterate(&self, b: &Word, k: i64, c: &Word) -> Arc<Vector> {
        let target = b.weight() as i64 + c.weight() as i64 - k - 1;
        if target < 0 {
            return Arc::new(Vector::new());
        }
        let key = (b.clone(), k, c.clone());
        if let Some(v) = self.iterates.lock().expect("iterate cache").get(&key) {
            return v.clone();
        }
        let out = Arc::new(self.compute_iterate(b, k, c));
        self.iterates.lock().expect("iterate cache").insert(key, out.clone());
        out
    }

    fn compute_iterate(&self, b: &Word, k: i64, c: &Word) -> Vector {
        let Some((&x, rest)) = b.modes().split_first() else {
            return if k == -1 { single(c.clone()) } else { Vector::new() };
        };
        let rest = Word(rest.to_vec());
        let h = self.algebra.weight(x.gen) as i64;
        let j = x.m as i64 + h - 1;
        let (wr, wc) = (rest.weight() as i64, c.weight() as i64);
        // (x_(j) r)_(k) c = Σ_i (-1)^i C(j,i) [x_(j-i) r_(k+i) c - (-1)^j r_(j+k-i) x_(i) c]
        let imax = (wr + wc - k - 1).max(h + wc - 1);
        let mut out = Vector::new();
        for i in 0..=imax.max(0) {
            let binom = binomial(j, i);
            if binom.is_zero() {
                continue;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let coef = RadicalScalar::from_rational(rat_int(binom * sign));
            if wr + wc - k - i - 1 >= 0 {
                let inner = self.iterate(&rest, k + i, c);
                let xm = self.generator_mode(x.gen, j - i);
                axpy(&mut out, &coef, &self.apply_mode_vec(xm, &inner));
            }
            if h + wc - i - 1 >= 0 {
                let inner = self.apply_mode(self.generator_mode(x.gen, i), c);
                let coef2 = if j.rem_euclid(2) == 0 { -&coef } else { coef.clone() };
                for (u, cu) in inner.iter() {
                    axpy(&mut out, &(&coef2 * cu), &self.iterate(&rest, j + k - i, u));
                }
            }
        }
        out
    }

    /// `b_(k) c`, rejecting states or results beyond the cutoff.
    pub fn apply_word_mode(&self, b: &Word, k: i64, c: &Word) -> Result<Arc<Vector>> {
        self.check_weight(b.weight())?;
        self.check_weight(c.weight())?;
        let target = b.weight() as i64 + c.weight() as i64 - k - 1;
        if target > self.cutoff as i64 {
            return Err(Error::CutoffExceeded { weight: target, cutoff: self.cutoff });
        }
        Ok(self.iterate(b, k, c))
    }

    /// Bilinear extension of [`Self::apply_word_mode`].
    pub fn apply_vector_mode(&self, b: &Vector, k: i64, c: &Vector) -> Result<Vector> {
        let mut out = Vector::new();
        for (wb, cb) in b {
            for (wc, cc) in c {
                axpy(&mut out, &(cb * cc), &*self.apply_word_mode(wb, k, wc)?);
            }
        }
        Ok(out)
    }

    /// Coefficient of `a` in `b_(wt b + wt c - wt a - 1) c`.
    pub fn structure_constant(&self, a: &Word, b: &Word, c: &Word) -> Result<RadicalScalar> {
        self.check_weight(a.weight())?;
        let k = b.weight() as i64 + c.weight() as i64 - a.weight() as i64 - 1;
        Ok(self.apply_word_mode(b, k, c)?.get(a).cloned().unwrap_or_else(RadicalScalar::zero))
    }

    /// `B(a, b)`: the vacuum coefficient of `a_(wt a + wt b - 1) b`.
    pub fn bilinear(&self, a: &Word, b: &Word) -> Result<RadicalScalar> {
        self.structure_constant(&Word::vacuum(), a, b)
    }

    pub fn bilinear_vec(&self, a: &Vector, b: &Vector) -> Result<RadicalScalar> {
        let mut s = RadicalScalar::zero();
        for (wa, ca) in a {
            for (wb, cb) in b {
                s += &(&(ca * cb) * &self.bilinear(wa, wb)?);
            }
        }
        Ok(s)
    }

    /// `L(n)` for `n ∈ {-1, 0, 1}`, acting through
    /// `[L(n), X_m] = ((wt x - 1)n - m) X_{m+n}` and `L(n)|0⟩ = 0`.
    pub fn sl2(&self, n: i32, v: &Vector) -> Vector {
        assert!((-1..=1).contains(&n), "sl2 index {n}");
        let mut out = Vector::new();
        for (w, c) in v {
            axpy(&mut out, c, &self.sl2_word(n, w));
        }
        out
    }

    fn sl2_word(&self, n: i32, w: &Word) -> Vector {
        let Some((&x, rest)) = w.modes().split_first() else { return Vector::new() };
        let rest = Word(rest.to_vec());
        let h = self.algebra.weight(x.gen) as i32;
        let mut out = self.apply_mode_vec(x, &self.sl2_word(n, &rest));
        let coef = (h - 1) * n - x.m;
        if coef != 0 {
            let shifted = self.apply_mode(Mode::new(x.gen, x.m + n), &rest);
            axpy(&mut out, &RadicalScalar::from_int(coef as i64), &shifted);
        }
        out
    }

    /// Basis of `ker L(1)` on `V_(n)`, as vectors in the word basis.
    pub fn quasiprimaries(&self, n: u32) -> Result<Vec<Vector>> {
        let basis = self.basis(n)?;
        if n == 0 {
            return Ok(vec![single(Word::vacuum())]);
        }
        let lower = self.basis(n - 1)?;
        let index: HashMap<&Word, usize> = lower.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut m = vec![vec![RadicalScalar::zero(); basis.len()]; lower.len()];
        for (j, w) in basis.iter().enumerate() {
            for (u, c) in self.sl2(1, &single(w.clone())) {
                m[index[&u]][j] = c;
            }
        }
        let kernel = linalg::kernel(m, basis.len())?;
        Ok(kernel
            .into_iter()
            .map(|v| basis.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()).collect())
            .collect())
    }
}

impl StructureConstants for SeedVA {
    type Label = Word;
    type Scalar = RadicalScalar;

    fn cutoff(&self) -> u32 {
        self.cutoff
    }

    fn basis(&self, weight: u32) -> Result<Vec<Word>> {
        Ok(SeedVA::basis(self, weight)?.to_vec())
    }

    fn weight(&self, label: &Word) -> u32 {
        label.weight()
    }

    fn constant(&self, a: &Word, b: &Word, c: &Word) -> Result<RadicalScalar> {
        self.structure_constant(a, b, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn heis() -> SeedVA {
        SeedVA::new(SeedSpec::Heisenberg, 6).unwrap()
    }

    fn vir(c: (i64, i64)) -> SeedVA {
        SeedVA::new(SeedSpec::virasoro(rat(c.0, c.1)), 6).unwrap()
    }

    fn r(n: i64, d: i64) -> RadicalScalar {
        RadicalScalar::from_rational(rat(n, d))
    }

    #[test]
    fn graded_dimensions() {
        assert_eq!(SeedVA::new(SeedSpec::Heisenberg, 4).unwrap().dims().unwrap(), vec![1, 1, 2, 3, 5]);
        assert_eq!(SeedVA::new(SeedSpec::virasoro(rat(1, 2)), 4).unwrap().dims().unwrap(), vec![1, 0, 1, 1, 2]);
        let lim = SeedVA::new(SeedSpec::virasoro_limit(rat(1, 1)), 2).unwrap();
        assert_eq!(lim.basis(2).unwrap().as_slice(), &[lim.parse("L-2").unwrap()]);
    }

    #[test]
    fn mode_examples() {
        let v = heis();
        let a = v.parse("a-1").unwrap();
        assert_eq!(*v.apply_word_mode(&a, 1, &a).unwrap(), single(Word::vacuum()));
        for w in v.basis(3).unwrap().iter() {
            assert_eq!(*v.apply_word_mode(&Word::vacuum(), -1, w).unwrap(), single(w.clone()));
            assert!(v.apply_word_mode(&Word::vacuum(), 0, w).unwrap().is_empty());
        }
        let t = SeedVA::new(SeedSpec::virasoro_rescaled(rat(1, 2), 9), 4).unwrap();
        let w = t.parse("L-2").unwrap();
        let got = t.apply_word_mode(&w, 1, &w).unwrap();
        assert_eq!(got.get(&w).unwrap(), &r(2, 3));
    }

    #[test]
    fn structure_constant_examples() {
        let v = vir((1, 2));
        let w = v.parse("L-2").unwrap();
        assert_eq!(v.structure_constant(&Word::vacuum(), &w, &w).unwrap(), r(1, 4));
        assert_eq!(v.structure_constant(&w, &w, &w).unwrap(), r(2, 1));
        let h = heis();
        let a = h.parse("a-1").unwrap();
        assert!(h.structure_constant(&Word::vacuum(), &a, &a).unwrap().is_one());
    }

    #[test]
    fn bilinear_examples() {
        let h = heis();
        let a = h.parse("a-1").unwrap();
        let ta = h.parse("a-2").unwrap();
        assert!(h.bilinear(&a, &a).unwrap().is_one());
        // B(a, L(-1)b) = (wt a + wt b) B(a, b) in the x_(n) convention.
        assert_eq!(h.bilinear(&a, &ta).unwrap(), RadicalScalar::from_int(2));
        assert_eq!(h.bilinear(&ta, &a).unwrap(), RadicalScalar::from_int(-2));
        assert_eq!(h.sl2(-1, &single(a.clone())), single(ta));
        let v = vir((1, 2));
        let w = v.parse("L-2").unwrap();
        assert_eq!(v.bilinear(&w, &w).unwrap(), r(1, 4));
    }

    #[test]
    fn quasiprimary_examples() {
        let h = heis();
        assert_eq!(h.quasiprimaries(1).unwrap(), vec![single(h.parse("a-1").unwrap())]);
        let q2 = h.quasiprimaries(2).unwrap();
        assert_eq!(q2.len(), 1);
        assert_eq!(q2[0].keys().cloned().collect::<Vec<_>>(), vec![h.parse("a-1 a-1").unwrap()]);
        let v = vir((1, 2));
        assert_eq!(v.quasiprimaries(2).unwrap(), vec![single(v.parse("L-2").unwrap())]);
    }

    #[test]
    fn sl2_relations() {
        for v in [heis(), vir((1, 2)), SeedVA::new(SeedSpec::Fk { k: 2 }, 6).unwrap()] {
            for n in 0..=5 {
                for w in v.basis(n).unwrap().iter() {
                    let s = single(w.clone());
                    let l0 = v.sl2(0, &s);
                    let expect: Vector = if n == 0 { Vector::new() } else { Vector::from([(w.clone(), RadicalScalar::from_int(n as i64))]) };
                    assert_eq!(l0, expect);
                    // [L(1), L(-1)] = 2L(0)
                    let lhs = {
                        let mut x = v.sl2(1, &v.sl2(-1, &s));
                        axpy(&mut x, &RadicalScalar::from_int(-1), &v.sl2(-1, &v.sl2(1, &s)));
                        x
                    };
                    let mut rhs = Vector::new();
                    axpy(&mut rhs, &RadicalScalar::from_int(2), &l0);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
