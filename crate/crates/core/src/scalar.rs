//! Exact scalars: rationals and finite rational combinations of square roots.
//!
//! A [`RadicalScalar`] is stored as `Σ q_r·√r` with every radicand `r` a
//! squarefree positive integer and every coefficient nonzero, so structural
//! equality is exact equality. Products of square roots are renormalized with
//! `√r1·√r2 = g·√((r1/g)(r2/g))`, `g = gcd(r1, r2)`, which keeps radicands
//! squarefree without factoring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

const TRIAL_LIMIT: u64 = 1_000_000;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"3"`, `"-1/2"` or a finite decimal such as `"0.5"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((i, f)) = t.split_once('.') {
        let neg = i.trim_start().starts_with('-');
        let ip: BigInt = if i.is_empty() || i == "-" { BigInt::zero() } else { i.parse().map_err(|_| err("bad integer part"))? };
        let fp: BigInt = if f.is_empty() { BigInt::zero() } else { f.parse().map_err(|_| err("bad fraction part"))? };
        let scale = num_traits::pow(BigInt::from(10), f.len());
        let frac = Rational::new(fp, scale);
        let ip = Rational::from_integer(ip.abs());
        let v = ip + frac;
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| err("not a rational"))?;
    Ok(Rational::from_integer(n))
}

/// Generalized binomial coefficient `n choose j` for any integer `n` and `j ≥ 0`;
/// zero when `j < 0`.
pub fn binomial(n: i64, j: i64) -> BigInt {
    if j < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Writes `n = s²·f` with `f` squarefree.
pub fn split_square(n: &BigUint) -> Result<(BigUint, u64)> {
    if n.is_zero() {
        return Ok((BigUint::zero(), 1));
    }
    let mut rem = n.clone();
    let mut sq = BigUint::one();
    let mut free = BigUint::one();
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        let pb = BigUint::from(p);
        if &pb * &pb > rem {
            break;
        }
        let mut e = 0u32;
        while (&rem % &pb).is_zero() {
            rem /= &pb;
            e += 1;
        }
        if e > 0 {
            sq *= num_traits::pow(pb.clone(), (e / 2) as usize);
            if e % 2 == 1 {
                free *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rem.is_one() {
        let r = rem.sqrt();
        if &r * &r == rem {
            sq *= r;
        } else {
            let limit = BigUint::from(TRIAL_LIMIT);
            // every prime factor of rem exceeds the trial bound
            if rem > &limit * &limit && BigUint::from(p) <= limit {
                return Err(Error::FactorizationLimit(n.to_string()));
            }
            free *= rem;
        }
    }
    let free = free.to_u64().ok_or(Error::RadicandOverflow)?;
    Ok((sq, free))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RadicalScalar {
    terms: Vec<(u64, Rational)>,
}

impl RadicalScalar {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(1, q)] }
        }
    }

    /// `q·√r` for an arbitrary positive integer `r` (square part extracted).
    pub fn radical(q: Rational, r: u64) -> Result<Self> {
        let (s, f) = split_square(&BigUint::from(r))?;
        let q = q * Rational::from_integer(BigInt::from_biguint(Sign::Plus, s));
        Ok(Self::from_terms(vec![(f, q)]))
    }

    /// Builds from raw `(radicand, coefficient)` pairs; radicands must already be squarefree.
    fn from_terms(raw: Vec<(u64, Rational)>) -> Self {
        let mut map: BTreeMap<u64, Rational> = BTreeMap::new();
        for (r, q) in raw {
            *map.entry(r).or_insert_with(Rational::zero) += q;
        }
        Self { terms: map.into_iter().filter(|(_, q)| !q.is_zero()).collect() }
    }

    pub fn sqrt_of_rational(q: &Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::NegativeSqrt(q.to_string()));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // √(a/b) = √(ab)/b, with a/b reduced so sf(ab) = sf(a)·sf(b)
        let a = q.numer().magnitude().clone();
        let b = q.denom().magnitude().clone();
        let (sa, fa) = split_square(&a)?;
        let (sb, fb) = split_square(&b)?;
        let rad = fa.checked_mul(fb).ok_or(Error::RadicandOverflow)?;
        let coeff = Rational::new(
            BigInt::from_biguint(Sign::Plus, sa * sb),
            BigInt::from_biguint(Sign::Plus, b),
        );
        Ok(Self { terms: vec![(rad, coeff)] })
    }

    pub fn sqrt_int(n: u64) -> Self {
        Self::sqrt_of_rational(&rat_int(n)).expect("u64 square part extraction")
    }

    pub fn terms(&self) -> &[(u64, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 1 && self.terms[0].1.is_one()
    }

    /// The value as a rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(1, q)] => Some(q.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(r, c)| (*r, c * q)).collect() }
    }

    /// The square, exactly; convenient for comparing square roots through rationals.
    pub fn square(&self) -> Self {
        self * self
    }

    fn flip_prime(&self, p: u64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(r, q)| if r % p == 0 { (*r, -q) } else { (*r, q.clone()) })
                .collect(),
        }
    }

    /// Multiplicative inverse, by successively multiplying with Galois conjugates
    /// until the denominator is rational.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut primes: Vec<u64> = self.terms.iter().flat_map(|(r, _)| prime_factors(*r)).collect();
        primes.sort_unstable();
        primes.dedup();
        let mut num = Self::one();
        let mut den = self.clone();
        for p in primes {
            let c = den.flip_prime(p);
            num = &num * &c;
            den = &den * &c;
        }
        let d = den.as_rational().expect("conjugate product is rational");
        Ok(num.scale(&d.recip()))
    }

    /// Rational approximation with absolute error below `err`.
    fn approx(&self, digits: u32) -> (Rational, Rational) {
        let scale = num_traits::pow(BigUint::from(10u32), digits as usize);
        let scale2 = &scale * &scale;
        let scale_r = Rational::from_integer(BigInt::from_biguint(Sign::Plus, scale.clone()));
        let mut value = Rational::zero();
        let mut err = Rational::zero();
        for (r, q) in &self.terms {
            if *r == 1 {
                value += q.clone();
                continue;
            }
            let s = (BigUint::from(*r) * &scale2).sqrt();
            let s = Rational::from_integer(BigInt::from_biguint(Sign::Plus, s));
            value += q * &s / &scale_r;
            err += q.abs() / &scale_r;
        }
        (value, err)
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let mut digits = 24;
        loop {
            let (v, e) = self.approx(digits);
            if v.abs() > e {
                return if v.is_positive() { 1 } else { -1 };
            }
            digits *= 2;
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            0 => Ordering::Equal,
            s if s > 0 => Ordering::Greater,
            _ => Ordering::Less,
        }
    }

    /// Floating approximation; the internal rational approximant is accurate to
    /// `10^-precision`, the returned `f64` is limited by double precision.
    pub fn to_float(&self, precision: u32) -> f64 {
        let (v, _) = self.approx(precision.max(1) + 8);
        v.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float(20)
    }

    /// Decimal expansion truncated to `precision` digits after the point.
    pub fn to_decimal_string(&self, precision: u32) -> String {
        let (v, _) = self.approx(precision + 8);
        let scale = num_traits::pow(BigInt::from(10), precision as usize);
        let scaled = (v * Rational::from_integer(scale.clone())).round().to_integer();
        let neg = scaled.is_negative();
        let (ip, fp) = scaled.abs().div_rem(&scale);
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push_str(&ip.to_string());
        if precision > 0 {
            s.push('.');
            s.push_str(&format!("{:0>width$}", fp.to_string(), width = precision as usize));
        }
        s
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (r, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            let mag = q.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*r, mag.is_one()) {
                (1, _) => write!(f, "{mag}")?,
                (r, true) => write!(f, "sqrt({r})")?,
                (r, false) => write!(f, "{mag}*sqrt({r})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadicalScalar({self})")
    }
}

impl From<i64> for RadicalScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for RadicalScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

fn merge(a: &[(u64, Rational)], b: &[(u64, Rational)], negate_b: bool) -> Vec<(u64, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match take {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let q = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, q));
                j += 1;
            }
            Ordering::Equal => {
                let q = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !q.is_zero() {
                    out.push((a[i].0, q));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl<'a> Add<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;
    fn add(self, rhs: &RadicalScalar) -> RadicalScalar {
        RadicalScalar { terms: merge(&self.terms, &rhs.terms, false) }
    }
}

impl<'a> Sub<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, rhs: &RadicalScalar) -> RadicalScalar {
        RadicalScalar { terms: merge(&self.terms, &rhs.terms, true) }
    }
}

impl<'a> Mul<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: &RadicalScalar) -> RadicalScalar {
        if self.is_zero() || rhs.is_zero() {
            return RadicalScalar::zero();
        }
        if let [(1, q)] = self.terms.as_slice() {
            return rhs.scale(q);
        }
        if let [(1, q)] = rhs.terms.as_slice() {
            return self.scale(q);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (r1, q1) in &self.terms {
            for (r2, q2) in &rhs.terms {
                let g = r1.gcd(r2);
                let r = (r1 / g).checked_mul(r2 / g).expect("radicand overflow in product");
                raw.push((r, q1 * q2 * rat_int(g)));
            }
        }
        RadicalScalar::from_terms(raw)
    }
}

impl<'a> Div<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;
    fn div(self, rhs: &RadicalScalar) -> RadicalScalar {
        self * &rhs.inverse().expect("division by zero radical scalar")
    }
}

impl Neg for &RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        RadicalScalar { terms: self.terms.iter().map(|(r, q)| (*r, -q)).collect() }
    }
}

impl Neg for RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<RadicalScalar> for RadicalScalar {
            type Output = RadicalScalar;
            fn $m(self, rhs: RadicalScalar) -> RadicalScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RadicalScalar> for RadicalScalar {
            type Output = RadicalScalar;
            fn $m(self, rhs: &RadicalScalar) -> RadicalScalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<RadicalScalar> for &'a RadicalScalar {
            type Output = RadicalScalar;
            fn $m(self, rhs: RadicalScalar) -> RadicalScalar {
                self.$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl AddAssign<&RadicalScalar> for RadicalScalar {
    fn add_assign(&mut self, rhs: &RadicalScalar) {
        self.terms = merge(&self.terms, &rhs.terms, false);
    }
}

impl AddAssign<RadicalScalar> for RadicalScalar {
    fn add_assign(&mut self, rhs: RadicalScalar) {
        *self += &rhs;
    }
}

impl SubAssign<&RadicalScalar> for RadicalScalar {
    fn sub_assign(&mut self, rhs: &RadicalScalar) {
        self.terms = merge(&self.terms, &rhs.terms, true);
    }
}

impl MulAssign<&RadicalScalar> for RadicalScalar {
    fn mul_assign(&mut self, rhs: &RadicalScalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for RadicalScalar {
    fn sum<I: Iterator<Item = RadicalScalar>>(iter: I) -> Self {
        let mut acc = RadicalScalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    radicand: u64,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    terms: Vec<TermRepr>,
    #[serde(default, skip_deserializing)]
    float: f64,
}

impl Serialize for RadicalScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr {
            terms: self
                .terms
                .iter()
                .map(|(r, q)| TermRepr { radicand: *r, num: q.numer().to_string(), den: q.denom().to_string() })
                .collect(),
            float: self.to_f64(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RadicalScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ScalarRepr::deserialize(d)?;
        let mut acc = RadicalScalar::zero();
        for t in repr.terms {
            let q = parse_rational(&format!("{}/{}", t.num, t.den)).map_err(D::Error::custom)?;
            if t.radicand == 0 {
                return Err(D::Error::custom("radicand must be positive"));
            }
            acc += &RadicalScalar::radical(q, t.radicand).map_err(D::Error::custom)?;
        }
        Ok(acc)
    }
}

/// A rational read from config text: a string such as `"1/2"`, an integer, or a float literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalValue(pub Rational);

impl Serialize for RationalValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Float(f64),
            Text(String),
        }
        let text = match Raw::deserialize(d)? {
            Raw::Int(n) => n.to_string(),
            Raw::Float(x) => format!("{x}"),
            Raw::Text(t) => t,
        };
        parse_rational(&text).map(RationalValue).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: u64) -> RadicalScalar {
        RadicalScalar::sqrt_int(n)
    }

    #[test]
    fn difference_of_squares() {
        let a = &s(2) + &RadicalScalar::one();
        let b = &s(2) - &RadicalScalar::one();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn square_extraction() {
        assert_eq!(s(8), RadicalScalar::radical(rat_int(2), 2).unwrap());
        assert_eq!(s(8).to_string(), "2*sqrt(2)");
    }

    #[test]
    fn halves_add() {
        let h = RadicalScalar::radical(rat(1, 2), 3).unwrap();
        assert_eq!(&h + &h, s(3));
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(RadicalScalar::sqrt_of_rational(&rat(3, 4)).unwrap(), RadicalScalar::radical(rat(1, 2), 3).unwrap());
        assert_eq!(RadicalScalar::sqrt_of_rational(&rat(1, 6)).unwrap(), RadicalScalar::radical(rat(1, 6), 6).unwrap());
        assert!(RadicalScalar::sqrt_of_rational(&rat(0, 1)).unwrap().is_zero());
        assert!(matches!(RadicalScalar::sqrt_of_rational(&rat(-1, 2)), Err(Error::NegativeSqrt(_))));
    }

    #[test]
    fn float_evaluation() {
        assert!((s(2).to_float(6) - 1.414214).abs() < 1e-6);
        assert_eq!(RadicalScalar::one().to_float(6), 1.0);
        // oracle: 1/sqrt(6) to 30 digits
        let x = RadicalScalar::radical(rat(1, 6), 6).unwrap();
        assert_eq!(x.to_decimal_string(12), "0.408248290464");
        assert!((x.to_float(6) - 0.408248).abs() < 1e-6);
    }

    #[test]
    fn inverse_and_sign() {
        let x = &(&s(2) + &s(3)) + &RadicalScalar::from_int(-3);
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
        assert_eq!(x.signum(), 1);
        // sqrt(2)+sqrt(3) - 3.146264... just above pi; compare against a close rational
        let y = &(&s(2) + &s(3)) - &RadicalScalar::from_rational(rat(3146264, 1000000));
        assert_eq!(y.signum(), 1);
        assert!(RadicalScalar::zero().inverse().is_err());
    }

    #[test]
    fn serde_round_trip() {
        let x = &RadicalScalar::radical(rat(-1, 2), 3).unwrap() + &RadicalScalar::from_int(2);
        let j = serde_json::to_string(&x).unwrap();
        assert!(j.contains("\"radicand\":3"));
        assert!(j.contains("\"float\""));
        let back: RadicalScalar = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-2, 2), BigInt::from(3));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(4, -1), BigInt::zero());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert!(parse_rational("x").is_err());
    }

    fn arb_scalar() -> impl Strategy<Value = RadicalScalar> {
        prop::collection::vec((1u64..40, -20i64..20, 1i64..9), 0..4).prop_map(|ts| {
            ts.into_iter()
                .map(|(r, n, d)| RadicalScalar::radical(rat(n, d), r).unwrap())
                .sum()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &(&b + &c), &(&a + &b) + &c);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn sqrt_squares_back(n in 0i64..500, d in 1i64..500) {
            let q = rat(n, d);
            let r = RadicalScalar::sqrt_of_rational(&q).unwrap();
            prop_assert_eq!(&r * &r, RadicalScalar::from_rational(q));
        }

        #[test]
        fn distinct_values_have_distinct_floats(a in arb_scalar(), b in arb_scalar()) {
            if a != b {
                prop_assert_ne!((&a - &b).signum(), 0);
                prop_assert!(a.to_decimal_string(60) != b.to_decimal_string(60));
            }
        }
    }
}
