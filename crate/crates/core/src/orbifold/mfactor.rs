use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::tower::ratio;
use crate::error::{Error, Result};
use crate::perm::{factorial, FactorialProduct, GroupFamily, PermGroup, SupportConfiguration};
use crate::scalar::{RadicalScalar, Rational};

/// `√(|Ĝ^{K1}||Ĝ^{K2}||Ĝ^{K3}| / (|G||Ĝ^{K123}|²))` when the one-point set is empty, else 0.
pub fn m_factor(group: &PermGroup, conf: &SupportConfiguration) -> Result<RadicalScalar> {
    if !conf.one_point().is_empty() {
        return Ok(RadicalScalar::zero());
    }
    let mut num = BigUint::one();
    for k in &conf.sets {
        num *= group.pointwise_stabilizer_order(k)?;
    }
    let u = group.pointwise_stabilizer_order(&conf.union())?;
    let den = group.order() * &u * &u;
    RadicalScalar::sqrt_of_rational(&ratio(&num, &den))
}

/// `|Ĝ^{K1} Ĝ^{K2} Ĝ^{K3}|` as a product set. The set is a union of right
/// cosets of `Ĝ^{K3}`, and a coset is determined by where it sends `K3`, so
/// the count is `|Ĝ^{K3}|` times the number of images of `K3` (as a tuple)
/// under products `g1 g2`.
pub fn triple_product_size(group: &PermGroup, conf: &SupportConfiguration) -> Result<BigUint> {
    let [k1, k2, k3] = &conf.sets;
    let g1 = group.pointwise_stabilizer(k1)?;
    let g2 = group.pointwise_stabilizer(k2)?;
    let g3 = group.pointwise_stabilizer_order(k3)?;
    let mut images: HashSet<Vec<usize>> = HashSet::new();
    for t in g2.tuple_orbit(k3)? {
        if images.contains(&t) {
            continue;
        }
        images.extend(g1.tuple_orbit(&t)?);
    }
    Ok(g3 * BigUint::from(images.len()))
}

/// `√(|Ĝ^{K1}Ĝ^{K2}Ĝ^{K3}| / |G|)`, defined when the one-point set is empty.
pub fn m_factor_product_form(group: &PermGroup, conf: &SupportConfiguration) -> Result<Option<RadicalScalar>> {
    if !conf.one_point().is_empty() {
        return Ok(None);
    }
    let size = triple_product_size(group, conf)?;
    Ok(Some(RadicalScalar::sqrt_of_rational(&ratio(&size, group.order()))?))
}

/// Sizes of the seven regions of a three-set configuration, from the set
/// sizes and the triple overlap, with an empty one-point set.
fn pair_regions(k: [usize; 3], n_t: usize) -> Result<[usize; 3]> {
    let bad = || Error::Unrealizable(format!("sizes {k:?} with triple overlap {n_t}"));
    let [a, b, c] = k.map(|x| x as i64);
    let t = n_t as i64;
    let twice = [a + b - c - t, a + c - b - t, b + c - a - t];
    if twice.iter().any(|&x| x < 0 || x % 2 != 0) || k.iter().any(|&x| x < n_t) {
        return Err(bad());
    }
    Ok(twice.map(|x| (x / 2) as usize))
}

/// Places a configuration with the given sizes on the first sites, one-point set empty.
pub fn place_configuration(k: [usize; 3], n_t: usize) -> Result<SupportConfiguration> {
    let [x12, x13, x23] = pair_regions(k, n_t)?;
    let mut next = 0..;
    let mut take = |n: usize| -> Vec<usize> { (&mut next).take(n).collect() };
    let t = take(n_t);
    let p12 = take(x12);
    let p13 = take(x13);
    let p23 = take(x23);
    let join = |parts: &[&Vec<usize>]| -> Vec<usize> { parts.iter().flat_map(|p| p.iter().copied()).collect() };
    Ok(SupportConfiguration::new(&join(&[&t, &p12, &p13]), &join(&[&t, &p12, &p23]), &join(&[&t, &p13, &p23])))
}

/// Closed form of the M-factor for `S_N` in terms of the set sizes and the
/// triple overlap size (one-point set empty).
pub fn symmetric_m(k: [usize; 3], n_t: usize, n: usize) -> Result<RadicalScalar> {
    let [x12, x13, x23] = pair_regions(k, n_t)?;
    let union = n_t + x12 + x13 + x23;
    if union > n {
        return Err(Error::Unrealizable(format!("union of size {union} does not fit in {n} sites")));
    }
    let num = factorial(n - k[0]) * factorial(n - k[1]) * factorial(n - k[2]);
    let u = factorial(n - union);
    RadicalScalar::sqrt_of_rational(&ratio(&num, &(factorial(n) * &u * &u)))
}

/// Large-level behaviour of `M²` read off the family's factorial shapes:
/// `Some(e)` when `M² ~ N^e`, `None` when the shapes are unavailable or unbalanced.
pub fn m_exponent(family: &GroupFamily, conf: &SupportConfiguration) -> Option<i64> {
    let shapes: Vec<FactorialProduct> = conf.sets.iter().map(|k| family.pointwise_shape(k)).collect::<Option<_>>()?;
    let g = family.order_shape()?;
    let u = family.pointwise_shape(&conf.union())?;
    let count: usize = shapes.iter().map(|s| s.shifts.len()).sum();
    if count != g.shifts.len() + 2 * u.shifts.len() {
        return None;
    }
    let sum = |s: &FactorialProduct| s.shifts.iter().sum::<usize>() as i64;
    Some(sum(&g) + 2 * sum(&u) - shapes.iter().map(sum).sum::<i64>())
}

/// `lim M`: exactly 1 or 0 for families with balanced factorial shapes.
pub fn m_limit(family: &GroupFamily, conf: &SupportConfiguration) -> Option<RadicalScalar> {
    if !conf.one_point().is_empty() {
        return Some(RadicalScalar::zero());
    }
    match m_exponent(family, conf)? {
        0 => Some(RadicalScalar::one()),
        e if e < 0 => Some(RadicalScalar::zero()),
        _ => None,
    }
}

/// `M(K, N)²` from the closed-form shapes, without building the group.
pub fn m_squared_from_shapes(family: &GroupFamily, conf: &SupportConfiguration, level: usize) -> Option<Rational> {
    if !conf.one_point().is_empty() {
        return Some(Rational::zero());
    }
    let mut num = BigUint::one();
    for k in &conf.sets {
        num *= family.pointwise_shape(k)?.eval(level)?;
    }
    let u = family.pointwise_shape(&conf.union())?.eval(level)?;
    Some(ratio(&num, &(family.order_shape()?.eval(level)? * &u * &u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn examples() {
        let s4 = PermGroup::symmetric(4);
        let c = SupportConfiguration::new(&[0], &[1], &[0, 1]);
        assert_eq!(m_factor(&s4, &c).unwrap(), RadicalScalar::sqrt_int(3).scale(&rat(1, 2)));
        let c = SupportConfiguration::new(&[0], &[0], &[0]);
        assert_eq!(m_factor(&s4, &c).unwrap(), RadicalScalar::from_rational(rat(1, 2)));
        assert!(m_factor(&s4, &SupportConfiguration::new(&[0], &[1], &[2])).unwrap().is_zero());
        assert_eq!(symmetric_m([1, 1, 2], 0, 4).unwrap(), RadicalScalar::sqrt_int(3).scale(&rat(1, 2)));
        assert_eq!(symmetric_m([1, 1, 1], 1, 9).unwrap(), RadicalScalar::from_rational(rat(1, 3)));
        assert!(symmetric_m([1, 1, 1], 0, 5).is_err());
        assert!(symmetric_m([2, 2, 2], 0, 2).is_err());
    }

    #[test]
    fn product_form_agrees() {
        let s5 = PermGroup::symmetric(5);
        for conf in [
            SupportConfiguration::new(&[0], &[1], &[0, 1]),
            SupportConfiguration::new(&[0, 1], &[1, 2], &[0, 2]),
            SupportConfiguration::new(&[0, 1], &[0, 1], &[]),
            SupportConfiguration::new(&[], &[], &[]),
        ] {
            assert_eq!(m_factor_product_form(&s5, &conf).unwrap().unwrap(), m_factor(&s5, &conf).unwrap());
        }
    }

    #[test]
    fn limits_from_shapes() {
        let fam = GroupFamily::Symmetric;
        assert!(m_limit(&fam, &place_configuration([1, 1, 2], 0).unwrap()).unwrap().is_one());
        assert!(m_limit(&fam, &place_configuration([1, 1, 1], 1).unwrap()).unwrap().is_zero());
        let pointed = GroupFamily::PointedSymmetric;
        assert!(m_limit(&pointed, &SupportConfiguration::new(&[0], &[0], &[0])).unwrap().is_one());
        assert!(m_limit(&pointed, &SupportConfiguration::new(&[1], &[1], &[1])).unwrap().is_zero());
        let c = SupportConfiguration::new(&[0, 1], &[1, 2], &[0, 2]);
        assert_eq!(
            m_squared_from_shapes(&GroupFamily::Product, &c, 4).unwrap(),
            m_factor(&GroupFamily::Product.group(4).unwrap(), &c).unwrap().square().as_rational().unwrap()
        );
    }
}
