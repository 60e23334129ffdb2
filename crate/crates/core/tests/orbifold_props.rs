use std::sync::Arc;
use std::time::Instant;

use proptest::prelude::*;
use vlimit::borcherds::sweep;
use vlimit::orbifold::{
    m_factor, m_factor_product_form, place_configuration, symmetric_m, Method, OrbifoldTower, OrbifoldVA, OrbitLabel,
};
use vlimit::perm::{GroupFamily, PermGroup, SupportConfiguration};
use vlimit::seed::{SeedSpec, SeedVA};
use vlimit::RadicalScalar;

fn tower(family: GroupFamily) -> OrbifoldTower {
    OrbifoldTower::new(Arc::new(SeedVA::new(SeedSpec::Heisenberg, 6).unwrap()), family)
}

/// Labels of weight `n` anchored at the saturation level if it is at most `level`.
fn labels(t: &OrbifoldTower, n: u32, level: usize) -> Vec<OrbitLabel> {
    let base = t.saturation(n, level.max(n as usize + 1)).unwrap().filter(|&m| m <= level).unwrap_or(level);
    t.labels(base, n).unwrap()
}

#[test]
fn three_routes_agree() {
    let start = Instant::now();
    let mut compared = 0;
    for family in [GroupFamily::Symmetric, GroupFamily::PointedSymmetric] {
        let t = tower(family.clone());
        for level in 1..=4 {
            let by_weight: Vec<Vec<OrbitLabel>> = (0..=4).map(|n| labels(&t, n, level)).collect();
            for wa in 0..=4usize {
                for wb in 0..=4 - wa {
                    for wc in 0..=4 - wa - wb {
                        for a in &by_weight[wa] {
                            for b in &by_weight[wb] {
                                for c in &by_weight[wc] {
                                    let d = t.sc_finite(level, a, b, c, Method::Definition).unwrap();
                                    let g = t.sc_finite(level, a, b, c, Method::GroupSum).unwrap();
                                    let o = t.sc_finite(level, a, b, c, Method::Oligo).unwrap();
                                    assert_eq!(d, g, "{family:?} N={level} {a:?} {b:?} {c:?}");
                                    assert_eq!(d, o, "{family:?} N={level} {a:?} {b:?} {c:?}");
                                    compared += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    eprintln!("{compared} triples in {:.2?}", start.elapsed());
}

#[test]
fn finite_orbifold_borcherds() {
    for level in 1..=3 {
        let t = Arc::new(tower(GroupFamily::Symmetric));
        let va = OrbifoldVA::new(t, level, 6).unwrap();
        let (checks, failures) = sweep(&va, 4).unwrap();
        assert!(checks > 0);
        assert!(failures.is_empty(), "N={level}: {:?}", &failures[..failures.len().min(3)]);
    }
}

#[test]
fn symmetric_closed_form_matches_groups() {
    for n in 3..=7 {
        let g = PermGroup::symmetric(n);
        for (k, nt) in [([1, 1, 2], 0), ([1, 1, 1], 1), ([2, 2, 2], 0), ([2, 2, 2], 2), ([2, 3, 3], 1), ([2, 2, 4], 0)] {
            let Ok(conf) = place_configuration(k, nt) else { continue };
            if conf.union().len() > n {
                continue;
            }
            assert_eq!(symmetric_m(k, nt, n).unwrap(), m_factor(&g, &conf).unwrap(), "{k:?} {nt} N={n}");
        }
    }
}

fn family_strategy() -> impl Strategy<Value = (GroupFamily, usize)> {
    prop_oneof![
        (2usize..=7).prop_map(|n| (GroupFamily::Symmetric, n)),
        (2usize..=7).prop_map(|n| (GroupFamily::PointedSymmetric, n)),
        (1usize..=3).prop_map(|n| (GroupFamily::Product, n)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn m_lemma((family, level) in family_strategy(), masks in prop::array::uniform3(0u16..1024)) {
        let g = family.group(level).unwrap();
        let d = g.degree();
        let sets: Vec<Vec<usize>> = masks.iter().map(|m| (0..d).filter(|i| m >> i & 1 == 1).collect()).collect();
        let conf = SupportConfiguration::new(&sets[0], &sets[1], &sets[2]);
        let m = m_factor(&g, &conf).unwrap();
        prop_assert!(m.signum() >= 0);
        prop_assert!(m.cmp_exact(&RadicalScalar::one()).is_le());
        if let Some(p) = m_factor_product_form(&g, &conf).unwrap() {
            prop_assert_eq!(p, m);
        }
    }
}
