use std::sync::Arc;

use proptest::prelude::*;
use vlimit::borcherds::sweep;
use vlimit::limit::{
    compare_with_modes, factorization_check, free_decomposition, single_trace_check, single_trace_generators,
    wick_correlator, Insertion, LimitTable, OrbifoldLimit, Status,
};
use vlimit::orbifold::{Method, OrbifoldTower, OrbitLabel};
use vlimit::perm::GroupFamily;
use vlimit::scalar::{rat, rat_int};
use vlimit::seed::{SeedSpec, SeedVA};

fn limit(family: GroupFamily, cutoff: u32, max_level: usize) -> OrbifoldLimit {
    let seed = Arc::new(SeedVA::new(SeedSpec::Heisenberg, cutoff).unwrap());
    OrbifoldLimit::new(Arc::new(OrbifoldTower::new(seed, family)), cutoff, max_level).unwrap()
}

fn all_labels(l: &OrbifoldLimit) -> Vec<OrbitLabel> {
    (0..=l.basis().cutoff()).flat_map(|n| l.labels(n).unwrap().to_vec()).collect()
}

#[test]
fn shape_samples_match_finite_constants() {
    for family in [GroupFamily::Symmetric, GroupFamily::PointedSymmetric, GroupFamily::Product] {
        let lim = limit(family.clone(), 3, 6);
        let labels = all_labels(&lim);
        for a in &labels {
            for b in &labels {
                for c in &labels {
                    if a.weight() + b.weight() + c.weight() > 4 {
                        continue;
                    }
                    let n0 = lim.stable_level(a, b, c);
                    for level in n0..=(n0 + 2).min(6) {
                        let fast = lim.sample(a, b, c, level).unwrap();
                        let slow = lim.tower().sc_finite(level, a, b, c, Method::Definition).unwrap();
                        assert_eq!(fast, slow, "{family:?} N={level} {a:?} {b:?} {c:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn symmetric_limit_satisfies_borcherds() {
    let lim = limit(GroupFamily::Symmetric, 4, 7);
    let (checks, failures) = sweep(&lim, 4).unwrap();
    assert!(checks > 100);
    assert!(failures.is_empty(), "{:?}", &failures[..failures.len().min(3)]);
}

#[test]
fn virasoro_limit_table_satisfies_borcherds() {
    let vir = SeedVA::new(SeedSpec::virasoro_limit(rat(1, 2)), 6).unwrap();
    let table = LimitTable::from_constants(&vir, 6).unwrap();
    assert!(!table.is_empty());
    let (checks, failures) = sweep(&table, 6).unwrap();
    assert!(checks > 0);
    assert!(failures.is_empty());
}

#[test]
fn limit_reports_converge() {
    let lim = limit(GroupFamily::Symmetric, 2, 5);
    let labels = all_labels(&lim);
    let last = labels.last().unwrap();
    let mut triples: Vec<[OrbitLabel; 3]> = Vec::new();
    for a in &labels {
        for b in &labels {
            triples.push([a.clone(), b.clone(), last.clone()]);
        }
    }
    let levels = [4, 8, 16, 64, 256, 1024, 4096];
    for r in lim.reports(&triples, &levels, 1e-8).unwrap() {
        let c = &r.convergence;
        assert!(matches!(c.status, Status::ExactTail | Status::Cauchy | Status::Extrapolated), "{:?}", c.labels);
        assert!(c.limit_exact.is_some());
    }
}

#[test]
fn factorization_follows_finite_orbits() {
    let levels: Vec<usize> = (3..=7).collect();
    let sym = limit(GroupFamily::Symmetric, 3, 6);
    let v = factorization_check(&sym, &single_trace_generators(&sym, 2).unwrap(), &levels, 1e-12).unwrap();
    assert!(v.factorizes && v.checked > 0);
    assert_eq!(v.matches_diagnostic(), Some(true));

    let pointed = limit(GroupFamily::PointedSymmetric, 3, 6);
    let v = factorization_check(&pointed, &single_trace_generators(&pointed, 2).unwrap(), &levels, 1e-12).unwrap();
    assert!(!v.factorizes);
    assert_eq!(v.matches_diagnostic(), Some(true));
    let w = v.witnesses.iter().find(|w| w.config.is_some()).expect("a surviving configuration");
    assert_eq!(w.config.as_ref().unwrap().triple_overlap(), vec![0]);
    assert!(w.m_constant);
}

#[test]
fn symmetric_limit_is_single_trace_generated() {
    let lim = limit(GroupFamily::Symmetric, 4, 7);
    let checks = single_trace_check(&lim, 3).unwrap();
    assert!(!checks.is_empty());
    for c in &checks {
        assert!(c.ok(), "{c:?}");
    }
}

#[test]
fn symmetric_limit_decomposes_freely() {
    let lim = limit(GroupFamily::Symmetric, 4, 7);
    let d = free_decomposition(&lim, 4).unwrap();
    assert!(d.certificate, "{d:?}");
    assert_eq!(d.multiplicities, vec![0, 1, 1, 1, 2]);
}

fn bosons(m: usize) -> Vec<Insertion> {
    (0..m).map(|_| Insertion { label: "a".into(), generator: 0, weight: 1 }).collect()
}

#[test]
fn wick_matches_modes_up_to_six_points() {
    let seed = SeedVA::new(SeedSpec::Heisenberg, 8).unwrap();
    let form = vec![vec![rat_int(1)]];
    for m in 1..=6 {
        let sum = wick_correlator(&bosons(m), &form).unwrap();
        let (count, bad) = compare_with_modes(&seed, &sum, if m <= 4 { 8 } else { 5 }).unwrap();
        assert!(count > 0 || m == 1);
        assert!(bad.is_empty(), "m={m}: {:?}", &bad[..bad.len().min(3)]);
        if m % 2 == 1 {
            assert!(sum.pairings.is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn wick_evaluation_is_symmetric_under_relabeling(z in proptest::collection::vec(-50i64..50, 4)) {
        let mut z = z;
        z.sort_unstable();
        z.dedup();
        prop_assume!(z.len() == 4);
        let zs: Vec<_> = z.iter().map(|&x| rat_int(x)).collect();
        let sum = wick_correlator(&bosons(4), &[vec![rat_int(1)]]).unwrap();
        let mut swapped = zs.clone();
        swapped.swap(0, 2);
        prop_assert_eq!(sum.evaluate_exact(&zs).unwrap(), sum.evaluate_exact(&swapped).unwrap());
    }
}
