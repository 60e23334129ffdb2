use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use vlimit::perm::{placed_support_orbits, GroupFamily, PermGroup, Permutation};

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn group_strategy() -> impl Strategy<Value = PermGroup> {
    (2usize..=7).prop_flat_map(|n| {
        prop::collection::vec(perm_strategy(n), 0..=3).prop_map(move |gens| PermGroup::new(n, gens).unwrap())
    })
}

fn subset_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(any::<bool>(), n).prop_map(|mask| (0..mask.len()).filter(|&i| mask[i]).collect())
}

/// Closure of the generators by brute force.
fn brute_elements(g: &PermGroup) -> HashSet<Permutation> {
    let mut seen = HashSet::from([Permutation::identity(g.degree())]);
    let mut frontier: Vec<Permutation> = seen.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for s in g.generators() {
            let y = s.compose(&x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_order_matches_closure(g in group_strategy()) {
        let els = brute_elements(&g);
        prop_assert_eq!(g.order(), &BigUint::from(els.len()));
        prop_assert!(els.iter().all(|e| g.contains(e)));
        let listed: HashSet<Permutation> = g.elements().unwrap().iter().cloned().collect();
        prop_assert_eq!(listed, els);
    }

    #[test]
    fn stabilizer_identities((g, a, b) in group_strategy().prop_flat_map(|g| {
        let n = g.degree();
        (Just(g), subset_strategy(n), subset_strategy(n))
    })) {
        let els = g.elements().unwrap();
        let fixes = |e: &Permutation, s: &[usize]| s.iter().all(|&i| e.apply(i) == i);
        let d = g.stabilizer_data(&a).unwrap();
        prop_assert_eq!(&d.orbit_length * &d.setwise, d.order.clone());
        let setwise = els.iter().filter(|e| e.apply_set(&a) == a).count();
        let pointwise = els.iter().filter(|e| fixes(e, &a)).count();
        prop_assert_eq!(d.setwise.clone(), BigUint::from(setwise));
        prop_assert_eq!(d.pointwise.clone(), BigUint::from(pointwise));
        if !a.is_empty() {
            let r = g.restriction_group(&a).unwrap();
            prop_assert_eq!(r.group.order() * &d.pointwise, d.setwise.clone());
        }
        let mut ab = a.clone();
        ab.extend(&b);
        let both = els.iter().filter(|e| fixes(e, &a) && fixes(e, &b)).count();
        prop_assert_eq!(g.pointwise_stabilizer_order(&ab).unwrap(), BigUint::from(both));
    }
}

#[test]
fn configurations_match_exhaustive_triples() {
    let cases: Vec<(PermGroup, [Vec<usize>; 3])> = vec![
        (PermGroup::symmetric(4), [vec![0], vec![0], vec![0]]),
        (PermGroup::symmetric(5), [vec![0, 1], vec![0], vec![2, 3]]),
        (GroupFamily::PointedSymmetric.group(5).unwrap(), [vec![0], vec![0, 1], vec![1]]),
        (GroupFamily::Product.group(3).unwrap(), [vec![0, 1], vec![0], vec![1]]),
        (PermGroup::symmetric(7), [vec![0, 1], vec![0, 1], vec![0, 1]]),
    ];
    for (g, [k1, k2, k3]) in cases {
        let els = g.elements().unwrap();
        let mut orbits: HashSet<Vec<Vec<usize>>> = HashSet::new();
        let o = |k: &Vec<usize>| -> HashSet<Vec<usize>> { els.iter().map(|e| e.apply_set(k)).collect() };
        let (o1, o2, o3) = (o(&k1), o(&k2), o(&k3));
        let mut seen = HashSet::new();
        for x in &o1 {
            for y in &o2 {
                for z in &o3 {
                    if seen.contains(&(x.clone(), y.clone(), z.clone())) {
                        continue;
                    }
                    let orbit: HashSet<_> =
                        els.iter().map(|e| (e.apply_set(x), e.apply_set(y), e.apply_set(z))).collect();
                    orbits.insert(vec![x.clone(), y.clone(), z.clone()]);
                    seen.extend(orbit);
                }
            }
        }
        let confs = placed_support_orbits(&g, &k1, &k2, &k3).unwrap();
        assert_eq!(confs.len(), orbits.len(), "{k1:?} {k2:?} {k3:?}");
        let total: usize = confs.iter().map(|c| c.orbit_size).sum();
        assert_eq!(total, o1.len() * o2.len() * o3.len());
    }
}

#[test]
fn symmetric_b_n_saturates_at_n() {
    let dims = [1, 1, 2, 3, 5, 7];
    for n in 0..=4usize {
        let seq: Vec<usize> = (1..=n + 2)
            .map(|level| vlimit::perm::function_orbit_reps(&PermGroup::symmetric(level), &dims, n).unwrap().count)
            .collect();
        assert!(seq.windows(2).all(|w| w[0] <= w[1]), "{seq:?}");
        let sat = n.max(1);
        assert!(seq[sat - 1..].iter().all(|&b| b == seq[sat - 1]), "n={n}: {seq:?}");
        if n >= 2 {
            assert!(seq[n - 2] < seq[n - 1], "n={n}: {seq:?}");
        }
    }
}
