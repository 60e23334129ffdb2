use vlimit::borcherds::sweep;
use vlimit::scalar::rat;
use vlimit::seed::{SeedSpec, SeedVA, Word};
use vlimit::RadicalScalar;

#[test]
fn borcherds_vanishes_on_small_seeds() {
    for spec in [SeedSpec::Heisenberg, SeedSpec::virasoro(rat(1, 2))] {
        let v = SeedVA::new(spec.clone(), 6).unwrap();
        let t = std::time::Instant::now();
        let (checks, failures) = sweep(&v, 6).unwrap();
        eprintln!("{spec:?}: {checks} checks in {:?}", t.elapsed());
        assert!(failures.is_empty(), "{:?}", &failures[..failures.len().min(3)]);
    }
}

#[test]
fn creativity_and_skew_symmetry() {
    for spec in [SeedSpec::Heisenberg, SeedSpec::virasoro(rat(1, 2)), SeedSpec::Fk { k: 2 }] {
        let v = SeedVA::new(spec, 6).unwrap();
        let all: Vec<Word> = (0..=6).flat_map(|n| v.basis(n).unwrap().to_vec()).collect();
        for b in &all {
            let got = v.apply_word_mode(b, -1, &Word::vacuum()).unwrap();
            assert_eq!(got.len(), 1);
            assert!(got[b].is_one());
        }
        for a in all.iter().filter(|w| w.weight() <= 3) {
            for b in all.iter().filter(|w| w.weight() <= 3) {
                let sign = if (a.weight() + b.weight()) % 2 == 0 { 1 } else { -1 };
                let ab = v.bilinear(a, b).unwrap();
                let ba = v.bilinear(b, a).unwrap();
                assert_eq!(ab, &ba * &RadicalScalar::from_int(sign));
            }
        }
        for n in 1..=6u32 {
            for m in 1..=6u32 {
                if n == m {
                    continue;
                }
                for p in v.quasiprimaries(n).unwrap() {
                    for q in v.quasiprimaries(m).unwrap() {
                        assert!(v.bilinear_vec(&p, &q).unwrap().is_zero());
                    }
                }
            }
        }
    }
}
