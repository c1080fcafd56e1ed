//! Brute-force class counts against the closed-form prediction.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use repzeta::finquot::{build_group, conjugacy_classes, Flavor, QuotientRing};
use repzeta::localfactor::LocalFactorSL2;

fn count(f: Flavor, p: u32, k: u32) -> usize {
    conjugacy_classes(&build_group(QuotientRing::new(f, p, k).unwrap()).unwrap()).count()
}

#[test]
fn class_counts_match_prediction() {
    for (p, k) in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)] {
        let predicted = LocalFactorSL2::new(p as u64).unwrap().class_count(k) as usize;
        for f in [Flavor::Char0, Flavor::CharP] {
            assert_eq!(count(f, p, k), predicted, "{f:?} p={p} k={k}");
        }
    }
}

#[test]
fn concrete_counts() {
    assert_eq!(count(Flavor::Char0, 3, 3), 79);
    assert_eq!(count(Flavor::CharP, 5, 2), 49);
    assert_eq!(count(Flavor::Char0, 7, 1), 11);
}

#[test]
fn flavours_have_equal_class_size_multisets() {
    for (p, k) in [(3, 2), (3, 3), (5, 2)] {
        let a = conjugacy_classes(
            &build_group(QuotientRing::new(Flavor::Char0, p, k).unwrap()).unwrap(),
        );
        let b = conjugacy_classes(
            &build_group(QuotientRing::new(Flavor::CharP, p, k).unwrap()).unwrap(),
        );
        assert_eq!(a.size_multiset(), b.size_multiset(), "p={p} k={k}");
    }
}

#[test]
fn class_partition_is_independent_of_element_order() {
    let g = build_group(QuotientRing::new(Flavor::Char0, 3, 2).unwrap()).unwrap();
    let base = conjugacy_classes(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..4 {
        let mut els = g.elements().to_vec();
        els.shuffle(&mut rng);
        let shuffled = g.with_element_order(els).unwrap();
        assert_eq!(conjugacy_classes(&shuffled), base);
    }
}

#[test]
fn classes_partition_the_group() {
    let g = build_group(QuotientRing::new(Flavor::CharP, 5, 2).unwrap()).unwrap();
    let classes = conjugacy_classes(&g);
    let total: u64 = classes.classes.iter().map(|c| c.size).sum();
    assert_eq!(total as usize, g.order());
    let reps: HashSet<_> = classes.classes.iter().map(|c| c.representative).collect();
    assert_eq!(reps.len(), classes.count());
    assert!(classes
        .classes
        .windows(2)
        .all(|w| w[0].representative < w[1].representative));
    // each class size divides the group order
    assert!(classes
        .classes
        .iter()
        .all(|c| (g.order() as u64).is_multiple_of(c.size)));
}
