//! Property tests for the algebraic laws the spec pins down: formal-sum
//! vector-space laws, composition split/join inverses, canonical-form
//! relabeling invariance, and serialization round trips.

use std::collections::BTreeMap;

use proptest::prelude::*;

use brion_core::combinat::{Composition, SplitKind, split_composition};
use brion_core::formal::{FormalSum, GroundSet, Rational, rat_frac};
use brion_core::hopf::BasisElement;
use brion_core::poset::Poset;

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat_frac(n, d))
}

fn sum_strategy() -> impl Strategy<Value = FormalSum<u8>> {
    prop::collection::vec((0u8..12, rational_strategy()), 0..10)
        .prop_map(|terms| terms.into_iter().collect())
}

fn composition_strategy() -> impl Strategy<Value = Composition> {
    prop::collection::vec(1usize..5, 1..6)
        .prop_map(|parts| Composition::new(parts).expect("positive parts"))
}

fn poset_strategy() -> impl Strategy<Value = Poset> {
    // Random DAG on up to 6 labeled points: orient each pair by coin flips
    // respecting an underlying shuffle, which guarantees acyclicity.
    (2usize..=6, prop::collection::vec(any::<bool>(), 15), any::<u64>()).prop_map(
        |(n, coins, shuffle_seed)| {
            let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let mut order: Vec<usize> = (0..n).collect();
            // cheap deterministic shuffle
            let mut s = shuffle_seed | 1;
            for i in (1..n).rev() {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                order.swap(i, (s % (i as u64 + 1)) as usize);
            }
            let mut relations = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if coins[k % coins.len()] {
                        relations.push((labels[order[i]].clone(), labels[order[j]].clone()));
                    }
                    k += 1;
                }
            }
            Poset::from_relations(GroundSet::new(labels), &relations).expect("acyclic by shuffle")
        },
    )
}

proptest! {
    #[test]
    fn formal_sum_addition_commutes(a in sum_strategy(), b in sum_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn formal_sum_addition_associates(
        a in sum_strategy(),
        b in sum_strategy(),
        c in sum_strategy()
    ) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn formal_sum_scaling_distributes(
        a in sum_strategy(),
        b in sum_strategy(),
        k in rational_strategy()
    ) {
        prop_assert_eq!(a.add(&b).scale(&k), a.scale(&k).add(&b.scale(&k)));
    }

    #[test]
    fn formal_sum_never_stores_zeros(a in sum_strategy(), b in sum_strategy()) {
        let diff = a.add(&b).sub(&b);
        prop_assert_eq!(&diff, &a);
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn formal_sum_json_roundtrips(a in sum_strategy()) {
        let json = serde_json::to_string(&a).unwrap();
        let back: FormalSum<u8> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn split_then_join_recovers_composition(alpha in composition_strategy(), cut in 1usize..20) {
        let w = alpha.weight();
        prop_assume!(w >= 2);
        let s = (cut % (w - 1)) + 1;
        let (l, r, kind) = split_composition(&alpha, s).unwrap();
        prop_assert_eq!(l.weight(), s);
        prop_assert_eq!(r.weight(), w - s);
        let joined = match kind {
            SplitKind::Concatenation => l.concatenate(&r),
            SplitKind::NearConcatenation => l.near_concatenate(&r).unwrap(),
        };
        prop_assert_eq!(joined, alpha);
    }

    #[test]
    fn canonical_form_is_relabeling_invariant(p in poset_strategy(), seed in any::<u64>()) {
        // relabel by a random permutation of the ground set
        let labels = p.ground().labels();
        let mut perm: Vec<usize> = (0..labels.len()).collect();
        let mut s = seed | 1;
        for i in (1..perm.len()).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let map: BTreeMap<String, String> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), labels[perm[i]].clone()))
            .collect();
        let q = p.relabel(&map).unwrap();
        prop_assert_eq!(p.canonical_form().unwrap(), q.canonical_form().unwrap());
    }

    #[test]
    fn poset_json_roundtrips(p in poset_strategy()) {
        let json = serde_json::to_string(&p).unwrap();
        let back: Poset = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn basis_element_text_roundtrips(p in poset_strategy()) {
        let elem = BasisElement::poset(p);
        let text = elem.to_string();
        let parsed = brion_core::text::parse_element(&text).unwrap();
        prop_assert_eq!(parsed, elem);
    }
}

#[test]
fn canonical_forms_separate_nonisomorphic_pairs() {
    // curated non-isomorphic pairs with equal sizes and cover counts
    let g = |ls: &[&str]| GroundSet::new(ls.iter().copied());
    let rel = |pairs: &[(&str, &str)]| -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    };
    let pairs = vec![
        (
            // chain of 3 vs V
            Poset::from_relations(g(&["a", "b", "c"]), &rel(&[("a", "b"), ("b", "c")])).unwrap(),
            Poset::from_relations(g(&["a", "b", "c"]), &rel(&[("a", "b"), ("a", "c")])).unwrap(),
        ),
        (
            // V vs Λ
            Poset::from_relations(g(&["a", "b", "c"]), &rel(&[("a", "b"), ("a", "c")])).unwrap(),
            Poset::from_relations(g(&["a", "b", "c"]), &rel(&[("a", "c"), ("b", "c")])).unwrap(),
        ),
        (
            // N poset vs disjoint union of two chains
            Poset::from_relations(
                g(&["a", "b", "c", "d"]),
                &rel(&[("a", "c"), ("b", "c"), ("b", "d")]),
            )
            .unwrap(),
            Poset::from_relations(g(&["a", "b", "c", "d"]), &rel(&[("a", "c"), ("b", "d")]))
                .unwrap(),
        ),
        (
            // diamond vs 4-chain
            Poset::from_relations(
                g(&["a", "b", "c", "d"]),
                &rel(&[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]),
            )
            .unwrap(),
            Poset::from_relations(
                g(&["a", "b", "c", "d"]),
                &rel(&[("a", "b"), ("b", "c"), ("c", "d")]),
            )
            .unwrap(),
        ),
    ];
    for (p, q) in pairs {
        assert_ne!(
            p.canonical_form().unwrap(),
            q.canonical_form().unwrap(),
            "{p} vs {q}"
        );
    }
}
