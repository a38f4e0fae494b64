//! Property tests over randomly generated small posets: the closure calculus,
//! canonical-form generator independence, and the element-level operation
//! laws.

use proptest::prelude::*;

use powerspace_core::poset::{Direction, Extremal, Poset, Subset};
use powerspace_core::powerspace::{combine, compare, Elem, PsKind};
use powerspace_core::{alexandroff_topology, specialization_order, validate_poset};

/// A random labeled poset on 1..=5 elements: a random set of ascending index
/// pairs is automatically acyclic, and closure handles the rest.
fn poset_strategy() -> impl Strategy<Value = Poset> {
    (1usize..=5)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            (
                Just(n),
                prop::collection::vec(prop::bool::ANY, pairs.len()).prop_map(move |picks| {
                    pairs
                        .iter()
                        .zip(picks)
                        .filter(|(_, keep)| *keep)
                        .map(|(&p, _)| p)
                        .collect::<Vec<_>>()
                }),
            )
        })
        .prop_map(|(n, pairs)| {
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let pair_refs: Vec<(&str, &str)> = pairs
                .iter()
                .map(|&(i, j)| (name_refs[i], name_refs[j]))
                .collect();
            validate_poset(&name_refs, &pair_refs).expect("ascending pairs cannot form a cycle")
        })
}

fn subset_in(p: &Poset) -> impl Strategy<Value = Subset> {
    let n = p.len();
    (0u64..(1 << n)).prop_map(move |mask| Subset::from_mask(n, mask))
}

fn nonempty_subset_in(p: &Poset) -> impl Strategy<Value = Subset> {
    let n = p.len();
    (1u64..(1 << n)).prop_map(move |mask| Subset::from_mask(n, mask))
}

fn poset_with_subsets(k: usize) -> impl Strategy<Value = (Poset, Vec<Subset>)> {
    poset_strategy().prop_flat_map(move |p| {
        let subsets = prop::collection::vec(nonempty_subset_in(&p), k);
        (Just(p), subsets)
    })
}

proptest! {
    #[test]
    fn closure_is_extensive_monotone_idempotent(
        (p, subsets) in poset_strategy().prop_flat_map(|p| {
            let pair = (subset_in(&p), subset_in(&p));
            (Just(p), pair)
        })
    ) {
        let (s, t) = subsets;
        for dir in [Direction::Down, Direction::Up] {
            let cs = p.closure(&s, dir);
            prop_assert!(s.is_subset_of(&cs));
            prop_assert_eq!(p.closure(&cs, dir), cs);
            let union = s.union(&t);
            prop_assert!(cs.is_subset_of(&p.closure(&union, dir)));
        }
    }

    #[test]
    fn extremal_antichain_round_trip((p, subsets) in poset_with_subsets(1)) {
        let s = subsets[0];
        let max = p.extremal_antichain(&s, Extremal::Max).unwrap();
        prop_assert_eq!(p.closure(&max.subset(), Direction::Down), p.closure(&s, Direction::Down));
        let min = p.extremal_antichain(&s, Extremal::Min).unwrap();
        prop_assert_eq!(p.closure(&min.subset(), Direction::Up), p.closure(&s, Direction::Up));
    }

    #[test]
    fn alexandroff_round_trip(p in poset_strategy()) {
        let t = alexandroff_topology(&p).unwrap();
        prop_assert_eq!(specialization_order(&t).unwrap(), p);
    }

    #[test]
    fn canonical_form_ignores_dominated_generators((p, subsets) in poset_with_subsets(1)) {
        // enlarging F inside the denoted set leaves the element unchanged
        let f = subsets[0];
        for kind in PsKind::ALL {
            let e = Elem::new(kind, &p, &f).unwrap();
            let padded = f.union(&e.denoted(&p));
            prop_assert_eq!(Elem::new(kind, &p, &padded).unwrap(), e);
        }
    }

    #[test]
    fn combine_is_idempotent_commutative_associative((p, subsets) in poset_with_subsets(3)) {
        for kind in PsKind::ALL {
            let a = Elem::new(kind, &p, &subsets[0]).unwrap();
            let b = Elem::new(kind, &p, &subsets[1]).unwrap();
            let c = Elem::new(kind, &p, &subsets[2]).unwrap();
            prop_assert_eq!(combine(&p, &a, &a).unwrap(), a);
            let ab = combine(&p, &a, &b).unwrap();
            prop_assert_eq!(ab, combine(&p, &b, &a).unwrap());
            let abc1 = combine(&p, &ab, &c).unwrap();
            let abc2 = combine(&p, &a, &combine(&p, &b, &c).unwrap()).unwrap();
            prop_assert_eq!(abc1, abc2);
        }
    }

    #[test]
    fn compare_is_a_partial_order((p, subsets) in poset_with_subsets(3)) {
        for kind in PsKind::ALL {
            let a = Elem::new(kind, &p, &subsets[0]).unwrap();
            let b = Elem::new(kind, &p, &subsets[1]).unwrap();
            let c = Elem::new(kind, &p, &subsets[2]).unwrap();
            prop_assert!(compare(&p, &a, &a).unwrap());
            if compare(&p, &a, &b).unwrap() && compare(&p, &b, &a).unwrap() {
                prop_assert_eq!(a, b);
            }
            if compare(&p, &a, &b).unwrap() && compare(&p, &b, &c).unwrap() {
                prop_assert!(compare(&p, &a, &c).unwrap());
            }
        }
    }

    #[test]
    fn combine_is_the_bound_for_ordered_kinds((p, subsets) in poset_with_subsets(2)) {
        // ∪ is the least upper bound on lower elements, the greatest lower
        // bound on upper elements
        let a = Elem::new(PsKind::Lower, &p, &subsets[0]).unwrap();
        let b = Elem::new(PsKind::Lower, &p, &subsets[1]).unwrap();
        let ab = combine(&p, &a, &b).unwrap();
        prop_assert!(compare(&p, &a, &ab).unwrap());
        prop_assert!(compare(&p, &b, &ab).unwrap());

        let a = Elem::new(PsKind::Upper, &p, &subsets[0]).unwrap();
        let b = Elem::new(PsKind::Upper, &p, &subsets[1]).unwrap();
        let ab = combine(&p, &a, &b).unwrap();
        prop_assert!(compare(&p, &ab, &a).unwrap());
        prop_assert!(compare(&p, &ab, &b).unwrap());
    }

    #[test]
    fn convex_element_is_its_lens((p, subsets) in poset_with_subsets(1)) {
        // the canonical pair regenerates the denoted lens, and the lens
        // regenerates the pair
        let e = Elem::new(PsKind::Convex, &p, &subsets[0]).unwrap();
        let lens = e.denoted(&p);
        prop_assert_eq!(Elem::new(PsKind::Convex, &p, &lens).unwrap(), e);
        let hull = p.closure(&lens, Direction::Down).intersection(&p.closure(&lens, Direction::Up));
        prop_assert_eq!(hull, lens);
    }
}
