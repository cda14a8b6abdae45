use chord_core::diagram::ChordDiagram;
use chord_core::tree::{check_p1, check_p2, from_tree, to_tree};
use proptest::prelude::*;

/// A random construction plan for a connected diagram: either the single
/// chord or an insertion of one plan into another at a pseudo-random
/// interval.
#[derive(Clone, Debug)]
enum Plan {
    Single,
    Insert(Box<Plan>, Box<Plan>, u16),
}

fn plan_strategy() -> impl Strategy<Value = Plan> {
    let leaf = Just(Plan::Single);
    leaf.prop_recursive(4, 12, 2, |inner| {
        (inner.clone(), inner, any::<u16>())
            .prop_map(|(a, b, i)| Plan::Insert(Box::new(a), Box::new(b), i))
    })
}

fn build(plan: &Plan) -> ChordDiagram {
    match plan {
        Plan::Single => ChordDiagram::single(),
        Plan::Insert(p1, p2, i) => {
            let c1 = build(p1);
            let c2 = build(p2);
            let max = 2 * c2.n() - 1;
            let i = 1 + (*i as usize) % max;
            ChordDiagram::insert(&c1, &c2, i).unwrap()
        }
    }
}

fn crossing_pairs(d: &ChordDiagram) -> Vec<(usize, usize)> {
    d.intersection_graph().edges().to_vec()
}

proptest! {
    #[test]
    fn constructed_diagrams_are_connected(plan in plan_strategy()) {
        let d = build(&plan);
        prop_assert!(d.is_connected());
    }

    #[test]
    fn decompose_inverts_insert(plan in plan_strategy()) {
        let d = build(&plan);
        if d.n() >= 2 {
            let (c1, i, c2) = d.root_share_decompose().unwrap();
            let back = ChordDiagram::insert(&c1, &c2, i).unwrap();
            prop_assert_eq!(back, d);
        }
    }

    #[test]
    fn intersection_order_is_a_crossing_automorphism(plan in plan_strategy()) {
        // If counterclockwise chords a < b cross, then a also precedes b in
        // the intersection order.
        let d = build(&plan);
        let sigma = d.intersection_order().unwrap();
        let mut pos = vec![0usize; d.n() + 1];
        for (p, &label) in sigma.iter().enumerate() {
            pos[label] = p + 1;
        }
        for (a, b) in crossing_pairs(&d) {
            prop_assert!(pos[a] < pos[b], "chords {a} < {b} cross but positions invert");
        }
    }

    #[test]
    fn stats_shape_invariants(plan in plan_strategy()) {
        let d = build(&plan);
        let s = d.stats().unwrap();
        let n = d.n();
        // sigma is a permutation of 1..=n.
        let mut sorted = s.sigma.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (1..=n).collect::<Vec<_>>());
        // The last chord in intersection order is always terminal.
        prop_assert_eq!(*s.terminal.last().unwrap(), n);
        prop_assert_eq!(s.b, s.terminal[0]);
        prop_assert_eq!(s.delta.len() + 1, s.terminal.len());
        if n >= 1 {
            prop_assert_eq!(s.delta_bar.len(), n - 1);
        }
        // The monomial degree is n − 1: one factor per non-root chord.
        prop_assert_eq!(s.monomial.iter().map(|(_, e)| e).sum::<u32>(), (n - 1) as u32);
    }

    #[test]
    fn smallest_terminal_shifts_by_one_under_insertion(
        plan1 in plan_strategy(),
        plan2 in plan_strategy(),
        i_raw in any::<u16>(),
    ) {
        let c1 = build(&plan1);
        let c2 = build(&plan2);
        let i = 1 + (i_raw as usize) % (2 * c2.n() - 1);
        let c = ChordDiagram::insert(&c1, &c2, i).unwrap();
        prop_assert_eq!(c.stats().unwrap().b, c2.stats().unwrap().b + 1);
    }

    #[test]
    fn tree_round_trip(plan in plan_strategy()) {
        let d = build(&plan);
        let t = to_tree(&d).unwrap();
        prop_assert!(check_p1(&t).is_ok());
        prop_assert!(check_p2(&t).is_ok());
        prop_assert_eq!(t.fully_right_leaf(), d.stats().unwrap().b);
        prop_assert_eq!(from_tree(&t).unwrap(), d);
    }

    #[test]
    fn serde_round_trips(plan in plan_strategy()) {
        let d = build(&plan);
        let json = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<ChordDiagram>(&json).unwrap(), d.clone());
        let t = to_tree(&d).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<chord_core::tree::LabeledTree>(&json).unwrap(), t);
    }

    #[test]
    fn random_arrays_never_panic(raw in proptest::collection::vec(1usize..=12, 0..12)) {
        // from_pairing either accepts a valid involution or reports an
        // error; it never panics.
        let _ = ChordDiagram::from_pairing(raw);
    }

    #[test]
    fn bracket_string_is_balanced(plan in plan_strategy()) {
        let d = build(&plan);
        let s = d.bracket_string();
        prop_assert_eq!(s.len(), 2 * d.n());
        // Every letter appears exactly twice.
        let mut counts = std::collections::HashMap::new();
        for ch in s.chars() {
            *counts.entry(ch).or_insert(0) += 1;
        }
        prop_assert!(counts.values().all(|&c| c == 2));
    }
}
