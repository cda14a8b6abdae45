use std::collections::BTreeSet;

use chord_core::diagram::{cycloid, ladder, wheel, ChordDiagram};
use chord_core::enumerate::enumerate_constructive;
use chord_core::tree::{
    check_p1, check_p2, enumerate_labeled_trees, from_tree, to_tree, tree_insert, LabeledTree,
};
use chord_core::Error;

fn leaf(l: usize) -> LabeledTree {
    LabeledTree::Leaf(l)
}

fn node(l: LabeledTree, r: LabeledTree) -> LabeledTree {
    LabeledTree::node(l, r)
}

fn diagram(chords: &[(usize, usize)]) -> ChordDiagram {
    ChordDiagram::from_chords(chords).unwrap()
}

#[test]
fn basic_shape_accessors() {
    let t = node(node(leaf(1), leaf(4)), leaf(3));
    assert_eq!(t.num_leaves(), 3);
    assert_eq!(t.num_nodes(), 5);
    assert_eq!(t.leaf_labels(), vec![1, 4, 3]);
    assert_eq!(t.min_label(), 1);
    assert_eq!(t.fully_right_leaf(), 3);
    assert_eq!(t.to_string(), "((1,4),3)");
}

#[test]
fn tree_insert_grafts_at_preorder_position() {
    let a = leaf(9);
    let b = node(leaf(1), leaf(2));
    // Preorder nodes of b: 1 = root, 2 = leaf 1, 3 = leaf 2.
    assert_eq!(tree_insert(&a, &b, 1).unwrap(), node(a.clone(), b.clone()));
    assert_eq!(
        tree_insert(&a, &b, 2).unwrap(),
        node(node(leaf(9), leaf(1)), leaf(2))
    );
    assert_eq!(
        tree_insert(&a, &b, 3).unwrap(),
        node(leaf(1), node(leaf(9), leaf(2)))
    );
    assert!(matches!(
        tree_insert(&a, &b, 0),
        Err(Error::EdgeOutOfRange { index: 0, max: 3 })
    ));
    assert!(matches!(
        tree_insert(&a, &b, 4),
        Err(Error::EdgeOutOfRange { index: 4, max: 3 })
    ));
}

#[test]
fn golden_images_up_to_three_chords() {
    // n = 1 and n = 2.
    assert_eq!(to_tree(&ChordDiagram::single()).unwrap(), leaf(1));
    assert_eq!(
        to_tree(&diagram(&[(1, 3), (2, 4)])).unwrap(),
        node(leaf(1), leaf(2))
    );
    // The four diagrams on three chords.
    assert_eq!(
        to_tree(&ladder(3).unwrap()).unwrap(),
        node(node(leaf(1), leaf(3)), leaf(2))
    );
    assert_eq!(
        to_tree(&cycloid(3).unwrap()).unwrap(),
        node(leaf(1), node(leaf(2), leaf(3)))
    );
    assert_eq!(
        to_tree(&diagram(&[(1, 5), (2, 4), (3, 6)])).unwrap(),
        node(leaf(2), node(leaf(1), leaf(3)))
    );
    assert_eq!(
        to_tree(&wheel(3).unwrap()).unwrap(),
        node(node(leaf(1), leaf(2)), leaf(3))
    );
}

#[test]
fn comb_families() {
    // Wheels map to left combs with increasing labels, cycloids to right
    // combs, ladders to left combs reading 1, n, n−1, …, 2.
    for n in 2..=6 {
        let mut left_comb = node(leaf(1), leaf(2));
        for l in 3..=n {
            left_comb = node(left_comb, leaf(l));
        }
        assert_eq!(to_tree(&wheel(n).unwrap()).unwrap(), left_comb);

        let mut right_comb = leaf(n);
        for l in (1..n).rev() {
            right_comb = node(leaf(l), right_comb);
        }
        assert_eq!(to_tree(&cycloid(n).unwrap()).unwrap(), right_comb);

        let mut ladder_comb = node(leaf(1), leaf(n));
        for l in (2..n).rev() {
            ladder_comb = node(ladder_comb, leaf(l));
        }
        assert_eq!(to_tree(&ladder(n).unwrap()).unwrap(), ladder_comb);
    }
}

#[test]
fn four_chord_images_are_distinct() {
    let diagrams = enumerate_constructive(4).unwrap().pop().unwrap();
    let trees: Vec<LabeledTree> =
        diagrams.iter().map(|d| to_tree(d).unwrap()).collect();
    assert_eq!(trees.len(), 27);
    let set: BTreeSet<_> = trees.iter().cloned().collect();
    assert_eq!(set.len(), 27, "images must be pairwise distinct");
}

#[test]
fn round_trip_small_sizes() {
    for level in enumerate_constructive(5).unwrap() {
        for d in level {
            let t = to_tree(&d).unwrap();
            assert_eq!(from_tree(&t).unwrap(), d);
        }
    }
}

#[test]
fn p1_violations_are_reported() {
    // Root: min label of left subtree (2) is not below the fully-right
    // leaf (1).
    assert!(matches!(
        check_p1(&node(leaf(2), leaf(1))),
        Err(Error::P1Violation { vertex: 1 })
    ));
    // Violation at a deeper vertex: ((1,(3,2)) has the inner node failing.
    let t = node(leaf(1), node(leaf(3), leaf(2)));
    assert!(matches!(check_p1(&t), Err(Error::P1Violation { vertex: 3 })));
    assert!(check_p1(&node(leaf(1), leaf(2))).is_ok());
}

#[test]
fn p2_violations_are_reported() {
    let t = node(node(leaf(1), leaf(2)), leaf(3));
    assert!(check_p1(&t).is_ok());
    assert!(check_p2(&t).is_ok());
    // Non-permutation labels are rejected up front.
    assert!(matches!(
        check_p2(&node(leaf(1), leaf(3))),
        Err(Error::NonPermutationLabels { n: 2 })
    ));
    assert!(matches!(
        from_tree(&node(leaf(2), leaf(2))),
        Err(Error::NonPermutationLabels { n: 2 })
    ));
}

#[test]
fn p1_alone_is_not_sufficient_on_four_leaves() {
    // On three leaves P1 already cuts the 12 labeled trees down to the
    // 4 image trees; on four leaves it does not, and P2 is needed.
    let mut p1_only = 0;
    let mut both = 0;
    for t in enumerate_labeled_trees(4) {
        if check_p1(&t).is_ok() {
            if check_p2(&t).is_ok() {
                assert!(from_tree(&t).is_ok(), "accepted tree {t} must invert");
                both += 1;
            } else {
                assert!(from_tree(&t).is_err(), "rejected tree {t} must not invert");
                p1_only += 1;
            }
        }
    }
    assert_eq!(both, 27);
    assert!(p1_only > 0, "some P1 tree must fail P2");
}

#[test]
fn image_characterization_on_three_leaves() {
    let diagrams = enumerate_constructive(3).unwrap().pop().unwrap();
    let image: BTreeSet<LabeledTree> =
        diagrams.iter().map(|d| to_tree(d).unwrap()).collect();
    let mut accepted = 0;
    for t in enumerate_labeled_trees(3) {
        let ok = check_p1(&t).is_ok() && check_p2(&t).is_ok();
        assert_eq!(ok, image.contains(&t), "tree {t}");
        if ok {
            assert_eq!(from_tree(&t).unwrap(), diagrams[diagrams
                .iter()
                .position(|d| to_tree(d).unwrap() == t)
                .unwrap()]);
            accepted += 1;
        }
    }
    assert_eq!(accepted, 4);
}

#[test]
fn labeled_tree_generator_counts() {
    // Catalan(n−1) shapes × n! labelings.
    assert_eq!(enumerate_labeled_trees(1).len(), 1);
    assert_eq!(enumerate_labeled_trees(2).len(), 2);
    assert_eq!(enumerate_labeled_trees(3).len(), 12);
    assert_eq!(enumerate_labeled_trees(4).len(), 120);
    let all = enumerate_labeled_trees(3);
    let set: BTreeSet<_> = all.iter().cloned().collect();
    assert_eq!(set.len(), all.len());
}

#[test]
fn serde_round_trip() {
    let t = node(node(leaf(1), leaf(4)), leaf(3));
    let json = serde_json::to_value(&t).unwrap();
    assert_eq!(
        json,
        serde_json::json!({
            "left": {"left": {"leaf": 1}, "right": {"leaf": 4}},
            "right": {"leaf": 3}
        })
    );
    let back: LabeledTree = serde_json::from_value(json).unwrap();
    assert_eq!(back, t);
    let l: LabeledTree = serde_json::from_value(serde_json::json!({"leaf": 7})).unwrap();
    assert_eq!(l, leaf(7));
}
