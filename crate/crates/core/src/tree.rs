//! Planar binary trees with labeled leaves and the bijection with rooted
//! connected chord diagrams.
//!
//! A tree on `ℓ` leaves has `2ℓ − 1` nodes, numbered in preorder (root
//! first, then the left subtree, then the right).  The insertion
//! `tree_insert(A, B, i)` grafts `A` as the new left sibling of the `i`-th
//! preorder node of `B`; it is the tree shadow of the diagram insertion
//! `C1 (0,i) C2`, and [`to_tree`] / [`from_tree`] intertwine the two.
//!
//! The image of the diagram-to-tree map is cut out by two properties:
//!
//! * **P1** — at every internal vertex `w`, the smallest leaf label in the
//!   left subtree of `w` is smaller than the label of the leaf reached
//!   from `w` by always branching right;
//! * **P2** (recursive) — the smallest removable proper subtree `H`
//!   containing leaf 1 carries exactly the labels
//!   `{1} ∪ {n − ℓ(H) + 2, …, n}`, and both `H` and the spliced remainder
//!   satisfy the same property after relabeling.  A subtree is *removable*
//!   when replacing its parent by its sibling preserves P1.
//!
//! Leaf labels of `to_tree(C)` are the intersection-order labels of the
//! chords of `C`, and the fully-right leaf of the tree is `b(C)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::ChordDiagram;
use crate::{Error, Result};

/// A planar binary tree with labeled leaves.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub enum LabeledTree {
    /// A leaf carrying a label.
    Leaf(usize),
    /// An internal vertex with ordered children.
    Node(Box<LabeledTree>, Box<LabeledTree>),
}

/// Serialized form: `{"leaf": l}` or `{"left": …, "right": …}`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TreeJson {
    Leaf { leaf: usize },
    Node { left: Box<TreeJson>, right: Box<TreeJson> },
}

impl From<LabeledTree> for TreeJson {
    fn from(t: LabeledTree) -> Self {
        match t {
            LabeledTree::Leaf(l) => TreeJson::Leaf { leaf: l },
            LabeledTree::Node(l, r) => {
                TreeJson::Node { left: Box::new((*l).into()), right: Box::new((*r).into()) }
            }
        }
    }
}

impl TryFrom<TreeJson> for LabeledTree {
    type Error = std::convert::Infallible;

    fn try_from(t: TreeJson) -> std::result::Result<Self, Self::Error> {
        Ok(match t {
            TreeJson::Leaf { leaf } => LabeledTree::Leaf(leaf),
            TreeJson::Node { left, right } => {
                LabeledTree::node((*left).try_into()?, (*right).try_into()?)
            }
        })
    }
}

impl LabeledTree {
    /// Convenience constructor for an internal vertex.
    pub fn node(left: LabeledTree, right: LabeledTree) -> Self {
        LabeledTree::Node(Box::new(left), Box::new(right))
    }

    /// Number of leaves.
    pub fn num_leaves(&self) -> usize {
        match self {
            LabeledTree::Leaf(_) => 1,
            LabeledTree::Node(l, r) => l.num_leaves() + r.num_leaves(),
        }
    }

    /// Number of nodes, `2ℓ − 1`.
    pub fn num_nodes(&self) -> usize {
        2 * self.num_leaves() - 1
    }

    /// All leaf labels, left to right.
    pub fn leaf_labels(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<usize>) {
        match self {
            LabeledTree::Leaf(l) => out.push(*l),
            LabeledTree::Node(l, r) => {
                l.collect_labels(out);
                r.collect_labels(out);
            }
        }
    }

    /// Smallest leaf label.
    pub fn min_label(&self) -> usize {
        match self {
            LabeledTree::Leaf(l) => *l,
            LabeledTree::Node(l, r) => l.min_label().min(r.min_label()),
        }
    }

    /// Label of the leaf reached by always branching right.
    pub fn fully_right_leaf(&self) -> usize {
        match self {
            LabeledTree::Leaf(l) => *l,
            LabeledTree::Node(_, r) => r.fully_right_leaf(),
        }
    }

    /// Applies `f` to every leaf label.
    pub fn relabel(&self, f: &impl Fn(usize) -> usize) -> LabeledTree {
        match self {
            LabeledTree::Leaf(l) => LabeledTree::Leaf(f(*l)),
            LabeledTree::Node(l, r) => LabeledTree::node(l.relabel(f), r.relabel(f)),
        }
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabeledTree::Leaf(l) => write!(f, "{l}"),
            LabeledTree::Node(l, r) => write!(f, "({l},{r})"),
        }
    }
}

/// Grafts `a` as the new left sibling of the `i`-th preorder node of `b`:
/// that node `S` is replaced by an internal vertex with children `(a, S)`.
pub fn tree_insert(a: &LabeledTree, b: &LabeledTree, i: usize) -> Result<LabeledTree> {
    let max = b.num_nodes();
    if i < 1 || i > max {
        return Err(Error::EdgeOutOfRange { index: i, max });
    }
    let mut counter = 0;
    Ok(graft(a, b, &mut counter, i))
}

fn graft(a: &LabeledTree, b: &LabeledTree, counter: &mut usize, target: usize) -> LabeledTree {
    *counter += 1;
    if *counter == target {
        return LabeledTree::node(a.clone(), b.clone());
    }
    match b {
        LabeledTree::Leaf(l) => LabeledTree::Leaf(*l),
        LabeledTree::Node(l, r) => {
            let nl = graft(a, l, counter, target);
            let nr = graft(a, r, counter, target);
            LabeledTree::node(nl, nr)
        }
    }
}

/// Checks property P1, reporting the preorder index of the first internal
/// vertex at which it fails.  Labels need not be a permutation.
pub fn check_p1(t: &LabeledTree) -> Result<()> {
    let mut counter = 0;
    p1_rec(t, &mut counter)
}

fn p1_rec(t: &LabeledTree, counter: &mut usize) -> Result<()> {
    *counter += 1;
    if let LabeledTree::Node(l, r) = t {
        let vertex = *counter;
        if l.min_label() >= t.fully_right_leaf() {
            return Err(Error::P1Violation { vertex });
        }
        p1_rec(l, counter)?;
        p1_rec(r, counter)?;
    }
    Ok(())
}

/// Requires the leaf labels to be a permutation of `1..=ℓ`.
fn validate_labels(t: &LabeledTree) -> Result<()> {
    let mut labels = t.leaf_labels();
    let n = labels.len();
    labels.sort_unstable();
    if labels.iter().enumerate().any(|(i, &l)| l != i + 1) {
        return Err(Error::NonPermutationLabels { n });
    }
    Ok(())
}

/// Checks the recursive property P2 (assuming permutation labels, which it
/// validates).  The recursion also verifies P1 on both normalized pieces,
/// so `check_p1 ∧ check_p2` succeeds exactly when [`from_tree`] does.
pub fn check_p2(t: &LabeledTree) -> Result<()> {
    validate_labels(t)?;
    p2_rec(t)
}

fn p2_rec(t: &LabeledTree) -> Result<()> {
    if matches!(t, LabeledTree::Leaf(_)) {
        return Ok(());
    }
    let (h, _k, rest) = split_off_head(t)?;
    check_p1(&h)?;
    p2_rec(&h)?;
    check_p1(&rest)?;
    p2_rec(&rest)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Left,
    Right,
}

/// Directions from the root of `t` to the leaf labeled 1.
fn path_to_leaf1(t: &LabeledTree) -> Vec<Dir> {
    let mut path = Vec::new();
    let mut cur = t;
    loop {
        match cur {
            LabeledTree::Leaf(_) => return path,
            LabeledTree::Node(l, r) => {
                if l.leaf_labels().contains(&1) {
                    path.push(Dir::Left);
                    cur = l;
                } else {
                    path.push(Dir::Right);
                    cur = r;
                }
            }
        }
    }
}

/// The subtree of `t` at the end of `path`.
fn subtree_at<'a>(t: &'a LabeledTree, path: &[Dir]) -> &'a LabeledTree {
    let mut cur = t;
    for &d in path {
        match cur {
            LabeledTree::Node(l, r) => cur = if d == Dir::Left { l } else { r },
            LabeledTree::Leaf(_) => unreachable!("path descends past a leaf"),
        }
    }
    cur
}

/// `t` with the subtree at `path` spliced out: the parent of that subtree
/// is replaced by its sibling.  `path` must be nonempty.
fn splice_out(t: &LabeledTree, path: &[Dir]) -> LabeledTree {
    match t {
        LabeledTree::Node(l, r) => {
            if path.len() == 1 {
                // Replace this vertex by the sibling of the removed child.
                match path[0] {
                    Dir::Left => (**r).clone(),
                    Dir::Right => (**l).clone(),
                }
            } else {
                match path[0] {
                    Dir::Left => LabeledTree::node(splice_out(l, &path[1..]), (**r).clone()),
                    Dir::Right => LabeledTree::node((**l).clone(), splice_out(r, &path[1..])),
                }
            }
        }
        LabeledTree::Leaf(_) => unreachable!("path descends past a leaf"),
    }
}

/// Finds the smallest removable proper subtree `H` containing leaf 1,
/// checks its label set, and returns the normalized pieces
/// `(H, k, remainder)`: `H` has its labels `{1} ∪ {n−ℓ+2, …, n}` compressed
/// order-preservingly onto `1..=ℓ`, the remainder has its labels shifted
/// down by 1, and `k` is the preorder index in the remainder of the node
/// `H` was grafted onto.
fn split_off_head(t: &LabeledTree) -> Result<(LabeledTree, usize, LabeledTree)> {
    let n = t.num_leaves();
    let path = path_to_leaf1(t);
    debug_assert!(!path.is_empty(), "split_off_head requires at least two leaves");
    // Candidates are nested along the path to leaf 1; the deepest removable
    // one is the smallest.
    let mut found = None;
    for depth in (1..=path.len()).rev() {
        let rest = splice_out(t, &path[..depth]);
        if check_p1(&rest).is_ok() {
            found = Some(depth);
            break;
        }
    }
    let depth = found.ok_or_else(|| Error::P2Violation {
        vertex: 1,
        reason: "no removable subtree contains leaf 1".into(),
    })?;
    let h = subtree_at(t, &path[..depth]);
    let ell = h.num_leaves();
    let mut labels = h.leaf_labels();
    labels.sort_unstable();
    let mut expected = vec![1usize];
    expected.extend(n - ell + 2..=n);
    if labels != expected {
        return Err(Error::P2Violation {
            vertex: preorder_index(t, &path[..depth]),
            reason: format!(
                "head subtree labels {labels:?} differ from {{1}} ∪ {{{}..={}}}",
                n - ell + 2,
                n
            ),
        });
    }
    // Preorder index, within the spliced remainder, of the sibling that
    // replaces H's parent.  Left-sibling subtrees along the path are not
    // touched by the splice, so the offsets can be read off `t` itself.
    let k = preorder_index(t, &path[..depth - 1]);
    let rest = splice_out(t, &path[..depth]);
    let h_norm = h.relabel(&|l| if l == 1 { 1 } else { l - (n - ell) });
    let rest_norm = rest.relabel(&|l| l - 1);
    Ok((h_norm, k, rest_norm))
}

/// Preorder index (1-based) of the node of `t` at the end of `path`.
fn preorder_index(t: &LabeledTree, path: &[Dir]) -> usize {
    let mut idx = 1;
    let mut cur = t;
    for &d in path {
        match cur {
            LabeledTree::Node(l, r) => match d {
                Dir::Left => {
                    idx += 1;
                    cur = l;
                }
                Dir::Right => {
                    idx += 1 + l.num_nodes();
                    cur = r;
                }
            },
            LabeledTree::Leaf(_) => unreachable!("path descends past a leaf"),
        }
    }
    idx
}

/// The tree of a rooted connected chord diagram.  Leaf labels are the
/// intersection-order labels of the chords.
pub fn to_tree(c: &ChordDiagram) -> Result<LabeledTree> {
    if c.n() == 1 {
        return Ok(LabeledTree::Leaf(1));
    }
    let (c1, i, c2) = c.root_share_decompose()?;
    let n2 = c2.n();
    let t1 = to_tree(&c1)?.relabel(&|j| if j == 1 { 1 } else { j + n2 });
    let t2 = to_tree(&c2)?.relabel(&|j| j + 1);
    tree_insert(&t1, &t2, i)
}

/// The inverse bijection: rebuilds the diagram of a tree satisfying P1 and
/// P2, or reports the first violated property.
pub fn from_tree(t: &LabeledTree) -> Result<ChordDiagram> {
    validate_labels(t)?;
    check_p1(t)?;
    from_tree_rec(t)
}

/// Every planar binary tree whose `n` leaves are labeled with a
/// permutation of `1..=n` (all shapes × all label orders).
pub fn enumerate_labeled_trees(n: usize) -> Vec<LabeledTree> {
    let mut out = Vec::new();
    let mut labels: Vec<usize> = (1..=n).collect();
    permute(&mut labels, 0, &mut |seq| out.extend(shapes_on(seq)));
    out
}

fn permute(labels: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == labels.len() {
        visit(labels);
        return;
    }
    for i in start..labels.len() {
        labels.swap(start, i);
        permute(labels, start + 1, visit);
        labels.swap(start, i);
    }
}

/// All tree shapes whose left-to-right leaf sequence is exactly `seq`.
fn shapes_on(seq: &[usize]) -> Vec<LabeledTree> {
    if seq.len() == 1 {
        return vec![LabeledTree::Leaf(seq[0])];
    }
    let mut out = Vec::new();
    for split in 1..seq.len() {
        for l in shapes_on(&seq[..split]) {
            for r in shapes_on(&seq[split..]) {
                out.push(LabeledTree::node(l.clone(), r));
            }
        }
    }
    out
}

fn from_tree_rec(t: &LabeledTree) -> Result<ChordDiagram> {
    if matches!(t, LabeledTree::Leaf(_)) {
        return Ok(ChordDiagram::single());
    }
    let (h, k, rest) = split_off_head(t)?;
    check_p1(&h)?;
    check_p1(&rest)?;
    let c1 = from_tree_rec(&h)?;
    let c2 = from_tree_rec(&rest)?;
    ChordDiagram::insert(&c1, &c2, k)
}
