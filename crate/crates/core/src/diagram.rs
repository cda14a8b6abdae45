//! Rooted chord diagrams and their per-diagram statistics.
//!
//! A diagram on `n` chords is a fixed-point-free involution of the `2n`
//! circle points `1..=2n`, numbered counterclockwise starting at the root
//! point `1`.  Chords are labeled counterclockwise: chord `i` is the one
//! with the `i`-th smallest first endpoint, so the root chord is always
//! chord 1.  Two chords *cross* when their endpoint pairs interleave on the
//! circle, and a diagram is *connected* when the crossing graph on its
//! chords is connected.
//!
//! The module also implements:
//!
//! * the directed intersection graph `I(X)` (edge `i → j` iff chords `i < j`
//!   cross);
//! * the intersection order `σ_X` — the recursive relabeling that deletes
//!   the outgoing edges of the smallest vertex, splits into components
//!   ordered by smallest vertex, and recurses;
//! * terminal chords, `b(X)`, the gap sequences `δ(X)` / `δ̄(X)`, and the
//!   monomial `f_X`;
//! * the insertion `C1 (0,i) C2` (root of `C1` into interval 0 of `C2`, the
//!   rest of `C1` into interval `i`) and its unique inverse, the root-share
//!   decomposition;
//! * the example families: cycloids, wheels, ladders, and cycloid-wheel
//!   composites.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::symbolic::FMonomial;
use crate::{Error, Result};

/// A rooted chord diagram, encoded as the involution array of its `2n`
/// endpoints.
///
/// Equality is array equality: mirror images are distinct diagrams.  The
/// type itself also represents disconnected diagrams (needed by the
/// brute-force enumeration oracle); operations that require connectivity
/// check it explicitly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChordDiagram {
    /// `pairing[i-1]` is the partner of endpoint `i` (both 1-based).
    pairing: Vec<usize>,
}

impl ChordDiagram {
    /// Builds a diagram from a 1-based partner array, validating that it is
    /// a fixed-point-free involution on `1..=2n`.
    pub fn from_pairing(pairing: Vec<usize>) -> Result<Self> {
        let len = pairing.len();
        if len == 0 || len % 2 != 0 {
            return Err(Error::InvalidPairing(format!(
                "endpoint count {len} is not a positive even number"
            )));
        }
        for (idx, &p) in pairing.iter().enumerate() {
            let i = idx + 1;
            if p < 1 || p > len {
                return Err(Error::InvalidPairing(format!(
                    "partner {p} of endpoint {i} out of range 1..={len}"
                )));
            }
            if p == i {
                return Err(Error::InvalidPairing(format!("endpoint {i} paired with itself")));
            }
            if pairing[p - 1] != i {
                return Err(Error::InvalidPairing(format!(
                    "pairing is not an involution at endpoint {i}"
                )));
            }
        }
        Ok(Self { pairing })
    }

    /// Builds a diagram from a list of chords given as endpoint pairs.
    pub fn from_chords(chords: &[(usize, usize)]) -> Result<Self> {
        let len = 2 * chords.len();
        let mut pairing = vec![0usize; len];
        for &(a, b) in chords {
            if a < 1 || a > len || b < 1 || b > len {
                return Err(Error::InvalidPairing(format!(
                    "chord ({a},{b}) out of range 1..={len}"
                )));
            }
            pairing[a - 1] = b;
            pairing[b - 1] = a;
        }
        Self::from_pairing(pairing)
    }

    /// The single-chord diagram.
    pub fn single() -> Self {
        Self { pairing: vec![2, 1] }
    }

    /// Number of chords.
    pub fn n(&self) -> usize {
        self.pairing.len() / 2
    }

    /// The 1-based partner array.
    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    /// Partner of endpoint `i` (1-based).
    pub fn partner(&self, i: usize) -> usize {
        self.pairing[i - 1]
    }

    /// Chords in counterclockwise label order, as `(first, second)` endpoint
    /// pairs with `first < second`; `chords()[0]` is the root chord.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n());
        for i in 1..=self.pairing.len() {
            let p = self.partner(i);
            if i < p {
                out.push((i, p));
            }
        }
        out
    }

    /// Counterclockwise label (1-based) of the chord containing endpoint
    /// `e`.
    pub fn chord_of(&self, e: usize) -> usize {
        let first = e.min(self.partner(e));
        // The label is the number of chords whose first endpoint is <= first.
        (1..=first).filter(|&i| i < self.partner(i)).count()
    }

    /// Whether chords `a` and `b` (as endpoint pairs) cross, i.e. their
    /// endpoints interleave on the circle.
    fn pairs_cross(a: (usize, usize), b: (usize, usize)) -> bool {
        (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
    }

    /// Symmetric crossing table indexed by 0-based counterclockwise labels.
    fn crossing_table(&self) -> Vec<Vec<bool>> {
        let chords = self.chords();
        let n = chords.len();
        let mut t = vec![vec![false; n]; n];
        for a in 0..n {
            for b in (a + 1)..n {
                if Self::pairs_cross(chords[a], chords[b]) {
                    t[a][b] = true;
                    t[b][a] = true;
                }
            }
        }
        t
    }

    /// The directed intersection graph `I(X)`.
    pub fn intersection_graph(&self) -> IntersectionGraph {
        let chords = self.chords();
        let n = chords.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if Self::pairs_cross(chords[a], chords[b]) {
                    edges.push((a + 1, b + 1));
                }
            }
        }
        IntersectionGraph { n, edges }
    }

    /// Whether the crossing graph on the chords is connected.
    pub fn is_connected(&self) -> bool {
        let chords = self.chords();
        let n = chords.len();
        if n <= 1 {
            return true;
        }
        let mut uf = UnionFind::new(n);
        for a in 0..n {
            for b in (a + 1)..n {
                if Self::pairs_cross(chords[a], chords[b]) {
                    uf.union(a, b);
                }
            }
        }
        (1..n).all(|v| uf.find(v) == uf.find(0))
    }

    /// The intersection order `σ_X`, returned as the sequence of
    /// counterclockwise labels read in intersection-order positions
    /// (`result[p-1]` is the counterclockwise label of the chord with
    /// intersection label `p`).
    pub fn intersection_order(&self) -> Result<Vec<usize>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let table = self.crossing_table();
        let verts: Vec<usize> = (0..self.n()).collect();
        let order0 = intersection_order_rec(verts, &table);
        Ok(order0.into_iter().map(|v| v + 1).collect())
    }

    /// All statistics of a connected diagram: intersection order, terminal
    /// chords, `b`, gap sequences, and the monomial `f_X`.
    pub fn stats(&self) -> Result<DiagramStats> {
        let sigma = self.intersection_order()?;
        let n = self.n();
        let table = self.crossing_table();
        // Position p is terminal iff its chord crosses no chord of larger
        // intersection label.
        let mut terminal = Vec::new();
        for p in 1..=n {
            let c = sigma[p - 1] - 1;
            if (p + 1..=n).all(|q| !table[c][sigma[q - 1] - 1]) {
                terminal.push(p);
            }
        }
        let b = terminal[0];
        let delta: Vec<usize> = terminal.windows(2).map(|w| w[1] - w[0]).collect();
        let mut delta_bar = vec![0; n - terminal.len()];
        delta_bar.extend_from_slice(&delta);
        let monomial = FMonomial::from_pairs(
            std::iter::once((0usize, (n - terminal.len()) as u32))
                .chain(delta.iter().map(|&d| (d, 1u32))),
        );
        Ok(DiagramStats { sigma, terminal, b, delta, delta_bar, monomial })
    }

    /// The insertion `C1 (0,i) C2`: the root endpoint of `C1` goes into
    /// interval 0 of `C2` (just before `C2`'s root) and the remaining
    /// `2|C1|−1` endpoints of `C1` go, in order, into interval `i` of `C2`
    /// (between circle positions `i` and `i+1`).  The root of the result is
    /// the root of `C1`.
    pub fn insert(c1: &Self, c2: &Self, i: usize) -> Result<Self> {
        let m2 = c1.pairing.len();
        let n2 = c2.pairing.len();
        if i < 1 || i > n2 - 1 {
            return Err(Error::IntervalOutOfRange { index: i, max: n2 - 1 });
        }
        let map1 = |e: usize| if e == 1 { 1 } else { i + e };
        let map2 = |p: usize| if p <= i { p + 1 } else { p + m2 };
        let mut pairing = vec![0usize; m2 + n2];
        for e in 1..=m2 {
            pairing[map1(e) - 1] = map1(c1.partner(e));
        }
        for p in 1..=n2 {
            pairing[map2(p) - 1] = map2(c2.partner(p));
        }
        Ok(Self { pairing })
    }

    /// The root-share decomposition: the unique triple `(C1, i, C2)` with
    /// `C = C1 (0,i) C2`.  `C2` is the first connected component of `C`
    /// minus the root chord (the one containing the second chord in
    /// counterclockwise order); `C1` is the root share — the root chord
    /// together with everything else.
    pub fn root_share_decompose(&self) -> Result<(Self, usize, Self)> {
        if self.n() < 2 {
            return Err(Error::Indecomposable);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let chords = self.chords();
        let n = chords.len();
        let table = self.crossing_table();
        // Components of the crossing graph restricted to the non-root chords.
        let mut uf = UnionFind::new(n);
        for a in 1..n {
            for b in (a + 1)..n {
                if table[a][b] {
                    uf.union(a, b);
                }
            }
        }
        // Chord 2 (0-based index 1) is the chord containing endpoint 2.
        let lead = uf.find(1);
        let mut c2_chords = Vec::new();
        let mut c1_chords = vec![chords[0]];
        for c in 1..n {
            if uf.find(c) == lead {
                c2_chords.push(chords[c]);
            } else {
                c1_chords.push(chords[c]);
            }
        }
        let c2_endpoints = sorted_endpoints(&c2_chords);
        let c1_endpoints = sorted_endpoints(&c1_chords);
        let c1 = subdiagram(&c1_chords, &c1_endpoints)?;
        let c2 = subdiagram(&c2_chords, &c2_endpoints)?;
        // The non-root endpoints of C1 must form a contiguous block of
        // circle positions, lying inside a single interval of C2.
        let block = &c1_endpoints[1..];
        if !block.is_empty() {
            let lo = block[0];
            let hi = *block.last().unwrap();
            if hi - lo + 1 != block.len() {
                return Err(Error::InvalidPairing(
                    "root share is not contiguous; diagram is not decomposable".into(),
                ));
            }
            let i = c2_endpoints.iter().filter(|&&p| p < lo).count();
            debug_assert_eq!(Self::insert(&c1, &c2, i)?, *self);
            Ok((c1, i, c2))
        } else {
            // C1 is the lone root chord; its second endpoint is part of the
            // block too, so this case cannot occur (the root chord always
            // has a non-root endpoint).
            unreachable!("root chord always contributes a non-root endpoint")
        }
    }

    /// Deletes the chord with counterclockwise label `label` (1-based) and
    /// renumbers the remaining endpoints.
    pub fn delete_chord(&self, label: usize) -> Result<Self> {
        let chords = self.chords();
        if label < 1 || label > chords.len() {
            return Err(Error::InvalidParameter(format!("no chord labeled {label}")));
        }
        let kept: Vec<(usize, usize)> = chords
            .iter()
            .enumerate()
            .filter(|(c, _)| c + 1 != label)
            .map(|(_, &p)| p)
            .collect();
        let endpoints = sorted_endpoints(&kept);
        subdiagram(&kept, &endpoints)
    }

    /// A bracket-string rendering: position `i` of the string holds the
    /// letter of the chord covering endpoint `i`, chords lettered `A, B, …`
    /// in counterclockwise order (the crossing 2-diagram reads `ABAB`).
    pub fn bracket_string(&self) -> String {
        let mut s = String::with_capacity(self.pairing.len());
        for e in 1..=self.pairing.len() {
            let c = self.chord_of(e) - 1;
            let letter = if c < 26 {
                (b'A' + c as u8) as char
            } else {
                // Fall back beyond 26 chords; sizes here stay tiny.
                (b'a' + ((c - 26) % 26) as u8) as char
            };
            s.push(letter);
        }
        s
    }
}

/// Recursive intersection-order procedure on 0-based chord labels:
/// isolate the smallest vertex (all its in-component edges go to larger
/// labels, hence are "outgoing" and get deleted), split the rest into
/// connected components, order them by smallest label, and recurse.
fn intersection_order_rec(verts: Vec<usize>, table: &[Vec<bool>]) -> Vec<usize> {
    if verts.len() <= 1 {
        return verts;
    }
    let v0 = verts[0];
    let rest = &verts[1..];
    let mut comps = components(rest, table);
    comps.sort_by_key(|c| c[0]);
    let mut out = vec![v0];
    for comp in comps {
        out.extend(intersection_order_rec(comp, table));
    }
    out
}

/// Connected components of the crossing graph restricted to `verts`;
/// each component is sorted ascending, in input order of discovery.
fn components(verts: &[usize], table: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; verts.len()];
    let mut comps = Vec::new();
    for s in 0..verts.len() {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        seen[s] = true;
        let mut comp = Vec::new();
        while let Some(idx) = stack.pop() {
            comp.push(verts[idx]);
            for (jdx, &w) in verts.iter().enumerate() {
                if !seen[jdx] && table[verts[idx]][w] {
                    seen[jdx] = true;
                    stack.push(jdx);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// All endpoints of the given chords, sorted ascending.
fn sorted_endpoints(chords: &[(usize, usize)]) -> Vec<usize> {
    let mut pts: Vec<usize> = chords.iter().flat_map(|&(a, b)| [a, b]).collect();
    pts.sort_unstable();
    pts
}

/// Re-indexes a set of chords onto `1..=2k` according to the sorted
/// positions of their endpoints.
fn subdiagram(chords: &[(usize, usize)], endpoints: &[usize]) -> Result<ChordDiagram> {
    let local = |e: usize| endpoints.binary_search(&e).unwrap() + 1;
    let mapped: Vec<(usize, usize)> =
        chords.iter().map(|&(a, b)| (local(a), local(b))).collect();
    ChordDiagram::from_chords(&mapped)
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {}", self.pairing, self.bracket_string())
    }
}

/// Serialized form `{"n": …, "pairing": […]}` with a 1-based partner array.
#[derive(Serialize, Deserialize)]
struct DiagramJson {
    n: usize,
    pairing: Vec<usize>,
}

impl Serialize for ChordDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson { n: self.n(), pairing: self.pairing.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChordDiagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = DiagramJson::deserialize(deserializer)?;
        if raw.pairing.len() != 2 * raw.n {
            return Err(D::Error::custom(format!(
                "pairing length {} does not match n = {}",
                raw.pairing.len(),
                raw.n
            )));
        }
        ChordDiagram::from_pairing(raw.pairing).map_err(D::Error::custom)
    }
}

/// The directed intersection graph of a diagram: vertices are chords in
/// counterclockwise label order, with an edge `i → j` (stored as `(i, j)`,
/// `i < j`) whenever chords `i` and `j` cross.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl IntersectionGraph {
    /// Number of vertices (chords).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Directed edges `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Whether vertex `v` has no outgoing edges (no crossing with a
    /// larger-labeled chord): the terminal-vertex condition.
    pub fn is_terminal(&self, v: usize) -> bool {
        self.edges.iter().all(|&(i, _)| i != v)
    }
}

/// All per-diagram statistics derived from the intersection order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramStats {
    /// `sigma[p-1]` is the counterclockwise label of the chord in
    /// intersection-order position `p`.
    pub sigma: Vec<usize>,
    /// Terminal chords (intersection-order labels), ascending; the last is
    /// always `n`.
    pub terminal: Vec<usize>,
    /// Smallest terminal chord.
    pub b: usize,
    /// Consecutive gaps between terminal chords (length `|terminal| − 1`).
    pub delta: Vec<usize>,
    /// `δ̄`: `n − |terminal|` zeros followed by `delta` (length `n − 1`).
    pub delta_bar: Vec<usize>,
    /// The monomial `f_X = f_0^{n−|terminal|} · Π f_{δ_i}`.
    pub monomial: FMonomial,
}

/// The example families of diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `Cyc_n`: chord `i` crosses exactly chords `i ± 1`.
    Cycloid(usize),
    /// `W_n`: every pair of chords crosses.
    Wheel(usize),
    /// `L_n`: chord 1 crosses every other chord; no other crossings.
    Ladder(usize),
    /// `CW_n(β_1, …, β_n)`: a wheel with `n` spokes, the far endpoint of
    /// spoke `k` landing in the first interval of a cycloid block of size
    /// `β_k`.
    CycloidWheel(Vec<usize>),
}

/// Builds a member of one of the example families.
pub fn make_family(family: &Family) -> Result<ChordDiagram> {
    match family {
        Family::Cycloid(n) => cycloid(*n),
        Family::Wheel(n) => wheel(*n),
        Family::Ladder(n) => ladder(*n),
        Family::CycloidWheel(betas) => cycloid_wheel(betas),
    }
}

fn require_positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(format!("{what} size must be positive")));
    }
    Ok(())
}

/// The cycloid `Cyc_n`.
pub fn cycloid(n: usize) -> Result<ChordDiagram> {
    require_positive(n, "cycloid")?;
    ChordDiagram::from_chords(&cycloid_chords(n))
}

fn cycloid_chords(n: usize) -> Vec<(usize, usize)> {
    if n == 1 {
        return vec![(1, 2)];
    }
    let mut chords = vec![(1, 3)];
    for k in 2..n {
        chords.push((2 * k - 2, 2 * k + 1));
    }
    chords.push((2 * n - 2, 2 * n));
    chords
}

/// The wheel `W_n`: chord `k` joins endpoints `k` and `k + n`.
pub fn wheel(n: usize) -> Result<ChordDiagram> {
    require_positive(n, "wheel")?;
    let chords: Vec<(usize, usize)> = (1..=n).map(|k| (k, k + n)).collect();
    ChordDiagram::from_chords(&chords)
}

/// The ladder `L_n`: chord 1 joins `1` and `n+1`; chord `k ≥ 2` joins `k`
/// and `2n + 2 − k` (nested under one another, all crossing chord 1).
pub fn ladder(n: usize) -> Result<ChordDiagram> {
    require_positive(n, "ladder")?;
    let mut chords = vec![(1, n + 1)];
    for k in 2..=n {
        chords.push((k, 2 * n + 2 - k));
    }
    ChordDiagram::from_chords(&chords)
}

/// The cycloid-wheel composite `CW_n(β_1, …, β_n)`: spoke sources occupy
/// positions `1..=n`; then for each `k` the cycloid block `B_k` is laid
/// out with the far endpoint of spoke `k` inserted into the block's first
/// interval (so the spoke crosses exactly the first chord of its block).
pub fn cycloid_wheel(betas: &[usize]) -> Result<ChordDiagram> {
    let n = betas.len();
    require_positive(n, "cycloid wheel")?;
    for &b in betas {
        require_positive(b, "cycloid block")?;
    }
    let mut chords = Vec::new();
    let mut spokes = Vec::new();
    let mut next = n + 1;
    for (k, &beta) in betas.iter().enumerate() {
        // Global positions of the block's 2β cycloid points: the spoke
        // target sits between the first and second of them.
        let base = next;
        let global = |local: usize| if local == 1 { base } else { base + local };
        spokes.push((k + 1, base + 1));
        for (a, b) in cycloid_chords(beta) {
            chords.push((global(a), global(b)));
        }
        next = base + 2 * beta + 1;
    }
    chords.extend(spokes);
    ChordDiagram::from_chords(&chords)
}

/// A small union-find over `0..n`, used for crossing-graph connectivity.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
