//! Independent verification of the structural and series-level identities.
//!
//! Everything here re-derives a quantity along two genuinely different
//! routes and compares:
//!
//! * [`check_decomposition_statistics`] — how the intersection-order
//!   statistics (`b`, the gap sequence `δ`, the monomial `f_C`) of a
//!   diagram are assembled from its root-share decomposition;
//! * [`check_bijection`] and [`check_tree_image`] — the tree bijection
//!   round-trip, the `b(C)` = fully-right-leaf identity, and the P1 ∧ P2
//!   characterization of the image;
//! * [`check_gamma_recurrences`] — the ladder `g_k = g_1 · θ(g_{k−1})`
//!   (with `θ = 2x d/dx − 1`), its `γ` form, and the coefficient-level
//!   convolution it unfolds into;
//! * [`check_count_reduction`] — setting every `f_j = 1` in `g_1` must
//!   reproduce `c_n = |RCCD(n)|` from both counting recurrences;
//! * the `F_{i,j}` tables ([`f_table_operator`], [`f_table_recurrence`],
//!   [`f_table_from_enumeration`]) — an operator-expansion oracle, a
//!   double recurrence, and the direct diagram sums must agree entry by
//!   entry;
//! * [`check_main_theorem`] — the closed form of the Dyson–Schwinger
//!   solution: `g_1 = x · Σ_{t≥0} (G_ρ^t Σ_m f_m ρ^m)|_{ρ=0}` with
//!   `(G_ρ P)_m = Σ_{ℓ≥1} C(m+ℓ, ℓ) g_ℓ P_{m+ℓ}`;
//! * [`check_subtree_bound`], [`check_root_monomial`],
//!   [`check_subtree_counts`] — how `b` and `f_C` interact with the two
//!   subtrees hanging off the tree's root, including the binomial count of
//!   diagrams sharing a given pair of root subtrees.

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, BigRational, BigUint, One, Zero};
use serde::Serialize;

use crate::diagram::ChordDiagram;
use crate::enumerate::{nijenhuis_wilf_counts, stein_counts, Enumeration};
use crate::symbolic::{g_series, gamma_series, FMonomial, FPolynomial, XSeries};
use crate::tree::{
    check_p1, check_p2, enumerate_labeled_trees, from_tree, to_tree, LabeledTree,
};
use crate::{Error, Result};

/// Outcome of one verification pass: the number of cases examined and a
/// description of every failure.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    /// Which check this is.
    pub name: String,
    /// Number of individual cases examined.
    pub cases: usize,
    /// One message per failing case.
    pub failures: Vec<String>,
}

impl CheckReport {
    pub(crate) fn new(name: &str) -> Self {
        Self { name: name.into(), cases: 0, failures: Vec::new() }
    }

    /// Whether every case passed.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One-line human-readable summary.
    pub fn summary(&self) -> String {
        if self.passed() {
            format!("{}: {} cases, all passed", self.name, self.cases)
        } else {
            format!("{}: {} cases, {} FAILED", self.name, self.cases, self.failures.len())
        }
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut v = BigUint::one();
    for i in 0..k {
        v = v * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    v
}

fn binomial_rational(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(binomial(n, k)))
}

/// Checks, for every decomposable diagram `C = C1 (0,i) C2`, how the
/// statistics of `C` are assembled from those of the parts:
///
/// * `b(C) = b(C2) + 1`;
/// * `δ(C) = δ(C2) ++ (b(C1) − 1) ++ δ(C1)` when `b(C1) ≥ 2`, and
///   `δ(C) = δ(C2)` when `C1` is the single chord;
/// * `f_C = f_{C1} · f_{b(C1)−1} · f_{C2}` in every case.
pub fn check_decomposition_statistics(enumeration: &Enumeration) -> Result<CheckReport> {
    let mut report = CheckReport::new("decomposition statistics");
    for n in 2..=enumeration.max_n() {
        for (d, s) in enumeration.level(n).iter().zip(enumeration.stats_level(n)) {
            report.cases += 1;
            let (c1, _i, c2) = d.root_share_decompose()?;
            let s1 = c1.stats()?;
            let s2 = c2.stats()?;
            if s.b != s2.b + 1 {
                report.failures.push(format!(
                    "{d}: b = {} but b(C2) + 1 = {}",
                    s.b,
                    s2.b + 1
                ));
            }
            let expected_delta = if s1.b >= 2 {
                let mut v = s2.delta.clone();
                v.push(s1.b - 1);
                v.extend_from_slice(&s1.delta);
                v
            } else {
                s2.delta.clone()
            };
            if s.delta != expected_delta {
                report.failures.push(format!(
                    "{d}: delta = {:?}, expected {:?}",
                    s.delta, expected_delta
                ));
            }
            let expected_mono =
                s1.monomial.mul(&FMonomial::f(s1.b - 1)).mul(&s2.monomial);
            if s.monomial != expected_mono {
                report.failures.push(format!(
                    "{d}: monomial = {}, expected {}",
                    s.monomial, expected_mono
                ));
            }
        }
    }
    Ok(report)
}

/// Round-trips every enumerated diagram through the tree bijection and
/// checks `b(C)` against the fully-right leaf of its tree.
pub fn check_bijection(enumeration: &Enumeration) -> Result<CheckReport> {
    let mut report = CheckReport::new("tree bijection round-trip");
    for n in 1..=enumeration.max_n() {
        for (d, s) in enumeration.level(n).iter().zip(enumeration.stats_level(n)) {
            report.cases += 1;
            let t = to_tree(d)?;
            match from_tree(&t) {
                Ok(back) if back == *d => {}
                Ok(back) => report
                    .failures
                    .push(format!("{d}: round-trip produced a different diagram {back}")),
                Err(e) => report.failures.push(format!("{d}: inverse failed: {e}")),
            }
            if t.fully_right_leaf() != s.b {
                report.failures.push(format!(
                    "{d}: fully-right leaf {} differs from b = {}",
                    t.fully_right_leaf(),
                    s.b
                ));
            }
        }
    }
    Ok(report)
}

/// Checks that the trees on `n` leaves satisfying P1 ∧ P2 are exactly the
/// image of `RCCD(n)` under the bijection.
pub fn check_tree_image(n: usize, enumeration: &Enumeration) -> Result<CheckReport> {
    let mut report = CheckReport::new("P1/P2 image characterization");
    let image: std::collections::BTreeSet<LabeledTree> = enumeration
        .level(n)
        .iter()
        .map(to_tree)
        .collect::<Result<_>>()?;
    for t in enumerate_labeled_trees(n) {
        report.cases += 1;
        let accepted = check_p1(&t).is_ok() && check_p2(&t).is_ok();
        if accepted != image.contains(&t) {
            report.failures.push(format!(
                "{t}: P1∧P2 = {accepted} but image membership = {}",
                image.contains(&t)
            ));
        }
    }
    Ok(report)
}

/// Verifies the series ladder up to `x^order` for `k = 2..=kmax`:
/// `g_k = g_1 · θ(g_{k−1})`, `γ_k = (1/k) γ_1 · θ(γ_{k−1})`, and the
/// unfolded coefficient convolution
/// `[x^i] g_k = Σ_ℓ (2ℓ−1) · [x^{i−ℓ}] g_1 · [x^ℓ] g_{k−1}`.
pub fn check_gamma_recurrences(
    enumeration: &Enumeration,
    kmax: usize,
    order: usize,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("g/gamma recurrences");
    let g: Vec<XSeries> =
        (1..=kmax).map(|k| g_series(k, order, enumeration)).collect::<Result<_>>()?;
    let gamma: Vec<XSeries> =
        (1..=kmax).map(|k| gamma_series(k, order, enumeration)).collect::<Result<_>>()?;
    for k in 2..=kmax {
        report.cases += 1;
        let rhs = g[0].mul(&g[k - 2].theta());
        if g[k - 1] != rhs {
            report.failures.push(format!("g_{k} != g_1 * theta(g_{})", k - 1));
        }
        report.cases += 1;
        let scale = BigRational::new(BigInt::one(), BigInt::from(k));
        let rhs = gamma[0].mul(&gamma[k - 2].theta()).scale(&scale);
        if gamma[k - 1] != rhs {
            report.failures.push(format!("gamma_{k} != (1/{k}) gamma_1 * theta(gamma_{})", k - 1));
        }
        for i in 0..=order {
            report.cases += 1;
            let mut acc = FPolynomial::zero();
            for ell in 1..=i.saturating_sub(1) {
                let factor = BigRational::from_integer(BigInt::from(2 * ell as i64 - 1));
                let prod = g[0].coeff(i - ell).mul(g[k - 2].coeff(ell)).scale(&factor);
                acc = acc.add(&prod);
            }
            if *g[k - 1].coeff(i) != acc {
                report.failures.push(format!("[x^{i}] g_{k} convolution mismatch"));
            }
        }
    }
    Ok(report)
}

/// Checks that `g_1` with every symbol set to 1 reproduces the diagram
/// counts, and that both counting recurrences agree with each other and
/// with the enumeration.
pub fn check_count_reduction(enumeration: &Enumeration) -> Result<CheckReport> {
    let mut report = CheckReport::new("f = 1 count reduction");
    let order = enumeration.max_n();
    let g1 = g_series(1, order, enumeration)?;
    let ones: BTreeMap<usize, BigRational> =
        (0..=2 * order).map(|j| (j, BigRational::one())).collect();
    let stein = stein_counts(order.max(12));
    let nw = nijenhuis_wilf_counts(order.max(12));
    for n in 1..=stein.len() {
        report.cases += 1;
        if stein[n - 1] != nw[n - 1] {
            report.failures.push(format!(
                "counting recurrences disagree at n = {n}: {} vs {}",
                stein[n - 1],
                nw[n - 1]
            ));
        }
    }
    for n in 1..=order {
        report.cases += 1;
        let from_series = g1.coeff(n).eval(&ones)?;
        let expected = BigRational::from_integer(BigInt::from(stein[n - 1].clone()));
        if from_series != expected {
            report.failures.push(format!(
                "[x^{n}] g_1 at f = 1 is {from_series}, counts say {expected}"
            ));
        }
        report.cases += 1;
        if BigUint::from(enumeration.count(n)) != stein[n - 1] {
            report.failures.push(format!(
                "enumeration count {} differs from recurrence {} at n = {n}",
                enumeration.count(n),
                stein[n - 1]
            ));
        }
    }
    Ok(report)
}

/// The table `F_{i,j}` for `0 ≤ i ≤ imax`, `0 ≤ j ≤ jmax`, where
/// `F_{i,j} = Σ f_C` over diagrams with `|C| = i + 1` and `b(C) = j + 1`.
#[derive(Clone, Debug, Serialize)]
pub struct FTable {
    /// Largest row index.
    pub imax: usize,
    /// Largest column index.
    pub jmax: usize,
    /// `values[i][j] = F_{i,j}`.
    pub values: Vec<Vec<FPolynomial>>,
}

impl FTable {
    fn blank(imax: usize, jmax: usize) -> Self {
        Self { imax, jmax, values: vec![vec![FPolynomial::zero(); jmax + 1]; imax + 1] }
    }
}

/// One application of the operator `G_ρ` to a polynomial in `ρ` with
/// series coefficients: `(G_ρ P)_m = Σ_{ℓ≥1} C(m+ℓ, ℓ) · g_ℓ · P_{m+ℓ}`.
/// The result has one fewer `ρ`-coefficient than the input.
fn apply_g_rho(p: &[XSeries], g: &[XSeries], order: usize) -> Vec<XSeries> {
    if p.is_empty() {
        return Vec::new();
    }
    let mmax = p.len() - 1;
    let mut out = Vec::with_capacity(mmax);
    for m in 0..mmax {
        let mut acc = XSeries::zero(order);
        for ell in 1..=(mmax - m).min(g.len()) {
            let term = g[ell - 1].mul(&p[m + ell]).scale(&binomial_rational(m + ell, ell));
            acc = acc.add(&term);
        }
        out.push(acc);
    }
    out
}

/// The list `g_1, …, g_order` truncated at `x^order`.
fn g_list(order: usize, enumeration: &Enumeration) -> Result<Vec<XSeries>> {
    (1..=order).map(|k| g_series(k, order, enumeration)).collect()
}

/// `F_{i,j}` by the operator expansion: start from `ρ^j`, repeatedly apply
/// `G_ρ`, and sum the `ρ^0` components.  Terminates because every `g_ℓ`
/// vanishes at `x^0`.
pub fn f_table_operator(
    imax: usize,
    jmax: usize,
    enumeration: &Enumeration,
) -> Result<FTable> {
    let g = g_list(imax.max(1), enumeration)?;
    let mut table = FTable::blank(imax, jmax);
    for j in 0..=jmax {
        let mut p: Vec<XSeries> = vec![XSeries::zero(imax); j + 1];
        p[j] = XSeries::constant(FPolynomial::one(), imax);
        let mut acc = XSeries::zero(imax);
        loop {
            if let Some(first) = p.first() {
                acc = acc.add(first);
            } else {
                break;
            }
            if p.iter().all(XSeries::is_zero) {
                break;
            }
            p = apply_g_rho(&p, &g, imax);
        }
        for i in 0..=imax {
            table.values[i][j] = acc.coeff(i).clone();
        }
    }
    Ok(table)
}

/// `F_{i,j}` by the double recurrence
/// `F_{i,j} = Σ_{ℓ=1}^{j} Σ_{k=1}^{i} C(j, ℓ) · ([x^k] g_ℓ) · F_{i−k, j−ℓ}`
/// with `F_{i,0} = δ_{i,0}`.
pub fn f_table_recurrence(
    imax: usize,
    jmax: usize,
    enumeration: &Enumeration,
) -> Result<FTable> {
    let g = g_list(imax.max(1), enumeration)?;
    let mut table = FTable::blank(imax, jmax);
    table.values[0][0] = FPolynomial::one();
    for j in 1..=jmax {
        for i in 0..=imax {
            let mut acc = FPolynomial::zero();
            for ell in 1..=j.min(g.len()) {
                let b = binomial_rational(j, ell);
                for k in 1..=i {
                    let term = g[ell - 1]
                        .coeff(k)
                        .mul(&table.values[i - k][j - ell])
                        .scale(&b);
                    acc = acc.add(&term);
                }
            }
            table.values[i][j] = acc;
        }
    }
    Ok(table)
}

/// `F_{i,j}` directly from the enumeration: the sum of `f_C` over diagrams
/// with `i + 1` chords and `b(C) = j + 1`.
pub fn f_table_from_enumeration(
    imax: usize,
    jmax: usize,
    enumeration: &Enumeration,
) -> Result<FTable> {
    if imax + 1 > enumeration.max_n() {
        return Err(Error::SizeLimit { n: imax + 1, limit: enumeration.max_n() });
    }
    let mut table = FTable::blank(imax, jmax);
    table.values[0][0] = FPolynomial::one();
    for i in 1..=imax {
        for s in enumeration.stats_level(i + 1) {
            if s.b >= 1 && s.b - 1 <= jmax {
                table.values[i][s.b - 1].add_term(s.monomial.clone(), BigRational::one());
            }
        }
    }
    Ok(table)
}

/// Compares the three `F_{i,j}` constructions entry by entry.
pub fn check_f_tables(
    imax: usize,
    jmax: usize,
    enumeration: &Enumeration,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("F-table cross-check");
    let op = f_table_operator(imax, jmax, enumeration)?;
    let rec = f_table_recurrence(imax, jmax, enumeration)?;
    let dir = f_table_from_enumeration(imax, jmax, enumeration)?;
    for i in 0..=imax {
        for j in 0..=jmax {
            report.cases += 1;
            if op.values[i][j] != dir.values[i][j] {
                report.failures.push(format!(
                    "F_{{{i},{j}}}: operator gives {}, enumeration gives {}",
                    op.values[i][j], dir.values[i][j]
                ));
            }
            report.cases += 1;
            if rec.values[i][j] != dir.values[i][j] {
                report.failures.push(format!(
                    "F_{{{i},{j}}}: recurrence gives {}, enumeration gives {}",
                    rec.values[i][j], dir.values[i][j]
                ));
            }
        }
    }
    Ok(report)
}

/// Result of the main-theorem check: both sides of
/// `g_1 = x · Σ_{t≥0} (G_ρ^t Σ_m f_m ρ^m)|_{ρ=0}` and their difference.
#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremCheck {
    /// `g_1` read off the enumeration.
    pub lhs: XSeries,
    /// The operator expansion.
    pub rhs: XSeries,
    /// `lhs − rhs`; the theorem holds when this vanishes.
    pub residual: XSeries,
}

impl MainTheoremCheck {
    /// Whether the two sides agree to the working order.
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Verifies the closed-form solution up to `x^order`: seed the operator
/// expansion with `P_m = f_m` for `m = 0..=order` (higher powers of `ρ`
/// cannot reach `ρ^0` within the truncation) and compare `x · Σ_t (…)`
/// against `g_1` from the enumeration.
pub fn check_main_theorem(order: usize, enumeration: &Enumeration) -> Result<MainTheoremCheck> {
    let g = g_list(order, enumeration)?;
    let mut p: Vec<XSeries> = (0..=order)
        .map(|m| XSeries::constant(FPolynomial::f(m), order))
        .collect();
    let mut acc = XSeries::zero(order);
    loop {
        if let Some(first) = p.first() {
            acc = acc.add(first);
        } else {
            break;
        }
        if p.iter().all(XSeries::is_zero) {
            break;
        }
        p = apply_g_rho(&p, &g, order);
    }
    let rhs = acc.mul_by_x();
    let lhs = g_series(1, order, enumeration)?;
    let residual = lhs.sub(&rhs);
    Ok(MainTheoremCheck { lhs, rhs, residual })
}

/// The series `P(x) = Σ_C x^{|C|} · f_C · (f_{b(C)−2} − f_{b(C)−1})`,
/// with `f_{−1} := 0`.
pub fn p_series(order: usize, enumeration: &Enumeration) -> Result<XSeries> {
    if order > enumeration.max_n() {
        return Err(Error::SizeLimit { n: order, limit: enumeration.max_n() });
    }
    let mut s = XSeries::zero(order);
    for n in 1..=order {
        let mut coeff = FPolynomial::zero();
        for st in enumeration.stats_level(n) {
            if st.b >= 2 {
                coeff.add_term(st.monomial.mul(&FMonomial::f(st.b - 2)), BigRational::one());
            }
            coeff.add_term(st.monomial.mul(&FMonomial::f(st.b - 1)), -BigRational::one());
        }
        s.set_coeff(n, coeff);
    }
    Ok(s)
}

/// Normalized diagrams of the two subtrees at the root of `to_tree(C)`:
/// compresses each subtree's labels order-preservingly onto `1..=ℓ` and
/// maps it back through the bijection.
fn root_subtree_diagrams(c: &ChordDiagram) -> Result<(ChordDiagram, ChordDiagram)> {
    let t = to_tree(c)?;
    let (l, r) = match &t {
        LabeledTree::Node(l, r) => (l.as_ref().clone(), r.as_ref().clone()),
        LabeledTree::Leaf(_) => {
            return Err(Error::InvalidParameter("diagram has a single chord".into()))
        }
    };
    Ok((from_tree(&normalize(&l))?, from_tree(&normalize(&r))?))
}

/// Order-preserving compression of a tree's labels onto `1..=ℓ`.
fn normalize(t: &LabeledTree) -> LabeledTree {
    let mut labels = t.leaf_labels();
    labels.sort_unstable();
    t.relabel(&|l| labels.binary_search(&l).unwrap() + 1)
}

/// Checks `b(D1) ≥ b(C) − b(D2)` where `D1`, `D2` are the diagrams of the
/// normalized left and right root subtrees of `to_tree(C)`.
pub fn check_subtree_bound(enumeration: &Enumeration) -> Result<CheckReport> {
    let mut report = CheckReport::new("root-subtree b bound");
    for n in 2..=enumeration.max_n() {
        for (d, s) in enumeration.level(n).iter().zip(enumeration.stats_level(n)) {
            report.cases += 1;
            let (d1, d2) = root_subtree_diagrams(d)?;
            let (b1, b2) = (d1.stats()?.b, d2.stats()?.b);
            if b1 + b2 < s.b {
                report.failures.push(format!(
                    "{d}: b(D1) + b(D2) = {} < b(C) = {}",
                    b1 + b2,
                    s.b
                ));
            }
        }
    }
    Ok(report)
}

/// Checks `f_C = f_{D1} · f_{b(D1)+b(D2)−b(C)} · f_{D2}` over the same
/// root-subtree decomposition.
pub fn check_root_monomial(enumeration: &Enumeration) -> Result<CheckReport> {
    let mut report = CheckReport::new("root-subtree monomial");
    for n in 2..=enumeration.max_n() {
        for (d, s) in enumeration.level(n).iter().zip(enumeration.stats_level(n)) {
            report.cases += 1;
            let (d1, d2) = root_subtree_diagrams(d)?;
            let (s1, s2) = (d1.stats()?, d2.stats()?);
            if s1.b + s2.b < s.b {
                report.failures.push(format!("{d}: exponent b(D1)+b(D2)−b(C) negative"));
                continue;
            }
            let expected =
                s1.monomial.mul(&FMonomial::f(s1.b + s2.b - s.b)).mul(&s2.monomial);
            if s.monomial != expected {
                report.failures.push(format!(
                    "{d}: monomial {} differs from {}",
                    s.monomial, expected
                ));
            }
        }
    }
    Ok(report)
}

/// Checks the binomial count of diagrams sharing a pair of root subtrees:
/// bucketing `RCCD(n)` by `(T(D1), T(D2), b(C))` must give, for every
/// `D1 ∈ RCCD(k)`, `D2 ∈ RCCD(n−k)`, and `1 ≤ ℓ ≤ b(D1)` with
/// `j = ℓ + b(D2) − 1`, exactly `C(j, ℓ)` diagrams in the bucket
/// `(T(D1), T(D2), j + 1)` — and no other buckets.
pub fn check_subtree_counts(n: usize, enumeration: &Enumeration) -> Result<CheckReport> {
    let mut report = CheckReport::new("root-subtree bucket counts");
    type Key = (LabeledTree, LabeledTree, usize);
    let mut observed: HashMap<Key, BigUint> = HashMap::new();
    for (d, s) in enumeration.level(n).iter().zip(enumeration.stats_level(n)) {
        let t = to_tree(d)?;
        if let LabeledTree::Node(l, r) = &t {
            let key = (normalize(l), normalize(r), s.b);
            *observed.entry(key).or_insert_with(BigUint::zero) += BigUint::one();
        }
    }
    let mut expected: HashMap<Key, BigUint> = HashMap::new();
    for k in 1..n {
        for d1 in enumeration.level(k) {
            let b1 = d1.stats()?.b;
            let t1 = to_tree(d1)?;
            for d2 in enumeration.level(n - k) {
                let b2 = d2.stats()?.b;
                let t2 = to_tree(d2)?;
                for ell in 1..=b1 {
                    let j = ell + b2 - 1;
                    expected.insert((t1.clone(), t2.clone(), j + 1), binomial(j, ell));
                }
            }
        }
    }
    report.cases = expected.len().max(observed.len());
    for (key, count) in &expected {
        match observed.get(key) {
            Some(obs) if obs == count => {}
            Some(obs) => report.failures.push(format!(
                "bucket ({}, {}, {}): observed {obs}, expected {count}",
                key.0, key.1, key.2
            )),
            None => report.failures.push(format!(
                "bucket ({}, {}, {}): missing, expected {count}",
                key.0, key.1, key.2
            )),
        }
    }
    for key in observed.keys() {
        if !expected.contains_key(key) {
            report.failures.push(format!(
                "bucket ({}, {}, {}): observed but not predicted",
                key.0, key.1, key.2
            ));
        }
    }
    Ok(report)
}
