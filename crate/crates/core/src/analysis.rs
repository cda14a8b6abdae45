//! Growth analysis of the expansion coefficients and the four-term
//! relation search.
//!
//! * [`gevrey_check`] substitutes a geometric weight sequence
//!   `f_j := C^{j+1}` into `γ_k` and checks that `|[x^n] γ_k| / n!` stays
//!   below `(4C²)^n`, i.e. the coefficients grow at most like `n!` times a
//!   geometric factor (Gevrey-1 growth).  It also reports the fitted
//!   per-`n` geometric rate.
//! * [`check_coefficient_count_bound`] bounds the raw diagram counts
//!   feeding `γ_k`: the number of diagrams of size `n` with `b ≥ k` is at
//!   most `2^n · n!`.
//! * The four-term machinery enumerates quadruples of diagrams differing
//!   only in where one chord-end lands around a pivot chord, computes the
//!   alternating sum of the weights `M_α(X) = f_X · f_{b(X)−α}`, and
//!   searches for quadruples where the sum fails to vanish — which rules
//!   out weight systems of this shape satisfying the four-term relation.

use std::collections::HashSet;

use num::{BigInt, BigRational, BigUint, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::diagram::ChordDiagram;
use crate::enumerate::Enumeration;
use crate::symbolic::{FMonomial, FPolynomial};
use crate::verify::CheckReport;
use crate::{Error, Result};

/// Result of the Gevrey-growth check for one weight base `C` and one `k`.
#[derive(Clone, Debug, Serialize)]
pub struct GevreyReport {
    /// The geometric base of the substituted weights `f_j = C^{j+1}`.
    pub base: u32,
    /// Which `γ_k` was analyzed.
    pub k: usize,
    /// Largest `n` analyzed.
    pub order: usize,
    /// `|[x^n] γ_k| / n!` for `n = 1..=order`, as floats for display.
    pub ratios: Vec<f64>,
    /// The geometric bound base `4C²`.
    pub bound_base: u32,
    /// Values of `n` where the ratio exceeds `(4C²)^n`.
    pub bound_violations: Vec<usize>,
    /// `max_n ratio_n^{1/n}`: the empirical geometric rate.
    pub fitted_rate: f64,
}

impl GevreyReport {
    /// Whether the ratios stayed under the geometric bound everywhere.
    pub fn passed(&self) -> bool {
        self.bound_violations.is_empty()
    }
}

/// Substitutes `f_j := base^{j+1}` into `γ_k` up to `x^order` (the
/// enumeration's full range) and compares `|[x^n] γ_k| / n!` against
/// `(4·base²)^n`.  The accumulation is exact; only the report is floating
/// point.
pub fn gevrey_check(base: u32, k: usize, enumeration: &Enumeration) -> Result<GevreyReport> {
    if base == 0 || k == 0 {
        return Err(Error::InvalidParameter("gevrey check requires base, k >= 1".into()));
    }
    let order = enumeration.max_n();
    let big_base = BigUint::from(base);
    let mut k_factorial = BigUint::one();
    for i in 2..=k {
        k_factorial *= BigUint::from(i);
    }
    let mut ratios = Vec::with_capacity(order);
    let mut bound_violations = Vec::new();
    let mut fitted_rate: f64 = 0.0;
    let mut n_factorial = BigUint::one();
    let bound_base = 4 * base * base;
    for n in 1..=order {
        n_factorial *= BigUint::from(n);
        // Σ over diagrams with b >= k of base^{E} where E is the total
        // weight exponent of f_C · f_{b−k} under f_j = base^{j+1}.
        let mut total = BigUint::zero();
        for s in enumeration.stats_level(n) {
            if s.b < k {
                continue;
            }
            let mut e: u32 = (s.b - k + 1) as u32;
            for (j, exp) in s.monomial.iter() {
                e += exp * (j as u32 + 1);
            }
            total += big_base.pow(e);
        }
        let ratio = BigRational::new(
            BigInt::from(total),
            BigInt::from(&k_factorial * &n_factorial),
        );
        let bound = BigRational::from_integer(BigInt::from(BigUint::from(bound_base).pow(n as u32)));
        if ratio > bound {
            bound_violations.push(n);
        }
        let approx = ratio.to_f64().unwrap_or(f64::INFINITY);
        ratios.push(approx);
        fitted_rate = fitted_rate.max(approx.powf(1.0 / n as f64));
    }
    Ok(GevreyReport {
        base,
        k,
        order,
        ratios,
        bound_base,
        bound_violations,
        fitted_rate,
    })
}

/// Checks that the number of diagrams of size `n` with `b(C) ≥ k` is at
/// most `2^n · n!`, for every `n` up to the enumeration's range and every
/// `k ≤ n`.
pub fn check_coefficient_count_bound(enumeration: &Enumeration) -> Result<CheckReport> {
    let mut report = CheckReport::new("coefficient count bound");
    let mut n_factorial = BigUint::one();
    for n in 1..=enumeration.max_n() {
        n_factorial *= BigUint::from(n);
        let bound = BigUint::from(2u32).pow(n as u32) * &n_factorial;
        for k in 1..=n {
            report.cases += 1;
            let count = enumeration
                .stats_level(n)
                .iter()
                .filter(|s| s.b >= k)
                .count();
            if BigUint::from(count) > bound {
                report
                    .failures
                    .push(format!("n = {n}, k = {k}: count {count} exceeds 2^n n! = {bound}"));
            }
        }
    }
    Ok(report)
}

/// A four-term quadruple: four connected diagrams obtained from one common
/// context (a partial matching with one unmatched endpoint) by placing the
/// partner of the unmatched endpoint into the four slots adjacent to the
/// endpoints of a pivot chord.  The alternating sum is
/// `M(A) − M(B) + M(C) − M(D)` in member order.
#[derive(Clone, Debug, Serialize)]
pub struct FourTermQuad {
    /// The four diagrams, in sign order `+, −, +, −`.
    pub members: [ChordDiagram; 4],
    /// Counterclockwise label, in each member, of the chord created by
    /// closing up the unmatched endpoint.
    pub marked: [usize; 4],
}

/// The weight `M_α(X) = f_X · f_{b(X)−α}`, with `f_j := 0` for `j < 0`.
pub fn alpha_weight(d: &ChordDiagram, alpha: usize) -> Result<FPolynomial> {
    let s = d.stats()?;
    if s.b < alpha {
        return Ok(FPolynomial::zero());
    }
    Ok(FPolynomial::from_monomial(s.monomial.mul(&FMonomial::f(s.b - alpha))))
}

/// The alternating sum `M_α(A) − M_α(B) + M_α(C) − M_α(D)` of a quadruple.
pub fn four_term_sum(quad: &FourTermQuad, alpha: usize) -> Result<FPolynomial> {
    let mut acc = FPolynomial::zero();
    for (idx, d) in quad.members.iter().enumerate() {
        let w = alpha_weight(d, alpha)?;
        acc = if idx % 2 == 0 { acc.add(&w) } else { acc.sub(&w) };
    }
    Ok(acc)
}

/// All four-term quadruples of connected diagrams on `n` chords.
///
/// A context is a choice of `2n − 1` circle points, one unmatched point
/// `f`, and a perfect matching of the rest; for each chord `(p1, p2)` of
/// the matching taken as pivot, the new partner of `f` is placed in the
/// intervals after `p1`, before `p1`, after `p2`, before `p2` (in that
/// sign order).  Quadruples with a disconnected member are discarded, and
/// identical quadruples arising from different contexts are deduplicated.
pub fn four_term_quads(n: usize) -> Result<Vec<FourTermQuad>> {
    if n < 2 {
        return Err(Error::InvalidParameter("four-term quadruples require n >= 2".into()));
    }
    let points = 2 * n - 1;
    let mut quads = Vec::new();
    let mut seen: HashSet<[ChordDiagram; 4]> = HashSet::new();
    for fixed in 1..=points {
        let free: Vec<usize> = (1..=points).filter(|&p| p != fixed).collect();
        for matching in matchings_of(&free) {
            for &(p1, p2) in &matching {
                let slots = [p1, p1 - 1, p2, p2 - 1];
                let mut members = Vec::with_capacity(4);
                let mut marked = Vec::with_capacity(4);
                let mut ok = true;
                for &g in &slots {
                    let (d, label) = close_context(&matching, fixed, g, points)?;
                    if !d.is_connected() {
                        ok = false;
                        break;
                    }
                    members.push(d);
                    marked.push(label);
                }
                if !ok {
                    continue;
                }
                let members: [ChordDiagram; 4] = members.try_into().unwrap();
                if seen.insert(members.clone()) {
                    let marked: [usize; 4] = marked.try_into().unwrap();
                    quads.push(FourTermQuad { members, marked });
                }
            }
        }
    }
    Ok(quads)
}

/// Perfect matchings of the given point set, each chord as `(lo, hi)`.
fn matchings_of(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let first = points[0];
    let mut out = Vec::new();
    for idx in 1..points.len() {
        let partner = points[idx];
        let rest: Vec<usize> =
            points[1..].iter().copied().filter(|&p| p != partner).collect();
        for mut m in matchings_of(&rest) {
            m.insert(0, (first, partner));
            out.push(m);
        }
    }
    out
}

/// Closes up a context: inserts the new point into interval `g` (after
/// circle point `g`; interval 0 wraps to the end, just before the root),
/// joins it to the unmatched point `fixed`, and returns the resulting
/// diagram together with the counterclockwise label of the new chord.
fn close_context(
    matching: &[(usize, usize)],
    fixed: usize,
    g: usize,
    points: usize,
) -> Result<(ChordDiagram, usize)> {
    let new_pos = if g == 0 { points + 1 } else { g + 1 };
    let shift = |p: usize| if g != 0 && p > g { p + 1 } else { p };
    let mut chords: Vec<(usize, usize)> =
        matching.iter().map(|&(a, b)| (shift(a), shift(b))).collect();
    let f = shift(fixed);
    chords.push((f.min(new_pos), f.max(new_pos)));
    let d = ChordDiagram::from_chords(&chords)?;
    let label = d.chord_of(new_pos);
    Ok((d, label))
}

/// All quadruples on `n` chords whose alternating `M_α` sum fails to
/// vanish, with the offending sum.
pub fn four_term_violations(
    n: usize,
    alpha: usize,
) -> Result<Vec<(FourTermQuad, FPolynomial)>> {
    let mut out = Vec::new();
    for quad in four_term_quads(n)? {
        let sum = four_term_sum(&quad, alpha)?;
        if !sum.is_zero() {
            out.push((quad, sum));
        }
    }
    Ok(out)
}

/// Checks the shared-context invariant: deleting the closing chord from
/// each member of a quadruple yields the same (possibly disconnected)
/// diagram four times.
pub fn check_common_deletion(quads: &[FourTermQuad]) -> Result<CheckReport> {
    let mut report = CheckReport::new("four-term common deletion");
    for quad in quads {
        report.cases += 1;
        let deleted: Vec<ChordDiagram> = quad
            .members
            .iter()
            .zip(quad.marked.iter())
            .map(|(d, &label)| d.delete_chord(label))
            .collect::<Result<_>>()?;
        if deleted.windows(2).any(|w| w[0] != w[1]) {
            report
                .failures
                .push(format!("members of a quadruple disagree after deletion: {:?}", deleted));
        }
    }
    Ok(report)
}

/// Convenience: the first member of the quadruple list whose sum is
/// nonzero for the given `α`, if any, with the sum — used by the CLI to
/// display a concrete counterexample.
pub fn first_violation(n: usize, alpha: usize) -> Result<Option<(FourTermQuad, FPolynomial)>> {
    Ok(four_term_violations(n, alpha)?.into_iter().next())
}
