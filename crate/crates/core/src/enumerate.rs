//! Enumeration of rooted connected chord diagrams.
//!
//! Two independent generators are provided:
//!
//! * [`enumerate_constructive`] builds `RCCD(n)` bottom-up through the
//!   root-share insertion `C1 (0,i) C2`; because every diagram with at
//!   least two chords decomposes uniquely this produces each diagram
//!   exactly once, in time linear in the output.
//! * [`enumerate_bruteforce`] generates all perfect matchings of the `2n`
//!   circle points and keeps the connected ones — a slower oracle used to
//!   cross-check the constructive generator.
//!
//! Counting is available without enumeration through the two classical
//! recurrences for `c_n = |RCCD(n)|` ([`stein_counts`] and
//! [`nijenhuis_wilf_counts`]).

use std::collections::HashMap;

use num::BigUint;

use crate::diagram::{ChordDiagram, DiagramStats};
use crate::{Error, Result};

/// Default hard limit for the brute-force generator (`(2n−1)!!` matchings).
pub const DEFAULT_BRUTE_LIMIT: usize = 7;

/// Default hard limit for the constructive generator.
pub const DEFAULT_CONSTRUCTIVE_LIMIT: usize = 9;

/// Environment variable overriding [`DEFAULT_BRUTE_LIMIT`].
pub const BRUTE_LIMIT_ENV: &str = "CHORD_BRUTE_LIMIT";

/// Environment variable overriding [`DEFAULT_CONSTRUCTIVE_LIMIT`].
pub const CONSTRUCTIVE_LIMIT_ENV: &str = "CHORD_CONSTRUCTIVE_LIMIT";

fn env_limit(var: &str, default: usize) -> usize {
    std::env::var(var).ok().and_then(|v| v.parse().ok()).unwrap_or(default)
}

/// The configured brute-force size limit.
pub fn brute_limit() -> usize {
    env_limit(BRUTE_LIMIT_ENV, DEFAULT_BRUTE_LIMIT)
}

/// The configured constructive size limit.
pub fn constructive_limit() -> usize {
    env_limit(CONSTRUCTIVE_LIMIT_ENV, DEFAULT_CONSTRUCTIVE_LIMIT)
}

/// All connected diagrams on `n` chords by exhaustive matching generation,
/// sorted by pairing array.
pub fn enumerate_bruteforce(n: usize) -> Result<Vec<ChordDiagram>> {
    let limit = brute_limit();
    if n > limit {
        return Err(Error::SizeLimit { n, limit });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("diagram size must be positive".into()));
    }
    let mut out = Vec::new();
    let mut pairing = vec![0usize; 2 * n];
    fill_matchings(&mut pairing, &mut out);
    out.sort();
    Ok(out)
}

/// Recursively pairs the smallest unpaired endpoint with every larger
/// unpaired endpoint, keeping completed matchings that are connected.
fn fill_matchings(pairing: &mut Vec<usize>, out: &mut Vec<ChordDiagram>) {
    let first = match pairing.iter().position(|&p| p == 0) {
        Some(idx) => idx,
        None => {
            let d = ChordDiagram::from_pairing(pairing.clone())
                .expect("matching generator produced a valid involution");
            if d.is_connected() {
                out.push(d);
            }
            return;
        }
    };
    for second in (first + 1)..pairing.len() {
        if pairing[second] == 0 {
            pairing[first] = second + 1;
            pairing[second] = first + 1;
            fill_matchings(pairing, out);
            pairing[first] = 0;
            pairing[second] = 0;
        }
    }
}

/// All of `RCCD(1), …, RCCD(max_n)` by root-share insertions; level `k` of
/// the result holds `RCCD(k+1)` sorted by pairing array.
pub fn enumerate_constructive(max_n: usize) -> Result<Vec<Vec<ChordDiagram>>> {
    let limit = constructive_limit();
    if max_n > limit {
        return Err(Error::SizeLimit { n: max_n, limit });
    }
    if max_n == 0 {
        return Err(Error::InvalidParameter("diagram size must be positive".into()));
    }
    let mut levels: Vec<Vec<ChordDiagram>> = vec![vec![ChordDiagram::single()]];
    for n in 2..=max_n {
        let mut level = Vec::new();
        for k in 1..n {
            let (part1, part2) = (&levels[k - 1], &levels[n - k - 1]);
            for c2 in part2 {
                for i in 1..=(2 * (n - k) - 1) {
                    for c1 in part1 {
                        level.push(ChordDiagram::insert(c1, c2, i)?);
                    }
                }
            }
        }
        level.sort();
        debug_assert!(
            level.windows(2).all(|w| w[0] != w[1]),
            "constructive enumeration produced a duplicate at n = {n}"
        );
        levels.push(level);
    }
    Ok(levels)
}

/// A cached enumeration of `RCCD(1) ..= RCCD(max_n)` with per-diagram
/// statistics, the shared input of the series and verification layers.
pub struct Enumeration {
    levels: Vec<Vec<ChordDiagram>>,
    stats: Vec<Vec<DiagramStats>>,
}

impl Enumeration {
    /// Enumerates constructively up to `max_n` and computes every
    /// diagram's statistics.
    pub fn up_to(max_n: usize) -> Result<Self> {
        let levels = enumerate_constructive(max_n)?;
        let stats = levels
            .iter()
            .map(|level| level.iter().map(|d| d.stats()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { levels, stats })
    }

    /// Largest enumerated size.
    pub fn max_n(&self) -> usize {
        self.levels.len()
    }

    /// The diagrams of `RCCD(n)`, sorted by pairing array.
    pub fn level(&self, n: usize) -> &[ChordDiagram] {
        &self.levels[n - 1]
    }

    /// Statistics of the diagrams of `RCCD(n)`, in [`Self::level`] order.
    pub fn stats_level(&self, n: usize) -> &[DiagramStats] {
        &self.stats[n - 1]
    }

    /// `c_n = |RCCD(n)|`.
    pub fn count(&self, n: usize) -> usize {
        self.levels[n - 1].len()
    }

    /// Number of diagrams of `RCCD(n)` for each value of `b`, as a map
    /// `b → count`.
    pub fn counts_by_b(&self, n: usize) -> HashMap<usize, usize> {
        let mut out = HashMap::new();
        for s in self.stats_level(n) {
            *out.entry(s.b).or_insert(0) += 1;
        }
        out
    }
}

/// `c_1, …, c_max_n` by Stein's recurrence
/// `c_n = (n−1) · Σ_{k=1}^{n−1} c_k c_{n−k}`, with `c_1 = 1`.
pub fn stein_counts(max_n: usize) -> Vec<BigUint> {
    let mut c: Vec<BigUint> = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        if n == 1 {
            c.push(BigUint::from(1u32));
            continue;
        }
        let sum: BigUint = (1..n).map(|k| &c[k - 1] * &c[n - k - 1]).sum();
        c.push(sum * BigUint::from(n - 1));
    }
    c
}

/// `c_1, …, c_max_n` by the weighted convolution
/// `c_n = Σ_{k=1}^{n−1} (2k−1) c_k c_{n−k}`, with `c_1 = 1` — the counting
/// shadow of the constructive generator, which places `C1` into one of
/// `2|C2|−1` intervals of `C2`.
pub fn nijenhuis_wilf_counts(max_n: usize) -> Vec<BigUint> {
    let mut c: Vec<BigUint> = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        if n == 1 {
            c.push(BigUint::from(1u32));
            continue;
        }
        let sum: BigUint =
            (1..n).map(|k| &c[k - 1] * &c[n - k - 1] * BigUint::from(2 * k - 1)).sum();
        c.push(sum);
    }
    c
}
