//! Exact-arithmetic toolkit for rooted connected chord diagrams (RCCDs).
//!
//! The crate provides:
//!
//! * [`diagram`] — the canonical involution encoding of a rooted chord
//!   diagram, its directed intersection graph, the intersection order, and
//!   the per-diagram statistics (terminal chords, `b(C)`, gap sequences, and
//!   the attached monomial `f_C`), together with the root-share
//!   insertion/decomposition pair.
//! * [`enumerate`] — dual enumeration of `RCCD(n)`: a constructive generator
//!   built on root-share insertions and an independent brute-force matching
//!   oracle, plus the Stein / Nijenhuis–Wilf counting recurrences.
//! * [`tree`] — the bijection between RCCDs and planar binary trees with
//!   labeled leaves, its inverse, and the P1/P2 image characterization.
//! * [`symbolic`] — exact multivariate polynomials in the symbols
//!   `f_0, f_1, …` with rational coefficients, truncated power series in `x`,
//!   and the series `g_k` / `γ_k` read off the enumeration.
//! * [`verify`] — independent verification of the series recurrences and of
//!   the closed-form solution of the underlying Dyson–Schwinger equation via
//!   an operator-expansion oracle.
//! * [`analysis`] — Gevrey-growth checks and the four-term-relation search.
//!
//! All arithmetic is exact (arbitrary-precision rationals); floating point
//! appears only in human-readable growth-rate reports.

pub mod analysis;
pub mod diagram;
pub mod enumerate;
pub mod symbolic;
pub mod tree;
pub mod verify;

use thiserror::Error;

/// Errors produced by diagram, tree, and series operations.
#[derive(Debug, Error)]
pub enum Error {
    /// The endpoint array is not a fixed-point-free involution.
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    /// An operation defined only for connected diagrams was given a
    /// disconnected one.
    #[error("diagram is disconnected")]
    Disconnected,

    /// Insertion interval index outside `1..=2|C2|-1`.
    #[error("interval index {index} out of range 1..={max}")]
    IntervalOutOfRange { index: usize, max: usize },

    /// Tree-insertion edge index outside `1..=2l(B)-1`.
    #[error("edge index {index} out of range 1..={max}")]
    EdgeOutOfRange { index: usize, max: usize },

    /// Root-share decomposition requires at least two chords.
    #[error("cannot decompose a single-chord diagram")]
    Indecomposable,

    /// Enumeration request beyond the configured hard limit.
    #[error("enumeration size {n} exceeds limit {limit}")]
    SizeLimit { n: usize, limit: usize },

    /// Tree leaf labels are not a permutation of `1..=n`.
    #[error("leaf labels are not a permutation of 1..={n}")]
    NonPermutationLabels { n: usize },

    /// The tree violates property P1 at the given preorder vertex.
    #[error("tree fails P1 at preorder vertex {vertex}")]
    P1Violation { vertex: usize },

    /// The tree violates the recursive P2 property at the given preorder
    /// vertex.
    #[error("tree fails P2 at preorder vertex {vertex}: {reason}")]
    P2Violation { vertex: usize, reason: String },

    /// Numeric substitution is missing a value for some symbol `f_j`.
    #[error("missing value for symbol f_{0}")]
    MissingSymbol(usize),

    /// A parameter failed validation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
