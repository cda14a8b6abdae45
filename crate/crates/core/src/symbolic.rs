//! Exact symbolic arithmetic: monomials and polynomials in the symbols
//! `f_0, f_1, f_2, …` with arbitrary-precision rational coefficients, and
//! truncated formal power series in `x` whose coefficients are such
//! polynomials.
//!
//! These types carry the chord-diagram expansions: every rooted connected
//! chord diagram `C` contributes the monomial `f_C` (read off its gap
//! sequence) and the series
//!
//! ```text
//! g_k = Σ_{C, b(C) ≥ k} x^{|C|} · f_C · f_{b(C)−k},
//! γ_k = ((−1)^k / k!) · g_k
//! ```
//!
//! are assembled here directly from the enumeration.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::enumerate::Enumeration;
use crate::{Error, Result};

/// A monomial in the symbols `f_0, f_1, …`: a finite map from symbol index
/// to a positive exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FMonomial {
    exps: BTreeMap<usize, u32>,
}

impl FMonomial {
    /// The empty monomial `1`.
    pub fn one() -> Self {
        Self::default()
    }

    /// The single symbol `f_j`.
    pub fn f(j: usize) -> Self {
        let mut exps = BTreeMap::new();
        exps.insert(j, 1);
        Self { exps }
    }

    /// Builds a monomial from `(symbol, exponent)` pairs; zero exponents are
    /// dropped, repeated symbols accumulate.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut m = Self::one();
        for (j, e) in pairs {
            if e > 0 {
                *m.exps.entry(j).or_insert(0) += e;
            }
        }
        m
    }

    /// Exponent of `f_j` in this monomial (0 when absent).
    pub fn exponent(&self, j: usize) -> u32 {
        self.exps.get(&j).copied().unwrap_or(0)
    }

    /// Iterates over `(symbol, exponent)` pairs in ascending symbol order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|(&j, &e)| (j, e))
    }

    /// Total degree `Σ e_j`.
    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps.clone();
        for (&j, &e) in &other.exps {
            *exps.entry(j).or_insert(0) += e;
        }
        Self { exps }
    }

    /// Substitutes rational values for every symbol; fails if some symbol
    /// present in the monomial has no value.
    pub fn eval(&self, f_values: &BTreeMap<usize, BigRational>) -> Result<BigRational> {
        let mut acc = BigRational::one();
        for (&j, &e) in &self.exps {
            let v = f_values.get(&j).ok_or(Error::MissingSymbol(j))?;
            for _ in 0..e {
                acc *= v;
            }
        }
        Ok(acc)
    }
}

impl Ord for FMonomial {
    /// Graded lexicographic order: first by total degree, then by the dense
    /// exponent vector `(e_0, e_1, …)` compared lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let mut a = self.exps.iter().peekable();
            let mut b = other.exps.iter().peekable();
            loop {
                match (a.peek(), b.peek()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(&ja, &ea)), Some(&(&jb, &eb))) => match ja.cmp(&jb) {
                        // The side whose next symbol has the smaller index
                        // has a positive exponent where the other has zero;
                        // weight on low-index symbols sorts first.
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => match ea.cmp(&eb) {
                            Ordering::Equal => {
                                a.next();
                                b.next();
                            }
                            ord => return ord.reverse(),
                        },
                    },
                }
            }
        })
    }
}

impl PartialOrd for FMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&j, &e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "f{j}")?;
            } else {
                write!(f, "f{j}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for FMonomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, u32> =
            self.exps.iter().map(|(&j, &e)| (j.to_string(), e)).collect();
        map.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FMonomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<String, u32>::deserialize(deserializer)?;
        let mut exps = BTreeMap::new();
        for (k, e) in map {
            let j: usize = k.parse().map_err(D::Error::custom)?;
            if e > 0 {
                exps.insert(j, e);
            }
        }
        Ok(Self { exps })
    }
}

/// A polynomial in the symbols `f_j` with exact rational coefficients.
///
/// Terms are kept in a map ordered by [`FMonomial`]'s graded-lex order, so
/// iteration (and therefore printing and serialization) is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FPolynomial {
    terms: BTreeMap<FMonomial, BigRational>,
}

impl FPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::from_term(FMonomial::one(), BigRational::one())
    }

    /// The single symbol `f_j`.
    pub fn f(j: usize) -> Self {
        Self::from_term(FMonomial::f(j), BigRational::one())
    }

    /// A constant polynomial.
    pub fn constant(c: BigRational) -> Self {
        Self::from_term(FMonomial::one(), c)
    }

    /// The monomial `m` with coefficient 1.
    pub fn from_monomial(m: FMonomial) -> Self {
        Self::from_term(m, BigRational::one())
    }

    /// The single term `c·m` (dropped if `c = 0`).
    pub fn from_term(m: FMonomial, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates over `(monomial, coefficient)` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&FMonomial, &BigRational)> {
        self.terms.iter()
    }

    /// Adds `c·m` in place, removing the term if the coefficient cancels.
    pub fn add_term(&mut self, m: FMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Sum of two polynomials.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Difference of two polynomials.
    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    /// Additive inverse.
    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Multiplies every coefficient by a rational scalar.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Substitutes rational values for all symbols.
    pub fn eval(&self, f_values: &BTreeMap<usize, BigRational>) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            acc += m.eval(f_values)? * c;
        }
        Ok(acc)
    }
}

impl fmt::Display for FPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let constant = m.degree() == 0;
            if a.is_one() && !constant {
                write!(f, "{m}")?;
            } else if constant {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

/// JSON form of one polynomial term.
#[derive(Serialize, Deserialize)]
struct TermJson {
    m: FMonomial,
    c: String,
}

impl Serialize for FPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson { m: m.clone(), c: c.to_string() })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(deserializer)?;
        let mut p = FPolynomial::zero();
        for t in terms {
            let c = BigRational::from_str(&t.c).map_err(D::Error::custom)?;
            p.add_term(t.m, c);
        }
        Ok(p)
    }
}

/// A formal power series in `x`, truncated at `x^order`, with
/// [`FPolynomial`] coefficients (the constant term is coefficient 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSeries {
    order: usize,
    coeffs: Vec<FPolynomial>,
}

impl XSeries {
    /// The zero series truncated at `x^order`.
    pub fn zero(order: usize) -> Self {
        Self { order, coeffs: vec![FPolynomial::zero(); order + 1] }
    }

    /// A constant series.
    pub fn constant(p: FPolynomial, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = p;
        s
    }

    /// The series `x` (zero when `order = 0`).
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = FPolynomial::one();
        }
        s
    }

    /// Truncation order.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `x^n` (zero polynomial beyond the truncation order).
    pub fn coeff(&self, n: usize) -> &FPolynomial {
        static ZERO: std::sync::OnceLock<FPolynomial> = std::sync::OnceLock::new();
        self.coeffs
            .get(n)
            .unwrap_or_else(|| ZERO.get_or_init(FPolynomial::zero))
    }

    /// Sets the coefficient of `x^n`; out-of-range powers are discarded.
    pub fn set_coeff(&mut self, n: usize, p: FPolynomial) {
        if n <= self.order {
            self.coeffs[n] = p;
        }
    }

    /// Adds `p` to the coefficient of `x^n`.
    pub fn add_to_coeff(&mut self, n: usize, p: &FPolynomial) {
        if n <= self.order {
            self.coeffs[n] = self.coeffs[n].add(p);
        }
    }

    /// Whether every stored coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FPolynomial::is_zero)
    }

    /// Sum; the result is truncated at the smaller order.
    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for n in 0..=order {
            out.coeffs[n] = self.coeff(n).add(other.coeff(n));
        }
        out
    }

    /// Difference; the result is truncated at the smaller order.
    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for n in 0..=order {
            out.coeffs[n] = self.coeff(n).sub(other.coeff(n));
        }
        out
    }

    /// Product; the result is truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for a in 0..=order {
            if self.coeff(a).is_zero() {
                continue;
            }
            for b in 0..=(order - a) {
                if other.coeff(b).is_zero() {
                    continue;
                }
                let prod = self.coeff(a).mul(other.coeff(b));
                out.add_to_coeff(a + b, &prod);
            }
        }
        out
    }

    /// Multiplies every coefficient by a rational scalar.
    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiplies every coefficient by a polynomial.
    pub fn scale_poly(&self, p: &FPolynomial) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|q| q.mul(p)).collect(),
        }
    }

    /// Multiplies by `x`, shifting all coefficients up one power (the top
    /// coefficient falls off the truncation).
    pub fn mul_by_x(&self) -> Self {
        let mut out = Self::zero(self.order);
        for n in 1..=self.order {
            out.coeffs[n] = self.coeffs[n - 1].clone();
        }
        out
    }

    /// The operator `2x·d/dx − 1`: the coefficient of `x^n` is multiplied
    /// by `2n − 1` (so the constant term is negated).
    pub fn theta(&self) -> Self {
        let mut out = self.clone();
        for (n, p) in out.coeffs.iter_mut().enumerate() {
            let factor = BigRational::from(BigInt::from(2 * n as i64 - 1));
            *p = p.scale(&factor);
        }
        out
    }

    /// Substitutes `x = x0` and rational values for all `f_j`.
    pub fn eval(
        &self,
        f_values: &BTreeMap<usize, BigRational>,
        x0: &BigRational,
    ) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        let mut xp = BigRational::one();
        for p in &self.coeffs {
            acc += p.eval(f_values)? * &xp;
            xp *= x0;
        }
        Ok(acc)
    }
}

impl fmt::Display for XSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if n == 0 {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})*x^{n}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order + 1)
    }
}

/// JSON form of a truncated series: nonzero coefficients keyed by power.
#[derive(Serialize, Deserialize)]
struct XSeriesJson {
    order: usize,
    coeffs: BTreeMap<String, FPolynomial>,
}

impl Serialize for XSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: BTreeMap<String, FPolynomial> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(n, p)| (n.to_string(), p.clone()))
            .collect();
        XSeriesJson { order: self.order, coeffs }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for XSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = XSeriesJson::deserialize(deserializer)?;
        let mut s = XSeries::zero(raw.order);
        for (k, p) in raw.coeffs {
            let n: usize = k.parse().map_err(D::Error::custom)?;
            if n > raw.order {
                return Err(D::Error::custom(format!(
                    "coefficient power {n} beyond order {}",
                    raw.order
                )));
            }
            s.set_coeff(n, p);
        }
        Ok(s)
    }
}

/// Builds `g_k` up to `x^order` from an enumeration of diagrams:
/// the coefficient of `x^n` is `Σ f_C · f_{b(C)−k}` over all diagrams of
/// `RCCD(n)` with `b(C) ≥ k`.
pub fn g_series(k: usize, order: usize, enumeration: &Enumeration) -> Result<XSeries> {
    if k == 0 {
        return Err(Error::InvalidParameter("g_k requires k >= 1".into()));
    }
    if order > enumeration.max_n() {
        return Err(Error::SizeLimit { n: order, limit: enumeration.max_n() });
    }
    let mut s = XSeries::zero(order);
    for n in 1..=order {
        let mut coeff = FPolynomial::zero();
        for stats in enumeration.stats_level(n) {
            if stats.b >= k {
                let m = stats.monomial.mul(&FMonomial::f(stats.b - k));
                coeff.add_term(m, BigRational::one());
            }
        }
        s.set_coeff(n, coeff);
    }
    Ok(s)
}

/// Builds `γ_k = ((−1)^k / k!) · g_k` up to `x^order`.
pub fn gamma_series(k: usize, order: usize, enumeration: &Enumeration) -> Result<XSeries> {
    let g = g_series(k, order, enumeration)?;
    let mut factorial = BigInt::one();
    for i in 2..=k {
        factorial *= BigInt::from(i);
    }
    let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    Ok(g.scale(&BigRational::new(sign, factorial)))
}

/// The truncated Green function `G(x, L) = 1 − Σ_{k≥1} γ_k(x) L^k`.
#[derive(Clone, Debug)]
pub struct GreenFunction {
    order: usize,
    gammas: Vec<XSeries>,
}

impl GreenFunction {
    /// Builds `γ_1 .. γ_order` from the enumeration, each truncated at
    /// `x^order`.
    pub fn from_enumeration(order: usize, enumeration: &Enumeration) -> Result<Self> {
        let gammas = (1..=order)
            .map(|k| gamma_series(k, order, enumeration))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { order, gammas })
    }

    /// Truncation order (both in `x` and in `L`).
    pub fn order(&self) -> usize {
        self.order
    }

    /// The series `γ_k`, for `1 ≤ k ≤ order`.
    pub fn gamma(&self, k: usize) -> Option<&XSeries> {
        if k == 0 {
            return None;
        }
        self.gammas.get(k - 1)
    }

    /// Evaluates `1 − Σ_k γ_k(x0)·L0^k` with all `f_j` substituted from
    /// `f_values`; fails if a symbol is missing.
    pub fn evaluate(
        &self,
        f_values: &BTreeMap<usize, BigRational>,
        x0: &BigRational,
        l0: &BigRational,
    ) -> Result<BigRational> {
        let mut acc = BigRational::one();
        let mut lp = BigRational::one();
        for gamma in &self.gammas {
            lp *= l0;
            acc -= gamma.eval(f_values, x0)? * &lp;
        }
        Ok(acc)
    }
}
