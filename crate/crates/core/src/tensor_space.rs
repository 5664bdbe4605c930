//! Discrete `L_p` spaces over the normalized counting measure and the
//! row-mean operator `S: L_p^{N1×N2} → L_q^{N1}`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentPair};
use crate::summation::{pairwise_sum, pairwise_sum_by};

/// A real function on `{1..N1} × {1..N2}`, stored row-major.
///
/// Row `i` is the vector `f(i, ·)`; entry `(i, j)` lives at `values[i * n2 + j]`
/// (zero-based).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteFunction {
    n1: usize,
    n2: usize,
    values: Vec<f64>,
}

impl DiscreteFunction {
    pub fn new(n1: usize, n2: usize, values: Vec<f64>) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::Domain(format!("dimensions must be positive, got {n1}x{n2}")));
        }
        if values.len() != n1 * n2 {
            return Err(Error::Domain(format!(
                "expected {} values for a {n1}x{n2} function, got {}",
                n1 * n2,
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "entry ({}, {}) is not finite",
                pos / n2,
                pos % n2
            )));
        }
        Ok(DiscreteFunction { n1, n2, values })
    }

    pub fn zeros(n1: usize, n2: usize) -> Self {
        assert!(n1 > 0 && n2 > 0, "dimensions must be positive");
        DiscreteFunction {
            n1,
            n2,
            values: vec![0.0; n1 * n2],
        }
    }

    pub fn constant(n1: usize, n2: usize, c: f64) -> Self {
        assert!(c.is_finite());
        let mut f = Self::zeros(n1, n2);
        f.values.fill(c);
        f
    }

    /// Builds a function from its rows. All rows must have the same length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n1 = rows.len();
        let n2 = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != n2) {
            return Err(Error::Domain("rows have different lengths".into()));
        }
        let values = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::new(n1, n2, values)
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `f(i, j)`, zero-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n2 + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n2..(i + 1) * self.n2]
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [f64] {
        let n2 = self.n2;
        &mut self.values[i * n2..(i + 1) * n2]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.n2)
    }

    /// `a · f`.
    pub fn scaled(&self, a: f64) -> Self {
        assert!(a.is_finite());
        DiscreteFunction {
            n1: self.n1,
            n2: self.n2,
            values: self.values.iter().map(|v| a * v).collect(),
        }
    }

    /// `‖f‖_{L_p^{N1×N2}}`.
    pub fn norm(&self, p: Exponent) -> f64 {
        lp_norm(&self.values, p)
    }

    /// Parses the plain-text matrix format: a header line `N1 N2` followed by
    /// `N1` lines of `N2` whitespace-separated decimals.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad dimension `{t}`"))))
            .collect::<Result<_>>()?;
        let [n1, n2] = dims[..] else {
            return Err(Error::Parse(format!("header must be `N1 N2`, got `{header}`")));
        };
        let mut values = Vec::with_capacity(n1.saturating_mul(n2));
        let mut row_count = 0;
        for (i, line) in lines.enumerate() {
            let before = values.len();
            for tok in line.split_whitespace() {
                let v: f64 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("row {}: bad number `{tok}`", i + 1)))?;
                values.push(v);
            }
            if values.len() - before != n2 {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {n2}",
                    i + 1,
                    values.len() - before
                )));
            }
            row_count += 1;
        }
        if row_count != n1 {
            return Err(Error::Parse(format!("expected {n1} rows, found {row_count}")));
        }
        Self::new(n1, n2, values).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read_text(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_text(&std::fs::read_to_string(path)?)
    }

    /// Serializes to the plain-text matrix format read by [`parse_text`](Self::parse_text).
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n1, self.n2);
        for row in self.rows() {
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        }
        out
    }
}

/// Normalized `L_p` norm: `((1/|M|) Σ |f(i)|^p)^{1/p}`, or `max |f(i)|` for `p = ∞`.
///
/// The element count is `values.len()`; an empty slice has norm 0.
pub fn lp_norm(values: &[f64], p: Exponent) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let size = values.len() as f64;
    match p {
        Exponent::Infinity => values.iter().fold(0.0, |m, v| m.max(v.abs())),
        Exponent::Finite(1.0) => pairwise_sum_by(values, f64::abs) / size,
        Exponent::Finite(2.0) => (pairwise_sum_by(values, |v| v * v) / size).sqrt(),
        Exponent::Finite(p) => (pairwise_sum_by(values, |v| v.abs().powf(p)) / size).powf(1.0 / p),
    }
}

/// `(S f)(i) = (1/N2) Σ_j f(i, j)`.
pub fn mean_rows(f: &DiscreteFunction) -> Vec<f64> {
    let n2 = f.n2() as f64;
    f.rows().map(|row| pairwise_sum(row) / n2).collect()
}

/// `‖S: L_p^{N1×N2} → L_q^{N1}‖ = N1^{(1/p − 1/q)_+}`.
pub fn operator_norm(p: Exponent, q: Exponent, n1: usize) -> f64 {
    let gap = ExponentPair::new(p, q).positive_gap();
    (n1 as f64).powf(gap)
}

/// A unit-norm input attaining the operator norm when `p <= q`: row 0 is
/// constant `N1^{1/p}`, every other row is zero.
pub fn norm_witness(p: Exponent, q: Exponent, n1: usize, n2: usize) -> Result<DiscreteFunction> {
    if !p.le(q) {
        return Err(Error::Domain(format!(
            "norm witness needs p <= q, got p = {p}, q = {q}"
        )));
    }
    let mut f = DiscreteFunction::zeros(n1, n2);
    let amp = (n1 as f64).powf(p.recip());
    f.row_mut(0).fill(amp);
    Ok(f)
}
