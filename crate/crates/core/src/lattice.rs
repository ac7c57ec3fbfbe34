//! The generating set of the Veronese semigroup: all lattice points of the
//! `d`-dilated standard simplex in `N^{m+1}`, listed in decreasing
//! lexicographic order.
//!
//! Public indices into the point list are 1-based, so `point(1)` is always
//! `(d, 0, ..., 0)` and `point(n)` is `(0, ..., 0, d)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Upper limit on the number of generators accepted by [`Parameters::new`].
pub const MAX_POINTS: u64 = 1 << 20;

/// Checked binomial coefficient. `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Projective dimension `m` and Veronese degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Parameters {
    m: usize,
    d: u64,
    n: usize,
}

impl Parameters {
    pub fn new(m: usize, d: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameters(format!("m must be at least 2, got {m}")));
        }
        if d < 2 {
            return Err(Error::InvalidParameters(format!("d must be at least 2, got {d}")));
        }
        let n = binomial(d + m as u64, m as u64)
            .filter(|&n| n <= MAX_POINTS)
            .ok_or_else(|| {
                Error::InvalidParameters(format!(
                    "C(d+m, m) exceeds {MAX_POINTS} for m={m}, d={d}"
                ))
            })?;
        Ok(Self { m, d, n: n as usize })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Number of generators, `C(d+m, m)`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of coordinates, `m + 1`.
    pub fn dims(&self) -> usize {
        self.m + 1
    }
}

/// A lattice point `a` with `|a| = d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(Vec<u64>);

impl Exponent {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn coord(&self, t: usize) -> u64 {
        self.0[t]
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// A multidegree `b ∈ N^{m+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(Vec<u64>);

impl MultiDegree {
    pub fn new(coords: Vec<u64>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn coord(&self, t: usize) -> u64 {
        self.0[t]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|b|`, the coordinate sum.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// All degrees with `len` coordinates summing to `total`, in decreasing
    /// lexicographic order.
    pub fn all_with_total(len: usize, total: u64) -> Vec<MultiDegree> {
        compositions(len, total).into_iter().map(MultiDegree).collect()
    }
}

impl From<Vec<u64>> for MultiDegree {
    fn from(v: Vec<u64>) -> Self {
        Self(v)
    }
}

impl FromStr for MultiDegree {
    type Err = Error;

    /// Parses comma-separated coordinates, with or without surrounding parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        trimmed
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::InvalidParameters(format!("bad coordinate {c:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiDegree)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, coords: &[u64]) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

/// Vectors of naturals of length `len` summing to `total`, decreasing lex.
fn compositions(len: usize, total: u64) -> Vec<Vec<u64>> {
    fn go(len: usize, remaining: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if len == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=remaining).rev() {
            prefix.push(first);
            go(len - 1, remaining - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len > 0 {
        go(len, total, &mut Vec::with_capacity(len), &mut out);
    }
    out
}

/// All `n` exponents of degree `d`, in decreasing lexicographic order.
pub fn enumerate_points(params: &Parameters) -> Vec<Exponent> {
    compositions(params.dims(), params.d())
        .into_iter()
        .map(Exponent)
        .collect()
}

/// The ordered point list together with per-coordinate prefix sums.
#[derive(Clone, Debug)]
pub struct Veronese {
    params: Parameters,
    points: Vec<Exponent>,
    // prefix[t][j] = sum of coordinate t over the first j points
    prefix: Vec<Vec<u64>>,
}

impl Veronese {
    pub fn new(params: Parameters) -> Self {
        let points = enumerate_points(&params);
        debug_assert_eq!(points.len(), params.n());
        let prefix = (0..params.dims())
            .map(|t| {
                std::iter::once(0)
                    .chain(points.iter().scan(0u64, |acc, a| {
                        *acc += a.coord(t);
                        Some(*acc)
                    }))
                    .collect()
            })
            .collect();
        Self {
            params,
            points,
            prefix,
        }
    }

    pub fn with(m: usize, d: u64) -> Result<Self> {
        Parameters::new(m, d).map(Self::new)
    }

    pub fn params(&self) -> &Parameters {
        &self.params
    }

    pub fn m(&self) -> usize {
        self.params.m()
    }

    pub fn d(&self) -> u64 {
        self.params.d()
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn points(&self) -> &[Exponent] {
        &self.points
    }

    /// The `i`-th point, 1-based.
    pub fn point(&self, i: usize) -> Result<&Exponent> {
        if i == 0 || i > self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        Ok(&self.points[i - 1])
    }

    /// `Σ_{i=1}^{min(j, n)} a^i_t`.
    ///
    /// Panics if `t > m`.
    pub fn prefix_coord_sum(&self, t: usize, j: usize) -> u64 {
        assert!(t < self.params.dims(), "coordinate {t} out of range");
        self.prefix[t][j.min(self.n())]
    }

    /// Whether `b` lies in the semigroup generated by the points.
    ///
    /// The generators are every lattice point of the dilated simplex, so this
    /// reduces to the right length and `d` dividing `|b|`.
    pub fn semigroup_member(&self, b: &MultiDegree) -> bool {
        b.len() == self.params.dims() && b.total().is_multiple_of(self.d())
    }

    /// `|b| / d` for a semigroup member.
    pub fn level(&self, b: &MultiDegree) -> Result<usize> {
        if !self.semigroup_member(b) {
            return Err(Error::NotInSemigroup(b.coords().to_vec()));
        }
        Ok((b.total() / self.d()) as usize)
    }
}
