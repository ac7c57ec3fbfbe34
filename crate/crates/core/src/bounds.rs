//! Vanishing bounds for `β_{p,b}` on the slice `|b| = dj`.
//!
//! * Upper: `b_s ≥ A_j` makes `Δ_b` a cone, where `A_j` is the sum of the
//!   0-th coordinates of the first `j` points.
//! * Lower: for `j ≥ C(d+m-1, m-1)`, `b_s ≤ l̃_j` makes `Δ_b` a cone, where
//!   `l̃_j` is the largest `l < A_j` with `⌈(dj - l)/m⌉ ≥ f_l` and `f_l` is
//!   the best coordinate-1 mass of an index set with coordinate-0 mass
//!   exactly `l`.
//!
//! Both tests apply to every coordinate by the symmetry of the point set.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{binomial, MultiDegree, Veronese};

/// `A_j = Σ_{i ≤ min(j, n)} a^i_0`.
pub fn compute_a(lattice: &Veronese, j: usize) -> u64 {
    lattice.prefix_coord_sum(0, j)
}

/// The piecewise closed form of `A_j` for `m = 2`:
/// `(d-k)j + C(k+2, 3)` when `C(k+1, 2) ≤ j ≤ C(k+2, 2)`, and `C(d+2, 3)`
/// once `j ≥ n`.
pub fn compute_a_closed_form_m2(d: u64, j: u64) -> Result<u64> {
    let overflow = || Error::Overflow("closed form of A_j");
    let n = binomial(d + 2, 2).ok_or_else(overflow)?;
    if j >= n {
        return binomial(d + 2, 3).ok_or_else(overflow);
    }
    for k in 1..=d {
        let lo = binomial(k + 1, 2).ok_or_else(overflow)?;
        let hi = binomial(k + 2, 2).ok_or_else(overflow)?;
        if (lo..=hi).contains(&j) {
            return (d - k)
                .checked_mul(j)
                .and_then(|x| x.checked_add(binomial(k + 2, 3)?))
                .ok_or_else(overflow);
        }
    }
    Err(Error::Internal(format!("no k with C(k+1,2) ≤ {j} ≤ C(k+2,2), d = {d}")))
}

/// `C(d+m-1, m-1)`: the least `j` for which `l̃_j` is a valid bound.
pub fn lower_threshold(lattice: &Veronese) -> usize {
    let (m, d) = (lattice.m() as u64, lattice.d());
    binomial(d + m - 1, m - 1).expect("bounded by n") as usize
}

/// `f_l` for `0 ≤ l ≤ A`, where `A` is the total 0-th coordinate mass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackProfile {
    pub total_weight: u64,
    pub f: Vec<u64>,
}

impl KnapsackProfile {
    pub fn get(&self, l: u64) -> u64 {
        self.f[l as usize]
    }
}

/// 0/1 knapsack with exact weight `a^i_0` and value `a^i_1`.
pub fn knapsack_profile(lattice: &Veronese) -> Result<KnapsackProfile> {
    knapsack_profile_for(lattice, 1)
}

/// Same as [`knapsack_profile`] but maximizing coordinate `t ≥ 1`.
pub fn knapsack_profile_for(lattice: &Veronese, t: usize) -> Result<KnapsackProfile> {
    if t == 0 || t > lattice.m() {
        return Err(Error::InvalidParameters(format!("value coordinate {t} out of range")));
    }
    let total = lattice.prefix_coord_sum(0, lattice.n());
    let width = usize::try_from(total).map_err(|_| Error::Overflow("knapsack table"))? + 1;
    let mut best: Vec<Option<u64>> = vec![None; width];
    best[0] = Some(0);
    for a in lattice.points() {
        let w = a.coord(0) as usize;
        let value = a.coord(t);
        for l in (w..width).rev() {
            if let Some(prev) = best[l - w] {
                let cand = prev + value;
                if best[l].is_none_or(|cur| cand > cur) {
                    best[l] = Some(cand);
                }
            }
        }
    }
    let f = best
        .into_iter()
        .enumerate()
        .map(|(l, x)| x.ok_or_else(|| Error::Internal(format!("weight {l} is unreachable"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(KnapsackProfile {
        total_weight: total,
        f,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VanishingStatus {
    /// `b_coord ≥ A_j`.
    VanishUpper { coord: usize },
    /// `b_coord ≤ l̃_j` with `j` at or above the threshold.
    VanishLower { coord: usize },
    Undetermined,
}

impl VanishingStatus {
    pub fn vanishes(&self) -> bool {
        !matches!(self, VanishingStatus::Undetermined)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            VanishingStatus::VanishUpper { .. } => "vanish_upper",
            VanishingStatus::VanishLower { .. } => "vanish_lower",
            VanishingStatus::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundsRow {
    pub j: usize,
    pub a: u64,
    /// `None` below the threshold; `Some(-1)` when no `l` qualifies.
    pub l_tilde: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsTable {
    pub m: usize,
    pub d: u64,
    pub threshold: usize,
    pub rows: Vec<BoundsRow>,
}

/// Precomputed bound data for one `(m, d)`.
#[derive(Clone, Debug)]
pub struct Bounds<'a> {
    lattice: &'a Veronese,
    profile: KnapsackProfile,
    threshold: usize,
    upper_shift: i64,
}

impl<'a> Bounds<'a> {
    pub fn new(lattice: &'a Veronese) -> Result<Self> {
        Ok(Self {
            lattice,
            profile: knapsack_profile(lattice)?,
            threshold: lower_threshold(lattice),
            upper_shift: 0,
        })
    }

    /// Shifts every reported `A_j` by `delta`. Only for exercising the
    /// verification harness against a wrong bound.
    #[doc(hidden)]
    pub fn corrupt_upper_bound(&mut self, delta: i64) {
        self.upper_shift = delta;
    }

    pub fn lattice(&self) -> &'a Veronese {
        self.lattice
    }

    pub fn profile(&self) -> &KnapsackProfile {
        &self.profile
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn a(&self, j: usize) -> u64 {
        let a = compute_a(self.lattice, j) as i64 + self.upper_shift;
        a.max(0) as u64
    }

    /// `l̃_j`, or `-1` if no `l ∈ [0, A_j)` has `φ(l) ≥ 0`.
    ///
    /// Fails below the threshold, and if `φ` turns out not to be
    /// nonincreasing on `[0, A_j)`.
    pub fn l_tilde(&self, j: usize) -> Result<i64> {
        if j < self.threshold {
            return Err(Error::HypothesisViolated(format!(
                "l̃_j needs j ≥ {}, got {j}",
                self.threshold
            )));
        }
        let dj = (self.lattice.d() as i64)
            .checked_mul(j as i64)
            .ok_or(Error::Overflow("dj"))?;
        let m = self.lattice.m() as i64;
        let a_j = compute_a(self.lattice, j) as i64;
        let mut best = -1;
        let mut prev: Option<i64> = None;
        for l in 0..a_j {
            let phi = (dj - l + m - 1).div_euclid(m) - self.profile.get(l as u64) as i64;
            if prev.is_some_and(|p| phi > p) {
                return Err(Error::Internal(format!(
                    "φ increases at l = {l} for m = {m}, d = {}, j = {j}",
                    self.lattice.d()
                )));
            }
            prev = Some(phi);
            if phi >= 0 {
                best = l;
            }
        }
        Ok(best)
    }

    pub fn row(&self, j: usize) -> Result<BoundsRow> {
        Ok(BoundsRow {
            j,
            a: self.a(j),
            l_tilde: if j >= self.threshold {
                Some(self.l_tilde(j)?)
            } else {
                None
            },
        })
    }

    pub fn table(&self, j_max: usize) -> Result<BoundsTable> {
        let rows = (1..=j_max)
            .into_par_iter()
            .map(|j| self.row(j))
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundsTable {
            m: self.lattice.m(),
            d: self.lattice.d(),
            threshold: self.threshold,
            rows,
        })
    }

    /// Applies the upper test to every coordinate, then the lower one.
    pub fn vanishing_status(&self, b: &MultiDegree) -> Result<VanishingStatus> {
        let j = self.lattice.level(b)?;
        if j == 0 {
            return Ok(VanishingStatus::Undetermined);
        }
        let a_j = self.a(j);
        if let Some(coord) = b.coords().iter().position(|&x| x >= a_j) {
            return Ok(VanishingStatus::VanishUpper { coord });
        }
        if j >= self.threshold {
            let l = self.l_tilde(j)?;
            if l >= 0 {
                if let Some(coord) = b.coords().iter().position(|&x| x as i64 <= l) {
                    return Ok(VanishingStatus::VanishLower { coord });
                }
            }
        }
        Ok(VanishingStatus::Undetermined)
    }
}
