//! Classify every degree on a slice `|b| = dj` by bound, theorem or oracle,
//! and compare every prediction with the exact homology.

use std::fmt;

use rayon::prelude::*;

use super::theorem_prediction;
use crate::bounds::{Bounds, VanishingStatus};
use crate::complex::EnumerationCap;
use crate::error::{Error, Result};
use crate::homology::betti_hochster_all;
use crate::lattice::MultiDegree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    VanishUpper,
    VanishLower,
    Theorem,
    Oracle,
    Unknown,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::VanishUpper => "vanish_upper",
            Classification::VanishLower => "vanish_lower",
            Classification::Theorem => "theorem",
            Classification::Oracle => "oracle",
            Classification::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellStatus {
    /// Prediction matched the oracle.
    Confirmed,
    /// Prediction only; the oracle was not run or was out of reach.
    Predicted,
    /// No prediction; value from the oracle.
    Computed,
    Unknown,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceCell {
    pub b: MultiDegree,
    pub j: usize,
    pub p: usize,
    pub classification: Classification,
    pub predicted: Option<u64>,
    pub oracle: Option<u64>,
    pub status: CellStatus,
}

impl SliceCell {
    pub fn value(&self) -> Option<u64> {
        self.oracle.or(self.predicted)
    }

    pub fn provenance(&self) -> &'static str {
        match self.status {
            CellStatus::Confirmed => "theorem+oracle",
            CellStatus::Predicted => "theorem",
            CellStatus::Computed => "oracle",
            CellStatus::Unknown => "none",
            CellStatus::Mismatch => "mismatch",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SliceOptions {
    pub cap: EnumerationCap,
    /// Run the oracle on predicted cells too.
    pub check: bool,
}

impl Default for SliceOptions {
    fn default() -> Self {
        Self {
            cap: EnumerationCap::default(),
            check: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SliceReport {
    pub j: usize,
    pub a_j: u64,
    pub l_tilde: Option<i64>,
    /// Ordered by degree (decreasing lex), then by `p` in request order.
    pub cells: Vec<SliceCell>,
    /// Degrees where the oracle was wanted but exceeded the cap.
    pub infeasible: usize,
}

impl SliceReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &SliceCell> {
        self.cells.iter().filter(|c| c.status == CellStatus::Mismatch)
    }

    pub fn is_consistent(&self) -> bool {
        self.mismatches().next().is_none()
    }
}

struct DegreeOutcome {
    cells: Vec<SliceCell>,
    infeasible: bool,
}

fn classify_degree(
    bounds: &Bounds,
    b: MultiDegree,
    j: usize,
    p_list: &[usize],
    opts: &SliceOptions,
) -> Result<DegreeOutcome> {
    let lattice = bounds.lattice();
    let status = bounds.vanishing_status(&b)?;
    let theorem = if status.vanishes() {
        None
    } else {
        theorem_prediction(lattice, &b)?
    };
    let has_prediction = status.vanishes() || theorem.is_some();
    let (oracle, infeasible) = if opts.check || !has_prediction {
        match betti_hochster_all(lattice, &b, &opts.cap) {
            Ok(v) => (Some(v), false),
            Err(Error::CapExceeded(_)) => (None, true),
            Err(e) => return Err(e),
        }
    } else {
        (None, false)
    };
    let cells = p_list
        .iter()
        .map(|&p| {
            let (classification, predicted) = match (status, &theorem) {
                (VanishingStatus::VanishUpper { .. }, _) => (Classification::VanishUpper, Some(0)),
                (VanishingStatus::VanishLower { .. }, _) => (Classification::VanishLower, Some(0)),
                (_, Some(t)) => (Classification::Theorem, Some(t.betti(p))),
                (_, None) if oracle.is_some() => (Classification::Oracle, None),
                _ => (Classification::Unknown, None),
            };
            let computed = oracle.as_ref().map(|v| v.get(p).copied().unwrap_or(0));
            let status = match (predicted, computed) {
                (Some(x), Some(y)) if x == y => CellStatus::Confirmed,
                (Some(_), Some(_)) => CellStatus::Mismatch,
                (Some(_), None) => CellStatus::Predicted,
                (None, Some(_)) => CellStatus::Computed,
                (None, None) => CellStatus::Unknown,
            };
            SliceCell {
                b: b.clone(),
                j,
                p,
                classification,
                predicted,
                oracle: computed,
                status,
            }
        })
        .collect();
    Ok(DegreeOutcome { cells, infeasible })
}

/// Every degree `b ≥ 0` with `|b| = dj`, each `p` in `p_list`.
pub fn verify_slice(
    bounds: &Bounds,
    j: usize,
    p_list: &[usize],
    opts: &SliceOptions,
) -> Result<SliceReport> {
    let lattice = bounds.lattice();
    let total = lattice.d() * j as u64;
    let degrees = MultiDegree::all_with_total(lattice.m() + 1, total);
    let outcomes = degrees
        .into_par_iter()
        .map(|b| classify_degree(bounds, b, j, p_list, opts))
        .collect::<Result<Vec<_>>>()?;
    let infeasible = outcomes.iter().filter(|o| o.infeasible).count();
    let l_tilde = if j >= bounds.threshold() {
        Some(bounds.l_tilde(j)?)
    } else {
        None
    };
    Ok(SliceReport {
        j,
        a_j: bounds.a(j),
        l_tilde,
        cells: outcomes.into_iter().flat_map(|o| o.cells).collect(),
        infeasible,
    })
}
