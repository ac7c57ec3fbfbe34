//! Exact Betti numbers on the sharp line `b_0 = A_{p+1} - 1`.
//!
//! On that line the anti-star of vertex 1 consists of `(p-1)`-faces only, one
//! for each member of a constrained subset family `D` of a single block of
//! the lex order, so `Δ_b` is a wedge of `#D` spheres `S^{p-1}`. The module
//! also covers the `p = C(d+1, 2)` edge for `m = 2` and the witnesses showing
//! `A_{p+1}` cannot be lowered.

mod slice;

pub use slice::{verify_slice, CellStatus, Classification, SliceCell, SliceOptions, SliceReport};



use itertools::Itertools;

use crate::complex::{Face, FaceSet};
use crate::error::{Error, Result};
use crate::homology::{BettiRecord, Method};
use crate::lattice::{binomial, MultiDegree, Veronese};
use crate::morse::{augmented_matching, MorseReport};

fn choose(n: usize, k: usize) -> usize {
    binomial(n as u64, k as u64).expect("small binomial") as usize
}

/// `C(d+m-1, m)`: the number of points with positive 0-th coordinate.
pub fn positive_block_end(lattice: &Veronese) -> usize {
    choose(lattice.d() as usize + lattice.m() - 1, lattice.m())
}

/// The unique `r ≥ 1` with `C(r+m-2, m) < p+1 ≤ C(r+m-1, m)`.
pub fn block_parameter(m: usize, p: usize) -> Result<usize> {
    let target = p + 1;
    let hits: Vec<usize> = (1..=target + 1)
        .filter(|&r| choose(r + m - 2, m) < target && target <= choose(r + m - 1, m))
        .collect();
    match hits.as_slice() {
        [r] => Ok(*r),
        _ => Err(Error::Internal(format!("block parameter for p = {p}, m = {m}: {hits:?}"))),
    }
}

/// Members of `D` together with the block they are drawn from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DWitness {
    pub p: usize,
    pub b: MultiDegree,
    pub r: usize,
    /// Inclusive 1-based index range `C(r+m-2, m)+1 ..= C(r+m-1, m)`.
    pub block: (usize, usize),
    pub subset_size: usize,
    pub members: Vec<Face>,
}

impl DWitness {
    pub fn cardinality(&self) -> usize {
        self.members.len()
    }
}

/// Checks `|b| = d(p+1)` and `b_0 = A_{p+1} - 1`.
fn check_sharp_line(lattice: &Veronese, p: usize, b: &MultiDegree) -> Result<()> {
    if b.len() != lattice.m() + 1 {
        return Err(Error::NotInSemigroup(b.coords().to_vec()));
    }
    if b.total() != lattice.d() * (p as u64 + 1) {
        return Err(Error::HypothesisViolated(format!(
            "|b| = {} but d(p+1) = {}",
            b.total(),
            lattice.d() * (p as u64 + 1)
        )));
    }
    let expected = lattice.prefix_coord_sum(0, p + 1) - 1;
    if b.coord(0) != expected {
        return Err(Error::HypothesisViolated(format!(
            "b_0 = {} but A_(p+1) - 1 = {expected}",
            b.coord(0)
        )));
    }
    Ok(())
}

/// Enumerates `D` for `m ≤ p ≤ C(d+m-1, m) - 1` on the sharp line: subsets
/// `I` of the block of size `p+1-C(r+m-2, m)` with
/// `b_t - P_t - 1 ≤ Σ_{i∈I} a^i_t ≤ b_t - P_t` for `1 ≤ t ≤ m-1`, where
/// `P_t` sums coordinate `t` over the points before the block.
pub fn compute_d(lattice: &Veronese, p: usize, b: &MultiDegree) -> Result<DWitness> {
    let m = lattice.m();
    let end = positive_block_end(lattice);
    if p < m || p + 1 > end {
        return Err(Error::HypothesisViolated(format!(
            "p = {p} outside {m}..={}",
            end - 1
        )));
    }
    check_sharp_line(lattice, p, b)?;
    let r = block_parameter(m, p)?;
    let before = choose(r + m - 2, m);
    let block = (before + 1, choose(r + m - 1, m));
    let subset_size = p + 1 - before;
    let windows: Vec<(i64, i64)> = (1..m)
        .map(|t| {
            let hi = b.coord(t) as i64 - lattice.prefix_coord_sum(t, before) as i64;
            (hi - 1, hi)
        })
        .collect();
    let points = lattice.points();
    let members = (block.0..=block.1)
        .combinations(subset_size)
        .filter(|subset| {
            windows.iter().enumerate().all(|(k, &(lo, hi))| {
                let s: i64 = subset.iter().map(|&i| points[i - 1].coord(k + 1) as i64).sum();
                lo <= s && s <= hi
            })
        })
        .map(|subset| Face::new(subset).expect("distinct indices"))
        .collect();
    Ok(DWitness {
        p,
        b: b.clone(),
        r,
        block,
        subset_size,
        members,
    })
}

/// `Δ_b` is a wedge of `count` spheres of dimension `p - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgePrediction {
    pub p: usize,
    pub b: MultiDegree,
    pub count: u64,
}

impl WedgePrediction {
    /// Predicted `β_{q,b}`: `count` at `q = p`, zero elsewhere.
    pub fn betti(&self, q: usize) -> u64 {
        if q == self.p {
            self.count
        } else {
            0
        }
    }

    pub fn record(&self) -> BettiRecord {
        BettiRecord {
            p: self.p,
            b: self.b.clone(),
            value: self.count,
            method: Method::Theorem,
        }
    }
}

pub fn predict_betti_wedge(lattice: &Veronese, p: usize, b: &MultiDegree) -> Result<WedgePrediction> {
    let d = compute_d(lattice, p, b)?;
    Ok(WedgePrediction {
        p,
        b: b.clone(),
        count: d.cardinality() as u64,
    })
}

fn require_m2(lattice: &Veronese) -> Result<()> {
    if lattice.m() != 2 {
        return Err(Error::HypothesisViolated(format!("needs m = 2, got m = {}", lattice.m())));
    }
    Ok(())
}

/// For `m = 2`: the `b_1` window `[Σ_{i≤p+1} a^i_2, 1 + Σ_{i≤p+1} a^i_1]`
/// outside which `#D = 0` on the sharp line.
pub fn nonvanishing_range_m2(lattice: &Veronese, p: usize) -> Result<(u64, u64)> {
    require_m2(lattice)?;
    let end = positive_block_end(lattice);
    if p < 2 || p + 1 > end {
        return Err(Error::HypothesisViolated(format!("p = {p} outside 2..={}", end - 1)));
    }
    Ok((
        lattice.prefix_coord_sum(2, p + 1),
        1 + lattice.prefix_coord_sum(1, p + 1),
    ))
}

/// `p = C(d+1, 2)` for `m = 2`.
pub fn extremal_p(lattice: &Veronese) -> usize {
    choose(lattice.d() as usize + 1, 2)
}

/// The `b_1` window `[Σ_{i≤p} a^i_1 + 1, Σ_{i≤p+1} a^i_1]` for `p = C(d+1, 2)`.
pub fn extremal_range_m2(lattice: &Veronese) -> Result<(u64, u64)> {
    require_m2(lattice)?;
    let p = extremal_p(lattice);
    Ok((
        lattice.prefix_coord_sum(1, p) + 1,
        lattice.prefix_coord_sum(1, p + 1),
    ))
}

/// `β_{p,b}` for `m = 2`, `p = C(d+1, 2)` on the sharp line: 1 inside the
/// window, 0 outside.
pub fn extremal_case_m2(lattice: &Veronese, b: &MultiDegree) -> Result<BettiRecord> {
    require_m2(lattice)?;
    let p = extremal_p(lattice);
    check_sharp_line(lattice, p, b)?;
    let (lo, hi) = extremal_range_m2(lattice)?;
    Ok(BettiRecord {
        p,
        b: b.clone(),
        value: u64::from((lo..=hi).contains(&b.coord(1))),
        method: Method::Theorem,
    })
}

/// Extends the vertex matching over 1 by the single pair
/// `{2..p} < {2..p, x}` used for the extremal case, and reports the
/// critical cells. `faces` must be `Δ_b`.
pub fn extremal_certificate_m2(
    lattice: &Veronese,
    b: &MultiDegree,
    faces: &FaceSet,
) -> Result<MorseReport> {
    require_m2(lattice)?;
    let p = extremal_p(lattice);
    check_sharp_line(lattice, p, b)?;
    let d = lattice.d() as i64;
    let b1 = b.coord(1) as i64;
    let s = lattice.prefix_coord_sum(1, p) as i64;
    let s_next = lattice.prefix_coord_sum(1, p + 1) as i64;
    let base = Face::range(2, p);
    // index of the first anti-star face above {2..p}, per case
    let partner = if (s + 1..=s_next).contains(&b1) || b1 == s {
        Some(p as i64 + 1 + d - b1 + s)
    } else if b1 == s_next + 1 {
        Some(p as i64 + 2 + d - b1 + s)
    } else {
        None
    };
    let extra = match partner {
        Some(x) => {
            let x = usize::try_from(x)
                .ok()
                .filter(|&x| x >= 1 && x <= lattice.n())
                .ok_or_else(|| Error::Internal(format!("partner index {x} out of range")))?;
            let upper = base.with(x);
            if !faces.contains(&upper) {
                return Err(Error::Internal(format!("{upper} is not a face of Δ_b")));
            }
            vec![(base, upper)]
        }
        None => Vec::new(),
    };
    augmented_matching(faces, 1, extra)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `1 ≤ p ≤ m-1`
    Low,
    /// `m ≤ p ≤ C(d+m-1, m) - 1`
    Middle,
    /// `C(d+m-1, m) ≤ p ≤ C(d+m-1, m) + m - 2`
    High,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpnessWitness {
    pub p: usize,
    pub b: MultiDegree,
    pub predicted_betti: u64,
    pub regime: Regime,
}

/// Largest `p` with a sharpness witness: `C(d+m-1, m) + m - 2`.
pub fn sharpness_p_max(lattice: &Veronese) -> usize {
    positive_block_end(lattice) + lattice.m() - 2
}

/// `b_0 = A_{p+1} - 1`, `b_s = Σ_{i≤p+1} a^i_s` for `1 ≤ s < m`, and
/// `b_m = Σ_{i≤p+1} a^i_m + 1`.
pub fn sharpness_witness(lattice: &Veronese, p: usize) -> Result<SharpnessWitness> {
    let m = lattice.m();
    let end = positive_block_end(lattice);
    if p < 1 || p > sharpness_p_max(lattice) {
        return Err(Error::HypothesisViolated(format!(
            "p = {p} outside 1..={}",
            sharpness_p_max(lattice)
        )));
    }
    let mut coords: Vec<u64> = (0..=m).map(|s| lattice.prefix_coord_sum(s, p + 1)).collect();
    coords[0] -= 1;
    coords[m] += 1;
    let b = MultiDegree::new(coords);
    let (regime, predicted_betti) = if p < m {
        (Regime::Low, p as u64)
    } else if p < end {
        (Regime::Middle, predict_betti_wedge(lattice, p, &b)?.count)
    } else {
        (Regime::High, 1)
    };
    Ok(SharpnessWitness {
        p,
        b,
        predicted_betti,
        regime,
    })
}

/// Critical cells expected from the matching that certifies a witness:
/// `{1}` plus `predicted_betti` cells of dimension `p - 1`.
pub fn sharpness_expected_critical(lattice: &Veronese, w: &SharpnessWitness) -> Result<Vec<Face>> {
    let m = lattice.m();
    let p = w.p;
    let mut cells = vec![Face::vertex(1)];
    match w.regime {
        Regime::Low => {
            // p-subsets of {2..p+1} ∪ {m+1} containing 2
            let ground: Vec<usize> = (2..=p + 1).chain([m + 1]).collect();
            cells.extend(
                ground
                    .into_iter()
                    .combinations(p)
                    .filter(|s| s.contains(&2))
                    .map(|s| Face::new(s).expect("distinct")),
            );
        }
        Regime::Middle => {
            let d = compute_d(lattice, p, &w.b)?;
            let head = Face::range(2, d.block.0 - 1);
            cells.extend(d.members.iter().map(|i| {
                Face::new(head.indices().chain(i.indices())).expect("disjoint")
            }));
        }
        Regime::High => {
            let c = positive_block_end(lattice);
            cells.push(Face::range(2, p + 1).without(c + 1).with(c + m));
        }
    }
    cells.sort();
    Ok(cells)
}

/// Runs the matching that certifies a witness on `faces = Δ_b`.
pub fn sharpness_certificate(
    lattice: &Veronese,
    w: &SharpnessWitness,
    faces: &FaceSet,
) -> Result<MorseReport> {
    let m = lattice.m();
    let p = w.p;
    let extra: Vec<(Face, Face)> = match w.regime {
        Regime::Low => {
            let upper = Face::range(2, p + 1).with(m + 1);
            vec![(upper.without(2), upper)]
        }
        Regime::Middle => Vec::new(),
        Regime::High => {
            let c = positive_block_end(lattice);
            let head = Face::range(2, c);
            let in_f = |f: &Face| head.is_subset_of(f);
            faces
                .iter()
                .filter(|t| in_f(t) && !t.contains(c + 1))
                .filter_map(|t| {
                    let up = t.with(c + 1);
                    faces.contains(&up).then(|| (t.clone(), up))
                })
                .collect()
        }
    };
    augmented_matching(faces, 1, extra)
}

/// A closed-form prediction for every `β_{q,b}` at one degree: `value` at
/// `q = p` and zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub p: usize,
    pub value: u64,
    pub source: &'static str,
}

impl Prediction {
    pub fn betti(&self, q: usize) -> u64 {
        if q == self.p {
            self.value
        } else {
            0
        }
    }
}

/// Finds a theorem covering `b` on its own level `j = |b|/d`, with `p = j-1`:
/// the wedge theorem, the `m = 2` extremal case, or a low/high sharpness
/// witness. `None` if no theorem applies.
pub fn theorem_prediction(lattice: &Veronese, b: &MultiDegree) -> Result<Option<Prediction>> {
    let j = lattice.level(b)?;
    if j < 2 {
        return Ok(None);
    }
    let p = j - 1;
    if check_sharp_line(lattice, p, b).is_err() {
        return Ok(None);
    }
    let m = lattice.m();
    let end = positive_block_end(lattice);
    if (m..end).contains(&p) {
        let w = predict_betti_wedge(lattice, p, b)?;
        return Ok(Some(Prediction {
            p,
            value: w.count,
            source: "wedge",
        }));
    }
    if m == 2 && p == extremal_p(lattice) {
        let r = extremal_case_m2(lattice, b)?;
        return Ok(Some(Prediction {
            p,
            value: r.value,
            source: "extremal",
        }));
    }
    if p <= sharpness_p_max(lattice) {
        let w = sharpness_witness(lattice, p)?;
        if w.b == *b {
            return Ok(Some(Prediction {
                p,
                value: w.predicted_betti,
                source: "sharpness",
            }));
        }
    }
    Ok(None)
}
