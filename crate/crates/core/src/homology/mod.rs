//! Reduced simplicial homology over the rationals and Hochster's formula
//! `β_{p,b} = dim H̃_{p-1}(Δ_b)`.

pub mod modp;
mod rank;
mod sparse;

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

pub use modp::{is_prime, random_prime, rank_mod_p};
pub use rank::rank_rational;
pub use sparse::SparseMatrix;

use crate::complex::{EnumerationCap, Face, FaceSet, HochsterComplex};
use crate::error::{Error, Result};
use crate::lattice::{MultiDegree, Veronese};

/// How a Betti number was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Oracle,
    MorseBound,
    Theorem,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::MorseBound => "morse_bound",
            Method::Theorem => "theorem",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiRecord {
    pub p: usize,
    pub b: MultiDegree,
    pub value: u64,
    pub method: Method,
}

/// Augmented simplicial chain complex with ±1 boundary matrices.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    faces_by_card: Vec<Vec<Face>>,
    // boundaries[k - 1]: cardinality-k chains -> cardinality-(k-1) chains
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplexData {
    /// Boundary with sign `(-1)^k` for dropping the `k`-th smallest vertex;
    /// every vertex maps to the empty face with coefficient 1.
    pub fn build(faces: &FaceSet) -> Result<Self> {
        let top = faces.max_cardinality();
        let faces_by_card: Vec<Vec<Face>> = (0..=top)
            .map(|k| faces.with_cardinality(k).to_vec())
            .collect();
        if faces_by_card[0] != [Face::empty()] {
            return Err(Error::NotDownwardClosed("the empty face is missing".into()));
        }
        let boundaries = (1..=top)
            .map(|k| {
                let index: HashMap<&Face, usize> = faces_by_card[k - 1]
                    .iter()
                    .enumerate()
                    .map(|(i, f)| (f, i))
                    .collect();
                let columns = faces_by_card[k]
                    .iter()
                    .map(|f| {
                        let mut col = f
                            .facets()
                            .map(|(pos, g)| {
                                let row = *index.get(&g).ok_or_else(|| {
                                    Error::NotDownwardClosed(format!("{f} lacks its facet {g}"))
                                })?;
                                Ok((row, if pos % 2 == 0 { 1 } else { -1 }))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        col.sort_unstable();
                        Ok(col)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SparseMatrix::from_columns(faces_by_card[k - 1].len(), columns))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            faces_by_card,
            boundaries,
        })
    }

    /// Faces of dimension `q ≥ -1`.
    pub fn faces(&self, q: isize) -> &[Face] {
        usize::try_from(q + 1)
            .ok()
            .and_then(|k| self.faces_by_card.get(k))
            .map_or(&[], Vec::as_slice)
    }

    pub fn top_dim(&self) -> isize {
        self.faces_by_card.len() as isize - 2
    }

    /// `∂_q : C_q → C_{q-1}` for `q ≥ 0`; `None` beyond the top dimension.
    pub fn boundary(&self, q: usize) -> Option<&SparseMatrix> {
        self.boundaries.get(q)
    }

    /// Rank of `∂_q`; zero for `q < 0` and above the top dimension.
    pub fn boundary_rank(&self, q: isize) -> usize {
        usize::try_from(q)
            .ok()
            .and_then(|q| self.boundary(q))
            .map_or(0, rank_rational)
    }

    /// Whether every composition `∂_{q-1} ∘ ∂_q` vanishes.
    pub fn boundary_squares_to_zero(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].product_is_zero(&w[1]))
    }

    /// Reduced Betti numbers `dim H̃_q` for `q = -1..=top_dim`, indexed by `q + 1`.
    pub fn reduced_betti_numbers(&self) -> Vec<u64> {
        let ranks: Vec<usize> = self.boundaries.par_iter().map(rank_rational).collect();
        let rank = |q: isize| usize::try_from(q).ok().and_then(|q| ranks.get(q).copied()).unwrap_or(0);
        (-1..=self.top_dim())
            .map(|q| (self.faces(q).len() - rank(q) - rank(q + 1)) as u64)
            .collect()
    }

    /// Checks `Σ (-1)^q f_q = Σ (-1)^q dim H̃_q` over `q ≥ -1`.
    pub fn euler_characteristic_consistent(&self, reduced: &[u64]) -> bool {
        let alternating = |xs: &mut dyn Iterator<Item = i64>| {
            xs.enumerate()
                .map(|(k, x)| if k % 2 == 0 { -x } else { x })
                .sum::<i64>()
        };
        let faces = alternating(&mut self.faces_by_card.iter().map(|l| l.len() as i64));
        let homology = alternating(&mut reduced.iter().map(|&h| h as i64));
        faces == homology
    }

    /// Compares every boundary rank over `Q` with its rank modulo `prime`.
    pub fn cross_check_mod_p(&self, prime: u64) -> Result<()> {
        for (q, m) in self.boundaries.iter().enumerate() {
            let exact = rank_rational(m);
            let modular = rank_mod_p(m, prime);
            if exact != modular {
                return Err(Error::Internal(format!(
                    "rank of boundary {q}: {exact} over Q but {modular} mod {prime}"
                )));
            }
        }
        Ok(())
    }
}

/// `dim H̃_q`, zero when there are no `q`-faces.
pub fn reduced_betti(cc: &ChainComplexData, q: isize) -> u64 {
    if q < -1 || q > cc.top_dim() {
        return 0;
    }
    (cc.faces(q).len() - cc.boundary_rank(q) - cc.boundary_rank(q + 1)) as u64
}

/// Every `β_{p,b}` via the explicit complex, indexed by `p` for
/// `p = 0..=max face cardinality`. Larger `p` are zero.
pub fn betti_hochster_all(
    lattice: &Veronese,
    b: &MultiDegree,
    cap: &EnumerationCap,
) -> Result<Vec<u64>> {
    let faces = HochsterComplex::new(lattice, b.clone())?.enumerate(cap)?;
    let cc = ChainComplexData::build(&faces)?;
    Ok(cc.reduced_betti_numbers())
}

/// `β_{p,b}` from the reduced homology of `Δ_b` in degree `p - 1`.
pub fn betti_hochster(
    lattice: &Veronese,
    b: &MultiDegree,
    p: usize,
    cap: &EnumerationCap,
) -> Result<BettiRecord> {
    let faces = HochsterComplex::new(lattice, b.clone())?.enumerate(cap)?;
    let cc = ChainComplexData::build(&faces)?;
    Ok(BettiRecord {
        p,
        b: b.clone(),
        value: reduced_betti(&cc, p as isize - 1),
        method: Method::Oracle,
    })
}
