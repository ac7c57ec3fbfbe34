//! Exact rank over the rationals by fraction-free sparse elimination.
//!
//! Works on the columns of the matrix as the vectors being eliminated. Each
//! step picks the sparsest remaining vector and, within it, the pivot
//! position touched by the fewest other vectors. Updates are integer
//! combinations `p·v − a·w` followed by division by the content, so entries
//! stay exact without rational arithmetic.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::sparse::SparseMatrix;

type SparseVec = Vec<(usize, BigInt)>;

pub fn rank_rational(matrix: &SparseMatrix) -> usize {
    let mut vectors: Vec<Option<SparseVec>> = matrix
        .columns()
        .iter()
        .map(|col| {
            let v: SparseVec = col
                .iter()
                .filter(|&&(_, x)| x != 0)
                .map(|&(r, x)| (r, BigInt::from(x)))
                .collect();
            (!v.is_empty()).then_some(v)
        })
        .collect();

    // position -> vectors with a nonzero there
    let mut occupancy: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); matrix.rows()];
    for (k, v) in vectors.iter().enumerate() {
        for (r, _) in v.iter().flatten() {
            occupancy[*r].insert(k);
        }
    }

    let mut rank = 0;
    loop {
        let Some(pivot_vec) = vectors
            .iter()
            .enumerate()
            .filter_map(|(k, v)| v.as_ref().map(|v| (v.len(), k)))
            .min()
            .map(|(_, k)| k)
        else {
            break;
        };
        let pivot = vectors[pivot_vec].take().expect("active vector");
        for (r, _) in &pivot {
            occupancy[*r].remove(&pivot_vec);
        }
        let (pos, pivot_val) = pivot
            .iter()
            .min_by_key(|(r, _)| (occupancy[*r].len(), *r))
            .map(|(r, x)| (*r, x.clone()))
            .expect("nonempty vector");
        rank += 1;

        let targets: Vec<usize> = occupancy[pos].iter().copied().collect();
        for k in targets {
            let old = vectors[k].take().expect("active vector");
            let a = old
                .iter()
                .find(|(r, _)| *r == pos)
                .map(|(_, x)| x.clone())
                .expect("occupancy is consistent");
            let updated = eliminate(&old, &pivot, &pivot_val, &a);
            for (r, _) in &old {
                occupancy[*r].remove(&k);
            }
            for (r, _) in &updated {
                occupancy[*r].insert(k);
            }
            if !updated.is_empty() {
                vectors[k] = Some(updated);
            }
        }
    }
    rank
}

/// `(p/g)·v − (a/g)·w` with `g = gcd(p, a)`, divided by its content.
fn eliminate(v: &SparseVec, w: &SparseVec, p: &BigInt, a: &BigInt) -> SparseVec {
    let g = p.gcd(a);
    let pf = p / &g;
    let af = a / &g;
    let mut out: SparseVec = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j >= w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i >= v.len() || (j < w.len() && w[j].0 < v[i].0);
        let (r, x) = if take_v {
            i += 1;
            (v[i - 1].0, &pf * &v[i - 1].1)
        } else if take_w {
            j += 1;
            (w[j - 1].0, -(&af * &w[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (v[i - 1].0, &pf * &v[i - 1].1 - &af * &w[j - 1].1)
        };
        if !x.is_zero() {
            out.push((r, x));
        }
    }
    let content = out
        .iter()
        .fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if !content.is_zero() && content.abs() != BigInt::from(1) {
        for (_, x) in &mut out {
            *x /= &content;
        }
    }
    out
}
