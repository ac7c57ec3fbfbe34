//! Rank over a prime field, used only to cross-check the rational rank.

use rand::Rng;

use super::sparse::SparseMatrix;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

/// A uniformly chosen prime in `[2^30, 2^31)`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.gen_range(1u64 << 30..1u64 << 31) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Dense Gaussian elimination mod `p`. Requires `p < 2^32`.
pub fn rank_mod_p(matrix: &SparseMatrix, p: u64) -> usize {
    assert!(p < 1 << 32 && is_prime(p));
    let to_field = |x: i64| x.rem_euclid(p as i64) as u64;
    let mut rows: Vec<Vec<u64>> = matrix
        .to_dense()
        .into_iter()
        .map(|r| r.into_iter().map(to_field).collect())
        .collect();
    let ncols = matrix.cols();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1 << 30));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let p = random_prime(&mut rng);
            assert!(p >= 1 << 30 && is_prime(p));
        }
    }

    #[test]
    fn rank_detects_dependence_mod_small_prime() {
        // det = 6: full rank over Q and mod 5, rank 1 mod 3 or mod 2
        let m = SparseMatrix::from_columns(2, vec![vec![(0, 2), (1, 0)], vec![(0, 0), (1, 3)]]);
        let m = SparseMatrix::from_columns(
            2,
            m.columns()
                .iter()
                .map(|c| c.iter().copied().filter(|&(_, x)| x != 0).collect())
                .collect(),
        );
        assert_eq!(rank_mod_p(&m, 5), 2);
        assert_eq!(rank_mod_p(&m, 3), 1);
        assert_eq!(rank_mod_p(&m, 2), 1);
    }
}
