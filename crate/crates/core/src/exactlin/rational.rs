//! Rank of integer matrices over the rationals.
//!
//! Used for ranks of subgroups of free abelian groups, where multiplicities
//! can grow under iteration and must not be reduced mod p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Rank over Q of the given integer row vectors (all of equal length).
pub fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), width);
            r.iter().cloned().map(BigRational::from_integer).collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..width {
        let Some(pr) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let pivot = m[rank][c].clone();
        for i in 0..m.len() {
            if i == rank || m[i][c].is_zero() {
                continue;
            }
            let k = &m[i][c] / &pivot;
            for j in c..width {
                let t = &k * &m[rank][j];
                m[i][j] -= t;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rational_rank(&[]), 0);
        assert_eq!(rational_rank(&rows(&[&[1, 1], &[1, 1]])), 1);
        assert_eq!(rational_rank(&rows(&[&[2, 0], &[0, 2]])), 2);
        // Dependent over Q although independent mod 2 would say otherwise.
        assert_eq!(rational_rank(&rows(&[&[1, 1], &[1, -1]])), 2);
        assert_eq!(rational_rank(&rows(&[&[0, 0, 0]])), 0);
    }
}
