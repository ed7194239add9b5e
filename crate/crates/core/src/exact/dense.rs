//! Dense routines for small matrices (Gram matrices, Killing forms).

use num_bigint::BigInt;
use num_traits::Zero;

use super::scalar::{common_denominator, Scalar};
use super::sparse::SparseMatrix;
use super::ExactError;

/// Largest dimension handled by the dense routines.
pub const DENSE_LIMIT: usize = 512;

fn check_dense(m: &SparseMatrix) -> Result<(), ExactError> {
    if m.rows() > DENSE_LIMIT || m.cols() > DENSE_LIMIT {
        return Err(ExactError::TooLarge { rows: m.rows(), cols: m.cols() });
    }
    Ok(())
}

/// Inverse by Gauss-Jordan elimination.
pub fn inverse(m: &SparseMatrix) -> Result<SparseMatrix, ExactError> {
    check_dense(m)?;
    let n = m.rows();
    if n != m.cols() {
        return Err(ExactError::NotSquare);
    }
    // Block-diagonal fast path: a diagonal matrix is inverted entrywise.
    if m.triplets().all(|(r, c, _)| r == c) {
        let mut diag = Vec::with_capacity(n);
        for i in 0..n {
            diag.push(m.get(i, i).recip().ok_or(ExactError::Singular)?);
        }
        return Ok(SparseMatrix::diagonal(&diag));
    }
    let mut a = m.to_dense();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(ExactError::Singular)?;
        a.swap(col, p);
        inv.swap(col, p);
        let pinv = a[col][col].recip().unwrap();
        for j in 0..n {
            a[col][j] *= &pinv;
            inv[col][j] *= &pinv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                if !a[col][j].is_zero() {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
                if !inv[col][j].is_zero() {
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Ok(SparseMatrix::from_dense(&inv))
}

/// Inertia `(positives, negatives, zeros)` of a symmetric matrix, by exact
/// symmetric elimination with symmetric pivoting.
pub fn ldl_signature(b: &SparseMatrix) -> Result<(usize, usize, usize), ExactError> {
    check_dense(b)?;
    if !b.is_symmetric() {
        return Err(ExactError::NotSymmetric);
    }
    let n = b.rows();
    let mut a = b.to_dense();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0usize, 0usize);
    while !active.is_empty() {
        let diag = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let k = match diag {
            Some(k) => k,
            None => {
                // All active diagonals vanish: find an off-diagonal entry and
                // replace row/col i by i + j, making a[i][i] = 2 a[i][j] != 0.
                let pair = active.iter().copied().find_map(|i| {
                    active.iter().copied().find(|&j| j != i && !a[i][j].is_zero()).map(|j| (i, j))
                });
                let Some((i, j)) = pair else { break };
                for &t in &active {
                    let s = &a[i][t] + &a[j][t];
                    a[i][t] = s;
                }
                for &t in &active {
                    let s = &a[t][i] + &a[t][j];
                    a[t][i] = s;
                }
                i
            }
        };
        let d = a[k][k].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != k);
        let dinv = d.recip().unwrap();
        for &i in &active {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] * &dinv;
            for &j in &active {
                if !a[k][j].is_zero() {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Ok((pos, neg, n - pos - neg))
}

/// Rank by fraction-free (Bareiss) elimination on the integer matrix
/// obtained by clearing row denominators.
pub fn rank_fraction_free(m: &SparseMatrix) -> Result<usize, ExactError> {
    check_dense(m)?;
    let mut a: Vec<Vec<BigInt>> = m
        .to_dense()
        .into_iter()
        .map(|row| {
            let l = common_denominator(row.iter());
            row.iter().map(|x| (x.numer() * &l) / x.denom()).collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::from(1);
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::elim::rank;
    use proptest::prelude::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn signature_examples() {
        assert_eq!(ldl_signature(&SparseMatrix::identity(4)).unwrap(), (4, 0, 0));
        assert_eq!(ldl_signature(&SparseMatrix::diagonal(&[q(1), q(-1), q(0)])).unwrap(), (1, 1, 1));
        // hyperbolic plane has zero diagonal
        let h = SparseMatrix::from_ints(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(ldl_signature(&h).unwrap(), (1, 1, 0));
        let ns = SparseMatrix::from_ints(&[vec![0, 1], vec![0, 0]]);
        assert!(matches!(ldl_signature(&ns), Err(ExactError::NotSymmetric)));
    }

    #[test]
    fn inverse_round_trip() {
        let m = SparseMatrix::from_ints(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = SparseMatrix::from_ints(&[vec![1, 2], vec![2, 4]]);
        assert!(matches!(inverse(&sing), Err(ExactError::Singular)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn bareiss_agrees_with_sparse(r in 1usize..12, c in 1usize..12, seed in proptest::collection::vec(-2i64..=2, 144)) {
            let m = SparseMatrix::from_triplets(r, c, (0..r).flat_map(|i| (0..c).map(move |j| (i, j))).map(|(i, j)| (i, j, Scalar::new(seed[i * 12 + j], 1 + (i as i64 % 3)))));
            prop_assert_eq!(rank_fraction_free(&m).unwrap(), rank(&m));
        }

        #[test]
        fn signature_of_congruent_diagonal(d in proptest::collection::vec(-2i64..=2, 1..8)) {
            let n = d.len();
            let diag = SparseMatrix::diagonal(&d.iter().map(|&x| q(x)).collect::<Vec<_>>());
            // P^T D P with unit upper-triangular P preserves inertia
            let p = SparseMatrix::from_triplets(n, n, (0..n).flat_map(|i| (i..n).map(move |j| (i, j, if i == j { q(1) } else { q(((i + 2 * j) % 3) as i64 - 1) }))));
            let b = p.transpose().mul(&diag).mul(&p);
            let expect = (d.iter().filter(|x| **x > 0).count(), d.iter().filter(|x| **x < 0).count(), d.iter().filter(|x| **x == 0).count());
            prop_assert_eq!(ldl_signature(&b).unwrap(), expect);
        }
    }
}
