//! Exact rational sparse linear algebra: ranks, kernels, echelon bases,
//! and subspace arithmetic. Pure functions of immutable inputs; outputs
//! are canonical (reduced row echelon everywhere) and therefore
//! reproducible byte for byte.

mod matrix;
mod rational;
mod subspace;

pub use matrix::{axpy, row_echelon, scale_in_place, sparse_get, SparseMatrix, SparseVec};
pub use rational::Rational;
pub use subspace::SubspaceBasis;

use crate::Result;

/// Reduced row-echelon basis of the row space of `m`.
pub fn rref(m: &SparseMatrix) -> SubspaceBasis {
    SubspaceBasis::from_spanning(m.cols(), m.to_rows())
}

/// Rank over Q.
pub fn rank(m: &SparseMatrix) -> usize {
    row_echelon(m.to_rows()).len()
}

/// Canonical basis of the null space `{x : m x = 0}`.
pub fn kernel_basis(m: &SparseMatrix) -> SubspaceBasis {
    let reduced = row_echelon(m.to_rows());
    SubspaceBasis::from_spanning(m.cols(), kernel_vectors(&reduced, m.cols()))
}

/// Raw kernel vectors read off a reduced echelon form: one per free
/// column `f`, supported on `f` and the pivot columns below it. Not
/// canonicalized; `kernel_basis` wraps this.
pub fn kernel_vectors(reduced: &[SparseVec], cols: usize) -> Vec<SparseVec> {
    let pivot_cols: Vec<usize> = reduced.iter().map(|r| r[0].0).collect();
    let is_pivot = {
        let mut mask = vec![false; cols];
        for &p in &pivot_cols {
            mask[p] = true;
        }
        mask
    };
    let mut out = Vec::with_capacity(cols - pivot_cols.len());
    for f in 0..cols {
        if is_pivot[f] {
            continue;
        }
        let mut v: SparseVec = Vec::new();
        for row in reduced {
            if let Some(c) = sparse_get(row, f) {
                v.push((row[0].0, -c));
            }
        }
        v.push((f, Rational::one()));
        v.sort_by_key(|(i, _)| *i);
        out.push(v);
    }
    out
}

pub fn subspace_sum(u: &SubspaceBasis, v: &SubspaceBasis) -> Result<SubspaceBasis> {
    u.sum(v)
}

pub fn subspace_intersect(u: &SubspaceBasis, v: &SubspaceBasis) -> Result<SubspaceBasis> {
    u.intersect(v)
}

pub fn quotient_dim(u: &SubspaceBasis, w: &SubspaceBasis) -> Result<usize> {
    u.quotient_dim(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn m(rows: usize, cols: usize, data: &[&[i64]]) -> SparseMatrix {
        assert_eq!(rows, data.len());
        SparseMatrix::from_entries(
            rows,
            cols,
            data.iter().enumerate().flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(move |(j, &x)| (i, j, r(x)))
            }),
        )
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = SparseMatrix::identity(3);
        let b = rref(&id);
        assert_eq!(b.dim(), 3);
        assert_eq!(b.dense_vectors()[0], vec![r(1), r(0), r(0)]);

        let z = SparseMatrix::zero(2, 5);
        let b = rref(&z);
        assert_eq!(b.dim(), 0);
        assert_eq!(b.ambient_dim(), 5);
    }

    #[test]
    fn rref_dependent_rows() {
        // Hand Gaussian elimination of [[1,2,0],[2,4,0],[0,1,0]] leaves
        // the first two coordinate axes.
        let a = m(3, 3, &[&[1, 2, 0], &[2, 4, 0], &[0, 1, 0]]);
        let b = rref(&a);
        assert_eq!(b.dim(), 2);
        assert_eq!(b.dense_vectors()[0], vec![r(1), r(0), r(0)]);
        assert_eq!(b.dense_vectors()[1], vec![r(0), r(1), r(0)]);
    }

    #[test]
    fn rank_basics() {
        assert_eq!(rank(&SparseMatrix::identity(4)), 4);
        assert_eq!(rank(&SparseMatrix::zero(3, 7)), 0);
    }

    #[test]
    fn kernel_basics() {
        assert_eq!(kernel_basis(&SparseMatrix::identity(3)).dim(), 0);
        let k = kernel_basis(&SparseMatrix::zero(3, 4));
        assert_eq!(k.dim(), 4);
        // Kernel of [1 1 1] is the plane x0 = -x1 - x2.
        let k = kernel_basis(&m(1, 3, &[&[1, 1, 1]]));
        assert_eq!(k.dim(), 2);
        for v in k.vectors() {
            let s = v.iter().fold(Rational::zero(), |acc, (_, x)| &acc + x);
            assert!(s.is_zero());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity(entries in proptest::collection::vec((0usize..5, 0usize..6, -4i64..=4), 0..18)) {
            let mat = SparseMatrix::from_entries(5, 6, entries.into_iter().map(|(i, j, v)| (i, j, r(v))));
            prop_assert_eq!(rank(&mat) + kernel_basis(&mat).dim(), 6);
        }

        #[test]
        fn rref_row_order_independent(entries in proptest::collection::vec((0usize..4, 0usize..5, -4i64..=4), 0..14), perm in 0usize..24) {
            let mat = SparseMatrix::from_entries(4, 5, entries.into_iter().map(|(i, j, v)| (i, j, r(v))));
            let mut rows = mat.to_rows();
            // Apply one of the 4! row permutations.
            let mut order: Vec<usize> = (0..4).collect();
            let mut p = perm;
            for i in (1..4).rev() {
                order.swap(i, p % (i + 1));
                p /= i + 1;
            }
            let permuted: Vec<_> = order.into_iter().map(|i| rows[i].clone()).collect();
            rows.sort();
            let a = SubspaceBasis::from_spanning(5, permuted);
            let b = rref(&mat);
            prop_assert_eq!(a, b.clone());
            // Idempotence: reducing the reduced basis changes nothing.
            let again = SubspaceBasis::from_spanning(5, b.vectors().to_vec());
            prop_assert_eq!(again, b);
        }

        #[test]
        fn grassmann_identity(
            e1 in proptest::collection::vec((0usize..3, 0usize..4, -3i64..=3), 0..9),
            e2 in proptest::collection::vec((0usize..3, 0usize..4, -3i64..=3), 0..9),
        ) {
            let u = rref(&SparseMatrix::from_entries(3, 4, e1.into_iter().map(|(i, j, v)| (i, j, r(v)))));
            let v = rref(&SparseMatrix::from_entries(3, 4, e2.into_iter().map(|(i, j, v)| (i, j, r(v)))));
            let sum = subspace_sum(&u, &v).unwrap();
            let inter = subspace_intersect(&u, &v).unwrap();
            // Two routes: Zassenhaus intersection vs rank of the stacked spanning set.
            prop_assert_eq!(sum.dim() + inter.dim(), u.dim() + v.dim());
            prop_assert!(sum.contains_subspace(&u));
            prop_assert!(sum.contains_subspace(&v));
            prop_assert!(u.contains_subspace(&inter));
            prop_assert!(v.contains_subspace(&inter));
        }
    }
}
