//! Subspaces of Q^n as reduced row-echelon bases.
//!
//! Filtration spaces, kernels and images all live here. Keeping every
//! basis in reduced echelon form makes equality of subspaces literal
//! equality of the representation.

use super::matrix::{axpy, row_echelon, sparse_get, SparseVec};
use super::rational::Rational;
use crate::{Error, Result};

/// A subspace of a coordinate space, stored as a reduced row-echelon
/// basis: pivot columns strictly increasing, each leading coefficient 1,
/// pivot columns cleared in all other vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<SparseVec>,
}

impl SubspaceBasis {
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: (0..ambient_dim)
                .map(|i| vec![(i, Rational::one())])
                .collect(),
        }
    }

    /// Row-reduces a spanning set into a canonical basis.
    pub fn from_spanning(ambient_dim: usize, spanning: Vec<SparseVec>) -> Self {
        for v in &spanning {
            if let Some((idx, _)) = v.last() {
                assert!(*idx < ambient_dim, "coordinate {idx} out of ambient space");
            }
        }
        SubspaceBasis {
            ambient_dim,
            vectors: row_echelon(spanning),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.vectors.iter().map(|v| v[0].0).collect()
    }

    pub fn dense_vectors(&self) -> Vec<Vec<Rational>> {
        self.vectors
            .iter()
            .map(|v| {
                let mut row = vec![Rational::zero(); self.ambient_dim];
                for (i, x) in v {
                    row[*i] = x.clone();
                }
                row
            })
            .collect()
    }

    /// True when every basis vector is a coordinate axis. Such subspaces
    /// are spanned by a subset of the standard basis.
    pub fn is_monomial(&self) -> bool {
        self.vectors.iter().all(|v| v.len() == 1)
    }

    /// Residual of `v` after eliminating all pivot coordinates of this
    /// basis. Zero iff `v` lies in the subspace.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        for row in &self.vectors {
            let pcol = row[0].0;
            if let Some(c) = sparse_get(&v, pcol) {
                let c = -c;
                v = axpy(&v, &c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        other.ambient_dim == self.ambient_dim && other.vectors.iter().all(|v| self.contains(v))
    }

    /// Sum of subspaces in the same ambient space.
    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        let mut rows = self.vectors.clone();
        rows.extend(other.vectors.iter().cloned());
        Ok(SubspaceBasis::from_spanning(self.ambient_dim, rows))
    }

    /// Intersection via the Zassenhaus double-block trick.
    pub fn intersect(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        let n = self.ambient_dim;
        let mut rows: Vec<SparseVec> = Vec::with_capacity(self.dim() + other.dim());
        for v in &self.vectors {
            let mut row = v.clone();
            row.extend(v.iter().map(|(i, x)| (i + n, x.clone())));
            rows.push(row);
        }
        for v in &other.vectors {
            rows.push(v.clone());
        }
        let reduced = row_echelon(rows);
        let mut inter: Vec<SparseVec> = Vec::new();
        for row in reduced {
            if row[0].0 >= n {
                inter.push(row.into_iter().map(|(i, x)| (i - n, x)).collect());
            }
        }
        Ok(SubspaceBasis::from_spanning(n, inter))
    }

    /// `dim(self / sub)`, checking that `sub` really is a subspace.
    pub fn quotient_dim(&self, sub: &SubspaceBasis) -> Result<usize> {
        if self.ambient_dim != sub.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, sub.ambient_dim));
        }
        if !self.contains_subspace(sub) {
            return Err(Error::NotSubspace);
        }
        Ok(self.dim() - sub.dim())
    }

    /// The annihilator `{a : a(v) = 0 for all v here}` inside the dual
    /// coordinate space.
    pub fn annihilator(&self) -> SubspaceBasis {
        let m = super::matrix::SparseMatrix::from_entries(
            self.dim(),
            self.ambient_dim,
            self.vectors
                .iter()
                .enumerate()
                .flat_map(|(r, v)| v.iter().map(move |(c, x)| (r, *c, x.clone()))),
        );
        super::kernel_basis(&m)
    }
}
