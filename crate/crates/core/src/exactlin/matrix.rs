//! Sparse matrices over the rationals and the elimination kernel.
//!
//! Everything downstream (kernels of Chevalley–Eilenberg differentials,
//! filtration subspaces, Gram determinants) reduces to the row-echelon
//! routine here. Pivots are chosen by smallest bit length to keep
//! coefficient growth down; the reduced echelon form itself is unique,
//! so outputs do not depend on the pivot strategy or row order.

use super::rational::Rational;
use std::collections::BTreeMap;

/// Sparse vector: strictly increasing indices, no zero coefficients.
pub type SparseVec = Vec<(usize, Rational)>;

/// `target + coeff * source`, merging sorted supports.
pub fn axpy(target: &SparseVec, coeff: &Rational, source: &SparseVec) -> SparseVec {
    if coeff.is_zero() {
        return target.clone();
    }
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        match (target.get(i), source.get(j)) {
            (Some((ti, tv)), Some((si, sv))) => {
                if ti < si {
                    out.push((*ti, tv.clone()));
                    i += 1;
                } else if si < ti {
                    out.push((*si, coeff * sv));
                    j += 1;
                } else {
                    let v = tv + &(coeff * sv);
                    if !v.is_zero() {
                        out.push((*ti, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some((ti, tv)), None) => {
                out.push((*ti, tv.clone()));
                i += 1;
            }
            (None, Some((si, sv))) => {
                out.push((*si, coeff * sv));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn scale_in_place(v: &mut SparseVec, c: &Rational) {
    if c.is_one() {
        return;
    }
    for (_, x) in v.iter_mut() {
        *x = &*x * c;
    }
}

pub fn sparse_get(v: &SparseVec, idx: usize) -> Option<&Rational> {
    v.binary_search_by_key(&idx, |(i, _)| *i)
        .ok()
        .map(|p| &v[p].1)
}

/// Reduced row echelon form of a list of sparse rows. Rows come back
/// sorted by pivot column, each with leading coefficient 1 and the pivot
/// column cleared everywhere else.
pub fn row_echelon(rows: Vec<SparseVec>) -> Vec<SparseVec> {
    let mut active: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut done: Vec<SparseVec> = Vec::new();

    while !active.is_empty() {
        let min_col = active.iter().map(|r| r[0].0).min().unwrap();
        let mut best: Option<(usize, u64)> = None;
        for (i, row) in active.iter().enumerate() {
            if row[0].0 == min_col {
                let bl = row[0].1.bit_length();
                if best.is_none_or(|(_, b)| bl < b) {
                    best = Some((i, bl));
                }
            }
        }
        let mut pivot = active.swap_remove(best.unwrap().0);
        let inv = pivot[0].1.recip();
        scale_in_place(&mut pivot, &inv);
        for row in active.iter_mut() {
            if row[0].0 == min_col {
                let c = -&row[0].1;
                *row = axpy(row, &c, &pivot);
            }
        }
        active.retain(|r| !r.is_empty());
        done.push(pivot);
    }

    // Back substitution: clear pivot columns from earlier rows.
    for i in (1..done.len()).rev() {
        let (head, tail) = done.split_at_mut(i);
        let pivot = &tail[0];
        let pcol = pivot[0].0;
        for row in head.iter_mut() {
            if let Some(c) = sparse_get(row, pcol) {
                let c = -c;
                *row = axpy(row, &c, pivot);
            }
        }
    }
    done
}

/// Sparse matrix over the rationals. Absent entries are zero; stored
/// entries are never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from coordinate triples. Duplicate positions
    /// accumulate, which lets callers stream sums of contributions.
    pub fn from_entries<I>(rows: usize, cols: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = Self::zero(rows, cols);
        for (r, c, v) in it {
            assert!(r < rows && c < cols, "entry ({r},{c}) out of bounds");
            if !v.is_zero() {
                let slot = m.entries.entry((r, c)).or_insert_with(Rational::zero);
                *slot = &*slot + &v;
                if slot.is_zero() {
                    m.entries.remove(&(r, c));
                }
            }
        }
        m
    }

    pub fn from_dense(data: &[Vec<Rational>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        Self::from_entries(
            rows,
            cols,
            data.iter().enumerate().flat_map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(c, v)| (r, c, v.clone()))
            }),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Rational> {
        self.entries.get(&(r, c))
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_rows(&self) -> Vec<SparseVec> {
        let mut out = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            out[r].push((c, v.clone()));
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut m = Self::zero(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            m.entries.insert((c, r), v.clone());
        }
        m
    }

    /// Matrix product, used for composite checks like `d . d = 0`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let lhs_rows = self.to_rows();
        let rhs_rows = rhs.to_rows();
        let mut entries = BTreeMap::new();
        for (r, row) in lhs_rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, v) in row {
                for (c, w) in &rhs_rows[*k] {
                    let slot = acc.entry(*c).or_insert_with(Rational::zero);
                    *slot = &*slot + &(v * w);
                }
            }
            for (c, v) in acc {
                if !v.is_zero() {
                    entries.insert((r, c), v);
                }
            }
        }
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        }
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&(r, c), v) in &self.entries {
            if let Some(xv) = sparse_get(x, c) {
                let slot = acc.entry(r).or_insert_with(Rational::zero);
                *slot = &*slot + &(v * xv);
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Exact determinant of a square matrix via elimination with pivot
    /// tracking.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut active: Vec<(usize, SparseVec)> = self
            .to_rows()
            .into_iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .collect();
        if active.len() < n {
            return Rational::zero();
        }
        let mut det = Rational::one();
        let mut pivot_order: Vec<usize> = Vec::with_capacity(n);
        for col in 0..n {
            let mut best: Option<(usize, u64)> = None;
            for (i, (_, row)) in active.iter().enumerate() {
                if row[0].0 == col {
                    let bl = row[0].1.bit_length();
                    if best.is_none_or(|(_, b)| bl < b) {
                        best = Some((i, bl));
                    }
                }
            }
            let Some((bi, _)) = best else {
                return Rational::zero();
            };
            let (orig, mut pivot) = active.swap_remove(bi);
            pivot_order.push(orig);
            det = &det * &pivot[0].1;
            let inv = pivot[0].1.recip();
            scale_in_place(&mut pivot, &inv);
            for (_, row) in active.iter_mut() {
                if !row.is_empty() && row[0].0 == col {
                    let c = -&row[0].1;
                    *row = axpy(row, &c, &pivot);
                }
            }
            if active.iter().any(|(_, r)| r.is_empty()) {
                return Rational::zero();
            }
        }
        // Sign of the permutation sending elimination order to row order.
        let mut inversions = 0usize;
        for i in 0..pivot_order.len() {
            for j in (i + 1)..pivot_order.len() {
                if pivot_order[i] > pivot_order[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 1 {
            det = -det;
        }
        det
    }

    /// Exact inverse, if the matrix is square and non-singular.
    pub fn inverse(&self) -> Option<SparseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut rows = self.to_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row.push((n + i, Rational::one()));
        }
        let reduced = row_echelon(rows);
        if reduced.len() != n || !(0..n).all(|i| reduced[i][0].0 == i) {
            return None;
        }
        let mut out = SparseMatrix::zero(n, n);
        for (i, row) in reduced.iter().enumerate() {
            for (c, v) in row {
                if *c >= n {
                    out.set(i, c - n, v.clone());
                }
            }
        }
        Some(out)
    }

    /// One exact solution of `M x = rhs`, or `None` if inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let n = self.cols;
        let mut rows = self.to_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            if !rhs[i].is_zero() {
                row.push((n, rhs[i].clone()));
            }
        }
        let reduced = row_echelon(rows);
        let mut x = vec![Rational::zero(); n];
        for row in &reduced {
            let (pcol, _) = row[0];
            if pcol == n {
                return None; // pivot in the augmented column
            }
            if let Some(v) = sparse_get(row, n) {
                x[pcol] = v.clone();
            }
        }
        Some(x)
    }
}
