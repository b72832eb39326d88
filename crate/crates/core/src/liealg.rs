//! Nilpotent Lie algebras as sparse structure constants, their structural
//! series, and the constructions used throughout: direct sums, trivial
//! extensions, and central extensions by a closed 2-form.

use crate::exactlin::{Rational, SparseMatrix, SparseVec, SubspaceBasis};
use crate::exterior::{self, KForm};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use std::collections::BTreeMap;

/// Largest supported dimension. Monomials of the exterior algebra are
/// packed into `u64` bit masks, which caps the basis size.
pub const MAX_DIM: usize = 64;

/// A finite-dimensional Lie algebra over Q given by sparse structure
/// constants. Brackets are stored only for `i < j` (0-based); reading
/// `[e_j, e_i]` negates. Jacobi is *not* enforced at construction —
/// run [`LieAlgebra::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    basis_labels: Vec<String>,
    brackets: BTreeMap<(usize, usize), SparseVec>,
}

/// One defect found by [`LieAlgebra::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Jacobi fails on the basis triple; `defect` is the nonzero value of
    /// `[[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej]`.
    Jacobi {
        triple: (usize, usize, usize),
        defect: SparseVec,
    },
}

/// Lower central series data: `ideals[i]` is the i-th term, down to the
/// zero ideal; `nilpotency_index` is the first vanishing index.
#[derive(Debug, Clone)]
pub struct SeriesReport {
    pub ideals: Vec<SubspaceBasis>,
    pub nilpotency_index: usize,
    pub center: SubspaceBasis,
}

impl SeriesReport {
    /// Dimensions of the proper terms `n^0, n^1, ...` (zero term omitted).
    pub fn ideal_dims(&self) -> Vec<usize> {
        self.ideals
            .iter()
            .filter(|s| !s.is_zero())
            .map(|s| s.dim())
            .collect()
    }
}

impl LieAlgebra {
    /// Builds an algebra from bracket data `[e_i, e_j] = sum c^k e_k`
    /// with 0-based indices and `i < j`. Rejects malformed indices.
    pub fn new(
        dim: usize,
        basis_labels: Vec<String>,
        brackets: impl IntoIterator<Item = ((usize, usize), SparseVec)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        if dim > MAX_DIM {
            return Err(Error::InvalidParameter(format!(
                "dimension {dim} exceeds the supported maximum {MAX_DIM}"
            )));
        }
        if basis_labels.len() != dim {
            return Err(Error::InvalidParameter(format!(
                "expected {dim} basis labels, got {}",
                basis_labels.len()
            )));
        }
        let mut map = BTreeMap::new();
        for ((i, j), terms) in brackets {
            if i >= j {
                return Err(Error::InvalidParameter(format!(
                    "bracket pair ({i},{j}) must have i < j"
                )));
            }
            if j >= dim {
                return Err(Error::InvalidParameter(format!(
                    "bracket pair ({i},{j}) out of range for dimension {dim}"
                )));
            }
            // Accumulate repeated targets so term lists stay sorted and
            // duplicate-free.
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, c) in terms {
                if k >= dim {
                    return Err(Error::InvalidParameter(format!(
                        "bracket target {k} out of range for dimension {dim}"
                    )));
                }
                let slot = acc.entry(k).or_insert_with(Rational::zero);
                *slot = &*slot + &c;
            }
            let clean: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !clean.is_empty() && map.insert((i, j), clean).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "duplicate bracket entry for pair ({i},{j})"
                )));
            }
        }
        Ok(LieAlgebra {
            dim,
            basis_labels,
            brackets: map,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn bracket_entries(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVec)> {
        self.brackets.iter()
    }

    /// `[e_i, e_j]` for any pair, handling antisymmetry and `i == j`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        if i == j {
            return Vec::new();
        }
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default()
        }
    }

    /// Bracket of arbitrary coordinate vectors.
    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, xv) in x {
            for (j, yv) in y {
                if i == j {
                    continue;
                }
                let coeff = xv * yv;
                for (k, c) in self.bracket_basis(*i, *j) {
                    let slot = acc.entry(k).or_insert_with(Rational::zero);
                    *slot = &*slot + &(&coeff * &c);
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Checks the Jacobi identity on every basis triple. Empty result
    /// iff the structure constants define a Lie algebra.
    pub fn validate(&self) -> Vec<Violation> {
        let one = Rational::one();
        let unit = |i: usize| vec![(i, Rational::one())];
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let mut defect = self.bracket(&self.bracket_basis(i, j), &unit(k));
                    let t2 = self.bracket(&self.bracket_basis(j, k), &unit(i));
                    let t3 = self.bracket(&self.bracket_basis(k, i), &unit(j));
                    defect = crate::exactlin::axpy(&defect, &one, &t2);
                    defect = crate::exactlin::axpy(&defect, &one, &t3);
                    if !defect.is_empty() {
                        out.push(Violation::Jacobi {
                            triple: (i, j, k),
                            defect,
                        });
                    }
                }
            }
        }
        out
    }

    /// Derived ideal `[n, u]` for a subspace `u`.
    fn bracket_ideal(&self, u: &SubspaceBasis) -> SubspaceBasis {
        let mut spanning = Vec::new();
        for a in 0..self.dim {
            let ea = vec![(a, Rational::one())];
            for v in u.vectors() {
                let w = self.bracket(&ea, v);
                if !w.is_empty() {
                    spanning.push(w);
                }
            }
        }
        SubspaceBasis::from_spanning(self.dim, spanning)
    }

    /// Lower central series down to zero, failing if it stabilizes at a
    /// nonzero ideal.
    pub fn lower_central_series(&self) -> Result<SeriesReport> {
        let mut ideals = vec![SubspaceBasis::full(self.dim)];
        loop {
            let next = self.bracket_ideal(ideals.last().unwrap());
            let prev_dim = ideals.last().unwrap().dim();
            if next.dim() == 0 {
                let k = ideals.len();
                ideals.push(next);
                return Ok(SeriesReport {
                    ideals,
                    nilpotency_index: k,
                    center: self.center(),
                });
            }
            if next.dim() >= prev_dim {
                return Err(Error::NotNilpotent);
            }
            ideals.push(next);
        }
    }

    /// The center `{x : [x, n] = 0}`.
    pub fn center(&self) -> SubspaceBasis {
        let m = self.dim;
        let mut entries = Vec::new();
        for a in 0..m {
            for j in 0..m {
                for (k, c) in self.bracket_basis(j, a) {
                    entries.push((a * m + k, j, c));
                }
            }
        }
        let mat = SparseMatrix::from_entries(m * m, m, entries);
        crate::exactlin::kernel_basis(&mat)
    }

    /// Block-diagonal direct sum of ideals.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra> {
        let shift = self.dim;
        let mut labels = self.basis_labels.clone();
        labels.extend(other.basis_labels.iter().cloned());
        let mut brackets: Vec<((usize, usize), SparseVec)> = self
            .brackets
            .iter()
            .map(|(&p, v)| (p, v.clone()))
            .collect();
        for (&(i, j), v) in &other.brackets {
            brackets.push((
                (i + shift, j + shift),
                v.iter().map(|(k, c)| (k + shift, c.clone())).collect(),
            ));
        }
        LieAlgebra::new(self.dim + other.dim, labels, brackets)
    }

    /// `R^s + self` with fresh central generators labelled `u1..us`.
    pub fn trivial_extension(&self, s: usize) -> Result<LieAlgebra> {
        if s == 0 {
            return Ok(self.clone());
        }
        let labels = (1..=s).map(|i| format!("u{i}")).collect();
        let abelian = LieAlgebra::new(s, labels, Vec::new())?;
        self.direct_sum(&abelian)
    }

    /// Central extension by a closed 2-form: `[[x,y]] = [x,y] + w(x,y) z`
    /// on `self + R z`. Fails if `dw != 0`.
    pub fn central_extension(&self, w: &KForm) -> Result<LieAlgebra> {
        if w.degree() != 2 {
            return Err(Error::InvalidParameter(format!(
                "central extension needs a 2-form, got degree {}",
                w.degree()
            )));
        }
        if w.dim() != self.dim {
            return Err(Error::AmbientMismatch(w.dim(), self.dim));
        }
        if !exterior::d(self, w).is_zero() {
            return Err(Error::FormNotClosed);
        }
        let z = self.dim;
        let mut labels = self.basis_labels.clone();
        labels.push("z".to_string());
        let mut brackets: BTreeMap<(usize, usize), SparseVec> = self.brackets.clone();
        for (tuple, c) in w.terms() {
            let (i, j) = (tuple[0], tuple[1]);
            let entry = brackets.entry((i, j)).or_default();
            *entry = crate::exactlin::axpy(entry, &Rational::one(), &vec![(z, c.clone())]);
        }
        LieAlgebra::new(z + 1, labels, brackets)
    }

    /// Finest integer multigrading compatible with the brackets: weight
    /// vectors `w_l` with `w_i + w_j = w_k` whenever `c_{ij}^k != 0`.
    /// Returns one weight vector per basis element, or `None` when only
    /// the trivial grading exists. Used to split differentials into
    /// weight-homogeneous blocks; results of downstream computations do
    /// not depend on it.
    pub fn discover_grading(&self) -> Option<Vec<Vec<i64>>> {
        let mut constraints: Vec<SparseVec> = Vec::new();
        for (&(i, j), terms) in &self.brackets {
            for (k, _) in terms {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                *acc.entry(i).or_insert_with(Rational::zero) += &Rational::one();
                *acc.entry(j).or_insert_with(Rational::zero) += &Rational::one();
                *acc.entry(*k).or_insert_with(Rational::zero) -= &Rational::one();
                let row: SparseVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    constraints.push(row);
                }
            }
        }
        let mat = SparseMatrix::from_entries(
            constraints.len().max(1),
            self.dim,
            constraints
                .iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v.clone()))),
        );
        let sol = crate::exactlin::kernel_basis(&mat);
        if sol.dim() == 0 {
            return None;
        }
        // Scale each solution row to integers.
        let mut rows_scaled: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(sol.dim());
        for row in sol.vectors() {
            let mut lcm = BigInt::one();
            for (_, v) in row {
                lcm = lcm.lcm(&v.denom());
            }
            rows_scaled.push(
                row.iter()
                    .map(|(i, v)| {
                        let scaled = v.numer() * (&lcm / v.denom());
                        (*i, scaled)
                    })
                    .collect(),
            );
        }
        let mut weights = vec![vec![0i64; rows_scaled.len()]; self.dim];
        for (t, row) in rows_scaled.iter().enumerate() {
            for (i, v) in row {
                if v.abs() > BigInt::from(i64::MAX / (self.dim as i64 + 1)) {
                    return None; // give up on absurd weights; fall back to unblocked
                }
                weights[*i][t] = v.to_i64()?;
            }
        }
        Some(weights)
    }
}
