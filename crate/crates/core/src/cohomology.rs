//! Betti numbers, the canonical filtration of the dual space, and the
//! limit intermediate cohomology dimensions.
//!
//! The group `E_inf^{p,q}` is computed directly from its closed-form
//! description
//!
//! ```text
//!   {x in L^{p+q} V_{k-p} : dx = 0}
//!   ------------------------------------------------------------------
//!   d({x in L^{p+q-1} n* : dx in L^{p+q} V_{k-p}})
//!     + {x in L^{p+q} V_{k-p-1} : dx = 0}
//! ```
//!
//! with exact kernel / preimage / sum / quotient arithmetic.
//!
//! Two evaluation paths produce identical numbers. When every filtration
//! space is spanned by basis covectors, monomials are grouped by an
//! integer multigrading discovered from the structure constants and each
//! weight block is handled independently; this keeps the eliminations
//! tiny even when the exterior algebra is large. Otherwise a generic
//! path materializes the subspaces `L^i V_j` and works globally.

use crate::exactlin::{
    self, row_echelon, Rational, SparseMatrix, SparseVec, SubspaceBasis,
};
use crate::exterior::{
    self, mask_to_tuple, monomials, tuple_to_mask, DifferentialTable, KForm,
};
use crate::liealg::LieAlgebra;
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};

/// The canonical increasing filtration `V_0 = 0 < V_1 < ... < V_k = n*`,
/// where `V_i` annihilates the i-th lower central series ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationBasis {
    pub spaces: Vec<SubspaceBasis>,
}

impl FiltrationBasis {
    pub fn nilpotency_index(&self) -> usize {
        self.spaces.len() - 1
    }
}

/// Dimensions of the limit intermediate cohomology groups, indexed by
/// `(p, q)` with `q` possibly negative. Zero entries are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EInftyTable {
    pub k: usize,
    pub dim: usize,
    entries: BTreeMap<(usize, i64), usize>,
}

impl EInftyTable {
    pub fn get(&self, p: usize, q: i64) -> usize {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, i64), &usize)> {
        self.entries.iter()
    }

    pub fn antidiagonal_sum(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|(&(p, q), _)| p as i64 + q == i as i64)
            .map(|(_, &d)| d)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    /// Class in full cohomology `H^i`.
    Full,
    /// Graded class in `E_inf^{0,2}`, reduced modulo closed forms in
    /// `L^2 V_{k-1}`.
    Graded,
}

/// A cohomology class with its canonical reduced representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyClass {
    degree: usize,
    representative: KForm,
    kind: ClassKind,
}

impl CohomologyClass {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn representative(&self) -> &KForm {
        &self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    /// Representative rescaled so the first surviving monomial has
    /// coefficient one; for display and orbit bookkeeping.
    pub fn normalized_representative(&self) -> KForm {
        match self.representative.terms().next() {
            Some((_, c)) => self.representative.scaled(&c.recip()),
            None => self.representative.clone(),
        }
    }
}

// ---------------------------------------------------------------------
// Filtration
// ---------------------------------------------------------------------

/// Filtration by annihilators of the lower central series, cross-checked
/// against the recursive description `V_i = {a : da in L^2 V_{i-1}}`.
/// The two constructions must agree; disagreement is a bug, not an input
/// error.
pub fn filtration(a: &LieAlgebra) -> Result<FiltrationBasis> {
    let series = a.lower_central_series()?;
    let spaces: Vec<SubspaceBasis> = series.ideals.iter().map(|u| u.annihilator()).collect();
    let recursive = filtration_recursive(a)?;
    assert_eq!(
        spaces.len(),
        recursive.spaces.len(),
        "filtration length disagrees with the recursive construction"
    );
    for (j, (lhs, rhs)) in spaces.iter().zip(&recursive.spaces).enumerate() {
        assert_eq!(
            lhs, rhs,
            "filtration space V_{j} disagrees between the annihilator and recursive constructions"
        );
    }
    Ok(FiltrationBasis { spaces })
}

/// The recursive construction on its own. Public so the two routes can
/// be compared independently in tests.
pub fn filtration_recursive(a: &LieAlgebra) -> Result<FiltrationBasis> {
    let m = a.dim();
    let lambda2 = exterior::binomial(m, 2);
    let d1 = exterior::differential_matrix(a, 1);
    let mut spaces = vec![SubspaceBasis::zero(m)];
    loop {
        let prev = spaces.last().unwrap();
        let wedge2 = wedge_power_basis(prev, 2);
        // Constraint per covector: the residual of d e^idx modulo
        // L^2 V_{prev} must vanish.
        let mut entries = Vec::new();
        for idx in 0..m {
            let column: SparseVec = d1
                .entries()
                .filter(|(_, c, _)| *c == idx)
                .map(|(r, _, v)| (r, v.clone()))
                .collect();
            for (r, v) in wedge2.reduce(column) {
                entries.push((r, idx, v));
            }
        }
        let next = exactlin::kernel_basis(&SparseMatrix::from_entries(lambda2, m, entries));
        if next.dim() == prev.dim() {
            // Stabilized short of the full space: not nilpotent.
            return Err(Error::NotNilpotent);
        }
        let full = next.dim() == m;
        spaces.push(next);
        if full {
            return Ok(FiltrationBasis { spaces });
        }
    }
}

/// Basis of `L^p W` inside the monomial coordinates of `L^p(Q^m)`,
/// spanned by p-fold wedges of the basis of `W`.
fn wedge_power_basis(w: &SubspaceBasis, p: usize) -> SubspaceBasis {
    let m = w.ambient_dim();
    let ambient = exterior::binomial(m, p);
    if w.dim() < p {
        return SubspaceBasis::zero(ambient);
    }
    let one_forms: Vec<KForm> = w
        .vectors()
        .iter()
        .map(|v| KForm::from_terms(m, 1, v.iter().map(|(i, c)| (vec![*i], c.clone()))))
        .collect();
    let mut spanning = Vec::new();
    for combo in monomials(w.dim(), p) {
        let mut acc = one_forms[combo[0]].clone();
        for &l in &combo[1..] {
            acc = exterior::wedge(&acc, &one_forms[l]);
        }
        if !acc.is_zero() {
            spanning.push(acc.coordinates());
        }
    }
    SubspaceBasis::from_spanning(ambient, spanning)
}

// ---------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------

struct Engine<'a> {
    alg: &'a LieAlgebra,
    table: DifferentialTable,
    k: usize,
    filt: FiltrationBasis,
    /// Per-covector filtration level when every `V_j` is spanned by
    /// basis covectors; `None` forces the generic path.
    mono_level: Option<Vec<usize>>,
    weights: Option<Vec<Vec<i64>>>,
}

struct DegreeData {
    /// `cells[p]` is the dimension of `E_inf^{p, i-p}`, `p = 0..k`.
    cells: Vec<usize>,
    betti: usize,
}

type WeightKey = Vec<i64>;

impl<'a> Engine<'a> {
    fn new(alg: &'a LieAlgebra) -> Result<Self> {
        let filt = filtration(alg)?;
        let k = filt.nilpotency_index();
        let mono_level = if filt.spaces.iter().all(|s| s.is_monomial()) {
            let mut level = vec![usize::MAX; alg.dim()];
            for (j, space) in filt.spaces.iter().enumerate().skip(1) {
                for idx in space.pivot_cols() {
                    if level[idx] == usize::MAX {
                        level[idx] = j;
                    }
                }
            }
            debug_assert!(level.iter().all(|&l| l != usize::MAX));
            Some(level)
        } else {
            None
        };
        let weights = alg.discover_grading();
        Ok(Engine {
            alg,
            table: DifferentialTable::new(alg),
            k,
            filt,
            mono_level,
            weights,
        })
    }

    fn weight_of(&self, mask: u64) -> WeightKey {
        match &self.weights {
            None => Vec::new(),
            Some(w) => {
                let t = w[0].len();
                let mut acc = vec![0i64; t];
                let mut rem = mask;
                while rem != 0 {
                    let i = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    for (s, v) in acc.iter_mut().zip(&w[i]) {
                        *s = s.checked_add(*v).expect("grading weight overflow");
                    }
                }
                acc
            }
        }
    }

    fn weight_groups(&self, degree: usize) -> HashMap<WeightKey, Vec<u64>> {
        let mut groups: HashMap<WeightKey, Vec<u64>> = HashMap::new();
        for tuple in monomials(self.alg.dim(), degree) {
            let mask = tuple_to_mask(&tuple);
            groups.entry(self.weight_of(mask)).or_default().push(mask);
        }
        groups
    }

    fn degree_pass(&self, i: usize, want_cells: bool) -> DegreeData {
        let m = self.alg.dim();
        if i > m {
            return DegreeData {
                cells: vec![0; self.k],
                betti: 0,
            };
        }
        if i == 0 {
            // L^0 V_j is the scalars for j >= 1 and zero for j = 0, so the
            // only surviving cell on this antidiagonal is p = k-1.
            let mut cells = vec![0; self.k];
            cells[self.k - 1] = 1;
            return DegreeData { cells, betti: 1 };
        }
        if self.mono_level.is_some() {
            self.degree_pass_monomial(i, want_cells)
        } else {
            self.degree_pass_generic(i, want_cells)
        }
    }

    /// Monomial-filtration path: independent weight blocks; within a
    /// block, one elimination of the degree-i differential with columns
    /// in (filtration level, lexicographic) order gives every
    /// threshold's closed-part dimension via prefix ranks, and one
    /// elimination of the degree-(i-1) differential with rows in
    /// descending level order gives every preimage-image dimension via
    /// suffix ranks. The denominator of the limit quotient is then
    ///
    ///   dim D_j + dim K_{j-1} - dim D_{j-1}
    ///
    /// because an image vector lying in the deeper prefix is the image
    /// of a deeper preimage: D_j intersect K_{j-1} = D_{j-1}.
    fn degree_pass_monomial(&self, i: usize, want_cells: bool) -> DegreeData {
        let levels = self.mono_level.as_ref().unwrap();
        let k = self.k;
        let groups_i = self.weight_groups(i);
        let groups_prev = self.weight_groups(i - 1);

        let mono_level = |mask: u64| -> usize {
            let mut rem = mask;
            let mut lvl = 0;
            while rem != 0 {
                let idx = rem.trailing_zeros() as usize;
                rem &= rem - 1;
                lvl = lvl.max(levels[idx]);
            }
            lvl
        };

        let per_class = |(w, masks): (&WeightKey, &Vec<u64>)| -> (Vec<usize>, isize) {
            let mut cols: Vec<(usize, Vec<usize>, u64)> = masks
                .iter()
                .map(|&mk| (mono_level(mk), mask_to_tuple(mk), mk))
                .collect();
            cols.sort();
            let ncols = cols.len();
            let pos_of: HashMap<u64, usize> =
                cols.iter().enumerate().map(|(p, c)| (c.2, p)).collect();

            // Eliminate the d_i block, columns in level order; prefix
            // ranks come from the pivot columns.
            let mut row_of: HashMap<u64, usize> = HashMap::new();
            let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
            for (cidx, (_, _, mask)) in cols.iter().enumerate() {
                for (img, v) in self.table.d_mask(*mask) {
                    let next = row_of.len();
                    let r = *row_of.entry(img).or_insert(next);
                    entries.push((r, cidx, v));
                }
            }
            let block = SparseMatrix::from_entries(row_of.len().max(1), ncols, entries);
            let pivot_positions: Vec<usize> = row_echelon(block.to_rows())
                .iter()
                .map(|r| r[0].0)
                .collect();

            let mut cols_upto = vec![0usize; k + 1];
            for (lvl, _, _) in &cols {
                for slot in &mut cols_upto[*lvl..] {
                    *slot += 1;
                }
            }
            let mut pivots_upto = vec![0usize; k + 1];
            for &p in &pivot_positions {
                for slot in &mut pivots_upto[cols[p].0..] {
                    *slot += 1;
                }
            }
            // Closed dimensions K_j = dim {x in L^i V_j cap class : dx = 0}.
            let closed_upto =
                |j: usize| -> usize { cols_upto[j] - pivots_upto[j] };

            // Eliminate the previous differential's block with rows in
            // descending level order, recording the rank of every
            // outside-row suffix.
            let mut rank_outside = vec![0usize; k + 1]; // rank of rows with level > j
            let mut full_prev_rank = 0usize;
            if let Some(pmasks) = groups_prev.get(w) {
                // Rows of the A block are this class's monomials; group
                // the transposed entries by row level so rows can be fed
                // from deepest level to shallowest.
                let mut rows_by_level: Vec<Vec<SparseVec>> = vec![Vec::new(); k + 1];
                let mut transposed: HashMap<usize, SparseVec> = HashMap::new();
                for (cidx, pmask) in pmasks.iter().enumerate() {
                    for (img, v) in self.table.d_mask(*pmask) {
                        let r = *pos_of
                            .get(&img)
                            .expect("differential must preserve the weight grading");
                        transposed.entry(r).or_default().push((cidx, v));
                    }
                }
                for (r, mut row) in transposed {
                    row.sort_by_key(|(c, _)| *c);
                    rows_by_level[cols[r].0].push(row);
                }
                // Stream rows from level k down to 1, reducing each
                // against the pivots collected so far; after finishing
                // level j+1 the processed rows are exactly those of
                // level > j.
                let mut pivots: Vec<SparseVec> = Vec::new();
                let mut pivot_at: HashMap<usize, usize> = HashMap::new();
                for lvl in (1..=k).rev() {
                    for mut row in rows_by_level[lvl].drain(..) {
                        while let Some((lead, lead_val)) = row.first().cloned() {
                            match pivot_at.get(&lead) {
                                Some(&pi) => {
                                    let c = -&lead_val;
                                    row = crate::exactlin::axpy(&row, &c, &pivots[pi]);
                                }
                                None => {
                                    let inv = lead_val.recip();
                                    crate::exactlin::scale_in_place(&mut row, &inv);
                                    pivot_at.insert(lead, pivots.len());
                                    pivots.push(row);
                                    break;
                                }
                            }
                        }
                    }
                    rank_outside[lvl - 1] = pivots.len();
                }
                full_prev_rank = pivots.len();
            }

            // dim D_j = rank(A) - rank(A outside-rows); for j = 0 the
            // preimage is ker A and the image vanishes.
            let image_dim = |j: usize| -> usize { full_prev_rank - rank_outside[j] };

            let mut cells = vec![0usize; k];
            if want_cells {
                for j in 1..=k {
                    let numerator = closed_upto(j);
                    let denom = image_dim(j) + closed_upto(j - 1) - image_dim(j - 1);
                    debug_assert!(denom <= numerator);
                    cells[k - j] += numerator - denom;
                }
            }
            let full_kernel_dim = ncols - pivot_positions.len();
            (cells, full_kernel_dim as isize - full_prev_rank as isize)
        };

        let results: Vec<(Vec<usize>, isize)> =
            groups_i.par_iter().map(per_class).collect();
        let mut cells = vec![0usize; k];
        let mut betti: isize = 0;
        for (c, b) in results {
            for (acc, v) in cells.iter_mut().zip(c) {
                *acc += v;
            }
            betti += b;
        }
        debug_assert!(betti >= 0);
        DegreeData {
            cells,
            betti: betti as usize,
        }
    }

    /// Generic path: materialize `L^i V_j` by wedging filtration bases.
    /// Only used when a filtration space is not coordinate-aligned, which
    /// happens for central extensions; dimensions stay small there.
    fn degree_pass_generic(&self, i: usize, want_cells: bool) -> DegreeData {
        let m = self.alg.dim();
        let k = self.k;
        let d_i = exterior::differential_matrix(self.alg, i);
        let d_prev = if i >= 2 {
            Some(exterior::differential_matrix(self.alg, i - 1))
        } else {
            None
        };

        let full_kernel = exactlin::kernel_basis(&d_i);
        let prev_rank = d_prev.as_ref().map_or(0, exactlin::rank);
        let betti = full_kernel.dim() - prev_rank;
        let mut cells = vec![0usize; k];
        if !want_cells {
            return DegreeData { cells, betti };
        }

        // Closed parts Z_j = {x in L^i V_j : dx = 0} for all thresholds.
        let mut closed: Vec<SubspaceBasis> = Vec::with_capacity(k + 1);
        let mut powers: Vec<SubspaceBasis> = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let w = wedge_power_basis(&self.filt.spaces[j], i);
            let z = if j == k {
                full_kernel.clone()
            } else {
                closed_part(&d_i, &w)
            };
            powers.push(w);
            closed.push(z);
        }

        for j in 1..=k {
            let numerator = closed[j].dim();
            let mut stack: Vec<SparseVec> = closed[j - 1].vectors().to_vec();
            if let Some(dp) = &d_prev {
                // Preimage {x : dx in L^i V_j} via the residual constraints.
                let prev_cols = exterior::binomial(m, i - 1);
                let mut entries = Vec::new();
                for cidx in 0..prev_cols {
                    let col: SparseVec = dp
                        .entries()
                        .filter(|(_, c, _)| *c == cidx)
                        .map(|(r, _, v)| (r, v.clone()))
                        .collect();
                    for (r, v) in powers[j].reduce(col) {
                        entries.push((r, cidx, v));
                    }
                }
                let constraints = SparseMatrix::from_entries(
                    exterior::binomial(m, i),
                    prev_cols,
                    entries,
                );
                for x in exactlin::kernel_basis(&constraints).vectors() {
                    let y = dp.apply(x);
                    if !y.is_empty() {
                        stack.push(y);
                    }
                }
            }
            let denom = row_echelon(stack).len();
            debug_assert!(denom <= numerator);
            cells[k - j] = numerator - denom;
        }
        DegreeData { cells, betti }
    }
}

/// `{x in span(w) : d x = 0}` as a subspace of the monomial coordinates.
fn closed_part(d: &SparseMatrix, w: &SubspaceBasis) -> SubspaceBasis {
    if w.dim() == 0 {
        return SubspaceBasis::zero(w.ambient_dim());
    }
    // Columns of d composed with the inclusion of w.
    let images: Vec<SparseVec> = w.vectors().iter().map(|v| d.apply(v)).collect();
    let mat = SparseMatrix::from_entries(
        d.rows().max(1),
        w.dim(),
        images
            .iter()
            .enumerate()
            .flat_map(|(c, img)| img.iter().map(move |(r, v)| (*r, c, v.clone()))),
    );
    let combos = exactlin::kernel_basis(&mat);
    let spanning: Vec<SparseVec> = combos
        .vectors()
        .iter()
        .map(|combo| {
            let mut acc: SparseVec = Vec::new();
            for (l, c) in combo {
                acc = exactlin::axpy(&acc, c, &w.vectors()[*l]);
            }
            acc
        })
        .collect();
    SubspaceBasis::from_spanning(w.ambient_dim(), spanning)
}

// ---------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------

/// The i-th Betti number `dim ker d_i - rank d_{i-1}`.
pub fn betti(a: &LieAlgebra, i: usize) -> Result<usize> {
    let engine = Engine::new(a)?;
    Ok(engine.degree_pass(i, false).betti)
}

/// All Betti numbers `b_0..b_dim` in one sweep.
pub fn betti_vector(a: &LieAlgebra) -> Result<Vec<usize>> {
    let engine = Engine::new(a)?;
    Ok((0..=a.dim())
        .map(|i| engine.degree_pass(i, false).betti)
        .collect())
}

/// Dimension of `E_inf^{p,q}`; out-of-range pairs give zero.
pub fn e_infty_dim(a: &LieAlgebra, p: usize, q: i64) -> Result<usize> {
    let engine = Engine::new(a)?;
    let i = p as i64 + q;
    if i < 0 || i > a.dim() as i64 || p >= engine.k {
        return Ok(0);
    }
    Ok(engine.degree_pass(i as usize, true).cells[p])
}

/// The full table of limit intermediate cohomology dimensions, with the
/// decomposition against the Betti numbers checked on every antidiagonal.
pub fn e_infty_table(a: &LieAlgebra) -> Result<EInftyTable> {
    let engine = Engine::new(a)?;
    let mut entries = BTreeMap::new();
    for i in 0..=a.dim() {
        let pass = engine.degree_pass(i, true);
        let sum: usize = pass.cells.iter().sum();
        if sum != pass.betti {
            return Err(Error::DecompositionMismatch {
                degree: i,
                sum,
                betti: pass.betti,
            });
        }
        for (p, &dim) in pass.cells.iter().enumerate() {
            if dim != 0 {
                entries.insert((p, i as i64 - p as i64), dim);
            }
        }
    }
    Ok(EInftyTable {
        k: engine.k,
        dim: a.dim(),
        entries,
    })
}

/// The subspace `{x in L^2 V_{k-1} : dx = 0}` — the denominator of the
/// `E_inf^{0,2}` quotient.
fn e02_denominator(a: &LieAlgebra, filt: &FiltrationBasis) -> SubspaceBasis {
    let d2 = exterior::differential_matrix(a, 2);
    let w = wedge_power_basis(&filt.spaces[filt.nilpotency_index() - 1], 2);
    closed_part(&d2, &w)
}

/// Canonical graded class of a closed 2-form in `E_inf^{0,2}`.
pub fn e02_class(a: &LieAlgebra, w: &KForm) -> Result<CohomologyClass> {
    if w.degree() != 2 {
        return Err(Error::InvalidParameter(format!(
            "expected a 2-form, got degree {}",
            w.degree()
        )));
    }
    if w.dim() != a.dim() {
        return Err(Error::AmbientMismatch(w.dim(), a.dim()));
    }
    if !exterior::d(a, w).is_zero() {
        return Err(Error::FormNotClosed);
    }
    let filt = filtration(a)?;
    let denom = e02_denominator(a, &filt);
    let reduced = denom.reduce(w.coordinates());
    Ok(CohomologyClass {
        degree: 2,
        representative: KForm::from_coordinates(a.dim(), 2, &reduced),
        kind: ClassKind::Graded,
    })
}

/// True iff the matrix is invertible and preserves every bracket:
/// `[A x, A y] = A [x, y]`.
pub fn check_automorphism(a: &LieAlgebra, mat: &SparseMatrix) -> bool {
    let m = a.dim();
    if mat.rows() != m || mat.cols() != m {
        return false;
    }
    if mat.inverse().is_none() {
        return false;
    }
    let column = |c: usize| -> SparseVec {
        (0..m)
            .filter_map(|r| mat.get(r, c).map(|v| (r, v.clone())))
            .collect()
    };
    for i in 0..m {
        for j in (i + 1)..m {
            let lhs = a.bracket(&column(i), &column(j));
            let rhs = mat.apply(&a.bracket_basis(i, j));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Action of an automorphism on a graded class:
/// `A . [w]^{0,2} = [(A^{-1})^* w]^{0,2}`.
pub fn aut_action_e02(
    a: &LieAlgebra,
    mat: &SparseMatrix,
    class: &CohomologyClass,
) -> Result<CohomologyClass> {
    if class.kind != ClassKind::Graded || class.degree != 2 {
        return Err(Error::InvalidParameter(
            "automorphism action is defined on graded 2-form classes".into(),
        ));
    }
    if !check_automorphism(a, mat) {
        return Err(Error::NotAnAutomorphism);
    }
    let inv = mat.inverse().expect("checked invertible");
    let pulled = exterior::pullback_two_form(&inv, class.representative());
    e02_class(a, &pulled)
}

/// Exhaustive check that `d . d = 0` in every degree, blockwise over the
/// discovered grading.
pub fn verify_dd_zero(a: &LieAlgebra) -> bool {
    let table = DifferentialTable::new(a);
    let weights = a.discover_grading();
    let weight_of = |mask: u64| -> Vec<i64> {
        match &weights {
            None => Vec::new(),
            Some(w) => {
                let t = w[0].len();
                let mut acc = vec![0i64; t];
                let mut rem = mask;
                while rem != 0 {
                    let i = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    for (s, v) in acc.iter_mut().zip(&w[i]) {
                        *s += *v;
                    }
                }
                acc
            }
        }
    };
    for p in 1..=a.dim() {
        let mut groups: HashMap<Vec<i64>, Vec<u64>> = HashMap::new();
        for tuple in monomials(a.dim(), p) {
            let mask = tuple_to_mask(&tuple);
            groups.entry(weight_of(mask)).or_default().push(mask);
        }
        let ok = groups.par_iter().all(|(_, masks)| {
            let mut cache: HashMap<u64, Vec<(u64, Rational)>> = HashMap::new();
            for &mask in masks {
                let first = table.d_mask(mask);
                let mut acc: Vec<(u64, Rational)> = Vec::new();
                for (v, c) in &first {
                    let dv = cache.entry(*v).or_insert_with(|| table.d_mask(*v));
                    for (u, c2) in dv.iter() {
                        acc.push((*u, c * c2));
                    }
                }
                if !exterior::merge_mask_terms(acc).is_empty() {
                    return false;
                }
            }
            true
        });
        if !ok {
            return false;
        }
    }
    true
}
