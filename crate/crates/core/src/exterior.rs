//! Alternating forms, wedge products, and the Chevalley–Eilenberg
//! differential.
//!
//! Wedge uses the determinant convention — `(a^b)(x,y) = a(x)b(y) -
//! a(y)b(x)` and its shuffle generalization with no factorial
//! normalizers — so integral inputs stay integral. The differential is
//! fixed by `dg(x,y) = -g([x,y])` on 1-forms and the graded Leibniz
//! rule; this is the sign for which the Maurer–Cartan relations of the
//! usual examples come out as `da^{ij} = -a^i ^ a^j`.
//!
//! Monomials on up to 64 basis covectors are packed into `u64` masks
//! internally; the public [`KForm`] speaks strictly increasing index
//! tuples.

use crate::exactlin::{Rational, SparseMatrix, SparseVec};
use crate::liealg::LieAlgebra;
use std::collections::BTreeMap;
use std::fmt;

/// A sparse alternating k-form: a map from strictly increasing index
/// tuples (0-based) to nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KForm {
    degree: usize,
    dim: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        KForm {
            degree,
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// Single monomial `c * e^{i1} ^ ... ^ e^{ip}`; indices must be
    /// strictly increasing and within the ambient dimension.
    pub fn monomial(dim: usize, indices: &[usize], coeff: Rational) -> Self {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "indices must be strictly increasing"
        );
        assert!(indices.iter().all(|&i| i < dim), "index out of range");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(indices.to_vec(), coeff);
        }
        KForm {
            degree: indices.len(),
            dim,
            terms,
        }
    }

    pub fn from_terms(
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, Rational)>,
    ) -> Self {
        let mut out = KForm::zero(dim, degree);
        for (tuple, c) in terms {
            out.add_term(&tuple, c);
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, tuple: &[usize]) -> Rational {
        self.terms.get(tuple).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, tuple: &[usize], c: Rational) {
        assert_eq!(tuple.len(), self.degree, "tuple length != degree");
        assert!(tuple.windows(2).all(|w| w[0] < w[1]));
        assert!(tuple.iter().all(|&i| i < self.dim));
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(tuple) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(tuple);
                }
            }
            None => {
                self.terms.insert(tuple.to_vec(), c);
            }
        }
    }

    pub fn scaled(&self, c: &Rational) -> KForm {
        if c.is_zero() {
            return KForm::zero(self.dim, self.degree);
        }
        KForm {
            degree: self.degree,
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(t, v)| (t.clone(), v * c))
                .collect(),
        }
    }

    pub fn add(&self, other: &KForm) -> KForm {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (t, v) in &other.terms {
            out.add_term(t, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &KForm) -> KForm {
        self.add(&other.scaled(&Rational::from_int(-1)))
    }

    /// Coordinates in the lexicographic monomial basis of degree-p forms.
    pub fn coordinates(&self) -> SparseVec {
        self.terms
            .iter()
            .map(|(t, v)| (tuple_rank(self.dim, t), v.clone()))
            .collect()
    }

    pub fn from_coordinates(dim: usize, degree: usize, coords: &SparseVec) -> KForm {
        KForm {
            degree,
            dim,
            terms: coords
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(idx, v)| (tuple_unrank(dim, degree, *idx), v.clone()))
                .collect(),
        }
    }

    /// Evaluation on column vectors: each term contributes its
    /// coefficient times the minor `det[ x_c[i_r] ]`.
    pub fn evaluate(&self, vectors: &[Vec<Rational>]) -> Rational {
        assert_eq!(vectors.len(), self.degree, "need one vector per slot");
        for v in vectors {
            assert_eq!(v.len(), self.dim);
        }
        let mut acc = Rational::zero();
        for (tuple, c) in &self.terms {
            let minor: Vec<Vec<Rational>> = tuple
                .iter()
                .map(|&i| vectors.iter().map(|v| v[i].clone()).collect())
                .collect();
            let det = SparseMatrix::from_dense(&minor).determinant();
            acc = &acc + &(c * &det);
        }
        acc
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (tuple, c) in &self.terms {
            let mono = tuple
                .iter()
                .map(|i| format!("e{}", i + 1))
                .collect::<Vec<_>>()
                .join("^");
            if first {
                first = false;
                if c.is_one() {
                    write!(f, "{mono}")?;
                } else {
                    write!(f, "{c}*{mono}")?;
                }
            } else if c.is_negative() {
                let a = -c;
                if a.is_one() {
                    write!(f, " - {mono}")?;
                } else {
                    write!(f, " - {a}*{mono}")?;
                }
            } else if c.is_one() {
                write!(f, " + {mono}")?;
            } else {
                write!(f, " + {c}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Wedge product. Degree adds; a product whose degree exceeds the
/// ambient dimension is the zero form.
pub fn wedge(a: &KForm, b: &KForm) -> KForm {
    assert_eq!(a.dim(), b.dim(), "wedge of forms on different spaces");
    let degree = a.degree() + b.degree();
    let mut out = KForm::zero(a.dim(), degree);
    if degree > a.dim() {
        return out;
    }
    for (ta, ca) in a.terms() {
        'next: for (tb, cb) in b.terms() {
            // Merge the two increasing tuples, counting inversions.
            let mut merged = Vec::with_capacity(degree);
            let (mut i, mut j) = (0, 0);
            let mut inversions = 0usize;
            while i < ta.len() || j < tb.len() {
                match (ta.get(i), tb.get(j)) {
                    (Some(&x), Some(&y)) => {
                        if x == y {
                            continue 'next; // repeated covector
                        }
                        if x < y {
                            merged.push(x);
                            i += 1;
                        } else {
                            merged.push(y);
                            inversions += ta.len() - i;
                            j += 1;
                        }
                    }
                    (Some(&x), None) => {
                        merged.push(x);
                        i += 1;
                    }
                    (None, Some(&y)) => {
                        merged.push(y);
                        j += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            let mut c = ca * cb;
            if inversions % 2 == 1 {
                c = -c;
            }
            out.add_term(&merged, c);
        }
    }
    out
}

// ---------------------------------------------------------------------
// Mask-packed monomials. Bit i set = covector e^i present. These are the
// working representation for everything performance-sensitive.
// ---------------------------------------------------------------------

pub(crate) fn tuple_to_mask(tuple: &[usize]) -> u64 {
    let mut m = 0u64;
    for &i in tuple {
        debug_assert!(i < 64);
        m |= 1 << i;
    }
    m
}

pub(crate) fn mask_to_tuple(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        out.push(i);
        mask &= mask - 1;
    }
    out
}

/// Precomputed `de^k` for every basis covector, as mask/coefficient
/// pairs: `de^k = -sum c_{ij}^k e^i ^ e^j`.
pub(crate) struct DifferentialTable {
    pub terms: Vec<Vec<(u64, Rational)>>,
}

impl DifferentialTable {
    pub fn new(a: &LieAlgebra) -> Self {
        let mut terms: Vec<Vec<(u64, Rational)>> = vec![Vec::new(); a.dim()];
        for (&(i, j), vec) in a.bracket_entries() {
            let mask = (1u64 << i) | (1u64 << j);
            for (k, c) in vec {
                terms[*k].push((mask, -c));
            }
        }
        DifferentialTable { terms }
    }

    /// `d` of a monomial mask, merged and zero-free.
    pub fn d_mask(&self, mask: u64) -> Vec<(u64, Rational)> {
        let mut out: Vec<(u64, Rational)> = Vec::new();
        let mut rem = mask;
        while rem != 0 {
            let j = rem.trailing_zeros() as usize;
            rem &= rem - 1;
            if self.terms[j].is_empty() {
                continue;
            }
            let rest = mask & !(1u64 << j);
            let pos_j = (mask & ((1u64 << j) - 1)).count_ones() as usize;
            for (pmask, c) in &self.terms[j] {
                if pmask & rest != 0 {
                    continue; // repeated covector kills the term
                }
                let a = pmask.trailing_zeros() as u64;
                let b = 63 - pmask.leading_zeros() as u64;
                let cnt = (rest & ((1u64 << a) - 1)).count_ones() as usize
                    + (rest & ((1u64 << b) - 1)).count_ones() as usize;
                let sign = (pos_j + cnt) % 2 == 1;
                let coeff = if sign { -c } else { c.clone() };
                out.push((rest | pmask, coeff));
            }
        }
        merge_mask_terms(out)
    }
}

pub(crate) fn merge_mask_terms(mut terms: Vec<(u64, Rational)>) -> Vec<(u64, Rational)> {
    terms.sort_unstable_by_key(|(m, _)| *m);
    let mut out: Vec<(u64, Rational)> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => {
                *lc = &*lc + &c;
                if lc.is_zero() {
                    out.pop();
                }
            }
            _ => out.push((m, c)),
        }
    }
    out
}

/// Chevalley–Eilenberg differential of a k-form on `a`.
pub fn d(a: &LieAlgebra, f: &KForm) -> KForm {
    assert_eq!(f.dim(), a.dim(), "form lives on a different space");
    let table = DifferentialTable::new(a);
    let mut acc: Vec<(u64, Rational)> = Vec::new();
    for (tuple, c) in f.terms() {
        for (mask, v) in table.d_mask(tuple_to_mask(tuple)) {
            acc.push((mask, &v * c));
        }
    }
    let merged = merge_mask_terms(acc);
    KForm::from_terms(
        a.dim(),
        f.degree() + 1,
        merged
            .into_iter()
            .map(|(m, c)| (mask_to_tuple(m), c)),
    )
}

/// Skew matrix of a 2-form: entry `(i,j)` is `w(e_i, e_j)`.
pub fn two_form_gram(w: &KForm) -> SparseMatrix {
    assert_eq!(w.degree(), 2, "gram matrix of a non-2-form");
    let m = w.dim();
    let mut entries = Vec::with_capacity(2 * w.terms().count());
    for (tuple, c) in w.terms() {
        entries.push((tuple[0], tuple[1], c.clone()));
        entries.push((tuple[1], tuple[0], -c));
    }
    SparseMatrix::from_entries(m, m, entries)
}

/// 2-form from a skew matrix (upper triangle read off directly).
pub fn two_form_from_gram(g: &SparseMatrix) -> KForm {
    assert_eq!(g.rows(), g.cols());
    KForm::from_terms(
        g.rows(),
        2,
        g.entries()
            .filter(|(r, c, _)| r < c)
            .map(|(r, c, v)| (vec![r, c], v.clone())),
    )
}

/// Pullback of a 2-form along a linear map `P`: `(P^* w)(x, y) =
/// w(P x, P y)`, i.e. the Gram matrix transforms as `P^T G P`.
pub fn pullback_two_form(p: &SparseMatrix, w: &KForm) -> KForm {
    let g = two_form_gram(w);
    let transformed = p.transpose().mul(&g).mul(p);
    two_form_from_gram(&transformed)
}

/// Binomial coefficient as usize; callers keep `n <= 64`.
pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Lexicographic rank of a strictly increasing tuple among all
/// `C(dim, p)` tuples of its length.
pub(crate) fn tuple_rank(dim: usize, tuple: &[usize]) -> usize {
    let p = tuple.len();
    let mut rank = 0usize;
    let mut prev: isize = -1;
    for (r, &c) in tuple.iter().enumerate() {
        for j in (prev + 1) as usize..c {
            rank += binomial(dim - 1 - j, p - 1 - r);
        }
        prev = c as isize;
    }
    rank
}

pub(crate) fn tuple_unrank(dim: usize, p: usize, mut rank: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(p);
    let mut next = 0usize;
    for r in 0..p {
        let mut c = next;
        loop {
            let block = binomial(dim - 1 - c, p - 1 - r);
            if rank < block {
                break;
            }
            rank -= block;
            c += 1;
        }
        out.push(c);
        next = c + 1;
    }
    out
}

/// All degree-p monomial tuples in lexicographic order.
pub fn monomials(dim: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(dim, p));
    let mut cur: Vec<usize> = (0..p).collect();
    if p > dim {
        return out;
    }
    loop {
        out.push(cur.clone());
        // Advance to the next combination in lex order.
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + dim - p {
                break;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..p {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Matrix of `d_p : Lambda^p -> Lambda^{p+1}` in the lexicographic
/// monomial bases; column j is `d` of the j-th monomial.
pub fn differential_matrix(a: &LieAlgebra, p: usize) -> SparseMatrix {
    let m = a.dim();
    assert!(p >= 1 && p <= m, "degree out of range");
    let table = DifferentialTable::new(a);
    let cols = monomials(m, p);
    let mut entries = Vec::new();
    for (j, tuple) in cols.iter().enumerate() {
        for (mask, c) in table.d_mask(tuple_to_mask(tuple)) {
            let row = tuple_rank(m, &mask_to_tuple(mask));
            entries.push((row, j, c));
        }
    }
    SparseMatrix::from_entries(binomial(m, p + 1), binomial(m, p), entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("e{i}")).collect()
    }

    fn heisenberg3() -> LieAlgebra {
        LieAlgebra::new(3, labels(3), vec![((0, 1), vec![(2, r(1))])]).unwrap()
    }

    fn six_dim_example() -> LieAlgebra {
        LieAlgebra::new(
            6,
            labels(6),
            vec![
                ((0, 1), vec![(3, r(1))]),
                ((0, 2), vec![(4, r(1))]),
                ((0, 3), vec![(5, r(1))]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn wedge_alternates() {
        let e1 = KForm::monomial(3, &[0], r(1));
        let e2 = KForm::monomial(3, &[1], r(1));
        assert!(wedge(&e1, &e1).is_zero());
        let a = wedge(&e1, &e2);
        let b = wedge(&e2, &e1);
        assert_eq!(a, b.scaled(&r(-1)));
        assert_eq!(a.coefficient(&[0, 1]), r(1));
    }

    #[test]
    fn wedge_evaluates_like_determinant() {
        let e12 = KForm::monomial(3, &[0, 1], r(1));
        let e3 = KForm::monomial(3, &[2], r(1));
        let triple = wedge(&e12, &e3);
        let basis: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { r(1) } else { r(0) }).collect())
            .collect();
        assert_eq!(triple.evaluate(&basis), r(1));
        // Degree overflow collapses to zero.
        assert!(wedge(&triple, &e3).is_zero());
        let overflow = wedge(&triple, &KForm::monomial(3, &[0], r(1)));
        assert!(overflow.is_zero());
        assert_eq!(overflow.degree(), 4);
    }

    #[test]
    fn wedge_bilinear_on_sums() {
        let f = KForm::from_terms(4, 1, vec![(vec![0], r(2)), (vec![2], r(-1))]);
        let g = KForm::from_terms(4, 1, vec![(vec![1], r(3)), (vec![3], r(1))]);
        let w = wedge(&f, &g);
        assert_eq!(w.coefficient(&[0, 1]), r(6));
        assert_eq!(w.coefficient(&[0, 3]), r(2));
        assert_eq!(w.coefficient(&[1, 2]), r(3)); // -(-1)*3
        assert_eq!(w.coefficient(&[2, 3]), r(-1));
    }

    #[test]
    fn differential_on_abelian_vanishes() {
        let ab = LieAlgebra::new(4, labels(4), vec![]).unwrap();
        let f = KForm::from_terms(4, 2, vec![(vec![0, 1], r(3)), (vec![1, 3], r(-2))]);
        assert!(d(&ab, &f).is_zero());
    }

    #[test]
    fn differential_of_heisenberg_dual() {
        let h = heisenberg3();
        let e3 = KForm::monomial(3, &[2], r(1));
        let de3 = d(&h, &e3);
        // de^3 = -e^1 ^ e^2 under the fixed sign convention.
        assert_eq!(de3, KForm::monomial(3, &[0, 1], r(-1)));
        for i in 0..2 {
            assert!(d(&h, &KForm::monomial(3, &[i], r(1))).is_zero());
        }
        // d d = 0 across degrees.
        let dd = d(&h, &de3);
        assert!(dd.is_zero());
    }

    #[test]
    fn differential_matches_pointwise_formula() {
        // Independent route: d f(x_1..x_{p+1}) =
        //   sum_{i<j} (-1)^{i+j} f([x_i,x_j], x_1..^i..^j..x_{p+1}).
        let algebras = [heisenberg3(), six_dim_example()];
        for a in &algebras {
            let m = a.dim();
            let forms = [
                KForm::monomial(m, &[m - 1], r(1)),
                KForm::from_terms(m, 2, vec![(vec![0, m - 1], r(1)), (vec![1, 2], r(2))]),
            ];
            let basis: Vec<Vec<Rational>> = (0..m)
                .map(|i| (0..m).map(|j| if i == j { r(1) } else { r(0) }).collect())
                .collect();
            for f in &forms {
                let df = d(a, f);
                let p1 = f.degree() + 1;
                for args in monomials(m, p1) {
                    let mut expect = Rational::zero();
                    for i in 0..p1 {
                        for j in (i + 1)..p1 {
                            let bracket = a.bracket_basis(args[i], args[j]);
                            if bracket.is_empty() {
                                continue;
                            }
                            let mut rest: Vec<Vec<Rational>> = Vec::new();
                            let mut bx = vec![r(0); m];
                            for (k, c) in &bracket {
                                bx[*k] = c.clone();
                            }
                            rest.push(bx);
                            for (t, &idx) in args.iter().enumerate() {
                                if t != i && t != j {
                                    rest.push(basis[idx].clone());
                                }
                            }
                            let val = f.evaluate(&rest);
                            // Sign (-1)^{i+j} over 1-based slots; the parity
                            // is unchanged by switching to 0-based indices.
                            let sign = if (i + j) % 2 == 1 { r(-1) } else { r(1) };
                            expect = &expect + &(&sign * &val);
                        }
                    }
                    let got = df.evaluate(&args.iter().map(|&i| basis[i].clone()).collect::<Vec<_>>());
                    assert_eq!(got, expect, "degree {} monomial {:?}", f.degree(), args);
                }
            }
        }
    }

    #[test]
    fn leibniz_rule() {
        let a = six_dim_example();
        let f = KForm::from_terms(6, 1, vec![(vec![3], r(1)), (vec![5], r(2))]);
        let g = KForm::from_terms(6, 2, vec![(vec![1, 5], r(1)), (vec![2, 4], r(-3))]);
        let lhs = d(&a, &wedge(&f, &g));
        let rhs = wedge(&d(&a, &f), &g).add(&wedge(&f, &d(&a, &g)).scaled(&r(-1)));
        assert_eq!(lhs, rhs);

        let f2 = KForm::from_terms(6, 2, vec![(vec![0, 3], r(1)), (vec![3, 4], r(5))]);
        let lhs = d(&a, &wedge(&f2, &g));
        let rhs = wedge(&d(&a, &f2), &g).add(&wedge(&f2, &d(&a, &g))); // even degree
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_on_random_forms() {
        use proptest::prelude::*;
        let mut runner = proptest::test_runner::TestRunner::deterministic();
        let coeffs = proptest::collection::vec(-3i64..=3, 6 + 15);
        runner
            .run(&coeffs, |cs| {
                let a = six_dim_example();
                let f = KForm::from_terms(
                    6,
                    1,
                    (0..6).map(|i| (vec![i], r(cs[i]))),
                );
                let g = KForm::from_terms(
                    6,
                    2,
                    monomials(6, 2)
                        .into_iter()
                        .enumerate()
                        .map(|(n, t)| (t, r(cs[6 + n]))),
                );
                let lhs = d(&a, &wedge(&f, &g));
                let rhs = wedge(&d(&a, &f), &g).add(&wedge(&f, &d(&a, &g)).scaled(&r(-1)));
                prop_assert_eq!(lhs, rhs);
                Ok(())
            })
            .unwrap();
    }

    #[test]
    fn differential_matrix_shapes_and_ranks() {
        let ab = LieAlgebra::new(3, labels(3), vec![]).unwrap();
        assert!(differential_matrix(&ab, 1).is_zero());

        let h = heisenberg3();
        let d1 = differential_matrix(&h, 1);
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        assert_eq!(crate::exactlin::rank(&d1), 1);
        let d2 = differential_matrix(&h, 2);
        // Composite d_2 d_1 = 0.
        assert!(d2.mul(&d1).is_zero());
        // d vanishes on all of Lambda^2 for the Heisenberg algebra.
        assert_eq!(crate::exactlin::kernel_basis(&d2).dim(), 3);
    }

    #[test]
    fn composite_vanishes_for_six_dim_example() {
        let a = six_dim_example();
        for p in 1..6 {
            let dp = differential_matrix(&a, p);
            let dp1 = differential_matrix(&a, p + 1);
            assert!(dp1.mul(&dp).is_zero(), "d.d != 0 at degree {p}");
        }
    }

    #[test]
    fn rank_unrank_roundtrip() {
        for dim in [4usize, 6, 9] {
            for p in 0..=dim.min(4) {
                for (idx, t) in monomials(dim, p).iter().enumerate() {
                    assert_eq!(tuple_rank(dim, t), idx);
                    assert_eq!(&tuple_unrank(dim, p, idx), t);
                }
            }
        }
    }

    #[test]
    fn closed_one_forms_annihilate_derived_ideal() {
        let a = six_dim_example();
        let series = a.lower_central_series().unwrap();
        let derived = &series.ideals[1];
        for i in 0..6 {
            let f = KForm::monomial(6, &[i], r(1));
            let closed = d(&a, &f).is_zero();
            let annihilates = derived
                .vectors()
                .iter()
                .all(|v| !v.iter().any(|(idx, _)| *idx == i));
            assert_eq!(closed, annihilates, "covector e{}", i + 1);
        }
    }
}
