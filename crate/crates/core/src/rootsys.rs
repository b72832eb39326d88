//! Positive root systems of the classical families A/B/C/D, the level
//! grading, and nilradicals of minimal parabolics with exact integer
//! structure constants.
//!
//! Structure constants come from explicit matrix realizations — strictly
//! upper-triangular matrices for type A, orthogonal/symplectic algebras
//! with respect to antidiagonal forms for B/D/C — so positive root
//! vectors are visibly nilpotent and every bracket is an integer matrix
//! commutator re-expanded in the root basis by an exact linear solve.

use crate::exactlin::{Rational, SparseMatrix};
use crate::liealg::LieAlgebra;
use crate::{Error, Result};
use std::fmt;

/// Classical family label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
            Family::C => write!(f, "C"),
            Family::D => write!(f, "D"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(format!("unknown family {other:?}, expected A, B, C or D")),
        }
    }
}

/// One positive root, in orthonormal (`e_i`) coordinates and as
/// non-negative integer coefficients over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    pub euclidean: Vec<i64>,
    pub coeffs: Vec<i64>,
    pub level: usize,
}

impl PositiveRoot {
    fn label(&self) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.euclidean.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let var = format!("e{}", i + 1);
            let piece = match c {
                1 => var,
                -1 => format!("-{var}"),
                c if c > 0 => format!("{c}{var}"),
                c => format!("-{}{var}", -c),
            };
            if parts.is_empty() {
                parts.push(piece);
            } else if c > 0 {
                parts.push(format!("+{piece}"));
            } else {
                parts.push(piece);
            }
        }
        format!("X[{}]", parts.concat())
    }
}

/// The positive system of a classical family at a given rank, with
/// roots sorted by (level, coefficient vector).
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub positive_roots: Vec<PositiveRoot>,
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn add(a: &[i64], b: &[i64], sign: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + sign * y).collect()
}

/// The full positive system for a family and rank.
pub fn positive_roots(family: Family, n: usize) -> Result<RootSystem> {
    if n < family.min_rank() {
        return Err(Error::InvalidParameter(format!(
            "family {family} requires rank >= {}, got {n}",
            family.min_rank()
        )));
    }
    // Euclidean ambient: n+1 for A_n, n otherwise.
    let edim = match family {
        Family::A => n + 1,
        _ => n,
    };
    let mut simple: Vec<Vec<i64>> = (0..n.saturating_sub(1))
        .map(|i| add(&unit(edim, i), &unit(edim, i + 1), -1))
        .collect();
    match family {
        Family::A => simple.push(add(&unit(edim, n - 1), &unit(edim, n), -1)),
        Family::B => simple.push(unit(edim, n - 1)),
        Family::C => {
            let mut v = vec![0; edim];
            v[n - 1] = 2;
            simple.push(v);
        }
        Family::D => simple.push(add(&unit(edim, n - 2), &unit(edim, n - 1), 1)),
    }

    let mut euclidean: Vec<Vec<i64>> = Vec::new();
    match family {
        Family::A => {
            for i in 0..=n {
                for j in (i + 1)..=n {
                    euclidean.push(add(&unit(edim, i), &unit(edim, j), -1));
                }
            }
        }
        Family::B => {
            for i in 0..n {
                for j in (i + 1)..n {
                    euclidean.push(add(&unit(edim, i), &unit(edim, j), -1));
                    euclidean.push(add(&unit(edim, i), &unit(edim, j), 1));
                }
                euclidean.push(unit(edim, i));
            }
        }
        Family::C => {
            for i in 0..n {
                for j in (i + 1)..n {
                    euclidean.push(add(&unit(edim, i), &unit(edim, j), -1));
                    euclidean.push(add(&unit(edim, i), &unit(edim, j), 1));
                }
                let mut v = vec![0; edim];
                v[i] = 2;
                euclidean.push(v);
            }
        }
        Family::D => {
            for i in 0..n {
                for j in (i + 1)..n {
                    euclidean.push(add(&unit(edim, i), &unit(edim, j), -1));
                    euclidean.push(add(&unit(edim, i), &unit(edim, j), 1));
                }
            }
        }
    }

    // Express each root over the simple roots by an exact solve.
    let simple_matrix = SparseMatrix::from_entries(
        edim,
        n,
        simple.iter().enumerate().flat_map(|(c, alpha)| {
            alpha
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(move |(r, &v)| (r, c, Rational::from_int(v)))
        }),
    );
    let mut roots = Vec::with_capacity(euclidean.len());
    for eu in euclidean {
        let rhs: Vec<Rational> = eu.iter().map(|&v| Rational::from_int(v)).collect();
        let sol = simple_matrix
            .solve(&rhs)
            .ok_or(Error::ExpansionFailure)?;
        let coeffs: Vec<i64> = sol
            .iter()
            .map(|c| {
                debug_assert!(c.is_integer() && !c.is_negative());
                c.numer().try_into().expect("small root coefficient")
            })
            .collect();
        let level = coeffs.iter().sum::<i64>() as usize;
        roots.push(PositiveRoot {
            euclidean: eu,
            coeffs,
            level,
        });
    }
    // Within a level, descending lexicographic order on the coefficient
    // vectors puts roots supported on earlier simple roots first; in
    // particular A_2 comes out with [e1,e2] = e3 literally.
    roots.sort_by(|a, b| {
        a.level
            .cmp(&b.level)
            .then_with(|| b.coeffs.cmp(&a.coeffs))
    });
    Ok(RootSystem {
        family,
        rank: n,
        simple_roots: simple,
        positive_roots: roots,
    })
}

impl RootSystem {
    /// The unique root of maximal level.
    pub fn max_root(&self) -> &PositiveRoot {
        self.positive_roots.last().expect("nonempty root system")
    }

    /// Nilpotency data read off the levels: the maximal root, the
    /// nilpotency index `k`, and the layer dimensions `L_1..L_k`.
    pub fn level_data(&self) -> (&PositiveRoot, usize, Vec<usize>) {
        let max = self.max_root();
        let k = max.level;
        let mut layers = vec![0usize; k];
        for r in &self.positive_roots {
            layers[r.level - 1] += 1;
        }
        debug_assert_eq!(layers[k - 1], 1, "maximal root must be unique");
        (max, k, layers)
    }
}

/// A nilradical together with its level grading.
#[derive(Debug, Clone)]
pub struct GradedNilradical {
    pub algebra: LieAlgebra,
    /// Level of each basis vector (index-aligned with the algebra basis).
    pub level_of_basis: Vec<usize>,
    /// Dimensions of the layers `L_1..L_k`.
    pub layer_dims: Vec<usize>,
    pub root_system: RootSystem,
}

/// Matrix unit `E_{rc}` (0-based) minus/plus friends, as sparse integer
/// matrices.
fn matrix_units(size: usize, units: &[(usize, usize, i64)]) -> SparseMatrix {
    SparseMatrix::from_entries(
        size,
        size,
        units
            .iter()
            .map(|&(r, c, v)| (r, c, Rational::from_int(v))),
    )
}

/// Explicit root-vector matrix for a positive root. Rows and columns are
/// 0-based; primes mean reflection through the antidiagonal.
fn root_vector(family: Family, n: usize, root: &PositiveRoot) -> SparseMatrix {
    let eu = &root.euclidean;
    match family {
        Family::A => {
            let size = n + 1;
            let i = eu.iter().position(|&c| c == 1).unwrap();
            let j = eu.iter().position(|&c| c == -1).unwrap();
            matrix_units(size, &[(i, j, 1)])
        }
        Family::B => {
            let size = 2 * n + 1;
            let mirror = |i: usize| size - 1 - i;
            let pos = eu.iter().position(|&c| c > 0).unwrap();
            if let Some(neg) = eu.iter().position(|&c| c < 0) {
                // e_i - e_j
                let (i, j) = (pos, neg);
                matrix_units(size, &[(i, j, 1), (mirror(j), mirror(i), -1)])
            } else if eu.iter().filter(|&&c| c != 0).count() == 2 {
                // e_i + e_j, i < j
                let i = pos;
                let j = eu.iter().skip(i + 1).position(|&c| c > 0).unwrap() + i + 1;
                matrix_units(size, &[(i, mirror(j), 1), (j, mirror(i), -1)])
            } else {
                // short root e_i
                let i = pos;
                matrix_units(size, &[(i, n, 1), (n, mirror(i), -1)])
            }
        }
        Family::C => {
            let size = 2 * n;
            let mirror = |i: usize| size - 1 - i;
            let pos = eu.iter().position(|&c| c > 0).unwrap();
            if let Some(neg) = eu.iter().position(|&c| c < 0) {
                let (i, j) = (pos, neg);
                matrix_units(size, &[(i, j, 1), (mirror(j), mirror(i), -1)])
            } else if eu[pos] == 2 {
                // long root 2 e_i
                matrix_units(size, &[(pos, mirror(pos), 1)])
            } else {
                // e_i + e_j
                let i = pos;
                let j = eu.iter().skip(i + 1).position(|&c| c > 0).unwrap() + i + 1;
                matrix_units(size, &[(i, mirror(j), 1), (j, mirror(i), 1)])
            }
        }
        Family::D => {
            let size = 2 * n;
            let mirror = |i: usize| size - 1 - i;
            let pos = eu.iter().position(|&c| c > 0).unwrap();
            if let Some(neg) = eu.iter().position(|&c| c < 0) {
                let (i, j) = (pos, neg);
                matrix_units(size, &[(i, j, 1), (mirror(j), mirror(i), -1)])
            } else {
                let i = pos;
                let j = eu.iter().skip(i + 1).position(|&c| c > 0).unwrap() + i + 1;
                matrix_units(size, &[(i, mirror(j), 1), (j, mirror(i), -1)])
            }
        }
    }
}

fn vectorize(m: &SparseMatrix) -> Vec<Rational> {
    let size = m.rows();
    let mut v = vec![Rational::zero(); size * size];
    for (r, c, val) in m.entries() {
        v[r * size + c] = val.clone();
    }
    v
}

/// The nilradical of the minimal parabolic for a family and rank, with
/// structure constants obtained from matrix commutators.
pub fn nilradical(family: Family, n: usize) -> Result<GradedNilradical> {
    let rs = positive_roots(family, n)?;
    let roots = &rs.positive_roots;
    let count = roots.len();
    let vectors: Vec<SparseMatrix> = roots
        .iter()
        .map(|r| root_vector(family, n, r))
        .collect();
    let size = vectors[0].rows();

    // Expansion matrix: columns are the vectorized root vectors.
    let expansion = SparseMatrix::from_entries(
        size * size,
        count,
        vectors.iter().enumerate().flat_map(|(c, m)| {
            m.entries()
                .map(move |(r, cc, v)| (r * size + cc, c, v.clone()))
                .collect::<Vec<_>>()
        }),
    );

    let mut brackets = Vec::new();
    for i in 0..count {
        for j in (i + 1)..count {
            let comm = {
                let ab = vectors[i].mul(&vectors[j]);
                let ba = vectors[j].mul(&vectors[i]);
                SparseMatrix::from_entries(
                    size,
                    size,
                    ab.entries()
                        .map(|(r, c, v)| (r, c, v.clone()))
                        .chain(ba.entries().map(|(r, c, v)| (r, c, -v))),
                )
            };
            if comm.is_zero() {
                continue;
            }
            let sol = expansion
                .solve(&vectorize(&comm))
                .ok_or(Error::ExpansionFailure)?;
            let terms: Vec<(usize, Rational)> = sol
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect();
            if !terms.is_empty() {
                brackets.push(((i, j), terms));
            }
        }
    }

    let labels: Vec<String> = roots.iter().map(|r| r.label()).collect();
    let algebra = LieAlgebra::new(count, labels, brackets)?;
    let level_of_basis: Vec<usize> = roots.iter().map(|r| r.level).collect();
    let (_, _, layer_dims) = rs.level_data();
    Ok(GradedNilradical {
        algebra,
        level_of_basis,
        layer_dims,
        root_system: rs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;

    #[test]
    fn root_counts() {
        assert_eq!(positive_roots(Family::A, 3).unwrap().positive_roots.len(), 6);
        for n in 2..=4 {
            assert_eq!(
                positive_roots(Family::B, n).unwrap().positive_roots.len(),
                n * n
            );
            assert_eq!(
                positive_roots(Family::C, n).unwrap().positive_roots.len(),
                n * n
            );
        }
        for n in 4..=5 {
            assert_eq!(
                positive_roots(Family::D, n).unwrap().positive_roots.len(),
                n * (n - 1)
            );
        }
        assert!(positive_roots(Family::D, 3).is_err());
        assert!(positive_roots(Family::B, 1).is_err());
    }

    #[test]
    fn level_data_matches_known_values() {
        let rs = positive_roots(Family::A, 4).unwrap();
        let (max, k, layers) = rs.level_data();
        assert_eq!(k, 4);
        assert_eq!(layers[4 - 2], 2); // two roots of level n-1
        assert_eq!(max.coeffs, vec![1, 1, 1, 1]);

        let rs = positive_roots(Family::C, 3).unwrap();
        let (_, k, layers) = rs.level_data();
        assert_eq!(k, 5);
        assert_eq!(layers[k - 2], 1);

        let rs = positive_roots(Family::D, 4).unwrap();
        let (_, k, layers) = rs.level_data();
        assert_eq!(k, 5);
        assert_eq!(layers.iter().sum::<usize>(), 12);

        let rs = positive_roots(Family::B, 3).unwrap();
        let (_, k, _) = rs.level_data();
        assert_eq!(k, 5); // 2n - 1
    }

    #[test]
    fn defining_equations_of_realizations() {
        // B/D: X^T S + S X = 0 with S the antidiagonal identity.
        // C: X^T J + J X = 0 with J the split antisymmetric form.
        for (family, n) in [(Family::B, 3), (Family::D, 4), (Family::C, 3)] {
            let rs = positive_roots(family, n).unwrap();
            let size = match family {
                Family::B => 2 * n + 1,
                _ => 2 * n,
            };
            let form = match family {
                Family::C => SparseMatrix::from_entries(
                    size,
                    size,
                    (0..size).map(|i| {
                        let v = if i < n { 1 } else { -1 };
                        (i, size - 1 - i, Rational::from_int(v))
                    }),
                ),
                _ => SparseMatrix::from_entries(
                    size,
                    size,
                    (0..size).map(|i| (i, size - 1 - i, Rational::from_int(1))),
                ),
            };
            for root in &rs.positive_roots {
                let x = root_vector(family, n, root);
                let xt = x.transpose();
                let residual = SparseMatrix::from_entries(
                    size,
                    size,
                    xt.mul(&form)
                        .entries()
                        .map(|(r, c, v)| (r, c, v.clone()))
                        .chain(form.mul(&x).entries().map(|(r, c, v)| (r, c, v.clone()))),
                );
                assert!(
                    residual.is_zero(),
                    "{family}{n} root {:?} violates the defining form",
                    root.euclidean
                );
            }
        }
    }

    #[test]
    fn small_nilradicals() {
        let a1 = nilradical(Family::A, 1).unwrap();
        assert_eq!(a1.algebra.dim(), 1);
        assert!(a1.algebra.bracket_entries().next().is_none());

        // A_2 gives the Heisenberg algebra with [e1,e2] = e3 on the nose.
        let a2 = nilradical(Family::A, 2).unwrap();
        assert_eq!(a2.algebra.dim(), 3);
        assert_eq!(
            a2.algebra.bracket_basis(0, 1),
            vec![(2, Rational::from_int(1))]
        );
        assert!(a2.algebra.validate().is_empty());

        // B_2: the 4-dimensional 3-step algebra.
        let b2 = nilradical(Family::B, 2).unwrap();
        assert_eq!(b2.algebra.dim(), 4);
        let series = b2.algebra.lower_central_series().unwrap();
        assert_eq!(series.nilpotency_index, 3);
    }

    #[test]
    fn dual_differentials_follow_the_level_grading() {
        // d of a dual root vector vanishes iff the root is simple, and
        // otherwise lands in the sum of L_i* ^ L_j* with i + j equal to
        // the root's level.
        for (family, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let nr = nilradical(family, n).unwrap();
            let m = nr.algebra.dim();
            for (idx, root) in nr.root_system.positive_roots.iter().enumerate() {
                let gamma = crate::exterior::KForm::monomial(m, &[idx], Rational::from_int(1));
                let dgamma = crate::exterior::d(&nr.algebra, &gamma);
                assert_eq!(
                    dgamma.is_zero(),
                    root.level == 1,
                    "{family}{n}: d gamma vanishes iff simple ({:?})",
                    root.euclidean
                );
                for (tuple, _) in dgamma.terms() {
                    assert_eq!(
                        nr.level_of_basis[tuple[0]] + nr.level_of_basis[tuple[1]],
                        root.level,
                        "{family}{n}: component levels sum to the root level"
                    );
                }
            }
        }
    }

    #[test]
    fn filtration_is_the_level_flag() {
        // V_j = L_1* + ... + L_j*, compared against the cohomology
        // module's annihilator construction.
        for (family, n) in [(Family::A, 3), (Family::B, 2), (Family::C, 3), (Family::D, 4)] {
            let nr = nilradical(family, n).unwrap();
            let filt = crate::cohomology::filtration(&nr.algebra).unwrap();
            let (_, k, _) = nr.root_system.level_data();
            assert_eq!(filt.nilpotency_index(), k);
            for (j, space) in filt.spaces.iter().enumerate() {
                let expected: Vec<usize> = nr
                    .level_of_basis
                    .iter()
                    .enumerate()
                    .filter(|(_, &lvl)| lvl <= j)
                    .map(|(i, _)| i)
                    .collect();
                assert!(space.is_monomial(), "{family}{n}: V_{j} axis-aligned");
                assert_eq!(space.pivot_cols(), expected, "{family}{n}: V_{j}");
            }
        }
    }

    #[test]
    fn nilradical_structural_invariants() {
        for (family, n) in [
            (Family::A, 3),
            (Family::A, 4),
            (Family::B, 2),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
        ] {
            let nr = nilradical(family, n).unwrap();
            assert!(
                nr.algebra.validate().is_empty(),
                "Jacobi fails for {family}{n}"
            );
            assert_eq!(nr.algebra.dim(), nr.root_system.positive_roots.len());
            // Nilpotency index computed from brackets matches the level of
            // the maximal root.
            let series = nr.algebra.lower_central_series().unwrap();
            let (_, k, layers) = nr.root_system.level_data();
            assert_eq!(series.nilpotency_index, k, "{family}{n}");
            assert_eq!(layers.iter().sum::<usize>(), nr.algebra.dim());
            assert_eq!(*layers.last().unwrap(), 1);
            // dim L_{k-1}: 2 for type A, 1 for B/C/D.
            let expected = if family == Family::A { 2 } else { 1 };
            if k >= 2 {
                assert_eq!(layers[k - 2], expected, "{family}{n}");
            }
            // Grading: [L_i, L_j] <= L_{i+j}.
            for ((i, j), terms) in nr.algebra.bracket_entries() {
                let want = nr.level_of_basis[*i] + nr.level_of_basis[*j];
                for (t, _) in terms {
                    assert_eq!(nr.level_of_basis[*t], want, "{family}{n} grading");
                }
            }
        }
    }
}
