//! The symplectic decision ladder: exact witnesses, the vanishing
//! obstruction, and honest inconclusive verdicts with a probability
//! bound.
//!
//! Positive answers carry a closed 2-form with nonzero Gram determinant,
//! both verified exactly. Negative answers are certified only through
//! odd dimension or a vanishing `E_inf^{0,2}`; when neither applies and
//! sampling finds nothing, the verdict is inconclusive together with a
//! Schwartz–Zippel bound on the probability that a symplectic form was
//! missed.

use crate::cohomology;
use crate::exactlin::{self, Rational, SparseMatrix, SparseVec, SubspaceBasis};
use crate::exterior::{self, KForm};
use crate::liealg::LieAlgebra;
use crate::rootsys::GradedNilradical;
use crate::Result;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SAMPLES: usize = 64;
pub const DEFAULT_COEFF_BOUND: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonSymplecticReason {
    OddDimension,
    ObstructionVanishes,
}

/// Decision record for symplectic existence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymplecticVerdict {
    /// An exact witness: closed and non-degenerate, both verified.
    Symplectic { witness: KForm },
    /// Certified non-existence.
    CertifiedNonSymplectic { reason: NonSymplecticReason },
    /// No witness found and the obstruction does not apply. The bound is
    /// `(degree_bound / sample_space_size)^samples`: the chance that a
    /// nonzero Gram-determinant polynomial vanished on every sample.
    Inconclusive {
        samples: usize,
        degree_bound: usize,
        sample_space_size: u64,
        failure_bound: Rational,
    },
}

/// Echelon basis of the closed 2-forms `ker d_2` in monomial coordinates.
pub fn closed_two_forms(a: &LieAlgebra) -> SubspaceBasis {
    if a.dim() < 2 {
        return SubspaceBasis::zero(0);
    }
    exactlin::kernel_basis(&exterior::differential_matrix(a, 2))
}

/// Skew Gram matrix `M[i][j] = w(e_i, e_j)`; non-degeneracy of the form
/// is `det M != 0`.
pub fn gram_matrix(w: &KForm) -> SparseMatrix {
    exterior::two_form_gram(w)
}

/// True iff `E_inf^{0,2}` vanishes; by the central-extension identity
/// this certifies that no trivial extension is symplectic.
pub fn obstruction_vanishes(a: &LieAlgebra) -> Result<bool> {
    Ok(cohomology::e_infty_dim(a, 0, 2)? == 0)
}

/// Scale a rational vector to a primitive integer vector.
fn primitive_integer(v: &SparseVec) -> SparseVec {
    let mut lcm = BigInt::one();
    for (_, c) in v {
        lcm = lcm.lcm(&c.denom());
    }
    let scaled: Vec<(usize, BigInt)> = v
        .iter()
        .map(|(i, c)| (*i, c.numer() * (&lcm / c.denom())))
        .collect();
    let mut gcd = BigInt::zero();
    for (_, n) in &scaled {
        gcd = gcd.gcd(n);
    }
    if gcd.is_zero() {
        gcd = BigInt::one();
    }
    scaled
        .into_iter()
        .map(|(i, n)| {
            (
                i,
                Rational::from_big(num_rational::BigRational::from(n / &gcd)),
            )
        })
        .collect()
}

/// Randomized search for a closed non-degenerate 2-form. Draws integer
/// coefficients over the closed-form basis from a per-sample PRNG stream
/// and returns the first combination with exactly nonzero Gram
/// determinant. The search is randomized but every verification is
/// exact, and the outcome is a deterministic function of
/// `(algebra, seed, samples, bound)`.
pub fn find_witness_with_bound(
    a: &LieAlgebra,
    seed: u64,
    samples: usize,
    bound: i64,
) -> Option<KForm> {
    let m = a.dim();
    if m % 2 == 1 {
        return None;
    }
    let basis: Vec<SparseVec> = closed_two_forms(a)
        .vectors()
        .iter()
        .map(primitive_integer)
        .collect();
    if basis.is_empty() {
        return None;
    }
    let bound = bound.max((m * samples.max(1)) as i64);
    for sample in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(sample as u64);
        let mut combo: SparseVec = Vec::new();
        for b in &basis {
            let c = Rational::from_int(rng.gen_range(-bound..=bound));
            combo = exactlin::axpy(&combo, &c, b);
        }
        let form = KForm::from_coordinates(m, 2, &combo);
        if form.is_zero() {
            continue;
        }
        if !gram_matrix(&form).determinant().is_zero() {
            debug_assert!(exterior::d(a, &form).is_zero());
            return Some(form);
        }
    }
    None
}

pub fn find_witness(a: &LieAlgebra, seed: u64, samples: usize) -> Option<KForm> {
    find_witness_with_bound(a, seed, samples, DEFAULT_COEFF_BOUND)
}

/// Full decision ladder: odd dimension, then witness search, then the
/// vanishing obstruction, then an honest inconclusive.
pub fn decide_with_bound(
    a: &LieAlgebra,
    seed: u64,
    samples: usize,
    bound: i64,
) -> Result<SymplecticVerdict> {
    let m = a.dim();
    if m % 2 == 1 {
        return Ok(SymplecticVerdict::CertifiedNonSymplectic {
            reason: NonSymplecticReason::OddDimension,
        });
    }
    if let Some(witness) = find_witness_with_bound(a, seed, samples, bound) {
        assert!(
            exterior::d(a, &witness).is_zero(),
            "witness must be closed"
        );
        assert!(
            !gram_matrix(&witness).determinant().is_zero(),
            "witness must be non-degenerate"
        );
        return Ok(SymplecticVerdict::Symplectic { witness });
    }
    if obstruction_vanishes(a)? {
        return Ok(SymplecticVerdict::CertifiedNonSymplectic {
            reason: NonSymplecticReason::ObstructionVanishes,
        });
    }
    let bound = bound.max((m * samples.max(1)) as i64);
    let space = 2 * bound as u64 + 1;
    let per_sample = Rational::new(m as i64, space as i64);
    Ok(SymplecticVerdict::Inconclusive {
        samples,
        degree_bound: m,
        sample_space_size: space,
        failure_bound: per_sample.pow(samples as u32),
    })
}

pub fn decide(a: &LieAlgebra, seed: u64, samples: usize) -> Result<SymplecticVerdict> {
    decide_with_bound(a, seed, samples, DEFAULT_COEFF_BOUND)
}

/// Benson–Gordon containment for graded nilradicals: a closed 2-form may
/// pair the top layer `L_k` only with `L_1`. Checks every closed-basis
/// element against the level map.
pub fn benson_gordon_check(g: &GradedNilradical) -> bool {
    let k = g.layer_dims.len();
    let levels = &g.level_of_basis;
    let m = g.algebra.dim();
    for v in closed_two_forms(&g.algebra).vectors() {
        for (coord, _) in v {
            let tuple = exterior::tuple_unrank(m, 2, *coord);
            let (li, lj) = (levels[tuple[0]], levels[tuple[1]]);
            let (lo, hi) = (li.min(lj), li.max(lj));
            if hi == k && lo != 1 && k > 1 {
                return false;
            }
        }
    }
    true
}
