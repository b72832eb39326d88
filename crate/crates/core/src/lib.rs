//! Exact tools for deciding whether a nilpotent Lie algebra admits a
//! symplectic structure.
//!
//! Everything here runs over the rationals with no rounding anywhere: the
//! linear algebra in [`exactlin`], the Chevalley–Eilenberg calculus in
//! [`exterior`] and [`cohomology`], and the decision ladder in
//! [`symplectic`]. Algebras can be entered by hand (JSON structure
//! constants), or generated: abelian, Heisenberg, free nilpotent of class
//! at most 3, graph algebras, and the nilradicals of minimal parabolics of
//! split classical Lie algebras ([`rootsys`]).
//!
//! The headline invariant is the intermediate cohomology group
//! `E_inf^{0,2}`: when it vanishes, no trivial extension of the algebra
//! carries a symplectic form, which certifies non-existence exactly.
//! Positive answers are certified by an explicit closed 2-form with
//! nonzero Gram determinant.

pub mod cli;
pub mod cohomology;
pub mod constructors;
pub mod exactlin;
pub mod exterior;
pub mod liealg;
pub mod rootsys;
pub mod symplectic;

pub use exactlin::{Rational, SparseMatrix, SubspaceBasis};
pub use exterior::KForm;
pub use liealg::LieAlgebra;

use thiserror::Error;

/// Library-wide error type. Variants mirror the failure modes of the
/// individual modules; "internal" variants signal bugs, not bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("subspace is not contained in the claimed superspace")]
    NotSubspace,
    #[error("lower central series stabilizes at a nonzero ideal; algebra is not nilpotent")]
    NotNilpotent,
    #[error("2-form is not closed")]
    FormNotClosed,
    #[error("matrix is not an automorphism of the algebra")]
    NotAnAutomorphism,
    #[error("E-infinity antidiagonal sums disagree with Betti numbers in degree {degree}: {sum} vs {betti}")]
    DecompositionMismatch {
        degree: usize,
        sum: usize,
        betti: usize,
    },
    #[error("commutator of root vectors does not lie in the root-vector span")]
    ExpansionFailure,
    #[error("free nilpotent constructor supports class 1..=3, got {0}")]
    UnsupportedClass(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
