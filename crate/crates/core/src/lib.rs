//! Schur-convex spectral functionals.
//!
//! This crate verifies, numerically and at scale, the convexity structure of
//! weighted eigenvalue sums ψ(S) = Σ μₙ λₙ(S): sublinearity, convexity,
//! positive homogeneity, and Lipschitz continuity in the operator, for dense
//! symmetric matrices and for finite-rank discretizations of selfadjoint
//! operators (Sturm-Liouville problems, Schrödinger operators, quantum wells,
//! the harmonic oscillator).
//!
//! The pieces:
//!
//! - [`matrix`], [`eigen`]: symmetric/tridiagonal types, a cyclic Jacobi
//!   solver, a Sturm-sequence bisection solver, top-k eigenvalue sums and the
//!   trace-sup form tr(AAᵀX) over Stiefel frames.
//! - [`majorization`]: the descending cone, its dual, isotonicity and
//!   derivative criteria for Schur convexity, complete symmetric functions,
//!   divided-difference functions.
//! - [`weights`], [`spectralfun`]: weight families with closed-form tail
//!   bounds, the two-sided eigenvalue arrangement, ψ and its truncations, and
//!   the verification campaigns.
//! - [`gallery`]: discretized and closed-form operator spectra feeding the
//!   campaigns.
//! - [`report`]: campaign reports and the deterministic trial runner.

pub mod eigen;
pub mod gallery;
pub mod majorization;
pub mod matrix;
pub mod report;
pub mod spectralfun;
pub mod weights;

pub use eigen::{eigh, eigh_tridiagonal, sum_top_k, trace_quadratic, Spectrum};
pub use matrix::{
    matrix_from_text, matrix_to_text, random_orthogonal, random_symmetric, MatrixError,
    StiefelFrame, SymmetricMatrix, TridiagonalMatrix,
};
pub use report::{mix_seed, run_trials, VerificationReport, Witness};
