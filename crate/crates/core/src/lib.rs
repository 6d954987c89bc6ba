//! Exact ψ-calculus: admissible sequences, ψ-binomials, generalized Pascal
//! and Fermat matrices, diagonal q̂ operators, and an engine that checks
//! identities among them with exact arithmetic.
//!
//! Scalars are rationals or rational functions in `q`; every comparison is
//! exact equality of canonical forms.

pub mod calculus;
pub mod engine;
pub mod error;
pub mod matrix;
pub mod qhat;
pub mod report;
pub mod scalar;
pub mod sequence;

pub use calculus::{psi_derivative, psi_plus_power, psi_shift, Polynomial};
pub use engine::{
    list_identities, run_identity, run_identity_on, run_suite, run_suite_with, IdentitySpec,
    Params, Profile, SuiteOutcome, Summary, Target,
};
pub use error::{Error, Result};
pub use matrix::{
    fermat, k_matrix, pascal_closed, psi_exp_nilpotent, Entry, GeneralizedPascal, LowerTriMatrix,
    MatrixDocument, MatrixKind, SquareMatrix,
};
pub use qhat::{qhat_gaussian_power, qhat_mutator, DiagOperator, Provenance};
pub use report::{Expectation, IdentityReport, Status, Witness};
pub use scalar::{parse_rational, scalar_parse, Domain, QPoly, Rational, RationalFunction, Scalar};
pub use sequence::{AdmissibleSequence, Family, SequenceKind};
