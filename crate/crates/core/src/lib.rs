//! Renewal equations `c = δ + c ∗ q` on graded monoids, exact checks of two
//! positivity conditions for the solution `q`, and certification of diagonal
//! reproducing kernels as complete Nevanlinna-Pick kernels.
//!
//! All algebra runs in exact rational arithmetic. Tables are truncated at a
//! maximal total degree `N` and every verdict is scoped to it.

pub mod error;
pub mod io;
pub mod kaluza;
pub mod kernels;
pub mod moments;
pub mod monoid;
pub mod rational;
pub mod series;
pub mod symmetrize;

pub use error::{Error, Result};
pub use io::{AnyTable, TableContent, TableJson};
pub use kaluza::{
    b_from_c, c_from_b, c_from_r, check_kaluza_1d, check_theorem1, check_theorem2,
    check_word_condition, product_coeffs, ratio_table, CheckReport, Condition, RatioTable,
    Violation,
};
pub use kernels::{besov_norm_table, certify, coeffs_from_norm_table, coeffs_from_norms, CertReport, Verdict};
pub use moments::{atomic_coeffs, moments, product_measure_coeffs, AtomicMeasureD, MeasureFile, MeasureSpec1D};
pub use monoid::{GradedMonoid, IndexKind, MultiIndex, MultiIndexMonoid, Word, WordMonoid};
pub use rational::Rational;
pub use series::{convolve, delta, evaluate, residual, solve_renewal, CoeffTable, EvalPoint, MultiTable, WordTable};
pub use symmetrize::{lift, solve_via_words, symmetrize};
