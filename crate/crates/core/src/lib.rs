//! Exact verification kernel for bialgebroids, Hopf algebroids and their
//! star structures over the Gaussian rationals.

pub mod algebra;
pub mod bimodule;
pub mod calculus;
pub mod document;
pub mod ghobadi;
pub mod bialgebroid;
pub mod hopf;
pub mod error;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod tensor;

pub use error::{Error, Result};
pub use linalg::{Matrix, QuotientSpace, Subspace, Vector};
pub use scalar::{GaussianRational, Q};
