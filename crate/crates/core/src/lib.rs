//! Block encodings of sparse Hermitian matrices through a Szegedy-type
//! quantum walk, simulated on dense statevectors, and the estimators built
//! on top of them: matrix application, traces, `Tr(AB)`, Frobenius norms
//! and power iteration.
//!
//! Everything is generic over the real scalar (`f32` or `f64`); the
//! aliases below fix it to `f64`.

pub mod apply;
pub mod cli;
pub mod error;
pub mod estimators;
pub mod linalg;
pub mod power;
pub mod random;
pub mod sampling;
pub mod scalar;
pub mod sparse_oracle;
pub mod state;
pub mod walk;

pub use error::{Error, Result};
pub use sampling::{Sampling, DEFAULT_SEED};

pub type Complex = scalar::C<f64>;
pub type Matrix = sparse_oracle::SparseHermitianMatrix<f64>;
pub type State = state::StateVector<f64>;
pub type Walk = walk::WalkOperator<f64>;
pub type Estimate = estimators::ShotEstimate<f64>;
pub type Application = apply::ApplicationResult<f64>;
pub type PowerTrace = power::PowerIterationTrace<f64>;
