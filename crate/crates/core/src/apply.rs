//! Applying a matrix to a state: prepare `|0^m⟩|B⟩`, run the order-1 block
//! encoding, post-select the ancillas on zero.

use crate::error::{Error, Result};
use crate::sampling::ShotSampler;
use crate::scalar::Real;
use crate::sparse_oracle::SparseHermitianMatrix;
use crate::state::StateVector;
use crate::walk::WalkOperator;

#[derive(Clone, Debug)]
pub struct ApplicationResult<T: Real> {
    /// `T_n(A/s)|B⟩` renormalized; `A|B⟩/‖A|B⟩‖` for order 1.
    pub output_state: StateVector<T>,
    /// Probability of reading `|0^m⟩`; `‖A|B⟩‖²/s²` for order 1.
    pub success_probability: T,
    pub garbage_norm: T,
    /// Expected rounds under amplitude amplification, `1/√p` (`s/‖A|B⟩‖`).
    pub expected_amplification_rounds: T,
    pub applied_order: usize,
    pub oracle_queries: u64,
}

fn zero_probability_threshold<T: Real>() -> T {
    (T::epsilon() * T::lit(64.0)).powi(2)
}

/// Post-selected application of `T_order(A/s)` through an existing walk.
pub fn apply_with_walk<T: Real>(
    walk: &WalkOperator<T>,
    b: &StateVector<T>,
    order: usize,
) -> Result<ApplicationResult<T>> {
    b.require_unit()?;
    let (projected, garbage_norm) = walk.chebyshev_block_apply(order, b)?;
    let norm = projected.norm();
    let success_probability = norm * norm;
    if success_probability <= zero_probability_threshold() {
        return Err(Error::ZeroSuccessProbability);
    }
    Ok(ApplicationResult {
        output_state: projected.normalized()?,
        success_probability,
        garbage_norm,
        expected_amplification_rounds: T::one() / norm,
        applied_order: order,
        oracle_queries: WalkOperator::<T>::oracle_queries(order),
    })
}

/// Prepares `A|B⟩/‖A|B⟩‖`.
pub fn apply_matrix<T: Real>(a: &SparseHermitianMatrix<T>, b: &StateVector<T>) -> Result<ApplicationResult<T>> {
    apply_chebyshev(a, b, 1)
}

/// Prepares `T_order(A/s)|B⟩` renormalized.
pub fn apply_chebyshev<T: Real>(
    a: &SparseHermitianMatrix<T>,
    b: &StateVector<T>,
    order: usize,
) -> Result<ApplicationResult<T>> {
    if b.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    apply_with_walk(&WalkOperator::new(a)?, b, order)
}

#[derive(Clone, Debug)]
pub struct SampledApplication<T: Real> {
    pub successes: u64,
    pub shots: u64,
    pub conditional_state: StateVector<T>,
    pub result: ApplicationResult<T>,
}

/// Repeats the post-selection `shots` times under `seed`.
pub fn sample_application<T: Real>(
    a: &SparseHermitianMatrix<T>,
    b: &StateVector<T>,
    shots: u64,
    seed: u64,
) -> Result<SampledApplication<T>> {
    sample_chebyshev_application(a, b, 1, shots, seed)
}

pub fn sample_chebyshev_application<T: Real>(
    a: &SparseHermitianMatrix<T>,
    b: &StateVector<T>,
    order: usize,
    shots: u64,
    seed: u64,
) -> Result<SampledApplication<T>> {
    if shots == 0 {
        return Err(Error::InvalidShots("at least one shot is required".into()));
    }
    let result = apply_chebyshev(a, b, order)?;
    let successes = ShotSampler::new(seed).binomial(shots, result.success_probability.to_f64_lossy());
    Ok(SampledApplication {
        successes,
        shots,
        conditional_state: result.output_state.clone(),
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::C;

    fn diag(values: &[f64]) -> SparseHermitianMatrix<f64> {
        SparseHermitianMatrix::from_full_entries(
            values.len(),
            1,
            values.iter().enumerate().map(|(i, &v)| (i, i, C::new(v, 0.0))),
        )
        .unwrap()
    }

    #[test]
    fn identity_application_is_certain() {
        let a = diag(&[1.0; 4]);
        let b = StateVector::basis(4, 2).unwrap();
        let r = apply_matrix(&a, &b).unwrap();
        assert!((r.output_state.amplitudes()[2] - C::new(1.0, 0.0)).norm() < 1e-12);
        assert!((r.success_probability - 1.0).abs() < 1e-12);
        assert!((r.expected_amplification_rounds - 1.0).abs() < 1e-12);
        assert_eq!(r.oracle_queries, 4);
    }

    #[test]
    fn scaled_diagonal_success_probability() {
        let a = diag(&[1.0, 0.5, 0.5, 0.5]);
        let b = StateVector::basis(4, 1).unwrap();
        let r = apply_matrix(&a, &b).unwrap();
        assert!((r.success_probability - 0.25).abs() < 1e-12);
        assert!((r.success_probability + r.garbage_norm * r.garbage_norm - 1.0).abs() < 1e-12);
        assert!((r.output_state.amplitudes()[1] - C::new(1.0, 0.0)).norm() < 1e-12);
        assert!((r.expected_amplification_rounds - 2.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_input_is_a_distinguished_failure() {
        let a = diag(&[1.0, 0.0, 0.5, 0.5]);
        let b = StateVector::basis(4, 1).unwrap();
        assert!(matches!(apply_matrix(&a, &b), Err(Error::ZeroSuccessProbability)));
        assert!(matches!(sample_application(&a, &b, 10, 1), Err(Error::ZeroSuccessProbability)));
    }

    #[test]
    fn certain_success_and_seed_determinism() {
        let a = diag(&[1.0; 4]);
        let b = StateVector::uniform(4).unwrap();
        assert_eq!(sample_application(&a, &b, 1000, 5).unwrap().successes, 1000);
        let half = diag(&[0.5; 4]);
        let once = sample_application(&half, &b, 1, 99).unwrap().successes;
        for _ in 0..5 {
            assert_eq!(sample_application(&half, &b, 1, 99).unwrap().successes, once);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let a = diag(&[1.0; 4]);
        let unnormalized = StateVector::from_amplitudes(vec![C::new(1.0, 0.0); 4]).unwrap();
        assert!(matches!(apply_matrix(&a, &unnormalized), Err(Error::NotNormalized(_))));
        let wrong = StateVector::basis(2, 0).unwrap();
        assert!(matches!(apply_matrix(&a, &wrong), Err(Error::DimensionMismatch { .. })));
        let b = StateVector::basis(4, 0).unwrap();
        assert!(matches!(sample_application(&a, &b, 0, 1), Err(Error::InvalidShots(_))));
    }
}
