//! `‖A‖_F` through `Tr(A†A)` and through the maximally mixed state.

use super::trace::{entangled_input, trace_product};
use super::{Normalization, ShotEstimate};
use crate::error::Result;
use crate::sampling::{Proportion, Sampling, ShotSampler};
use crate::scalar::{Real, C};
use crate::sparse_oracle::SparseHermitianMatrix;
use crate::state::{RegisterMask, StateVector};
use crate::walk::WalkOperator;

/// Delta-method error of `√x` given the error of `x`. At zero the
/// derivative blows up, so fall back to `√se_x`.
fn sqrt_error<T: Real>(root: T, se_x: T) -> T {
    if root > T::zero() {
        se_x / (T::lit(2.0) * root)
    } else {
        se_x.sqrt()
    }
}

/// `‖A‖_F = √Tr(A†A)`, estimated with [`trace_product`]. A negative shot
/// estimate of the trace is clamped to zero and flagged.
pub fn frobenius_via_product<T: Real>(a: &SparseHermitianMatrix<T>, sampling: Sampling) -> Result<ShotEstimate<T>> {
    let product = trace_product(&a.adjoint(), a, sampling)?;
    let tr = product.re();
    let root = tr.max(T::zero()).sqrt();
    let normalization = Normalization {
        factors: product.normalization.factors.clone(),
        sqrt: true,
    };
    let mut est = ShotEstimate::exact(C::new(root, T::zero()), normalization, product.oracle_queries);
    est.exact_value = product.exact_value.map(|v| C::new(v.re.max(T::zero()).sqrt(), T::zero()));
    est.standard_error = sqrt_error(root, product.standard_error);
    est.clamped = tr < T::zero();
    Ok(est.with_run(product.shots, product.seed))
}

/// `‖A‖_F = √(p N s²)` where `p` is the probability of reading `|0^m⟩`
/// after block-applying `A/s` to one half of `(1/√N) Σ |i⟩|i⟩`. The
/// untouched copy register purifies the maximally mixed state.
pub fn frobenius_mixed_state<T: Real>(a: &SparseHermitianMatrix<T>, sampling: Sampling) -> Result<ShotEstimate<T>> {
    let walk = WalkOperator::new(a)?;
    let input = entangled_input(&walk)?;
    let out = walk.block_encoding_apply_with_copy(1, input.amplitudes())?;
    let out = StateVector::new(input.layout().clone(), out)?;
    let p = out.project(&RegisterMask::ancillas_of(input.layout()))?.norm().powi(2);

    let s = T::from_usize(a.sparsity()).unwrap_or(T::one());
    let normalization = Normalization {
        factors: vec![("N", T::from_usize(a.dim()).unwrap_or(T::one())), ("s^2", s * s)],
        sqrt: true,
    };
    let total = normalization.total();
    let exact_root = (p * total).sqrt();
    let queries = WalkOperator::<T>::oracle_queries(1);
    let mut est = ShotEstimate::exact(C::new(exact_root, T::zero()), normalization, queries);
    est.success_probability = Some(p);
    if sampling.is_exact() {
        return Ok(est);
    }
    let k = ShotSampler::new(sampling.seed).binomial(sampling.shots, p.to_f64_lossy());
    let prop = Proportion::from_counts(k, sampling.shots);
    let p_hat = T::lit(prop.mean);
    let root = (p_hat * total).sqrt();
    est.estimate = C::new(root, T::zero());
    est.standard_error = sqrt_error(root, T::lit(prop.variance.sqrt()) * total);
    est.oracle_queries = queries * sampling.shots;
    Ok(est.with_run(sampling.shots, Some(sampling.seed)))
}

impl<T: Real> ShotEstimate<T> {
    fn with_run(mut self, shots: u64, seed: Option<u64>) -> Self {
        self.shots = shots;
        self.seed = seed;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(values: &[f64]) -> SparseHermitianMatrix<f64> {
        SparseHermitianMatrix::from_full_entries(
            values.len(),
            1,
            values.iter().enumerate().map(|(i, &v)| (i, i, C::new(v, 0.0))),
        )
        .unwrap()
    }

    #[test]
    fn identity_has_norm_root_n() {
        let a = diag(&[1.0; 4]);
        let m = frobenius_mixed_state(&a, Sampling::exact()).unwrap();
        assert!((m.re() - 2.0).abs() < 1e-12);
        assert!((m.success_probability.unwrap() - 1.0).abs() < 1e-12);
        assert!((frobenius_via_product(&a, Sampling::exact()).unwrap().re() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn small_diagonals() {
        let a = diag(&[0.6, 0.8, 0.0, 0.0]);
        assert!((frobenius_via_product(&a, Sampling::exact()).unwrap().re() - 1.0).abs() < 1e-12);
        let b = diag(&[0.5, 0.0, 0.0, 0.0]);
        let m = frobenius_mixed_state(&b, Sampling::exact()).unwrap();
        assert!((m.success_probability.unwrap() - 0.0625).abs() < 1e-12);
        assert!((m.re() - 0.5).abs() < 1e-12);
        assert!((m.normalization.raw_from(m.estimate).re - 0.0625).abs() < 1e-12);
    }

    #[test]
    fn shot_mode_fields() {
        let a = diag(&[0.5, 0.25, 1.0, 0.0]);
        let m = frobenius_mixed_state(&a, Sampling::shots(40_000, 3)).unwrap();
        assert_eq!(m.shots, 40_000);
        assert_eq!(m.seed, Some(3));
        assert!(m.standard_error > 0.0);
        assert!((m.re() - m.exact_value.unwrap().re).abs() < 5.0 * m.standard_error);
        let p = frobenius_via_product(&a, Sampling::shots(40_000, 3)).unwrap();
        assert!(p.standard_error > 0.0);
        assert!((p.re() - p.exact_value.unwrap().re).abs() < 5.0 * p.standard_error);
    }
}
