//! Power iteration driven by repeated block application, with a Rayleigh
//! quotient readout.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimators::{hadamard_from_overlap, Normalization, Part, ShotEstimate};
use crate::sampling::{Sampling, ShotSampler};
use crate::scalar::{Real, C};
use crate::sparse_oracle::SparseHermitianMatrix;
use crate::state::StateVector;
use crate::walk::WalkOperator;

#[derive(Clone, Debug)]
pub struct PowerStep<T: Real> {
    pub k: usize,
    /// `x_k`, unit norm.
    pub state: StateVector<T>,
    /// `‖A x_k‖`.
    pub norm_ratio: T,
    /// `⟨x_k|A|x_k⟩`.
    pub rayleigh: T,
    /// Probability of having prepared `x_k`: `Π_{j<k} ‖A x_j‖²/s²`.
    pub cumulative_success_probability: T,
}

#[derive(Clone, Debug)]
pub struct PowerIterationTrace<T: Real> {
    pub iterates: Vec<PowerStep<T>>,
    pub converged_at: Option<usize>,
    /// Rayleigh quotient of the last iterate.
    pub eigenvalue_estimate: T,
    /// `‖A x_k‖` of the last iterate, the dominant `|λ|` whatever its sign.
    pub magnitude_estimate: T,
    /// The last step flipped the iterate (`Re⟨x_{k-1}|x_k⟩ < 0`): the
    /// dominant eigenvalue is negative and `eigenvalue_estimate` tracks it
    /// rather than `λ_max`.
    pub sign_ambiguous: bool,
    /// No convergence and the Rayleigh differences alternate in sign.
    pub stagnated: bool,
    pub oracle_queries: u64,
}

impl<T: Real> PowerIterationTrace<T> {
    pub fn last(&self) -> &PowerStep<T> {
        self.iterates.last().expect("at least one iterate")
    }

    pub fn summary(&self) -> PowerSummary {
        PowerSummary {
            iterations: self.last().k,
            converged_at: self.converged_at,
            eigenvalue_estimate: self.eigenvalue_estimate.to_f64_lossy(),
            magnitude_estimate: self.magnitude_estimate.to_f64_lossy(),
            sign_ambiguous: self.sign_ambiguous,
            stagnated: self.stagnated,
            cumulative_success_probability: self.last().cumulative_success_probability.to_f64_lossy(),
            oracle_queries: self.oracle_queries,
            rayleigh: self.iterates.iter().map(|s| s.rayleigh.to_f64_lossy()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerSummary {
    pub iterations: usize,
    pub converged_at: Option<usize>,
    pub eigenvalue_estimate: f64,
    pub magnitude_estimate: f64,
    pub sign_ambiguous: bool,
    pub stagnated: bool,
    pub cumulative_success_probability: f64,
    pub oracle_queries: u64,
    pub rayleigh: Vec<f64>,
}

/// `(A/s) x` from the ancilla-zero block of `U|0^m⟩|x⟩`.
fn scaled_image<T: Real>(walk: &WalkOperator<T>, x: &StateVector<T>) -> Result<StateVector<T>> {
    Ok(walk.chebyshev_block_apply(1, x)?.0)
}

/// Iterates `x_{k+1} = A x_k/‖A x_k‖` until two consecutive Rayleigh
/// quotients differ by less than `tol`, or `max_k` steps.
pub fn power_iterate<T: Real>(
    a: &SparseHermitianMatrix<T>,
    x0: &StateVector<T>,
    max_k: usize,
    tol: T,
) -> Result<PowerIterationTrace<T>> {
    if max_k == 0 {
        return Err(Error::InvalidArgument("max_k must be at least 1".into()));
    }
    if tol.is_nan() || tol <= T::zero() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if x0.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: x0.dim(),
        });
    }
    x0.require_unit()?;
    let walk = WalkOperator::new(a)?;
    let s = T::from_usize(a.sparsity()).unwrap_or(T::one());
    let zero_p = (T::epsilon() * T::lit(64.0)).powi(2);

    let mut iterates: Vec<PowerStep<T>> = Vec::new();
    let mut x = x0.clone();
    let mut cumulative = T::one();
    let mut converged_at = None;
    let mut sign_ambiguous = false;
    let mut queries = 0u64;

    for k in 0..=max_k {
        let v = scaled_image(&walk, &x)?;
        queries += WalkOperator::<T>::oracle_queries(1);
        let p = v.norm().powi(2);
        let rayleigh = s * x.inner(&v)?.re;
        iterates.push(PowerStep {
            k,
            state: x.clone(),
            norm_ratio: s * v.norm(),
            rayleigh,
            cumulative_success_probability: cumulative,
        });
        if k >= 1 && (rayleigh - iterates[k - 1].rayleigh).abs() < tol {
            converged_at = Some(k);
            break;
        }
        if k == max_k {
            break;
        }
        if p <= zero_p {
            return Err(Error::ZeroSuccessProbability);
        }
        let next = v.normalized()?;
        sign_ambiguous = x.inner(&next)?.re < T::zero();
        cumulative = cumulative * p;
        x = next;
    }

    let diffs: Vec<T> = iterates.windows(2).map(|w| w[1].rayleigh - w[0].rayleigh).collect();
    let stagnated = converged_at.is_none()
        && diffs.len() >= 2
        && diffs[diffs.len() - 1] * diffs[diffs.len() - 2] < T::zero();
    let last = iterates.last().expect("at least one iterate");
    Ok(PowerIterationTrace {
        eigenvalue_estimate: last.rayleigh,
        magnitude_estimate: last.norm_ratio,
        converged_at,
        sign_ambiguous,
        stagnated,
        oracle_queries: queries,
        iterates,
    })
}

/// `⟨x|A|x⟩`: a Hadamard test between `|0^m⟩|x⟩` and `U|0^m⟩|x⟩`,
/// rescaled by `s`. The garbage lies outside the ancilla-zero block, so no
/// post-selection is needed.
pub fn estimate_rayleigh<T: Real>(
    a: &SparseHermitianMatrix<T>,
    x: &StateVector<T>,
    sampling: Sampling,
) -> Result<ShotEstimate<T>> {
    if x.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: x.dim(),
        });
    }
    x.require_unit()?;
    let walk = WalkOperator::new(a)?;
    let v = scaled_image(&walk, x)?;
    let z = x.inner(&v)?;
    let normalization = Normalization::linear(vec![("s", T::from_usize(a.sparsity()).unwrap_or(T::one()))]);
    let est = hadamard_from_overlap(
        C::new(z.re, T::zero()),
        Part::Real,
        sampling.shots,
        ShotSampler::new(sampling.seed),
        sampling.seed,
        WalkOperator::<T>::oracle_queries(1),
    );
    Ok(est.scaled(normalization))
}
