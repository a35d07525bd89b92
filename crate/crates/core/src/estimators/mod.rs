//! Overlap tests and the estimation protocols built on them.
//!
//! Every estimator runs in one of two modes selected by [`Sampling`]:
//! exact mode (`shots == 0`) returns the noiseless statevector value;
//! shot mode draws binomial measurement counts from a seeded stream and
//! inverts them. Complex quantities spend half of the budget on the real
//! part and half on the imaginary part.

mod frobenius;
mod overlap;
mod report;
mod trace;

pub use frobenius::{frobenius_mixed_state, frobenius_via_product};
pub(crate) use overlap::hadamard_from_overlap;
pub use overlap::{hadamard_test, projected_hadamard_test, swap_test, Part};
pub use report::{ComplexValue, EstimateReport, NormalizationFactor, NormalizationReport};
pub use trace::{
    entangled_input, prepare_product_states, trace_entangled, trace_product, trace_relocation,
    ProductStates,
};

use crate::error::{Error, Result};
use crate::sampling::Sampling;
use crate::scalar::{czero, Real, C};

/// Shots needed for accuracy `delta` on a normalized overlap at three
/// standard errors: `⌈(3/δ)²⌉`.
pub fn shots_for_accuracy(delta: f64) -> u64 {
    (3.0 / delta).powi(2).ceil() as u64
}

pub const DEFAULT_SHOTS: u64 = 100_000;

/// Scale factors between a raw overlap (or probability) and the reported
/// quantity: `estimate = raw · Π factors`, or `√(raw · Π factors)` when
/// `sqrt` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalization<T: Real> {
    pub factors: Vec<(&'static str, T)>,
    pub sqrt: bool,
}

impl<T: Real> Normalization<T> {
    pub fn unit() -> Self {
        Normalization {
            factors: Vec::new(),
            sqrt: false,
        }
    }

    pub fn linear(factors: Vec<(&'static str, T)>) -> Self {
        Normalization { factors, sqrt: false }
    }

    pub fn total(&self) -> T {
        self.factors.iter().fold(T::one(), |acc, (_, f)| acc * *f)
    }

    /// Reported quantity from a raw overlap.
    pub fn apply(&self, raw: C<T>) -> C<T> {
        if self.sqrt {
            C::new((raw.re * self.total()).max(T::zero()).sqrt(), T::zero())
        } else {
            raw * self.total()
        }
    }

    /// Raw overlap (or probability) recovered from a reported estimate.
    pub fn raw_from(&self, estimate: C<T>) -> C<T> {
        if self.sqrt {
            C::new(estimate.re * estimate.re / self.total(), T::zero())
        } else {
            estimate / self.total()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShotEstimate<T: Real> {
    pub estimate: C<T>,
    /// Zero in exact mode.
    pub shots: u64,
    /// Standard error of the real part (of the real-valued quantity).
    pub standard_error: T,
    pub standard_error_imag: T,
    /// `None` in exact mode.
    pub seed: Option<u64>,
    /// Noiseless value through the same computation path.
    pub exact_value: Option<C<T>>,
    pub normalization: Normalization<T>,
    pub success_probability: Option<T>,
    /// Oracle queries over all circuit executions.
    pub oracle_queries: u64,
    /// Set when a negative shot-mode estimate was clamped to zero.
    pub clamped: bool,
}

impl<T: Real> ShotEstimate<T> {
    pub fn re(&self) -> T {
        self.estimate.re
    }

    pub fn im(&self) -> T {
        self.estimate.im
    }

    pub fn abs(&self) -> T {
        self.estimate.norm()
    }

    pub(crate) fn exact(value: C<T>, normalization: Normalization<T>, oracle_queries: u64) -> Self {
        ShotEstimate {
            estimate: value,
            shots: 0,
            standard_error: T::zero(),
            standard_error_imag: T::zero(),
            seed: None,
            exact_value: Some(value),
            normalization,
            success_probability: None,
            oracle_queries,
            clamped: false,
        }
    }

    /// Rescales a raw estimate (value and errors) by a linear normalization.
    pub(crate) fn scaled(mut self, normalization: Normalization<T>) -> Self {
        let f = normalization.total();
        self.estimate = self.estimate * f;
        self.exact_value = self.exact_value.map(|v| v * f);
        self.standard_error = self.standard_error * f;
        self.standard_error_imag = self.standard_error_imag * f;
        self.normalization = normalization;
        self
    }
}

/// Splits a shot budget into real and imaginary halves.
pub(crate) fn split_complex_budget(sampling: Sampling, min_each: u64) -> Result<(u64, u64)> {
    let re = sampling.shots.div_ceil(2);
    let im = sampling.shots - re;
    if im < min_each {
        return Err(Error::InvalidShots(format!(
            "complex estimate needs at least {} shots, got {}",
            2 * min_each,
            sampling.shots
        )));
    }
    Ok((re, im))
}

/// Combines independent real and imaginary part estimates.
pub(crate) fn combine_parts<T: Real>(re: ShotEstimate<T>, im: ShotEstimate<T>, exact: C<T>) -> ShotEstimate<T> {
    ShotEstimate {
        estimate: C::new(re.estimate.re, im.estimate.im),
        shots: re.shots + im.shots,
        standard_error: re.standard_error,
        standard_error_imag: im.standard_error_imag,
        seed: re.seed,
        exact_value: Some(exact),
        normalization: re.normalization,
        success_probability: None,
        oracle_queries: re.oracle_queries + im.oracle_queries,
        clamped: false,
    }
}

pub(crate) fn zero_complex<T: Real>() -> C<T> {
    czero()
}
