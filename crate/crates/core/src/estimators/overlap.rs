use super::{Normalization, ShotEstimate};
use crate::error::{Error, Result};
use crate::sampling::{Proportion, Sampling, ShotSampler};
use crate::scalar::{Real, C};
use crate::state::{RegisterMask, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Real,
    Imaginary,
}

impl Part {
    fn pick<T: Real>(self, z: C<T>) -> T {
        match self {
            Part::Real => z.re,
            Part::Imaginary => z.im,
        }
    }

    fn place<T: Real>(self, x: T) -> C<T> {
        match self {
            Part::Real => C::new(x, T::zero()),
            Part::Imaginary => C::new(T::zero(), x),
        }
    }
}

fn check_pair<T: Real>(phi1: &StateVector<T>, phi2: &StateVector<T>) -> Result<()> {
    if phi1.dim() != phi2.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi1.dim(),
            found: phi2.dim(),
        });
    }
    phi1.require_unit()?;
    phi2.require_unit()
}

fn with_errors<T: Real>(mut est: ShotEstimate<T>, part: Part, value: T, se: T) -> ShotEstimate<T> {
    est.estimate = part.place(value);
    match part {
        Part::Real => est.standard_error = se,
        Part::Imaginary => est.standard_error_imag = se,
    }
    est
}

/// Hadamard test on a known overlap `z = ⟨Φ2|Φ1⟩` of unit states.
///
/// The control qubit reads 0 with probability `(1 + Re z)/2`, or
/// `(1 + Im z)/2` when an `S` phase is put on the `Φ2` branch.
pub(crate) fn hadamard_from_overlap<T: Real>(
    z: C<T>,
    part: Part,
    shots: u64,
    sampler: ShotSampler,
    seed: u64,
    queries_per_run: u64,
) -> ShotEstimate<T> {
    let x = part.pick(z);
    let exact = part.place(x);
    if shots == 0 {
        return ShotEstimate::exact(exact, Normalization::unit(), queries_per_run);
    }
    let p0 = (1.0 + x.to_f64_lossy()) / 2.0;
    let k = sampler.binomial(shots, p0);
    let prop = Proportion::from_counts(k, shots);
    let value = T::lit(2.0 * prop.mean - 1.0);
    let se = T::lit(2.0 * prop.variance.sqrt());
    let est = ShotEstimate {
        shots,
        seed: Some(seed),
        exact_value: Some(exact),
        oracle_queries: queries_per_run * shots,
        ..ShotEstimate::exact(exact, Normalization::unit(), 0)
    };
    with_errors(est, part, value, se)
}

/// Estimates `Re⟨Φ2|Φ1⟩` or `Im⟨Φ2|Φ1⟩`.
pub fn hadamard_test<T: Real>(
    phi1: &StateVector<T>,
    phi2: &StateVector<T>,
    sampling: Sampling,
    part: Part,
) -> Result<ShotEstimate<T>> {
    check_pair(phi1, phi2)?;
    let z = phi2.inner(phi1)?;
    Ok(hadamard_from_overlap(
        z,
        part,
        sampling.shots,
        ShotSampler::new(sampling.seed),
        sampling.seed,
        0,
    ))
}

/// Estimates `|⟨Φ1|Φ2⟩|²`; the ancilla reads 0 with probability `(1 + |⟨Φ1|Φ2⟩|²)/2`.
pub fn swap_test<T: Real>(phi1: &StateVector<T>, phi2: &StateVector<T>, sampling: Sampling) -> Result<ShotEstimate<T>> {
    check_pair(phi1, phi2)?;
    let q = phi1.inner(phi2)?.norm_sqr();
    let exact = C::new(q, T::zero());
    if sampling.is_exact() {
        return Ok(ShotEstimate::exact(exact, Normalization::unit(), 0));
    }
    let p0 = (1.0 + q.to_f64_lossy()) / 2.0;
    let k = ShotSampler::new(sampling.seed).binomial(sampling.shots, p0);
    let prop = Proportion::from_counts(k, sampling.shots);
    let est = ShotEstimate {
        shots: sampling.shots,
        seed: Some(sampling.seed),
        ..ShotEstimate::exact(exact, Normalization::unit(), 0)
    };
    Ok(with_errors(
        est,
        Part::Real,
        T::lit(2.0 * prop.mean - 1.0),
        T::lit(2.0 * prop.variance.sqrt()),
    ))
}

/// Shot-mode inversion of the post-selected Hadamard test.
///
/// Three runs share the budget evenly (the joint run takes the remainder):
/// the joint probability `P(control 0 ∧ masked 0) = (q1 + q2 + 2x)/4` and
/// the two post-selection rates `q1 = ‖ΠΦ1‖²`, `q2 = ‖ΠΦ2‖²`. Then
/// `x = 2P − (q1 + q2)/2`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn projected_from_parts<T: Real>(
    z: C<T>,
    q1: T,
    q2: T,
    part: Part,
    shots: u64,
    sampler: ShotSampler,
    seed: u64,
    queries_per_run: u64,
) -> Result<ShotEstimate<T>> {
    let x = part.pick(z);
    let exact = part.place(x);
    if shots == 0 {
        return Ok(ShotEstimate::exact(exact, Normalization::unit(), queries_per_run));
    }
    if shots < 3 {
        return Err(Error::InvalidShots(format!(
            "post-selected Hadamard test needs at least 3 shots, got {shots}"
        )));
    }
    let side = shots / 3;
    let joint = shots - 2 * side;
    let (xf, q1f, q2f) = (x.to_f64_lossy(), q1.to_f64_lossy(), q2.to_f64_lossy());
    let pj = Proportion::from_counts(sampler.child(0).binomial(joint, (q1f + q2f + 2.0 * xf) / 4.0), joint);
    let p1 = Proportion::from_counts(sampler.child(1).binomial(side, q1f), side);
    let p2 = Proportion::from_counts(sampler.child(2).binomial(side, q2f), side);
    let value = 2.0 * pj.mean - (p1.mean + p2.mean) / 2.0;
    let variance = 4.0 * pj.variance + (p1.variance + p2.variance) / 4.0;
    let est = ShotEstimate {
        shots,
        seed: Some(seed),
        exact_value: Some(exact),
        oracle_queries: queries_per_run * shots,
        ..ShotEstimate::exact(exact, Normalization::unit(), 0)
    };
    Ok(with_errors(est, part, T::lit(value), T::lit(variance.sqrt())))
}

/// Estimates `Re`/`Im ⟨ΠΦ2|ΠΦ1⟩`, with `Π` projecting the masked registers onto zero.
pub fn projected_hadamard_test<T: Real>(
    phi1: &StateVector<T>,
    phi2: &StateVector<T>,
    mask: &RegisterMask,
    sampling: Sampling,
    part: Part,
) -> Result<ShotEstimate<T>> {
    check_pair(phi1, phi2)?;
    if phi1.layout() != phi2.layout() {
        return Err(Error::InvalidMask("states do not share a register layout".into()));
    }
    let p1 = phi1.project(mask)?;
    let p2 = phi2.project(mask)?;
    let z = p2.inner(&p1)?;
    let (q1, q2) = (p1.norm().powi(2), p2.norm().powi(2));
    projected_from_parts(
        z,
        q1,
        q2,
        part,
        sampling.shots,
        ShotSampler::new(sampling.seed),
        sampling.seed,
        0,
    )
}
