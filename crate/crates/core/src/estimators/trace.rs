//! `Tr(A)` two ways and `Tr(AB)`.

use super::overlap::{hadamard_from_overlap, projected_from_parts, Part};
use super::{combine_parts, split_complex_budget, zero_complex, Normalization, ShotEstimate};
use crate::error::{Error, Result};
use crate::sampling::{Sampling, ShotSampler};
use crate::scalar::{creal, inner, Real, C};
use crate::sparse_oracle::{RelocatedMatrix, SparseHermitianMatrix};
use crate::state::{RegisterLayout, RegisterMask, StateVector};
use crate::walk::WalkOperator;

fn as_real<T: Real>(x: usize) -> T {
    T::from_usize(x).unwrap_or(T::one())
}

/// Runs a complex-valued Hadamard estimate on a known overlap and rescales.
fn complex_hadamard<T: Real>(
    z: C<T>,
    sampling: Sampling,
    queries_per_run: u64,
    normalization: Normalization<T>,
) -> Result<ShotEstimate<T>> {
    if sampling.is_exact() {
        return Ok(ShotEstimate::exact(z, Normalization::unit(), queries_per_run).scaled(normalization));
    }
    let (n_re, n_im) = split_complex_budget(sampling, 1)?;
    let root = ShotSampler::new(sampling.seed);
    let re = hadamard_from_overlap(z, Part::Real, n_re, root.child(0), sampling.seed, queries_per_run);
    let im = hadamard_from_overlap(z, Part::Imaginary, n_im, root.child(1), sampling.seed, queries_per_run);
    Ok(combine_parts(re, im, z).scaled(normalization))
}

/// `Tr(A)` from the relocated matrix: block-apply `H(A′)/s′` to the basis
/// state selecting column 0 of `A′`, and overlap with `|0^m⟩|v⟩`,
/// `|v⟩ = H^{⊗n}|0⟩` on the `A′` half of the dilation. The overlap is
/// `Tr(A)/(s′√N)`.
pub fn trace_relocation<T: Real>(a: &SparseHermitianMatrix<T>, sampling: Sampling) -> Result<ShotEstimate<T>> {
    let relocated = RelocatedMatrix::new(a)?;
    let h = relocated.dilation();
    let walk = WalkOperator::new(h)?;
    let n = a.dim();

    // H(A′)·e_N = (A′ e_0, 0): column 0 of A′ in the upper half.
    let column_selector = StateVector::basis(2 * n, n)?;
    let phi1 = walk.block_encode_state(1, &column_selector)?;

    let mut phi2 = vec![zero_complex(); phi1.dim()];
    let v = T::one() / as_real::<T>(n).sqrt();
    for amp in phi2.iter_mut().take(n) {
        *amp = creal(v);
    }
    let z = inner(&phi2, phi1.amplitudes());

    let normalization = Normalization::linear(vec![
        ("s'", as_real(relocated.dilated_sparsity())),
        ("sqrt(N)", as_real::<T>(n).sqrt()),
    ]);
    complex_hadamard(z, sampling, WalkOperator::<T>::oracle_queries(1), normalization)
}

/// `(1/√N) Σ_i |0^m⟩|i⟩|i⟩` on the ancilla ⊗ index ⊗ copy layout of `walk`.
pub fn entangled_input<T: Real>(walk: &WalkOperator<T>) -> Result<StateVector<T>> {
    let space = walk.space();
    let n = space.base_dim();
    let layout = RegisterLayout::block_with_copy(space.ancilla_qubits(), space.index_qubits());
    let mut amps = vec![zero_complex(); layout.dim()];
    let v = T::one() / as_real::<T>(n).sqrt();
    for i in 0..n {
        amps[i * n + i] = creal(v);
    }
    StateVector::new(layout, amps)
}

fn apply_to_entangled<T: Real>(walk: &WalkOperator<T>, input: &StateVector<T>) -> Result<StateVector<T>> {
    let out = walk.block_encoding_apply_with_copy(1, input.amplitudes())?;
    StateVector::new(input.layout().clone(), out)
}

/// `Tr(A)` from `(U ⊗ I)` acting on the maximally entangled state. The
/// reference state lies in the ancilla-zero range and the garbage is
/// orthogonal to it, so the plain Hadamard test gives `Tr(A)/(sN)`.
pub fn trace_entangled<T: Real>(a: &SparseHermitianMatrix<T>, sampling: Sampling) -> Result<ShotEstimate<T>> {
    let walk = WalkOperator::new(a)?;
    let phi2 = entangled_input(&walk)?;
    let phi1 = apply_to_entangled(&walk, &phi2)?;
    let z = phi2.inner(&phi1)?;
    let normalization = Normalization::linear(vec![("s", as_real(a.sparsity())), ("N", as_real(a.dim()))]);
    complex_hadamard(z, sampling, WalkOperator::<T>::oracle_queries(1), normalization)
}

/// The two states whose post-selected overlap is `Tr(AB)/(N s_A s_B)`.
#[derive(Clone, Debug)]
pub struct ProductStates<T: Real> {
    /// `(1/√N) Σ_i (|0^m⟩ (B/s_B)|i⟩ + |G_i⟩)|i⟩`.
    pub with_b: StateVector<T>,
    /// `(1/√N) Σ_i (|0^m⟩ (A†/s_A)|i⟩ + |G′_i⟩)|i⟩`.
    pub with_a_adjoint: StateVector<T>,
    pub mask: RegisterMask,
}

pub fn prepare_product_states<T: Real>(
    a: &SparseHermitianMatrix<T>,
    b: &SparseHermitianMatrix<T>,
) -> Result<ProductStates<T>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let walk_b = WalkOperator::new(b)?;
    let walk_a = WalkOperator::new(&a.adjoint())?;
    let input = entangled_input(&walk_b)?;
    let with_b = apply_to_entangled(&walk_b, &input)?;
    let with_a_adjoint = apply_to_entangled(&walk_a, &input)?;
    let mask = RegisterMask::ancillas_of(input.layout());
    Ok(ProductStates {
        with_b,
        with_a_adjoint,
        mask,
    })
}

/// `Tr(AB)` by the post-selected Hadamard test on [`ProductStates`].
pub fn trace_product<T: Real>(
    a: &SparseHermitianMatrix<T>,
    b: &SparseHermitianMatrix<T>,
    sampling: Sampling,
) -> Result<ShotEstimate<T>> {
    let states = prepare_product_states(a, b)?;
    let p1 = states.with_b.project(&states.mask)?;
    let p2 = states.with_a_adjoint.project(&states.mask)?;
    let z = p2.inner(&p1)?;
    let q1 = p1.norm().powi(2);
    let q2 = p2.norm().powi(2);
    let normalization = Normalization::linear(vec![
        ("N", as_real(a.dim())),
        ("s_A", as_real(a.sparsity())),
        ("s_B", as_real(b.sparsity())),
    ]);
    // one block encoding on each branch of the controlled preparation
    let queries = 2 * WalkOperator::<T>::oracle_queries(1);
    if sampling.is_exact() {
        return Ok(ShotEstimate::exact(z, Normalization::unit(), queries).scaled(normalization));
    }
    let (n_re, n_im) = split_complex_budget(sampling, 3)?;
    let root = ShotSampler::new(sampling.seed);
    let re = projected_from_parts(z, q1, q2, Part::Real, n_re, root.child(0), sampling.seed, queries)?;
    let im = projected_from_parts(z, q1, q2, Part::Imaginary, n_im, root.child(1), sampling.seed, queries)?;
    Ok(combine_parts(re, im, z).scaled(normalization))
}
