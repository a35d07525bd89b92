//! Library results checked against dense nalgebra computations.

mod common;

use chebwalk::apply::{apply_matrix, apply_with_walk, sample_application};
use chebwalk::estimators::{
    entangled_input, frobenius_mixed_state, frobenius_via_product, hadamard_test, projected_hadamard_test,
    swap_test, trace_entangled, trace_product, trace_relocation, Part,
};
use chebwalk::power::{estimate_rayleigh, power_iterate};
use chebwalk::random::{random_state, RandomHermitian};
use chebwalk::sparse_oracle::{parse_qmat, RelocatedMatrix};
use chebwalk::state::{RegisterMask, StateVector};
use chebwalk::walk::WalkOperator;
use chebwalk::{Complex, Matrix, Sampling, State};
use common::*;
use nalgebra::DMatrix;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn to_nalgebra(m: &chebwalk::linalg::DenseMatrix<f64>) -> Dense {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

#[test]
fn random_matrix_loads_with_spectral_norm_bound() {
    let mut r = rng(1);
    for n in [4usize, 8, 16, 32] {
        for s in 1..=3 {
            let a: Matrix = RandomHermitian::new(n, s).sample(&mut r);
            assert!(a.max_row_nnz() <= s);
            let (values, _) = eigh(&dense(&a));
            let spectral = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(spectral / s as f64 <= 1.0 + 1e-12);
            assert!(spectral <= a.metadata().norm_bound + 1e-12);
        }
    }
}

#[test]
fn query_entry_matches_independent_materialization() {
    // entries written by hand-rolled generator, upper triangle only
    let mut r = rng(2);
    let a: Matrix = RandomHermitian::new(8, 3).sample(&mut r);
    let upper: Vec<(usize, usize, Complex)> = a.entries().filter(|&(i, j, _)| i <= j).collect();
    let text = std::iter::once("qmat v1\n8 3".to_string())
        .chain(upper.iter().map(|(i, j, v)| format!("{i} {j} {:e} {:e}", v.re, v.im)))
        .collect::<Vec<_>>()
        .join("\n");
    let parsed: Matrix = parse_qmat(&text).unwrap();
    let mut reference = DMatrix::<Complex>::zeros(8, 8);
    for &(i, j, v) in &upper {
        reference[(i, j)] = v;
        reference[(j, i)] = v.conj();
    }
    for i in 0..8 {
        for j in 0..8 {
            assert_eq!(parsed.query_entry(i, j).unwrap(), reference[(i, j)], "({i},{j})");
        }
    }
}

#[test]
fn condition_number_metadata() {
    let mut r = rng(3);
    let a: Matrix = RandomHermitian::new(8, 2).sample(&mut r);
    let svd = dense(&a).svd(false, false);
    let sv = svd.singular_values;
    let want = sv.max() / sv.min();
    let got = a.metadata().condition_number.unwrap();
    assert!((got - want).abs() <= 1e-8 * want, "{got} vs {want}");
}

#[test]
fn relocated_column_sums_to_trace() {
    let mut r = rng(4);
    let a: Matrix = RandomHermitian::new(8, 3).sample(&mut r);
    let relocated = RelocatedMatrix::new(&a).unwrap();
    let column: Complex = (0..8).map(|i| relocated.query(i, 0).unwrap()).sum();
    assert!((column - dense(&a).trace()).norm() < 1e-14);
    let h = dense(relocated.dilation());
    assert!((&h - h.adjoint()).norm() < 1e-15);
    assert!(relocated.dilated_sparsity() >= a.sparsity());
}

#[test]
fn walk_and_completion_are_unitary() {
    let mut r = rng(5);
    for (n, s) in [(2, 1), (4, 2), (8, 3)] {
        let a: Matrix = RandomHermitian::new(n, s).sample(&mut r);
        let walk = WalkOperator::new(&a).unwrap();
        for m in [walk.walk_matrix(), walk.completion_matrix()] {
            let m = to_nalgebra(&m);
            let id = DMatrix::<Complex>::identity(m.nrows(), m.ncols());
            assert!((m.adjoint() * &m - id).norm() < 1e-10);
        }
        let t = to_nalgebra(&walk.isometry_matrix());
        let sw = to_nalgebra(&walk.swap_matrix());
        let block = t.adjoint() * sw * &t;
        let want = dense(&a) / c(s as f64, 0.0);
        assert!((block - want).norm() < 1e-12);
    }
}

#[test]
fn block_encoding_equals_spectral_chebyshev() {
    // T_n(A/s) through the eigendecomposition, cos(n arccos λ)
    let mut r = rng(6);
    let a: Matrix = RandomHermitian::new(8, 3).sample(&mut r);
    let walk = WalkOperator::new(&a).unwrap();
    let scaled = dense(&a) / c(3.0, 0.0);
    let (values, vectors) = eigh(&scaled);
    for order in [0usize, 1, 2, 5, 9] {
        let mut tn = DMatrix::<Complex>::zeros(8, 8);
        for (l, v) in values.iter().zip(&vectors) {
            let coeff = (order as f64 * l.clamp(-1.0, 1.0).acos()).cos();
            let v = nalgebra::DVector::from_column_slice(v);
            tn += &v * v.adjoint() * c(coeff, 0.0);
        }
        for j in 0..8 {
            let (got, garbage) = walk.chebyshev_block_apply(order, &StateVector::basis(8, j).unwrap()).unwrap();
            let col: Vec<Complex> = tn.column(j).iter().copied().collect();
            assert!(max_abs(got.amplitudes(), &col) < 1e-10, "order {order}, column {j}");
            assert!((got.norm().powi(2) + garbage * garbage - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn apply_composes_to_square() {
    let mut r = rng(7);
    let a: Matrix = RandomHermitian::new(8, 3).sample(&mut r);
    let b: State = random_state(&mut r, 8);
    let walk = WalkOperator::new(&a).unwrap();
    let once = apply_with_walk(&walk, &b, 1).unwrap();
    let twice = apply_with_walk(&walk, &once.output_state, 1).unwrap();
    let d = dense(&a);
    let a2b = &d * &d * dvec(&b);
    let want: Vec<Complex> = a2b.iter().map(|z| z / a2b.norm()).collect();
    assert!(max_abs(twice.output_state.amplitudes(), &want) < 1e-9);
    let ab = &d * dvec(&b);
    assert!((once.expected_amplification_rounds - 3.0 / ab.norm()).abs() < 1e-12);
}

#[test]
fn sampled_post_selection_rate() {
    let mut r = rng(8);
    let a: Matrix = RandomHermitian::new(8, 2).sample(&mut r);
    let b: State = random_state(&mut r, 8);
    let p = (dense(&a) * dvec(&b)).norm_squared() / 4.0;
    let shots = 100_000;
    let run = sample_application(&a, &b, shots, 4).unwrap();
    let rate = run.successes as f64 / shots as f64;
    assert!((rate - p).abs() < 4.0 * (p * (1.0 - p) / shots as f64).sqrt());
    assert!((apply_matrix(&a, &b).unwrap().success_probability - p).abs() < 1e-12);
}

#[test]
fn overlap_tests_against_direct_summation() {
    let mut r = rng(9);
    let phi1: State = random_state(&mut r, 16);
    let phi2: State = random_state(&mut r, 16);
    let z = dvec(&phi2).dotc(&dvec(&phi1));
    let shots = 100_000;
    let re = hadamard_test(&phi1, &phi2, Sampling::shots(shots, 1), Part::Real).unwrap();
    let im = hadamard_test(&phi1, &phi2, Sampling::shots(shots, 2), Part::Imaginary).unwrap();
    let bound = 3.0 / (shots as f64).sqrt();
    assert!((re.re() - z.re).abs() < bound);
    assert!((im.im() - z.im).abs() < bound);
    let exact = hadamard_test(&phi1, &phi2, Sampling::exact(), Part::Real).unwrap();
    assert!((exact.re() - z.re).abs() < 1e-15);

    let q = z.norm_sqr();
    let sw = swap_test(&phi1, &phi2, Sampling::shots(shots, 3)).unwrap();
    assert!((sw.re() - q).abs() < 3.0 * sw.standard_error);
}

#[test]
fn projected_test_matches_dense_projection() {
    let mut r = rng(10);
    let layout = chebwalk::state::RegisterLayout::block(2, 2);
    let raw1: State = random_state(&mut r, 16);
    let raw2: State = random_state(&mut r, 16);
    let phi1 = State::new(layout.clone(), raw1.amplitudes().to_vec()).unwrap();
    let phi2 = State::new(layout.clone(), raw2.amplitudes().to_vec()).unwrap();
    let mask = RegisterMask::ancillas_of(&layout);
    // ancilla-zero block is the first 4 amplitudes
    let mut proj = DMatrix::<Complex>::zeros(16, 16);
    for i in 0..4 {
        proj[(i, i)] = c(1.0, 0.0);
    }
    let want = (&proj * dvec(&phi2)).dotc(&(&proj * dvec(&phi1)));
    let exact = projected_hadamard_test(&phi1, &phi2, &mask, Sampling::exact(), Part::Imaginary).unwrap();
    assert!((exact.im() - want.im).abs() < 1e-15);
    let shots = projected_hadamard_test(&phi1, &phi2, &mask, Sampling::shots(300_000, 5), Part::Real).unwrap();
    assert!((shots.re() - want.re).abs() < 3.0 * shots.standard_error);
}

#[test]
fn trace_methods_on_random_instances() {
    for (a, _) in instance_set(11) {
        let want = dense(&a).trace();
        let e = trace_entangled(&a, Sampling::exact()).unwrap();
        let r = trace_relocation(&a, Sampling::exact()).unwrap();
        assert!((e.estimate - want).norm() < 1e-10);
        assert!((r.estimate - want).norm() < 1e-10);
        assert!(e.im().abs() < 1e-12 && r.im().abs() < 1e-12);
        // normalization record recovers the raw overlap
        let raw = want / c((a.sparsity() * a.dim()) as f64, 0.0);
        assert!((e.normalization.raw_from(e.estimate) - raw).norm() < 1e-12);
    }
}

#[test]
fn trace_shot_mode_bounds() {
    let mut r = rng(12);
    let a: Matrix = RandomHermitian::new(8, 3).sample(&mut r);
    let want = dense(&a).trace().re;
    let est = trace_relocation(&a, Sampling::shots(100_000, 12)).unwrap();
    let scale = est.normalization.total();
    assert!((est.re() - want).abs() < 3.0 * scale / (100_000f64).sqrt());
    let ent = trace_entangled(&a, Sampling::shots(100_000, 13)).unwrap();
    assert!(ent.im().abs() < 3.0 * ent.standard_error_imag);
}

#[test]
fn entangled_garbage_is_orthogonal_to_reference() {
    let mut r = rng(13);
    for n in [2, 4, 8, 16] {
        let a: Matrix = RandomHermitian::new(n, 2.min(n)).sample(&mut r);
        let walk = WalkOperator::new(&a).unwrap();
        let phi2 = entangled_input(&walk).unwrap();
        let phi1 = walk.block_encoding_apply_with_copy(1, phi2.amplitudes()).unwrap();
        // the first N·N amplitudes are the ancilla-zero block
        let garbage: Vec<Complex> = phi1
            .iter()
            .enumerate()
            .map(|(k, &z)| if k < n * n { c(0.0, 0.0) } else { z })
            .collect();
        let overlap: Complex = phi2.amplitudes().iter().zip(&garbage).map(|(x, y)| x.conj() * y).sum();
        assert!(overlap.norm() <= 1e-12);
    }
}

#[test]
fn trace_product_matches_dense() {
    let mut r = rng(14);
    let a: Matrix = RandomHermitian::new(8, 3).sample(&mut r);
    let b: Matrix = RandomHermitian::new(8, 2).sample(&mut r);
    let want = (dense(&a) * dense(&b)).trace();
    let exact = trace_product(&a, &b, Sampling::exact()).unwrap();
    assert!((exact.estimate - want).norm() < 1e-10);
    let shots = trace_product(&a, &b, Sampling::shots(300_000, 14)).unwrap();
    assert!((shots.re() - want.re).abs() < 3.0 * shots.standard_error);
    assert!((shots.im() - want.im).abs() < 3.0 * shots.standard_error_imag);
}

#[test]
fn frobenius_routes_agree() {
    let mut r = rng(15);
    let a: Matrix = RandomHermitian::new(8, 3).sample(&mut r);
    let want = dense(&a).norm();
    let m = frobenius_mixed_state(&a, Sampling::exact()).unwrap();
    let p = frobenius_via_product(&a, Sampling::exact()).unwrap();
    assert!((m.re() - want).abs() < 1e-9);
    assert!((p.re() - m.re()).abs() < 1e-9);
}

#[test]
fn power_iteration_matches_dense_schedule() {
    let a = Matrix::from_full_entries(4, 1, [1.0, 0.5, 0.5, 0.5].iter().enumerate().map(|(i, &v)| (i, i, c(v, 0.0))))
        .unwrap();
    let x0 = State::uniform(4).unwrap();
    let trace = power_iterate(&a, &x0, 60, 1e-3).unwrap();
    let k = trace.converged_at.unwrap();
    assert!(k <= 25, "{k}");
    assert!((trace.eigenvalue_estimate - 1.0).abs() < 1e-3);
    let reference = dense_power(&dense(&a), &dvec(&x0), k);
    let d = dense(&a);
    for (step, x) in trace.iterates.iter().zip(&reference) {
        assert!(max_abs(step.state.amplitudes(), x.as_slice()) < 1e-9);
        let rho = x.dotc(&(&d * x)).re;
        assert!((step.rayleigh - rho).abs() < 1e-12);
    }
}

#[test]
fn power_iteration_on_psd_instance() {
    // ring with a dominant diagonal: positive definite by Gershgorin
    use rand::Rng;
    let mut r = rng(16);
    let mut entries = Vec::new();
    for i in 0..8 {
        entries.push((i, i, c(r.random_range(0.65..1.0), 0.0)));
        let (rad, th) = (0.3 * r.random::<f64>(), r.random_range(0.0..std::f64::consts::TAU));
        entries.push((i, (i + 1) % 8, c(rad * th.cos(), rad * th.sin())));
    }
    let a = Matrix::from_full_entries(8, 3, entries).unwrap();
    let (values, _) = eigh(&dense(&a));
    assert!(values[0] >= 0.0);
    let lambda = values[7];
    let trace = power_iterate(&a, &State::uniform(8).unwrap(), 200, 1e-6).unwrap();
    assert!((trace.eigenvalue_estimate - lambda).abs() < 1e-3);
    for w in trace.iterates.windows(2) {
        assert!(w[1].rayleigh >= w[0].rayleigh - 1e-12);
    }
}

#[test]
fn rayleigh_estimates() {
    let mut r = rng(17);
    let a: Matrix = RandomHermitian::new(8, 3).sample(&mut r);
    let d = dense(&a);
    let (values, vectors) = eigh(&d);
    let v = State::from_amplitudes(vectors[5].clone()).unwrap();
    assert!((estimate_rayleigh(&a, &v, Sampling::exact()).unwrap().re() - values[5]).abs() < 1e-12);
    let x: State = random_state(&mut r, 8);
    let want = dvec(&x).dotc(&(&d * dvec(&x))).re;
    let est = estimate_rayleigh(&a, &x, Sampling::shots(100_000, 17)).unwrap();
    assert!((est.re() - want).abs() < 3.0 * 3.0 / (100_000f64).sqrt());
}
