//! Randomized invariants.

mod common;

use chebwalk::apply::apply_matrix;
use chebwalk::estimators::{frobenius_mixed_state, trace_entangled, trace_product, trace_relocation};
use chebwalk::random::{random_state, RandomHermitian};
use chebwalk::sparse_oracle::{format_qmat, parse_qmat, relocate_index, RelocatedMatrix};
use chebwalk::walk::WalkOperator;
use chebwalk::{Matrix, Sampling, State};
use common::*;
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (Matrix, State)> {
    (0usize..4, 1usize..=3, any::<u64>()).prop_map(|(k, s, seed)| {
        let n = 2usize << k;
        let mut r = rng(seed);
        let a = RandomHermitian::new(n, s.min(n)).sample(&mut r);
        let b = random_state(&mut r, n);
        (a, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn qmat_round_trip((a, _) in instance()) {
        let back: Matrix = parse_qmat(&format_qmat(&a)).unwrap();
        prop_assert_eq!(back.dim(), a.dim());
        prop_assert_eq!(back.sparsity(), a.sparsity());
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                prop_assert_eq!(back.query_entry(i, j).unwrap(), a.query_entry(i, j).unwrap());
            }
        }
    }

    #[test]
    fn materialize_and_revalidate((a, _) in instance()) {
        let entries: Vec<_> = (0..a.dim())
            .flat_map(|i| (0..a.dim()).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, a.query_entry(i, j).unwrap()))
            .collect();
        let again = Matrix::from_full_entries(a.dim(), a.sparsity(), entries).unwrap();
        prop_assert_eq!(again.max_row_nnz(), a.max_row_nnz());
        prop_assert_eq!(again.nnz(), a.nnz());
    }

    #[test]
    fn relocation_is_an_involution((a, _) in instance()) {
        let relocated = RelocatedMatrix::new(&a).unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let (p, q) = relocate_index(i, j);
                prop_assert_eq!(relocate_index(p, q), (i, j));
                prop_assert_eq!(relocated.query(p, q).unwrap(), a.query_entry(i, j).unwrap());
            }
        }
    }

    #[test]
    fn isometry_and_block((a, _) in instance()) {
        let walk = WalkOperator::new(&a).unwrap();
        prop_assert!(walk.isometry_defect() < 1e-10);
        prop_assert!(walk.block_defect() < 1e-10);
    }

    #[test]
    fn block_encoding_preserves_norm((a, b) in instance(), order in 0usize..6) {
        let walk = WalkOperator::new(&a).unwrap();
        let (v, garbage) = walk.chebyshev_block_apply(order, &b).unwrap();
        prop_assert!((v.norm().powi(2) + garbage * garbage - 1.0).abs() < 1e-12);
    }

    #[test]
    fn application_probability_bounds((a, b) in instance()) {
        if let Ok(r) = apply_matrix(&a, &b) {
            prop_assert!(r.success_probability > 0.0 && r.success_probability <= 1.0 + 1e-12);
            prop_assert!((r.output_state.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_mode_contract((a, _) in instance(), shots in 6u64..2000, seed in any::<u64>()) {
        let estimators = [trace_relocation, trace_entangled, frobenius_mixed_state];
        for f in estimators {
            let exact = f(&a, Sampling::exact()).unwrap();
            prop_assert_eq!(exact.exact_value, Some(exact.estimate));
            prop_assert_eq!(exact.standard_error, 0.0);
            prop_assert_eq!(exact.seed, None);
            let noisy = f(&a, Sampling::shots(shots, seed)).unwrap();
            prop_assert!(noisy.standard_error > 0.0);
            prop_assert_eq!(noisy.clone(), f(&a, Sampling::shots(shots, seed)).unwrap());
        }
        let p = trace_product(&a, &a, Sampling::exact()).unwrap();
        prop_assert_eq!(p.exact_value, Some(p.estimate));
    }

    #[test]
    fn normalization_recovers_raw_overlap((a, _) in instance()) {
        let est = trace_entangled(&a, Sampling::exact()).unwrap();
        let raw = dense(&a).trace() / (a.sparsity() * a.dim()) as f64;
        prop_assert!((est.normalization.raw_from(est.estimate) - raw).norm() < 1e-12);
        let m = frobenius_mixed_state(&a, Sampling::exact()).unwrap();
        prop_assert!((m.normalization.raw_from(m.estimate).re - m.success_probability.unwrap()).abs() < 1e-12);
    }
}
