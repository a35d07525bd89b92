//! Shared helpers: a dense nalgebra reference and seeded instance sets.
#![allow(dead_code)]

use chebwalk::random::{random_state, RandomHermitian};
use chebwalk::{Complex, Matrix, State};
use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Dense = DMatrix<Complex>;

pub fn dense(a: &Matrix) -> Dense {
    let n = a.dim();
    DMatrix::from_fn(n, n, |i, j| a.query_entry(i, j).unwrap())
}

pub fn dvec(x: &State) -> DVector<Complex> {
    DVector::from_column_slice(x.amplitudes())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 50 instances cycling N ∈ {2, 4, 8, 16} and s ∈ {1, 2, 3}, each with a
/// random unit vector.
pub fn instance_set(seed: u64) -> Vec<(Matrix, State)> {
    let mut r = rng(seed);
    (0..50)
        .map(|k| {
            let n = [2, 4, 8, 16][k % 4];
            let s = (1 + (k / 4) % 3).min(n);
            let a = RandomHermitian::new(n, s).sample(&mut r);
            let b = random_state(&mut r, n);
            (a, b)
        })
        .collect()
}

pub fn max_abs(a: &[Complex], b: &[Complex]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Eigenvalues (ascending) and eigenvectors (columns) of a Hermitian matrix.
pub fn eigh(a: &Dense) -> (Vec<f64>, Vec<Vec<Complex>>) {
    let eig = a.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..a.nrows()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
        .collect();
    (values, vectors)
}

/// Dense power iteration with the same schedule as the library.
pub fn dense_power(a: &Dense, x0: &DVector<Complex>, steps: usize) -> Vec<DVector<Complex>> {
    let mut out = vec![x0.clone()];
    for _ in 0..steps {
        let y = a * out.last().unwrap();
        let n = y.norm();
        out.push(y / Complex::new(n, 0.0));
    }
    out
}

pub fn corpus_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}
