//! Seeded random instances for tests, benchmarks and the CLI corpus.

use crate::scalar::{Real, C};
use crate::sparse_oracle::SparseHermitianMatrix;
use crate::state::StateVector;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

#[derive(Clone, Debug)]
pub struct RandomHermitian {
    pub dim: usize,
    pub sparsity: usize,
    /// Range of the (real) diagonal entries.
    pub diagonal: (f64, f64),
    /// Off-diagonal entries are uniform in the disk of this radius.
    pub off_diagonal_radius: f64,
}

impl RandomHermitian {
    pub fn new(dim: usize, sparsity: usize) -> Self {
        RandomHermitian {
            dim,
            sparsity,
            diagonal: (0.0, 1.0),
            off_diagonal_radius: 1.0,
        }
    }

    /// Builds a matrix whose rows are filled greedily, in random pair order,
    /// up to the sparsity bound.
    pub fn sample<T: Real, R: Rng + ?Sized>(&self, rng: &mut R) -> SparseHermitianMatrix<T> {
        let n = self.dim;
        let mut counts = vec![0usize; n];
        let mut entries = Vec::new();
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        pairs.shuffle(rng);
        for (i, j) in pairs {
            let full = if i == j {
                counts[i] >= self.sparsity
            } else {
                counts[i] >= self.sparsity || counts[j] >= self.sparsity
            };
            if full {
                continue;
            }
            let v = if i == j {
                let (lo, hi) = self.diagonal;
                C::new(T::lit(rng.random_range(lo..=hi)), T::zero())
            } else {
                let r = self.off_diagonal_radius * rng.random::<f64>().sqrt();
                let theta = rng.random_range(0.0..std::f64::consts::TAU);
                C::new(T::lit(r * theta.cos()), T::lit(r * theta.sin()))
            };
            counts[i] += 1;
            if i != j {
                counts[j] += 1;
            }
            entries.push((i, j, v));
        }
        SparseHermitianMatrix::from_full_entries(n, self.sparsity, entries)
            .expect("generated matrix satisfies its own bounds")
    }
}

/// Haar-like random unit state: normalized complex Gaussian vector.
pub fn random_state<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> StateVector<T> {
    let amps = (0..dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C::new(T::lit(re), T::lit(im))
        })
        .collect();
    StateVector::from_amplitudes(amps)
        .and_then(|s| s.normalized())
        .expect("gaussian vector is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_matrices_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &(n, s) in &[(2, 1), (4, 2), (8, 3), (16, 3)] {
            let a: SparseHermitianMatrix<f64> = RandomHermitian::new(n, s).sample(&mut rng);
            assert!(a.max_row_nnz() <= s);
            assert!(a.to_dense().hermiticity_defect() == 0.0);
            assert!((0..n).all(|i| a.query_entry(i, i).unwrap().re >= 0.0));
        }
    }
}
