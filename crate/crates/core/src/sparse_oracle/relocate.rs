//! Diagonal relocation `P_A′ = C† P_A C` and the Hermitian dilation of the
//! relocated matrix.

use super::SparseHermitianMatrix;
use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Index permutation realized by the CNOT layers around the oracle:
/// `(i, i) ↔ (i, 0)`, every other pair fixed. It is an involution.
pub fn relocate_index(i: usize, j: usize) -> (usize, usize) {
    if j == i {
        (i, 0)
    } else if j == 0 {
        (i, i)
    } else {
        (i, j)
    }
}

/// `A′`, whose column 0 is the diagonal of `A`, together with
/// `H(A′) = [[0, A′], [A′†, 0]]`.
#[derive(Clone, Debug)]
pub struct RelocatedMatrix<T: Real> {
    base: SparseHermitianMatrix<T>,
    dilation: SparseHermitianMatrix<T>,
    dilated_sparsity: usize,
}

impl<T: Real> RelocatedMatrix<T> {
    pub fn new(base: &SparseHermitianMatrix<T>) -> Result<Self> {
        let n = base.dim();
        let relocated: Vec<(usize, usize, C<T>)> = base
            .entries()
            .map(|(i, j, v)| {
                let (r, c) = relocate_index(i, j);
                (r, c, v)
            })
            .collect();

        let mut row_counts = vec![0usize; n];
        let mut col_counts = vec![0usize; n];
        for &(i, j, _) in &relocated {
            row_counts[i] += 1;
            col_counts[j] += 1;
        }
        let dilated_sparsity = row_counts
            .iter()
            .chain(&col_counts)
            .copied()
            .max()
            .unwrap_or(0)
            .max(base.sparsity());

        let entries = relocated.iter().map(|&(i, j, v)| (i, n + j, v));
        let dilation = SparseHermitianMatrix::from_full_entries(2 * n, dilated_sparsity, entries)
            .map_err(|e| match e {
                Error::RowSparsity { .. } => Error::InvalidSparsity {
                    s: dilated_sparsity,
                    dim: 2 * n,
                },
                other => other,
            })?;
        Ok(RelocatedMatrix {
            base: base.clone(),
            dilation,
            dilated_sparsity,
        })
    }

    pub fn base(&self) -> &SparseHermitianMatrix<T> {
        &self.base
    }

    /// Oracle `P_A′`: `A′(i, j) = A(π(i, j))`.
    pub fn query(&self, i: usize, j: usize) -> Result<C<T>> {
        let (r, c) = relocate_index(i, j);
        self.base.query_entry(r, c)
    }

    /// `H(A′)`, dimension `2N`, sparsity `s′`.
    pub fn dilation(&self) -> &SparseHermitianMatrix<T> {
        &self.dilation
    }

    /// `s′`: max nonzeros over the rows and columns of `A′`, at least `s`.
    pub fn dilated_sparsity(&self) -> usize {
        self.dilated_sparsity
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
    fn diagonal_moves_into_column_zero() {
        let a = diag(&[0.2, 0.4, 0.6, 0.8]);
        let r = RelocatedMatrix::new(&a).unwrap();
        for (i, want) in [0.2, 0.4, 0.6, 0.8].iter().enumerate() {
            assert_eq!(r.query(i, 0).unwrap(), C::new(*want, 0.0));
        }
        assert_eq!(r.dilated_sparsity(), 4);
        assert_eq!(r.dilation().dim(), 8);
        assert_eq!(r.dilation().to_dense().hermiticity_defect(), 0.0);
    }

    #[test]
    fn identity_column_sums_to_trace() {
        let r = RelocatedMatrix::new(&diag(&[1.0; 4])).unwrap();
        let sum: C<f64> = (0..4).map(|i| r.query(i, 0).unwrap()).sum();
        assert_eq!(sum, C::new(4.0, 0.0));
    }

    #[test]
    fn index_map_is_an_involution() {
        for i in 0..8 {
            for j in 0..8 {
                let (r, c) = relocate_index(i, j);
                assert_eq!(relocate_index(r, c), (i, j));
            }
        }
    }
}
