//! Sparse Hermitian matrices behind an entry oracle.
//!
//! A [`SparseHermitianMatrix`] answers `query_entry(i, j) = a_ij` and carries
//! the padded row patterns consumed by the walk isometry: each row's nonzero
//! columns, extended with the smallest unused column indices until the row
//! has exactly `s` indices.

mod qmat;
mod relocate;

pub use qmat::{format_qmat, load_matrix, parse_qmat};
pub use relocate::{relocate_index, RelocatedMatrix};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::{czero, Real, C};
use crate::state::qubits_for;
use std::collections::BTreeMap;

/// Magnitudes up to `1 + MAGNITUDE_SLACK` are accepted (and clamped by users
/// of `1 - |a|`) so that values like `0.6 + 0.8i` survive decimal round-off.
pub const MAGNITUDE_SLACK: f64 = 1e-12;
/// Absolute tolerance for Hermitian pair consistency.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Largest dimension for which the condition number is computed on load.
pub const CONDITION_NUMBER_MAX_DIM: usize = 256;

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixMetadata<T: Real> {
    pub sparsity: usize,
    /// Largest row sum of `|a_ij|`; bounds the spectral norm (Gershgorin).
    pub norm_bound: T,
    /// Largest over smallest singular value; `None` above
    /// [`CONDITION_NUMBER_MAX_DIM`], infinite for singular matrices.
    pub condition_number: Option<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SparseHermitianMatrix<T: Real> {
    dim: usize,
    sparsity: usize,
    /// Row-major nonzeros, each row sorted by column.
    rows: Vec<Vec<(usize, C<T>)>>,
    padded: Vec<Vec<usize>>,
    metadata: MatrixMetadata<T>,
}

impl<T: Real> SparseHermitianMatrix<T> {
    /// Builds a matrix from entries given in *both* orientations (or only
    /// on/above the diagonal; missing mirrors are filled by conjugation).
    /// Zero values are dropped.
    pub fn from_full_entries(
        dim: usize,
        sparsity: usize,
        entries: impl IntoIterator<Item = (usize, usize, C<T>)>,
    ) -> Result<Self> {
        qubits_for(dim)?;
        if sparsity == 0 || sparsity > dim {
            return Err(Error::InvalidSparsity { s: sparsity, dim });
        }
        let mut map: BTreeMap<(usize, usize), C<T>> = BTreeMap::new();
        for (i, j, v) in entries {
            if i >= dim || j >= dim {
                return Err(Error::IndexOutOfRange { i, j, dim });
            }
            if map.insert((i, j), v).is_some() {
                return Err(Error::DuplicateEntry { i, j });
            }
        }
        let tol = T::lit(HERMITIAN_TOL);
        let mut full: BTreeMap<(usize, usize), C<T>> = BTreeMap::new();
        for (&(i, j), &v) in &map {
            if i == j {
                if v.im.abs() > tol {
                    return Err(Error::NonHermitian { i, j });
                }
                full.insert((i, i), C::new(v.re, T::zero()));
                continue;
            }
            let (lo, hi) = (i.min(j), i.max(j));
            let mirror = map.get(&(j, i)).copied();
            if let Some(m) = mirror {
                if (m - v.conj()).norm() > tol {
                    return Err(Error::NonHermitian { i: lo, j: hi });
                }
            }
            // canonical value from the upper triangle when both are present
            let upper = if i < j { v } else { mirror.unwrap_or(v.conj()) };
            full.insert((lo, hi), upper);
            full.insert((hi, lo), upper.conj());
        }

        let mut rows: Vec<Vec<(usize, C<T>)>> = vec![Vec::new(); dim];
        for ((i, j), v) in full {
            if v == czero() {
                continue;
            }
            let magnitude = v.norm();
            if magnitude > T::one() + T::lit(MAGNITUDE_SLACK) {
                return Err(Error::EntryMagnitude {
                    i,
                    j,
                    magnitude: magnitude.to_f64_lossy(),
                });
            }
            rows[i].push((j, v));
        }
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() > sparsity {
                return Err(Error::RowSparsity {
                    row,
                    count: entries.len(),
                    s: sparsity,
                });
            }
        }
        let padded = rows
            .iter()
            .map(|r| pad_pattern(r.iter().map(|(j, _)| *j), sparsity))
            .collect();

        let norm_bound = rows
            .iter()
            .map(|r| r.iter().fold(T::zero(), |acc, (_, v)| acc + v.norm()))
            .fold(T::zero(), T::max);
        let mut m = SparseHermitianMatrix {
            dim,
            sparsity,
            rows,
            padded,
            metadata: MatrixMetadata {
                sparsity,
                norm_bound,
                condition_number: None,
            },
        };
        if dim <= CONDITION_NUMBER_MAX_DIM {
            m.metadata.condition_number = Some(condition_number(&m.to_dense()));
        }
        Ok(m)
    }

    /// Validates a dense matrix as Hermitian with declared sparsity `s`.
    pub fn from_dense(dense: &DenseMatrix<T>, sparsity: usize) -> Result<Self> {
        if dense.rows() != dense.cols() {
            return Err(Error::DimensionMismatch {
                expected: dense.rows(),
                found: dense.cols(),
            });
        }
        let n = dense.rows();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = dense[(i, j)];
                if v != czero() || dense[(j, i)] != czero() {
                    entries.push((i, j, v));
                }
            }
        }
        Self::from_full_entries(n, sparsity, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `n = log2 N`.
    pub fn qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn sparsity(&self) -> usize {
        self.sparsity
    }

    pub fn metadata(&self) -> &MatrixMetadata<T> {
        &self.metadata
    }

    /// Oracle access `P_A`: `a_ij`, zero when not stored.
    pub fn query_entry(&self, i: usize, j: usize) -> Result<C<T>> {
        if i >= self.dim || j >= self.dim {
            return Err(Error::IndexOutOfRange { i, j, dim: self.dim });
        }
        Ok(self.entry(i, j))
    }

    pub(crate) fn entry(&self, i: usize, j: usize) -> C<T> {
        let row = &self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => row[k].1,
            Err(_) => czero(),
        }
    }

    /// Stored nonzeros of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, C<T>)] {
        &self.rows[i]
    }

    /// Row `i`'s nonzero columns padded to exactly `s` indices, ascending.
    pub fn padded_pattern(&self, i: usize) -> &[usize] {
        &self.padded[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Iterates `(i, j, a_ij)` over stored nonzeros in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C<T>)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&(j, v)| (i, j, v)))
    }

    /// Largest nonzero count over all rows (at most the declared sparsity).
    pub fn max_row_nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `A†`, by transposition and conjugation of the oracle answers.
    pub fn adjoint(&self) -> Self {
        let entries: Vec<_> = self.entries().map(|(i, j, v)| (j, i, v.conj())).collect();
        Self::from_full_entries(self.dim, self.sparsity, entries)
            .expect("adjoint of a valid matrix is valid")
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut d = DenseMatrix::zeros(self.dim, self.dim);
        for (i, j, v) in self.entries() {
            d[(i, j)] = v;
        }
        d
    }

    /// `A x` by sparse row traversal.
    pub fn apply(&self, x: &[C<T>]) -> Vec<C<T>> {
        self.rows
            .iter()
            .map(|r| r.iter().fold(czero(), |acc, &(j, v)| acc + v * x[j]))
            .collect()
    }

    pub fn trace(&self) -> C<T> {
        (0..self.dim).fold(czero(), |acc, i| acc + self.entry(i, i))
    }
}

fn pad_pattern(nonzero: impl Iterator<Item = usize>, s: usize) -> Vec<usize> {
    let mut pattern: Vec<usize> = nonzero.collect();
    let mut candidate = 0;
    while pattern.len() < s {
        if !pattern.contains(&candidate) {
            pattern.push(candidate);
        }
        candidate += 1;
    }
    pattern.sort_unstable();
    pattern
}

fn condition_number<T: Real>(dense: &DenseMatrix<T>) -> T {
    let (values, _) = dense.hermitian_eigen();
    let max = values.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    let min = values.iter().fold(T::infinity(), |acc, v| acc.min(v.abs()));
    if min <= max * T::epsilon() {
        T::infinity()
    } else {
        max / min
    }
}
