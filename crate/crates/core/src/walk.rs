//! Quantum-walk block encoding of `A/s`.
//!
//! The walk space is `C^{2N} ⊗ C^{2N}`. Row `j` of `A` defines
//!
//! ```text
//! |ψ_j⟩ = |j⟩ ⊗ s^{-1/2} Σ_{k ∈ pattern(j)} ( √(a*_jk) |k⟩ + √(1 − |a_jk|) |k + N⟩ )
//! ```
//!
//! and `T = Σ_j |ψ_j⟩⟨j|`, `W = S (2 T T† − I)`. Since `T† S T = A/s`, the
//! operator `U_n = U_T† Wⁿ U_T` places `T_n(A/s)` in the block where the
//! `m = n + 2` ancilla qubits read zero.
//!
//! Operators are applied implicitly. `T` has `2s` nonzeros per column, `W`
//! has at most `2s + 1` nonzeros per column and `U_T` is block diagonal with
//! one Householder reflector per row of `A`, so nothing of size `(4N²)²` is
//! ever formed unless a dense copy is asked for.

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::{czero, inner, max_abs_diff, norm, norm_sqr, Real, C};
use crate::sparse_oracle::SparseHermitianMatrix;
use crate::state::{Register, RegisterKind, RegisterLayout, StateVector};
use std::collections::HashMap;

/// Bookkeeping for the two factorizations of the `4N²`-dimensional space:
/// walk layout `(a, b)` with `a, b ∈ [0, 2N)`, and block layout
/// `(ancilla, index)` with `m = n + 2` ancilla qubits.
///
/// Basis state `(a, b)` with `a = hi·N + idx` corresponds to ancilla value
/// `hi·2N + b` and index `idx`. Ancilla zero is therefore `(idx, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkSpace {
    dim: usize,
}

impl WalkSpace {
    pub fn new(dim: usize) -> Self {
        debug_assert!(dim.is_power_of_two());
        WalkSpace { dim }
    }

    /// `N`.
    pub fn base_dim(&self) -> usize {
        self.dim
    }

    pub fn index_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    /// `m = log2(2N) + 1`.
    pub fn ancilla_qubits(&self) -> usize {
        self.index_qubits() + 2
    }

    /// `2N`.
    pub fn factor_dim(&self) -> usize {
        2 * self.dim
    }

    /// `4N²`.
    pub fn total_dim(&self) -> usize {
        self.factor_dim() * self.factor_dim()
    }

    pub fn walk_layout(&self) -> RegisterLayout {
        let q = self.index_qubits() + 1;
        RegisterLayout::new(vec![
            Register {
                kind: RegisterKind::Walk,
                qubits: q,
            },
            Register {
                kind: RegisterKind::Walk,
                qubits: q,
            },
        ])
    }

    pub fn block_layout(&self) -> RegisterLayout {
        RegisterLayout::block(self.ancilla_qubits(), self.index_qubits())
    }

    pub fn walk_from_block(&self, flat: usize) -> usize {
        let n = self.dim;
        let (anc, idx) = (flat / n, flat % n);
        let (hi, b) = (anc / (2 * n), anc % (2 * n));
        (hi * n + idx) * 2 * n + b
    }

    pub fn block_from_walk(&self, flat: usize) -> usize {
        let n = self.dim;
        let (a, b) = (flat / (2 * n), flat % (2 * n));
        let (hi, idx) = (a / n, a % n);
        (hi * 2 * n + b) * n + idx
    }

    fn to_walk<T: Real>(self, block: &[C<T>]) -> Vec<C<T>> {
        let mut out = vec![czero(); block.len()];
        for (k, v) in block.iter().enumerate() {
            out[self.walk_from_block(k)] = *v;
        }
        out
    }

    fn to_block<T: Real>(self, walk: &[C<T>]) -> Vec<C<T>> {
        let mut out = vec![czero(); walk.len()];
        for (k, v) in walk.iter().enumerate() {
            out[self.block_from_walk(k)] = *v;
        }
        out
    }
}

/// Principal square root with the cut on the negative real axis mapped to
/// `+i√r` regardless of the sign of a zero imaginary part.
pub fn principal_sqrt<T: Real>(z: C<T>) -> C<T> {
    if z.im == T::zero() {
        return if z.re >= T::zero() {
            C::new(z.re.sqrt(), T::zero())
        } else {
            C::new(T::zero(), (-z.re).sqrt())
        };
    }
    let m = z.norm();
    let half = T::lit(0.5);
    let re = ((m + z.re) * half).sqrt();
    let im = ((m - z.re) * half).sqrt();
    C::new(re, if z.im < T::zero() { -im } else { im })
}

/// Amplitude `√(a*_jk)` on `|k⟩` in row `j`.
///
/// Principal branch, except that a negative real entry below the diagonal
/// takes the conjugate root. This keeps `conj(c_jk) c_kj = a_jk` for every
/// pair, which is what makes `T† S T = A/s` hold.
pub fn entry_amplitude<T: Real>(a: C<T>, j: usize, k: usize) -> C<T> {
    let root = principal_sqrt(a.conj());
    if j > k && a.im == T::zero() && a.re < T::zero() {
        root.conj()
    } else {
        root
    }
}

/// Chebyshev polynomial of the first kind by the three-term recurrence.
pub fn chebyshev_t<T: Real>(n: usize, x: T) -> T {
    let (mut prev, mut cur) = (T::one(), x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = T::lit(2.0) * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev polynomial of the second kind; `U_{-1} = 0`.
pub fn chebyshev_u<T: Real>(n: isize, x: T) -> T {
    if n < 0 {
        return T::zero();
    }
    let (mut prev, mut cur) = (T::one(), T::lit(2.0) * x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = T::lit(2.0) * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `V = −ω (I − 2 û û†)`, the unitary completion block for one row.
#[derive(Clone, Debug)]
struct Reflector<T: Real> {
    unit: Vec<C<T>>,
    phase: C<T>,
}

impl<T: Real> Reflector<T> {
    /// Reflector with `V e₀ = chi`; `chi` must be a unit vector.
    fn completing(chi: &[C<T>]) -> Option<Self> {
        let phase = if chi[0].norm() > T::zero() {
            chi[0] / chi[0].norm()
        } else {
            C::new(T::one(), T::zero())
        };
        // u = e₀ + ω̄ χ; its first component is 1 + |χ₀| ≥ 1, so no cancellation.
        let mut u: Vec<C<T>> = chi.iter().map(|c| phase.conj() * c).collect();
        u[0] = u[0] + T::one();
        let len = norm(&u);
        if !(len > T::one()) {
            return None;
        }
        u.iter_mut().for_each(|c| *c = *c / len);
        Some(Reflector { unit: u, phase })
    }

    fn apply(&self, x: &mut [C<T>]) {
        let proj = inner(&self.unit, x) * T::lit(2.0);
        for (xi, ui) in x.iter_mut().zip(&self.unit) {
            *xi = -self.phase * (*xi - ui * proj);
        }
    }

    fn apply_adjoint(&self, x: &mut [C<T>]) {
        let proj = inner(&self.unit, x) * T::lit(2.0);
        for (xi, ui) in x.iter_mut().zip(&self.unit) {
            *xi = -self.phase.conj() * (*xi - ui * proj);
        }
    }
}

/// The walk operator together with its isometry `T`, the completion `U_T`
/// and the swap `S`.
#[derive(Clone, Debug)]
pub struct WalkOperator<T: Real> {
    matrix: SparseHermitianMatrix<T>,
    space: WalkSpace,
    /// `χ_j` as sparse entries over the second factor; `ψ_j = |j⟩ ⊗ χ_j`.
    columns: Vec<Vec<(usize, C<T>)>>,
    reflectors: Vec<Reflector<T>>,
}

/// Second-factor amplitudes of `|ψ_j⟩`.
fn psi_column<T: Real>(a: &SparseHermitianMatrix<T>, j: usize) -> Vec<(usize, C<T>)> {
    let n = a.dim();
    let inv = T::one() / T::from_usize(a.sparsity()).unwrap_or(T::one()).sqrt();
    let mut col = Vec::with_capacity(2 * a.sparsity());
    for &k in a.padded_pattern(j) {
        let v = a.entry(j, k);
        let amp = entry_amplitude(v, j, k) * inv;
        let rest = (T::one() - v.norm()).max(T::zero()).sqrt() * inv;
        if amp != czero() {
            col.push((k, amp));
        }
        if rest != T::zero() {
            col.push((k + n, C::new(rest, T::zero())));
        }
    }
    col.sort_by_key(|(k, _)| *k);
    col
}

/// `|ψ_j⟩` as a state on the walk layout.
pub fn build_psi_state<T: Real>(a: &SparseHermitianMatrix<T>, j: usize) -> Result<StateVector<T>> {
    if j >= a.dim() {
        return Err(Error::IndexOutOfRange { i: j, j: 0, dim: a.dim() });
    }
    let space = WalkSpace::new(a.dim());
    let mut amps = vec![czero(); space.total_dim()];
    for (k, v) in psi_column(a, j) {
        amps[j * space.factor_dim() + k] = v;
    }
    StateVector::new(space.walk_layout(), amps)
}

impl<T: Real> WalkOperator<T> {
    pub fn new(a: &SparseHermitianMatrix<T>) -> Result<Self> {
        for i in 0..a.dim() {
            let d = a.entry(i, i).re;
            if d < T::zero() {
                return Err(Error::NegativeDiagonal {
                    i,
                    value: d.to_f64_lossy(),
                });
            }
        }
        let space = WalkSpace::new(a.dim());
        let f = space.factor_dim();
        let mut columns = Vec::with_capacity(a.dim());
        let mut reflectors = Vec::with_capacity(a.dim());
        for j in 0..a.dim() {
            let col = psi_column(a, j);
            let mut chi = vec![czero(); f];
            for &(k, v) in &col {
                chi[k] = v;
            }
            let len = norm(&chi);
            if (len - T::one()).abs() > T::lit(1e-8).max(T::epsilon() * T::lit(64.0)) {
                return Err(Error::Orthonormalization(j));
            }
            let r = Reflector::completing(&chi).ok_or(Error::Orthonormalization(j))?;
            columns.push(col);
            reflectors.push(r);
        }
        Ok(WalkOperator {
            matrix: a.clone(),
            space,
            columns,
            reflectors,
        })
    }

    pub fn matrix(&self) -> &SparseHermitianMatrix<T> {
        &self.matrix
    }

    pub fn space(&self) -> WalkSpace {
        self.space
    }

    pub fn sparsity(&self) -> usize {
        self.matrix.sparsity()
    }

    /// `T|φ⟩`, walk layout.
    pub fn isometry_apply(&self, phi: &[C<T>]) -> Vec<C<T>> {
        let f = self.space.factor_dim();
        let mut out = vec![czero(); self.space.total_dim()];
        for (j, col) in self.columns.iter().enumerate() {
            if phi[j] == czero() {
                continue;
            }
            for &(k, v) in col {
                out[j * f + k] = v * phi[j];
            }
        }
        out
    }

    /// `T†|x⟩` for `x` in walk layout.
    pub fn isometry_adjoint_apply(&self, x: &[C<T>]) -> Vec<C<T>> {
        let f = self.space.factor_dim();
        self.columns
            .iter()
            .enumerate()
            .map(|(j, col)| {
                col.iter()
                    .fold(czero(), |acc, &(k, v)| acc + v.conj() * x[j * f + k])
            })
            .collect()
    }

    /// `S|a, b⟩ = |b, a⟩`.
    pub fn swap_apply(&self, x: &[C<T>]) -> Vec<C<T>> {
        let f = self.space.factor_dim();
        let mut out = vec![czero(); x.len()];
        for a in 0..f {
            for b in 0..f {
                out[b * f + a] = x[a * f + b];
            }
        }
        out
    }

    /// `W|x⟩ = S (2 T T† − I)|x⟩`.
    pub fn walk_apply(&self, x: &[C<T>]) -> Vec<C<T>> {
        let proj = self.isometry_apply(&self.isometry_adjoint_apply(x));
        let reflected: Vec<C<T>> = proj
            .iter()
            .zip(x)
            .map(|(p, v)| p * T::lit(2.0) - v)
            .collect();
        self.swap_apply(&reflected)
    }

    pub fn walk_adjoint_apply(&self, x: &[C<T>]) -> Vec<C<T>> {
        let y = self.swap_apply(x);
        let proj = self.isometry_apply(&self.isometry_adjoint_apply(&y));
        proj.iter().zip(&y).map(|(p, v)| p * T::lit(2.0) - v).collect()
    }

    /// `U_T|x⟩`, walk layout. Acts as `V_a` on the second factor when the
    /// first factor holds `a < N`, and as the identity otherwise.
    pub fn completion_apply(&self, x: &[C<T>]) -> Vec<C<T>> {
        let f = self.space.factor_dim();
        let mut out = x.to_vec();
        for (a, r) in self.reflectors.iter().enumerate() {
            r.apply(&mut out[a * f..(a + 1) * f]);
        }
        out
    }

    pub fn completion_adjoint_apply(&self, x: &[C<T>]) -> Vec<C<T>> {
        let f = self.space.factor_dim();
        let mut out = x.to_vec();
        for (a, r) in self.reflectors.iter().enumerate() {
            r.apply_adjoint(&mut out[a * f..(a + 1) * f]);
        }
        out
    }

    /// `U_T† Wⁿ U_T |x⟩` for `x` in block layout (ancilla ⊗ index).
    pub fn block_encoding_apply(&self, order: usize, x: &[C<T>]) -> Result<Vec<C<T>>> {
        if x.len() != self.space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space.total_dim(),
                found: x.len(),
            });
        }
        let mut y = self.completion_apply(&self.space.to_walk(x));
        for _ in 0..order {
            y = self.walk_apply(&y);
        }
        Ok(self.space.to_block(&self.completion_adjoint_apply(&y)))
    }

    /// `U_n |0^m⟩|φ⟩`, as a block-layout state.
    pub fn block_encode_state(&self, order: usize, phi: &StateVector<T>) -> Result<StateVector<T>> {
        let n = self.space.base_dim();
        if phi.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: phi.dim(),
            });
        }
        let mut x = vec![czero(); self.space.total_dim()];
        x[..n].copy_from_slice(phi.amplitudes());
        let y = self.block_encoding_apply(order, &x)?;
        StateVector::new(self.space.block_layout(), y)
    }

    /// `(U_n ⊗ I)` applied to a state laid out as ancilla ⊗ index ⊗ copy.
    pub fn block_encoding_apply_with_copy(&self, order: usize, x: &[C<T>]) -> Result<Vec<C<T>>> {
        let d = self.space.total_dim();
        if !x.len().is_multiple_of(d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: x.len(),
            });
        }
        let copies = x.len() / d;
        let mut out = vec![czero(); x.len()];
        let mut slice = vec![czero(); d];
        for c in 0..copies {
            for (k, s) in slice.iter_mut().enumerate() {
                *s = x[k * copies + c];
            }
            let y = self.block_encoding_apply(order, &slice)?;
            for (k, v) in y.into_iter().enumerate() {
                out[k * copies + c] = v;
            }
        }
        Ok(out)
    }

    /// Splits `U_n|0^m⟩|φ⟩` into the ancilla-zero block `v = T_n(A/s)|φ⟩`
    /// and the norm of the remainder.
    pub fn chebyshev_block_apply(&self, order: usize, phi: &StateVector<T>) -> Result<(StateVector<T>, T)> {
        let full = self.block_encode_state(order, phi)?;
        let n = self.space.base_dim();
        let amps = full.amplitudes();
        let garbage = norm_sqr(&amps[n..]).sqrt();
        let projected = StateVector::new(phi.layout().clone(), amps[..n].to_vec())?;
        Ok((projected, garbage))
    }

    /// Oracle queries spent by `U_T† Wⁿ U_T`: one per `U_T`/`U_T†`, two per `W`.
    pub fn oracle_queries(order: usize) -> u64 {
        2 * order as u64 + 2
    }

    pub fn isometry_matrix(&self) -> DenseMatrix<T> {
        let n = self.space.base_dim();
        let cols: Vec<Vec<C<T>>> = (0..n)
            .map(|j| {
                let mut e = vec![czero(); n];
                e[j] = C::new(T::one(), T::zero());
                self.isometry_apply(&e)
            })
            .collect();
        DenseMatrix::from_columns(self.space.total_dim(), &cols)
    }

    fn dense_from(&self, op: impl Fn(&[C<T>]) -> Vec<C<T>>) -> DenseMatrix<T> {
        let d = self.space.total_dim();
        let cols: Vec<Vec<C<T>>> = (0..d)
            .map(|k| {
                let mut e = vec![czero(); d];
                e[k] = C::new(T::one(), T::zero());
                op(&e)
            })
            .collect();
        DenseMatrix::from_columns(d, &cols)
    }

    /// Dense `W` in walk layout; `(4N²)²` entries.
    pub fn walk_matrix(&self) -> DenseMatrix<T> {
        self.dense_from(|x| self.walk_apply(x))
    }

    /// Dense `U_T` in walk layout.
    pub fn completion_matrix(&self) -> DenseMatrix<T> {
        self.dense_from(|x| self.completion_apply(x))
    }

    pub fn swap_matrix(&self) -> DenseMatrix<T> {
        self.dense_from(|x| self.swap_apply(x))
    }

    /// `max |T†T − I|`. The `ψ_j` occupy disjoint first-factor blocks, so
    /// only the diagonal of `T†T` can be nonzero.
    pub fn isometry_defect(&self) -> T {
        self.columns.iter().fold(T::zero(), |acc, col| {
            let n2 = col.iter().fold(T::zero(), |s, (_, v)| s + v.norm_sqr());
            acc.max((n2 - T::one()).abs())
        })
    }

    /// `max_j |U_T(|0^m⟩|j⟩) − T|j⟩|`.
    pub fn completion_embedding_defect(&self) -> T {
        let n = self.space.base_dim();
        let mut worst = T::zero();
        for j in 0..n {
            let mut e = vec![czero(); n];
            e[j] = C::new(T::one(), T::zero());
            let via_t = self.isometry_apply(&e);
            let mut x = vec![czero(); self.space.total_dim()];
            x[j] = C::new(T::one(), T::zero());
            let via_u = self.completion_apply(&self.space.to_walk(&x));
            worst = worst.max(max_abs_diff(&via_t, &via_u));
        }
        worst
    }

    /// `max |U_T† U_T − I|`, computed block by block.
    pub fn completion_unitarity_defect(&self) -> T {
        let f = self.space.factor_dim();
        let mut worst = T::zero();
        for r in &self.reflectors {
            let cols: Vec<Vec<C<T>>> = (0..f)
                .map(|k| {
                    let mut e = vec![czero(); f];
                    e[k] = C::new(T::one(), T::zero());
                    r.apply(&mut e);
                    e
                })
                .collect();
            worst = worst.max(DenseMatrix::from_columns(f, &cols).unitarity_defect());
        }
        worst
    }

    /// `max |W† W − I|` using the sparse column structure of `W`.
    pub fn walk_unitarity_defect(&self) -> T {
        let d = self.space.total_dim();
        let mut by_row: Vec<Vec<(usize, C<T>)>> = vec![Vec::new(); d];
        let mut e = vec![czero(); d];
        for c in 0..d {
            e[c] = C::new(T::one(), T::zero());
            for (r, v) in self.walk_apply(&e).into_iter().enumerate() {
                if v != czero() {
                    by_row[r].push((c, v));
                }
            }
            e[c] = czero();
        }
        let mut gram: HashMap<(usize, usize), C<T>> = HashMap::new();
        for row in &by_row {
            for &(c1, v1) in row {
                for &(c2, v2) in row {
                    let g = gram.entry((c1, c2)).or_insert_with(czero);
                    *g = *g + v1.conj() * v2;
                }
            }
        }
        let mut worst = T::zero();
        for c in 0..d {
            if !gram.contains_key(&(c, c)) {
                return T::one();
            }
        }
        for (&(c1, c2), &g) in &gram {
            let target = if c1 == c2 { C::new(T::one(), T::zero()) } else { czero() };
            worst = worst.max((g - target).norm());
        }
        worst
    }

    /// `max |T† S T − A/s|`.
    pub fn block_defect(&self) -> T {
        let n = self.space.base_dim();
        let s = T::from_usize(self.sparsity()).unwrap_or(T::one());
        let mut worst = T::zero();
        for k in 0..n {
            let mut e = vec![czero(); n];
            e[k] = C::new(T::one(), T::zero());
            let col = self.isometry_adjoint_apply(&self.swap_apply(&self.isometry_apply(&e)));
            for (i, v) in col.iter().enumerate() {
                worst = worst.max((*v - self.matrix.entry(i, k) / s).norm());
            }
        }
        worst
    }
}

/// Restriction of an operator to `span{T|λ⟩, S T|λ⟩}`.
#[derive(Clone, Debug)]
pub enum BlockRestriction<T: Real> {
    /// Orthonormal basis `{T|λ⟩, e₂}`; entries `[[m00, m01], [m10, m11]]`.
    TwoDim { overlap: T, matrix: [[C<T>; 2]; 2] },
    /// `S T|λ⟩ = ±T|λ⟩`; `eigen_residual = ‖W^k T|λ⟩ − λ^k T|λ⟩‖_∞`.
    OneDim { overlap: T, eigen_residual: T },
}

/// Below this `√(1 − λ²)` the span is treated as one-dimensional.
pub const DEGENERATE_SINE: f64 = 1e-7;

impl<T: Real> WalkOperator<T> {
    /// Restriction of `W^power` to the span generated by eigenvector `v` of `A/s`.
    pub fn restrict_to_eigenpair(&self, v: &[C<T>], power: usize) -> BlockRestriction<T> {
        let t = self.isometry_apply(v);
        let u = self.swap_apply(&t);
        let overlap = inner(&t, &u);
        let lambda = overlap.re;
        let residual: Vec<C<T>> = u.iter().zip(&t).map(|(a, b)| a - b * overlap).collect();
        let sine = norm(&residual);
        let apply_power = |x: &[C<T>]| {
            let mut y = x.to_vec();
            for _ in 0..power {
                y = self.walk_apply(&y);
            }
            y
        };
        if sine < T::lit(DEGENERATE_SINE) {
            let wt = apply_power(&t);
            let lp = lambda.powi(power as i32);
            let target: Vec<C<T>> = t.iter().map(|x| x * lp).collect();
            return BlockRestriction::OneDim {
                overlap: lambda,
                eigen_residual: max_abs_diff(&wt, &target),
            };
        }
        let e2: Vec<C<T>> = residual.iter().map(|x| x / sine).collect();
        let w1 = apply_power(&t);
        let w2 = apply_power(&e2);
        BlockRestriction::TwoDim {
            overlap: lambda,
            matrix: [
                [inner(&t, &w1), inner(&t, &w2)],
                [inner(&e2, &w1), inner(&e2, &w2)],
            ],
        }
    }
}

/// `(v, garbage_norm)` with `v = T_n(A/s)|φ⟩` read off the ancilla-zero block.
pub fn chebyshev_block_apply<T: Real>(
    a: &SparseHermitianMatrix<T>,
    order: usize,
    phi: &StateVector<T>,
) -> Result<(StateVector<T>, T)> {
    phi.require_unit()?;
    WalkOperator::new(a)?.chebyshev_block_apply(order, phi)
}

/// Pass/fail record for one walk invariant.
#[derive(Clone, Debug, serde::Serialize)]
pub struct InvariantCheck {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl InvariantCheck {
    fn new(name: impl Into<String>, max_error: f64, tolerance: f64) -> Self {
        InvariantCheck {
            name: name.into(),
            max_error,
            tolerance,
            passed: max_error <= tolerance,
        }
    }
}

pub const UNITARY_TOL: f64 = 1e-10;
pub const BLOCK_FORM_TOL: f64 = 1e-9;
pub const CHEBYSHEV_TOL: f64 = 1e-8;

/// Runs the walk invariant suite on `a` for orders `0..=max_order`.
pub fn verify_walk<T: Real>(a: &SparseHermitianMatrix<T>, max_order: usize) -> Result<Vec<InvariantCheck>> {
    let walk = WalkOperator::new(a)?;
    let n = a.dim();
    let mut checks = vec![
        InvariantCheck::new("isometry T†T = I", walk.isometry_defect().to_f64_lossy(), UNITARY_TOL),
        InvariantCheck::new(
            "completion U_T|0^m⟩|φ⟩ = T|φ⟩",
            walk.completion_embedding_defect().to_f64_lossy(),
            UNITARY_TOL,
        ),
        InvariantCheck::new(
            "completion U_T unitary",
            walk.completion_unitarity_defect().to_f64_lossy(),
            UNITARY_TOL,
        ),
        InvariantCheck::new("walk W unitary", walk.walk_unitarity_defect().to_f64_lossy(), UNITARY_TOL),
    ];

    let d = walk.space().total_dim();
    let mut swap_err = T::zero();
    let f = walk.space().factor_dim();
    for k in 0..d {
        let mut e = vec![czero(); d];
        e[k] = C::new(T::one(), T::zero());
        let once = walk.swap_apply(&e);
        let (a_, b_) = (k / f, k % f);
        swap_err = swap_err.max((once[b_ * f + a_] - C::new(T::one(), T::zero())).norm());
        swap_err = swap_err.max(max_abs_diff(&walk.swap_apply(&once), &e));
    }
    checks.push(InvariantCheck::new("swap S² = I, S|j,k⟩ = |k,j⟩", swap_err.to_f64_lossy(), UNITARY_TOL));
    checks.push(InvariantCheck::new("T†ST = A/s", walk.block_defect().to_f64_lossy(), UNITARY_TOL));

    let s = T::from_usize(a.sparsity()).unwrap_or(T::one());
    let scaled = a.to_dense().scale(T::one() / s);
    let (values, vectors) = scaled.hermitian_eigen();
    let mut form_err = T::zero();
    let mut cheb_err = T::zero();
    for (k, &lambda) in values.iter().enumerate() {
        let v = vectors.column(k);
        let lam = lambda.max(-T::one()).min(T::one());
        let sine = (T::one() - lam * lam).max(T::zero()).sqrt();
        for power in 1..=max_order.max(1) {
            let (tn, un1) = (chebyshev_t(power, lam), chebyshev_u(power as isize - 1, lam));
            let err = match walk.restrict_to_eigenpair(&v, power) {
                BlockRestriction::OneDim { overlap, eigen_residual } => {
                    eigen_residual.max((overlap - lam).abs())
                }
                BlockRestriction::TwoDim { matrix, .. } => {
                    let want = [[tn, -sine * un1], [sine * un1, tn]];
                    let mut e = T::zero();
                    for r in 0..2 {
                        for c in 0..2 {
                            e = e.max((matrix[r][c] - C::new(want[r][c], T::zero())).norm());
                        }
                    }
                    e
                }
            };
            if power == 1 {
                form_err = form_err.max(err);
            }
            cheb_err = cheb_err.max(err);
        }
    }
    checks.push(InvariantCheck::new(
        "W block form on span{T|λ⟩, ST|λ⟩}",
        form_err.to_f64_lossy(),
        BLOCK_FORM_TOL,
    ));
    checks.push(InvariantCheck::new(
        format!("Wⁿ Chebyshev block form, n ≤ {}", max_order.max(1)),
        cheb_err.to_f64_lossy(),
        CHEBYSHEV_TOL,
    ));

    // T_n(A/s) columns through the block encoding vs the dense recurrence.
    let mut rec_err = T::zero();
    let mut prev = DenseMatrix::identity(n);
    let mut cur = scaled.clone();
    for order in 0..=max_order {
        let reference = match order {
            0 => DenseMatrix::identity(n),
            1 => scaled.clone(),
            _ => {
                let next = scaled.matmul(&cur).scale(T::lit(2.0));
                let next = DenseMatrix::from_fn(n, n, |i, j| next[(i, j)] - prev[(i, j)]);
                prev = cur;
                cur = next;
                cur.clone()
            }
        };
        for j in 0..n {
            let phi = StateVector::basis(n, j)?;
            let (v, garbage) = walk.chebyshev_block_apply(order, &phi)?;
            rec_err = rec_err.max(max_abs_diff(v.amplitudes(), &reference.column(j)));
            let total = v.norm() * v.norm() + garbage * garbage;
            rec_err = rec_err.max((total - T::one()).abs());
        }
    }
    checks.push(InvariantCheck::new(
        format!("block encoding = T_n(A/s) by recurrence, n ≤ {max_order}"),
        rec_err.to_f64_lossy(),
        CHEBYSHEV_TOL,
    ));
    Ok(checks)
}
