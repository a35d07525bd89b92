//! Statevectors over an explicit register layout, plus the `qvec v1` text format.

use crate::error::{Error, Result};
use crate::scalar::{cone, czero, inner, norm, Real, C};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegisterKind {
    /// Ancilla block post-selected on `|0…0⟩` by a block encoding.
    Ancilla,
    /// Index register the matrix acts on.
    Index,
    /// Second index register (entangled copy / purification).
    Copy,
    /// One factor of the doubled walk space `C^{2N}`.
    Walk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Register {
    pub kind: RegisterKind,
    pub qubits: usize,
}

impl Register {
    pub fn dim(&self) -> usize {
        1 << self.qubits
    }
}

/// Ordered list of registers; the first register is the most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterLayout {
    registers: Vec<Register>,
}

impl RegisterLayout {
    pub fn new(registers: Vec<Register>) -> Self {
        RegisterLayout { registers }
    }

    /// Plain `n`-qubit index register.
    pub fn index(n: usize) -> Self {
        Self::new(vec![Register {
            kind: RegisterKind::Index,
            qubits: n,
        }])
    }

    /// `m` ancilla qubits on top of an `n`-qubit index register.
    pub fn block(m: usize, n: usize) -> Self {
        Self::new(vec![
            Register {
                kind: RegisterKind::Ancilla,
                qubits: m,
            },
            Register {
                kind: RegisterKind::Index,
                qubits: n,
            },
        ])
    }

    /// `m` ancillas, an `n`-qubit index register and an `n`-qubit copy register.
    pub fn block_with_copy(m: usize, n: usize) -> Self {
        let mut layout = Self::block(m, n);
        layout.registers.push(Register {
            kind: RegisterKind::Copy,
            qubits: n,
        });
        layout
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn qubits(&self) -> usize {
        self.registers.iter().map(|r| r.qubits).sum()
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits()
    }

    /// Value held by register `pos` in basis state `flat`.
    pub fn register_value(&self, flat: usize, pos: usize) -> usize {
        let shift: usize = self.registers[pos + 1..].iter().map(|r| r.qubits).sum();
        (flat >> shift) & (self.registers[pos].dim() - 1)
    }
}

/// Which registers a projector forces onto `|0…0⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegisterMask {
    positions: Vec<usize>,
}

impl RegisterMask {
    /// The empty mask: projector is the identity.
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn positions(positions: Vec<usize>) -> Self {
        RegisterMask { positions }
    }

    /// Masks every ancilla register of `layout`.
    pub fn ancillas_of(layout: &RegisterLayout) -> Self {
        RegisterMask {
            positions: layout
                .registers()
                .iter()
                .enumerate()
                .filter(|(_, r)| r.kind == RegisterKind::Ancilla)
                .map(|(p, _)| p)
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn validate(&self, layout: &RegisterLayout) -> Result<()> {
        for &p in &self.positions {
            if p >= layout.registers().len() {
                return Err(Error::InvalidMask(format!(
                    "register {p} does not exist in a layout of {} registers",
                    layout.registers().len()
                )));
            }
        }
        Ok(())
    }

    /// Whether basis state `flat` lies in the range of the projector.
    pub fn admits(&self, layout: &RegisterLayout, flat: usize) -> bool {
        self.positions
            .iter()
            .all(|&p| layout.register_value(flat, p) == 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    layout: RegisterLayout,
    amplitudes: Vec<C<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn new(layout: RegisterLayout, amplitudes: Vec<C<T>>) -> Result<Self> {
        if layout.dim() != amplitudes.len() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: amplitudes.len(),
            });
        }
        Ok(StateVector { layout, amplitudes })
    }

    /// Unnormalized vector on a plain index register of dimension `amplitudes.len()`.
    pub fn from_amplitudes(amplitudes: Vec<C<T>>) -> Result<Self> {
        let n = qubits_for(amplitudes.len())?;
        Self::new(RegisterLayout::index(n), amplitudes)
    }

    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::IndexOutOfRange { i: k, j: 0, dim });
        }
        let mut amps = vec![czero(); dim];
        amps[k] = cone();
        Self::from_amplitudes(amps)
    }

    /// `H^{⊗n}|0⟩`, the uniform superposition.
    pub fn uniform(dim: usize) -> Result<Self> {
        let a = T::one() / T::from_usize(dim).unwrap_or(T::one()).sqrt();
        Self::from_amplitudes(vec![C::new(a, T::zero()); dim])
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C<T>> {
        self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> T {
        norm(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(inner(&self.amplitudes, &other.amplitudes))
    }

    pub fn normalized(&self) -> Result<Self> {
        let nrm = self.norm();
        if nrm == T::zero() {
            return Err(Error::ZeroState);
        }
        Ok(StateVector {
            layout: self.layout.clone(),
            amplitudes: self.amplitudes.iter().map(|a| a / nrm).collect(),
        })
    }

    pub fn require_unit(&self) -> Result<()> {
        let n = self.norm();
        if (n - T::one()).abs() > T::lit(1e-9).max(T::epsilon() * T::lit(64.0)) {
            return Err(Error::NotNormalized(n.to_f64_lossy()));
        }
        Ok(())
    }

    /// Applies the projector selected by `mask`.
    pub fn project(&self, mask: &RegisterMask) -> Result<Self> {
        mask.validate(&self.layout)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(k, a)| if mask.admits(&self.layout, k) { *a } else { czero() })
            .collect();
        Ok(StateVector {
            layout: self.layout.clone(),
            amplitudes,
        })
    }
}

pub(crate) fn qubits_for(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// A state read from a `qvec v1` file, normalized on load.
#[derive(Clone, Debug)]
pub struct LoadedState<T: Real> {
    pub state: StateVector<T>,
    pub original_norm: T,
}

/// Parses the `qvec v1` text format: header line, dimension line, then one
/// `re im` pair per amplitude. `#` starts a comment line.
pub fn parse_qvec<T: Real>(text: &str) -> Result<LoadedState<T>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    if header != "qvec v1" {
        return Err(Error::Parse {
            line,
            message: format!("expected header `qvec v1`, found `{header}`"),
        });
    }
    let (line, dim_line) = lines.next().ok_or_else(|| Error::Parse {
        line: line + 1,
        message: "missing dimension line".into(),
    })?;
    let dim: usize = dim_line.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid dimension `{dim_line}`"),
    })?;
    qubits_for(dim)?;

    let mut amps = Vec::with_capacity(dim);
    for (line, text) in lines {
        if amps.len() == dim {
            return Err(Error::Parse {
                line,
                message: format!("more than {dim} amplitudes"),
            });
        }
        let mut fields = text.split_whitespace();
        let mut field = |name: &str| -> Result<T> {
            let tok = fields.next().ok_or_else(|| Error::Parse {
                line,
                message: format!("missing {name}"),
            })?;
            let v: f64 = tok.parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid {name} `{tok}`"),
            })?;
            Ok(T::lit(v))
        };
        let re = field("real part")?;
        let im = field("imaginary part")?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line,
                message: "trailing fields".into(),
            });
        }
        amps.push(C::new(re, im));
    }
    if amps.len() != dim {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("expected {dim} amplitudes, found {}", amps.len()),
        });
    }
    let raw = StateVector::from_amplitudes(amps)?;
    let original_norm = raw.norm();
    Ok(LoadedState {
        state: raw.normalized()?,
        original_norm,
    })
}

pub fn load_qvec<T: Real>(path: impl AsRef<Path>) -> Result<LoadedState<T>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_qvec(&text)
}

pub fn format_qvec<T: Real>(state: &StateVector<T>) -> String {
    let mut out = format!("qvec v1\n{}\n", state.dim());
    for a in state.amplitudes() {
        let _ = writeln!(out, "{:e} {:e}", a.re.to_f64_lossy(), a.im.to_f64_lossy());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qvec_loader_normalizes_and_keeps_norm() {
        let text = "qvec v1\n# comment\n4\n3 0\n0 0\n0 4\n0 0\n";
        let loaded: LoadedState<f64> = parse_qvec(text).unwrap();
        assert!((loaded.original_norm - 5.0).abs() < 1e-15);
        assert!((loaded.state.norm() - 1.0).abs() < 1e-15);
        assert!((loaded.state.amplitudes()[2].im - 0.8).abs() < 1e-15);
    }

    #[test]
    fn qvec_rejects_bad_dimension_and_counts() {
        assert!(matches!(
            parse_qvec::<f64>("qvec v1\n3\n1 0\n0 0\n0 0\n"),
            Err(Error::NotPowerOfTwo(3))
        ));
        assert!(matches!(
            parse_qvec::<f64>("qvec v1\n2\n1 0\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_qvec::<f64>("qvec v1\n2\n0 0\n0 0\n"),
            Err(Error::ZeroState)
        ));
    }

    #[test]
    fn qvec_format_round_trips() {
        let s = StateVector::<f64>::from_amplitudes(vec![C::new(0.6, 0.0), C::new(0.0, -0.8)]).unwrap();
        let back: LoadedState<f64> = parse_qvec(&format_qvec(&s)).unwrap();
        assert_eq!(back.state, s);
    }

    #[test]
    fn register_values_and_projection() {
        let layout = RegisterLayout::block_with_copy(2, 1);
        // flat = (anc * 2 + idx) * 2 + copy
        assert_eq!(layout.dim(), 16);
        assert_eq!(layout.register_value(0b1101, 0), 0b11);
        assert_eq!(layout.register_value(0b1101, 1), 0);
        assert_eq!(layout.register_value(0b1101, 2), 1);
        let mask = RegisterMask::ancillas_of(&layout);
        let amps = vec![C::new(0.25, 0.0); 16];
        let s = StateVector::<f64>::new(layout, amps).unwrap();
        let p = s.project(&mask).unwrap();
        assert_eq!(p.amplitudes().iter().filter(|a| a.re != 0.0).count(), 4);
        assert!(RegisterMask::positions(vec![3]).validate(s.layout()).is_err());
    }
}
