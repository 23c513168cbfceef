//! Dense state vectors over ordered multi-qudit shapes.
//!
//! Subsystem 0 is the leftmost tensor factor. Flat indices are big-endian:
//! for a label `(i_1, .., i_N)` over dimensions `(d_1, .., d_N)`,
//!
//! ```text
//! flat = sum_j i_j * prod_{k > j} d_k
//! ```
//!
//! Kets are never normalized implicitly. Weak values are invariant under
//! rescaling of either selected state, so unnormalized states are accepted
//! everywhere and normalization is opt-in.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::weakvalues::{Pauli, PauliString, ProjectorProduct};

/// Largest total dimension accepted for any shape.
pub const MAX_DIMENSION: usize = 1 << 20;

/// Norm below which a vector is treated as zero.
pub const ZERO_NORM: f64 = 1e-12;

/// Ordered list of local dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    dims: Vec<usize>,
    total: usize,
}

impl Shape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::EmptyShape);
        }
        let mut total: usize = 1;
        for (index, &dim) in dims.iter().enumerate() {
            if dim < 2 {
                return Err(Error::InvalidDimension { index, dim });
            }
            total = total
                .checked_mul(dim)
                .filter(|&t| t <= MAX_DIMENSION)
                .ok_or(Error::DimensionOverflow)?;
        }
        Ok(Shape { dims, total })
    }

    /// `count` qubits.
    pub fn qubits(count: usize) -> Result<Self> {
        Shape::new(vec![2; count])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of subsystems N.
    pub fn subsystems(&self) -> usize {
        self.dims.len()
    }

    /// Total Hilbert-space dimension D.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn is_qubits(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }

    /// Stride of each subsystem in the flat index.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for j in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * self.dims[j + 1];
        }
        strides
    }

    /// Level of subsystem `subsystem` inside flat index `flat`.
    #[inline]
    pub fn level_at(&self, flat: usize, subsystem: usize) -> usize {
        let stride: usize = self.dims[subsystem + 1..].iter().product();
        (flat / stride) % self.dims[subsystem]
    }

    pub fn flat_index(&self, label: &BasisLabel) -> Result<usize> {
        let levels = label.levels();
        if levels.len() != self.dims.len() {
            return Err(Error::LengthMismatch {
                expected: self.dims.len(),
                got: levels.len(),
            });
        }
        let mut flat = 0;
        for (subsystem, (&level, &dim)) in levels.iter().zip(&self.dims).enumerate() {
            if level >= dim {
                return Err(Error::LevelOutOfRange { subsystem, level, dim });
            }
            flat = flat * dim + level;
        }
        Ok(flat)
    }

    pub fn label(&self, flat: usize) -> Result<BasisLabel> {
        if flat >= self.total {
            return Err(Error::OutOfRange(format!(
                "flat index {flat} >= dimension {}",
                self.total
            )));
        }
        let mut levels = vec![0; self.dims.len()];
        let mut rest = flat;
        for (slot, &dim) in levels.iter_mut().zip(&self.dims).rev() {
            *slot = rest % dim;
            rest /= dim;
        }
        Ok(BasisLabel(levels))
    }

    /// Iterates every basis label in flat-index order.
    pub fn labels(&self) -> impl Iterator<Item = BasisLabel> + '_ {
        (0..self.total).map(move |k| self.label(k).expect("index in range"))
    }

    /// Concatenation of two shapes.
    pub fn join(&self, other: &Shape) -> Result<Shape> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Shape::new(dims)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join("x"))
    }
}

/// One level per subsystem.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel(pub Vec<usize>);

impl BasisLabel {
    pub fn levels(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for BasisLabel {
    fn from(levels: Vec<usize>) -> Self {
        BasisLabel(levels)
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for level in &self.0 {
            write!(f, "{level}")?;
        }
        f.write_str(">")
    }
}

/// Dense complex amplitude vector over a [`Shape`].
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    shape: Shape,
    amps: Vec<Complex64>,
}

impl Ket {
    /// Wraps the amplitudes as given. No normalization is applied.
    pub fn new(shape: Shape, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != shape.total() {
            return Err(Error::LengthMismatch {
                expected: shape.total(),
                got: amps.len(),
            });
        }
        if let Some(index) = amps.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFiniteAmplitude { index });
        }
        Ok(Ket { shape, amps })
    }

    /// Real amplitudes, for convenience.
    pub fn from_real(shape: Shape, amps: &[f64]) -> Result<Self> {
        Ket::new(shape, amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn zero(shape: Shape) -> Self {
        let amps = vec![Complex64::new(0.0, 0.0); shape.total()];
        Ket { shape, amps }
    }

    pub fn basis(shape: Shape, label: &BasisLabel) -> Result<Self> {
        let flat = shape.flat_index(label)?;
        let mut ket = Ket::zero(shape);
        ket.amps[flat] = Complex64::new(1.0, 0.0);
        Ok(ket)
    }

    /// Sum of `amp * |label>` terms. Repeated labels accumulate.
    pub fn from_terms(shape: Shape, terms: &[(&[usize], Complex64)]) -> Result<Self> {
        let mut ket = Ket::zero(shape);
        for (levels, amp) in terms {
            let flat = ket.shape.flat_index(&BasisLabel(levels.to_vec()))?;
            ket.amps[flat] += amp;
        }
        Ket::new(ket.shape, ket.amps)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn amp(&self, label: &BasisLabel) -> Result<Complex64> {
        Ok(self.amps[self.shape.flat_index(label)?])
    }

    pub fn tensor_product(&self, other: &Ket) -> Result<Ket> {
        let shape = self.shape.join(&other.shape)?;
        let mut amps = Vec::with_capacity(shape.total());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        Ok(Ket { shape, amps })
    }

    fn check_shape(&self, other: &Ket) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                left: self.shape.dims().to_vec(),
                right: other.shape.dims().to_vec(),
            });
        }
        Ok(())
    }

    /// `<self|ket>`, conjugate-linear in `self`.
    pub fn inner(&self, ket: &Ket) -> Result<Complex64> {
        self.check_shape(ket)?;
        Ok(self
            .amps
            .iter()
            .zip(&ket.amps)
            .map(|(b, k)| b.conj() * k)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&self) -> Result<Ket> {
        let norm = self.norm();
        if norm <= ZERO_NORM {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Ket {
        Ket {
            shape: self.shape.clone(),
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    /// Zeroes every amplitude whose label disagrees with a factor of `product`.
    pub fn apply_projector_product(&self, product: &ProjectorProduct) -> Result<Ket> {
        product.validate(&self.shape)?;
        let strides = self.shape.strides();
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                if product.matches_flat(&strides, self.shape.dims(), k) {
                    a
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok(Ket {
            shape: self.shape.clone(),
            amps,
        })
    }

    /// Applies the single-qubit Pauli matrices factor-wise.
    pub fn apply_pauli_string(&self, string: &PauliString) -> Result<Ket> {
        if !self.shape.is_qubits() {
            return Err(Error::NonQubitShape);
        }
        let n = self.shape.subsystems();
        if string.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: string.len(),
            });
        }
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let mut flip = 0usize;
        for (q, letter) in string.letters().iter().enumerate() {
            if matches!(letter, Pauli::X | Pauli::Y) {
                flip |= 1 << (n - 1 - q);
            }
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (k, &a) in self.amps.iter().enumerate() {
            let mut phase = one;
            for (q, letter) in string.letters().iter().enumerate() {
                let bit = (k >> (n - 1 - q)) & 1;
                phase *= match (letter, bit) {
                    (Pauli::Y, 0) => i,
                    (Pauli::Y, _) => -i,
                    (Pauli::Z, 1) => -one,
                    _ => one,
                };
            }
            out[k ^ flip] += phase * a;
        }
        Ok(Ket {
            shape: self.shape.clone(),
            amps: out,
        })
    }
}
