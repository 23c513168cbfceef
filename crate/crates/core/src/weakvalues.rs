//! Weak values of projector products and the tensors built from them.
//!
//! For pre-selected `|pre>` and post-selected `|post>` states the weak value
//! of an observable `A` is `<post|A|pre> / <post|pre>`. Taking `A` to be the
//! product of one basis projector per subsystem and ranging over every joint
//! label gives a tensor whose components always sum to one, and whose
//! single-axis marginals are the weak values of the single-subsystem
//! projectors.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{BasisLabel, Ket, Shape};

/// Relative threshold below which `<post|pre>` counts as zero.
pub const ORTHO_TOL: f64 = 1e-10;

/// One basis level fixed on each of a set of distinct subsystems.
///
/// Factors are kept sorted by subsystem. The empty product is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ProjectorProduct {
    factors: Vec<(usize, usize)>,
}

impl ProjectorProduct {
    /// Builds a product from `(subsystem, level)` pairs in any order.
    pub fn new(mut factors: Vec<(usize, usize)>) -> Result<Self> {
        factors.sort_unstable();
        if let Some(w) = factors.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateSubsystem(w[0].0));
        }
        Ok(ProjectorProduct { factors })
    }

    pub fn identity() -> Self {
        ProjectorProduct::default()
    }

    pub fn single(subsystem: usize, level: usize) -> Self {
        ProjectorProduct {
            factors: vec![(subsystem, level)],
        }
    }

    /// The projector onto a single joint basis state.
    pub fn full(label: &BasisLabel) -> Self {
        ProjectorProduct {
            factors: label.levels().iter().copied().enumerate().collect(),
        }
    }

    pub fn factors(&self) -> &[(usize, usize)] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn validate(&self, shape: &Shape) -> Result<()> {
        let count = shape.subsystems();
        for &(subsystem, level) in &self.factors {
            if subsystem >= count {
                return Err(Error::SubsystemOutOfRange { subsystem, count });
            }
            let dim = shape.dims()[subsystem];
            if level >= dim {
                return Err(Error::LevelOutOfRange { subsystem, level, dim });
            }
        }
        Ok(())
    }

    /// Whether the basis state at `flat` survives the projection.
    #[inline]
    pub fn matches_flat(&self, strides: &[usize], dims: &[usize], flat: usize) -> bool {
        self.factors
            .iter()
            .all(|&(s, level)| (flat / strides[s]) % dims[s] == level)
    }

    pub fn matches(&self, label: &BasisLabel) -> bool {
        self.factors
            .iter()
            .all(|&(s, level)| label.levels().get(s) == Some(&level))
    }

    /// Every product over `subsystems`, one level choice per subsystem.
    pub fn all_over(shape: &Shape, subsystems: &[usize]) -> Result<Vec<ProjectorProduct>> {
        let mut out = vec![ProjectorProduct::identity()];
        for &s in subsystems {
            if s >= shape.subsystems() {
                return Err(Error::SubsystemOutOfRange {
                    subsystem: s,
                    count: shape.subsystems(),
                });
            }
            let mut next = Vec::with_capacity(out.len() * shape.dims()[s]);
            for p in &out {
                for level in 0..shape.dims()[s] {
                    let mut factors = p.factors.clone();
                    factors.push((s, level));
                    next.push(ProjectorProduct::new(factors)?);
                }
            }
            out = next;
        }
        Ok(out)
    }
}

impl fmt::Display for ProjectorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(s, l)| format!("P{l}[{s}]"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// One Pauli letter per qubit, e.g. `"YYX"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        PauliString(letters)
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::InvalidParameter(format!("unknown Pauli letter `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliString)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            let c = match p {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorKind {
    /// Weak values under pre- and post-selection.
    Weak,
    /// Plain expectation values `<psi|P|psi>` of a normalized state.
    Expectation,
}

impl fmt::Display for TensorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TensorKind::Weak => "weak",
            TensorKind::Expectation => "expectation",
        })
    }
}

/// Components `a_{i1..iN}` indexed like the kets they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakValueTensor {
    shape: Shape,
    components: Vec<Complex64>,
    kind: TensorKind,
    overlap: Complex64,
}

impl WeakValueTensor {
    pub fn from_parts(
        shape: Shape,
        components: Vec<Complex64>,
        kind: TensorKind,
        overlap: Complex64,
    ) -> Result<Self> {
        if components.len() != shape.total() {
            return Err(Error::LengthMismatch {
                expected: shape.total(),
                got: components.len(),
            });
        }
        Ok(WeakValueTensor {
            shape,
            components,
            kind,
            overlap,
        })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    pub fn kind(&self) -> TensorKind {
        self.kind
    }

    /// `<post|pre>`; unity for expectation tensors.
    pub fn overlap(&self) -> Complex64 {
        self.overlap
    }

    pub fn component(&self, label: &BasisLabel) -> Result<Complex64> {
        Ok(self.components[self.shape.flat_index(label)?])
    }

    pub fn at(&self, levels: &[usize]) -> Result<Complex64> {
        self.component(&BasisLabel(levels.to_vec()))
    }

    /// Sums over every axis except `keep`.
    pub fn marginalize(&self, keep: usize) -> Result<Vec<Complex64>> {
        let count = self.shape.subsystems();
        if keep >= count {
            return Err(Error::SubsystemOutOfRange {
                subsystem: keep,
                count,
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.shape.dims()[keep]];
        let stride = self.shape.strides()[keep];
        let dim = self.shape.dims()[keep];
        for (k, c) in self.components.iter().enumerate() {
            out[(k / stride) % dim] += c;
        }
        Ok(out)
    }

    pub fn marginals(&self) -> Vec<Vec<Complex64>> {
        (0..self.shape.subsystems())
            .map(|axis| self.marginalize(axis).expect("axis in range"))
            .collect()
    }

    pub fn total_sum(&self) -> Complex64 {
        self.components.iter().sum()
    }

    /// Exchanges axes `a` and `b`.
    pub fn swap_axes(&self, a: usize, b: usize) -> Result<WeakValueTensor> {
        let count = self.shape.subsystems();
        for axis in [a, b] {
            if axis >= count {
                return Err(Error::SubsystemOutOfRange {
                    subsystem: axis,
                    count,
                });
            }
        }
        let mut dims = self.shape.dims().to_vec();
        dims.swap(a, b);
        let shape = Shape::new(dims)?;
        let mut components = vec![Complex64::new(0.0, 0.0); shape.total()];
        for (k, label) in self.shape.labels().enumerate() {
            let mut levels = label.0;
            levels.swap(a, b);
            components[shape.flat_index(&BasisLabel(levels))?] = self.components[k];
        }
        WeakValueTensor::from_parts(shape, components, self.kind, self.overlap)
    }
}

fn checked_overlap(pre: &Ket, post: &Ket) -> Result<Complex64> {
    let overlap = post.inner(pre)?;
    let magnitude = overlap.norm();
    if magnitude <= ORTHO_TOL * pre.norm() * post.norm() {
        return Err(Error::OrthogonalSelection { magnitude });
    }
    Ok(overlap)
}

/// `<post|op|pre> / <post|pre>` for a projector product.
pub fn weak_value(pre: &Ket, post: &Ket, op: &ProjectorProduct) -> Result<Complex64> {
    let overlap = checked_overlap(pre, post)?;
    let projected = pre.apply_projector_product(op)?;
    Ok(post.inner(&projected)? / overlap)
}

/// Weak values of every full projector product.
pub fn weak_tensor(pre: &Ket, post: &Ket) -> Result<WeakValueTensor> {
    let overlap = checked_overlap(pre, post)?;
    let components = post
        .amps()
        .iter()
        .zip(pre.amps())
        .map(|(b, k)| b.conj() * k / overlap)
        .collect();
    WeakValueTensor::from_parts(pre.shape().clone(), components, TensorKind::Weak, overlap)
}

/// `<psi|P|psi>` for every full projector product, after normalizing `state`.
pub fn expectation_tensor(state: &Ket) -> Result<WeakValueTensor> {
    let norm_sqr = state.norm().powi(2);
    if norm_sqr.sqrt() <= crate::hilbert::ZERO_NORM {
        return Err(Error::ZeroVector);
    }
    let components = state
        .amps()
        .iter()
        .map(|a| Complex64::new(a.norm_sqr() / norm_sqr, 0.0))
        .collect();
    WeakValueTensor::from_parts(
        state.shape().clone(),
        components,
        TensorKind::Expectation,
        Complex64::new(1.0, 0.0),
    )
}

/// Weak value of an arbitrary dense `D x D` operator.
pub fn weak_value_observable(pre: &Ket, post: &Ket, op: &DMatrix<Complex64>) -> Result<Complex64> {
    let overlap = checked_overlap(pre, post)?;
    let d = pre.shape().total();
    if op.nrows() != d || op.ncols() != d {
        return Err(Error::ShapeMismatch {
            left: vec![d, d],
            right: vec![op.nrows(), op.ncols()],
        });
    }
    let mut numerator = Complex64::new(0.0, 0.0);
    for (r, b) in post.amps().iter().enumerate() {
        let row: Complex64 = pre
            .amps()
            .iter()
            .enumerate()
            .map(|(c, k)| op[(r, c)] * k)
            .sum();
        numerator += b.conj() * row;
    }
    Ok(numerator / overlap)
}
