//! Cells of a d-ary hypercube as joint basis labels of realized qudits.
//!
//! One physical particle in an `n`-dimensional grid with `d` cells per axis
//! realizes `n` qudits of dimension `d`: cell `c` corresponds to the label
//! formed by the base-`d` digits of `c`, most significant digit first.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{BasisLabel, Ket, Shape, ZERO_NORM};
use crate::weakvalues::PauliString;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypercubeRealization {
    /// Cells per axis.
    pub arity: usize,
    /// Number of axes.
    pub axes: usize,
    pub cell: usize,
}

fn cell_count(arity: usize, axes: usize) -> Result<usize> {
    if arity < 2 || axes < 1 {
        return Err(Error::OutOfRange(format!("arity {arity}, axes {axes}")));
    }
    u32::try_from(axes)
        .ok()
        .and_then(|n| arity.checked_pow(n))
        .filter(|&c| c <= crate::hilbert::MAX_DIMENSION)
        .ok_or(Error::DimensionOverflow)
}

pub fn cell_to_basis(r: &HypercubeRealization) -> Result<BasisLabel> {
    let cells = cell_count(r.arity, r.axes)?;
    if r.cell >= cells {
        return Err(Error::OutOfRange(format!("cell {} >= {cells}", r.cell)));
    }
    let mut digits = vec![0; r.axes];
    let mut rest = r.cell;
    for d in digits.iter_mut().rev() {
        *d = rest % r.arity;
        rest /= r.arity;
    }
    Ok(BasisLabel(digits))
}

pub fn basis_to_cell(label: &BasisLabel, arity: usize, axes: usize) -> Result<usize> {
    cell_count(arity, axes)?;
    if label.levels().len() != axes {
        return Err(Error::OutOfRange(format!(
            "label has {} digits, expected {axes}",
            label.levels().len()
        )));
    }
    label.levels().iter().try_fold(0, |acc, &digit| {
        if digit >= arity {
            Err(Error::OutOfRange(format!("digit {digit} >= {arity}")))
        } else {
            Ok(acc * arity + digit)
        }
    })
}

fn uniform_dim(shape: &Shape) -> Result<usize> {
    let d = shape.dims()[0];
    if shape.dims().iter().any(|&x| x != d) {
        return Err(Error::NonUniformShape(shape.dims().to_vec()));
    }
    Ok(d)
}

/// `(i, i, .., i)` for every level `i`.
pub fn diagonal_cells(shape: &Shape) -> Result<Vec<BasisLabel>> {
    let d = uniform_dim(shape)?;
    Ok((0..d).map(|i| BasisLabel(vec![i; shape.subsystems()])).collect())
}

/// Whether the fraction of squared norm off the diagonal is below `tol`.
pub fn is_diagonal_supported(state: &Ket, tol: f64) -> Result<bool> {
    let d = uniform_dim(state.shape())?;
    let total = state.norm().powi(2);
    if total.sqrt() <= ZERO_NORM {
        return Err(Error::ZeroVector);
    }
    let n = state.shape().subsystems();
    let step: usize = (0..n).map(|p| d.pow(p as u32)).sum();
    let off: f64 = state
        .amps()
        .iter()
        .enumerate()
        .filter(|(k, _)| k % step != 0)
        .map(|(_, a)| a.norm_sqr())
        .sum();
    Ok(off / total < tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StabilizerOutcome {
    Eigenvalue(f64),
    NotEigenstate,
}

/// Eigenvalue of `state` under the Pauli string, if it is an eigenstate.
pub fn stabilizer_eigenvalue(state: &Ket, s: &PauliString) -> Result<StabilizerOutcome> {
    let image = state.apply_pauli_string(s)?;
    let norm_sqr = state.norm().powi(2);
    if norm_sqr.sqrt() <= ZERO_NORM {
        return Err(Error::ZeroVector);
    }
    let lambda: Complex64 = state.inner(&image)? / norm_sqr;
    let residual = image
        .amps()
        .iter()
        .zip(state.amps())
        .map(|(x, y)| (x - lambda * y).norm())
        .fold(0.0, f64::max);
    if residual <= 1e-10 && lambda.im.abs() <= 1e-10 {
        Ok(StabilizerOutcome::Eigenvalue(lambda.re))
    } else {
        Ok(StabilizerOutcome::NotEigenstate)
    }
}
