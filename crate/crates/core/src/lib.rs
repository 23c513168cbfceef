//! Weak-value tensors of projector products for pre- and post-selected
//! multi-qudit systems.
//!
//! - [`hilbert`]: dense kets over ordered qudit shapes
//! - [`weakvalues`]: weak values, weak and expectation tensors, marginals
//! - [`scenarios`]: Bell, GHZ, Cheshire-cat and Hardy selections
//! - [`dynamics`]: diagonal multiwise Hamiltonians and their evolution
//! - [`realization`]: hypercube cells, diagonals and stabilizer checks
//! - [`render`], [`io`], [`cli`]: grids, SVG, scenario files and the CLI

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod hilbert;
pub mod io;
pub mod realization;
pub mod render;
pub mod scenarios;
pub mod weakvalues;

pub use error::{Error, Result};
pub use hilbert::{BasisLabel, Ket, Shape};
pub use scenarios::Scenario;
pub use weakvalues::{
    expectation_tensor, weak_tensor, weak_value, weak_value_observable, PauliString,
    ProjectorProduct, TensorKind, WeakValueTensor,
};
