//! Diagonal projector Hamiltonians and their exact time evolution.
//!
//! Natural units, ħ = 1. Every Hamiltonian here is diagonal in the
//! computational basis, so `e^{-iHt}` multiplies amplitude `k` by
//! `e^{-i E_k t}` and nothing else.
//!
//! Register layouts used by the built-in systems:
//!
//! - EPR pairs: pair `j` occupies subsystems `2j` (I) and `2j + 1` (II).
//! - GHZ cubes: cube `c` occupies subsystems `3c`, `3c + 1`, `3c + 2` (I, II, III).
//!
//! Besides exact evolution, [`product_form`] transcribes the factorized
//! states written down for each system, one factor per pair or cube. They do
//! not agree with exact evolution under the joint projector Hamiltonians in
//! general; [`compare_states`] and [`phase_report`] quantify the gap.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{BasisLabel, Ket, Shape, ZERO_NORM};
use crate::scenarios::{ghz, GhzForm};
use crate::weakvalues::ProjectorProduct;

/// `coupling * selector`.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianTerm {
    pub coupling: f64,
    pub selector: ProjectorProduct,
}

impl HamiltonianTerm {
    pub fn new(coupling: f64, selector: ProjectorProduct) -> Self {
        HamiltonianTerm { coupling, selector }
    }
}

/// Basis index -> real energy.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalHamiltonian {
    shape: Shape,
    energies: Vec<f64>,
}

impl DiagonalHamiltonian {
    /// Sums the couplings of every term whose selector matches each label.
    pub fn build(shape: Shape, terms: &[HamiltonianTerm]) -> Result<Self> {
        let strides = shape.strides();
        let mut energies = vec![0.0; shape.total()];
        for term in terms {
            if !term.coupling.is_finite() {
                return Err(Error::InvalidParameter(format!("coupling {}", term.coupling)));
            }
            term.selector.validate(&shape)?;
            for (k, e) in energies.iter_mut().enumerate() {
                if term.selector.matches_flat(&strides, shape.dims(), k) {
                    *e += term.coupling;
                }
            }
        }
        Ok(DiagonalHamiltonian { shape, energies })
    }

    pub fn from_energies(shape: Shape, energies: Vec<f64>) -> Result<Self> {
        if energies.len() != shape.total() {
            return Err(Error::LengthMismatch {
                expected: shape.total(),
                got: energies.len(),
            });
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidParameter("non-finite energy".into()));
        }
        Ok(DiagonalHamiltonian { shape, energies })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Labels with a nonzero energy, in flat order.
    pub fn support(&self) -> Vec<(BasisLabel, f64)> {
        self.energies
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0.0)
            .map(|(k, &e)| (self.shape.label(k).expect("in range"), e))
            .collect()
    }
}

/// `e^{-iHt} |state>`.
pub fn evolve(state: &Ket, h: &DiagonalHamiltonian, t: f64) -> Result<Ket> {
    if state.shape() != h.shape() {
        return Err(Error::ShapeMismatch {
            left: state.shape().dims().to_vec(),
            right: h.shape().dims().to_vec(),
        });
    }
    let amps = state
        .amps()
        .iter()
        .zip(&h.energies)
        .map(|(&a, &e)| {
            let shift = e * t;
            if shift == 0.0 {
                a
            } else {
                Complex64::from_polar(a.norm(), a.arg() - shift)
            }
        })
        .collect();
    Ket::new(state.shape().clone(), amps)
}

/// Normalized `(|10> - |01>)/√2`.
pub fn epr_pair() -> Ket {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ket::from_real(Shape::qubits(2).expect("2 qubits"), &[0.0, -s, s, 0.0]).expect("4 amplitudes")
}

fn ghz_cube() -> Ket {
    ghz(3, 2, GhzForm::TwoTerm).expect("valid counts").pre
}

fn tensor_all(factors: &[Ket]) -> Result<Ket> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidCount("no factors".into()))?;
    rest.iter().try_fold(first.clone(), |acc, f| acc.tensor_product(f))
}

/// Selector fixing `(level_I, level_II)` on each listed EPR pair.
pub fn epr_selector(pairs: &[(usize, [usize; 2])]) -> Result<ProjectorProduct> {
    ProjectorProduct::new(
        pairs
            .iter()
            .flat_map(|&(p, [i, ii])| [(2 * p, i), (2 * p + 1, ii)])
            .collect(),
    )
}

/// Selector fixing the same level on all three qubits of each listed cube.
pub fn cube_selector(cubes: &[(usize, usize)]) -> Result<ProjectorProduct> {
    ProjectorProduct::new(
        cubes
            .iter()
            .flat_map(|&(c, level)| (0..3).map(move |q| (3 * c + q, level)))
            .collect(),
    )
}

/// `ε |10><10| ⊗ |10><10|` on two EPR pairs.
pub fn epr_epr_terms(eps: f64) -> Result<Vec<HamiltonianTerm>> {
    Ok(vec![HamiltonianTerm::new(
        eps,
        epr_selector(&[(0, [1, 0]), (1, [1, 0])])?,
    )])
}

/// `ε |10><10|` on all three EPR pairs at once.
pub fn triple_epr_terms(eps: f64) -> Result<Vec<HamiltonianTerm>> {
    Ok(vec![HamiltonianTerm::new(
        eps,
        epr_selector(&[(0, [1, 0]), (1, [1, 0]), (2, [1, 0])])?,
    )])
}

/// `ε₁ |10>|10>` plus `ε₂ |01>|01>`, both on pairs 0 and 1.
pub fn coupled_epr_terms(eps1: f64, eps2: f64) -> Result<Vec<HamiltonianTerm>> {
    Ok(vec![
        HamiltonianTerm::new(eps1, epr_selector(&[(0, [1, 0]), (1, [1, 0])])?),
        HamiltonianTerm::new(eps2, epr_selector(&[(0, [0, 1]), (1, [0, 1])])?),
    ])
}

/// `φ |000><000| ⊗ |000><000|` on two GHZ cubes.
pub fn ghz_ghz_terms(phi: f64) -> Result<Vec<HamiltonianTerm>> {
    Ok(vec![HamiltonianTerm::new(phi, cube_selector(&[(0, 0), (1, 0)])?)])
}

/// The cube pair coupling plus `β = φ + ε` between `|111>` of cubes 1 and 2.
pub fn ghz_triple_terms(phi: f64, eps: f64) -> Result<Vec<HamiltonianTerm>> {
    Ok(vec![
        HamiltonianTerm::new(phi, cube_selector(&[(0, 0), (1, 0)])?),
        HamiltonianTerm::new(phi + eps, cube_selector(&[(1, 1), (2, 1)])?),
    ])
}

/// Product-form families, named after the systems they describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Two EPR pairs with a four-qubit coupling (`psit1`).
    EprEpr,
    /// Three EPR pairs with a six-qubit coupling (`E111`).
    TripleEpr,
    /// Three EPR pairs with two opposite couplings (`Hamm2`).
    CoupledEpr,
    /// Two GHZ cubes (`GHZ2`).
    GhzGhz,
    /// Three GHZ cubes (`PsiGHZ11`).
    GhzTriple,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::EprEpr,
        Family::TripleEpr,
        Family::CoupledEpr,
        Family::GhzGhz,
        Family::GhzTriple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::EprEpr => "psit1",
            Family::TripleEpr => "E111",
            Family::CoupledEpr => "Hamm2",
            Family::GhzGhz => "GHZ2",
            Family::GhzTriple => "PsiGHZ11",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psit1" | "epr-epr" => Ok(Family::EprEpr),
            "E111" | "epr3" => Ok(Family::TripleEpr),
            "Hamm2" | "epr3-coupled" => Ok(Family::CoupledEpr),
            "GHZ2" | "ghz-ghz" => Ok(Family::GhzGhz),
            "PsiGHZ11" | "ghz3" => Ok(Family::GhzTriple),
            other => Err(Error::UnknownFamily(other.into())),
        }
    }
}

/// Couplings; which ones are read depends on the family.
///
/// `CoupledEpr` reads `eps` as ε₁ and `eps2` as ε₂. `GhzTriple` reads `phi`
/// and `eps`, with β = φ + ε.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Couplings {
    pub eps: Option<f64>,
    pub eps2: Option<f64>,
    pub phi: Option<f64>,
}

impl Couplings {
    fn get(value: Option<f64>, family: Family, param: &str) -> Result<f64> {
        let v = value.ok_or_else(|| Error::MissingParam {
            family: family.name().into(),
            param: param.into(),
        })?;
        if !v.is_finite() {
            return Err(Error::InvalidParameter(format!("{param} = {v}")));
        }
        Ok(v)
    }
}

fn epr_factor(phase_10: Complex64, phase_01: Complex64) -> Ket {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let amps = vec![
        Complex64::new(0.0, 0.0),
        -phase_01 * s,
        phase_10 * s,
        Complex64::new(0.0, 0.0),
    ];
    Ket::new(Shape::qubits(2).expect("2 qubits"), amps).expect("finite")
}

fn cube_factor(phase_000: Complex64, phase_111: Complex64) -> Ket {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[0] = phase_000 * s;
    amps[7] = phase_111 * s;
    Ket::new(Shape::qubits(3).expect("3 qubits"), amps).expect("finite")
}

/// Factors of the written product form at time `t`, each normalized.
pub fn product_factors(family: Family, params: &Couplings, t: f64) -> Result<Vec<Ket>> {
    let one = Complex64::new(1.0, 0.0);
    let phase = |energy: f64| Complex64::cis(-energy * t);
    Ok(match family {
        Family::EprEpr => {
            let eps = Couplings::get(params.eps, family, "eps")?;
            vec![epr_factor(phase(eps), one), epr_factor(phase(eps), one)]
        }
        Family::TripleEpr => {
            let eps = Couplings::get(params.eps, family, "eps")?;
            vec![epr_factor(phase(eps), one); 3]
        }
        Family::CoupledEpr => {
            let eps1 = Couplings::get(params.eps, family, "eps")?;
            let eps2 = Couplings::get(params.eps2, family, "eps2")?;
            vec![
                epr_factor(phase(eps1), one),
                epr_factor(phase(eps1 - eps2), one),
                epr_factor(one, phase(eps2)),
            ]
        }
        Family::GhzGhz => {
            let phi = Couplings::get(params.phi, family, "phi")?;
            vec![cube_factor(phase(phi), one), cube_factor(phase(phi), one)]
        }
        Family::GhzTriple => {
            let phi = Couplings::get(params.phi, family, "phi")?;
            let eps = Couplings::get(params.eps, family, "eps")?;
            vec![
                cube_factor(phase(phi), one),
                cube_factor(phase(-eps), one),
                cube_factor(one, phase(phi + eps)),
            ]
        }
    })
}

/// The written product form at time `t`, as one ket.
pub fn product_form(family: Family, params: &Couplings, t: f64) -> Result<Ket> {
    tensor_all(&product_factors(family, params, t)?)
}

/// Initial state and joint Hamiltonian for a family's system.
pub fn exact_system(family: Family, params: &Couplings) -> Result<(Ket, DiagonalHamiltonian)> {
    let (factors, terms) = match family {
        Family::EprEpr => (
            vec![epr_pair(); 2],
            epr_epr_terms(Couplings::get(params.eps, family, "eps")?)?,
        ),
        Family::TripleEpr => (
            vec![epr_pair(); 3],
            triple_epr_terms(Couplings::get(params.eps, family, "eps")?)?,
        ),
        Family::CoupledEpr => (
            vec![epr_pair(); 3],
            coupled_epr_terms(
                Couplings::get(params.eps, family, "eps")?,
                Couplings::get(params.eps2, family, "eps2")?,
            )?,
        ),
        Family::GhzGhz => (
            vec![ghz_cube(); 2],
            ghz_ghz_terms(Couplings::get(params.phi, family, "phi")?)?,
        ),
        Family::GhzTriple => (
            vec![ghz_cube(); 3],
            ghz_triple_terms(
                Couplings::get(params.phi, family, "phi")?,
                Couplings::get(params.eps, family, "eps")?,
            )?,
        ),
    };
    let initial = tensor_all(&factors)?;
    let h = DiagonalHamiltonian::build(initial.shape().clone(), &terms)?;
    Ok((initial, h))
}

pub fn exact_evolution(family: Family, params: &Couplings, t: f64) -> Result<Ket> {
    let (initial, h) = exact_system(family, params)?;
    evolve(&initial, &h, t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    /// `|<a|b>|^2 / (<a|a><b|b>)`
    pub fidelity: f64,
    /// Largest componentwise gap after normalizing and aligning global phase.
    pub max_component_diff: f64,
}

fn phase_aligned(k: &Ket, anchor: usize) -> Result<Vec<Complex64>> {
    let n = k.normalize()?;
    let mut pivot = n.amps()[anchor];
    if pivot.norm() <= ZERO_NORM {
        pivot = n.amps()[largest_component(&n)];
    }
    let rotate = pivot.conj() / pivot.norm();
    Ok(n.amps().iter().map(|a| a * rotate).collect())
}

fn largest_component(k: &Ket) -> usize {
    let max = k.amps().iter().map(|a| a.norm()).fold(0.0, f64::max);
    k.amps()
        .iter()
        .position(|a| a.norm() >= max - 1e-12)
        .unwrap_or(0)
}

pub fn compare_states(a: &Ket, b: &Ket) -> Result<Comparison> {
    let overlap = a.inner(b)?;
    let (na, nb) = (a.norm(), b.norm());
    if na <= ZERO_NORM || nb <= ZERO_NORM {
        return Err(Error::ZeroVector);
    }
    let fidelity = overlap.norm_sqr() / (na * na * nb * nb);
    let anchor = largest_component(a);
    let (pa, pb) = (phase_aligned(a, anchor)?, phase_aligned(b, anchor)?);
    let max_component_diff = pa
        .iter()
        .zip(&pb)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    Ok(Comparison {
        fidelity,
        max_component_diff,
    })
}

/// `arg(state_k / reference_k)` in `(-π, π]` wherever both amplitudes exceed 1e-12.
pub fn phase_report(state: &Ket, reference: &Ket) -> Result<Vec<(BasisLabel, f64)>> {
    if state.shape() != reference.shape() {
        return Err(Error::ShapeMismatch {
            left: state.shape().dims().to_vec(),
            right: reference.shape().dims().to_vec(),
        });
    }
    Ok(state
        .amps()
        .iter()
        .zip(reference.amps())
        .enumerate()
        .filter(|(_, (a, b))| a.norm() > ZERO_NORM && b.norm() > ZERO_NORM)
        .map(|(k, (a, b))| {
            let mut arg = (a / b).arg();
            if arg <= -std::f64::consts::PI {
                arg += 2.0 * std::f64::consts::PI;
            }
            (state.shape().label(k).expect("in range"), arg)
        })
        .collect())
}
