//! Named pre- and post-selected scenarios with labeled axes.
//!
//! Axis conventions:
//!
//! | scenario        | axis 0                 | axis 1                 |
//! |-----------------|------------------------|------------------------|
//! | `cheshire`      | spin (`↑`, `↓`)        | position (`L`, `R`)    |
//! | `hardy`         | positron (`L_p`,`R_p`) | electron (`L_e`,`R_e`) |
//! | `hardy-overlap` | positron (`O`, `NO`)   | electron (`NO`, `O`)   |
//!
//! With these orientations the Cheshire-cat tensor and the Hardy tensor are
//! transposes of one another.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{Ket, Shape};
use crate::weakvalues::{expectation_tensor, weak_tensor, WeakValueTensor, ORTHO_TOL};

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 10] = [
    "bell-psi-plus",
    "bell-psi-minus",
    "bell-phi-plus",
    "bell-phi-minus",
    "ghz",
    "cheshire",
    "hardy",
    "hardy-overlap",
    "hardy-gamma",
    "ghz3-selected",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub pre: Ket,
    /// Absent for expectation-only scenarios.
    pub post: Option<Ket>,
    pub axis_labels: Vec<Vec<String>>,
    pub params: BTreeMap<String, f64>,
}

impl Scenario {
    pub fn shape(&self) -> &Shape {
        self.pre.shape()
    }

    /// Weak tensor when a post-selection is present, expectation tensor otherwise.
    pub fn tensor(&self) -> Result<WeakValueTensor> {
        match &self.post {
            Some(post) => weak_tensor(&self.pre, post),
            None => expectation_tensor(&self.pre),
        }
    }
}

fn labels(axes: &[&[&str]]) -> Vec<Vec<String>> {
    axes.iter()
        .map(|axis| axis.iter().map(|s| s.to_string()).collect())
        .collect()
}

/// `"0".."d-1"` on every axis.
pub fn numeric_labels(shape: &Shape) -> Vec<Vec<String>> {
    shape
        .dims()
        .iter()
        .map(|&d| (0..d).map(|l| l.to_string()).collect())
        .collect()
}

fn check_labels(shape: &Shape, axis_labels: &[Vec<String>]) -> Result<()> {
    if axis_labels.len() != shape.subsystems() {
        return Err(Error::LabelMismatch(format!(
            "{} label lists for {} subsystems",
            axis_labels.len(),
            shape.subsystems()
        )));
    }
    for (axis, (names, &dim)) in axis_labels.iter().zip(shape.dims()).enumerate() {
        if names.len() != dim {
            return Err(Error::LabelMismatch(format!(
                "axis {axis} has {} labels for dimension {dim}",
                names.len()
            )));
        }
    }
    Ok(())
}

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

/// `(|01> ± |10>)/√2` and `(|00> ± |11>)/√2`.
pub fn bell(kind: BellKind) -> Scenario {
    let s = FRAC_1_SQRT_2;
    let (name, amps) = match kind {
        BellKind::PsiPlus => ("bell-psi-plus", [0.0, s, s, 0.0]),
        BellKind::PsiMinus => ("bell-psi-minus", [0.0, s, -s, 0.0]),
        BellKind::PhiPlus => ("bell-phi-plus", [s, 0.0, 0.0, s]),
        BellKind::PhiMinus => ("bell-phi-minus", [s, 0.0, 0.0, -s]),
    };
    let pre = Ket::from_real(Shape::qubits(2).expect("2 qubits"), &amps).expect("4 amplitudes");
    Scenario {
        name: name.into(),
        axis_labels: numeric_labels(pre.shape()),
        pre,
        post: None,
        params: BTreeMap::new(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhzForm {
    /// `(|0..0> + |(d-1)..(d-1)>)/√2`
    TwoTerm,
    /// `sum_i |i..i> / √d`
    AllDiagonal,
}

pub fn ghz(parties: usize, levels: usize, form: GhzForm) -> Result<Scenario> {
    if parties < 2 {
        return Err(Error::InvalidCount(format!("parties = {parties}, need at least 2")));
    }
    if levels < 2 {
        return Err(Error::InvalidCount(format!("levels = {levels}, need at least 2")));
    }
    let shape = Shape::new(vec![levels; parties])?;
    let diagonal: Vec<usize> = match form {
        GhzForm::TwoTerm => vec![0, levels - 1],
        GhzForm::AllDiagonal => (0..levels).collect(),
    };
    let amp = match form {
        GhzForm::TwoTerm => FRAC_1_SQRT_2,
        GhzForm::AllDiagonal => 1.0 / (levels as f64).sqrt(),
    };
    let mut amps = vec![r(0.0); shape.total()];
    // (i, i, .., i) sits at i * (1 + d + d^2 + ..)
    let step: usize = (0..parties).map(|p| levels.pow(p as u32)).sum();
    for i in diagonal {
        amps[i * step] = r(amp);
    }
    let pre = Ket::new(shape, amps)?;
    let mut params = BTreeMap::new();
    params.insert("parties".into(), parties as f64);
    params.insert("levels".into(), levels as f64);
    Ok(Scenario {
        name: "ghz".into(),
        axis_labels: numeric_labels(pre.shape()),
        pre,
        post: None,
        params,
    })
}

/// Quantum Cheshire cat: spin on axis 0, position on axis 1.
pub fn cheshire() -> Scenario {
    let shape = Shape::qubits(2).expect("2 qubits");
    let s = 1.0 / 3f64.sqrt();
    // (spin, position): (↑,L) (↑,R) (↓,L) (↓,R)
    let pre = Ket::from_real(shape.clone(), &[s, s, 0.0, s]).expect("4 amplitudes");
    let post = Ket::from_real(shape, &[s, -s, 0.0, s]).expect("4 amplitudes");
    Scenario {
        name: "cheshire".into(),
        pre,
        post: Some(post),
        axis_labels: labels(&[&["↑", "↓"], &["L", "R"]]),
        params: BTreeMap::new(),
    }
}

/// Hardy's paradox with unnormalized states: positron on axis 0, electron on axis 1.
pub fn hardy() -> Scenario {
    let shape = Shape::qubits(2).expect("2 qubits");
    // (positron, electron): (L,L) (L,R) (R,L) (R,R); the annihilating L_p R_e term is dropped
    let pre = Ket::from_real(shape.clone(), &[1.0, 0.0, 1.0, 1.0]).expect("4 amplitudes");
    let post = Ket::from_real(shape, &[1.0, -1.0, -1.0, 1.0]).expect("4 amplitudes");
    Scenario {
        name: "hardy".into(),
        pre,
        post: Some(post),
        axis_labels: labels(&[&["L_p", "R_p"], &["L_e", "R_e"]]),
        params: BTreeMap::new(),
    }
}

/// Relabels the Hardy axes by overlap: `L_p, R_e -> O` and `R_p, L_e -> NO`.
pub fn hardy_overlap_labels(s: &Scenario) -> Result<Scenario> {
    if s.name != "hardy" && s.name != "hardy-overlap" {
        return Err(Error::WrongScenario(s.name.clone()));
    }
    Ok(Scenario {
        name: "hardy-overlap".into(),
        axis_labels: labels(&[&["O", "NO"], &["NO", "O"]]),
        ..s.clone()
    })
}

/// Hardy family where the overlapping arms pick up a phase `e^{iγ}` instead
/// of annihilating.
///
/// The overlap with the Hardy post-state is `1 - e^{iγ}`, so every component
/// scales like `1/|1 - e^{iγ}|` and the family is singular at `γ = 0`.
pub fn hardy_gamma(gamma: f64) -> Result<Scenario> {
    if !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!("gamma = {gamma}")));
    }
    let shape = Shape::qubits(2)?;
    let phase = Complex64::cis(gamma);
    let pre = Ket::new(shape.clone(), vec![r(1.0), phase, r(1.0), r(1.0)])?;
    let post = Ket::from_real(shape, &[1.0, -1.0, -1.0, 1.0])?;
    let magnitude = (r(1.0) - phase).norm();
    if magnitude <= ORTHO_TOL * pre.norm() * post.norm() {
        return Err(Error::OrthogonalSelection { magnitude });
    }
    let mut params = BTreeMap::new();
    params.insert("gamma".into(), gamma);
    Ok(Scenario {
        name: "hardy-gamma".into(),
        pre,
        post: Some(post),
        axis_labels: labels(&[&["L_p", "R_p"], &["L_e", "R_e"]]),
        params,
    })
}

/// Three qutrits selected in `(|000>+|111>+|222>)/√3` and `(|000>+|111>-|222>)/√3`.
pub fn ghz3_selected() -> Scenario {
    let pre = ghz(3, 3, GhzForm::AllDiagonal)
        .expect("valid counts")
        .pre;
    let mut post_amps = pre.amps().to_vec();
    post_amps[26] = -post_amps[26];
    let post = Ket::new(pre.shape().clone(), post_amps).expect("same shape");
    Scenario {
        name: "ghz3-selected".into(),
        axis_labels: numeric_labels(pre.shape()),
        pre,
        post: Some(post),
        params: BTreeMap::new(),
    }
}

/// Wraps user-supplied states. Labels default to level numbers.
pub fn custom(pre: Ket, post: Option<Ket>, axis_labels: Option<Vec<Vec<String>>>) -> Result<Scenario> {
    if let Some(post) = &post {
        if post.shape() != pre.shape() {
            return Err(Error::ShapeMismatch {
                left: pre.shape().dims().to_vec(),
                right: post.shape().dims().to_vec(),
            });
        }
    }
    let axis_labels = axis_labels.unwrap_or_else(|| numeric_labels(pre.shape()));
    check_labels(pre.shape(), &axis_labels)?;
    Ok(Scenario {
        name: "custom".into(),
        pre,
        post,
        axis_labels,
        params: BTreeMap::new(),
    })
}

/// Looks up a built-in scenario. `gamma` is required only by `hardy-gamma`;
/// `ghz` is the three-qubit state.
pub fn by_name(name: &str, gamma: Option<f64>) -> Result<Scenario> {
    Ok(match name {
        "bell-psi-plus" => bell(BellKind::PsiPlus),
        "bell-psi-minus" => bell(BellKind::PsiMinus),
        "bell-phi-plus" => bell(BellKind::PhiPlus),
        "bell-phi-minus" => bell(BellKind::PhiMinus),
        "ghz" => ghz(3, 2, GhzForm::TwoTerm)?,
        "cheshire" => cheshire(),
        "hardy" => hardy(),
        "hardy-overlap" => hardy_overlap_labels(&hardy())?,
        "hardy-gamma" => {
            let gamma = gamma.ok_or_else(|| Error::MissingParam {
                family: "hardy-gamma".into(),
                param: "gamma".into(),
            })?;
            hardy_gamma(gamma)?
        }
        "ghz3-selected" => ghz3_selected(),
        other => return Err(Error::UnknownScenario(other.into())),
    })
}

pub fn describe(name: &str) -> &'static str {
    match name {
        "bell-psi-plus" => "(|01> + |10>)/sqrt2, expectation scheme",
        "bell-psi-minus" => "(|01> - |10>)/sqrt2, expectation scheme",
        "bell-phi-plus" => "(|00> + |11>)/sqrt2, expectation scheme",
        "bell-phi-minus" => "(|00> - |11>)/sqrt2, expectation scheme",
        "ghz" => "(|000> + |111>)/sqrt2, expectation scheme",
        "cheshire" => "quantum Cheshire cat, rows = spin, columns = position",
        "hardy" => "Hardy's paradox, rows = positron, columns = electron",
        "hardy-overlap" => "Hardy's paradox with O/NO overlap labels",
        "hardy-gamma" => "Hardy family with interaction phase gamma (needs --gamma)",
        "ghz3-selected" => "three qutrits, GHZ pre-state with sign-flipped post-state",
        _ => "",
    }
}
