mod common;

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;

use common::*;
use weakscheme::dynamics::{evolve, DiagonalHamiltonian};
use weakscheme::io::{render_scheme, OutputFormat, SchemeDocument};
use weakscheme::realization::{basis_to_cell, cell_to_basis, is_diagonal_supported, HypercubeRealization};
use weakscheme::scenarios::{bell, by_name, custom, ghz, hardy_gamma, BellKind, GhzForm, NAMES};
use weakscheme::{expectation_tensor, weak_tensor, weak_value, Error, Ket, ProjectorProduct, Shape};

const TOL: f64 = 1e-10;

fn dims_strategy(max_sub: usize, max_dim: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2..=max_dim, 1..=max_sub)
}

fn close(a: Complex64, b: Complex64, scale: f64) -> bool {
    (a - b).norm() <= TOL * scale.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn label_round_trip(dims in prop::collection::vec(2usize..=8, 1..=6)) {
        let shape = Shape::new(dims).unwrap();
        prop_assume!(shape.total() <= 1 << 12);
        for k in 0..shape.total() {
            let label = shape.label(k).unwrap();
            prop_assert_eq!(shape.flat_index(&label).unwrap(), k);
        }
        prop_assert!(shape.label(shape.total()).is_err());
    }

    #[test]
    fn projectors_idempotent_and_complete(dims in dims_strategy(4, 3), seed: u64) {
        let shape = Shape::new(dims).unwrap();
        let ket = random_ket(&mut rng(seed), &shape);
        for subsystem in 0..shape.subsystems() {
            let mut sum = vec![Complex64::new(0.0, 0.0); shape.total()];
            for level in 0..shape.dims()[subsystem] {
                let p = ProjectorProduct::single(subsystem, level);
                let once = ket.apply_projector_product(&p).unwrap();
                let twice = once.apply_projector_product(&p).unwrap();
                prop_assert_eq!(&once, &twice);
                for (s, a) in sum.iter_mut().zip(once.amps()) {
                    *s += a;
                }
            }
            prop_assert!(max_diff(&sum, ket.amps()) <= TOL);
        }
    }

    #[test]
    fn inner_conjugate_symmetric(dims in dims_strategy(3, 4), seed: u64) {
        let shape = Shape::new(dims).unwrap();
        let mut r = rng(seed);
        let (a, b) = (random_ket(&mut r, &shape), random_ket(&mut r, &shape));
        let ab = a.inner(&b).unwrap();
        let ba = b.inner(&a).unwrap();
        prop_assert!(close(ab, ba.conj(), a.norm() * b.norm()));
    }

    #[test]
    fn tensor_norm_multiplies(d1 in dims_strategy(2, 3), d2 in dims_strategy(2, 3), seed: u64) {
        let mut r = rng(seed);
        let a = random_ket(&mut r, &Shape::new(d1).unwrap());
        let b = random_ket(&mut r, &Shape::new(d2).unwrap());
        let ab = a.tensor_product(&b).unwrap();
        prop_assert!((ab.norm() - a.norm() * b.norm()).abs() <= TOL * ab.norm());
        prop_assert_eq!(ab.shape().subsystems(), a.shape().subsystems() + b.shape().subsystems());
    }

    #[test]
    fn weak_tensor_rescaling_invariant(
        dims in dims_strategy(3, 3),
        seed: u64,
        m1 in 0.1f64..10.0,
        p1 in 0.0f64..TAU,
        m2 in 0.1f64..10.0,
        p2 in 0.0f64..TAU,
    ) {
        let shape = Shape::new(dims).unwrap();
        let mut r = rng(seed);
        let (pre, post) = (random_ket(&mut r, &shape), random_ket(&mut r, &shape));
        let base = weak_tensor(&pre, &post);
        prop_assume!(base.is_ok());
        let base = base.unwrap();
        let scaled = weak_tensor(
            &pre.scale(Complex64::from_polar(m1, p1)),
            &post.scale(Complex64::from_polar(m2, p2)),
        )
        .unwrap();
        let scale = base.components().iter().map(|c| c.norm()).fold(1.0, f64::max);
        prop_assert!(max_diff(base.components(), scaled.components()) <= TOL * scale);
    }

    #[test]
    fn equal_selection_is_expectation(dims in dims_strategy(3, 3), seed: u64) {
        let shape = Shape::new(dims).unwrap();
        let psi = random_ket(&mut rng(seed), &shape);
        let weak = weak_tensor(&psi, &psi).unwrap();
        let expectation = expectation_tensor(&psi).unwrap();
        prop_assert!(max_diff(weak.components(), expectation.components()) <= TOL);
        for c in weak.components() {
            prop_assert!(c.im.abs() <= TOL && c.re >= -TOL);
        }
    }

    #[test]
    fn marginals_match_single_weak_values(dims in dims_strategy(3, 3), seed: u64) {
        let shape = Shape::new(dims).unwrap();
        let mut r = rng(seed);
        let (pre, post) = (random_ket(&mut r, &shape), random_ket(&mut r, &shape));
        let t = weak_tensor(&pre, &post);
        prop_assume!(t.is_ok());
        let t = t.unwrap();
        let scale = t.components().iter().map(|c| c.norm()).sum::<f64>();
        for axis in 0..shape.subsystems() {
            let m = t.marginalize(axis).unwrap();
            let mut sum = Complex64::new(0.0, 0.0);
            for (level, value) in m.iter().enumerate() {
                let direct = weak_value(&pre, &post, &ProjectorProduct::single(axis, level)).unwrap();
                prop_assert!(close(*value, direct, scale));
                sum += value;
            }
            prop_assert!(close(sum, Complex64::new(1.0, 0.0), scale));
        }
    }

    #[test]
    fn evolution_composes_and_is_periodic(
        energies in prop::collection::vec(-5.0f64..5.0, 8),
        seed: u64,
        t1 in -10.0f64..10.0,
        t2 in -10.0f64..10.0,
    ) {
        let shape = Shape::qubits(3).unwrap();
        let psi = random_ket(&mut rng(seed), &shape);
        let h = DiagonalHamiltonian::from_energies(shape, energies.clone()).unwrap();
        let split = evolve(&evolve(&psi, &h, t1).unwrap(), &h, t2).unwrap();
        let joint = evolve(&psi, &h, t1 + t2).unwrap();
        prop_assert!(max_diff(split.amps(), joint.amps()) <= 1e-9);
        prop_assert!((joint.norm() - psi.norm()).abs() <= 1e-12 * psi.norm());

        // integer multiples of a common energy make the evolution periodic
        let integers: Vec<f64> = energies.iter().map(|e| e.round()).collect();
        let h = DiagonalHamiltonian::from_energies(psi.shape().clone(), integers).unwrap();
        let period = evolve(&psi, &h, TAU).unwrap();
        prop_assert!(max_diff(period.amps(), psi.amps()) <= 1e-9);
    }

    #[test]
    fn hardy_gamma_sums_to_one(gamma in 1e-3f64..(TAU - 1e-3)) {
        let t = hardy_gamma(gamma).unwrap().tensor().unwrap();
        prop_assert!(close(t.total_sum(), Complex64::new(1.0, 0.0), 1.0));
        let expected = Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - Complex64::cis(gamma));
        prop_assert!(close(t.at(&[0, 0]).unwrap(), expected, expected.norm()));
    }

    #[test]
    fn two_term_ghz_on_diagonal(parties in 2usize..=6, levels in 2usize..=4) {
        let shape_total = levels.pow(parties as u32);
        prop_assume!(shape_total <= 1 << 12);
        let g = ghz(parties, levels, GhzForm::TwoTerm).unwrap().pre;
        prop_assert!(is_diagonal_supported(&g, 1e-12).unwrap());
        let all = ghz(parties, levels, GhzForm::AllDiagonal).unwrap().pre;
        prop_assert!(is_diagonal_supported(&all, 1e-12).unwrap());
    }
}

#[test]
fn hypercube_bijection_exhaustive() {
    for arity in 2usize..=4 {
        for axes in 1..=5 {
            let cells = arity.pow(axes as u32);
            let shape = Shape::new(vec![arity; axes]).unwrap();
            for cell in 0..cells {
                let label = cell_to_basis(&HypercubeRealization { arity, axes, cell }).unwrap();
                assert_eq!(basis_to_cell(&label, arity, axes).unwrap(), cell);
                assert_eq!(shape.flat_index(&label).unwrap(), cell);
            }
            assert!(cell_to_basis(&HypercubeRealization { arity, axes, cell: cells }).is_err());
        }
    }
}

#[test]
fn long_evolution_keeps_norm() {
    let shape = Shape::qubits(4).unwrap();
    let psi = random_ket(&mut rng(3), &shape).normalize().unwrap();
    let energies: Vec<f64> = (0..16).map(|k| 0.37 * k as f64 - 1.1).collect();
    let h = DiagonalHamiltonian::from_energies(shape, energies).unwrap();
    let mut state = psi.clone();
    for _ in 0..1_000_000 {
        state = evolve(&state, &h, 0.013).unwrap();
    }
    assert!((state.norm() - 1.0).abs() < 1e-12, "drift {}", (state.norm() - 1.0).abs());
}

#[test]
fn hardy_gamma_diverges_near_zero() {
    let mut previous = 0.0;
    for gamma in [1e-1, 1e-2, 1e-3, 1e-4, 1e-5] {
        let t = hardy_gamma(gamma).unwrap().tensor().unwrap();
        let size = t.at(&[0, 0]).unwrap().norm();
        assert!(size > previous * 5.0, "gamma {gamma}: {size}");
        assert!((size - 1.0 / (2.0 * (gamma / 2.0).sin())).abs() <= 1e-6 * size);
        previous = size;
    }
    assert!(matches!(hardy_gamma(0.0), Err(Error::OrthogonalSelection { .. })));
    assert!(matches!(hardy_gamma(TAU), Err(Error::OrthogonalSelection { .. })));
    assert!(hardy_gamma(PI).is_ok());
}

#[test]
fn builders_are_deterministic() {
    for name in NAMES {
        let gamma = (name == "hardy-gamma").then_some(1.0);
        let a = by_name(name, gamma).unwrap();
        let b = by_name(name, gamma).unwrap();
        assert_eq!(a.pre, b.pre, "{name}");
        assert_eq!(a.post, b.post, "{name}");
        assert_eq!(a.axis_labels, b.axis_labels, "{name}");
    }
}

#[test]
fn marginals_do_not_determine_the_state() {
    // Φ+ and |++> share all single-subsystem marginals but differ as tensors.
    let phi = expectation_tensor(&bell(BellKind::PhiPlus).pre).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = Ket::from_real(Shape::qubits(1).unwrap(), &[s, s]).unwrap();
    let pp = expectation_tensor(&plus.tensor_product(&plus).unwrap()).unwrap();
    assert!(max_diff(&phi.marginalize(0).unwrap(), &pp.marginalize(0).unwrap()) <= TOL);
    assert!(max_diff(&phi.marginalize(1).unwrap(), &pp.marginalize(1).unwrap()) <= TOL);
    assert!(max_diff(phi.components(), pp.components()) > 0.2);
}

#[test]
fn renderers_are_pure() {
    let mut r = rng(21);
    for dims in [vec![2, 2], vec![3, 3, 3], vec![2, 2, 2, 2]] {
        let shape = Shape::new(dims).unwrap();
        let sc = custom(random_ket(&mut r, &shape), Some(random_ket(&mut r, &shape)), None).unwrap();
        let doc = SchemeDocument::from_scenario(&sc).unwrap();
        let before = doc.clone();
        for format in [OutputFormat::Text, OutputFormat::Json] {
            assert_eq!(render_scheme(&doc, format).unwrap(), render_scheme(&doc, format).unwrap());
        }
        if shape.subsystems() <= 3 {
            let a = render_scheme(&doc, OutputFormat::Svg).unwrap();
            assert_eq!(a, render_scheme(&doc, OutputFormat::Svg).unwrap());
        } else {
            assert!(matches!(render_scheme(&doc, OutputFormat::Svg), Err(Error::UnsupportedRank(4))));
        }
        assert_eq!(doc, before);
    }
}
