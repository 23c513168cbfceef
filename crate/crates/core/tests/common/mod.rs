//! Dense-matrix oracles and random inputs shared by the integration tests.
//!
//! Everything here works on explicit `D x D` matrices built from Kronecker
//! products, independent of the masking and bit-flip paths in the library.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weakscheme::{Ket, ProjectorProduct, Shape};

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_ket(rng: &mut impl Rng, shape: &Shape) -> Ket {
    let amps = (0..shape.total())
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    Ket::new(shape.clone(), amps).unwrap()
}

pub fn kron_all(factors: &[CMat]) -> CMat {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.kronecker(f))
}

/// `|level><level|` on a `dim`-level site.
pub fn site_projector(dim: usize, level: usize) -> CMat {
    let mut m = CMat::zeros(dim, dim);
    m[(level, level)] = c(1.0, 0.0);
    m
}

/// Dense matrix of a projector product: site projectors on the named
/// subsystems, identities elsewhere.
pub fn dense_projector(shape: &Shape, product: &ProjectorProduct) -> CMat {
    let factors: Vec<CMat> = shape
        .dims()
        .iter()
        .enumerate()
        .map(|(s, &d)| {
            match product.factors().iter().find(|(sub, _)| *sub == s) {
                Some(&(_, level)) => site_projector(d, level),
                None => CMat::identity(d, d),
            }
        })
        .collect();
    kron_all(&factors)
}

pub fn pauli_matrix(letter: char) -> CMat {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match letter {
        'I' => CMat::from_row_slice(2, 2, &[o, z, z, o]),
        'X' => CMat::from_row_slice(2, 2, &[z, o, o, z]),
        'Y' => CMat::from_row_slice(2, 2, &[z, -i, i, z]),
        'Z' => CMat::from_row_slice(2, 2, &[o, z, z, -o]),
        _ => panic!("bad letter {letter}"),
    }
}

pub fn dense_pauli(string: &str) -> CMat {
    let factors: Vec<CMat> = string.chars().map(pauli_matrix).collect();
    kron_all(&factors)
}

pub fn apply(m: &CMat, k: &Ket) -> Vec<Complex64> {
    let v = nalgebra::DVector::from_column_slice(k.amps());
    (m * v).iter().copied().collect()
}

/// `exp(-i H t)` for a dense Hamiltonian, via nalgebra's matrix exponential.
pub fn dense_propagator(energies: &[f64], t: f64) -> CMat {
    let d = energies.len();
    let mut h = CMat::zeros(d, d);
    for (k, &e) in energies.iter().enumerate() {
        h[(k, k)] = c(e, 0.0);
    }
    (h * c(0.0, -t)).exp()
}

/// Every projector product on `shape`: each subsystem either free or fixed
/// to one of its levels.
pub fn all_projector_products(shape: &Shape) -> Vec<ProjectorProduct> {
    let mut out: Vec<Vec<(usize, usize)>> = vec![vec![]];
    for (s, &d) in shape.dims().iter().enumerate() {
        let mut next = Vec::new();
        for factors in &out {
            next.push(factors.clone());
            for level in 0..d {
                let mut f = factors.clone();
                f.push((s, level));
                next.push(f);
            }
        }
        out = next;
    }
    out.into_iter().map(|f| ProjectorProduct::new(f).unwrap()).collect()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
