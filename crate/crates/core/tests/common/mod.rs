#![allow(dead_code)]

use cstre::qlinalg::{ComplexMatrix, DensityMatrix, Spectrum};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box-Muller
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

pub fn ginibre(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, |_, _| Complex64::new(gaussian(rng), gaussian(rng)))
}

pub fn random_hermitian(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    ginibre(rng, d).hermitian_part()
}

/// Haar-ish unitary from Gram-Schmidt on a Ginibre matrix (columns).
pub fn random_unitary(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let g = ginibre(rng, d);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v: Vec<Complex64> = (0..d).map(|i| g[(i, j)]).collect();
        for c in &cols {
            let proj: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ci) in v.iter_mut().zip(c) {
                *vi -= proj * ci;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(d, |i, j| cols[j][i])
}

/// Random density matrix `G G^dagger / Tr`, full rank almost surely.
pub fn random_density(rng: &mut impl Rng, n_qubits: usize) -> DensityMatrix {
    let g = ginibre(rng, 1 << n_qubits);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale(1.0 / tr), n_qubits).unwrap()
}

/// Random density matrix of the given rank.
pub fn random_density_rank(rng: &mut impl Rng, n_qubits: usize, rank: usize) -> DensityMatrix {
    let d = 1 << n_qubits;
    let u = random_unitary(rng, d);
    let mut w: Vec<f64> = (0..d).map(|i| if i < rank { rng.gen_range(0.05..1.0) } else { 0.0 }).collect();
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= s);
    let m = &(&u * &ComplexMatrix::from_real_diagonal(&w)) * &u.adjoint();
    DensityMatrix::new(m.hermitian_part(), n_qubits).unwrap()
}

/// Eigenvalues from nalgebra, ascending; an oracle independent of the Jacobi solver.
pub fn oracle_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let d = m.dim();
    let nm = nalgebra::DMatrix::<nalgebra::Complex<f64>>::from_fn(d, d, |i, j| {
        let z = m[(i, j)];
        nalgebra::Complex::new(z.re, z.im)
    });
    let mut ev: Vec<f64> = nm.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Post-multiplies each degenerate eigenspace block of the eigenvector matrix by a random unitary.
pub fn rotate_degenerate(rng: &mut impl Rng, s: &Spectrum, tol: f64) -> Spectrum {
    let d = s.dim();
    let mut w = ComplexMatrix::zeros(d);
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && (s.eigenvalues[end] - s.eigenvalues[start]).abs() < tol {
            end += 1;
        }
        let u = random_unitary(rng, end - start);
        for i in 0..end - start {
            for j in 0..end - start {
                w[(start + i, start + j)] = u[(i, j)];
            }
        }
        start = end;
    }
    Spectrum {
        eigenvalues: s.eigenvalues.clone(),
        eigenvectors: &s.eigenvectors * &w,
    }
}

pub fn bell_diagonal(weights: [f64; 4]) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let r = |v: f64| Complex64::new(v, 0.0);
    let bells = [
        [r(s), z, z, r(s)],
        [r(s), z, z, r(-s)],
        [z, r(s), r(s), z],
        [z, r(s), r(-s), z],
    ];
    let mut m = ComplexMatrix::zeros(4);
    for (w, b) in weights.iter().zip(bells) {
        m = &m + &ComplexMatrix::outer(&b).scale(*w);
    }
    m
}
