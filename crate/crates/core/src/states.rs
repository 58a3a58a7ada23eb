//! The state families used throughout: Dicke states, the symmetric-subspace
//! projector, W/GHZ states mixed with symmetric noise, and a two-qubit
//! isospectral pair (one entangled, one separable).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{ComplexMatrix, DensityMatrix};

pub type StateVector = Vec<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    W,
    Ghz,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::W => "w",
            Family::Ghz => "ghz",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "w" => Ok(Family::W),
            "ghz" => Ok(Family::Ghz),
            other => Err(format!("unknown family {other:?} (expected w or ghz)")),
        }
    }
}

/// One member of a noisy family: `(1-x)/(n+1) P_n + x |psi><psi|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub n_qubits: usize,
    pub x: f64,
}

impl FamilySpec {
    pub fn new(family: Family, n_qubits: usize, x: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::BadMixing(x));
        }
        if n_qubits < 2 {
            return Err(Error::BadIndexSet {
                indices: vec![],
                n_qubits,
                reason: "families need at least two qubits",
            });
        }
        Ok(Self {
            family,
            n_qubits,
            x,
        })
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Equal superposition of all n-bit strings of Hamming weight k.
pub fn dicke_state(n: usize, k: usize) -> Result<StateVector> {
    if k > n {
        return Err(Error::BadExcitationNumber { n, k });
    }
    let amp = 1.0 / binomial(n, k).sqrt();
    Ok((0..1usize << n)
        .map(|b| {
            if b.count_ones() as usize == k {
                Complex64::new(amp, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect())
}

pub fn w_state(n: usize) -> StateVector {
    dicke_state(n, 1).expect("n >= 1")
}

/// (|0...0> + |1...1>)/sqrt(2).
pub fn ghz_state(n: usize) -> StateVector {
    let mut v = vec![Complex64::new(0.0, 0.0); 1 << n];
    v[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v[(1 << n) - 1] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v
}

/// Projector onto the symmetric subspace, sum over k = 0..=n of |D_n^k><D_n^k|.
pub fn symmetric_projector(n: usize) -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(1 << n);
    for k in 0..=n {
        let d = dicke_state(n, k).expect("k <= n");
        p = &p + &ComplexMatrix::outer(&d);
    }
    p
}

pub fn family_state(family: Family, n: usize) -> StateVector {
    match family {
        Family::W => w_state(n),
        Family::Ghz => ghz_state(n),
    }
}

pub fn noisy_family(spec: &FamilySpec) -> Result<DensityMatrix> {
    let FamilySpec { family, n_qubits, x } = *spec;
    let spec = FamilySpec::new(family, n_qubits, x)?;
    let noise = symmetric_projector(n_qubits).scale((1.0 - spec.x) / (n_qubits + 1) as f64);
    let pure = ComplexMatrix::outer(&family_state(family, n_qubits)).scale(spec.x);
    DensityMatrix::new(&noise + &pure, n_qubits)
}

/// Two-qubit states with identical global spectrum {2/3, 1/3, 0, 0} and
/// identical one-qubit marginal spectra {2/3, 1/3}. The first is entangled,
/// the second separable (and diagonal).
pub fn isospectral_pair() -> (DensityMatrix, DensityMatrix) {
    let t = 1.0 / 3.0;
    #[rustfmt::skip]
    let entangled = ComplexMatrix::from_real_rows(&[
        t,   0.0, 0.0, 0.0,
        0.0, t,   t,   0.0,
        0.0, t,   t,   0.0,
        0.0, 0.0, 0.0, 0.0,
    ]);
    let separable = ComplexMatrix::from_real_diagonal(&[t, 0.0, 0.0, 2.0 * t]);
    (
        DensityMatrix::new(entangled, 2).expect("valid state"),
        DensityMatrix::new(separable, 2).expect("valid state"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{kron, partial_trace};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn dicke_small_cases() {
        let d = dicke_state(2, 0).unwrap();
        assert_eq!(d[0], Complex64::new(1.0, 0.0));
        let d = dicke_state(2, 1).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((d[1].re - s).abs() < 1e-15 && (d[2].re - s).abs() < 1e-15);
        assert_eq!(d[0].re + d[3].re, 0.0);
        let w = dicke_state(3, 1).unwrap();
        for (b, a) in w.iter().enumerate() {
            let expected = if [1, 2, 4].contains(&b) { 1.0 / 3f64.sqrt() } else { 0.0 };
            assert!((a.re - expected).abs() < 1e-15);
        }
        assert!(matches!(dicke_state(2, 3), Err(Error::BadExcitationNumber { .. })));
    }

    #[test]
    fn projector_traces() {
        assert_eq!(symmetric_projector(1), ComplexMatrix::identity(2));
        assert!((symmetric_projector(3).trace().re - 4.0).abs() < 1e-14);
    }

    #[test]
    fn projector_annihilates_singlet() {
        let p = symmetric_projector(2);
        assert!((p.trace().re - 3.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(-s, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        assert!(p.mul_vec(&singlet).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn family_endpoints() {
        let pure = noisy_family(&FamilySpec::new(Family::W, 3, 1.0).unwrap()).unwrap();
        let mut expected = vec![0.0; 8];
        expected[7] = 1.0;
        assert!(close(pure.eigenvalues(), &expected, 1e-12));

        let noise = noisy_family(&FamilySpec::new(Family::W, 3, 0.0).unwrap()).unwrap();
        assert!(close(noise.eigenvalues(), &[0.0, 0.0, 0.0, 0.0, 0.25, 0.25, 0.25, 0.25], 1e-12));
    }

    #[test]
    fn w3_two_qubit_marginal_spectrum() {
        for x in [0.0, 0.2, 0.5, 0.9] {
            let rho = noisy_family(&FamilySpec::new(Family::W, 3, x).unwrap()).unwrap();
            let bc = partial_trace(&rho, &[1, 2]).unwrap();
            let mut expected = vec![0.0, (1.0 - x) / 3.0, 1.0 / 3.0, (1.0 + x) / 3.0];
            expected.sort_by(f64::total_cmp);
            assert!(close(bc.eigenvalues(), &expected, 1e-12), "x={x}: {:?}", bc.eigenvalues());
        }
    }

    #[test]
    fn rejects_out_of_range_mixing() {
        assert!(FamilySpec::new(Family::Ghz, 3, 1.5).is_err());
        assert!(FamilySpec::new(Family::Ghz, 3, -0.1).is_err());
        assert!(FamilySpec::new(Family::Ghz, 1, 0.5).is_err());
    }

    #[test]
    fn isospectral_spectra() {
        let (rho, varrho) = isospectral_pair();
        for s in [&rho, &varrho] {
            assert!(close(s.eigenvalues(), &[0.0, 0.0, 1.0 / 3.0, 2.0 / 3.0], 1e-14));
            for k in 0..2 {
                let m = partial_trace(s, &[k]).unwrap();
                assert!(close(m.eigenvalues(), &[1.0 / 3.0, 2.0 / 3.0], 1e-14));
            }
        }
    }

    #[test]
    fn isospectral_commutation() {
        let (rho, varrho) = isospectral_pair();
        let i2 = ComplexMatrix::identity(2);
        let sigma = |s: &DensityMatrix| kron(&i2, partial_trace(s, &[1]).unwrap().matrix());
        assert!(varrho.matrix().commutator_norm(&sigma(&varrho)) < 1e-15);
        assert!(rho.matrix().commutator_norm(&sigma(&rho)) > 1e-3);
    }

    #[test]
    fn family_parse() {
        assert_eq!("GHZ".parse::<Family>().unwrap(), Family::Ghz);
        assert_eq!("w".parse::<Family>().unwrap(), Family::W);
        assert!("dicke".parse::<Family>().is_err());
    }
}
