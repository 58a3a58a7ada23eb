use std::fmt;

use crate::error::{Error, Result};

/// A bipartition `X:Y` of an n-qubit register, read as "X given Y".
///
/// `conditioning` is the Y side (the block whose marginal enters
/// `I_X ⊗ rho_Y`); `remainder` is X. Both are kept in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n_qubits: usize,
    conditioning: Vec<usize>,
    remainder: Vec<usize>,
}

impl Partition {
    pub fn new(n_qubits: usize, conditioning: &[usize]) -> Result<Self> {
        let cond = check_index_set(n_qubits, conditioning)?;
        let remainder = (0..n_qubits).filter(|k| !cond.contains(k)).collect();
        Ok(Self {
            n_qubits,
            conditioning: cond,
            remainder,
        })
    }

    /// Partition with the first `k` qubits as remainder, the rest conditioned on (A:BC, AB:C, ...).
    pub fn prefix(n_qubits: usize, k: usize) -> Result<Self> {
        Self::new(n_qubits, &(k..n_qubits).collect::<Vec<_>>())
    }

    /// All prefix partitions `1..n` of an n-qubit register.
    pub fn all_prefixes(n_qubits: usize) -> Vec<Self> {
        (1..n_qubits).filter_map(|k| Self::prefix(n_qubits, k).ok()).collect()
    }

    /// Parses `A:BC` (letters by position, A = qubit 0) or `0:1,2` (explicit indices).
    pub fn parse(s: &str, n_qubits: usize) -> Result<Self> {
        let bad = || Error::BadPartition(s.to_string());
        let (left, right) = s.split_once(':').ok_or_else(bad)?;
        let (left, right) = (left.trim(), right.trim());
        if left.is_empty() || right.is_empty() {
            return Err(bad());
        }
        let side = |t: &str| -> Result<Vec<usize>> {
            if t.chars().all(|c| c.is_ascii_uppercase()) {
                Ok(t.bytes().map(|b| (b - b'A') as usize).collect())
            } else {
                t.split(',')
                    .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
                    .collect()
            }
        };
        let (x, y) = (side(left)?, side(right)?);
        let mut all: Vec<usize> = x.iter().chain(&y).copied().collect();
        all.sort_unstable();
        if all != (0..n_qubits).collect::<Vec<_>>() {
            return Err(bad());
        }
        Self::new(n_qubits, &y)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn conditioning(&self) -> &[usize] {
        &self.conditioning
    }

    pub fn remainder(&self) -> &[usize] {
        &self.remainder
    }

    /// The smaller side (remainder on ties).
    pub fn smaller_side(&self) -> &[usize] {
        if self.conditioning.len() < self.remainder.len() {
            &self.conditioning
        } else {
            &self.remainder
        }
    }

    /// Same cut with the roles of the two sides exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            conditioning: self.remainder.clone(),
            remainder: self.conditioning.clone(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n_qubits <= 26 {
            let letters = |s: &[usize]| s.iter().map(|&k| (b'A' + k as u8) as char).collect::<String>();
            write!(f, "{}:{}", letters(&self.remainder), letters(&self.conditioning))
        } else {
            let nums = |s: &[usize]| s.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
            write!(f, "{}:{}", nums(&self.remainder), nums(&self.conditioning))
        }
    }
}

/// Validates a nonempty proper subset of `0..n_qubits` and returns it sorted.
pub fn check_index_set(n_qubits: usize, indices: &[usize]) -> Result<Vec<usize>> {
    let fail = |reason| Error::BadIndexSet {
        indices: indices.to_vec(),
        n_qubits,
        reason,
    };
    if indices.is_empty() {
        return Err(fail("empty"));
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(fail("duplicate index"));
    }
    if sorted.last().is_some_and(|&k| k >= n_qubits) {
        return Err(fail("index out of range"));
    }
    if sorted.len() == n_qubits {
        return Err(fail("not a proper subset"));
    }
    Ok(sorted)
}
