//! Bipartitions of the register and the ε-tensor bilinear form.
//!
//! A partition selects `n <= N/2` qubits. The state is reshaped into an
//! `L × l` matrix (`L = 2^(N-n)`, `l = 2^n`) whose row index spells the
//! unselected qubits and whose column index spells the selected ones, both
//! big-endian in increasing qubit position.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::state::PureState;

/// An admissible set of selected qubits (1-based, strictly increasing).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    num_qubits: usize,
    selected: Vec<usize>,
}

impl Partition {
    /// Accepts positions in any order; they are sorted.
    pub fn new(num_qubits: usize, mut selected: Vec<usize>) -> Result<Self> {
        selected.sort_unstable();
        if selected.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Argument(format!("repeated qubit in partition {selected:?}")));
        }
        if let Some(&bad) = selected.iter().find(|&&k| k == 0 || k > num_qubits) {
            return Err(Error::Argument(format!(
                "qubit position {bad} outside [1, {num_qubits}]"
            )));
        }
        let n = selected.len();
        if n == 0 || 2 * n > num_qubits {
            return Err(Error::Argument(format!(
                "partition of {n} qubits out of {num_qubits}: need 1 <= n <= N/2"
            )));
        }
        Ok(Self { num_qubits, selected })
    }

    /// The last `n` qubits.
    pub fn trailing(num_qubits: usize, n: usize) -> Result<Self> {
        Self::new(num_qubits, (num_qubits.saturating_sub(n) + 1..=num_qubits).collect())
    }

    /// Parses a comma-separated list such as `3,4`.
    pub fn parse(num_qubits: usize, text: &str) -> Result<Self> {
        let selected = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Argument(format!("bad qubit position `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(num_qubits, selected)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn unselected(&self) -> Vec<usize> {
        (1..=self.num_qubits).filter(|k| !self.selected.contains(k)).collect()
    }

    /// Number of selected qubits.
    pub fn n(&self) -> usize {
        self.selected.len()
    }

    /// Number of unselected qubits, the tensor power of ε in the form.
    pub fn m(&self) -> usize {
        self.num_qubits - self.n()
    }

    /// Row count `L = 2^(N-n)`.
    pub fn rows(&self) -> usize {
        1 << self.m()
    }

    /// Column count `l = 2^n`.
    pub fn cols(&self) -> usize {
        1 << self.n()
    }

    pub fn label(&self) -> String {
        self.selected.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }

    /// The opposite block, admissible only when `n = N/2`.
    pub fn complement(&self) -> Result<Self> {
        Self::new(self.num_qubits, self.unselected())
    }

    /// Every admissible partition, one per complementary pair.
    ///
    /// For `n = N/2` the representative is the block containing qubit `N`.
    pub fn enumerate(num_qubits: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for n in 1..=num_qubits / 2 {
            for combo in crate::linalg::combinations(num_qubits, n) {
                let selected: Vec<usize> = combo.into_iter().map(|k| k + 1).collect();
                if 2 * n == num_qubits && !selected.contains(&num_qubits) {
                    continue;
                }
                out.push(Self { num_qubits, selected });
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.label())
    }
}

/// Amplitude-index offsets contributed by each value of a block of qubits.
fn block_offsets(num_qubits: usize, positions: &[usize]) -> Vec<usize> {
    let width = positions.len();
    (0..1usize << width)
        .map(|value| {
            positions.iter().enumerate().fold(0, |acc, (j, &k)| {
                let bit = (value >> (width - 1 - j)) & 1;
                acc | (bit << (num_qubits - k))
            })
        })
        .collect()
}

/// Reshapes a state into its `L × l` coefficient matrix.
pub fn reshape(state: &PureState, partition: &Partition) -> Result<ComplexMatrix> {
    if state.num_qubits() != partition.num_qubits {
        return Err(Error::Argument(format!(
            "partition for {} qubits applied to a {}-qubit state",
            partition.num_qubits,
            state.num_qubits()
        )));
    }
    let n = state.num_qubits();
    let row_offsets = block_offsets(n, &partition.unselected());
    let col_offsets = block_offsets(n, &partition.selected);
    let amps = state.amplitudes();
    let mut z = ComplexMatrix::zeros(row_offsets.len(), col_offsets.len());
    for (alpha, &r) in row_offsets.iter().enumerate() {
        for (a, &c) in col_offsets.iter().enumerate() {
            z[(alpha, a)] = amps[r | c];
        }
    }
    Ok(z)
}

/// Inverse of [`reshape`]: reads an `L × l` matrix back into a state.
pub fn unreshape(z: &ComplexMatrix, partition: &Partition) -> Result<PureState> {
    if (z.rows(), z.cols()) != (partition.rows(), partition.cols()) {
        return Err(Error::Shape(format!(
            "partition {partition} needs a {}x{} matrix, got {}x{}",
            partition.rows(),
            partition.cols(),
            z.rows(),
            z.cols()
        )));
    }
    let n = partition.num_qubits;
    let row_offsets = block_offsets(n, &partition.unselected());
    let col_offsets = block_offsets(n, &partition.selected);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (alpha, &r) in row_offsets.iter().enumerate() {
        for (a, &c) in col_offsets.iter().enumerate() {
            amps[r | c] = z[(alpha, a)];
        }
    }
    PureState::new(n, amps)
}

/// The form `g = ε^{⊗m}` on vectors of length `2^m`.
///
/// `g` has one nonzero per row, `g[α][ᾱ] = (-1)^popcount(α)` with `ᾱ` the
/// bitwise complement of `α`, so it is applied in `O(2^m)` without ever
/// building the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpsilonForm {
    m: usize,
}

impl EpsilonForm {
    pub fn new(m: usize) -> Self {
        Self { m }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        1 << self.m
    }

    /// `g` is symmetric for even `m` and antisymmetric for odd `m`.
    pub fn is_symmetric(&self) -> bool {
        self.m.is_multiple_of(2)
    }

    fn mask(&self) -> usize {
        self.dim() - 1
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::Shape(format!(
                "vector of length {len} for ε-form on 2^{} = {} entries",
                self.m,
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check(v.len())?;
        let mask = self.mask();
        Ok((0..v.len())
            .map(|alpha| {
                let z = v[alpha ^ mask];
                if alpha.count_ones() % 2 == 0 {
                    z
                } else {
                    -z
                }
            })
            .collect())
    }

    /// `Σ_αβ g_αβ A_α B_β`.
    ///
    /// Summed over complementary pairs `(α, ᾱ)`, which makes
    /// `bilinear(B, A) = (-1)^m bilinear(A, B)` hold bit for bit.
    pub fn bilinear(&self, a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
        self.check(a.len())?;
        self.check(b.len())?;
        if self.m == 0 {
            return Ok(a[0] * b[0]);
        }
        let mask = self.mask();
        let half = self.dim() / 2;
        let mut total = Complex64::new(0.0, 0.0);
        for alpha in 0..half {
            let bar = alpha ^ mask;
            let forward = a[alpha] * b[bar];
            let backward = a[bar] * b[alpha];
            let pair = if self.is_symmetric() { forward + backward } else { forward - backward };
            if alpha.count_ones() % 2 == 0 {
                total += pair;
            } else {
                total -= pair;
            }
        }
        Ok(total)
    }

    /// Dense matrix of the form; only sensible for small `m`.
    pub fn materialize(&self) -> ComplexMatrix {
        let dim = self.dim();
        let mut g = ComplexMatrix::zeros(dim, dim);
        for alpha in 0..dim {
            let sign = if alpha.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            g[(alpha, alpha ^ self.mask())] = Complex64::new(sign, 0.0);
        }
        g
    }
}

pub fn epsilon_apply(m: usize, v: &[Complex64]) -> Result<Vec<Complex64>> {
    EpsilonForm::new(m).apply(v)
}

pub fn bilinear(m: usize, a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
    EpsilonForm::new(m).bilinear(a, b)
}
