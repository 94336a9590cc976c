//! Pure N-qubit states, named constructors and the text file format.
//!
//! Amplitudes are stored big-endian: qubit 1 is the most significant bit of
//! the amplitude index, so `C_{i1 i2 ... iN}` lives at `Σ i_k 2^(N-k)`.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Deserialize;

use crate::error::{Error, Result};

/// Largest register handled by the library.
pub const MAX_QUBITS: usize = 16;

/// Tolerance on `Σ|c|² = 1` for a state to count as normalized.
pub const NORMALIZED_TOL: f64 = 1e-10;

/// Amplitude vector of an N-qubit register.
///
/// Normalization is not enforced: SLOCC operators and POVM elements produce
/// unnormalized vectors and every monotone is homogeneous.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::Argument(format!(
                "qubit count {num_qubits} outside [1, {MAX_QUBITS}]"
            )));
        }
        let expected = 1usize << num_qubits;
        if amplitudes.len() != expected {
            return Err(Error::Shape(format!(
                "{num_qubits} qubits need {expected} amplitudes, got {}",
                amplitudes.len()
            )));
        }
        if let Some(pos) = amplitudes.iter().position(|z| !z.is_finite()) {
            return Err(Error::Argument(format!("non-finite amplitude at index {pos}")));
        }
        Ok(Self { num_qubits, amplitudes })
    }

    /// Infers the qubit count from the vector length.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Shape(format!("length {len} is not 2^N with N >= 1")));
        }
        Self::new(len.trailing_zeros() as usize, amplitudes)
    }

    /// Computational basis state `|bits⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::Argument(format!(
                "qubit count {num_qubits} outside [1, {MAX_QUBITS}]"
            )));
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::Range(format!("basis index {index} outside [0, {dim})")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(num_qubits, amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn amplitude(&self, bits: &[u8]) -> Result<Complex64> {
        Ok(self.amplitudes[amplitude_index(self.num_qubits, bits)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORMALIZED_TOL
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            num_qubits: self.num_qubits,
            amplitudes: self.amplitudes.iter().map(|&z| z * c).collect(),
        }
    }

    /// Tensor product `self ⊗ other`, `self` occupying the leading qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let amps = self
            .amplitudes
            .iter()
            .flat_map(|&a| other.amplitudes.iter().map(move |&b| a * b))
            .collect();
        Self::new(self.num_qubits + other.num_qubits, amps)
    }
}

/// Index of the amplitude `C_{i1 ... iN}`, first qubit most significant.
pub fn amplitude_index(num_qubits: usize, bits: &[u8]) -> Result<usize> {
    if bits.len() != num_qubits {
        return Err(Error::Shape(format!(
            "bit string of length {} for {num_qubits} qubits",
            bits.len()
        )));
    }
    bits.iter().try_fold(0usize, |acc, &b| match b {
        0 | 1 => Ok((acc << 1) | b as usize),
        other => Err(Error::Argument(format!("bit value {other} is not 0 or 1"))),
    })
}

/// Inverse of [`amplitude_index`].
pub fn index_bits(num_qubits: usize, index: usize) -> Vec<u8> {
    (1..=num_qubits)
        .map(|k| ((index >> (num_qubits - k)) & 1) as u8)
        .collect()
}

/// Rescales to unit norm.
pub fn normalize(state: &PureState) -> Result<PureState> {
    let norm = state.norm_sqr().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::Degenerate("cannot normalize a zero vector".into()));
    }
    Ok(state.scaled(Complex64::new(1.0 / norm, 0.0)))
}

/// Families of states that can be built by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Ghz,
    W,
    Bell,
    ProductZero,
    HaarRandom,
}

impl StateKind {
    pub const ALL: [StateKind; 5] = [
        StateKind::Ghz,
        StateKind::W,
        StateKind::Bell,
        StateKind::ProductZero,
        StateKind::HaarRandom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StateKind::Ghz => "ghz",
            StateKind::W => "w",
            StateKind::Bell => "bell",
            StateKind::ProductZero => "product-zero",
            StateKind::HaarRandom => "haar-random",
        }
    }
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StateKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown state name `{s}`")))
    }
}

/// A named state request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateLabel {
    pub kind: StateKind,
    pub num_qubits: usize,
    /// Only consulted by `haar-random`; defaults to 0.
    pub seed: Option<u64>,
}

impl StateLabel {
    pub fn new(kind: StateKind, num_qubits: usize) -> Self {
        Self { kind, num_qubits, seed: None }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

pub fn make_named_state(label: StateLabel) -> Result<PureState> {
    let n = label.num_qubits;
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::Argument(format!("qubit count {n} outside [1, {MAX_QUBITS}]")));
    }
    let dim = 1usize << n;
    let zero = Complex64::new(0.0, 0.0);
    let amps = match label.kind {
        StateKind::Ghz => ghz_amplitudes(dim),
        StateKind::Bell => {
            if n != 2 {
                return Err(Error::Argument(format!("bell state needs 2 qubits, got {n}")));
            }
            ghz_amplitudes(dim)
        }
        StateKind::W => {
            if n < 2 {
                return Err(Error::Argument(format!("w state needs at least 2 qubits, got {n}")));
            }
            let weight = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
            let mut amps = vec![zero; dim];
            for k in 0..n {
                amps[1 << k] = weight;
            }
            amps
        }
        StateKind::ProductZero => {
            let mut amps = vec![zero; dim];
            amps[0] = Complex64::new(1.0, 0.0);
            amps
        }
        StateKind::HaarRandom => {
            let mut rng = ChaCha8Rng::seed_from_u64(label.seed.unwrap_or(0));
            return random_state(n, &mut rng);
        }
    };
    PureState::new(n, amps)
}

fn ghz_amplitudes(dim: usize) -> Vec<Complex64> {
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[dim - 1] = amps[0];
    amps
}

/// Normalized vector of independent standard complex Gaussian entries.
pub fn random_state<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Result<PureState> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::Argument(format!(
            "qubit count {num_qubits} outside [1, {MAX_QUBITS}]"
        )));
    }
    let amps = (0..1usize << num_qubits)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    normalize(&PureState::new(num_qubits, amps)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateDocument {
    n_qubits: usize,
    amplitudes: Vec<[f64; 2]>,
}

/// Reads a state document.
///
/// ```text
/// { "n_qubits": 2, "amplitudes": [[re, im], [re, im], [re, im], [re, im]] }
/// ```
pub fn parse_state(text: &str) -> Result<PureState> {
    let doc: StateDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        position: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    if doc.n_qubits == 0 || doc.n_qubits > MAX_QUBITS {
        return Err(Error::Parse {
            position: "n_qubits".into(),
            message: format!("qubit count {} outside [1, {MAX_QUBITS}]", doc.n_qubits),
        });
    }
    let expected = 1usize << doc.n_qubits;
    if doc.amplitudes.len() != expected {
        return Err(Error::Parse {
            position: format!("amplitudes[{}]", doc.amplitudes.len().min(expected)),
            message: format!(
                "expected {expected} amplitudes for {} qubits, found {}",
                doc.n_qubits,
                doc.amplitudes.len()
            ),
        });
    }
    let amps = doc.amplitudes.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    PureState::new(doc.n_qubits, amps)
}

/// Formats a double with 17 significant digits.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn serialize_state(state: &PureState) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"n_qubits\": {},", state.num_qubits);
    let _ = writeln!(out, "  \"amplitudes\": [");
    let last = state.amplitudes.len() - 1;
    for (i, z) in state.amplitudes.iter().enumerate() {
        let sep = if i == last { "" } else { "," };
        let _ = writeln!(out, "    [{}, {}]{sep}", format_f64(z.re), format_f64(z.im));
    }
    let _ = writeln!(out, "  ]");
    let _ = writeln!(out, "}}");
    out
}
