//! Local operations: sampling of unitary, SL(2,ℂ) and two-outcome POVM
//! factors, their action on a state, and the single-trial monotonicity
//! experiment.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::monotones::Monotone;
use crate::partition::Partition;
use crate::state::PureState;

/// Operator-norm ceiling for sampled SL(2,ℂ) factors.
pub const SL2_MAX_NORM: f64 = 3.0;
/// Gaussian draws with `|det|` below this are rejected before scaling.
pub const SL2_MIN_DET: f64 = 0.1;
/// Structural tolerance for operators and POVM completeness.
pub const OPERATOR_TOL: f64 = 1e-12;
/// Branches with smaller probability contribute nothing to the average.
pub const MIN_BRANCH_PROBABILITY: f64 = 1e-14;

/// Deterministic generator for a seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent per-trial seed derived from a base seed and a stream tag.
pub fn trial_seed(base: u64, stream: u64, trial: u64) -> u64 {
    // splitmix64 finalizer over the packed inputs
    let mut z = base
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(stream.wrapping_mul(0xD1B5_4A32_D192_ED03))
        .wrapping_add(trial);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn det2(m: &ComplexMatrix) -> Complex64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

/// Largest singular value of a 2×2 matrix.
pub fn operator_norm2(m: &ComplexMatrix) -> f64 {
    let frob: f64 = m.entries().iter().map(Complex64::norm_sqr).sum();
    let det = det2(m).norm_sqr();
    let disc = (frob * frob - 4.0 * det).max(0.0).sqrt();
    ((frob + disc) / 2.0).sqrt()
}

/// Largest entry of `|M†M - I|`.
pub fn unitarity_residual(m: &ComplexMatrix) -> f64 {
    let prod = m.adjoint().matmul(m).expect("square");
    let mut worst: f64 = 0.0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[(i, j)] - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Random element of SL(2,ℂ) with operator norm at most [`SL2_MAX_NORM`].
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    loop {
        let g = ComplexMatrix::new(2, 2, (0..4).map(|_| gaussian(rng)).collect())
            .expect("finite gaussian draws");
        let det = det2(&g);
        if det.norm() < SL2_MIN_DET {
            continue;
        }
        let m = g.scale(det.sqrt().inv());
        if operator_norm2(&m) <= SL2_MAX_NORM {
            return m;
        }
    }
}

/// Haar-random `dim × dim` unitary: Gram–Schmidt on a complex Gaussian
/// matrix, which leaves a positive real triangular factor.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let mut cols: Vec<Vec<Complex64>> =
            (0..dim).map(|_| (0..dim).map(|_| gaussian(rng)).collect()).collect();
        let mut ok = true;
        for j in 0..dim {
            // two passes keep the columns orthogonal to machine precision
            for _ in 0..2 {
                for k in 0..j {
                    let proj: Complex64 =
                        cols[k].iter().zip(&cols[j]).map(|(q, v)| q.conj() * v).sum();
                    let basis = cols[k].clone();
                    for (v, q) in cols[j].iter_mut().zip(&basis) {
                        *v -= proj * q;
                    }
                }
            }
            let norm = cols[j].iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            cols[j].iter_mut().for_each(|v| *v /= norm);
        }
        if ok {
            return ComplexMatrix::from_columns(&cols).expect("finite columns");
        }
    }
}

pub fn random_u2<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    random_unitary(2, rng)
}

/// A 2×2 operator acting on one qubit (1-based position).
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator {
    qubit: usize,
    matrix: ComplexMatrix,
}

impl LocalOperator {
    pub fn new(qubit: usize, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.rows() != 2 || matrix.cols() != 2 {
            return Err(Error::Shape(format!(
                "local operator must be 2x2, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if qubit == 0 {
            return Err(Error::Argument("qubit positions are 1-based".into()));
        }
        Ok(Self { qubit, matrix })
    }

    /// Checked constructor for a determinant-one factor.
    pub fn special_linear(qubit: usize, matrix: ComplexMatrix) -> Result<Self> {
        let op = Self::new(qubit, matrix)?;
        let dev = (det2(&op.matrix) - Complex64::new(1.0, 0.0)).norm();
        if dev > OPERATOR_TOL {
            return Err(Error::Argument(format!("|det - 1| = {dev:e} exceeds tolerance")));
        }
        Ok(op)
    }

    /// Checked constructor for a unitary factor.
    pub fn unitary(qubit: usize, matrix: ComplexMatrix) -> Result<Self> {
        let op = Self::new(qubit, matrix)?;
        let dev = unitarity_residual(&op.matrix);
        if dev > OPERATOR_TOL {
            return Err(Error::Argument(format!("unitarity residual {dev:e} exceeds tolerance")));
        }
        Ok(op)
    }

    pub fn qubit(&self) -> usize {
        self.qubit
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Applies each operator to its qubit. No renormalization.
pub fn apply_local(state: &PureState, operators: &[LocalOperator]) -> Result<PureState> {
    let n = state.num_qubits();
    let mut seen = vec![false; n + 1];
    for op in operators {
        if op.qubit > n {
            return Err(Error::Argument(format!("qubit {} outside [1, {n}]", op.qubit)));
        }
        if std::mem::replace(&mut seen[op.qubit], true) {
            return Err(Error::Argument(format!("qubit {} targeted twice", op.qubit)));
        }
    }
    let mut amps = state.amplitudes().to_vec();
    for op in operators {
        let bit = 1usize << (n - op.qubit);
        let m = &op.matrix;
        let (m00, m01, m10, m11) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        for i in (0..amps.len()).filter(|i| i & bit == 0) {
            let (lo, hi) = (amps[i], amps[i | bit]);
            amps[i] = m00 * lo + m01 * hi;
            amps[i | bit] = m10 * lo + m11 * hi;
        }
    }
    PureState::new(n, amps)
}

/// One SL(2,ℂ) factor per qubit.
pub fn random_slocc<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Vec<LocalOperator> {
    (1..=num_qubits)
        .map(|k| LocalOperator { qubit: k, matrix: random_sl2(rng) })
        .collect()
}

/// One Haar unitary per qubit.
pub fn random_local_unitaries<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Vec<LocalOperator> {
    (1..=num_qubits)
        .map(|k| LocalOperator { qubit: k, matrix: random_u2(rng) })
        .collect()
}

/// Two-outcome POVM, `A1†A1 + A2†A2 = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct PovmPair {
    a1: ComplexMatrix,
    a2: ComplexMatrix,
}

impl PovmPair {
    pub fn new(a1: ComplexMatrix, a2: ComplexMatrix) -> Result<Self> {
        for a in [&a1, &a2] {
            if a.rows() != 2 || a.cols() != 2 {
                return Err(Error::Shape("POVM elements must be 2x2".into()));
            }
        }
        let pair = Self { a1, a2 };
        let dev = pair.completeness_residual();
        if dev > OPERATOR_TOL {
            return Err(Error::Argument(format!("completeness residual {dev:e} exceeds tolerance")));
        }
        Ok(pair)
    }

    /// Projective measurement in the computational basis.
    pub fn projective() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let mut p0 = ComplexMatrix::zeros(2, 2);
        let mut p1 = ComplexMatrix::zeros(2, 2);
        p0[(0, 0)] = one;
        p1[(1, 1)] = one;
        Self { a1: p0, a2: p1 }
    }

    pub fn elements(&self) -> [&ComplexMatrix; 2] {
        [&self.a1, &self.a2]
    }

    /// Largest entry of `|A1†A1 + A2†A2 - I|`.
    pub fn completeness_residual(&self) -> f64 {
        let s1 = self.a1.adjoint().matmul(&self.a1).expect("2x2");
        let s2 = self.a2.adjoint().matmul(&self.a2).expect("2x2");
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s1[(i, j)] + s2[(i, j)] - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

fn diag(a: f64, b: f64) -> ComplexMatrix {
    let mut d = ComplexMatrix::zeros(2, 2);
    d[(0, 0)] = Complex64::new(a, 0.0);
    d[(1, 1)] = Complex64::new(b, 0.0);
    d
}

/// `A_i = U_i D_i V` with Haar `U_1, U_2, V` and `D_1² + D_2² = I`.
pub fn random_povm_pair<R: Rng + ?Sized>(rng: &mut R) -> PovmPair {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let t1: f64 = rng.random::<f64>() * half_pi;
    let t2: f64 = rng.random::<f64>() * half_pi;
    let (u1, u2, v) = (random_u2(rng), random_u2(rng), random_u2(rng));
    let a1 = u1.matmul(&diag(t1.cos(), t2.cos())).and_then(|m| m.matmul(&v)).expect("2x2");
    let a2 = u2.matmul(&diag(t1.sin(), t2.sin())).and_then(|m| m.matmul(&v)).expect("2x2");
    PovmPair { a1, a2 }
}

/// Result of one measurement trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub before: f64,
    pub after_avg: f64,
    pub probabilities: [f64; 2],
}

impl TrialOutcome {
    pub fn increase(&self) -> f64 {
        self.after_avg - self.before
    }
}

/// Measures `povm` on `qubit` and averages the monotone over both branches.
pub fn monotonicity_trial(
    state: &PureState,
    qubit: usize,
    povm: &PovmPair,
    monotone: Monotone,
    partition: &Partition,
) -> Result<TrialOutcome> {
    if !state.is_normalized() {
        return Err(Error::Argument(format!(
            "monotonicity trial needs a normalized state, norm² = {}",
            state.norm_sqr()
        )));
    }
    let before = monotone.evaluate(state, partition)?;
    let mut after_avg = 0.0;
    let mut probabilities = [0.0; 2];
    for (slot, element) in povm.elements().into_iter().enumerate() {
        let branch = apply_local(state, &[LocalOperator::new(qubit, element.clone())?])?;
        let p = branch.norm_sqr();
        probabilities[slot] = p;
        if p < MIN_BRANCH_PROBABILITY {
            continue;
        }
        let branch = branch.scaled(Complex64::new(1.0 / p.sqrt(), 0.0));
        after_avg += p * monotone.evaluate(&branch, partition)?;
    }
    Ok(TrialOutcome { before, after_avg, probabilities })
}
