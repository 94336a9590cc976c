//! Randomized verification suites.
//!
//! Each property draws its trials from independent, seed-derived streams, so
//! a `(suite, trials, seed)` triple always produces the same residuals.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::monotones::{
    d_monotone, e_monotone, five_qubit_e2_pfaffian, four_qubit_lmn, three_tangle, Monotone,
};
use crate::partition::{epsilon_apply, reshape, unreshape, Partition};
use crate::plucker::{
    gauge_transform, gram_bilinear, gram_hermitian, plucker_coordinates, plucker_relation_residual,
};
use crate::state::{random_state, PureState};
use crate::transforms::{
    apply_local, monotonicity_trial, random_local_unitaries, random_povm_pair, random_slocc,
    random_unitary, rng_from_seed, trial_seed,
};

pub const PLUCKER_RELATION_TOL: f64 = 1e-12;
pub const GAUGE_TOL: f64 = 1e-10;
pub const CAUCHY_BINET_TOL: f64 = 1e-10;
pub const LU_TOL: f64 = 1e-10;
pub const SLOCC_TOL: f64 = 1e-8;
pub const PERMUTATION_TOL: f64 = 1e-10;
pub const MONOTONICITY_TOL: f64 = 1e-9;
pub const LMN_TOL: f64 = 1e-9;
pub const PFAFFIAN_TOL: f64 = 1e-10;

/// Named groups of properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Plucker,
    CauchyBinet,
    Lu,
    Slocc,
    Permutation,
    Monotonicity,
    Lmn,
    Pfaffian,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 8] = [
        Suite::Plucker,
        Suite::CauchyBinet,
        Suite::Lu,
        Suite::Slocc,
        Suite::Permutation,
        Suite::Monotonicity,
        Suite::Lmn,
        Suite::Pfaffian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Plucker => "plucker",
            Suite::CauchyBinet => "cauchy-binet",
            Suite::Lu => "lu",
            Suite::Slocc => "slocc",
            Suite::Permutation => "permutation",
            Suite::Monotonicity => "monotonicity",
            Suite::Lmn => "lmn",
            Suite::Pfaffian => "pfaffian",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::INDIVIDUAL
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown suite `{s}`")))
    }
}

/// Outcome of one property over all its trials.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub trials: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub violations: usize,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<34} trials={:<5} max_residual={:.3e} tolerance={:.0e} violations={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.trials,
            self.max_residual,
            self.tolerance,
            self.violations
        )
    }
}

/// `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

struct Tracker {
    name: &'static str,
    tolerance: f64,
    trials: usize,
    max_residual: f64,
    violations: usize,
}

impl Tracker {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self { name, tolerance, trials: 0, max_residual: f64::NEG_INFINITY, violations: 0 }
    }

    fn record(&mut self, residual: f64) {
        if residual.is_nan() || residual > self.tolerance {
            self.violations += 1;
        }
        if residual.is_nan() || residual > self.max_residual {
            self.max_residual = residual;
        }
    }

    fn trial(&mut self) {
        self.trials += 1;
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name,
            trials: self.trials,
            max_residual: if self.trials == 0 { 0.0 } else { self.max_residual },
            tolerance: self.tolerance,
            violations: self.violations,
        }
    }
}

/// Runs a suite; `All` runs every individual suite in a fixed order.
pub fn run_suite(suite: Suite, trials: usize, seed: u64) -> Result<Vec<PropertyResult>> {
    if trials == 0 {
        return Err(Error::Argument("trial count must be at least 1".into()));
    }
    Ok(match suite {
        Suite::Plucker => vec![plucker_relation(trials, seed), gauge_covariance(trials, seed)?],
        Suite::CauchyBinet => cauchy_binet(trials, seed)?,
        Suite::Lu => lu_invariance(trials, seed)?,
        Suite::Slocc => vec![slocc_invariance(trials, seed)?],
        Suite::Permutation => permutation(trials, seed)?,
        Suite::Monotonicity => monotonicity(trials, seed)?,
        Suite::Lmn => lmn(trials, seed)?,
        Suite::Pfaffian => pfaffian_suite(trials, seed)?,
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::INDIVIDUAL {
                out.extend(run_suite(s, trials, seed)?);
            }
            out
        }
    })
}

fn stream(seed: u64, tag: u64, trial: usize) -> ChaCha8Rng {
    rng_from_seed(trial_seed(seed, tag, trial as u64))
}

/// Matrix of independent standard complex Gaussian entries.
pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let entries = (0..rows * cols)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    ComplexMatrix::new(rows, cols, entries).expect("finite draws")
}

/// Gaussian antisymmetric matrix of the given dimension.
pub fn gaussian_antisymmetric<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in (i + 1)..dim {
            let v = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            a[(i, j)] = v;
            a[(j, i)] = -v;
        }
    }
    a
}

/// Qubit counts cycled through by the state-based suites.
const STATE_SIZES: [usize; 4] = [2, 3, 4, 5];

fn plucker_relation(trials: usize, seed: u64) -> PropertyResult {
    let mut t = Tracker::new("plucker.relation_residual", PLUCKER_RELATION_TOL);
    for i in 0..trials {
        let mut rng = stream(seed, 1, i);
        let z = gaussian_matrix(4, 2, &mut rng);
        t.trial();
        let p = plucker_coordinates(&z).expect("4x2");
        t.record(plucker_relation_residual(&p).expect("Gr(4,2)"));
    }
    t.finish()
}

fn gauge_covariance(trials: usize, seed: u64) -> Result<PropertyResult> {
    const SHAPES: [(usize, usize); 4] = [(4, 2), (8, 2), (8, 4), (16, 4)];
    let mut t = Tracker::new("plucker.gauge_covariance", GAUGE_TOL);
    for i in 0..trials {
        let mut rng = stream(seed, 2, i);
        let (rows, cols) = SHAPES[i % SHAPES.len()];
        let z = gaussian_matrix(rows, cols, &mut rng);
        let s = gaussian_matrix(cols, cols, &mut rng);
        let det_s = linalg::determinant(&s)?;
        let before = plucker_coordinates(&z)?;
        let after = plucker_coordinates(&gauge_transform(&z, &s)?)?;
        let scale = before.coords().iter().map(|p| (p * det_s).norm()).fold(0.0, f64::max);
        let worst = before
            .coords()
            .iter()
            .zip(after.coords())
            .map(|(p, q)| (p * det_s - q).norm())
            .fold(0.0, f64::max);
        t.trial();
        t.record(if scale == 0.0 { worst } else { worst / scale });
    }
    Ok(t.finish())
}

fn cauchy_binet(trials: usize, seed: u64) -> Result<Vec<PropertyResult>> {
    let mut herm = Tracker::new("cauchy_binet.hermitian", CAUCHY_BINET_TOL);
    let mut bil = Tracker::new("cauchy_binet.bilinear", CAUCHY_BINET_TOL);
    for i in 0..trials {
        let mut rng = stream(seed, 3, i);
        let n = STATE_SIZES[i % STATE_SIZES.len()];
        let state = random_state(n, &mut rng)?;
        herm.trial();
        bil.trial();
        for p in Partition::enumerate(n) {
            let z = reshape(&state, &p)?;
            let minors = plucker_coordinates(&z)?;

            let gram = linalg::determinant(&gram_hermitian(&z))?.re;
            herm.record(relative_diff(gram, minors.norm_sqr()));

            let raised_cols: Vec<Vec<Complex64>> = (0..z.cols())
                .map(|j| epsilon_apply(p.m(), &z.column(j)))
                .collect::<Result<_>>()?;
            let raised = plucker_coordinates(&ComplexMatrix::from_columns(&raised_cols)?)?;
            let by_minors = minors.contract(&raised)?;
            let by_gram = linalg::determinant(&gram_bilinear(&z, p.m())?)?;
            let scale = by_minors.norm().max(by_gram.norm());
            bil.record(if scale == 0.0 { 0.0 } else { (by_minors - by_gram).norm() / scale });
        }
    }
    Ok(vec![herm.finish(), bil.finish()])
}

fn lu_invariance(trials: usize, seed: u64) -> Result<Vec<PropertyResult>> {
    let mut local = Tracker::new("lu.local_unitary", LU_TOL);
    let mut block = Tracker::new("lu.block_unitary", LU_TOL);
    for i in 0..trials {
        let mut rng = stream(seed, 4, i);
        let n = STATE_SIZES[i % STATE_SIZES.len()];
        let state = random_state(n, &mut rng)?;
        let moved = apply_local(&state, &random_local_unitaries(n, &mut rng))?;
        local.trial();
        block.trial();
        for p in Partition::enumerate(n) {
            let d = d_monotone(&state, &p)?;
            local.record((d_monotone(&moved, &p)? - d).abs());

            let u = random_unitary(p.cols(), &mut rng);
            let mixed = unreshape(&reshape(&state, &p)?.matmul(&u)?, &p)?;
            block.record((d_monotone(&mixed, &p)? - d).abs());
        }
    }
    Ok(vec![local.finish(), block.finish()])
}

fn slocc_invariance(trials: usize, seed: u64) -> Result<PropertyResult> {
    let mut t = Tracker::new("slocc.e_invariance", SLOCC_TOL);
    for i in 0..trials {
        let mut rng = stream(seed, 5, i);
        let n = STATE_SIZES[i % STATE_SIZES.len()];
        let state = random_state(n, &mut rng)?;
        let moved = apply_local(&state, &random_slocc(n, &mut rng))?;
        t.trial();
        for p in Partition::enumerate(n) {
            t.record(relative_diff(e_monotone(&state, &p)?, e_monotone(&moved, &p)?));
        }
    }
    Ok(t.finish())
}

fn max_spread(values: &[f64]) -> f64 {
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    hi - lo
}

fn permutation(trials: usize, seed: u64) -> Result<Vec<PropertyResult>> {
    let mut tangle = Tracker::new("permutation.three_tangle", PERMUTATION_TOL);
    let mut four = Tracker::new("permutation.four_qubit_single", PERMUTATION_TOL);
    for i in 0..trials {
        let mut rng = stream(seed, 6, i);
        let s3 = random_state(3, &mut rng)?;
        let e3 = (1..=3)
            .map(|k| e_monotone(&s3, &Partition::new(3, vec![k])?))
            .collect::<Result<Vec<_>>>()?;
        tangle.trial();
        tangle.record(max_spread(&e3).max((three_tangle(&s3)? - e3[2]).abs()));

        let s4 = random_state(4, &mut rng)?;
        let e4 = (1..=4)
            .map(|k| e_monotone(&s4, &Partition::new(4, vec![k])?))
            .collect::<Result<Vec<_>>>()?;
        four.trial();
        four.record(max_spread(&e4));
    }
    Ok(vec![tangle.finish(), four.finish()])
}

/// Qubit counts used by the monotonicity experiment.
pub const MONOTONICITY_SIZES: [usize; 3] = [2, 3, 4];

fn monotonicity(trials: usize, seed: u64) -> Result<Vec<PropertyResult>> {
    let mut trackers = [
        (Monotone::E, Tracker::new("monotonicity.e", MONOTONICITY_TOL)),
        (Monotone::D, Tracker::new("monotonicity.d", MONOTONICITY_TOL)),
    ];
    for i in 0..trials {
        let mut rng = stream(seed, 7, i);
        let n = MONOTONICITY_SIZES[i % MONOTONICITY_SIZES.len()];
        let state = random_state(n, &mut rng)?;
        let qubit = rng.random_range(1..=n);
        let partitions = Partition::enumerate(n);
        let partition = &partitions[rng.random_range(0..partitions.len())];
        let povm = random_povm_pair(&mut rng);
        for (monotone, tracker) in trackers.iter_mut() {
            let outcome = monotonicity_trial(&state, qubit, &povm, *monotone, partition)?;
            tracker.trial();
            tracker.record(outcome.increase());
        }
    }
    Ok(trackers.into_iter().map(|(_, t)| t.finish()).collect())
}

fn lmn(trials: usize, seed: u64) -> Result<Vec<PropertyResult>> {
    let mut sum = Tracker::new("lmn.sum_vanishes", LMN_TOL);
    let mut values = Tracker::new("lmn.matches_e2", CAUCHY_BINET_TOL);
    let blocks = [vec![3, 4], vec![2, 4], vec![1, 4]];
    for i in 0..trials {
        let mut rng = stream(seed, 8, i);
        let state = random_state(4, &mut rng)?;
        let inv = four_qubit_lmn(&state)?;
        let scale = inv.l.norm().max(inv.m.norm()).max(inv.n.norm()).max(1.0);
        sum.trial();
        sum.record(inv.sum().norm() / scale);
        values.trial();
        for (value, sel) in [inv.l, inv.m, inv.n].into_iter().zip(blocks.iter()) {
            let e = e_monotone(&state, &Partition::new(4, sel.clone())?)?;
            values.record(relative_diff(16.0 * value.norm(), e));
        }
    }
    Ok(vec![sum.finish(), values.finish()])
}

fn pfaffian_suite(trials: usize, seed: u64) -> Result<Vec<PropertyResult>> {
    let mut square = Tracker::new("pfaffian.square_equals_det", PFAFFIAN_TOL);
    let mut five = Tracker::new("pfaffian.five_qubit_two_paths", PFAFFIAN_TOL);
    let pairs: Vec<Partition> = Partition::enumerate(5).into_iter().filter(|p| p.n() == 2).collect();
    for i in 0..trials {
        let mut rng = stream(seed, 9, i);
        square.trial();
        for dim in [4, 6] {
            let a = gaussian_antisymmetric(dim, &mut rng);
            let pf = linalg::pfaffian(&a)?;
            let det = linalg::determinant(&a)?;
            square.record((pf * pf - det).norm() / det.norm().max(f64::MIN_POSITIVE));
        }
        let state = random_state(5, &mut rng)?;
        let p = &pairs[i % pairs.len()];
        five.trial();
        five.record(relative_diff(five_qubit_e2_pfaffian(&state, p)?, e_monotone(&state, p)?));
    }
    Ok(vec![square.finish(), five.finish()])
}

/// Random normalized states for callers that want the same ensemble.
pub fn random_states(num_qubits: usize, count: usize, seed: u64) -> Result<Vec<PureState>> {
    (0..count)
        .map(|i| random_state(num_qubits, &mut stream(seed, 100 + num_qubits as u64, i)))
        .collect()
}
