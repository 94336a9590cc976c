//! LU monotones `D` and SLOCC monotones `E` for a bipartition.
//!
//! With `Z` the `L × l` reshape and `g = ε^{⊗(N-n)}`:
//!
//! ```text
//! D = l² · det(Z†Z)^(2/l)
//! E = l² · |det(Zᵀ g Z)|^(2/l)
//! ```
//!
//! Both are homogeneous of degree four in the amplitudes. `D` is invariant
//! under local unitaries (and any `U(l)` on the selected block), `E` under
//! `SL(2,ℂ)^{⊗N}`. On unit-norm states `0 <= E <= D <= 1`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::partition::{reshape, Partition};
use crate::plucker::{gram_bilinear, gram_hermitian};
use crate::state::PureState;

/// Sign applied to the determinant of the `{2,4}` reshape to obtain `M`.
pub const M_SIGN: f64 = -1.0;
/// Sign applied to the determinant of the `{1,4}` reshape to obtain `N`.
pub const N_SIGN: f64 = 1.0;

/// A reshape counts as rank deficient when `det(Z†Z)` falls below this
/// fraction of `(tr(Z†Z)/l)^l`, its maximum for the given norm.
pub const RANK_DEFICIENCY_RATIO: f64 = 1e-10;

/// Which monotone family to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monotone {
    /// Local-unitary monotone built from the Hermitian Gram matrix.
    D,
    /// SLOCC monotone built from the ε-bilinear Gram matrix.
    E,
}

impl Monotone {
    pub fn evaluate(self, state: &PureState, partition: &Partition) -> Result<f64> {
        match self {
            Monotone::D => d_monotone(state, partition),
            Monotone::E => e_monotone(state, partition),
        }
    }
}

impl fmt::Display for Monotone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monotone::D => "d",
            Monotone::E => "e",
        })
    }
}

impl FromStr for Monotone {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d" | "D" => Ok(Monotone::D),
            "e" | "E" => Ok(Monotone::E),
            other => Err(Error::Argument(format!("unknown monotone `{other}`"))),
        }
    }
}

fn power_form(l: usize, det_abs: f64) -> f64 {
    let l = l as f64;
    l * l * det_abs.powf(2.0 / l)
}

fn hermitian_det(z: &ComplexMatrix) -> Result<f64> {
    let det = linalg::determinant(&gram_hermitian(z))?;
    Ok(det.re.max(0.0))
}

fn bilinear_det(z: &ComplexMatrix, partition: &Partition) -> Result<Complex64> {
    linalg::determinant(&gram_bilinear(z, partition.m())?)
}

pub fn d_monotone(state: &PureState, partition: &Partition) -> Result<f64> {
    let z = reshape(state, partition)?;
    Ok(power_form(partition.cols(), hermitian_det(&z)?))
}

pub fn e_monotone(state: &PureState, partition: &Partition) -> Result<f64> {
    let z = reshape(state, partition)?;
    Ok(power_form(partition.cols(), bilinear_det(&z, partition)?.norm()))
}

fn require_qubits(state: &PureState, n: usize, what: &str) -> Result<()> {
    if state.num_qubits() != n {
        return Err(Error::Argument(format!(
            "{what} is defined for {n} qubits, got {}",
            state.num_qubits()
        )));
    }
    Ok(())
}

/// `4 |det C|²` for a two-qubit state.
pub fn concurrence_squared(state: &PureState) -> Result<f64> {
    require_qubits(state, 2, "concurrence")?;
    let c = state.amplitudes();
    let det = c[0] * c[3] - c[1] * c[2];
    Ok(4.0 * det.norm_sqr())
}

pub fn three_tangle(state: &PureState) -> Result<f64> {
    require_qubits(state, 3, "three-tangle")?;
    e_monotone(state, &Partition::new(3, vec![3])?)
}

/// The degree-two four-qubit invariant `H`.
pub fn four_qubit_h(state: &PureState) -> Result<Complex64> {
    require_qubits(state, 4, "H")?;
    let c = state.amplitudes();
    Ok(c[0] * c[15] - c[2] * c[13] - c[4] * c[11] + c[6] * c[9] - c[8] * c[7]
        + c[10] * c[5]
        + c[12] * c[3]
        - c[14] * c[1])
}

/// The degree-four four-qubit invariants, with `L + M + N = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourQubitLmn {
    pub l: Complex64,
    pub m: Complex64,
    pub n: Complex64,
}

impl FourQubitLmn {
    pub fn sum(&self) -> Complex64 {
        self.l + self.m + self.n
    }
}

/// `L`, `M`, `N` as signed determinants of the `{3,4}`, `{2,4}` and `{1,4}`
/// square reshapes; see [`M_SIGN`] and [`N_SIGN`].
pub fn four_qubit_lmn(state: &PureState) -> Result<FourQubitLmn> {
    require_qubits(state, 4, "L, M, N")?;
    let det_of = |sel: Vec<usize>| -> Result<Complex64> {
        linalg::determinant(&reshape(state, &Partition::new(4, sel)?)?)
    };
    Ok(FourQubitLmn {
        l: det_of(vec![3, 4])?,
        m: det_of(vec![2, 4])? * M_SIGN,
        n: det_of(vec![1, 4])? * N_SIGN,
    })
}

/// `E` for the partition `{N}`.
pub fn n_tangle(state: &PureState) -> Result<f64> {
    let n = state.num_qubits();
    if n < 2 {
        return Err(Error::Argument("n-tangle needs at least 2 qubits".into()));
    }
    e_monotone(state, &Partition::new(n, vec![n])?)
}

/// `16 |Pf(Zᵀ g Z)|` for a two-qubit block of a five-qubit state, with the
/// 4×4 Pfaffian written out term by term.
pub fn five_qubit_e2_pfaffian(state: &PureState, partition: &Partition) -> Result<f64> {
    require_qubits(state, 5, "five-qubit E2")?;
    if partition.num_qubits() != 5 || partition.n() != 2 {
        return Err(Error::Argument(format!(
            "five-qubit E2 needs a two-qubit block, got {partition}"
        )));
    }
    let z = reshape(state, partition)?;
    let g = gram_bilinear(&z, partition.m())?;
    let pf = g[(0, 1)] * g[(2, 3)] - g[(0, 2)] * g[(1, 3)] + g[(0, 3)] * g[(1, 2)];
    Ok(16.0 * pf.norm())
}

/// Mean single-qubit `D` over the three qubits.
pub fn q1_average(state: &PureState) -> Result<f64> {
    require_qubits(state, 3, "Q1")?;
    let mut total = 0.0;
    for k in 1..=3 {
        total += d_monotone(state, &Partition::new(3, vec![k])?)?;
    }
    Ok(total / 3.0)
}

/// Names of the auxiliary complex invariants attached to reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxName {
    H,
    L,
    M,
    N,
    Pfaffian,
}

impl AuxName {
    pub fn as_str(self) -> &'static str {
        match self {
            AuxName::H => "H",
            AuxName::L => "L",
            AuxName::M => "M",
            AuxName::N => "N",
            AuxName::Pfaffian => "pfaffian",
        }
    }
}

impl fmt::Display for AuxName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxInvariant {
    pub name: AuxName,
    pub value: Complex64,
}

/// Monotone values for one partition of one state.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub partition: Partition,
    pub d_value: f64,
    pub e_value: f64,
    pub aux: Option<AuxInvariant>,
    pub rank_deficient: bool,
}

impl InvariantReport {
    pub fn label(&self) -> String {
        self.partition.label()
    }

    pub fn n(&self) -> usize {
        self.partition.n()
    }

    pub fn big_l(&self) -> usize {
        self.partition.rows()
    }

    pub fn small_l(&self) -> usize {
        self.partition.cols()
    }
}

/// Evaluates both monotones and the applicable auxiliary invariant.
pub fn partition_report(state: &PureState, partition: &Partition) -> Result<InvariantReport> {
    let z = reshape(state, partition)?;
    let l = partition.cols();
    let herm = gram_hermitian(&z);
    let herm_det = linalg::determinant(&herm)?.re.max(0.0);
    let bil = gram_bilinear(&z, partition.m())?;
    let bil_det = linalg::determinant(&bil)?;

    let trace: f64 = (0..l).map(|a| herm[(a, a)].re).sum();
    let ceiling = (trace / l as f64).powi(l as i32);
    let rank_deficient = trace == 0.0 || herm_det <= RANK_DEFICIENCY_RATIO * ceiling;

    let aux = aux_invariant(state, partition, &bil)?;
    Ok(InvariantReport {
        partition: partition.clone(),
        d_value: power_form(l, herm_det),
        e_value: power_form(l, bil_det.norm()),
        aux,
        rank_deficient,
    })
}

fn aux_invariant(
    state: &PureState,
    partition: &Partition,
    bil: &ComplexMatrix,
) -> Result<Option<AuxInvariant>> {
    let n_qubits = state.num_qubits();
    let aux = |name, value| Some(AuxInvariant { name, value });
    if n_qubits == 4 && partition.n() == 1 {
        return Ok(aux(AuxName::H, bil[(0, 1)]));
    }
    if n_qubits == 4 && partition.n() == 2 {
        let lmn = four_qubit_lmn(state)?;
        return Ok(match partition.selected() {
            [3, 4] | [1, 2] => aux(AuxName::L, lmn.l),
            [2, 4] | [1, 3] => aux(AuxName::M, lmn.m),
            [1, 4] | [2, 3] => aux(AuxName::N, lmn.n),
            _ => None,
        });
    }
    if partition.m() % 2 == 1 && partition.cols() <= linalg::PFAFFIAN_MAX_DIM {
        return Ok(aux(AuxName::Pfaffian, linalg::pfaffian(bil)?));
    }
    Ok(None)
}

/// One report per admissible partition, complementary halves counted once.
pub fn all_partitions_report(state: &PureState) -> Result<Vec<InvariantReport>> {
    Partition::enumerate(state.num_qubits())
        .iter()
        .map(|p| partition_report(state, p))
        .collect()
}
