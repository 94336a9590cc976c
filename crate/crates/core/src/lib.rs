//! Bipartition-based entanglement monotones of N-qubit pure states.
//!
//! Selecting `n <= N/2` qubits turns a state into an `L × l` matrix `Z`
//! (`L = 2^(N-n)`, `l = 2^n`) whose column span is a point of the
//! Grassmannian `Gr(L, l)`. Its maximal minors are the Plücker coordinates.
//! Two families of invariants follow from them:
//!
//! * `D = l² det(Z†Z)^(2/l)`, invariant under local unitaries;
//! * `E = l² |det(Zᵀ g Z)|^(2/l)` with `g = ε^{⊗(N-n)}`, invariant under
//!   `SL(2,ℂ)^{⊗N}`.
//!
//! Concurrence, three-tangle, the four-qubit `H`, `L`, `M`, `N` and the
//! N-tangle are special cases. The [`verify`] module exercises every
//! identity numerically.

pub mod error;
pub mod linalg;
pub mod monotones;
pub mod partition;
pub mod plucker;
pub mod state;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{determinant, maximal_minors, pfaffian, ComplexMatrix};
pub use monotones::{
    all_partitions_report, concurrence_squared, d_monotone, e_monotone, five_qubit_e2_pfaffian,
    four_qubit_h, four_qubit_lmn, n_tangle, partition_report, q1_average, three_tangle,
    InvariantReport, Monotone,
};
pub use partition::{bilinear, epsilon_apply, reshape, EpsilonForm, Partition};
pub use plucker::{gram_bilinear, gram_hermitian, plucker_coordinates, PluckerVector};
pub use state::{make_named_state, normalize, parse_state, serialize_state, PureState, StateKind, StateLabel};

pub use num_complex::Complex64;
