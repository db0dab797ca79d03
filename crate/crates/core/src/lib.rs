//! Ground-state entanglement in transverse-field Ising qubit systems.
//!
//! The crate builds dense Hamiltonians
//! `H = -1/2 Σ Δ_i σx_i - Σ h_i σz_i + Σ_{i<j} J_ij σz_i σz_j` for up to
//! twelve qubits, diagonalizes them exactly and evaluates
//! susceptibility-based entanglement witnesses over every bipartition. A
//! Schmidt-decomposition oracle provides brute-force ground truth, and the
//! sweep module certifies entanglement along parameter paths from how the
//! ground-state `<σz_i>` move through an anticrossing.
//!
//! Everything is generic over the scalar type. Hamiltonian assembly works for
//! any [`Scalar`] (including exact rationals); the eigensolver and everything
//! built on it needs a [`Real`]. The aliases below fix the common `f64` case.
//!
//! ```
//! use witness_lab::{build_hamiltonian, diagonalize, witness_report, System};
//!
//! let triangle = System::new(
//!     vec![0.2; 3],
//!     vec![0.0; 3],
//!     &[(0, 1, -1.0), (1, 2, -1.0), (0, 2, -1.0)],
//! )?;
//! let spectrum = diagonalize(&build_hamiltonian(&triangle))?;
//! let report = witness_report(&spectrum, &triangle, spectrum.default_deg_tol())?;
//! assert!(report.w_global > 0.0);
//! # Ok::<(), witness_lab::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod linalg;
pub mod matrix;
pub mod model;
pub mod observables;
pub mod oracle;
pub mod path;
pub mod scalar;
pub mod spectrum;
pub mod sweep;
pub mod witness;

pub use error::{Error, Result};
pub use matrix::DenseMatrix;
pub use model::{build_hamiltonian, embed_pauli, PauliAxis, QubitSystem, MAX_QUBITS};
pub use observables::{
    default_fd_step, lambda_susceptibilities, lambda_susceptibility, observables, sigma_z_all,
    sigma_z_expectation, susceptibility_fd, susceptibility_matrix, susceptibility_sos,
    ObservableRecord,
};
pub use oracle::{
    check_lemma1, is_fully_separable, is_separable, schmidt_coefficients, SchmidtData,
    DEFAULT_SCHMIDT_TOL,
};
pub use path::AffinePath;
pub use scalar::{Real, Scalar};
pub use spectrum::{default_deg_tol, diagonalize, eigenvalues, GroundState, Spectrum};
pub use sweep::{
    certify_entanglement_on_path, detect_anticrossing, linspace, run_sweep, Anticrossing,
    CertificationReport, OracleConfirmation, PairVariation, SweepConfig, SweepPoint, SweepResult,
    DEFAULT_VAR_TOL,
};
pub use witness::{
    enumerate_bipartitions, witness_ab, witness_global, witness_lambda, witness_report,
    witness_tilde_ab, Bipartition, CutWitness, WitnessReport,
};

/// Double-precision qubit system.
pub type System = QubitSystem<f64>;
/// Exact rational qubit system, for Hamiltonian assembly only.
pub type RationalSystem = QubitSystem<num_rational::Ratio<i64>>;
pub type Path = AffinePath<f64>;
pub type Matrix = DenseMatrix<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type Ground = GroundState<f64>;
pub type Observables = ObservableRecord<f64>;
pub type Schmidt = SchmidtData<f64>;
pub type Report = WitnessReport<f64>;
pub type Cut = CutWitness<f64>;
pub type Sweep = SweepConfig<f64>;
pub type SweepOutput = SweepResult<f64>;
pub type Certification = CertificationReport<f64>;
