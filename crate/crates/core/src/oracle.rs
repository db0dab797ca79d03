//! Brute-force separability checks used as ground truth for the witnesses.

use crate::error::{Error, Result};
use crate::linalg::singular_values;
use crate::matrix::DenseMatrix;
use crate::model::{build_hamiltonian, qubit_mask, QubitSystem};
use crate::observables::{check_state, sigma_z_all};
use crate::scalar::{lit, Real};
use crate::witness::{coupling_threshold, Bipartition};

/// Singular values below this count as zero when computing Schmidt rank.
pub const DEFAULT_SCHMIDT_TOL: f64 = 1e-7;

/// Largest eigen-residual accepted by [`check_lemma1`].
pub const EIGENSTATE_RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtData<R> {
    pub partition: Bipartition,
    /// Descending, nonnegative.
    pub coefficients: Vec<R>,
    pub rank: usize,
}

/// Reshapes `state` into a `2^|A| × 2^|B|` amplitude matrix. Within each
/// side qubits keep ascending order, lowest index most significant.
fn reshape<R: Real>(state: &[R], partition: &Bipartition) -> DenseMatrix<R> {
    let n = partition.n();
    let a = partition.subset_a();
    let b = partition.subset_b();
    let mut m = DenseMatrix::zeros(1 << a.len(), 1 << b.len());
    let index = |basis: usize, qubits: &[usize]| {
        qubits.iter().fold(0usize, |acc, &q| {
            (acc << 1) | usize::from(basis & qubit_mask(q, n) != 0)
        })
    };
    for (basis, &amp) in state.iter().enumerate() {
        m[(index(basis, &a), index(basis, &b))] = amp;
    }
    m
}

pub fn schmidt_coefficients<R: Real>(
    state: &[R],
    partition: &Bipartition,
    tol: R,
) -> Result<SchmidtData<R>> {
    let n = check_state(state)?;
    if partition.n() != n {
        return Err(Error::LengthMismatch {
            what: "bipartition qubit count",
            got: partition.n(),
            expected: n,
        });
    }
    let coefficients = singular_values(&reshape(state, partition));
    let rank = coefficients.iter().filter(|&&s| s > tol).count();
    Ok(SchmidtData {
        partition: *partition,
        coefficients,
        rank,
    })
}

/// Schmidt rank one across `partition`.
pub fn is_separable<R: Real>(state: &[R], partition: &Bipartition, tol: R) -> Result<bool> {
    Ok(schmidt_coefficients(state, partition, tol)?.rank == 1)
}

/// Largest second Schmidt coefficient over the single-qubit cuts `{i}|rest`;
/// zero exactly when the state is a full product.
pub fn single_qubit_entanglement<R: Real>(state: &[R]) -> Result<R> {
    let n = check_state(state)?;
    let mut worst = R::zero();
    if n < 2 {
        return Ok(worst);
    }
    for i in 0..n {
        let data = schmidt_coefficients(state, &Bipartition::single(i, n)?, R::zero())?;
        if let Some(&second) = data.coefficients.get(1) {
            worst = worst.max(second);
        }
    }
    Ok(worst)
}

/// Full product form, tested through the `n` single-qubit cuts.
pub fn is_fully_separable<R: Real>(state: &[R], tol: R) -> Result<bool> {
    Ok(single_qubit_entanglement(state)? <= tol)
}

/// For a fully separable eigenstate, lists coupled pairs in which neither
/// qubit is pinned to a `σz` eigenstate (`|<σz>| ≥ 1 - tol`). An empty list
/// means the state is consistent with the pinned-qubit lemma.
pub fn check_lemma1<R: Real>(
    state: &[R],
    system: &QubitSystem<R>,
    tol: R,
) -> Result<Vec<(usize, usize)>> {
    let n = check_state(state)?;
    if n != system.n() {
        return Err(Error::LengthMismatch {
            what: "state qubit count",
            got: n,
            expected: system.n(),
        });
    }
    let h = build_hamiltonian(system);
    let hv = h.matvec(state);
    let energy = hv.iter().zip(state).map(|(&a, &b)| a * b).sum::<R>();
    let residual = hv
        .iter()
        .zip(state)
        .map(|(&a, &b)| (a - energy * b) * (a - energy * b))
        .sum::<R>()
        .sqrt();
    if residual > lit(EIGENSTATE_RESIDUAL_TOL) {
        return Err(Error::NotEigenstate {
            residual: residual.to_f64().unwrap_or(f64::NAN),
        });
    }
    if !is_fully_separable(state, tol)? {
        return Err(Error::NotFullySeparable);
    }
    let sz = sigma_z_all(state)?;
    let pinned = R::one() - tol;
    let thr = coupling_threshold(system);
    Ok(system
        .couplings()
        .into_iter()
        .filter(|&(_, _, j)| j.abs() > thr)
        .filter(|&(i, j, _)| sz[i].abs().max(sz[j].abs()) < pinned)
        .map(|(i, j, _)| (i, j))
        .collect())
}
