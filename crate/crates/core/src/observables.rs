//! Ground-state `<σz_i>` and cross-susceptibilities `χ_ij = ∂<σz_i>/∂h_j`.
//!
//! Two independent routes are provided: the sum over excited states
//!
//! ```text
//! χ_ij = Σ_{n>0} [<0|σz_j|n><n|σz_i|0> + <0|σz_i|n><n|σz_j|0>] / (E_n - E_0)
//! ```
//!
//! and a fourth-order central difference of `<σz_i>` in the bias `h_j`.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::model::{build_hamiltonian, qubits_for_dim, z_up, QubitSystem};
use crate::path::AffinePath;
use crate::scalar::{lit, Real};
use crate::spectrum::{diagonalize, Spectrum};

/// Per-qubit `<σz_i>` and the susceptibility matrix of a ground state.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableRecord<R> {
    pub sz: Vec<R>,
    pub chi: DenseMatrix<R>,
}

pub(crate) fn norm_tol<R: Real>() -> R {
    lit::<R>(1e-9).max(R::epsilon() * lit(100.0))
}

/// Validates a register state and returns its qubit count.
pub(crate) fn check_state<R: Real>(state: &[R]) -> Result<usize> {
    let n = qubits_for_dim(state.len()).ok_or(Error::NotQubitSpace { dim: state.len() })?;
    let norm = state.iter().map(|&x| x * x).sum::<R>().sqrt();
    if !((norm - R::one()).abs() <= norm_tol()) {
        return Err(Error::NotNormalized {
            norm: norm.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(n)
}

fn z_expectation_unchecked<R: Real>(state: &[R], i: usize, n: usize) -> R {
    let mut total = R::zero();
    for (b, &amp) in state.iter().enumerate() {
        let p = amp * amp;
        total = if z_up(b, i, n) { total + p } else { total - p };
    }
    total.max(-R::one()).min(R::one())
}

pub fn sigma_z_expectation<R: Real>(state: &[R], i: usize) -> Result<R> {
    let n = check_state(state)?;
    if i >= n {
        return Err(Error::QubitIndex { index: i, n });
    }
    Ok(z_expectation_unchecked(state, i, n))
}

/// `<σz_i>` for every qubit.
pub fn sigma_z_all<R: Real>(state: &[R]) -> Result<Vec<R>> {
    let n = check_state(state)?;
    Ok((0..n)
        .map(|i| z_expectation_unchecked(state, i, n))
        .collect())
}

/// Row `q` holds `<Ψ_k|σz_{qubits[q]}|Ψ_0>` for every eigenvector `k`.
fn transition_elements<R: Real>(spec: &Spectrum<R>, qubits: &[usize], n: usize) -> DenseMatrix<R> {
    let dim = spec.dim();
    let ground = spec.state(0);
    let mut out = DenseMatrix::zeros(qubits.len(), dim);
    let mut weighted = vec![R::zero(); dim];
    for (q, &i) in qubits.iter().enumerate() {
        for (b, w) in weighted.iter_mut().enumerate() {
            *w = if z_up(b, i, n) { ground[b] } else { -ground[b] };
        }
        let row = out.row_mut(q);
        for (k, slot) in row.iter_mut().enumerate() {
            *slot = spec
                .state(k)
                .iter()
                .zip(&weighted)
                .fold(R::zero(), |acc, (&a, &b)| acc + a * b);
        }
    }
    out
}

fn qubit_count<R: Real>(spec: &Spectrum<R>) -> Result<usize> {
    spec.qubits()
        .ok_or(Error::NotQubitSpace { dim: spec.dim() })
}

fn sos_term<R: Real>(spec: &Spectrum<R>, elems: &DenseMatrix<R>, a: usize, b: usize) -> R {
    let e0 = spec.energies()[0];
    let (ra, rb) = (elems.row(a), elems.row(b));
    let mut total = R::zero();
    for k in 1..spec.dim() {
        let denom = spec.energies()[k] - e0;
        total = total + (rb[k] * ra[k] + ra[k] * rb[k]) / denom;
    }
    total
}

/// Sum-over-states `χ_ij` for a single pair.
pub fn susceptibility_sos<R: Real>(
    spec: &Spectrum<R>,
    i: usize,
    j: usize,
    deg_tol: R,
) -> Result<R> {
    let n = qubit_count(spec)?;
    for q in [i, j] {
        if q >= n {
            return Err(Error::QubitIndex { index: q, n });
        }
    }
    spec.check_nondegenerate(deg_tol)?;
    let elems = transition_elements(spec, &[i, j], n);
    Ok(sos_term(spec, &elems, 0, 1))
}

/// Sum-over-states `χ` for all pairs; symmetric by construction.
pub fn susceptibility_matrix<R: Real>(spec: &Spectrum<R>, deg_tol: R) -> Result<DenseMatrix<R>> {
    let n = qubit_count(spec)?;
    spec.check_nondegenerate(deg_tol)?;
    let qubits: Vec<usize> = (0..n).collect();
    let elems = transition_elements(spec, &qubits, n);
    let mut chi = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = sos_term(spec, &elems, i, j);
            chi[(i, j)] = v;
            chi[(j, i)] = v;
        }
    }
    Ok(chi)
}

/// Ground-state `<σz>` vector and susceptibility matrix.
pub fn observables<R: Real>(spec: &Spectrum<R>, deg_tol: R) -> Result<ObservableRecord<R>> {
    let chi = susceptibility_matrix(spec, deg_tol)?;
    let sz = sigma_z_all(spec.state(0))?;
    Ok(ObservableRecord { sz, chi })
}

/// Finite-difference step `1e-4 · max(1, largest |coefficient|)`.
pub fn default_fd_step<R: Real>(system: &QubitSystem<R>) -> R {
    lit::<R>(1e-4) * R::one().max(system.max_coefficient())
}

fn check_step<R: Real>(step: R) -> Result<()> {
    if step > R::zero() && step.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "finite-difference step must be positive and finite, got {step}"
        )))
    }
}

/// `<σz_i>` of the non-degenerate ground state of `system`, for all `i`.
pub fn ground_sigma_z<R: Real>(system: &QubitSystem<R>, deg_tol: Option<R>) -> Result<Vec<R>> {
    let spec = diagonalize(&build_hamiltonian(system))?;
    let ground = spec.ground_state(spec.resolve_deg_tol(deg_tol))?;
    sigma_z_all(&ground.vector)
}

/// Five-point central derivative of the ground-state `<σz>` vector. `eval`
/// receives the signed displacement; every displaced ground must be
/// nondegenerate.
fn stencil<R: Real>(step: R, mut eval: impl FnMut(R) -> Result<Vec<R>>) -> Result<Vec<R>> {
    check_step(step)?;
    let two = lit::<R>(2.0);
    let p2 = eval(two * step)?;
    let p1 = eval(step)?;
    let m1 = eval(-step)?;
    let m2 = eval(-two * step)?;
    let eight = lit::<R>(8.0);
    let denom = lit::<R>(12.0) * step;
    Ok((0..p1.len())
        .map(|k| (eight * (p1[k] - m1[k]) - (p2[k] - m2[k])) / denom)
        .collect())
}

/// Finite-difference `χ_ij` in the bias `h_j`, with truncation error
/// `O(step⁴)`.
pub fn susceptibility_fd<R: Real>(
    system: &QubitSystem<R>,
    i: usize,
    j: usize,
    step: R,
    deg_tol: Option<R>,
) -> Result<R> {
    let n = system.n();
    for q in [i, j] {
        if q >= n {
            return Err(Error::QubitIndex { index: q, n });
        }
    }
    let d = stencil(step, |offset| {
        ground_sigma_z(&system.with_bias_offset(j, offset)?, deg_tol)
    })?;
    Ok(d[i])
}

/// `∂<σz_i>/∂λ` at `lambda0` for every qubit, by the same stencil as
/// [`susceptibility_fd`].
pub fn lambda_susceptibilities<R: Real>(
    path: &AffinePath<R>,
    lambda0: R,
    step: R,
    deg_tol: Option<R>,
) -> Result<Vec<R>> {
    stencil(step, |offset| {
        ground_sigma_z(&path.at(lambda0 + offset)?, deg_tol)
    })
}

/// `χ_i^λ = ∂<σz_i>/∂λ` at `lambda0`.
pub fn lambda_susceptibility<R: Real>(
    path: &AffinePath<R>,
    i: usize,
    lambda0: R,
    step: R,
    deg_tol: Option<R>,
) -> Result<R> {
    let n = path.n();
    if i >= n {
        return Err(Error::QubitIndex { index: i, n });
    }
    Ok(lambda_susceptibilities(path, lambda0, step, deg_tol)?[i])
}
