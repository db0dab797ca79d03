//! Full eigendecomposition, ground-state extraction and gap bookkeeping.

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::DenseMatrix;
use crate::model::qubits_for_dim;
use crate::scalar::{lit, Real};

/// Largest matrix dimension accepted by the dense solver (12 qubits).
pub const MAX_DIM: usize = 4096;

/// Eigenvalues in ascending order with orthonormal eigenvectors.
///
/// Eigenvector `k` is stored as row `k` of [`Spectrum::states`] and has its
/// first largest-magnitude component positive, which makes the output a
/// deterministic function of the input matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<R> {
    energies: Vec<R>,
    states: DenseMatrix<R>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundState<R> {
    pub energy: R,
    pub vector: Vec<R>,
    /// `E_1 - E_0`; infinite for a one-dimensional space.
    pub gap: R,
}

fn check_symmetric<R: Real>(h: &DenseMatrix<R>) -> Result<()> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let dim = h.rows();
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim, max: MAX_DIM });
    }
    if !h.as_slice().iter().all(|x| x.is_finite()) {
        return Err(Error::NonFinite {
            what: "matrix entries",
        });
    }
    let rel = lit::<R>(1e-12).max(R::epsilon() * lit(16.0));
    let tol = rel * R::one().max(h.max_abs());
    for r in 0..dim {
        for c in r + 1..dim {
            let diff = (h[(r, c)] - h[(c, r)]).abs();
            if diff > tol {
                return Err(Error::NotSymmetric {
                    row: r,
                    col: c,
                    diff: diff.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
    }
    Ok(())
}

/// Diagonalizes a real symmetric matrix.
pub fn diagonalize<R: Real>(h: &DenseMatrix<R>) -> Result<Spectrum<R>> {
    check_symmetric(h)?;
    let (energies, states) = linalg::symmetric_eigen(h.clone())?;
    Ok(Spectrum { energies, states })
}

/// Ascending eigenvalues only. Takes the matrix by value and reduces it in
/// place, so peak memory stays at one dense matrix.
pub fn eigenvalues<R: Real>(h: DenseMatrix<R>) -> Result<Vec<R>> {
    check_symmetric(&h)?;
    linalg::symmetric_eigenvalues(h)
}

/// Scale-free degeneracy tolerance `1e-9 · max(1, E_max - E_0)`.
pub fn default_deg_tol<R: Real>(energies: &[R]) -> R {
    let width = match (energies.first(), energies.last()) {
        (Some(&lo), Some(&hi)) => hi - lo,
        _ => R::zero(),
    };
    lit::<R>(1e-9) * R::one().max(width)
}

/// `E_1 - E_0`, or infinity when there is a single level.
pub fn gap_of<R: Real>(energies: &[R]) -> R {
    if energies.len() < 2 {
        R::infinity()
    } else {
        energies[1] - energies[0]
    }
}

impl<R: Real> Spectrum<R> {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// Number of qubits when the dimension is a power of two.
    pub fn qubits(&self) -> Option<usize> {
        qubits_for_dim(self.dim())
    }

    pub fn energies(&self) -> &[R] {
        &self.energies
    }

    /// Eigenvector paired with `energies()[k]`.
    pub fn state(&self, k: usize) -> &[R] {
        self.states.row(k)
    }

    /// Eigenvectors as rows.
    pub fn states(&self) -> &DenseMatrix<R> {
        &self.states
    }

    pub fn gap(&self) -> R {
        gap_of(&self.energies)
    }

    pub fn default_deg_tol(&self) -> R {
        default_deg_tol(&self.energies)
    }

    /// Resolves an optional tolerance against this spectrum's default.
    pub fn resolve_deg_tol(&self, deg_tol: Option<R>) -> R {
        deg_tol.unwrap_or_else(|| self.default_deg_tol())
    }

    /// Fails with [`Error::DegenerateGround`] unless `E_1 - E_0 > deg_tol`.
    pub fn check_nondegenerate(&self, deg_tol: R) -> Result<()> {
        if !(deg_tol > R::zero()) {
            return Err(Error::InvalidParameter(format!(
                "degeneracy tolerance must be positive, got {deg_tol}"
            )));
        }
        let gap = self.gap();
        if gap > deg_tol {
            Ok(())
        } else {
            Err(Error::DegenerateGround {
                gap: gap.to_f64().unwrap_or(f64::NAN),
                tol: deg_tol.to_f64().unwrap_or(f64::NAN),
            })
        }
    }

    pub fn ground_state(&self, deg_tol: R) -> Result<GroundState<R>> {
        self.check_nondegenerate(deg_tol)?;
        Ok(GroundState {
            energy: self.energies[0],
            vector: self.state(0).to_vec(),
            gap: self.gap(),
        })
    }
}
