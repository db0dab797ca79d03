//! Qubit systems and the transverse Ising Hamiltonian
//!
//! ```text
//! H = -1/2 Σ_i Δ_i σx_i - Σ_i h_i σz_i + Σ_{i<j} J_ij σz_i σz_j
//! ```
//!
//! Basis convention shared by every module: a basis index `b` in `0..2^n`
//! stores qubit `i` in bit `n - 1 - i`, so qubit 0 is the most significant
//! bit, and `σz_i |b> = +|b>` when that bit is clear.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// Hard cap on the number of qubits (dense dimension 4096).
pub const MAX_QUBITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X,
    Z,
}

/// Bit mask selecting qubit `i` inside a basis index of an `n`-qubit register.
#[inline]
pub fn qubit_mask(i: usize, n: usize) -> usize {
    1 << (n - 1 - i)
}

/// Eigenvalue of `σz_i` on basis state `b`: `true` for +1, `false` for -1.
#[inline]
pub fn z_up(b: usize, i: usize, n: usize) -> bool {
    b & qubit_mask(i, n) == 0
}

/// Number of qubits for a register of dimension `dim`, if `dim` is a power of two.
pub fn qubits_for_dim(dim: usize) -> Option<usize> {
    dim.is_power_of_two().then(|| dim.trailing_zeros() as usize)
}

fn check_qubit_count(n: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::QubitCount { n, max: MAX_QUBITS })
    }
}

/// N qubits with tunneling amplitudes, z-biases and a symmetric,
/// zero-diagonal coupling matrix. Always valid once constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitSystem<T> {
    delta: Vec<T>,
    bias: Vec<T>,
    coupling: DenseMatrix<T>,
}

impl<T: Scalar> QubitSystem<T> {
    /// Builds a system from an upper-triangle coupling list `(i, j, J_ij)`
    /// with `i < j`. Repeated identical entries are accepted; repeated
    /// entries with different values are rejected.
    pub fn new(delta: Vec<T>, bias: Vec<T>, couplings: &[(usize, usize, T)]) -> Result<Self> {
        let n = delta.len();
        check_qubit_count(n)?;
        let mut coupling = DenseMatrix::zeros(n, n);
        let mut seen = vec![false; n * n];
        for &(i, j, value) in couplings {
            if i >= n {
                return Err(Error::QubitIndex { index: i, n });
            }
            if j >= n {
                return Err(Error::QubitIndex { index: j, n });
            }
            if i >= j {
                return Err(Error::CouplingOrder { i, j });
            }
            if seen[i * n + j] && coupling[(i, j)] != value {
                return Err(Error::ConflictingCoupling { i, j });
            }
            seen[i * n + j] = true;
            coupling[(i, j)] = value;
            coupling[(j, i)] = value;
        }
        Self::from_coupling_matrix(delta, bias, coupling)
    }

    /// Builds a system from a full coupling matrix, which must be symmetric
    /// with a zero diagonal.
    pub fn from_coupling_matrix(
        delta: Vec<T>,
        bias: Vec<T>,
        coupling: DenseMatrix<T>,
    ) -> Result<Self> {
        let n = delta.len();
        check_qubit_count(n)?;
        if bias.len() != n {
            return Err(Error::LengthMismatch {
                what: "bias vector",
                got: bias.len(),
                expected: n,
            });
        }
        if coupling.rows() != n || coupling.cols() != n {
            return Err(Error::LengthMismatch {
                what: "coupling matrix",
                got: coupling.rows().max(coupling.cols()),
                expected: n,
            });
        }
        if !delta.iter().all(Scalar::is_finite_value) {
            return Err(Error::NonFinite {
                what: "tunneling amplitudes",
            });
        }
        if !bias.iter().all(Scalar::is_finite_value) {
            return Err(Error::NonFinite { what: "biases" });
        }
        if !coupling.as_slice().iter().all(Scalar::is_finite_value) {
            return Err(Error::NonFinite { what: "couplings" });
        }
        for i in 0..n {
            if coupling[(i, i)] != T::zero() {
                return Err(Error::DiagonalCoupling { i });
            }
            for j in i + 1..n {
                if coupling[(i, j)] != coupling[(j, i)] {
                    return Err(Error::AsymmetricCoupling { i, j });
                }
            }
        }
        Ok(Self {
            delta,
            bias,
            coupling,
        })
    }

    /// `n` uncoupled qubits with every coefficient zero.
    pub fn zeros(n: usize) -> Result<Self> {
        check_qubit_count(n)?;
        Ok(Self {
            delta: vec![T::zero(); n],
            bias: vec![T::zero(); n],
            coupling: DenseMatrix::zeros(n, n),
        })
    }

    pub fn n(&self) -> usize {
        self.delta.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    pub fn delta(&self) -> &[T] {
        &self.delta
    }

    pub fn bias(&self) -> &[T] {
        &self.bias
    }

    pub fn coupling(&self, i: usize, j: usize) -> T {
        self.coupling[(i, j)]
    }

    pub fn coupling_matrix(&self) -> &DenseMatrix<T> {
        &self.coupling
    }

    /// Nonzero couplings as `(i, j, J_ij)` with `i < j`, in row order.
    pub fn couplings(&self) -> Vec<(usize, usize, T)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let value = self.coupling[(i, j)];
                if value != T::zero() {
                    out.push((i, j, value));
                }
            }
        }
        out
    }

    /// Largest coefficient magnitude over Δ, h and J.
    pub fn max_coefficient(&self) -> T {
        self.delta
            .iter()
            .chain(&self.bias)
            .chain(self.coupling.as_slice())
            .map(Scalar::magnitude)
            .fold(T::zero(), |m, x| if x > m { x } else { m })
    }

    /// Copy of the system with `h_i` shifted by `offset`.
    pub fn with_bias_offset(&self, i: usize, offset: T) -> Result<Self> {
        let n = self.n();
        if i >= n {
            return Err(Error::QubitIndex { index: i, n });
        }
        let mut out = self.clone();
        out.bias[i] = out.bias[i] + offset;
        if !out.bias[i].is_finite_value() {
            return Err(Error::NonFinite { what: "biases" });
        }
        Ok(out)
    }

    /// `self + scale * other`, coefficient by coefficient.
    pub fn add_scaled(&self, other: &Self, scale: T) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::PathQubitMismatch {
                base: self.n(),
                direction: other.n(),
            });
        }
        let combine = |a: &[T], b: &[T]| -> Vec<T> {
            a.iter().zip(b).map(|(&x, &y)| x + scale * y).collect()
        };
        let n = self.n();
        let coupling = DenseMatrix::from_fn(n, n, |r, c| {
            if r == c {
                T::zero()
            } else {
                self.coupling[(r, c)] + scale * other.coupling[(r, c)]
            }
        });
        Self::from_coupling_matrix(
            combine(&self.delta, &other.delta),
            combine(&self.bias, &other.bias),
            coupling,
        )
    }
}

/// `σ_axis` acting on qubit `i` of an `n`-qubit register, identity elsewhere.
pub fn embed_pauli<T: Scalar>(axis: PauliAxis, i: usize, n: usize) -> Result<DenseMatrix<T>> {
    check_qubit_count(n)?;
    if i >= n {
        return Err(Error::QubitIndex { index: i, n });
    }
    let dim = 1usize << n;
    let mask = qubit_mask(i, n);
    let mut m = DenseMatrix::zeros(dim, dim);
    for b in 0..dim {
        match axis {
            PauliAxis::Z => m[(b, b)] = if b & mask == 0 { T::one() } else { -T::one() },
            PauliAxis::X => m[(b, b ^ mask)] = T::one(),
        }
    }
    Ok(m)
}

/// Dense transverse Ising Hamiltonian of `system`.
pub fn build_hamiltonian<T: Scalar>(system: &QubitSystem<T>) -> DenseMatrix<T> {
    let n = system.n();
    let dim = system.dim();
    let half = T::half();
    let couplings = system.couplings();
    let mut h = DenseMatrix::zeros(dim, dim);
    for b in 0..dim {
        let sign = |i: usize| if z_up(b, i, n) { T::one() } else { -T::one() };
        let mut diag = T::zero();
        for (i, &hi) in system.bias().iter().enumerate() {
            diag = diag - hi * sign(i);
        }
        for &(i, j, jij) in &couplings {
            diag = diag + jij * sign(i) * sign(j);
        }
        h[(b, b)] = diag;
        for (i, &d) in system.delta().iter().enumerate() {
            if d != T::zero() {
                h[(b, b ^ qubit_mask(i, n))] = -(half * d);
            }
        }
    }
    h
}
