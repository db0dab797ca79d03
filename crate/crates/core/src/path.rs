//! Affine coefficient paths `λ ↦ base + λ · direction`.

use crate::error::{Error, Result};
use crate::model::QubitSystem;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct AffinePath<T> {
    base: QubitSystem<T>,
    direction: QubitSystem<T>,
}

impl<T: Scalar> AffinePath<T> {
    pub fn new(base: QubitSystem<T>, direction: QubitSystem<T>) -> Result<Self> {
        if base.n() != direction.n() {
            return Err(Error::PathQubitMismatch {
                base: base.n(),
                direction: direction.n(),
            });
        }
        Ok(Self { base, direction })
    }

    /// `h_i = base_i + λ` on every qubit.
    pub fn uniform_bias(base: QubitSystem<T>) -> Self {
        let n = base.n();
        let direction = QubitSystem::new(vec![T::zero(); n], vec![T::one(); n], &[])
            .expect("unit bias direction is valid");
        Self { base, direction }
    }

    /// `h_qubit = base_qubit + λ`, everything else fixed.
    pub fn bias_on(base: QubitSystem<T>, qubit: usize) -> Result<Self> {
        let n = base.n();
        let direction = QubitSystem::zeros(n)?.with_bias_offset(qubit, T::one())?;
        Ok(Self { base, direction })
    }

    pub fn constant(base: QubitSystem<T>) -> Self {
        let direction = QubitSystem::zeros(base.n()).expect("base already validated");
        Self { base, direction }
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn base(&self) -> &QubitSystem<T> {
        &self.base
    }

    pub fn direction(&self) -> &QubitSystem<T> {
        &self.direction
    }

    /// The system at parameter `lambda`.
    pub fn at(&self, lambda: T) -> Result<QubitSystem<T>> {
        self.base
            .add_scaled(&self.direction, lambda)
            .map_err(|e| Error::InvalidPathOutput {
                lambda: lambda.to_f64_lossy(),
                reason: e.to_string(),
            })
    }

    /// Upper bound on `‖dH/dλ‖₂`: Σ|dΔ_i|/2 + Σ|dh_i| + Σ_{i<j}|dJ_ij|.
    pub fn slope_bound(&self) -> T {
        let d = &self.direction;
        let mut total = T::zero();
        for &x in d.delta() {
            total = total + T::half() * x.magnitude();
        }
        for &x in d.bias() {
            total = total + x.magnitude();
        }
        for (_, _, x) in d.couplings() {
            total = total + x.magnitude();
        }
        total
    }
}
