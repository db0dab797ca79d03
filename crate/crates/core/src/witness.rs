//! Susceptibility-based entanglement witnesses.
//!
//! For a cut `A|B` the signed cross sum `W̃_AB = Σ_{i∈A, j∈B} J_ij χ_ij`
//! vanishes whenever the non-degenerate ground state of a real transverse
//! Ising Hamiltonian factorizes across the cut, so a nonzero value certifies
//! entanglement between `A` and `B`. `W_AB` normalizes it into `[0, 1)` and
//! `W_χ` combines every cut through a geometric mean.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::model::{QubitSystem, MAX_QUBITS};
use crate::observables::{lambda_susceptibilities, susceptibility_matrix};
use crate::path::AffinePath;
use crate::scalar::{lit, Real};
use crate::spectrum::Spectrum;

/// Cuts with `|W̃_AB|` at or below this are treated as silent when forming
/// the global witness.
pub const SILENT_CUT_TOL: f64 = 1e-8;

/// A cut `A|B` of an `n`-qubit register. `A` always contains qubit 0, so
/// each unordered cut has exactly one representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    mask: u32,
    n: usize,
}

impl Bipartition {
    /// `mask` bit `i` set means qubit `i` belongs to `A`.
    pub fn new(mask: u32, n: usize) -> Result<Self> {
        if !(2..=MAX_QUBITS).contains(&n) {
            return Err(Error::TooFewQubits { n });
        }
        let full = (1u32 << n) - 1;
        let invalid = mask & !full != 0 || mask & 1 == 0 || mask == full;
        if invalid {
            return Err(Error::InvalidBipartition { mask, n });
        }
        Ok(Self { mask, n })
    }

    /// Canonical cut for an arbitrary subset (complemented if it lacks qubit 0).
    pub fn from_subset(qubits: &[usize], n: usize) -> Result<Self> {
        let mut mask = 0u32;
        for &q in qubits {
            if q >= n {
                return Err(Error::QubitIndex { index: q, n });
            }
            mask |= 1 << q;
        }
        if n <= MAX_QUBITS && mask & 1 == 0 {
            mask = !mask & ((1u32 << n) - 1);
        }
        Self::new(mask, n)
    }

    /// The cut `{qubit} | rest`.
    pub fn single(qubit: usize, n: usize) -> Result<Self> {
        Self::from_subset(&[qubit], n)
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, qubit: usize) -> bool {
        qubit < self.n && self.mask & (1 << qubit) != 0
    }

    pub fn subset_a(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.contains(q)).collect()
    }

    pub fn subset_b(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| !self.contains(q)).collect()
    }
}

/// All `2^(n-1) - 1` canonical cuts, ascending by mask.
pub fn enumerate_bipartitions(n: usize) -> Result<Vec<Bipartition>> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(Error::TooFewQubits { n });
    }
    let full = (1u32 << n) - 1;
    Ok((1..full)
        .step_by(2)
        .map(|mask| Bipartition { mask, n })
        .collect())
}

/// Couplings with `|J_ij| > 1e-12 · max(1, max|J|)` count as present.
pub fn coupling_threshold<R: Real>(system: &QubitSystem<R>) -> R {
    let max_j = system.coupling_matrix().max_abs();
    lit::<R>(1e-12) * R::one().max(max_j)
}

/// Pairs `(i, j)` with `i ∈ A`, `j ∉ A` and a present coupling, where `A`
/// is given by a raw bit mask (canonical or not).
pub fn crossing_pairs<R: Real>(system: &QubitSystem<R>, a_mask: u32) -> Vec<(usize, usize)> {
    let n = system.n();
    let thr = coupling_threshold(system);
    let in_a = |q: usize| a_mask & (1 << q) != 0;
    let mut out = Vec::new();
    for i in (0..n).filter(|&q| in_a(q)) {
        for j in (0..n).filter(|&q| !in_a(q)) {
            if system.coupling(i, j).abs() > thr {
                out.push((i, j));
            }
        }
    }
    out
}

/// `Σ J_ij χ_ij` over crossing pairs for a raw mask; exact zero when no
/// coupling crosses.
pub fn cross_sum<R: Real>(system: &QubitSystem<R>, chi: &DenseMatrix<R>, a_mask: u32) -> R {
    crossing_pairs(system, a_mask)
        .into_iter()
        .fold(R::zero(), |acc, (i, j)| {
            acc + system.coupling(i, j) * chi[(i, j)]
        })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutWitness<R> {
    pub partition: Bipartition,
    pub w_tilde: R,
    pub n_ab: usize,
    pub w_ab: R,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport<R> {
    pub cuts: Vec<CutWitness<R>>,
    pub w_lambda: Option<R>,
    pub w_global: R,
}

/// `|W̃| / (N_AB + |W̃|)`, defined as zero for a cut with no couplings.
pub fn witness_ab<R: Real>(w_tilde: R, n_ab: usize) -> R {
    if n_ab == 0 {
        return R::zero();
    }
    let a = w_tilde.abs();
    if a == R::zero() {
        return R::zero();
    }
    saturating_ratio(a, R::from_usize(n_ab).expect("count fits"))
}

/// `a / (b + a)` for positive `b`, kept strictly below one when the exact
/// quotient rounds up to it.
fn saturating_ratio<R: Real>(a: R, b: R) -> R {
    let largest_below_one = R::one() - R::epsilon() / lit::<R>(2.0);
    (a / (b + a)).min(largest_below_one)
}

fn check_sizes<R: Real>(spec: &Spectrum<R>, system: &QubitSystem<R>) -> Result<()> {
    if spec.dim() != system.dim() {
        return Err(Error::LengthMismatch {
            what: "spectrum dimension",
            got: spec.dim(),
            expected: system.dim(),
        });
    }
    Ok(())
}

/// `W̃_AB` for one cut.
pub fn witness_tilde_ab<R: Real>(
    spec: &Spectrum<R>,
    system: &QubitSystem<R>,
    partition: &Bipartition,
    deg_tol: R,
) -> Result<R> {
    check_sizes(spec, system)?;
    if partition.n() != system.n() {
        return Err(Error::LengthMismatch {
            what: "bipartition qubit count",
            got: partition.n(),
            expected: system.n(),
        });
    }
    spec.check_nondegenerate(deg_tol)?;
    if crossing_pairs(system, partition.mask()).is_empty() {
        return Ok(R::zero());
    }
    let chi = susceptibility_matrix(spec, deg_tol)?;
    Ok(cross_sum(system, &chi, partition.mask()))
}

/// Geometric-mean global witness `G / (1 + G)` over the given cuts.
fn global_from_cuts<R: Real>(cuts: &[CutWitness<R>]) -> R {
    let silent = lit::<R>(SILENT_CUT_TOL);
    if cuts.is_empty()
        || cuts
            .iter()
            .any(|c| c.n_ab == 0 || c.w_tilde.abs() <= silent)
    {
        return R::zero();
    }
    let count = R::from_usize(cuts.len()).expect("count fits");
    let log_mean = cuts
        .iter()
        .map(|c| (c.w_tilde.abs() / R::from_usize(c.n_ab).expect("count fits")).ln())
        .sum::<R>()
        / count;
    saturating_ratio(log_mean.exp(), R::one())
}

/// Per-cut witnesses for every bipartition plus the global witness.
pub fn witness_report<R: Real>(
    spec: &Spectrum<R>,
    system: &QubitSystem<R>,
    deg_tol: R,
) -> Result<WitnessReport<R>> {
    check_sizes(spec, system)?;
    let partitions = enumerate_bipartitions(system.n())?;
    let chi = susceptibility_matrix(spec, deg_tol)?;
    let cuts: Vec<CutWitness<R>> = partitions
        .into_iter()
        .map(|partition| {
            let n_ab = crossing_pairs(system, partition.mask()).len();
            let w_tilde = if n_ab == 0 {
                R::zero()
            } else {
                cross_sum(system, &chi, partition.mask())
            };
            CutWitness {
                partition,
                w_tilde,
                n_ab,
                w_ab: witness_ab(w_tilde, n_ab),
            }
        })
        .collect();
    let w_global = global_from_cuts(&cuts);
    Ok(WitnessReport {
        cuts,
        w_lambda: None,
        w_global,
    })
}

/// Global witness `W_χ` alone.
pub fn witness_global<R: Real>(
    spec: &Spectrum<R>,
    system: &QubitSystem<R>,
    deg_tol: R,
) -> Result<R> {
    Ok(witness_report(spec, system, deg_tol)?.w_global)
}

/// `W_λ = Σ_{i<j} |J_ij χ_i^λ χ_j^λ|` at `lambda0`.
pub fn witness_lambda<R: Real>(
    path: &AffinePath<R>,
    lambda0: R,
    step: R,
    deg_tol: Option<R>,
) -> Result<R> {
    let system = path.at(lambda0)?;
    let thr = coupling_threshold(&system);
    let pairs: Vec<(usize, usize, R)> = system
        .couplings()
        .into_iter()
        .filter(|&(_, _, j)| j.abs() > thr)
        .collect();
    // Still evaluate the stencil so a degenerate ground is reported even
    // when there is nothing to sum.
    let chi = lambda_susceptibilities(path, lambda0, step, deg_tol)?;
    Ok(pairs.into_iter().fold(R::zero(), |acc, (i, j, jij)| {
        acc + (jij * chi[i] * chi[j]).abs()
    }))
}
