//! Parameter sweeps, anticrossing detection and path-based certification.
//!
//! Certification uses the contrapositive of the pinned-qubit theorem: if the
//! ground state stays non-degenerate along a connected path and both
//! `<σz_i>` and `<σz_j>` of a coupled pair change, the ground state must be
//! entangled somewhere on that path.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::build_hamiltonian;
use crate::observables::sigma_z_all;
use crate::oracle::{single_qubit_entanglement, DEFAULT_SCHMIDT_TOL};
use crate::path::AffinePath;
use crate::scalar::{lit, Real};
use crate::spectrum::diagonalize;
use crate::witness::{coupling_threshold, witness_report, WitnessReport};

/// Default total-variation threshold for "`<σz>` changes along the path".
pub const DEFAULT_VAR_TOL: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig<R> {
    pub path: AffinePath<R>,
    pub grid: Vec<R>,
    pub track_levels: usize,
    pub compute_witnesses: bool,
    /// `None` uses the per-point scale-free default.
    pub deg_tol: Option<R>,
}

/// `points` evenly spaced values from `start` to `stop` inclusive.
pub fn linspace<R: Real>(start: R, stop: R, points: usize) -> Vec<R> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let last = R::from_usize(points - 1).expect("count fits");
            (0..points)
                .map(|k| {
                    if k == points - 1 {
                        stop
                    } else {
                        let t = R::from_usize(k).expect("count fits") / last;
                        start + (stop - start) * t
                    }
                })
                .collect()
        }
    }
}

impl<R: Real> SweepConfig<R> {
    pub fn new(path: AffinePath<R>, grid: Vec<R>) -> Self {
        Self {
            path,
            grid,
            track_levels: 2,
            compute_witnesses: false,
            deg_tol: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.len() < 3 {
            return Err(Error::InvalidSweep(format!(
                "grid needs at least 3 points, got {}",
                self.grid.len()
            )));
        }
        if !self.grid.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidSweep(
                "grid contains non-finite values".into(),
            ));
        }
        if self.grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidSweep(
                "grid must be strictly ascending".into(),
            ));
        }
        let dim = self.path.base().dim();
        if self.track_levels < 2 || self.track_levels > dim {
            return Err(Error::InvalidSweep(format!(
                "track_levels must be in 2..={dim}, got {}",
                self.track_levels
            )));
        }
        if let Some(tol) = self.deg_tol {
            if !(tol > R::zero()) {
                return Err(Error::InvalidParameter(format!(
                    "degeneracy tolerance must be positive, got {tol}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint<R> {
    pub lambda: R,
    /// The `track_levels` lowest energies.
    pub energies: Vec<R>,
    pub gap: R,
    pub sz: Vec<R>,
    /// Ground-state amplitudes; an arbitrary vector of the ground
    /// eigenspace when `degenerate` is set.
    pub ground: Vec<R>,
    pub witness: Option<WitnessReport<R>>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult<R> {
    pub n: usize,
    pub points: Vec<SweepPoint<R>>,
}

fn evaluate_point<R: Real>(config: &SweepConfig<R>, lambda: R) -> Result<SweepPoint<R>> {
    let system = config.path.at(lambda)?;
    let spec = diagonalize(&build_hamiltonian(&system))?;
    let tol = spec.resolve_deg_tol(config.deg_tol);
    let gap = spec.gap();
    let degenerate = !(gap > tol);
    let ground = spec.state(0).to_vec();
    let sz = sigma_z_all(&ground)?;
    let witness = if config.compute_witnesses && !degenerate && system.n() >= 2 {
        Some(witness_report(&spec, &system, tol)?)
    } else {
        None
    };
    Ok(SweepPoint {
        lambda,
        energies: spec.energies()[..config.track_levels].to_vec(),
        gap,
        sz,
        ground,
        witness,
        degenerate,
    })
}

/// Diagonalizes every grid point. Points are evaluated in parallel on the
/// current rayon pool and returned in grid order.
pub fn run_sweep<R: Real>(config: &SweepConfig<R>) -> Result<SweepResult<R>> {
    config.validate()?;
    let points = config
        .grid
        .par_iter()
        .map(|&lambda| evaluate_point(config, lambda))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        n: config.path.n(),
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Anticrossing<R> {
    pub lambda: R,
    pub gap: R,
}

/// Interior strict local minima of the gap, refined by a parabola through
/// the bracketing points. Minima touching a degenerate point are skipped.
pub fn detect_anticrossing<R: Real>(result: &SweepResult<R>) -> Result<Vec<Anticrossing<R>>> {
    let pts = &result.points;
    if pts.len() < 3 {
        return Err(Error::InvalidSweep(format!(
            "anticrossing detection needs at least 3 points, got {}",
            pts.len()
        )));
    }
    let mut out = Vec::new();
    for k in 1..pts.len() - 1 {
        let (a, b, c) = (&pts[k - 1], &pts[k], &pts[k + 1]);
        if a.degenerate || b.degenerate || c.degenerate {
            continue;
        }
        if !(b.gap < a.gap && b.gap < c.gap) {
            continue;
        }
        out.push(parabolic_vertex(
            (a.lambda, a.gap),
            (b.lambda, b.gap),
            (c.lambda, c.gap),
        ));
    }
    Ok(out)
}

fn parabolic_vertex<R: Real>(left: (R, R), mid: (R, R), right: (R, R)) -> Anticrossing<R> {
    let (h0, d0) = (left.0 - mid.0, left.1 - mid.1);
    let (h2, d2) = (right.0 - mid.0, right.1 - mid.1);
    let det = h0 * h2 * (h0 - h2);
    let a = (d0 * h2 - d2 * h0) / det;
    let b = (h0 * h0 * d2 - h2 * h2 * d0) / det;
    if !(a > R::zero()) {
        return Anticrossing {
            lambda: mid.0,
            gap: mid.1,
        };
    }
    let two = lit::<R>(2.0);
    let t = -b / (two * a);
    Anticrossing {
        lambda: mid.0 + t,
        gap: mid.1 - b * b / (two * two * a),
    }
}

/// Sum of absolute adjacent differences.
pub fn total_variation<R: Real>(values: impl IntoIterator<Item = R>) -> R {
    let mut iter = values.into_iter();
    let Some(mut prev) = iter.next() else {
        return R::zero();
    };
    let mut total = R::zero();
    for x in iter {
        total = total + (x - prev).abs();
        prev = x;
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairVariation<R> {
    pub i: usize,
    pub j: usize,
    pub var_i: R,
    pub var_j: R,
}

/// Grid point where the brute-force oracle finds the ground state most
/// clearly not a full product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfirmation<R> {
    pub lambda: R,
    /// Largest second Schmidt coefficient over single-qubit cuts there.
    pub schmidt_coefficient: R,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport<R> {
    /// Every pair coupled along the whole path, with its variations.
    pub coupled_pairs: Vec<PairVariation<R>>,
    pub certified_pairs: Vec<PairVariation<R>>,
    pub path_nondegenerate: bool,
    pub oracle_confirmation: Option<OracleConfirmation<R>>,
}

impl<R> CertificationReport<R> {
    pub fn is_certified(&self) -> bool {
        self.path_nondegenerate && !self.certified_pairs.is_empty()
    }
}

/// Certifies ground-state entanglement along a swept path.
///
/// A pair certifies when `J_ij` is nonzero at every grid point, both
/// `<σz>` total variations exceed `var_tol` and no grid point is
/// degenerate. `deg_tol`, when given, additionally voids points whose gap
/// is at or below it.
pub fn certify_entanglement_on_path<R: Real>(
    result: &SweepResult<R>,
    path: &AffinePath<R>,
    var_tol: R,
    deg_tol: Option<R>,
) -> Result<CertificationReport<R>> {
    let n = result.n;
    if path.n() != n {
        return Err(Error::PathQubitMismatch {
            base: path.n(),
            direction: n,
        });
    }
    let pts = &result.points;
    let path_nondegenerate = pts
        .iter()
        .all(|p| !p.degenerate && deg_tol.is_none_or(|tol| p.gap > tol));

    let mut coupled = vec![vec![!pts.is_empty(); n]; n];
    for p in pts {
        let system = path.at(p.lambda)?;
        let thr = coupling_threshold(&system);
        for i in 0..n {
            for j in i + 1..n {
                if system.coupling(i, j).abs() <= thr {
                    coupled[i][j] = false;
                }
            }
        }
    }
    let variation: Vec<R> = (0..n)
        .map(|q| total_variation(pts.iter().map(|p| p.sz[q])))
        .collect();

    let mut coupled_pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if coupled[i][j] {
                coupled_pairs.push(PairVariation {
                    i,
                    j,
                    var_i: variation[i],
                    var_j: variation[j],
                });
            }
        }
    }
    let certified_pairs: Vec<_> = if path_nondegenerate {
        coupled_pairs
            .iter()
            .copied()
            .filter(|p| p.var_i > var_tol && p.var_j > var_tol)
            .collect()
    } else {
        Vec::new()
    };

    let mut oracle_confirmation = None;
    if !certified_pairs.is_empty() {
        let schmidt_tol = lit::<R>(DEFAULT_SCHMIDT_TOL);
        for p in pts {
            let s = single_qubit_entanglement(&p.ground)?;
            let better = oracle_confirmation
                .as_ref()
                .is_none_or(|best: &OracleConfirmation<R>| s > best.schmidt_coefficient);
            if s > schmidt_tol && better {
                oracle_confirmation = Some(OracleConfirmation {
                    lambda: p.lambda,
                    schmidt_coefficient: s,
                });
            }
        }
    }

    Ok(CertificationReport {
        coupled_pairs,
        certified_pairs,
        path_nondegenerate,
        oracle_confirmation,
    })
}
