//! Reference implementations shared by the integration tests. Nothing here
//! calls into the library's own Hamiltonian builder or eigensolver.

#![allow(dead_code, clippy::needless_range_loop)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use witness_lab::{Scalar, System};

pub type Dense<T> = Vec<Vec<T>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn kron<T: Scalar>(a: &Dense<T>, b: &Dense<T>) -> Dense<T> {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![T::zero(); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn pauli<T: Scalar>(x: bool) -> Dense<T> {
    let (o, z) = (T::one(), T::zero());
    if x {
        vec![vec![z, o], vec![o, z]]
    } else {
        vec![vec![o, z], vec![z, -o]]
    }
}

/// `I ⊗ … ⊗ P ⊗ … ⊗ I` with `P` in tensor slot `site` (slot 0 leftmost).
pub fn site_operator<T: Scalar>(x: bool, site: usize, n: usize) -> Dense<T> {
    let eye = vec![vec![T::one(), T::zero()], vec![T::zero(), T::one()]];
    let mut out = vec![vec![T::one()]];
    for k in 0..n {
        let factor = if k == site { pauli(x) } else { eye.clone() };
        out = kron(&out, &factor);
    }
    out
}

fn add_scaled<T: Scalar>(acc: &mut Dense<T>, m: &Dense<T>, s: T) {
    for (ra, rm) in acc.iter_mut().zip(m) {
        for (a, &x) in ra.iter_mut().zip(rm) {
            *a = *a + s * x;
        }
    }
}

fn matmul<T: Scalar>(a: &Dense<T>, b: &Dense<T>) -> Dense<T> {
    let n = a.len();
    let mut out = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] = out[i][j] + a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Hamiltonian assembled as an explicit sum of Kronecker products.
pub fn kron_hamiltonian<T: Scalar>(
    delta: &[T],
    h: &[T],
    couplings: &[(usize, usize, T)],
) -> Dense<T> {
    let n = delta.len();
    let dim = 1 << n;
    let mut out = vec![vec![T::zero(); dim]; dim];
    for i in 0..n {
        add_scaled(&mut out, &site_operator(true, i, n), -delta[i] * T::half());
        add_scaled(&mut out, &site_operator(false, i, n), -h[i]);
    }
    for &(i, j, v) in couplings {
        let zz = matmul(&site_operator(false, i, n), &site_operator(false, j, n));
        add_scaled(&mut out, &zz, v);
    }
    out
}

pub fn kron_hamiltonian_of(sys: &System) -> Dense<f64> {
    kron_hamiltonian(sys.delta(), sys.bias(), &sys.couplings())
}

/// Cyclic Jacobi eigensolver: ascending eigenvalues and eigenvectors as
/// columns of the returned matrix.
pub fn jacobi_eigen(a: &Dense<f64>) -> (Vec<f64>, Dense<f64>) {
    let n = a.len();
    let mut m = a.clone();
    let mut v: Dense<f64> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k][p], v[k][q]);
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[x][x].partial_cmp(&m[y][y]).unwrap());
    let values = order.iter().map(|&k| m[k][k]).collect();
    let vectors = (0..n)
        .map(|r| order.iter().map(|&k| v[r][k]).collect())
        .collect();
    (values, vectors)
}

fn column(m: &Dense<f64>, k: usize) -> Vec<f64> {
    m.iter().map(|row| row[k]).collect()
}

fn bracket(u: &[f64], op: &Dense<f64>, w: &[f64]) -> f64 {
    op.iter()
        .zip(u)
        .map(|(row, &ui)| ui * row.iter().zip(w).map(|(a, b)| a * b).sum::<f64>())
        .sum()
}

/// Ground-state susceptibility matrix from the Jacobi oracle and explicit
/// Kronecker `σz` operators.
pub fn reference_chi(sys: &System) -> Dense<f64> {
    let n = sys.n();
    let (e, v) = jacobi_eigen(&kron_hamiltonian_of(sys));
    let g = column(&v, 0);
    let z: Vec<Dense<f64>> = (0..n).map(|i| site_operator(false, i, n)).collect();
    let mut chi = vec![vec![0.0; n]; n];
    for k in 1..e.len() {
        let ek = column(&v, k);
        let elems: Vec<f64> = z.iter().map(|op| bracket(&ek, op, &g)).collect();
        for i in 0..n {
            for j in 0..n {
                chi[i][j] += 2.0 * elems[i] * elems[j] / (e[k] - e[0]);
            }
        }
    }
    chi
}

/// Coefficients uniform in `[-1, 1]`, all pairs coupled.
pub fn random_system(rng: &mut impl Rng, n: usize) -> System {
    let delta = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let h = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let mut c = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            c.push((i, j, rng.gen_range(-1.0..=1.0)));
        }
    }
    System::new(delta, h, &c).unwrap()
}

/// Drops every coupling that crosses the cut `mask` (bit `i` = qubit `i`).
pub fn cut_couplings(sys: &System, mask: u32) -> System {
    let kept: Vec<_> = sys
        .couplings()
        .into_iter()
        .filter(|&(i, j, _)| ((mask >> i) & 1) == ((mask >> j) & 1))
        .collect();
    System::new(sys.delta().to_vec(), sys.bias().to_vec(), &kept).unwrap()
}

pub fn fm_chain(n: usize, delta: f64) -> System {
    let c: Vec<_> = (0..n - 1).map(|i| (i, i + 1, -1.0)).collect();
    System::new(vec![delta; n], vec![0.0; n], &c).unwrap()
}

pub fn pinned_pair() -> System {
    System::new(vec![1.0, 0.0], vec![0.3, 5.0], &[(0, 1, 0.4)]).unwrap()
}

/// Normalized product of single-qubit states `(cos θ_i, sin θ_i)`, qubit 0
/// leftmost.
pub fn product_state(angles: &[f64]) -> Vec<f64> {
    let mut out = vec![1.0];
    for &t in angles {
        let (s, c) = t.sin_cos();
        out = out.iter().flat_map(|&a| [a * c, a * s]).collect();
    }
    out
}

pub fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
}
