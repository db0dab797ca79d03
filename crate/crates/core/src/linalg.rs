//! Dense symmetric eigensolver and singular values.
//!
//! The eigensolver reduces the matrix to tridiagonal form with Householder
//! reflections, then runs implicit QL with Wilkinson-style shifts. Eigenvector
//! rotations are applied to rows of the transposed basis so every inner loop
//! walks contiguous memory.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::{lit, Real};

const QL_MAX_ITER: usize = 60;
const JACOBI_MAX_SWEEPS: usize = 80;

/// Output of the Householder reduction: `Qᵀ A Q = T`.
struct Tridiagonal<R> {
    diag: Vec<R>,
    /// `off[k] = T[k+1][k]`; the final entry is always zero.
    off: Vec<R>,
    /// Reflector scale per step; reflector vectors live in the rows of the
    /// reduced matrix to the right of the diagonal.
    betas: Vec<R>,
}

fn dot<R: Real>(a: &[R], b: &[R]) -> R {
    let mut acc = [R::zero(); 4];
    let chunks = a.len() / 4;
    for k in 0..chunks {
        let i = 4 * k;
        acc[0] = acc[0] + a[i] * b[i];
        acc[1] = acc[1] + a[i + 1] * b[i + 1];
        acc[2] = acc[2] + a[i + 2] * b[i + 2];
        acc[3] = acc[3] + a[i + 3] * b[i + 3];
    }
    let mut tail = R::zero();
    for i in 4 * chunks..a.len() {
        tail = tail + a[i] * b[i];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// Householder vector for `x`, written to `v`: returns `(alpha, beta)` with
/// `(I - β v vᵀ) x = alpha e_0`, or `None` when `x` is already reduced.
fn reflector<R: Real>(x: &[R], v: &mut [R]) -> Option<(R, R)> {
    let x0 = x[0];
    let tail_sq: R = x[1..].iter().map(|&t| t * t).sum();
    if tail_sq == R::zero() {
        return None;
    }
    let norm = (x0 * x0 + tail_sq).sqrt();
    let alpha = if x0 >= R::zero() { -norm } else { norm };
    v.copy_from_slice(x);
    v[0] = x0 - alpha;
    let vtv = v[0] * v[0] + tail_sq;
    Some((alpha, lit::<R>(2.0) / vtv))
}

/// `p[k+1..] = β S v` for the trailing block `S` held in the upper triangle.
fn trailing_matvec<R: Real>(a: &DenseMatrix<R>, k: usize, v: &[R], beta: R, p: &mut [R]) {
    let n = a.rows();
    p[k + 1..].iter_mut().for_each(|x| *x = R::zero());
    for r in k + 1..n {
        let row = &a.row(r)[r..];
        let vr = v[r];
        let mut s = row[0] * vr;
        for ((&x, &vc), pc) in row[1..].iter().zip(&v[r + 1..]).zip(&mut p[r + 1..]) {
            s = s + x * vc;
            *pc = *pc + x * vr;
        }
        p[r] = p[r] + s;
    }
    p[k + 1..].iter_mut().for_each(|x| *x = *x * beta);
}

/// Reduces the symmetric matrix `a` in place, reading and writing only its
/// upper triangle. On return row `k` of `a`, columns `k+1..`, holds the k-th
/// reflector vector.
///
/// The rank-2 update of step `k` is fused with the matrix-vector product of
/// step `k+1`, so each step makes a single pass over the trailing block.
fn tridiagonalize<R: Real>(a: &mut DenseMatrix<R>) -> Tridiagonal<R> {
    let n = a.rows();
    let mut diag = vec![R::zero(); n];
    let mut off = vec![R::zero(); n];
    let mut betas = vec![R::zero(); n];
    let half = lit::<R>(0.5);
    // Vectors are indexed by absolute column.
    let mut v = vec![R::zero(); n];
    let mut p = vec![R::zero(); n];
    let mut v_next = vec![R::zero(); n];
    let mut p_next = vec![R::zero(); n];
    let mut p_ready = false;

    for k in 0..n.saturating_sub(2) {
        diag[k] = a[(k, k)];
        let Some((alpha, beta)) = reflector(&a.row(k)[k + 1..], &mut v[k + 1..]) else {
            off[k] = a[(k, k + 1)];
            p_ready = false;
            continue;
        };
        off[k] = alpha;
        betas[k] = beta;
        if !p_ready {
            trailing_matvec(a, k, &v, beta, &mut p);
        }
        // w = p - (β/2)(vᵀp) v, then S ← S - v wᵀ - w vᵀ.
        let kappa = half * beta * dot(&v[k + 1..], &p[k + 1..]);
        for c in k + 1..n {
            p[c] = p[c] - kappa * v[c];
        }
        let (v, w) = (&v, &p);
        {
            let (vr, wr) = (v[k + 1], w[k + 1]);
            for (c, x) in a.row_mut(k + 1).iter_mut().enumerate().skip(k + 1) {
                *x = *x - vr * w[c] - wr * v[c];
            }
        }
        let next = if k + 3 < n {
            reflector(&a.row(k + 1)[k + 2..], &mut v_next[k + 2..])
        } else {
            None
        };
        match next {
            Some((_, beta_next)) => {
                p_next[k + 2..].iter_mut().for_each(|x| *x = R::zero());
                for r in k + 2..n {
                    let (vr, wr, ur) = (v[r], w[r], v_next[r]);
                    let row = &mut a.row_mut(r)[r..];
                    row[0] = row[0] - vr * w[r] - wr * v[r];
                    let mut s = row[0] * ur;
                    let tail = row[1..]
                        .iter_mut()
                        .zip(&v[r + 1..])
                        .zip(&w[r + 1..])
                        .zip(&v_next[r + 1..])
                        .zip(&mut p_next[r + 1..]);
                    for ((((x, &vc), &wc), &uc), pc) in tail {
                        let y = *x - vr * wc - wr * vc;
                        *x = y;
                        s = s + y * uc;
                        *pc = *pc + y * ur;
                    }
                    p_next[r] = p_next[r] + s;
                }
                p_next[k + 2..].iter_mut().for_each(|x| *x = *x * beta_next);
                p_ready = true;
            }
            None => {
                for r in k + 2..n {
                    let (vr, wr) = (v[r], w[r]);
                    let row = &mut a.row_mut(r)[r..];
                    for ((x, &vc), &wc) in row.iter_mut().zip(&v[r..]).zip(&w[r..]) {
                        *x = *x - vr * wc - wr * vc;
                    }
                }
                p_ready = false;
            }
        }
        a.row_mut(k)[k + 1..].copy_from_slice(&v[k + 1..]);
        std::mem::swap(&mut p, &mut p_next);
    }
    if n >= 2 {
        diag[n - 2] = a[(n - 2, n - 2)];
        off[n - 2] = a[(n - 2, n - 1)];
    }
    if n >= 1 {
        diag[n - 1] = a[(n - 1, n - 1)];
    }
    Tridiagonal { diag, off, betas }
}

/// Accumulates `Q = P_0 P_1 … P_{n-3}` from the reflectors stored in `a`.
fn accumulate_q<R: Real>(a: &DenseMatrix<R>, betas: &[R]) -> DenseMatrix<R> {
    let n = a.rows();
    let mut q = DenseMatrix::identity(n);
    let mut w = vec![R::zero(); n];
    for k in (0..n.saturating_sub(2)).rev() {
        let beta = betas[k];
        if beta == R::zero() {
            continue;
        }
        let v = &a.row(k)[k + 1..];
        let m = v.len();
        let w = &mut w[..m];
        w.iter_mut().for_each(|x| *x = R::zero());
        for r in 0..m {
            let vr = v[r];
            for (wc, &qc) in w.iter_mut().zip(&q.row(k + 1 + r)[k + 1..]) {
                *wc = *wc + vr * qc;
            }
        }
        for r in 0..m {
            let scale = beta * v[r];
            for (qc, &wc) in q.row_mut(k + 1 + r)[k + 1..].iter_mut().zip(w.iter()) {
                *qc = *qc - scale * wc;
            }
        }
    }
    q
}

/// Implicit QL on the tridiagonal `(d, e)`. When `rows` is given, row `i`
/// holds the basis vector paired with `d[i]` and is rotated alongside.
fn tridiagonal_ql<R: Real>(
    d: &mut [R],
    e: &mut [R],
    mut rows: Option<&mut DenseMatrix<R>>,
) -> Result<()> {
    let n = d.len();
    let (zero, one, two) = (R::zero(), R::one(), lit::<R>(2.0));
    let eps = R::epsilon();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if m == l + 1 {
                rotate_2x2(d, e, l, rows.as_deref_mut());
                continue;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(Error::NoConvergence { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(one);
            let signed_r = if g >= zero { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + signed_r);
            let (mut s, mut c, mut p) = (one, one, zero);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == zero {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = zero;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = rows.as_deref_mut() {
                    let (zi, zi1) = z.two_rows_mut(i, i + 1);
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let f = *b;
                        *b = s * *a + c * f;
                        *a = c * *a - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = zero;
        }
    }
    Ok(())
}

/// Diagonalizes the isolated block `[[d_l, e_l], [e_l, d_{l+1}]]` with one
/// Jacobi rotation.
fn rotate_2x2<R: Real>(d: &mut [R], e: &mut [R], l: usize, rows: Option<&mut DenseMatrix<R>>) {
    let (a, b, c) = (d[l], e[l], d[l + 1]);
    let one = R::one();
    let theta = (c - a) / (lit::<R>(2.0) * b);
    let t = if theta == R::zero() {
        one
    } else {
        theta.signum() / (theta.abs() + (one + theta * theta).sqrt())
    };
    let cos = one / (one + t * t).sqrt();
    let sin = t * cos;
    d[l] = a - t * b;
    d[l + 1] = c + t * b;
    e[l] = R::zero();
    if let Some(z) = rows {
        let (zl, zl1) = z.two_rows_mut(l, l + 1);
        for (x, y) in zl.iter_mut().zip(zl1.iter_mut()) {
            let (xv, yv) = (*x, *y);
            *x = cos * xv - sin * yv;
            *y = sin * xv + cos * yv;
        }
    }
}

/// All eigenvalues of a symmetric matrix, ascending. Consumes the matrix so
/// the reduction can run in place.
pub(crate) fn symmetric_eigenvalues<R: Real>(mut a: DenseMatrix<R>) -> Result<Vec<R>> {
    let Tridiagonal {
        mut diag, mut off, ..
    } = tridiagonalize(&mut a);
    drop(a);
    tridiagonal_ql(&mut diag, &mut off, None)?;
    diag.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    Ok(diag)
}

/// Eigenvalues (ascending) and eigenvectors as rows, each with its
/// largest-magnitude component made positive.
pub(crate) fn symmetric_eigen<R: Real>(mut a: DenseMatrix<R>) -> Result<(Vec<R>, DenseMatrix<R>)> {
    let n = a.rows();
    let Tridiagonal {
        mut diag,
        mut off,
        betas,
    } = tridiagonalize(&mut a);
    let q = accumulate_q(&a, &betas);
    drop(a);
    let mut basis = q.transpose();
    drop(q);
    tridiagonal_ql(&mut diag, &mut off, Some(&mut basis))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        diag[x]
            .partial_cmp(&diag[y])
            .expect("eigenvalues are finite")
            .then(x.cmp(&y))
    });
    let energies = order.iter().map(|&k| diag[k]).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let row = vectors.row_mut(dst);
        row.copy_from_slice(basis.row(src));
        fix_sign(row);
    }
    Ok((energies, vectors))
}

/// Flips `v` so its first largest-magnitude component is positive.
fn fix_sign<R: Real>(v: &mut [R]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < R::zero() {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Singular values of `m`, descending, by one-sided Jacobi rotations.
pub fn singular_values<R: Real>(m: &DenseMatrix<R>) -> Vec<R> {
    // Orthogonalize the shorter side so there are fewer pairs to rotate.
    let mut work = if m.rows() <= m.cols() {
        m.clone()
    } else {
        m.transpose()
    };
    let count = work.rows();
    let eps = R::epsilon();
    let one = R::one();
    let two = lit::<R>(2.0);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..count {
            for j in i + 1..count {
                let alpha = dot(work.row(i), work.row(i));
                let beta = dot(work.row(j), work.row(j));
                let gamma = dot(work.row(i), work.row(j));
                if gamma == R::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (two * gamma);
                let t = zeta.signum() / (zeta.abs() + (one + zeta * zeta).sqrt());
                let c = one / (one + t * t).sqrt();
                let s = c * t;
                let (x, y) = work.two_rows_mut(i, j);
                for (a, b) in x.iter_mut().zip(y.iter_mut()) {
                    let (xa, yb) = (*a, *b);
                    *a = c * xa - s * yb;
                    *b = s * xa + c * yb;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<R> = (0..count)
        .map(|i| dot(work.row(i), work.row(i)).sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
    sv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: &DenseMatrix<f64>, lambda: f64, v: &[f64]) -> f64 {
        a.matvec(v)
            .iter()
            .zip(v)
            .map(|(av, x)| (av - lambda * x).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn diagonal_matrix_sorted_with_unit_vectors() {
        let a = DenseMatrix::from_diagonal(&[3.0, 1.0, 2.0]);
        let (e, v) = symmetric_eigen(a).unwrap();
        assert_eq!(e, vec![1.0, 2.0, 3.0]);
        assert_eq!(v.row(0), &[0.0, 1.0, 0.0]);
        assert_eq!(v.row(1), &[0.0, 0.0, 1.0]);
        assert_eq!(v.row(2), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn small_dense_matrices() {
        for n in 1..=9 {
            let a = DenseMatrix::from_fn(n, n, |r, c| {
                1.0 / (1.0 + r as f64 + c as f64) + if r == c { r as f64 * 0.1 } else { 0.0 }
            });
            let (e, v) = symmetric_eigen(a.clone()).unwrap();
            for k in 0..n {
                assert!(residual(&a, e[k], v.row(k)) < 1e-12, "n={n} k={k}");
            }
            let vals = symmetric_eigenvalues(a).unwrap();
            for (x, y) in vals.iter().zip(&e) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn repeated_eigenvalues_keep_orthonormal_basis() {
        // All-ones minus identity: eigenvalue n-1 once, -1 with multiplicity n-1.
        let n = 6;
        let a = DenseMatrix::<f64>::from_fn(n, n, |r, c| if r == c { 0.0 } else { 1.0 });
        let (e, v) = symmetric_eigen(a.clone()).unwrap();
        assert!(e[..n - 1].iter().all(|&x| (x + 1.0).abs() < 1e-13));
        assert!((e[n - 1] - 5.0).abs() < 1e-13);
        for k in 0..n {
            assert!(residual(&a, e[k], v.row(k)) < 1e-13);
        }
        let g = v.matmul(&v.transpose());
        for r in 0..n {
            for c in 0..n {
                let expect = if r == c { 1.0 } else { 0.0 };
                assert!((g[(r, c)] - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_values_of_rank_one_and_rotation() {
        let outer = DenseMatrix::from_fn(3, 4, |r, c| (r + 1) as f64 * (c + 1) as f64);
        let sv = singular_values(&outer);
        let expected = (14.0f64 * 30.0).sqrt();
        assert!((sv[0] - expected).abs() < 1e-12);
        assert!(sv[1..].iter().all(|&s| s < 1e-12));

        let (c, s) = (0.6, 0.8);
        let rot = DenseMatrix::<f64>::from_rows(&[vec![c, -s], vec![s, c]]).unwrap();
        let scaled = rot.matmul(&DenseMatrix::from_diagonal(&[2.0, 0.5]));
        let sv = singular_values(&scaled);
        assert!((sv[0] - 2.0).abs() < 1e-14 && (sv[1] - 0.5).abs() < 1e-14);
    }
}
