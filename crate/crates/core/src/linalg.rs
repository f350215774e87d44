//! Small dense complex linear-algebra helpers on top of `nalgebra`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn max_abs(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn mat_max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    max_abs_diff(a.as_slice(), b.as_slice())
}

/// Standard complex Gaussian: real and imaginary parts drawn independently from N(0, 1/2).
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re * s, im * s)
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    (0..n).map(|_| random_complex(rng)).collect()
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, r: usize, cols: usize) -> CMat {
    CMat::from_fn(r, cols, |_, _| random_complex(rng))
}

/// Thin singular value decomposition `m = U diag(s) V^†` by one-sided Jacobi
/// rotations on the columns of `m`.
///
/// `V` is square (`ncols × ncols`); column `k` of `U` is meaningful only where
/// `s[k] > 0`. Singular values are not sorted.
pub fn svd(m: &CMat) -> (CMat, Vec<f64>, CMat) {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut v = CMat::identity(cols, cols);
    let scale = m.iter().map(|z| z.norm_sqr()).sum::<f64>().max(f64::MIN_POSITIVE);
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for r in 0..rows {
                    alpha += a[(r, p)].norm_sqr();
                    beta += a[(r, q)].norm_sqr();
                    gamma += a[(r, p)].conj() * a[(r, q)];
                }
                let g = gamma.norm();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || g * g <= 1e-34 * scale * scale {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                rotate_columns(&mut a, p, q, cs, sn, phase);
                rotate_columns(&mut v, p, q, cs, sn, phase);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut s = vec![0.0; cols];
    let mut u = CMat::zeros(rows, cols);
    for k in 0..cols {
        let n = a.column(k).norm();
        s[k] = n;
        if n > 0.0 {
            u.set_column(k, &(a.column(k) / c(n, 0.0)));
        }
    }
    (u, s, v)
}

// Columns (p, q) ← (c·x_p − s·x̃_q, s·x_p + c·x̃_q) with x̃_q = conj(phase)·x_q.
fn rotate_columns(m: &mut CMat, p: usize, q: usize, cs: f64, sn: f64, phase: C64) {
    let ph = phase.conj();
    for r in 0..m.nrows() {
        let xp = m[(r, p)];
        let xq = m[(r, q)] * ph;
        m[(r, p)] = xp * cs - xq * sn;
        m[(r, q)] = xp * sn + xq * cs;
    }
}

/// Orthonormal basis (as columns) of the right nullspace of `m`.
///
/// Singular values at or below `rel_tol * max(1, sigma_max)` count as zero.
pub fn nullspace(m: &CMat, rel_tol: f64) -> CMat {
    let cols = m.ncols();
    if cols == 0 {
        return CMat::zeros(0, 0);
    }
    let (_, s, v) = svd(m);
    let cut = rel_tol * s.iter().cloned().fold(1.0, f64::max);
    let keep: Vec<usize> = (0..cols).filter(|&k| s[k] <= cut).collect();
    CMat::from_fn(cols, keep.len(), |r, k| v[(r, keep[k])])
}

/// Orthonormal basis (as columns) of the column space of `m`.
pub fn column_space(m: &CMat, rel_tol: f64) -> CMat {
    let (u, s, _) = svd(m);
    let cut = rel_tol * s.iter().cloned().fold(1.0, f64::max);
    let mut keep: Vec<usize> = (0..s.len()).filter(|&k| s[k] > cut).collect();
    keep.sort_by(|&x, &y| s[y].total_cmp(&s[x]));
    CMat::from_fn(m.nrows(), keep.len(), |r, k| u[(r, keep[k])])
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix,
/// by cyclic Jacobi rotations. Only the upper triangle's Hermitian part matters.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    let mut a = (m + m.adjoint()) * c(0.5, 0.0);
    let mut v = CMat::identity(n, n);
    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    for _sweep in 0..60 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[(i, j)].norm_sqr()).sum();
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g <= 1e-18 * scale {
                    continue;
                }
                // U = diag(1, conj(phase)) · [[c, s], [-s, c]] on (p, q).
                let phase = apq / g;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * g);
                let t = if tau >= 0.0 { 1.0 } else { -1.0 } / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                rotate_columns(&mut a, p, q, cs, sn, phase);
                rotate_columns(&mut v, p, q, cs, sn, phase);
                let ph = phase;
                for col in 0..n {
                    let xp = a[(p, col)];
                    let xq = a[(q, col)] * ph;
                    a[(p, col)] = xp * cs - xq * sn;
                    a[(q, col)] = xp * sn + xq * cs;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let vals = order.iter().map(|&k| a[(k, k)].re).collect();
    let vecs = CMat::from_fn(n, n, |r, k| v[(r, order[k])]);
    (vals, vecs)
}

/// Cholesky factor `L` (lower triangular, `m = L L^†`) of a Hermitian matrix.
///
/// Returns the index and value of the first pivot that does not exceed `floor`.
pub fn cholesky(m: &CMat, floor: f64) -> Result<CMat, (usize, f64)> {
    let n = m.nrows();
    let mut l = CMat::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)].conj();
        }
        if d.re <= floor {
            return Err((j, d.re));
        }
        let dj = d.re.sqrt();
        l[(j, j)] = c(dj, 0.0);
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / dj;
        }
    }
    Ok(l)
}

/// Inverse of a lower-triangular matrix.
pub fn lower_inverse(l: &CMat) -> CMat {
    let n = l.nrows();
    let mut inv = CMat::zeros(n, n);
    for col in 0..n {
        for i in col..n {
            let mut s = if i == col { ONE } else { ZERO };
            for k in col..i {
                s -= l[(i, k)] * inv[(k, col)];
            }
            inv[(i, col)] = s / l[(i, i)];
        }
    }
    inv
}

pub fn inverse(m: &CMat) -> Option<CMat> {
    m.clone().try_inverse()
}

pub fn is_zero(z: C64) -> bool {
    z.re == 0.0 && z.im == 0.0
}
