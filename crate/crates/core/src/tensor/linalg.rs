use super::{sym_eigendecomposition, vector, Matrix};
use crate::error::{Error, Result};

/// Singular values with right singular vectors.
#[derive(Clone, Debug)]
pub struct Svd {
    /// Descending.
    pub singular_values: Vec<f64>,
    /// Right singular vectors as columns, in the order of `singular_values`.
    pub v: Matrix,
}

impl Svd {
    /// Number of singular values above `rel_tol · σ_max` (and above `abs_floor`).
    pub fn rank(&self, rel_tol: f64, abs_floor: f64) -> usize {
        let smax = self.singular_values.first().copied().unwrap_or(0.0);
        let thr = (rel_tol * smax).max(abs_floor);
        self.singular_values.iter().filter(|&&s| s > thr).count()
    }
}

/// Reduces a tall matrix, given by its columns, to the columns of its `n×n`
/// triangular factor with Householder reflections. Singular values and right
/// singular vectors are unchanged.
fn householder_r(mut cols: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = cols.len();
    let m = cols.first().map_or(0, Vec::len);
    for k in 0..n.min(m) {
        let norm = vector::norm(&cols[k][k..]);
        if norm == 0.0 {
            continue;
        }
        let alpha = if cols[k][k] > 0.0 { -norm } else { norm };
        let mut v = cols[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm2 = vector::dot(&v, &v);
        if vnorm2 == 0.0 {
            continue;
        }
        for col in cols.iter_mut().skip(k) {
            let f = 2.0 * vector::dot(&v, &col[k..]) / vnorm2;
            for (c, vi) in col[k..].iter_mut().zip(&v) {
                *c -= f * vi;
            }
        }
    }
    for (j, col) in cols.iter_mut().enumerate() {
        col.truncate(n);
        for c in col.iter_mut().skip(j + 1) {
            *c = 0.0;
        }
    }
    cols
}

/// One-sided (Hestenes) Jacobi SVD. Tall inputs are first reduced by QR.
pub fn svd(a: &Matrix) -> Svd {
    let n = a.cols();
    let mut u = if a.rows() > n {
        householder_r(a.columns())
    } else {
        a.columns()
    };
    let mut v: Vec<Vec<f64>> = (0..n).map(|j| vector::unit(n, j)).collect();
    // Columns this small are numerically zero; rotating them never converges.
    let negligible = 1e-30 * u.iter().map(|c| vector::dot(c, c)).sum::<f64>();
    let rotate = |x: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64| {
        let (lo, hi) = x.split_at_mut(q);
        for (xp, xq) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
            let (a, b) = (*xp, *xq);
            *xp = c * a - s * b;
            *xq = s * a + c * b;
        }
    };
    for _ in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = vector::dot(&u[p], &u[p]);
                let beta = vector::dot(&u[q], &u[q]);
                let gamma = vector::dot(&u[p], &u[q]);
                if gamma.abs() <= 1e-15 * (alpha * beta).sqrt()
                    || gamma == 0.0
                    || alpha <= negligible
                    || beta <= negligible
                {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut u, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = u.iter().map(|c| vector::norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));
    Svd {
        singular_values: order.iter().map(|&j| norms[j]).collect(),
        v: Matrix::from_fn(n, n, |r, c| v[order[c]][r]),
    }
}

/// Numerical rank with a relative threshold on the singular values.
pub fn rank(a: &Matrix, rel_tol: f64) -> usize {
    if a.rows() == 0 || a.cols() == 0 {
        return 0;
    }
    svd(a).rank(rel_tol, 1e-300)
}

/// Orthonormal basis of `{x : A x = 0}`.
pub fn null_space(a: &Matrix, rel_tol: f64) -> Vec<Vec<f64>> {
    null_space_with_floor(a, rel_tol, 1e-300)
}

/// As [`null_space`], also treating singular values `≤ abs_floor` as zero.
pub fn null_space_with_floor(a: &Matrix, rel_tol: f64, abs_floor: f64) -> Vec<Vec<f64>> {
    let n = a.cols();
    if a.rows() == 0 {
        return (0..n).map(|i| vector::unit(n, i)).collect();
    }
    let s = svd(a);
    let r = s.rank(rel_tol, abs_floor);
    (r..n).map(|j| s.v.column(j)).collect()
}

/// Minimum-norm least-squares solution of `A x ≈ b`.
pub fn lstsq_min_norm(a: &Matrix, b: &[f64], rel_tol: f64) -> Vec<f64> {
    let n = a.cols();
    let s = svd(a);
    let r = s.rank(rel_tol, 1e-300);
    let atb = a.transpose().apply(b);
    let mut x = vec![0.0; n];
    for j in 0..r {
        let vj = s.v.column(j);
        let sigma = s.singular_values[j];
        let coef = vector::dot(&vj, &atb) / (sigma * sigma);
        vector::axpy(coef, &vj, &mut x);
    }
    x
}

/// Modified Gram–Schmidt (two passes) in the Euclidean inner product.
/// Fails if the vectors are dependent up to `tol`.
pub fn gram_schmidt(vectors: &[Vec<f64>], tol: f64) -> Result<Vec<Vec<f64>>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = vector::dot(q, &w);
                vector::axpy(-c, q, &mut w);
            }
        }
        let nrm = vector::norm(&w);
        if nrm <= tol {
            return Err(Error::Dependent { index: idx });
        }
        out.push(vector::scale(&w, 1.0 / nrm));
    }
    Ok(out)
}

/// Orthonormal basis of the span of possibly dependent vectors.
pub fn orthonormal_basis(vectors: &[Vec<f64>], dim: usize, rel_tol: f64) -> Vec<Vec<f64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    // Row space of the matrix whose rows are the vectors.
    let a = Matrix::from_fn(vectors.len(), dim, |i, j| vectors[i][j]);
    let s = svd(&a);
    let r = s.rank(rel_tol, 1e-300);
    (0..r).map(|j| s.v.column(j)).collect()
}

/// Orthogonal projector onto the span of an orthonormal family.
pub fn projector(orthonormal: &[Vec<f64>], dim: usize) -> Matrix {
    let mut p = Matrix::zeros(dim, dim);
    for q in orthonormal {
        for i in 0..dim {
            for j in 0..dim {
                p[(i, j)] += q[i] * q[j];
            }
        }
    }
    p
}

/// Intersection of two subspaces given by orthonormal bases.
///
/// Uses the spectrum of `P_a P_b P_a`: directions with eigenvalue above `0.5`
/// lie (numerically) in both subspaces. Returns an orthonormal basis.
pub fn intersection(a: &[Vec<f64>], b: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let pa = projector(a, dim);
    let pb = projector(b, dim);
    let m = &(&pa * &pb) * &pa;
    let sym = Matrix::from_fn(dim, dim, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    let e = sym_eigendecomposition(&sym, f64::INFINITY).expect("symmetrised input");
    let mut out: Vec<Vec<f64>> = Vec::new();
    for i in (0..dim).rev() {
        if e.eigenvalues[i] > 0.5 {
            out.push(e.eigenvector(i));
        }
    }
    out
}

/// Gauss–Jordan inverse with partial pivoting.
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.rows();
    if !m.is_square() {
        return Err(Error::Singular);
    }
    let mut a = m.clone();
    let mut inv = Matrix::identity(n);
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[(i, col)].abs().total_cmp(&a[(j, col)].abs()))
            .unwrap();
        if a[(piv, col)].abs() <= 1e-13 * scale {
            return Err(Error::Singular);
        }
        for j in 0..n {
            let (x, y) = (a[(col, j)], a[(piv, j)]);
            a[(col, j)] = y;
            a[(piv, j)] = x;
            let (x, y) = (inv[(col, j)], inv[(piv, j)]);
            inv[(col, j)] = y;
            inv[(piv, j)] = x;
        }
        let d = a[(col, col)];
        for j in 0..n {
            a[(col, j)] /= d;
            inv[(col, j)] /= d;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = a[(i, col)];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                a[(i, j)] -= f * a[(col, j)];
                inv[(i, j)] -= f * inv[(col, j)];
            }
        }
    }
    Ok(inv)
}

/// Lower-triangular Cholesky factor; `None` if not positive definite.
pub fn cholesky(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if s <= 0.0 || !s.is_finite() {
                    return None;
                }
                l[(i, i)] = s.sqrt();
            } else {
                l[(i, j)] = s / l[(j, j)];
            }
        }
    }
    Some(l)
}
