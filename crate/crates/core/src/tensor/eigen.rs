use super::Matrix;
use crate::error::{Error, Result};

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymEigResult {
    /// Sorted ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `eigenvalues`.
    pub eigenvectors: Matrix,
}

impl SymEigResult {
    pub fn eigenvector(&self, i: usize) -> Vec<f64> {
        self.eigenvectors.column(i)
    }

    /// `‖V Λ Vᵀ − m‖∞`
    pub fn reconstruction_residual(&self, m: &Matrix) -> f64 {
        let v = &self.eigenvectors;
        let lam = Matrix::from_diagonal(&self.eigenvalues);
        let rec = &(v * &lam) * &v.transpose();
        (&rec - m).max_abs()
    }

    /// `‖Vᵀ V − I‖∞`
    pub fn orthogonality_residual(&self) -> f64 {
        let v = &self.eigenvectors;
        (&(&v.transpose() * v) - &Matrix::identity(v.cols())).max_abs()
    }
}

/// A cluster of numerically equal eigenvalues.
#[derive(Clone, Debug)]
pub struct EigenGroup {
    /// Mean of the merged eigenvalues.
    pub value: f64,
    pub multiplicity: usize,
    /// Orthonormal basis of the eigenspace (one vector per merged eigenvalue).
    pub basis: Vec<Vec<f64>>,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Fails with `NotSymmetric` when `max |m_ij − m_ji| > tol`; the matrix is
/// symmetrised before iterating so that round-off asymmetry below `tol`
/// cannot leak into the result.
pub fn sym_eigendecomposition(m: &Matrix, tol: f64) -> Result<SymEigResult> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
            context: "eigendecomposition of a non-square matrix".into(),
        });
    }
    let asym = m.asymmetry();
    if asym > tol {
        return Err(Error::NotSymmetric { residual: asym });
    }
    let n = m.rows();
    let mut a = Matrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    let mut v = Matrix::identity(n);

    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= f64::EPSILON * scale * 1e-2 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let eigenvalues = order.iter().map(|&i| a[(i, i)]).collect();
    let eigenvectors = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(SymEigResult {
        eigenvalues,
        eigenvectors,
    })
}

// Applies the rotation in the (p, q) plane that annihilates a[p][q].
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Merges consecutive eigenvalues that differ by at most `tol`.
/// Multiplicities always sum to the dimension.
pub fn group_eigenvalues(e: &SymEigResult, tol: f64) -> Vec<EigenGroup> {
    let mut groups: Vec<EigenGroup> = Vec::new();
    let mut sum = 0.0;
    for (i, &lam) in e.eigenvalues.iter().enumerate() {
        let vec = e.eigenvector(i);
        match groups.last_mut() {
            Some(g) if (lam - e.eigenvalues[i - 1]).abs() <= tol => {
                g.multiplicity += 1;
                g.basis.push(vec);
                sum += lam;
                g.value = sum / g.multiplicity as f64;
            }
            _ => {
                sum = lam;
                groups.push(EigenGroup {
                    value: lam,
                    multiplicity: 1,
                    basis: vec![vec],
                });
            }
        }
    }
    groups
}
