//! Dense linear and multilinear algebra on small real spaces.
//!
//! Everything in the engine lives in dimensions of at most a few dozen, so the
//! types here are plain row-major buffers without any sparsity or blocking.
//! Vectors are ordinary `Vec<f64>` / `&[f64]` with the helpers in [`vector`].

mod eigen;
mod forms;
mod linalg;

pub use eigen::{group_eigenvalues, sym_eigendecomposition, EigenGroup, SymEigResult};
pub use forms::{multi_indices, ExteriorForm};
pub use linalg::{
    cholesky, gram_schmidt, intersection, inverse, lstsq_min_norm, null_space,
    null_space_with_floor, orthonormal_basis, projector, rank, svd, Svd,
};

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};

/// Free functions on coordinate vectors.
pub mod vector {
    pub fn dot(x: &[f64], y: &[f64]) -> f64 {
        x.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    pub fn norm(x: &[f64]) -> f64 {
        dot(x, x).sqrt()
    }

    pub fn scale(x: &[f64], s: f64) -> Vec<f64> {
        x.iter().map(|a| a * s).collect()
    }

    pub fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
        x.iter().zip(y).map(|(a, b)| a - b).collect()
    }

    /// `y += s * x`
    pub fn axpy(s: f64, x: &[f64], y: &mut [f64]) {
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi += s * xi;
        }
    }

    pub fn max_abs(x: &[f64]) -> f64 {
        x.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn unit(dim: usize, i: usize) -> Vec<f64> {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        e
    }

    pub fn is_finite(x: &[f64]) -> bool {
        x.iter().all(|a| a.is_finite())
    }
}

/// Row-major dense matrix. Houses bilinear forms (metrics) and endomorphisms.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// A symmetric bilinear form in some fixed basis.
pub type BilinearForm = Matrix;
/// A linear map of a space to itself, acting on column vectors.
pub type Endomorphism = Matrix;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        Self::from_fn(
            diag.len(),
            diag.len(),
            |i, j| if i == j { diag[i] } else { 0.0 },
        )
    }

    /// Builds a matrix from nested rows; ragged input is rejected.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<f64>], rows: usize) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks(self.cols.max(1))
            .map(<[f64]>::to_vec)
            .take(self.rows)
            .collect()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| vector::dot(self.row(i), x))
            .collect()
    }

    /// `xᵀ M y`
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        vector::dot(x, &self.apply(y))
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        vector::max_abs(&self.data)
    }

    pub fn is_finite(&self) -> bool {
        vector::is_finite(&self.data)
    }

    /// Largest entry of `|M - Mᵀ|`.
    pub fn asymmetry(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..i {
                m = m.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        m
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Block-diagonal sum of two square matrices.
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let n = a.rows + b.rows;
        let mut out = Matrix::zeros(n, n);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out[(i, j)] = a[(i, j)];
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out[(a.rows + i, a.cols + j)] = b[(i, j)];
            }
        }
        out
    }

    /// Stacks the rows of `other` under `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn push_row(&mut self, row: &[f64]) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Restriction `Pᵀ M P` to the span of the columns of `p`.
    pub fn congruence(&self, p: &Matrix) -> Matrix {
        &(&p.transpose() * self) * p
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, r) in dst.iter_mut().zip(row) {
                    *d += a * r;
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Dense `d×d×d` array. `t[(i, j, k)]` is the value on the basis triple
/// `(e_i, e_j, e_k)`; for vector-valued bilinear maps such as `∇J` the last
/// index is the output component.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    dim: usize,
    data: Vec<f64>,
}

/// A trilinear form in a fixed basis.
pub type Trilinear = Tensor3;

impl Tensor3 {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    data.push(f(i, j, k));
                }
            }
        }
        Self { dim, data }
    }

    /// Builds from nested `[i][j][k]` arrays; ragged or non-cubic input is rejected.
    pub fn from_nested(nested: &[Vec<Vec<f64>>]) -> Result<Self> {
        let d = nested.len();
        let ok = nested
            .iter()
            .all(|m| m.len() == d && m.iter().all(|r| r.len() == d));
        if !ok {
            return Err(Error::Parse("rank-3 array is ragged or not cubic".into()));
        }
        Ok(Self::from_fn(d, |i, j, k| nested[i][j][k]))
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<f64>>> {
        let d = self.dim;
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).map(|k| self[(i, j, k)]).collect())
                    .collect()
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_abs(&self) -> f64 {
        vector::max_abs(&self.data)
    }

    pub fn is_finite(&self) -> bool {
        vector::is_finite(&self.data)
    }

    /// Vector-valued bilinear map `(x, y) ↦ Σ x_i y_j t[i][j][·]`.
    pub fn apply2(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d];
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                let c = x[i] * y[j];
                if c == 0.0 {
                    continue;
                }
                let base = (i * d + j) * d;
                for k in 0..d {
                    out[k] += c * self.data[base + k];
                }
            }
        }
        out
    }

    /// Output vector on a basis pair, i.e. `t[i][j][·]`.
    pub fn slot(&self, i: usize, j: usize) -> &[f64] {
        let base = (i * self.dim + j) * self.dim;
        &self.data[base..base + self.dim]
    }

    pub fn eval(&self, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
        vector::dot(&self.apply2(x, y), z)
    }

    /// Linear change of basis on all three slots: `t'(a,b,c) = t(P e_a, P e_b, P e_c)`
    /// for covariant tensors, with `p` holding the new basis as columns.
    pub fn pullback(&self, p: &Matrix) -> Tensor3 {
        let cols = p.columns();
        let n = cols.len();
        Tensor3::from_fn(n, |a, b, c| self.eval(&cols[a], &cols[b], &cols[c]))
    }

    pub fn scaled(&self, s: f64) -> Tensor3 {
        Tensor3 {
            dim: self.dim,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// Largest deviation from total antisymmetry.
    pub fn antisymmetry_residual(&self) -> f64 {
        let d = self.dim;
        let mut m: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = self[(i, j, k)];
                    m = m.max((v + self[(j, i, k)]).abs());
                    m = m.max((v + self[(i, k, j)]).abs());
                }
            }
        }
        m
    }

    /// Largest deviation from total symmetry.
    pub fn symmetry_residual(&self) -> f64 {
        let d = self.dim;
        let mut m: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = self[(i, j, k)];
                    m = m.max((v - self[(j, i, k)]).abs());
                    m = m.max((v - self[(i, k, j)]).abs());
                }
            }
        }
        m
    }

    /// Block-diagonal sum: entries with all three indices in the same block.
    pub fn block_diag(a: &Tensor3, b: &Tensor3) -> Tensor3 {
        let (da, db) = (a.dim, b.dim);
        Tensor3::from_fn(da + db, |i, j, k| {
            if i < da && j < da && k < da {
                a[(i, j, k)]
            } else if i >= da && j >= da && k >= da {
                b[(i - da, j - da, k - da)]
            } else {
                0.0
            }
        })
    }
}

impl Index<(usize, usize, usize)> for Tensor3 {
    type Output = f64;
    fn index(&self, (i, j, k): (usize, usize, usize)) -> &f64 {
        &self.data[(i * self.dim + j) * self.dim + k]
    }
}

impl IndexMut<(usize, usize, usize)> for Tensor3 {
    fn index_mut(&mut self, (i, j, k): (usize, usize, usize)) -> &mut f64 {
        &mut self.data[(i * self.dim + j) * self.dim + k]
    }
}

/// Evaluates a trilinear form on three vectors, checking dimensions.
pub fn trilinear_eval(t: &Trilinear, x: &[f64], y: &[f64], z: &[f64]) -> Result<f64> {
    let d = t.dim();
    for (slot, v) in [x, y, z].iter().enumerate() {
        if v.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.len(),
                context: format!("trilinear argument {slot}"),
            });
        }
    }
    Ok(t.eval(x, y, z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trilinear_zero_argument() {
        let t = Tensor3::from_fn(3, |i, j, k| (i + 2 * j + 3 * k) as f64);
        let z = vec![0.0; 3];
        assert_eq!(
            trilinear_eval(&t, &z, &[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap(),
            0.0
        );
    }

    #[test]
    fn trilinear_basis_delta() {
        let mut t = Tensor3::zeros(3);
        t[(0, 1, 2)] = 1.0;
        let e = |i| vector::unit(3, i);
        assert_eq!(trilinear_eval(&t, &e(0), &e(1), &e(2)).unwrap(), 1.0);
        assert_eq!(trilinear_eval(&t, &e(1), &e(0), &e(2)).unwrap(), 0.0);
    }

    #[test]
    fn trilinear_dimension_mismatch() {
        let t = Tensor3::zeros(3);
        let err = trilinear_eval(&t, &[1.0, 0.0], &[0.0; 3], &[0.0; 3]).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 3,
                found: 2,
                ..
            }
        ));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
        assert!(Tensor3::from_nested(&[vec![vec![1.0]], vec![vec![1.0]]]).is_err());
    }

    #[test]
    fn block_diag_shapes() {
        let a = Matrix::identity(2);
        let b = Matrix::from_diagonal(&[3.0]);
        let c = Matrix::block_diag(&a, &b);
        assert_eq!(c.rows(), 3);
        assert_eq!(c[(2, 2)], 3.0);
        assert_eq!(c[(0, 2)], 0.0);
    }
}
