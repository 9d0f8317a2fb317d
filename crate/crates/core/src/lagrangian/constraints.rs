use serde::Serialize;

use super::CTensor;
use crate::tensor::{null_space, rank, svd, Matrix, Tensor3};

/// Coordinates on totally symmetric trilinear forms in dimension `n`: one
/// coordinate per multi-index `i ≤ j ≤ k`, equal to the entry `C_ijk`.
#[derive(Clone, Debug)]
pub struct SymTensorSpace {
    n: usize,
    multi: Vec<[usize; 3]>,
    index: Vec<usize>,
}

impl SymTensorSpace {
    pub fn new(n: usize) -> Self {
        let mut multi = Vec::new();
        let mut index = vec![0; n * n * n];
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    multi.push([i, j, k]);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut s = [a, b, c];
                    s.sort_unstable();
                    index[(a * n + b) * n + c] = multi.iter().position(|m| *m == s).unwrap();
                }
            }
        }
        Self { n, multi, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of coordinates, `n(n+1)(n+2)/6`.
    pub fn len(&self) -> usize {
        self.multi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multi.is_empty()
    }

    pub fn multi_indices(&self) -> &[[usize; 3]] {
        &self.multi
    }

    pub fn coordinate(&self, a: usize, b: usize, c: usize) -> usize {
        self.index[(a * self.n + b) * self.n + c]
    }

    /// The row representing `C ↦ Σ w(a,b,c) C_abc`.
    pub fn functional(&self, mut w: impl FnMut(usize, usize, usize) -> f64) -> Vec<f64> {
        let n = self.n;
        let mut row = vec![0.0; self.len()];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = w(a, b, c);
                    if v != 0.0 {
                        row[self.coordinate(a, b, c)] += v;
                    }
                }
            }
        }
        row
    }

    pub fn to_tensor(&self, v: &[f64]) -> CTensor {
        CTensor::new(Tensor3::from_fn(self.n, |a, b, c| {
            v[self.coordinate(a, b, c)]
        }))
    }

    pub fn from_tensor(&self, c: &CTensor) -> Vec<f64> {
        self.multi
            .iter()
            .map(|&[i, j, k]| c.entries()[(i, j, k)])
            .collect()
    }

    /// `C ↦ h(Z) = Σ_i C(e_i, e_i, e_z)`.
    pub fn trace_functional(&self, z: usize) -> Vec<f64> {
        self.functional(|a, b, c| if a == b && c == z { 1.0 } else { 0.0 })
    }

    /// `C ↦ C(e_x, e_y, e_z)`.
    pub fn entry_functional(&self, x: usize, y: usize, z: usize) -> Vec<f64> {
        let mut row = vec![0.0; self.len()];
        row[self.coordinate(x, y, z)] = 1.0;
        row
    }

    /// Rows of `C ↦ α(e_x, e_y)` for all `x, y`.
    pub fn alpha_trace_functionals(&self, t: &Tensor3) -> Vec<Vec<f64>> {
        let n = self.n;
        let mut rows = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                rows.push(self.functional(|a, b, c| if b == x { t[(a, y, c)] } else { 0.0 }));
            }
        }
        rows
    }
}

/// The cyclic identity as linear constraints, one row per basis quadruple
/// `(x, y, z, v)`: `C(x,y,T(z,v)) + C(x,z,T(v,y)) + C(x,v,T(y,z)) = 0`.
pub fn cyc2_rows(space: &SymTensorSpace, t: &Tensor3) -> Matrix {
    let n = space.n();
    let mut m = Matrix::zeros(0, space.len());
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for v in 0..n {
                    let mut row = vec![0.0; space.len()];
                    for c in 0..n {
                        row[space.coordinate(x, y, c)] += t[(z, v, c)];
                        row[space.coordinate(x, z, c)] += t[(v, y, c)];
                        row[space.coordinate(x, v, c)] += t[(y, z, c)];
                    }
                    if row.iter().any(|r| *r != 0.0) {
                        m.push_row(&row);
                    }
                }
            }
        }
    }
    m
}

/// Outcome of testing whether functionals lie in the row space of a constraint matrix.
#[derive(Clone, Debug, Serialize)]
pub struct Containment {
    pub rank_constraints: usize,
    pub rank_augmented: usize,
    /// Dimension of the solution space of the constraints.
    pub solution_dim: usize,
    /// Largest value of a functional on a unit vector of the solution space.
    pub residual: f64,
}

impl Containment {
    pub fn contained(&self, tol: f64) -> bool {
        self.rank_constraints == self.rank_augmented && self.residual <= tol
    }
}

const RANK_TOL: f64 = 1e-9;

/// Row-space containment by rank comparison, with the functionals also
/// evaluated on an orthonormal basis of the solution space.
pub fn row_space_containment(
    constraints: &Matrix,
    functionals: &[Vec<f64>],
    cols: usize,
) -> Containment {
    let (rank_constraints, solution) = if constraints.rows() == 0 {
        (0, null_space(&Matrix::zeros(0, cols), RANK_TOL))
    } else {
        let s = svd(constraints);
        let r = s.rank(RANK_TOL, 1e-300);
        (r, (r..cols).map(|j| s.v.column(j)).collect())
    };
    let mut aug = if constraints.rows() == 0 {
        Matrix::zeros(0, cols)
    } else {
        constraints.clone()
    };
    for f in functionals {
        aug.push_row(f);
    }
    let rank_augmented = if aug.rows() == 0 {
        0
    } else {
        rank(&aug, RANK_TOL)
    };
    let mut residual: f64 = 0.0;
    for v in &solution {
        for f in functionals {
            let s: f64 = f.iter().zip(v).map(|(a, b)| a * b).sum();
            residual = residual.max(s.abs());
        }
    }
    Containment {
        rank_constraints,
        rank_augmented,
        solution_dim: solution.len(),
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_dimension() {
        assert_eq!(SymTensorSpace::new(3).len(), 10);
        assert_eq!(SymTensorSpace::new(5).len(), 35);
        assert_eq!(SymTensorSpace::new(7).len(), 84);
    }

    #[test]
    fn coordinates_round_trip() {
        let s = SymTensorSpace::new(3);
        let v: Vec<f64> = (0..10).map(|i| i as f64).collect();
        assert_eq!(s.from_tensor(&s.to_tensor(&v)), v);
    }

    #[test]
    fn containment_of_simple_rows() {
        let a = Matrix::from_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let yes = row_space_containment(&a, &[vec![1.0, 1.0, 0.0]], 3);
        assert!(yes.contained(1e-12));
        let no = row_space_containment(&a, &[vec![0.0, 0.0, 1.0]], 3);
        assert!(!no.contained(1e-12));
        assert_eq!(no.rank_augmented, 3);
    }
}
