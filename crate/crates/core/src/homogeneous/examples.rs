use super::{decompose, LieAlgebra, ThreeSymmetricSpace};
use crate::error::Result;
use crate::quaternion::Quaternion as Q;
use crate::tensor::{vector, Matrix, Tensor3};

fn epsilon(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// `su(2)³` with `[e_i, e_j] = 2 ε_ijk e_k` in each factor; index `3f + i`.
pub fn su2_cubed_algebra() -> LieAlgebra {
    let c = Tensor3::from_fn(9, |a, b, c| {
        let (fa, fb, fc) = (a / 3, b / 3, c / 3);
        if fa == fb && fb == fc {
            2.0 * epsilon(a % 3, b % 3, c % 3)
        } else {
            0.0
        }
    });
    LieAlgebra::new(c, 1e-12).expect("su(2)³ structure constants")
}

/// `SU(2)³ / ΔSU(2)` with `s(X, Y, Z) = (Z, X, Y)` and `B = scale·(−Killing)`.
pub fn su2_cubed(scale: f64) -> Result<ThreeSymmetricSpace> {
    assert!(scale > 0.0, "scale must be positive");
    let alg = su2_cubed_algebra();
    let s = Matrix::from_fn(9, 9, |r, c| {
        let (f, i) = (c / 3, c % 3);
        if r == 3 * ((f + 1) % 3) + i {
            1.0
        } else {
            0.0
        }
    });
    let metric = alg.killing_form().scaled(-scale);
    decompose(alg, s, Some(metric), 1e-12)
}

/// The vectors `E_i = [(e_i, 0, 0)]_𝔪` and `F_i = [(0, e_i, 0)]_𝔪` in
/// m-coordinates: the image of `su(2) ⊕ su(2)` under `(X, Y, Z) ↦ (X − Z, Y − Z)`.
pub fn su2_pair_frame(t: &ThreeSymmetricSpace) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let e: Vec<Vec<f64>> = (0..3).map(|i| t.project_m(&vector::unit(9, i))).collect();
    let f: Vec<Vec<f64>> = (0..3)
        .map(|i| t.project_m(&vector::unit(9, 3 + i)))
        .collect();
    (e, f)
}

/// `R²` with trivial bracket, `s` a rotation by `2π/3` and the Euclidean metric.
pub fn abelian() -> Result<ThreeSymmetricSpace> {
    let alg = LieAlgebra::new(Tensor3::zeros(2), 0.0)?;
    let (c, s) = (
        (2.0 * std::f64::consts::PI / 3.0).cos(),
        (2.0 * std::f64::consts::PI / 3.0).sin(),
    );
    let rot = Matrix::from_rows(&[vec![c, -s], vec![s, c]])?;
    decompose(alg, rot, Some(Matrix::identity(2)), 1e-12)
}

// sp(2) as quaternionic skew-Hermitian matrices [[a, b], [−b̄, d]].
// Coordinates: a (i, j, k), d (i, j, k), b (1, i, j, k).
type QMat = [[Q; 2]; 2];

fn sp2_matrix(x: &[f64]) -> QMat {
    let a = Q([0.0, x[0], x[1], x[2]]);
    let d = Q([0.0, x[3], x[4], x[5]]);
    let b = Q([x[6], x[7], x[8], x[9]]);
    [[a, b], [-b.conj(), d]]
}

fn sp2_coords(m: &QMat) -> Vec<f64> {
    let (a, d, b) = (m[0][0].0, m[1][1].0, m[0][1].0);
    vec![a[1], a[2], a[3], d[1], d[2], d[3], b[0], b[1], b[2], b[3]]
}

fn qmul(x: &QMat, y: &QMat) -> QMat {
    std::array::from_fn(|i| std::array::from_fn(|j| x[i][0] * y[0][j] + x[i][1] * y[1][j]))
}

fn sp2_algebra() -> LieAlgebra {
    let e: Vec<QMat> = (0..10).map(|i| sp2_matrix(&vector::unit(10, i))).collect();
    let mut c = Tensor3::zeros(10);
    for i in 0..10 {
        for j in 0..10 {
            let p = qmul(&e[i], &e[j]);
            let q = qmul(&e[j], &e[i]);
            let comm: QMat = std::array::from_fn(|r| std::array::from_fn(|s| p[r][s] - q[r][s]));
            for (k, v) in sp2_coords(&comm).into_iter().enumerate() {
                c[(i, j, k)] = v;
            }
        }
    }
    LieAlgebra::new(c, 1e-12).expect("sp(2) structure constants")
}

/// `Sp(2) / Sp(1)×U(1)` (the complex projective 3-space) with `s = Ad(diag(1, e^{2πi/3}))`.
///
/// `B` is `−Killing` multiplied by `scale_b` on the off-diagonal block and by
/// `scale_d` on the lower-right block of `𝔪`. Equal scales give a naturally
/// reductive metric; unequal scales do not.
pub fn sp2_cp3(scale_b: f64, scale_d: f64) -> Result<ThreeSymmetricSpace> {
    let alg = sp2_algebra();
    let th = 2.0 * std::f64::consts::PI / 3.0;
    let q = Q([th.cos(), th.sin(), 0.0, 0.0]);
    let s_cols: Vec<Vec<f64>> = (0..10)
        .map(|i| {
            let m = sp2_matrix(&vector::unit(10, i));
            let g = [[Q::ONE, Q::ZERO], [Q::ZERO, q]];
            let ginv = [[Q::ONE, Q::ZERO], [Q::ZERO, q.conj()]];
            sp2_coords(&qmul(&qmul(&g, &m), &ginv))
        })
        .collect();
    let s = Matrix::from_columns(&s_cols, 10);
    let w: Vec<f64> = (0..10)
        .map(|i| match i {
            4 | 5 => scale_d.sqrt(),
            6..=9 => scale_b.sqrt(),
            _ => 1.0,
        })
        .collect();
    let k = alg.killing_form();
    let metric = Matrix::from_fn(10, 10, |r, c| -k[(r, c)] * w[r] * w[c]);
    decompose(alg, s, Some(metric), 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homogeneous::{check_naturally_reductive, to_nk_model};

    #[test]
    fn su2_killing_normalisation() {
        let k = su2_cubed_algebra().killing_form();
        assert_eq!(k[(0, 0)], -8.0);
        assert_eq!(k[(0, 1)], 0.0);
    }

    #[test]
    fn sp2_split_and_reductivity() {
        let t = sp2_cp3(1.0, 1.0).unwrap();
        assert_eq!((t.dim_h(), t.dim_m()), (4, 6));
        assert!(check_naturally_reductive(&t).passes);
        let bad = sp2_cp3(1.0, 2.0).unwrap();
        let rep = check_naturally_reductive(&bad);
        assert!(!rep.passes && rep.residual > 1e-3);
        assert!(to_nk_model(&bad).is_err());
    }
}
