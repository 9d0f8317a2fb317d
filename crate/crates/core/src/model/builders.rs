use super::NKModel;
use crate::homogeneous;
use crate::octonion;
use crate::tensor::{vector, Matrix, Tensor3};

const DEFAULT_TOL: f64 = 1e-9;

/// Standard complex structure on `R^{2n}`: `J e_{2k} = e_{2k+1}`.
pub(crate) fn standard_j(n: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        j[(2 * k + 1, 2 * k)] = 1.0;
        j[(2 * k, 2 * k + 1)] = -1.0;
    }
    j
}

/// Flat `ℂⁿ`: standard `J`, `A = 0`.
pub fn flat_kahler(n: usize) -> NKModel {
    assert!(n >= 1, "flat Kähler model needs n ≥ 1");
    NKModel::orthonormal(
        &format!("flat-kahler:{n}"),
        standard_j(n),
        Tensor3::zeros(2 * n),
        DEFAULT_TOL,
    )
    .expect("flat model is well formed")
}

/// The round six-sphere at `p = e1`, tangent frame `e2, …, e7`.
pub fn s6() -> NKModel {
    s6_scaled(1.0)
}

/// `S⁶` with its metric multiplied by `scale`; the type constant becomes `1/scale`.
pub fn s6_scaled(scale: f64) -> NKModel {
    assert!(scale > 0.0, "scale must be positive");
    let p = vector::unit(7, 0);
    let tangent: Vec<Vec<f64>> = (1..7).map(|i| vector::unit(7, i)).collect();
    let restrict = |v: &[f64]| -> Vec<f64> { v[1..].to_vec() };
    let j = Matrix::from_fn(6, 6, |r, c| restrict(&octonion::cross(&p, &tangent[c]))[r]);
    let f = 1.0 / scale.sqrt();
    let a = Tensor3::from_fn(6, |x, y, z| {
        let xy = octonion::cross(&tangent[x], &tangent[y]);
        f * restrict(&xy)[z]
    });
    let name = if scale == 1.0 {
        "s6".to_string()
    } else {
        format!("s6:{scale}")
    };
    NKModel::orthonormal(&name, j, a, DEFAULT_TOL).expect("octonion model is well formed")
}

/// `S³×S³` as the three-symmetric space `SU(2)³ / ΔSU(2)`, metric
/// `scale · (−Killing)` restricted to `𝔪`.
pub fn s3s3(scale: f64) -> NKModel {
    let space = homogeneous::su2_cubed(scale).expect("SU(2)³ decomposition");
    let name = if scale == 1.0 {
        "s3s3".to_string()
    } else {
        format!("s3s3:{scale}")
    };
    homogeneous::to_nk_model(&space)
        .expect("SU(2)³ is naturally reductive")
        .with_name(&name)
}

/// Riemannian product: block-diagonal `J` and `A`.
pub fn product(m1: &NKModel, m2: &NKModel) -> NKModel {
    let j = Matrix::block_diag(m1.j(), m2.j());
    let a = Tensor3::block_diag(m1.a(), m2.a());
    let name = format!("product:{},{}", m1.name(), m2.name());
    NKModel::orthonormal(&name, j, a, m1.tol().max(m2.tol())).expect("product of models")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{r_matrix, verify_model};

    #[test]
    fn s6_complex_structure_and_torsion_in_the_tangent_space() {
        let m = s6();
        // J e2 = e1 e2 = e3, i.e. frame 0 ↦ frame 1.
        assert_eq!(m.apply_j(&vector::unit(6, 0)), vector::unit(6, 1));
        // A(X, X) = 0
        for i in 0..6 {
            assert!(vector::max_abs(m.a().slot(i, i)) == 0.0);
        }
        assert!(verify_model(&m).passed());
    }

    #[test]
    fn product_r_is_block_diagonal_exactly() {
        let a = flat_kahler(1);
        let b = s6();
        let p = product(&a, &b);
        let r = r_matrix(&p);
        let expected = Matrix::block_diag(&r_matrix(&a), &r_matrix(&b));
        assert_eq!(r, expected);
    }

    #[test]
    fn scaled_sphere_alpha() {
        let tc = crate::model::type_constant(&s6_scaled(2.0));
        assert!((tc.alpha_type - 0.5).abs() < 1e-12);
    }
}
