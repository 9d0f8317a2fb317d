//! Three-symmetric spaces `G/H` at the Lie algebra level.
//!
//! A Lie algebra is given by structure constants `c[(i, j, k)]`, meaning
//! `[e_i, e_j] = Σ_k c_ijk e_k`. An order-three automorphism `s` splits
//! `𝔤 = 𝔥 ⊕ 𝔪` with `𝔥 = ker(s − Id)` and `𝔪 = im(s − Id)`, and
//! `s|𝔪 = −½ Id + (√3/2) J` defines the almost complex structure.
//!
//! Vectors of `𝔪` are handled in coordinates of a `B`-orthonormal basis of
//! `𝔪` ("m-coordinates"); vectors of `𝔤` in the structure-constant basis.

mod examples;
mod io;

pub use examples::{abelian, sp2_cp3, su2_cubed, su2_cubed_algebra, su2_pair_frame};
pub use io::StructureFile;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lagrangian::CTensor;
use crate::model::NKModel;
use crate::tensor::{cholesky, inverse, null_space, orthonormal_basis, vector, Matrix, Tensor3};

/// A real Lie algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    c: Tensor3,
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity to `tol`.
    pub fn new(c: Tensor3, tol: f64) -> Result<Self> {
        let alg = Self { c };
        let d = alg.dim();
        let mut anti: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    anti = anti.max((alg.c[(i, j, k)] + alg.c[(j, i, k)]).abs());
                }
            }
        }
        if anti > tol {
            return Err(Error::ModelInvalid(format!(
                "bracket is not antisymmetric ({anti:e})"
            )));
        }
        let jac = alg.jacobi_residual();
        if jac > tol {
            return Err(Error::ModelInvalid(format!(
                "Jacobi identity fails ({jac:e})"
            )));
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.c.dim()
    }

    pub fn structure_constants(&self) -> &Tensor3 {
        &self.c
    }

    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.c.apply2(x, y)
    }

    /// Matrix of `ad_x` acting on column vectors.
    pub fn ad(&self, x: &[f64]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vec<f64>> = (0..d)
            .map(|j| self.bracket(x, &vector::unit(d, j)))
            .collect();
        Matrix::from_columns(&cols, d)
    }

    /// `K(x, y) = tr(ad_x ad_y)`.
    pub fn killing_form(&self) -> Matrix {
        let d = self.dim();
        let ads: Vec<Matrix> = (0..d).map(|i| self.ad(&vector::unit(d, i))).collect();
        Matrix::from_fn(d, d, |i, j| (&ads[i] * &ads[j]).trace())
    }

    pub fn jacobi_residual(&self) -> f64 {
        let d = self.dim();
        let e = |i| vector::unit(d, i);
        let mut r: f64 = 0.0;
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let a = self.bracket(&e(i), &self.bracket(&e(j), &e(k)));
                    let b = self.bracket(&e(j), &self.bracket(&e(k), &e(i)));
                    let c = self.bracket(&e(k), &self.bracket(&e(i), &e(j)));
                    for t in 0..d {
                        r = r.max((a[t] + b[t] + c[t]).abs());
                    }
                }
            }
        }
        r
    }
}

/// The reductive split `𝔤 = 𝔥 ⊕ 𝔪` of an order-three automorphism, with metric and `J` on `𝔪`.
#[derive(Clone, Debug)]
pub struct ThreeSymmetricSpace {
    algebra: LieAlgebra,
    s_star: Matrix,
    /// Basis of `𝔥` in `𝔤`-coordinates.
    h_basis: Vec<Vec<f64>>,
    /// `B`-orthonormal basis of `𝔪` in `𝔤`-coordinates.
    m_basis: Vec<Vec<f64>>,
    /// `𝔤 → m-coordinates`, the projection along `𝔥`.
    proj_m: Matrix,
    /// `𝔤 → 𝔥`-coefficients, the projection along `𝔪`.
    proj_h: Matrix,
    /// `J` in m-coordinates.
    j: Matrix,
    tol: f64,
}

/// Result of the natural reductivity test.
#[derive(Clone, Debug, Serialize)]
pub struct NaturalReductivityReport {
    pub residual: f64,
    pub passes: bool,
}

/// Splits `𝔤` along an order-three automorphism.
///
/// `metric` is a symmetric form on all of `𝔤` whose restriction to `𝔪` is
/// used as `B`; by default `−Killing`.
pub fn decompose(
    algebra: LieAlgebra,
    s_star: Matrix,
    metric: Option<Matrix>,
    tol: f64,
) -> Result<ThreeSymmetricSpace> {
    let d = algebra.dim();
    if s_star.rows() != d || s_star.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: s_star.rows(),
            context: "automorphism size".into(),
        });
    }
    let cube = &(&s_star * &s_star) * &s_star;
    let order = (&cube - &Matrix::identity(d)).max_abs();
    if order > tol {
        return Err(Error::NotOrderThree { residual: order });
    }
    let mut auto: f64 = 0.0;
    for i in 0..d {
        for k in 0..d {
            let (ei, ek) = (vector::unit(d, i), vector::unit(d, k));
            let lhs = s_star.apply(&algebra.bracket(&ei, &ek));
            let rhs = algebra.bracket(&s_star.apply(&ei), &s_star.apply(&ek));
            auto = auto.max(vector::max_abs(&vector::sub(&lhs, &rhs)));
        }
    }
    if auto > tol {
        return Err(Error::NotAutomorphism { residual: auto });
    }

    let s_minus = &s_star - &Matrix::identity(d);
    let h_basis = null_space(&s_minus, 1e-10);
    let m_raw = orthonormal_basis(&s_minus.columns(), d, 1e-10);
    if m_raw.is_empty() {
        return Err(Error::Degenerate(
            "𝔪 = 0: the automorphism is the identity".into(),
        ));
    }
    if h_basis.len() + m_raw.len() != d {
        return Err(Error::Degenerate(
            "fixed space and image of s − Id do not span".into(),
        ));
    }

    let metric = match metric {
        Some(b) => {
            if b.rows() != d || b.cols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: b.rows(),
                    context: "metric on the Lie algebra".into(),
                });
            }
            b
        }
        None => algebra.killing_form().scaled(-1.0),
    };
    let asym = metric.asymmetry();
    if asym > tol {
        return Err(Error::NotSymmetric { residual: asym });
    }
    // B-orthonormalise: M' = M L⁻ᵀ where L Lᵀ = Mᵀ B M.
    let mm = Matrix::from_columns(&m_raw, d);
    let gram = metric.congruence(&mm);
    let l = cholesky(&gram).ok_or(Error::BadMetric)?;
    let lit = inverse(&l.transpose())?;
    let mb = &mm * &lit;
    let m_basis = mb.columns();

    let nh = h_basis.len();
    let nm = m_basis.len();
    let mut all = h_basis.clone();
    all.extend(m_basis.iter().cloned());
    let q = Matrix::from_columns(&all, d);
    let qinv = inverse(&q)?;
    let proj_h = Matrix::from_fn(nh, d, |r, c| qinv[(r, c)]);
    let proj_m = Matrix::from_fn(nm, d, |r, c| qinv[(nh + r, c)]);

    let s_m = &(&proj_m * &s_star) * &mb;
    let j = Matrix::from_fn(nm, nm, |r, c| {
        (2.0 / 3f64.sqrt()) * (s_m[(r, c)] + if r == c { 0.5 } else { 0.0 })
    });
    let t = ThreeSymmetricSpace {
        algebra,
        s_star,
        h_basis,
        m_basis,
        proj_m,
        proj_h,
        j,
        tol,
    };
    let jsq = (&(&t.j * &t.j) + &Matrix::identity(nm)).max_abs();
    if jsq > tol.max(1e-9) {
        return Err(Error::Degenerate(format!(
            "s|𝔪 does not induce a complex structure ({jsq:e})"
        )));
    }
    Ok(t)
}

impl ThreeSymmetricSpace {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn s_star(&self) -> &Matrix {
        &self.s_star
    }

    pub fn dim_h(&self) -> usize {
        self.h_basis.len()
    }

    pub fn dim_m(&self) -> usize {
        self.m_basis.len()
    }

    pub fn h_basis(&self) -> &[Vec<f64>] {
        &self.h_basis
    }

    pub fn m_basis(&self) -> &[Vec<f64>] {
        &self.m_basis
    }

    pub fn j(&self) -> &Matrix {
        &self.j
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// m-coordinates → `𝔤`.
    pub fn embed(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.algebra.dim()];
        for (c, b) in x.iter().zip(&self.m_basis) {
            vector::axpy(*c, b, &mut out);
        }
        out
    }

    /// `𝔤 → m-coordinates` along `𝔥`.
    pub fn project_m(&self, x: &[f64]) -> Vec<f64> {
        self.proj_m.apply(x)
    }

    /// `[X, Y]_𝔪` for m-coordinate inputs.
    pub fn bracket_m(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.project_m(&self.algebra.bracket(&self.embed(x), &self.embed(y)))
    }

    /// Largest `𝔥`-component of `[𝔥, 𝔪]`.
    pub fn reductive_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for h in &self.h_basis {
            for m in &self.m_basis {
                let br = self.algebra.bracket(h, m);
                r = r.max(vector::max_abs(&self.proj_h.apply(&br)));
            }
        }
        r
    }

    /// `max |B([Z,X]_𝔪, Y) + B(X, [Z,Y]_𝔪)|` over `Z ∈ 𝔥`, `X, Y ∈ 𝔪`.
    pub fn h_invariance_residual(&self) -> f64 {
        let nm = self.dim_m();
        let mut r: f64 = 0.0;
        for z in &self.h_basis {
            let adz = Matrix::from_fn(nm, nm, |row, col| {
                self.project_m(&self.algebra.bracket(z, &self.m_basis[col]))[row]
            });
            // In a B-orthonormal basis invariance means ad_z is skew.
            r = r.max((&adz + &adz.transpose()).max_abs());
        }
        r
    }

    /// `s*` rebuilt from `(𝔥, 𝔪, J)` compared with the input.
    pub fn reconstruction_residual(&self) -> f64 {
        let d = self.algebra.dim();
        let nm = self.dim_m();
        let s_m = Matrix::from_fn(nm, nm, |r, c| {
            (3f64.sqrt() / 2.0) * self.j[(r, c)] - if r == c { 0.5 } else { 0.0 }
        });
        let mut rebuilt = Matrix::zeros(d, d);
        for i in 0..d {
            let e = vector::unit(d, i);
            let hpart = self.proj_h.apply(&e);
            let mpart = self.project_m(&e);
            let mut img = vec![0.0; d];
            for (c, b) in hpart.iter().zip(&self.h_basis) {
                vector::axpy(*c, b, &mut img);
            }
            let smpart = s_m.apply(&mpart);
            vector::axpy(1.0, &self.embed(&smpart), &mut img);
            for r in 0..d {
                rebuilt[(r, i)] = img[r];
            }
        }
        (&rebuilt - &self.s_star).max_abs()
    }

    /// `ω(X, Y) = B(JX, Y)` in m-coordinates.
    pub fn omega(&self, x: &[f64], y: &[f64]) -> f64 {
        vector::dot(&self.j.apply(x), y)
    }
}

/// `max |B([X,Y]_𝔪, Z) − B(X, [Y,Z]_𝔪)|` over basis triples of `𝔪`.
pub fn check_naturally_reductive(t: &ThreeSymmetricSpace) -> NaturalReductivityReport {
    let nm = t.dim_m();
    let e = |i| vector::unit(nm, i);
    let br: Vec<Vec<Vec<f64>>> = (0..nm)
        .map(|x| (0..nm).map(|y| t.bracket_m(&e(x), &e(y))).collect())
        .collect();
    let mut r: f64 = 0.0;
    for x in 0..nm {
        for y in 0..nm {
            for z in 0..nm {
                r = r.max((br[x][y][z] - br[y][z][x]).abs());
            }
        }
    }
    NaturalReductivityReport {
        residual: r,
        passes: r <= t.tol,
    }
}

/// The pointwise model `g = B`, `J`, `A(X, Y) = −J [X, Y]_𝔪`.
pub fn to_nk_model(t: &ThreeSymmetricSpace) -> Result<NKModel> {
    let nr = check_naturally_reductive(t);
    if !nr.passes {
        return Err(Error::NotNaturallyReductive {
            residual: nr.residual,
        });
    }
    let nm = t.dim_m();
    let e = |i| vector::unit(nm, i);
    let mut a = Tensor3::zeros(nm);
    for x in 0..nm {
        for y in 0..nm {
            let v = t.j.apply(&t.bracket_m(&e(x), &e(y)));
            for k in 0..nm {
                a[(x, y, k)] = -v[k];
            }
        }
    }
    NKModel::orthonormal("three-symmetric", t.j.clone(), a, t.tol.max(1e-9))
}

/// Base-point Levi-Civita connection `½[X,Y]_𝔪` and the difference
/// `∇̄_X Y − ∇_X Y = −½[X,Y]_𝔪` to the canonical connection.
pub fn base_point_connections(
    t: &ThreeSymmetricSpace,
    x: &[f64],
    y: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let b = t.bracket_m(x, y);
    (vector::scale(&b, 0.5), vector::scale(&b, -0.5))
}

/// `C(X, Y, Z) = ½ B([X,Y]_𝔪, JZ)` in an orthonormalisation of `l` (m-coordinates).
pub fn invariant_second_fundamental(t: &ThreeSymmetricSpace, l: &[Vec<f64>]) -> Result<CTensor> {
    let tol = t.tol.max(1e-9);
    let l = &crate::tensor::gram_schmidt(l, 1e-12)?;
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            let w = t.omega(&l[i], &l[j]);
            if w.abs() > tol {
                return Err(Error::NotLagrangian { i, j, value: w });
            }
        }
    }
    if 2 * l.len() != t.dim_m() {
        return Err(Error::DimensionMismatch {
            expected: t.dim_m() / 2,
            found: l.len(),
            context: "Lagrangian subalgebra dimension".into(),
        });
    }
    let p = crate::tensor::projector(l, t.dim_m());
    let mut sub: f64 = 0.0;
    for x in l {
        for y in l {
            let b = t.bracket_m(x, y);
            sub = sub.max(vector::max_abs(&vector::sub(&b, &p.apply(&b))));
        }
    }
    if sub > tol {
        return Err(Error::NotSubalgebra { residual: sub });
    }
    let n = l.len();
    let jl: Vec<Vec<f64>> = l.iter().map(|z| t.j.apply(z)).collect();
    let entries = Tensor3::from_fn(n, |a, b, c| {
        0.5 * vector::dot(&t.bracket_m(&l[a], &l[b]), &jl[c])
    });
    Ok(CTensor::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_cubed_split_dimensions() {
        let t = su2_cubed(1.0).unwrap();
        assert_eq!((t.dim_h(), t.dim_m()), (3, 6));
        assert!(t.reductive_residual() < 1e-12);
        assert!(t.h_invariance_residual() < 1e-12);
        assert!(t.reconstruction_residual() < 1e-12);
        assert!(check_naturally_reductive(&t).residual < 1e-12);
    }

    #[test]
    fn identity_automorphism_is_degenerate() {
        let alg = su2_cubed_algebra();
        let err = decompose(alg, Matrix::identity(9), None, 1e-9).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
    }

    #[test]
    fn order_and_automorphism_are_checked() {
        let alg = su2_cubed_algebra();
        let mut s = Matrix::identity(9);
        s[(0, 0)] = 2.0;
        assert!(matches!(
            decompose(alg.clone(), s, None, 1e-9),
            Err(Error::NotOrderThree { .. })
        ));
        // e1 → 2e2 → 2e3 → e1 on the first factor: order three, breaks the bracket.
        let mut s = Matrix::identity(9);
        s[(0, 0)] = 0.0;
        s[(1, 1)] = 0.0;
        s[(2, 2)] = 0.0;
        s[(1, 0)] = 2.0;
        s[(2, 1)] = 1.0;
        s[(0, 2)] = 0.5;
        assert!(matches!(
            decompose(alg, s, None, 1e-9),
            Err(Error::NotAutomorphism { .. })
        ));
    }

    #[test]
    fn abelian_algebra_gives_flat_model() {
        let t = abelian().unwrap();
        let m = to_nk_model(&t).unwrap();
        assert_eq!(m.a().max_abs(), 0.0);
        assert!(crate::model::verify_model(&m).passed());
    }

    #[test]
    fn connections_at_base_point() {
        let t = su2_cubed(1.0).unwrap();
        let x = vector::unit(6, 0);
        let (lc, cd) = base_point_connections(&t, &x, &x);
        assert_eq!(vector::max_abs(&lc), 0.0);
        assert_eq!(vector::max_abs(&cd), 0.0);
        let y = vector::unit(6, 1);
        let (lc, cd) = base_point_connections(&t, &x, &y);
        assert!(vector::max_abs(&lc) > 1e-3);
        assert!(vector::max_abs(&vector::add(&lc, &cd)) < 1e-15);
    }
}
