//! Pointwise nearly Kähler models `(g, J, A = ∇J)` and the derived tensors.

mod builders;
mod io;
pub mod registry;

pub use builders::{flat_kahler, product, s3s3, s6, s6_scaled};
pub use io::ModelFile;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{Check, CheckReport};
use crate::tensor::{
    cholesky, group_eigenvalues, inverse, sym_eigendecomposition, vector, EigenGroup, Endomorphism,
    Matrix, Tensor3,
};

/// A nearly Kähler structure on a single tangent space.
///
/// The input metric is orthonormalised at construction; `J` and `A` are
/// stored in that orthonormal frame, so inside the engine `g` is the identity
/// and `⟨·,·⟩` is the Euclidean dot product. `A[(i, j, k)]` is the `k`-th
/// component of `A(e_i, e_j)`.
#[derive(Clone, Debug)]
pub struct NKModel {
    name: String,
    j: Endomorphism,
    a: Tensor3,
    tol: f64,
    /// Columns: the orthonormal frame expressed in input coordinates.
    frame: Matrix,
    /// Maps input coordinates to frame coordinates.
    to_frame: Matrix,
}

impl NKModel {
    /// Builds a model from data in arbitrary (not necessarily orthonormal) coordinates.
    pub fn new(name: &str, g: &Matrix, j: &Matrix, a: &Tensor3, tol: f64) -> Result<Self> {
        let d = g.rows();
        if !d.is_multiple_of(2) {
            return Err(Error::Parse(format!(
                "model dimension must be even, got {d}"
            )));
        }
        for (what, found) in [
            ("g columns", g.cols()),
            ("J rows", j.rows()),
            ("J columns", j.cols()),
            ("A", a.dim()),
        ] {
            if found != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found,
                    context: what.into(),
                });
            }
        }
        if !(g.is_finite() && j.is_finite() && a.is_finite()) {
            return Err(Error::Parse("non-finite model entries".into()));
        }
        let asym = g.asymmetry();
        if asym > tol.max(1e-12) {
            return Err(Error::NotSymmetric { residual: asym });
        }
        let identity = Matrix::identity(d);
        if *g == identity {
            return Ok(Self {
                name: name.into(),
                j: j.clone(),
                a: a.clone(),
                tol,
                frame: identity.clone(),
                to_frame: identity,
            });
        }
        // g = L Lᵀ; the columns of P = L⁻ᵀ are g-orthonormal and P⁻¹ = Lᵀ.
        let l = cholesky(g).ok_or(Error::BadMetric)?;
        let lt = l.transpose();
        let p = inverse(&lt).map_err(|_| Error::BadMetric)?;
        let jf = &(&lt * j) * &p;
        let cols = p.columns();
        let af = Tensor3::from_fn(d, |x, y, z| {
            let v = a.apply2(&cols[x], &cols[y]);
            vector::dot(lt.row(z), &v)
        });
        Ok(Self {
            name: name.into(),
            j: jf,
            a: af,
            tol,
            frame: p,
            to_frame: lt,
        })
    }

    /// Builds a model directly in an orthonormal frame.
    pub fn orthonormal(name: &str, j: Matrix, a: Tensor3, tol: f64) -> Result<Self> {
        let d = j.rows();
        Self::new(name, &Matrix::identity(d), &j, &a, tol)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `J` in the orthonormal frame.
    pub fn j(&self) -> &Endomorphism {
        &self.j
    }

    /// `A = ∇J` in the orthonormal frame.
    pub fn a(&self) -> &Tensor3 {
        &self.a
    }

    pub fn frame(&self) -> &Matrix {
        &self.frame
    }

    /// Converts a vector from input coordinates to frame coordinates.
    pub fn input_to_frame(&self, v: &[f64]) -> Vec<f64> {
        self.to_frame.apply(v)
    }

    pub fn apply_j(&self, x: &[f64]) -> Vec<f64> {
        self.j.apply(x)
    }

    pub fn apply_a(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.a.apply2(x, y)
    }

    /// `ω(X, Y) = ⟨JX, Y⟩`
    pub fn omega(&self, x: &[f64], y: &[f64]) -> f64 {
        vector::dot(&self.apply_j(x), y)
    }

    /// `ψ(X, Y, Z) = ⟨A(X, Y), Z⟩`, a 3-form on nearly Kähler models.
    pub fn psi(&self, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
        self.a.eval(x, y, z)
    }
}

/// Runs the defining identities of a model over all basis tuples.
pub fn verify_model(m: &NKModel) -> CheckReport {
    let d = m.dim();
    let tol = m.tol;
    let j = &m.j;
    let a = &m.a;
    let mut rep = CheckReport::new(m.name());

    rep.push(Check::timed("j_square", "J² = −Id", tol, || {
        (&(j * j) + &Matrix::identity(d)).max_abs()
    }));
    rep.push(Check::timed(
        "j_compatible",
        "g(JX, JY) = g(X, Y)",
        tol,
        || (&(&j.transpose() * j) - &Matrix::identity(d)).max_abs(),
    ));
    rep.push(Check::timed("nk1", "∇_X(J)X = 0", tol, || {
        let mut r: f64 = 0.0;
        for x in 0..d {
            for y in x..d {
                for z in 0..d {
                    r = r.max((0.5 * (a[(x, y, z)] + a[(y, x, z)])).abs());
                }
            }
        }
        r
    }));
    rep.push(Check::timed(
        "nk4",
        "g(∇_X(J)Y, Z) is a 3-form",
        tol,
        || a.antisymmetry_residual(),
    ));
    rep.push(Check::timed(
        "nk5",
        "∇_{JX}(J)Y = −J∇_X(J)Y = ∇_X(J)JY",
        tol,
        || {
            let jt = j.columns();
            let mut r: f64 = 0.0;
            for x in 0..d {
                for y in 0..d {
                    let ja = j.apply(a.slot(x, y));
                    let ex = vector::unit(d, x);
                    let ey = vector::unit(d, y);
                    let l1 = a.apply2(&jt[x], &ey);
                    let l2 = a.apply2(&ex, &jt[y]);
                    for k in 0..d {
                        r = r.max((l1[k] + ja[k]).abs()).max((l2[k] + ja[k]).abs());
                    }
                }
            }
            r
        },
    ));
    rep.detail("dim", d);
    rep
}

/// Torsion `T = −J A` of the canonical Hermitian connection and `τ = g(T·,·)`.
#[derive(Clone, Debug)]
pub struct TorsionData {
    /// `T[(i, j, k)]` is the `k`-th component of `T(e_i, e_j)`.
    pub t: Tensor3,
    /// `τ(e_i, e_j, e_k)`; equal to `t` entrywise in an orthonormal frame.
    pub tau: Tensor3,
}

impl TorsionData {
    pub fn apply(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.t.apply2(x, y)
    }
}

fn require_valid(m: &NKModel) -> Result<()> {
    let rep = verify_model(m);
    if rep.passed() {
        Ok(())
    } else {
        let names: Vec<String> = rep.failures().iter().map(|c| c.name.clone()).collect();
        Err(Error::ModelInvalid(format!(
            "{} fails {}",
            m.name(),
            names.join(", ")
        )))
    }
}

/// Torsion of a valid model.
pub fn torsion(m: &NKModel) -> Result<TorsionData> {
    require_valid(m)?;
    Ok(torsion_unchecked(m))
}

pub(crate) fn torsion_unchecked(m: &NKModel) -> TorsionData {
    let d = m.dim();
    let mut t = Tensor3::zeros(d);
    for x in 0..d {
        for y in 0..d {
            let v = m.j.apply(m.a.slot(x, y));
            for k in 0..d {
                t[(x, y, k)] = -v[k];
            }
        }
    }
    TorsionData { tau: t.clone(), t }
}

/// Skewness of `τ` and the type condition `T(JX,Y) = −J T(X,Y) = T(X,JY)`.
pub fn check_torsion(m: &NKModel, td: &TorsionData) -> CheckReport {
    let d = m.dim();
    let tol = m.tol;
    let mut rep = CheckReport::new(m.name());
    rep.push(Check::timed(
        "tau_skew",
        "τ is totally skew-symmetric",
        tol,
        || td.tau.antisymmetry_residual(),
    ));
    rep.push(Check::timed(
        "tau2",
        "T(JX,Y) = −J T(X,Y) = T(X,JY)",
        tol,
        || {
            let jc = m.j.columns();
            let mut r: f64 = 0.0;
            for x in 0..d {
                for y in 0..d {
                    let jt = m.j.apply(td.t.slot(x, y));
                    let ex = vector::unit(d, x);
                    let ey = vector::unit(d, y);
                    let l1 = td.apply(&jc[x], &ey);
                    let l2 = td.apply(&ex, &jc[y]);
                    for k in 0..d {
                        r = r.max((l1[k] + jt[k]).abs()).max((l2[k] + jt[k]).abs());
                    }
                }
            }
            r
        },
    ));
    rep.push(Check::timed("torsion_from_a", "T = −J∇J", tol, || {
        let mut r: f64 = 0.0;
        for x in 0..d {
            for y in 0..d {
                let back = m.j.apply(td.t.slot(x, y));
                for k in 0..d {
                    r = r.max((back[k] - m.a[(x, y, k)]).abs());
                }
            }
        }
        r
    }));
    rep
}

/// The operator `r` with `⟨rX, Y⟩ = Σ_i ⟨A(X, e_i), A(Y, e_i)⟩`.
#[derive(Clone, Debug)]
pub struct ROperatorReport {
    pub r: Endomorphism,
    pub spectrum: Vec<EigenGroup>,
    pub kernel_dim: usize,
    pub is_strict: bool,
    pub checks: CheckReport,
}

/// Eigenvalue/multiplicity pairs in a serializable shape.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub value: f64,
    pub multiplicity: usize,
}

impl ROperatorReport {
    pub fn spectrum_summary(&self) -> Vec<SpectrumEntry> {
        self.spectrum
            .iter()
            .map(|g| SpectrumEntry {
                value: g.value,
                multiplicity: g.multiplicity,
            })
            .collect()
    }

    /// Orthonormal basis of `ker r`.
    pub fn kernel(&self) -> Vec<Vec<f64>> {
        match self.spectrum.first() {
            Some(g) if self.kernel_dim > 0 => g.basis.clone(),
            _ => Vec::new(),
        }
    }
}

/// Grouping tolerance for eigenvalues of `r`.
pub const SPECTRUM_GROUP_TOL: f64 = 1e-7;

/// Raw `r` matrix from the sum formula; needs no validity check.
pub fn r_matrix(m: &NKModel) -> Matrix {
    let d = m.dim();
    let a = &m.a;
    Matrix::from_fn(d, d, |x, y| {
        (0..d)
            .map(|i| vector::dot(a.slot(x, i), a.slot(y, i)))
            .sum()
    })
}

pub fn r_operator(m: &NKModel) -> Result<ROperatorReport> {
    require_valid(m)?;
    let d = m.dim();
    let tol = m.tol;
    let r = r_matrix(m);
    let eig = sym_eigendecomposition(&r, tol.max(1e-12))?;
    let spectrum = group_eigenvalues(&eig, SPECTRUM_GROUP_TOL);
    let kernel_dim = match spectrum.first() {
        Some(g) if g.value.abs() <= SPECTRUM_GROUP_TOL => g.multiplicity,
        _ => 0,
    };
    let mut checks = CheckReport::new(m.name());
    checks.push(Check::measured(
        "r_symmetric",
        "r is symmetric",
        r.asymmetry(),
        tol,
    ));
    let min_eig = eig.eigenvalues.first().copied().unwrap_or(0.0);
    checks.push(Check::measured(
        "r_psd",
        "r is positive semidefinite",
        (-min_eig).max(0.0),
        tol,
    ));
    checks.push(Check::measured(
        "r_commutes_j",
        "[r, J] = 0",
        r.commutator(&m.j).max_abs(),
        tol,
    ));
    let mut inv: f64 = 0.0;
    let mut odd = false;
    for g in &spectrum {
        odd |= g.multiplicity % 2 == 1;
        let p = crate::tensor::projector(&g.basis, d);
        for b in &g.basis {
            let jb = m.j.apply(b);
            let leak = vector::sub(&jb, &p.apply(&jb));
            inv = inv.max(vector::max_abs(&leak));
        }
    }
    checks.push(Check::measured(
        "r_eigenspaces_j_invariant",
        "eigenspaces of r are J-invariant",
        inv,
        tol.max(1e-8),
    ));
    checks.push(Check::condition(
        "r_eigenspaces_even",
        "eigenspaces of r are even-dimensional",
        !odd,
    ));
    Ok(ROperatorReport {
        r,
        spectrum,
        kernel_dim,
        is_strict: kernel_dim == 0,
        checks,
    })
}

/// Least-squares fit of `‖A(X,Y)‖² = α(|X|²|Y|² − ⟨X,Y⟩² − ⟨X,JY⟩²)`.
#[derive(Clone, Debug, Serialize)]
pub struct TypeConstantReport {
    pub alpha_type: f64,
    pub residual: f64,
    pub is_strict: bool,
    /// `30 α`, meaningful when the fit is reliable and the dimension is 6.
    pub scalar_curvature: f64,
    pub reliable: bool,
}

pub fn type_constant(m: &NKModel) -> TypeConstantReport {
    let d = m.dim();
    let mut pairs: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            pairs.push((vector::unit(d, i), vector::unit(d, j)));
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            let s = vector::add(&vector::unit(d, i), &vector::unit(d, j));
            for k in 0..d {
                pairs.push((s.clone(), vector::unit(d, k)));
            }
        }
    }
    let mut samples = Vec::with_capacity(pairs.len());
    for (x, y) in &pairs {
        let ay = m.apply_a(x, y);
        let lhs = vector::dot(&ay, &ay);
        let xy = vector::dot(x, y);
        let xjy = vector::dot(x, &m.apply_j(y));
        let rhs = vector::dot(x, x) * vector::dot(y, y) - xy * xy - xjy * xjy;
        samples.push((rhs, lhs));
    }
    let sxx: f64 = samples.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = samples.iter().map(|(x, y)| x * y).sum();
    let alpha = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let residual = samples
        .iter()
        .fold(0.0f64, |r, (x, y)| r.max((y - alpha * x).abs()));
    let r = r_matrix(m);
    let is_strict = sym_eigendecomposition(&r, f64::INFINITY)
        .map(|e| e.eigenvalues.first().copied().unwrap_or(0.0) > SPECTRUM_GROUP_TOL)
        .unwrap_or(false);
    TypeConstantReport {
        alpha_type: alpha,
        residual,
        is_strict,
        scalar_curvature: 30.0 * alpha,
        reliable: residual <= m.tol,
    }
}

/// The full identity suite: model identities, torsion, `r` and the type constant.
pub fn identity_suite(m: &NKModel) -> CheckReport {
    let mut rep = verify_model(m);
    let td = torsion_unchecked(m);
    rep.absorb("", check_torsion(m, &td));
    let tol = m.tol;
    match r_operator(m) {
        Ok(r) => {
            rep.detail("kernel_dim", r.kernel_dim);
            rep.detail("is_strict", r.is_strict);
            rep.detail("r_spectrum", r.spectrum_summary());
            rep.absorb("", r.checks);
        }
        Err(e) => rep.push(Check::skipped(
            "r_operator",
            "r from the sum formula",
            &e.to_string(),
        )),
    }
    let tc = type_constant(m);
    rep.detail("alpha_type", tc.alpha_type);
    rep.detail("scalar_curvature", tc.scalar_curvature);
    rep.detail("type_constant_residual", tc.residual);
    let anchor = "‖A(X,Y)‖² = α(|X|²|Y|² − ⟨X,Y⟩² − ⟨X,JY⟩²)";
    if (m.dim() == 6 && tc.is_strict) || tc.reliable {
        rep.push(Check::measured("type_constant", anchor, tc.residual, tol));
    } else {
        rep.push(Check::skipped(
            "type_constant",
            anchor,
            "not of constant type",
        ));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_model_is_kahler() {
        let m = flat_kahler(3);
        assert!(verify_model(&m).passed());
        let r = r_operator(&m).unwrap();
        assert_eq!(r.kernel_dim, 6);
        assert!(!r.is_strict);
        assert_eq!(type_constant(&m).alpha_type, 0.0);
        assert_eq!(torsion(&m).unwrap().t.max_abs(), 0.0);
    }

    #[test]
    fn odd_dimension_rejected() {
        let g = Matrix::identity(3);
        let err = NKModel::new("x", &g, &g, &Tensor3::zeros(3), 1e-9).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn indefinite_metric_rejected() {
        let g = Matrix::from_diagonal(&[1.0, -1.0]);
        let j = Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        let err = NKModel::new("x", &g, &j, &Tensor3::zeros(2), 1e-9).unwrap_err();
        assert!(matches!(err, Error::BadMetric));
    }

    #[test]
    fn non_orthonormal_input_is_orthonormalised() {
        // ℂ¹ with the metric scaled by 4: J is unchanged, and still an isometry.
        let g = Matrix::from_diagonal(&[4.0, 4.0]);
        let j = Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        let m = NKModel::new("x", &g, &j, &Tensor3::zeros(2), 1e-9).unwrap();
        assert!(verify_model(&m).passed());
        let v = m.input_to_frame(&[1.0, 0.0]);
        assert!((vector::norm(&v) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn s6_type_constant_and_r() {
        let m = s6();
        let tc = type_constant(&m);
        assert!((tc.alpha_type - 1.0).abs() < 1e-12, "{tc:?}");
        assert!(tc.residual < 1e-12);
        assert!((tc.scalar_curvature - 30.0).abs() < 1e-10);
        let r = r_operator(&m).unwrap();
        assert!((&r.r - &Matrix::identity(6).scaled(4.0)).max_abs() < 1e-12);
        assert!(r.is_strict);
    }

    #[test]
    fn symmetric_perturbation_breaks_nk1_by_its_size() {
        let m = s6();
        let mut a = m.a().clone();
        let eps = 1e-3;
        a[(0, 1, 2)] += eps;
        a[(1, 0, 2)] += eps;
        let bad = NKModel::orthonormal("bad", m.j().clone(), a, 1e-9).unwrap();
        let rep = verify_model(&bad);
        let nk1 = rep.check("nk1").unwrap();
        assert!(!nk1.passed());
        assert!((nk1.residual - eps).abs() < 1e-15);
        assert!(matches!(torsion(&bad), Err(Error::ModelInvalid(_))));
    }
}
