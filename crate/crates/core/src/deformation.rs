//! Invariant infinitesimal Lagrangian deformations in dimension six.
//!
//! On a three-dimensional Lagrangian the restricted torsion `τ|L` is a volume
//! form and `*φ = (1/√α) φ∘T` defines the Hodge star of the induced metric
//! for the orientation in which `τ|L` is positive. A normal variation `V`
//! with `θ = ι_V ω|L` keeps `L` Lagrangian to first order iff
//! `dθ + 3 (ι_V ψ)|L = 0`, which becomes `dθ = 3√α *θ`.
//!
//! Exterior derivatives are computed on left-invariant forms of a Lagrangian
//! that is an orbit of a subgroup `K` acting simply transitively on it,
//! i.e. by the Chevalley–Eilenberg differential of `𝔨`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homogeneous::{su2_cubed, to_nk_model, ThreeSymmetricSpace};
use crate::lagrangian::{make_lagrangian, restricted_torsion, LagrangianSubspace};
use crate::model::{type_constant, NKModel, SpectrumEntry};
use crate::report::{Check, CheckReport};
use crate::su2_classify::{factor_generators, graph_generators};
use crate::tensor::{
    group_eigenvalues, multi_indices, null_space_with_floor, sym_eigendecomposition, vector,
    ExteriorForm, Matrix, Tensor3,
};

/// A Lagrangian orbit of a three-dimensional subgroup of `G` through the base point.
#[derive(Clone, Debug)]
pub struct HomogeneousLagrangian {
    pub name: String,
    pub space: ThreeSymmetricSpace,
    pub model: NKModel,
    /// Generators in `𝔤` coordinates whose `𝔪`-parts form `lagrangian.basis()`.
    pub generators: Vec<Vec<f64>>,
    pub lagrangian: LagrangianSubspace,
}

impl HomogeneousLagrangian {
    /// Orthonormalises the `𝔪`-parts of `generators`, carrying the generators
    /// along, and orients the basis so that `τ|L` is positive.
    pub fn new(name: &str, space: ThreeSymmetricSpace, generators: &[Vec<f64>]) -> Result<Self> {
        let model = to_nk_model(&space)?;
        let mut tangent: Vec<Vec<f64>> = Vec::new();
        let mut gens: Vec<Vec<f64>> = Vec::new();
        for k in generators {
            let mut p = space.project_m(k);
            let mut g = k.clone();
            for _ in 0..2 {
                for (q, h) in tangent.iter().zip(&gens) {
                    let c = vector::dot(q, &p);
                    vector::axpy(-c, q, &mut p);
                    vector::axpy(-c, h, &mut g);
                }
            }
            let n = vector::norm(&p);
            if n < 1e-10 {
                return Err(Error::Dependent {
                    index: tangent.len(),
                });
            }
            tangent.push(vector::scale(&p, 1.0 / n));
            gens.push(vector::scale(&g, 1.0 / n));
        }
        let mut lagrangian = make_lagrangian(&model, &tangent)?;
        if lagrangian.dim() == 3 {
            let rt = restricted_torsion(&model, &lagrangian)?;
            if rt.t[(0, 1, 2)] < 0.0 {
                tangent[2] = vector::scale(&tangent[2], -1.0);
                gens[2] = vector::scale(&gens[2], -1.0);
                lagrangian = make_lagrangian(&model, &tangent)?;
            }
        }
        let hl = Self {
            name: name.into(),
            space,
            model,
            generators: gens,
            lagrangian,
        };
        hl.structure_constants()?;
        Ok(hl)
    }

    /// Structure constants of `𝔨` in the generator basis; `NotSubalgebra` if `𝔨` is not closed.
    pub fn structure_constants(&self) -> Result<Tensor3> {
        let g = self.space.algebra();
        let n = self.generators.len();
        let basis = self.lagrangian.basis();
        let mut c = Tensor3::zeros(n);
        let mut leak: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let br = g.bracket(&self.generators[a], &self.generators[b]);
                let coords: Vec<f64> = basis
                    .iter()
                    .map(|l| vector::dot(l, &self.space.project_m(&br)))
                    .collect();
                let mut back = vec![0.0; br.len()];
                for (k, ck) in coords.iter().enumerate() {
                    vector::axpy(*ck, &self.generators[k], &mut back);
                    c[(a, b, k)] = *ck;
                }
                leak = leak.max(vector::max_abs(&vector::sub(&br, &back)));
            }
        }
        if leak > self.space.tol().max(1e-9) {
            return Err(Error::NotSubalgebra { residual: leak });
        }
        Ok(c)
    }
}

/// The diagonal `{(g, g)}` in `S³×S³`.
pub fn s3s3_diagonal(scale: f64) -> Result<HomogeneousLagrangian> {
    s3s3_graph(&Matrix::identity(3), scale)
}

/// Integral manifold of the graph `{X ⊕ AX}` for an automorphism `A` of `su(2)`.
pub fn s3s3_graph(a: &Matrix, scale: f64) -> Result<HomogeneousLagrangian> {
    HomogeneousLagrangian::new("s3s3 graph", su2_cubed(scale)?, &graph_generators(a))
}

/// `S³ × {1}` (`factor = 0`) or `{1} × S³` (`factor = 1`).
pub fn s3s3_factor(factor: usize, scale: f64) -> Result<HomogeneousLagrangian> {
    HomogeneousLagrangian::new("s3s3 factor", su2_cubed(scale)?, &factor_generators(factor))
}

/// The star operator of a three-dimensional Lagrangian, oriented by `τ|L`.
#[derive(Clone, Debug)]
pub struct StarOperator {
    pub basis: Vec<Vec<f64>>,
    pub alpha: f64,
    /// `τ(e_0, e_1, e_2) = a` with `a² = α` for a valid model.
    pub a: f64,
    pub t: Tensor3,
    /// Matrices of `*` from degree `p` to `3 − p`, `p = 0..=3`, in the `multi_indices` bases.
    pub matrices: Vec<Matrix>,
    pub tol: f64,
}

fn form_matrix(dim: usize, from: usize, f: impl Fn(&ExteriorForm) -> ExteriorForm) -> Matrix {
    let src = multi_indices(dim, from);
    let cols: Vec<Vec<f64>> = src
        .iter()
        .map(|idx| f(&ExteriorForm::basis(dim, idx)).coefficients().to_vec())
        .collect();
    let rows = cols.first().map_or(0, Vec::len);
    Matrix::from_columns(&cols, rows)
}

fn apply_form(m: &Matrix, dim: usize, degree: usize, f: &ExteriorForm) -> ExteriorForm {
    ExteriorForm::from_coefficients(dim, degree, m.apply(f.coefficients()))
}

impl StarOperator {
    pub fn sqrt_alpha(&self) -> f64 {
        self.alpha.sqrt()
    }

    pub fn star(&self, f: &ExteriorForm) -> ExteriorForm {
        let p = f.degree();
        apply_form(&self.matrices[p], 3, 3 - p, f)
    }

    /// `(1/√α) φ∘T` for a 1-form `φ`.
    pub fn torsion_star(&self, phi: &ExteriorForm) -> ExteriorForm {
        assert_eq!(phi.degree(), 1);
        let mut out = ExteriorForm::zeros(3, 2);
        for idx in multi_indices(3, 2) {
            let v: f64 = (0..3)
                .map(|k| self.t[(idx[0], idx[1], k)] * phi.component(&[k]))
                .sum();
            out.add_component(&idx, v / self.sqrt_alpha());
        }
        out
    }

    /// `max ‖** − Id‖` over all degrees.
    pub fn square_residual(&self) -> f64 {
        (0..=3)
            .map(|p| {
                let sq = &self.matrices[3 - p] * &self.matrices[p];
                (&sq - &Matrix::identity(sq.rows())).max_abs()
            })
            .fold(0.0, f64::max)
    }

    /// `max ‖*ᵗ* − Id‖`: `*` is an isometry for the induced metric.
    pub fn isometry_residual(&self) -> f64 {
        self.matrices
            .iter()
            .map(|m| (&(&m.transpose() * m) - &Matrix::identity(m.cols())).max_abs())
            .fold(0.0, f64::max)
    }

    /// `max |(1/√α) φ∘T − *φ|` over basis 1-forms.
    pub fn one_form_residual(&self) -> f64 {
        (0..3)
            .map(|i| {
                let phi = ExteriorForm::basis(3, &[i]);
                self.torsion_star(&phi)
                    .add(&self.star(&phi).scaled(-1.0))
                    .max_abs()
            })
            .fold(0.0, f64::max)
    }
}

pub fn build_star(m: &NKModel, l: &LagrangianSubspace) -> Result<StarOperator> {
    if m.dim() != 6 || l.dim() != 3 {
        return Err(Error::NotDimension6(m.dim()));
    }
    let tol = m.tol();
    let mut rt = restricted_torsion(m, l)?;
    if rt.t.max_abs() <= tol {
        return Err(Error::DegenerateTorsion);
    }
    let mut basis = l.basis().to_vec();
    if rt.t[(0, 1, 2)] < 0.0 {
        basis[2] = vector::scale(&basis[2], -1.0);
        rt = restricted_torsion(m, &make_lagrangian(m, &basis)?)?;
    }
    let a = rt.t[(0, 1, 2)];
    if a <= tol {
        return Err(Error::DegenerateTorsion);
    }
    let alpha = type_constant(m).alpha_type;
    if !(alpha > tol) {
        return Err(Error::DegenerateTorsion);
    }
    let matrices = (0..=3)
        .map(|p| form_matrix(3, p, ExteriorForm::hodge_star))
        .collect();
    Ok(StarOperator {
        basis,
        alpha,
        a,
        t: rt.t,
        matrices,
        tol,
    })
}

/// Maurer–Cartan calculus on left-invariant forms of `K`.
#[derive(Clone, Debug)]
pub struct InvariantComplex {
    pub c: Tensor3,
    /// `d` from degree `p` to `p + 1`, `p = 0..=2`.
    pub d: Vec<Matrix>,
}

impl InvariantComplex {
    pub fn new(c: Tensor3) -> Self {
        let n = c.dim();
        let d = (0..n)
            .map(|p| form_matrix(n, p, |f| f.differential(&c)))
            .collect();
        Self { c, d }
    }

    pub fn from_lagrangian(hl: &HomogeneousLagrangian) -> Result<Self> {
        Ok(Self::new(hl.structure_constants()?))
    }

    pub fn dim(&self) -> usize {
        self.c.dim()
    }

    pub fn d(&self, f: &ExteriorForm) -> ExteriorForm {
        let p = f.degree();
        if p == self.dim() {
            return ExteriorForm::zeros(self.dim(), p);
        }
        apply_form(&self.d[p], self.dim(), p + 1, f)
    }

    /// `δ = (−1)^p * d *` on `p`-forms.
    pub fn codifferential(&self, star: &StarOperator, f: &ExteriorForm) -> ExteriorForm {
        let p = f.degree();
        if p == 0 {
            return ExteriorForm::zeros(self.dim(), 0);
        }
        let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
        star.star(&self.d(&star.star(f))).scaled(sign)
    }

    pub fn laplacian(&self, star: &StarOperator, f: &ExteriorForm) -> ExteriorForm {
        let dd = self.codifferential(star, &self.d(f));
        let dc = self.codifferential(star, f);
        let dd2 = if f.degree() == 0 {
            ExteriorForm::zeros(self.dim(), 0)
        } else {
            self.d(&dc)
        };
        dd.add(&dd2)
    }

    /// `max ‖d∘d‖`.
    pub fn d_squared_residual(&self) -> f64 {
        (0..self.dim().saturating_sub(1))
            .map(|p| (&self.d[p + 1] * &self.d[p]).max_abs())
            .fold(0.0, f64::max)
    }
}

/// `‖dθ − 3√α *θ‖` for an invariant 1-form.
pub fn deformation_constraint(
    theta: &ExteriorForm,
    star: &StarOperator,
    complex: &InvariantComplex,
) -> CheckReport {
    let r = complex
        .d(theta)
        .add(&star.star(theta).scaled(-3.0 * star.sqrt_alpha()))
        .max_abs();
    let mut rep = CheckReport::new("deformation");
    rep.push(Check::measured(
        "variation_equation",
        "dθ = 3√α *θ for the variation 1-form θ",
        r,
        star.tol,
    ));
    rep
}

fn one_form_operator(f: impl Fn(&ExteriorForm) -> ExteriorForm, out_dim: usize) -> Matrix {
    let cols: Vec<Vec<f64>> = (0..3)
        .map(|i| f(&ExteriorForm::basis(3, &[i])).coefficients().to_vec())
        .collect();
    Matrix::from_columns(&cols, out_dim)
}

/// Dimension of the space of invariant normal fields `V` with
/// `d(ι_V ω) + 3 (ι_V ψ) = 0` on `L`, computed from `ω` and `ψ` directly.
pub fn first_order_variations(hl: &HomogeneousLagrangian, complex: &InvariantComplex) -> usize {
    let m = &hl.model;
    let b = hl.lagrangian.basis();
    let pairs = multi_indices(3, 2);
    let cols: Vec<Vec<f64>> = (0..3)
        .map(|i| {
            let v = m.apply_j(&b[i]);
            let theta =
                ExteriorForm::from_coefficients(3, 1, b.iter().map(|x| m.omega(&v, x)).collect());
            let dtheta = complex.d(&theta);
            pairs
                .iter()
                .enumerate()
                .map(|(k, p)| dtheta.coefficients()[k] + 3.0 * m.psi(&v, &b[p[0]], &b[p[1]]))
                .collect()
        })
        .collect();
    null_space_with_floor(&Matrix::from_columns(&cols, 3), 1e-9, 1e-9).len()
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformationSpectrum {
    pub lagrangian: String,
    pub alpha_type: f64,
    /// Solutions of `dθ = 3√α *θ` among invariant 1-forms (coefficients).
    pub solutions: Vec<Vec<f64>>,
    pub solution_dim: usize,
    /// Dimension for the opposite sign `dθ = −3√α *θ`.
    pub opposite_sign_dim: usize,
    /// Eigenvalues of the Hodge Laplacian on invariant 1-forms.
    pub hodge_spectrum: Vec<SpectrumEntry>,
    pub lambda: f64,
    pub scalar_curvature: f64,
    /// `λ / s` as the exact ratio of the closed forms `9α` and `30α`.
    pub ratio: f64,
    pub measured_ratio: f64,
    #[serde(skip)]
    pub report: CheckReport,
}

pub fn deformation_spectrum(hl: &HomogeneousLagrangian) -> Result<DeformationSpectrum> {
    let star = build_star(&hl.model, &hl.lagrangian)?;
    let complex = InvariantComplex::from_lagrangian(hl)?;
    let tol = hl.model.tol();
    let sa = star.sqrt_alpha();
    let alpha = star.alpha;
    let d1 = one_form_operator(|f| complex.d(f), 3);
    let s1 = one_form_operator(|f| star.star(f), 3);
    let plus = &d1 - &s1.scaled(3.0 * sa);
    let minus = &d1 + &s1.scaled(3.0 * sa);
    let solutions = null_space_with_floor(&plus, 1e-9, tol);
    let opposite_sign_dim = null_space_with_floor(&minus, 1e-9, tol).len();
    let lambda = 9.0 * alpha;
    let (mut co, mut eig): (f64, f64) = (0.0, 0.0);
    for s in &solutions {
        let theta = ExteriorForm::from_coefficients(3, 1, s.clone());
        co = co.max(complex.codifferential(&star, &theta).max_abs());
        eig = eig.max(
            complex
                .laplacian(&star, &theta)
                .add(&theta.scaled(-lambda))
                .max_abs(),
        );
    }
    let lap = one_form_operator(|f| complex.laplacian(&star, f), 3);
    let lap_sym = Matrix::from_fn(3, 3, |r, c| 0.5 * (lap[(r, c)] + lap[(c, r)]));
    let e = sym_eigendecomposition(&lap_sym, 1e-14)?;
    let hodge_spectrum: Vec<SpectrumEntry> = group_eigenvalues(&e, 1e-7)
        .into_iter()
        .map(|g| SpectrumEntry {
            value: g.value,
            multiplicity: g.multiplicity,
        })
        .collect();
    let scalar_curvature = 30.0 * alpha;
    let geometric = first_order_variations(hl, &complex);

    let mut rep = CheckReport::new(&hl.name);
    let anchor_star = "the naturally defined *-operator";
    rep.push(Check::measured(
        "star_square",
        anchor_star,
        star.square_residual(),
        1e-12,
    ));
    rep.push(Check::measured(
        "star_isometry",
        anchor_star,
        star.isometry_residual(),
        1e-12,
    ));
    rep.push(Check::measured(
        "star_from_torsion",
        anchor_star,
        star.one_form_residual(),
        tol,
    ));
    rep.push(Check::measured(
        "d_squared",
        "Cartan formula on invariant forms",
        complex.d_squared_residual(),
        1e-12,
    ));
    let anchor_eig = "coclosed eigenform of the Hodge Laplacian";
    let vacuous = |c: Check| {
        if solutions.is_empty() {
            c.with_note("no nonzero invariant solutions; holds vacuously")
        } else {
            c
        }
    };
    rep.push(vacuous(Check::measured(
        "solutions_coclosed",
        anchor_eig,
        co,
        tol,
    )));
    rep.push(vacuous(Check::measured(
        "solutions_eigenvalue",
        anchor_eig,
        eig,
        tol,
    )));
    rep.push(Check::condition(
        "first_order_variation",
        "variations keeping L Lagrangian: d(ι_V ω) + 3 ι_V ψ = 0",
        geometric == solutions.len(),
    ));
    rep.push(Check::measured(
        "eigenvalue_ratio",
        "λ = 9α = (3/10) s",
        (lambda / scalar_curvature - 0.3).abs(),
        1e-12,
    ));
    rep.detail("solution_dim", solutions.len());
    rep.detail("first_order_variation_dim", geometric);
    rep.detail("lambda", lambda);
    Ok(DeformationSpectrum {
        lagrangian: hl.name.clone(),
        alpha_type: alpha,
        solution_dim: solutions.len(),
        solutions,
        opposite_sign_dim,
        hodge_spectrum,
        lambda,
        scalar_curvature,
        ratio: 9.0 / 30.0,
        measured_ratio: lambda / scalar_curvature,
        report: rep,
    })
}

/// The operator algebra behind the eigenvalue: with `D = 3√α *` standing in
/// for `d` on 1-forms, `*² = Id`, `*D = 3√α Id` and `*D*D = 9α Id`.
pub fn eigenvalue_chain_check(star: &StarOperator) -> CheckReport {
    let sa = star.sqrt_alpha();
    let s1 = &star.matrices[1];
    let s2 = &star.matrices[2];
    let d = s1.scaled(3.0 * sa);
    let id = Matrix::identity(3);
    let mut rep = CheckReport::new("deformation");
    let anchor = "δθ = *d*θ = 0 and δdθ = 9αθ";
    rep.push(Check::measured(
        "scalar",
        anchor,
        ((3.0 * sa).powi(2) - 9.0 * star.alpha).abs(),
        1e-12 * star.alpha.max(1.0),
    ));
    rep.push(Check::measured(
        "star_square_one_forms",
        anchor,
        (&(s2 * s1) - &id).max_abs(),
        1e-12,
    ));
    rep.push(Check::measured(
        "star_d",
        anchor,
        (&(s2 * &d) - &id.scaled(3.0 * sa)).max_abs(),
        1e-12,
    ));
    let chain = &(&(s2 * &d) * s1) * &d;
    let chain = Matrix::from_fn(3, 3, |r, c| chain[(r, c)]);
    rep.push(Check::measured(
        "chain",
        anchor,
        (&chain - &id.scaled(9.0 * star.alpha)).max_abs(),
        1e-12,
    ));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lagrangian::random_lagrangian;
    use crate::model::{flat_kahler, s6};

    #[test]
    fn star_on_random_s6_lagrangians() {
        let m = s6();
        for seed in 0..5 {
            let l = random_lagrangian(&m, seed).unwrap();
            let st = build_star(&m, &l).unwrap();
            assert!((st.a - 1.0).abs() < 1e-9);
            assert!(st.square_residual() < 1e-12);
            assert!(st.one_form_residual() < 1e-9);
            assert!(eigenvalue_chain_check(&st).passed());
        }
    }

    #[test]
    fn s6_example_against_octonions() {
        // On span{e2, e4, e7}: e2 × e4 = e6 is normal, and T(e2, e4) = −J(e2×e4)
        // tangential part; *e2♭ should be ± e4♭∧e7♭.
        let m = s6();
        let b = vec![vector::unit(6, 0), vector::unit(6, 2), vector::unit(6, 5)];
        let l = make_lagrangian(&m, &b).unwrap();
        let st = build_star(&m, &l).unwrap();
        let phi = ExteriorForm::basis(3, &[0]);
        let s = st.torsion_star(&phi);
        assert!((s.component(&[1, 2]).abs() - 1.0).abs() < 1e-12);
        assert!(s.component(&[0, 1]).abs() < 1e-12 && s.component(&[0, 2]).abs() < 1e-12);
    }

    #[test]
    fn flat_is_degenerate() {
        let m = flat_kahler(3);
        let b: Vec<Vec<f64>> = (0..3).map(|k| vector::unit(6, 2 * k)).collect();
        let l = make_lagrangian(&m, &b).unwrap();
        assert!(matches!(build_star(&m, &l), Err(Error::DegenerateTorsion)));
    }

    #[test]
    fn d_squared_vanishes() {
        let hl = s3s3_diagonal(1.0).unwrap();
        let c = InvariantComplex::from_lagrangian(&hl).unwrap();
        assert!(c.d_squared_residual() < 1e-12);
        assert!(c.d[1].max_abs() > 0.1);
    }

    #[test]
    fn diagonal_spectrum() {
        for scale in [1.0, 1.0 / 12.0, 3.0] {
            let hl = s3s3_diagonal(scale).unwrap();
            let sp = deformation_spectrum(&hl).unwrap();
            assert!(sp.report.passed(), "{:?}", sp.report.failures());
            let alpha = 1.0 / (12.0 * scale);
            assert!((sp.alpha_type - alpha).abs() < 1e-12);
            assert_eq!(sp.hodge_spectrum.len(), 1);
            assert!((sp.hodge_spectrum[0].value - 9.0 * alpha).abs() < 1e-9);
            assert_eq!(sp.ratio, 0.3);
            assert!((sp.measured_ratio - 0.3).abs() < 1e-12);
            assert_eq!(sp.solution_dim + sp.opposite_sign_dim, 3);
        }
    }

    #[test]
    fn other_invariant_lagrangians() {
        let hls = [
            s3s3_graph(&Matrix::from_diagonal(&[1.0, -1.0, -1.0]), 1.0).unwrap(),
            s3s3_factor(0, 1.0).unwrap(),
            s3s3_factor(1, 1.0).unwrap(),
        ];
        for hl in &hls {
            let sp = deformation_spectrum(hl).unwrap();
            assert!(
                sp.report.passed(),
                "{}: {:?}",
                hl.name,
                sp.report.failures()
            );
        }
    }

    #[test]
    fn solutions_pass_the_constraint_and_random_forms_fail() {
        let hl = s3s3_diagonal(1.0).unwrap();
        let star = build_star(&hl.model, &hl.lagrangian).unwrap();
        let cx = InvariantComplex::from_lagrangian(&hl).unwrap();
        let zero = ExteriorForm::zeros(3, 1);
        assert!(deformation_constraint(&zero, &star, &cx).passed());
        let theta = ExteriorForm::from_coefficients(3, 1, vec![0.3, -1.2, 0.7]);
        let r = deformation_constraint(&theta, &star, &cx);
        assert!(!r.passed() && r.max_residual() > 0.1);
        for s in deformation_spectrum(&hl).unwrap().solutions {
            assert!(
                deformation_constraint(&ExteriorForm::from_coefficients(3, 1, s), &star, &cx)
                    .passed()
            );
        }
    }

    #[test]
    fn non_subalgebra_rejected() {
        let mut gens = graph_generators(&Matrix::identity(3));
        gens[2] = factor_generators(1)[2].clone();
        assert!(HomogeneousLagrangian::new("x", su2_cubed(1.0).unwrap(), &gens).is_err());
    }
}
