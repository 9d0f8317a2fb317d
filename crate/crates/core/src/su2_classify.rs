//! Invariant Lagrangians of `S³×S³ = SU(2)×SU(2)`.
//!
//! Besides the two factors, a left-invariant Lagrangian is the integral
//! manifold of a graph `{X ⊕ AX}` in the `E/F` frame of
//! [`su2_pair_frame`]. In that frame `ω|graph = 0` iff `A = Aᵗ`, and
//! integrability means `A(x × y) = Ax × Ay` with `su(2) ≅ (ℝ³, ×)`.
//!
//! The integral manifold through the base point is the orbit of the graph
//! subgroup `K = {(g, φ(g), 1)} ⊂ SU(2)³`, so its second fundamental form
//! can be computed from Killing fields without reference to `[·,·]_𝔪`;
//! [`orbit_second_fundamental`] does that and serves as a second opinion
//! next to [`invariant_second_fundamental`].

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homogeneous::{
    invariant_second_fundamental, su2_cubed, su2_pair_frame, to_nk_model, ThreeSymmetricSpace,
};
use crate::lagrangian::{lagrangian_identity_check, make_lagrangian, psi_residual};
use crate::quaternion::Quaternion;
use crate::report::{Check, CheckReport};
use crate::tensor::{sym_eigendecomposition, vector, Matrix};

pub const MIN_SAMPLES: usize = 1000;

fn cross3(x: &[f64], y: &[f64]) -> Vec<f64> {
    vec![
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ]
}

fn det3(a: &Matrix) -> f64 {
    let c: Vec<Vec<f64>> = a.columns();
    vector::dot(&c[0], &cross3(&c[1], &c[2]))
}

/// Sorted sign pattern of the eigenvalues of a symmetric matrix, e.g. `(+,-,-)`.
pub fn signature(a: &Matrix, tol: f64) -> Result<String> {
    let e = sym_eigendecomposition(a, tol.max(1e-12))?;
    let mut signs: Vec<char> = e
        .eigenvalues
        .iter()
        .map(|&v| {
            if v > tol {
                '+'
            } else if v < -tol {
                '-'
            } else {
                '0'
            }
        })
        .collect();
    let rank = |c: &char| match c {
        '+' => 0,
        '-' => 1,
        _ => 2,
    };
    signs.sort_by_key(rank);
    let parts: Vec<String> = signs.iter().map(char::to_string).collect();
    Ok(format!("({})", parts.join(",")))
}

/// Constraint evaluation for one graph candidate.
#[derive(Clone, Debug, Serialize)]
pub struct GraphCheck {
    pub a: Vec<Vec<f64>>,
    pub lagrangian: bool,
    pub subalgebra: bool,
    pub both: bool,
    pub lagrangian_residual: f64,
    pub subalgebra_residual: f64,
    pub det: f64,
    /// `‖A² − Id‖∞`
    pub square_residual: f64,
    /// Eigenvalues of the symmetric part, ascending.
    pub diagonal_form: Vec<f64>,
    pub signature: String,
}

impl GraphCheck {
    pub fn matrix(&self) -> Matrix {
        Matrix::from_rows(&self.a).expect("3×3")
    }
}

pub fn check_graph(a: &Matrix, tol: f64) -> GraphCheck {
    check_graph_scaled(a, 1.0, tol)
}

/// As [`check_graph`] with the bracket `[x, y] = λ (x × y)`.
pub fn check_graph_scaled(a: &Matrix, lambda: f64, tol: f64) -> GraphCheck {
    assert!(a.rows() == 3 && a.cols() == 3, "graph matrix must be 3×3");
    let lag = a.asymmetry();
    let mut sub: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let (x, y) = (vector::unit(3, i), vector::unit(3, j));
            let lhs = vector::scale(&a.apply(&cross3(&x, &y)), lambda);
            let rhs = vector::scale(&cross3(&a.apply(&x), &a.apply(&y)), lambda);
            sub = sub.max(vector::max_abs(&vector::sub(&lhs, &rhs)));
        }
    }
    let sym = Matrix::from_fn(3, 3, |r, c| 0.5 * (a[(r, c)] + a[(c, r)]));
    let diagonal_form = sym_eigendecomposition(&sym, 1e-14)
        .map(|e| e.eigenvalues)
        .unwrap_or_default();
    let signature = signature(&sym, 1e-8).unwrap_or_default();
    let square_residual = (&(a * a) - &Matrix::identity(3)).max_abs();
    let (lagrangian, subalgebra) = (lag <= tol, sub <= tol);
    GraphCheck {
        a: a.to_rows(),
        lagrangian,
        subalgebra,
        both: lagrangian && subalgebra,
        lagrangian_residual: lag,
        subalgebra_residual: sub,
        det: det3(a),
        square_residual,
        diagonal_form,
        signature,
    }
}

/// A uniformly random rotation of ℝ³ from a random unit quaternion.
pub fn random_rotation(rng: &mut ChaCha8Rng) -> Matrix {
    let mut q = [0.0; 4];
    for c in &mut q {
        *c = StandardNormal.sample(rng);
    }
    let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
    let q = Quaternion(q.map(|v| v / n));
    Matrix::from_fn(3, 3, |r, c| {
        (q * Quaternion::unit(c + 1) * q.conj()).0[r + 1]
    })
}

/// Symmetric matrix with eigenvectors of a random symmetric matrix and
/// eigenvalues replaced by their signs: a random point of `{A = Aᵗ, A² = Id}`.
fn projected_sample(rng: &mut ChaCha8Rng) -> Matrix {
    let mut s = Matrix::zeros(3, 3);
    for r in 0..3 {
        for c in r..3 {
            let v: f64 = StandardNormal.sample(rng);
            s[(r, c)] = v;
            s[(c, r)] = v;
        }
    }
    let e = sym_eigendecomposition(&s, 1e-14).expect("symmetric by construction");
    let signs: Vec<f64> = e
        .eigenvalues
        .iter()
        .map(|v| if *v >= 0.0 { 1.0 } else { -1.0 })
        .collect();
    let q = &e.eigenvectors;
    &(q * &Matrix::from_diagonal(&signs)) * &q.transpose()
}

/// Findings for one signature class.
#[derive(Clone, Debug, Serialize)]
pub struct SignatureClass {
    pub signature: String,
    /// Flags of the diagonal representative.
    pub diagonal: GraphCheck,
    /// Random samples that landed in this class.
    pub sampled: usize,
    /// Samples passing both constraints.
    pub solutions: usize,
    /// Up to a few verified non-diagonal solutions.
    pub examples: Vec<GraphCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StatedClassRow {
    pub class: String,
    pub lagrangian: bool,
    pub subalgebra: bool,
    pub both: bool,
    /// `max |ψ|` on the graph in the `S³×S³` model; nonzero means no
    /// Lagrangian submanifold has this tangent space.
    pub psi_residual: f64,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorInclusion {
    pub name: String,
    pub lagrangian: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub classes: Vec<SignatureClass>,
    /// Signatures with at least one verified solution, sorted.
    pub solution_signatures: Vec<String>,
    pub stated_classes: Vec<StatedClassRow>,
    pub factors: Vec<FactorInclusion>,
    pub discrepancies: Vec<String>,
}

/// The four diagonal classes with their flags and the sign labels used in reports.
pub fn diagonal_classes() -> Vec<(String, Matrix)> {
    [
        [1.0, 1.0, 1.0],
        [1.0, 1.0, -1.0],
        [1.0, -1.0, -1.0],
        [-1.0, -1.0, -1.0],
    ]
    .into_iter()
    .map(|d| {
        let label = format!(
            "diag({})",
            d.map(|v: f64| format!("{}", v as i32)).join(",")
        );
        (label, Matrix::from_diagonal(&d))
    })
    .collect()
}

/// Graph subspace `{x_i E_i + (Ax)_i F_i}` in m-coordinates.
pub fn graph_subspace(t: &ThreeSymmetricSpace, a: &Matrix) -> Vec<Vec<f64>> {
    let (e, f) = su2_pair_frame(t);
    (0..3)
        .map(|i| {
            let mut v = e[i].clone();
            for (k, fk) in f.iter().enumerate() {
                vector::axpy(a[(k, i)], fk, &mut v);
            }
            v
        })
        .collect()
}

/// Graph subgroup generators `(e_i, A e_i, 0)` in `𝔤` coordinates.
pub fn graph_generators(a: &Matrix) -> Vec<Vec<f64>> {
    (0..3)
        .map(|i| {
            let mut v = vec![0.0; 9];
            v[i] = 1.0;
            for k in 0..3 {
                v[3 + k] = a[(k, i)];
            }
            v
        })
        .collect()
}

/// Generators of the first (`factor = 0`) or second `SU(2)` factor.
pub fn factor_generators(factor: usize) -> Vec<Vec<f64>> {
    (0..3).map(|i| vector::unit(9, 3 * factor + i)).collect()
}

pub fn enumerate_solutions(samples: usize, seed: u64, tol: f64) -> Result<ClassificationResult> {
    if samples < MIN_SAMPLES {
        return Err(Error::Parse(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let t = su2_cubed(1.0)?;
    let m = to_nk_model(&t)?;
    let mut classes: BTreeMap<String, SignatureClass> = BTreeMap::new();
    let mut stated_classes = Vec::new();
    let mut discrepancies = Vec::new();
    // Symmetric with A² = Id forces eigenvalues ±1, so the diagonal
    // matrices represent every class up to rotation.
    for (label, d) in diagonal_classes() {
        let g = check_graph(&d, tol);
        let psi = psi_residual(&m, &graph_subspace(&t, &d));
        let agrees = g.both;
        if !agrees {
            discrepancies.push(format!(
                "{label}: listed as a solution but det = {} and the bracket condition fails (residual {:e}); \
                 |ψ| on the graph is {psi:e}",
                g.det, g.subalgebra_residual
            ));
        }
        stated_classes.push(StatedClassRow {
            class: label,
            lagrangian: g.lagrangian,
            subalgebra: g.subalgebra,
            both: g.both,
            psi_residual: psi,
            agrees,
        });
        classes.insert(
            g.signature.clone(),
            SignatureClass {
                signature: g.signature.clone(),
                diagonal: g,
                sampled: 0,
                solutions: 0,
                examples: Vec::new(),
            },
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = projected_sample(&mut rng);
        let g = check_graph(&a, tol);
        let entry = classes
            .get_mut(&g.signature)
            .expect("all ±1 signatures are seeded");
        entry.sampled += 1;
        if g.both {
            entry.solutions += 1;
            if entry.examples.len() < 3 {
                entry.examples.push(g);
            }
        }
    }
    let classes: Vec<SignatureClass> = classes.into_values().collect();
    let solution_signatures = classes
        .iter()
        .filter(|c| c.diagonal.both || c.solutions > 0)
        .map(|c| c.signature.clone())
        .collect();
    let (e, f) = su2_pair_frame(&t);
    let isotropic = |b: &[Vec<f64>]| {
        let mut w: f64 = 0.0;
        for x in b {
            for y in b {
                w = w.max(t.omega(x, y).abs());
            }
        }
        w <= tol
    };
    let factors = vec![
        FactorInclusion {
            name: "su(2) ⊕ 0".into(),
            lagrangian: isotropic(&e),
        },
        FactorInclusion {
            name: "0 ⊕ su(2)".into(),
            lagrangian: isotropic(&f),
        },
    ];
    Ok(ClassificationResult {
        samples,
        seed,
        tol,
        classes,
        solution_signatures,
        stated_classes,
        factors,
        discrepancies,
    })
}

/// `∇_{X*} Y*` at the base point (m-coordinates) for Killing fields of
/// `X, Y ∈ 𝔤`, from `2⟨∇_{X*}Y*, Z*⟩ = ⟨[X*,Y*],Z*⟩ + ⟨[X*,Z*],Y*⟩ + ⟨[Y*,Z*],X*⟩`
/// with `[X*, Y*] = −[X, Y]*` and `X*_o = X_𝔪`.
pub fn killing_covariant_derivative(t: &ThreeSymmetricSpace, x: &[f64], y: &[f64]) -> Vec<f64> {
    let g = t.algebra();
    let bm = |a: &[f64], b: &[f64]| t.project_m(&g.bracket(a, b));
    let (xm, ym) = (t.project_m(x), t.project_m(y));
    let xy = bm(x, y);
    (0..t.dim_m())
        .map(|i| {
            let z = t.embed(&vector::unit(t.dim_m(), i));
            -0.5 * (xy[i] + vector::dot(&bm(x, &z), &ym) + vector::dot(&bm(y, &z), &xm))
        })
        .collect()
}

/// Second fundamental form at the base point of the orbit of the subgroup
/// generated by `k` (`𝔤` coordinates): `C[a][b][c] = ⟨∇_{k_a*} k_b*, J (k_c)_𝔪⟩`
/// in the (not necessarily orthonormal) generator basis.
pub fn orbit_second_fundamental(t: &ThreeSymmetricSpace, k: &[Vec<f64>]) -> Vec<Vec<Vec<f64>>> {
    let n = k.len();
    let jk: Vec<Vec<f64>> = k.iter().map(|x| t.j().apply(&t.project_m(x))).collect();
    let mut out = vec![vec![vec![0.0; n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            let nab = killing_covariant_derivative(t, &k[a], &k[b]);
            for c in 0..n {
                out[a][b][c] = vector::dot(&nab, &jk[c]);
            }
        }
    }
    out
}

fn max_abs3(c: &[Vec<Vec<f64>>]) -> f64 {
    c.iter()
        .flatten()
        .flatten()
        .fold(0.0, |m, v| m.max(v.abs()))
}

/// Every both-flag solution and both factors: valid Lagrangian tangent
/// space of the `S³×S³` model and vanishing second fundamental form,
/// computed both from `[·,·]_𝔪` and from Killing fields of the orbit.
pub fn verify_totally_geodesic(result: &ClassificationResult) -> Result<CheckReport> {
    let t = su2_cubed(1.0)?;
    let m = to_nk_model(&t)?;
    let tol = 1e-12;
    let mut rep = CheckReport::new("s3s3");
    // (name, tangent basis in m-coordinates, subgroup generators)
    type Case = (String, Vec<Vec<f64>>, Vec<Vec<f64>>);
    let mut cases: Vec<Case> = Vec::new();
    for class in &result.classes {
        let mut reps: Vec<&GraphCheck> = Vec::new();
        if class.diagonal.both {
            reps.push(&class.diagonal);
        }
        reps.extend(class.examples.iter());
        for (i, g) in reps.into_iter().enumerate() {
            let a = g.matrix();
            cases.push((
                format!("graph{}#{i}", class.signature),
                graph_subspace(&t, &a),
                graph_generators(&a),
            ));
        }
    }
    let (e, f) = su2_pair_frame(&t);
    cases.push(("factor_first".into(), e, factor_generators(0)));
    cases.push(("factor_second".into(), f, factor_generators(1)));
    for (name, basis, gens) in cases {
        let anchor = "invariant Lagrangians are totally geodesic";
        let l = make_lagrangian(&m, &basis)?;
        let lem = lagrangian_identity_check(&m, &l);
        rep.push(Check::condition(
            &format!("{name}/lagrangian"),
            "ω|L = 0 and ∇J(TL, TL) ⊆ T⊥L",
            lem.passed(),
        ));
        let c_m = invariant_second_fundamental(&t, &basis).map(|c| c.entries().max_abs());
        rep.push(match c_m {
            Ok(v) => Check::measured(&format!("{name}/second_fundamental"), anchor, v, tol),
            Err(err) => Check::condition(&format!("{name}/second_fundamental"), anchor, false)
                .with_note(err.to_string()),
        });
        let orbit = max_abs3(&orbit_second_fundamental(&t, &gens));
        rep.push(Check::measured(
            &format!("{name}/orbit_second_fundamental"),
            anchor,
            orbit,
            tol,
        ));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_rotation_by_pi() {
        assert!(check_graph(&Matrix::identity(3), 1e-12).both);
        let g = check_graph(&Matrix::from_diagonal(&[1.0, -1.0, -1.0]), 1e-12);
        assert!(g.both && g.signature == "(+,-,-)");
    }

    #[test]
    fn orientation_reversing_fails_bracket() {
        let g = check_graph(&Matrix::from_diagonal(&[1.0, 1.0, -1.0]), 1e-12);
        assert!(g.lagrangian && !g.subalgebra);
        // A(e₁×e₂) = −e₃ but Ae₁ × Ae₂ = e₃
        assert_eq!(g.subalgebra_residual, 2.0);
        assert!(!check_graph(&Matrix::from_diagonal(&[-1.0; 3]), 1e-12).subalgebra);
    }

    #[test]
    fn bracket_scale_does_not_change_flags() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = projected_sample(&mut rng);
            let g1 = check_graph(&a, 1e-9);
            let g2 = check_graph_scaled(&a, 2.0, 1e-9);
            assert_eq!(
                (g1.lagrangian, g1.subalgebra),
                (g2.lagrangian, g2.subalgebra)
            );
        }
    }

    #[test]
    fn rotations_are_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = random_rotation(&mut rng);
        assert!((&(&r.transpose() * &r) - &Matrix::identity(3)).max_abs() < 1e-14);
        assert!((det3(&r) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn enumeration_finds_the_orientation_preserving_classes() {
        let res = enumerate_solutions(1000, 0, 1e-9).unwrap();
        assert_eq!(res.solution_signatures, vec!["(+,+,+)", "(+,-,-)"]);
        assert_eq!(res.classes.len(), 4);
        assert!(res.classes.iter().all(|c| c.sampled > 0));
        assert_eq!(res.discrepancies.len(), 2);
        assert!(res.factors.iter().all(|f| f.lagrangian));
        for row in &res.stated_classes {
            assert_eq!(row.psi_residual > 1e-6, !row.both, "{}", row.class);
        }
    }

    #[test]
    fn solutions_are_totally_geodesic() {
        let res = enumerate_solutions(1000, 1, 1e-9).unwrap();
        let rep = verify_totally_geodesic(&res).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
        assert!(rep.checks.len() >= 3 * 4);
    }

    #[test]
    fn orbit_formula_on_m_matches_half_bracket() {
        // For X, Y, Z ∈ 𝔪 natural reductivity reduces the Koszul formula to −½[X,Y]_𝔪.
        let t = su2_cubed(1.0).unwrap();
        let gens: Vec<Vec<f64>> = (0..3).map(|i| t.embed(&vector::unit(6, 2 * i))).collect();
        let c = orbit_second_fundamental(&t, &gens);
        for a in 0..3 {
            for b in 0..3 {
                for d in 0..3 {
                    let jz = t.j().apply(&vector::unit(6, 2 * d));
                    let want = -0.5
                        * vector::dot(
                            &t.bracket_m(&vector::unit(6, 2 * a), &vector::unit(6, 2 * b)),
                            &jz,
                        );
                    assert!((c[a][b][d] - want).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn one_parameter_orbit_acceleration() {
        // ∇_{X*}X* = [X_𝔥, X_𝔪] at the base point.
        let t = su2_cubed(1.0).unwrap();
        let mut x = vec![0.0; 9];
        x[0] = 1.0;
        x[4] = 1.0;
        let xm = t.embed(&t.project_m(&x));
        let xh = vector::sub(&x, &xm);
        let want = t.project_m(&t.algebra().bracket(&xh, &xm));
        let got = killing_covariant_derivative(&t, &x, &x);
        assert!(vector::max_abs(&want) > 0.1);
        assert!(vector::max_abs(&vector::sub(&got, &want)) < 1e-12);
    }

    #[test]
    fn too_few_samples() {
        assert!(enumerate_solutions(10, 0, 1e-9).is_err());
    }
}
