//! Lagrangian subspaces of a model and the algebra of their second fundamental forms.
//!
//! A subspace `L` of half the dimension is Lagrangian when `ω|L = 0`. For `L`
//! to be the tangent space of a Lagrangian submanifold it must in addition
//! satisfy `ψ|L = 0` where `ψ(X, Y, Z) = ⟨A(X, Y), Z⟩`: this is the pointwise
//! content of `dω|L = 0`, and it is equivalent to `A(TL, TL) ⊆ T⊥L`.
//! [`random_lagrangian`] samples such subspaces; [`make_lagrangian`] only
//! enforces `ω|L = 0` and leaves the rest to [`lagrangian_identity_check`].

mod constraints;
mod ctensor;
mod minimality;
mod splitting;

pub use constraints::{cyc2_rows, row_space_containment, Containment, SymTensorSpace};
pub use ctensor::{
    check_c_symmetry, check_cyclic_identities, cyclic_identity_residuals, mean_curvature,
    trace_tensors, CTensor, CyclicResiduals, TraceTensors,
};
pub use minimality::{
    admissible_c_space, restricted_torsion, strict_minimality_check, RestrictedTorsion,
};
pub use splitting::{split_by_r, split_by_spectrum, GroupIntersection, RSplit};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::homogeneous::{self, ThreeSymmetricSpace};
use crate::model::NKModel;
use crate::report::{Check, CheckReport};
use crate::tensor::{gram_schmidt, lstsq_min_norm, null_space, projector, vector, Matrix};

/// An orthonormal basis (frame coordinates) of a Lagrangian subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianSubspace {
    basis: Vec<Vec<f64>>,
    ambient: usize,
}

impl LagrangianSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn projector(&self) -> Matrix {
        projector(&self.basis, self.ambient)
    }

    /// `J` applied to the basis: an orthonormal basis of the normal space.
    pub fn normal_basis(&self, m: &NKModel) -> Vec<Vec<f64>> {
        self.basis.iter().map(|x| m.apply_j(x)).collect()
    }

    /// Coordinates of a vector with respect to the basis.
    pub fn coords(&self, v: &[f64]) -> Vec<f64> {
        self.basis.iter().map(|b| vector::dot(b, v)).collect()
    }
}

/// Orthonormalises `spanning` and verifies `ω|L = 0`.
pub fn make_lagrangian(m: &NKModel, spanning: &[Vec<f64>]) -> Result<LagrangianSubspace> {
    let d = m.dim();
    for v in spanning {
        if v.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.len(),
                context: "Lagrangian basis vector".into(),
            });
        }
    }
    if spanning.len() * 2 != d {
        return Err(Error::DimensionMismatch {
            expected: d / 2,
            found: spanning.len(),
            context: "number of Lagrangian basis vectors".into(),
        });
    }
    let basis = gram_schmidt(spanning, 1e-12)?;
    let tol = m.tol();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let w = m.omega(&basis[i], &basis[j]);
            if !(w.abs() <= tol) {
                return Err(Error::NotLagrangian { i, j, value: w });
            }
        }
    }
    Ok(LagrangianSubspace { basis, ambient: d })
}

/// A random unitary frame: `x_k` is a Gaussian vector with
/// `x_1, …, x_{k−1}, Jx_1, …, Jx_{k−1}` projected out.
fn random_unitary_frame(m: &NKModel, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let d = m.dim();
    let n = d / 2;
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut taken: Vec<Vec<f64>> = Vec::with_capacity(d);
    while out.len() < n {
        let mut x: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
        for _ in 0..2 {
            for q in &taken {
                let c = vector::dot(q, &x);
                vector::axpy(-c, q, &mut x);
            }
        }
        let nrm = vector::norm(&x);
        if nrm < 1e-6 {
            continue;
        }
        let x = vector::scale(&x, 1.0 / nrm);
        let mut jx = m.apply_j(&x);
        for q in &taken {
            let c = vector::dot(q, &jx);
            vector::axpy(-c, q, &mut jx);
        }
        let jn = vector::norm(&jx);
        taken.push(x.clone());
        taken.push(vector::scale(&jx, 1.0 / jn));
        out.push(x);
    }
    out
}

fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut t = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                t.push([i, j, k]);
            }
        }
    }
    t
}

fn psi_values(m: &NKModel, x: &[Vec<f64>], tr: &[[usize; 3]]) -> Vec<f64> {
    tr.iter()
        .map(|&[i, j, k]| m.psi(&x[i], &x[j], &x[k]))
        .collect()
}

/// Largest `|ψ(x_i, x_j, x_k)|` over the basis.
pub fn psi_residual(m: &NKModel, basis: &[Vec<f64>]) -> f64 {
    vector::max_abs(&psi_values(m, basis, &triples(basis.len())))
}

/// Moves a Lagrangian frame to a nearby one with `ψ|L = 0` by Gauss–Newton
/// steps inside the Lagrangian Grassmannian. Nearby Lagrangians are spanned
/// by `y_i = x_i + Σ_j S_ij J x_j` with `S` symmetric.
fn refine_to_admissible(m: &NKModel, mut x: Vec<Vec<f64>>, target: f64) -> (Vec<Vec<f64>>, f64) {
    let n = x.len();
    let tr = triples(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|p| (p..n).map(move |q| (p, q))).collect();
    let mut res = psi_values(m, &x, &tr);
    let mut r = vector::max_abs(&res);
    for _ in 0..100 {
        if r <= target {
            break;
        }
        let jx: Vec<Vec<f64>> = x.iter().map(|v| m.apply_j(v)).collect();
        let mut jac = Matrix::zeros(tr.len(), pairs.len());
        for (row, &[i, j, k]) in tr.iter().enumerate() {
            for (col, &(p, q)) in pairs.iter().enumerate() {
                // dy_s / dS_pq = [s = p] J x_q + [s = q, p ≠ q] J x_p
                let dy = |s: usize| -> Option<&Vec<f64>> {
                    if s == p {
                        Some(&jx[q])
                    } else if s == q && p != q {
                        Some(&jx[p])
                    } else {
                        None
                    }
                };
                let mut v = 0.0;
                if let Some(d) = dy(i) {
                    v += m.psi(d, &x[j], &x[k]);
                }
                if let Some(d) = dy(j) {
                    v += m.psi(&x[i], d, &x[k]);
                }
                if let Some(d) = dy(k) {
                    v += m.psi(&x[i], &x[j], d);
                }
                jac[(row, col)] = v;
            }
        }
        let rhs: Vec<f64> = res.iter().map(|v| -v).collect();
        let step = lstsq_min_norm(&jac, &rhs, 1e-12);
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let mut s = Matrix::zeros(n, n);
            for (c, &(p, q)) in pairs.iter().enumerate() {
                s[(p, q)] = t * step[c];
                s[(q, p)] = t * step[c];
            }
            let y: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    let mut v = x[i].clone();
                    for l in 0..n {
                        vector::axpy(s[(i, l)], &jx[l], &mut v);
                    }
                    v
                })
                .collect();
            let Ok(y) = gram_schmidt(&y, 1e-12) else {
                t *= 0.5;
                continue;
            };
            let new_res = psi_values(m, &y, &tr);
            let nr = vector::max_abs(&new_res);
            if nr < r {
                x = y;
                res = new_res;
                r = nr;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (x, r)
}

/// A random Lagrangian subspace with `ψ|L = 0`, deterministic in `seed`.
pub fn random_lagrangian(m: &NKModel, seed: u64) -> Result<LagrangianSubspace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = 1e-14 * m.a().max_abs().max(1.0);
    let mut best = f64::INFINITY;
    for _ in 0..200 {
        let x = random_unitary_frame(m, &mut rng);
        let (x, r) = refine_to_admissible(m, x, target);
        if r <= target {
            return make_lagrangian(m, &x);
        }
        best = best.min(r);
    }
    Err(Error::NoConvergence { residual: best })
}

/// An orthonormal Lagrangian frame that ignores `ψ`: the raw unitary-frame construction.
pub fn random_omega_lagrangian(m: &NKModel, seed: u64) -> Result<LagrangianSubspace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    make_lagrangian(m, &random_unitary_frame(m, &mut rng))
}

/// A Lagrangian given in a file: `{"model": name-or-file, "basis": [[real]]}`.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct LagrangianFile {
    pub model: String,
    pub basis: Vec<Vec<f64>>,
}

impl LagrangianFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Tangential/normal leakage of `A` on a half-dimensional subspace.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LagrangianIdentityResiduals {
    /// `A(TL, TL) ⊆ T⊥L`
    pub lag1: f64,
    /// `A(T⊥L, T⊥L) ⊆ T⊥L`
    pub lag2: f64,
    /// `A(TL, T⊥L) ⊆ TL`
    pub lag3: f64,
}

/// Residuals of the three containments for any subspace spanned by an orthonormal `basis`.
pub fn lagrangian_identity_residuals(
    m: &NKModel,
    basis: &[Vec<f64>],
) -> LagrangianIdentityResiduals {
    let d = m.dim();
    let rows = Matrix::from_fn(basis.len(), d, |i, j| basis[i][j]);
    let normal = null_space(&rows, 1e-10);
    let p = projector(basis, d);
    let tangential = |v: &[f64]| vector::max_abs(&p.apply(v));
    let normal_part = |v: &[f64]| vector::max_abs(&vector::sub(v, &p.apply(v)));
    let mut r = LagrangianIdentityResiduals {
        lag1: 0.0,
        lag2: 0.0,
        lag3: 0.0,
    };
    for x in basis {
        for y in basis {
            r.lag1 = r.lag1.max(tangential(&m.apply_a(x, y)));
        }
        for u in &normal {
            r.lag3 = r.lag3.max(normal_part(&m.apply_a(x, u)));
        }
    }
    for u in &normal {
        for v in &normal {
            r.lag2 = r.lag2.max(tangential(&m.apply_a(u, v)));
        }
    }
    r
}

pub fn lagrangian_identity_check(m: &NKModel, l: &LagrangianSubspace) -> CheckReport {
    let tol = m.tol();
    let r = lagrangian_identity_residuals(m, &l.basis);
    let mut rep = CheckReport::new(m.name());
    rep.push(Check::measured(
        "lag1",
        "∇_X(J)Y ∈ T⊥L for X, Y ∈ TL",
        r.lag1,
        tol,
    ));
    rep.push(Check::measured(
        "lag2",
        "∇_U(J)V ∈ T⊥L for U, V ∈ T⊥L",
        r.lag2,
        tol,
    ));
    rep.push(Check::measured(
        "lag3",
        "∇_X(J)U ∈ TL for X ∈ TL, U ∈ T⊥L",
        r.lag3,
        tol,
    ));
    let mut w: f64 = 0.0;
    for i in 0..l.dim() {
        for j in 0..l.dim() {
            w = w.max(m.omega(&l.basis[i], &l.basis[j]).abs());
        }
    }
    rep.push(Check::measured("omega_vanishes", "ω|TL = 0", w, tol));
    rep
}

/// Second fundamental form of an invariant Lagrangian subalgebra (m-coordinates).
pub fn c_from_invariant(t: &ThreeSymmetricSpace, l: &LagrangianSubspace) -> Result<CTensor> {
    homogeneous::invariant_second_fundamental(t, &l.basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{flat_kahler, s6};

    #[test]
    fn flat_real_axes() {
        let m = flat_kahler(3);
        let b: Vec<Vec<f64>> = (0..3).map(|k| vector::unit(6, 2 * k)).collect();
        let l = make_lagrangian(&m, &b).unwrap();
        assert!(lagrangian_identity_check(&m, &l).passed());
    }

    #[test]
    fn vector_with_its_j_image_is_rejected() {
        let m = flat_kahler(3);
        let b = vec![vector::unit(6, 0), vector::unit(6, 1), vector::unit(6, 2)];
        let err = make_lagrangian(&m, &b).unwrap_err();
        assert!(
            matches!(err, Error::NotLagrangian { i: 0, j: 1, value } if (value - 1.0).abs() < 1e-15)
        );
    }

    #[test]
    fn random_lagrangians_on_s6_are_admissible() {
        let m = s6();
        for seed in 0..10 {
            let l = random_lagrangian(&m, seed).unwrap();
            assert!(lagrangian_identity_check(&m, &l).passed(), "seed {seed}");
        }
    }

    #[test]
    fn raw_omega_lagrangian_fails_lag1() {
        let m = s6();
        let l = random_omega_lagrangian(&m, 3).unwrap();
        assert!(lagrangian_identity_residuals(&m, l.basis()).lag1 > 1e-3);
    }

    #[test]
    fn same_seed_same_subspace() {
        let m = s6();
        assert_eq!(
            random_lagrangian(&m, 11).unwrap(),
            random_lagrangian(&m, 11).unwrap()
        );
    }
}
