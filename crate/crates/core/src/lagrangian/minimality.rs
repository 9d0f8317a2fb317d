use super::constraints::{cyc2_rows, row_space_containment, SymTensorSpace};
use super::{lagrangian_identity_check, CTensor, LagrangianSubspace};
use crate::error::{Error, Result};
use crate::model::{r_operator, torsion_unchecked, type_constant, NKModel};
use crate::report::{Check, CheckReport};
use crate::tensor::{null_space, vector, Tensor3};

/// Torsion restricted to a Lagrangian, in its basis coordinates.
#[derive(Clone, Debug)]
pub struct RestrictedTorsion {
    /// `t[(a, b, c)] = ⟨T(l_a, l_b), l_c⟩`
    pub t: Tensor3,
    /// Largest normal component of `T(l_a, l_b)`.
    pub tangential_residual: f64,
}

pub fn restricted_torsion(m: &NKModel, l: &LagrangianSubspace) -> Result<RestrictedTorsion> {
    let td = torsion_unchecked(m);
    let b = l.basis();
    let n = b.len();
    let mut t = Tensor3::zeros(n);
    let mut leak: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            let v = td.apply(&b[x], &b[y]);
            let coords = l.coords(&v);
            let mut back = vec![0.0; v.len()];
            for (c, bc) in coords.iter().zip(b) {
                vector::axpy(*c, bc, &mut back);
            }
            leak = leak.max(vector::max_abs(&vector::sub(&v, &back)));
            for (c, val) in coords.into_iter().enumerate() {
                t[(x, y, c)] = val;
            }
        }
    }
    if leak > m.tol() {
        return Err(Error::TorsionNotTangential { residual: leak });
    }
    Ok(RestrictedTorsion {
        t,
        tangential_residual: leak,
    })
}

/// Basis of `{C : C totally symmetric and the cyclic identity holds}`.
pub fn admissible_c_space(t: &Tensor3) -> Vec<CTensor> {
    let space = SymTensorSpace::new(t.dim());
    let rows = cyc2_rows(&space, t);
    let basis = if rows.rows() == 0 {
        (0..space.len())
            .map(|i| vector::unit(space.len(), i))
            .collect()
    } else {
        null_space(&rows, 1e-9)
    };
    basis.iter().map(|v| space.to_tensor(v)).collect()
}

/// Orientability, `a² = α`, vanishing `α`-trace and minimality as a rank fact,
/// for a Lagrangian in a strict six-dimensional model.
pub fn strict_minimality_check(m: &NKModel, l: &LagrangianSubspace) -> Result<CheckReport> {
    if m.dim() != 6 {
        return Err(Error::NotDimension6(m.dim()));
    }
    let r = r_operator(m)?;
    if !r.is_strict {
        return Err(Error::NotStrict {
            kernel_dim: r.kernel_dim,
        });
    }
    let tol = m.tol();
    let mut rep = CheckReport::new(m.name());
    rep.absorb("", lagrangian_identity_check(m, l));
    let rt = restricted_torsion(m, l)?;
    let t = &rt.t;

    // τ|L = a · vol with a = τ(l1, l2, l3); T(l1, l2) = a l3 and cyclically.
    let a = t[(0, 1, 2)];
    let mut eps_dev: f64 = 0.0;
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..3 {
                let sign = match (x, y, z) {
                    (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                    (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                    _ => 0.0,
                };
                eps_dev = eps_dev.max((t[(x, y, z)] - a * sign).abs());
            }
        }
    }
    let alpha_type = type_constant(m).alpha_type;
    rep.push(Check::measured(
        "torsion_is_volume_form",
        "T(e1,e2) = a e3 cyclically",
        eps_dev,
        tol,
    ));
    rep.push(
        Check::condition("orientation", "τ|L is a nonvanishing 3-form", a.abs() > tol)
            .with_note(format!("a = {a}")),
    );
    rep.push(Check::measured(
        "a_squared_type_constant",
        "a² = α",
        (a * a - alpha_type).abs(),
        1e-7,
    ));
    rep.detail("volume_coefficient", a);
    rep.detail("alpha_type", alpha_type);

    let space = SymTensorSpace::new(3);
    let alpha_rows = space.alpha_trace_functionals(t);
    let mut arb: f64 = 0.0;
    for row in &alpha_rows {
        arb = arb.max(vector::max_abs(row));
    }
    rep.push(Check::measured(
        "alpha_trace_symmetric",
        "α(X,Y) = Σ C(e_i,X,T(e_i,Y)) = 0 for every symmetric C",
        arb,
        tol,
    ));

    let rows = cyc2_rows(&space, t);
    let adm = admissible_c_space(t);
    let mut adm_alpha: f64 = 0.0;
    for c in &adm {
        let v = space.from_tensor(c);
        for row in &alpha_rows {
            adm_alpha = adm_alpha.max(vector::dot(row, &v).abs());
        }
    }
    rep.push(Check::measured(
        "alpha_trace_admissible",
        "α = 0 on admissible C",
        adm_alpha,
        tol,
    ));

    let traces: Vec<Vec<f64>> = (0..3).map(|z| space.trace_functional(z)).collect();
    let cont = row_space_containment(&rows, &traces, space.len());
    rep.push(
        Check::measured(
            "minimal_rank",
            "mean curvature functional lies in the span of the cyclic constraints",
            (cont.rank_augmented - cont.rank_constraints) as f64,
            0.0,
        )
        .with_note(format!(
            "rank {} vs {}",
            cont.rank_constraints, cont.rank_augmented
        )),
    );
    rep.push(Check::measured(
        "minimal_on_admissible",
        "h = 0 on the admissible space",
        cont.residual,
        tol,
    ));
    rep.detail("admissible_dim", adm.len());
    rep.detail("constraint_rank", cont.rank_constraints);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torsion_free_space_is_all_symmetric_tensors() {
        assert_eq!(admissible_c_space(&Tensor3::zeros(3)).len(), 10);
    }

    #[test]
    fn trace_not_forced_without_torsion() {
        let space = SymTensorSpace::new(3);
        let rows = cyc2_rows(&space, &Tensor3::zeros(3));
        let traces: Vec<Vec<f64>> = (0..3).map(|z| space.trace_functional(z)).collect();
        assert!(!row_space_containment(&rows, &traces, 10).contained(1e-9));
    }

    #[test]
    fn flat_model_rejected() {
        let m = crate::model::flat_kahler(3);
        let l = super::super::make_lagrangian(
            &m,
            &[vector::unit(6, 0), vector::unit(6, 2), vector::unit(6, 4)],
        )
        .unwrap();
        assert!(matches!(
            strict_minimality_check(&m, &l),
            Err(Error::NotStrict { kernel_dim: 6 })
        ));
    }
}
