//! A synthetic pointwise model of a twistor space `Z^{4n+2}` with its
//! canonical nearly Kähler structure.
//!
//! `H = ℍⁿ` (real dimension `4n`, coordinate `4b + c` for quaternion block
//! `b` and component `c ∈ {1, i, j, k}`) carries left multiplication by
//! `i, j, k` as `I, Jq, K`. The vertical plane `V = span{u, v}` sits at
//! indices `4n` and `4n + 1`. The torsion is
//! `T(u, X) = κ Jq X`, `T(v, X) = −κ K X`,
//! `T(X, Y) = κ(⟨Jq X, Y⟩ u − ⟨K X, Y⟩ v)` and `T(u, v) = 0`, and `A = J T`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lagrangian::{
    cyc2_rows, make_lagrangian, restricted_torsion, row_space_containment, split_by_r,
    LagrangianSubspace, SymTensorSpace,
};
use crate::model::{torsion_unchecked, NKModel};
use crate::quaternion::Quaternion;
use crate::report::{Check, CheckReport};
use crate::tensor::{intersection, projector, rank, vector, Matrix, Tensor3};

#[derive(Clone, Debug)]
pub struct TwistorModel {
    pub n: usize,
    pub kappa: f64,
    pub model: NKModel,
    /// Left multiplications by `i, j, k` on `H`, extended by zero on `V`.
    pub i_op: Matrix,
    pub jq_op: Matrix,
    pub k_op: Matrix,
}

fn left_mult(n: usize, q: Quaternion) -> Matrix {
    let d = 4 * n + 2;
    let mut m = Matrix::zeros(d, d);
    for b in 0..n {
        for c in 0..4 {
            let img = q * Quaternion::unit(c);
            for r in 0..4 {
                m[(4 * b + r, 4 * b + c)] = img.0[r];
            }
        }
    }
    m
}

impl TwistorModel {
    pub fn dim(&self) -> usize {
        4 * self.n + 2
    }

    pub fn u(&self) -> Vec<f64> {
        vector::unit(self.dim(), 4 * self.n)
    }

    pub fn v(&self) -> Vec<f64> {
        vector::unit(self.dim(), 4 * self.n + 1)
    }

    pub fn horizontal_basis(&self) -> Vec<Vec<f64>> {
        (0..4 * self.n)
            .map(|i| vector::unit(self.dim(), i))
            .collect()
    }

    pub fn vertical_basis(&self) -> Vec<Vec<f64>> {
        vec![self.u(), self.v()]
    }

    /// The real span `{u, 1_b, j_b}` of the unit, `j` directions of each block and `u`.
    pub fn standard_lagrangian(&self) -> Result<LagrangianSubspace> {
        let mut b = Vec::new();
        for blk in 0..self.n {
            b.push(vector::unit(self.dim(), 4 * blk));
            b.push(vector::unit(self.dim(), 4 * blk + 2));
        }
        b.push(self.u());
        make_lagrangian(&self.model, &b)
    }
}

/// The standard complex structure: `I` on `H`, `Ju = v`, `Jv = −u`.
fn twistor_j(n: usize) -> Matrix {
    let mut j = left_mult(n, Quaternion::I);
    let (u, v) = (4 * n, 4 * n + 1);
    j[(v, u)] = 1.0;
    j[(u, v)] = -1.0;
    j
}

/// The torsion of the synthetic model with strength `kappa`.
pub fn twistor_torsion(n: usize, kappa: f64) -> Tensor3 {
    let d = 4 * n + 2;
    let (u, v) = (4 * n, 4 * n + 1);
    let jq = left_mult(n, Quaternion::J);
    let k = left_mult(n, Quaternion::K);
    let mut t = Tensor3::zeros(d);
    for x in 0..4 * n {
        for r in 0..4 * n {
            t[(u, x, r)] = kappa * jq[(r, x)];
            t[(x, u, r)] = -kappa * jq[(r, x)];
            t[(v, x, r)] = -kappa * k[(r, x)];
            t[(x, v, r)] = kappa * k[(r, x)];
        }
        for y in 0..4 * n {
            // ⟨Jq e_x, e_y⟩ = jq[(y, x)]
            t[(x, y, u)] = kappa * jq[(y, x)];
            t[(x, y, v)] = -kappa * k[(y, x)];
        }
    }
    t
}

/// Builds a twistor-type model from an arbitrary torsion tensor; `A = J T`.
pub fn from_parts(n: usize, kappa: f64, t: &Tensor3) -> Result<TwistorModel> {
    let d = 4 * n + 2;
    if t.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: t.dim(),
            context: "twistor torsion".into(),
        });
    }
    let j = twistor_j(n);
    let mut a = Tensor3::zeros(d);
    for x in 0..d {
        for y in 0..d {
            let v = j.apply(t.slot(x, y));
            for k in 0..d {
                a[(x, y, k)] = v[k];
            }
        }
    }
    let model = NKModel::orthonormal(&format!("twistor:{n}:{kappa}"), j, a, 1e-9)?;
    Ok(TwistorModel {
        n,
        kappa,
        model,
        i_op: left_mult(n, Quaternion::I),
        jq_op: left_mult(n, Quaternion::J),
        k_op: left_mult(n, Quaternion::K),
    })
}

pub fn build_twistor_model(n: usize, kappa: f64) -> Result<TwistorModel> {
    if n == 0 || !(kappa > 0.0) {
        return Err(Error::Parse(format!(
            "twistor model needs n ≥ 1 and κ > 0, got n = {n}, κ = {kappa}"
        )));
    }
    from_parts(n, kappa, &twistor_torsion(n, kappa))
}

/// Containments `T(H,H) ⊆ V`, `T(H,V) ⊆ H`, `T(V,V) = 0`, and surjectivity
/// of `X ↦ T(Y, X): H → V` for every horizontal basis vector `Y`.
pub fn check_torsion_axioms(tw: &TwistorModel) -> CheckReport {
    let m = &tw.model;
    let tol = m.tol();
    let d = tw.dim();
    let h = 4 * tw.n;
    let t = torsion_unchecked(m).t;
    let hpart = |v: &[f64]| vector::max_abs(&v[..h]);
    let vpart = |v: &[f64]| vector::max_abs(&v[h..]);
    let (mut r1, mut r2, mut r3): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for x in 0..d {
        for y in 0..d {
            let val = t.slot(x, y);
            match (x < h, y < h) {
                (true, true) => r1 = r1.max(hpart(val)),
                (false, false) => r3 = r3.max(vector::max_abs(val)),
                _ => r2 = r2.max(vpart(val)),
            }
        }
    }
    let mut deficiency = 0usize;
    for y in 0..h {
        let map = Matrix::from_fn(2, h, |r, x| t[(y, x, h + r)]);
        deficiency = deficiency.max(2 - rank(&map, 1e-9).min(2));
    }
    let mut rep = CheckReport::new(m.name());
    rep.push(Check::measured("tor1", "T(H,H) ⊆ V", r1, tol));
    rep.push(Check::measured("tor2", "T(H,V) ⊆ H", r2, tol));
    rep.push(Check::measured("tor3", "T(V,V) = 0", r3, tol));
    rep.push(Check::measured(
        "surjective",
        "X ↦ T(Y,X) maps H onto V for Y ∈ H nonzero",
        deficiency as f64,
        0.0,
    ));
    let id_h = Matrix::from_fn(d, d, |r, c| if r == c && r < h { 1.0 } else { 0.0 });
    let quat = [
        (&(&tw.i_op * &tw.i_op) + &id_h).max_abs(),
        (&(&tw.jq_op * &tw.jq_op) + &id_h).max_abs(),
        (&(&tw.i_op * &tw.jq_op) - &tw.k_op).max_abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    rep.push(Check::measured(
        "quaternionic",
        "I² = Jq² = −Id, I Jq = K on H",
        quat,
        tol,
    ));
    let j = m.j();
    let mut mix: f64 = 0.0;
    for r in 0..d {
        for c in 0..d {
            if (r < h) != (c < h) {
                mix = mix.max(j[(r, c)].abs());
            }
            if r < h && c < h {
                mix = mix.max((j[(r, c)] - tw.i_op[(r, c)]).abs());
            }
        }
    }
    rep.push(Check::measured(
        "j_splits",
        "J preserves H and V, J|H = I",
        mix,
        tol,
    ));
    rep
}

/// `Φ^W = T(W, ·)` on `H` for a unit vertical `W`.
#[derive(Clone, Debug)]
pub struct PhiMap {
    /// Matrix on `H` in the standard horizontal coordinates.
    pub phi: Matrix,
    /// `‖(Φ^W)² + κ² Id‖∞`
    pub square_residual: f64,
}

pub fn phi_maps(tw: &TwistorModel, w: &[f64]) -> Result<PhiMap> {
    let h = 4 * tw.n;
    let tol = tw.model.tol();
    let off = vector::max_abs(&w[..h]).max((vector::norm(w) - 1.0).abs());
    if off > tol {
        return Err(Error::NotVertical { residual: off });
    }
    let t = torsion_unchecked(&tw.model);
    let cols: Vec<Vec<f64>> = (0..h)
        .map(|x| t.apply(w, &vector::unit(tw.dim(), x))[..h].to_vec())
        .collect();
    let phi = Matrix::from_columns(&cols, h);
    let sq = &(&phi * &phi) + &Matrix::identity(h).scaled(tw.kappa * tw.kappa);
    Ok(PhiMap {
        square_residual: sq.max_abs(),
        phi,
    })
}

/// The splitting `TL = D ⊕ D⊥` into a vertical line and a horizontal part.
#[derive(Clone, Debug)]
pub struct BlockStructure {
    /// Unit vector spanning `L ∩ V`.
    pub d: Vec<f64>,
    /// Orthonormal basis of `L ∩ H`.
    pub d_perp: Vec<Vec<f64>>,
    pub report: CheckReport,
}

#[derive(Clone, Debug, Serialize)]
struct Dims {
    vertical: usize,
    horizontal: usize,
}

pub fn lagrangian_block_structure(
    tw: &TwistorModel,
    l: &LagrangianSubspace,
) -> Result<BlockStructure> {
    if tw.n < 2 {
        return Err(Error::RequiresNGreaterOne(tw.n));
    }
    let m = &tw.model;
    let d = tw.dim();
    let split = split_by_r(m, l)?;
    let r = crate::model::r_operator(m)?;
    let top = r.spectrum.last().expect("nonempty spectrum");
    let vertical = intersection(l.basis(), &top.basis, d);
    let horizontal = intersection(l.basis(), &tw.horizontal_basis(), d);
    let direct_v = intersection(l.basis(), &tw.vertical_basis(), d);
    let mut rep = CheckReport::new(m.name());
    rep.absorb("", split.report);
    rep.push(Check::condition(
        "vertical_line",
        "dim(TL ∩ V) = 1",
        vertical.len() == 1 && direct_v.len() == 1,
    ));
    rep.push(Check::condition(
        "horizontal_part",
        "dim(TL ∩ H) = 2n",
        horizontal.len() == 2 * tw.n,
    ));
    rep.detail(
        "dims",
        Dims {
            vertical: vertical.len(),
            horizontal: horizontal.len(),
        },
    );
    if vertical.len() != 1 || horizontal.len() != 2 * tw.n {
        return Ok(BlockStructure {
            d: vec![0.0; d],
            d_perp: horizontal,
            report: rep,
        });
    }
    let dv = vertical[0].clone();
    rep.push(Check::measured(
        "top_eigenspace_is_vertical",
        "Eig(4nκ²) = V",
        vector::max_abs(&dv[..4 * tw.n]),
        m.tol(),
    ));
    // π^H(TL) = TL ∩ H and π^V(TL) = TL ∩ V.
    let ph = projector(&horizontal, d);
    let pv = projector(&vertical, d);
    let mut proj: f64 = 0.0;
    for x in l.basis() {
        let mut xh = x.clone();
        for c in 4 * tw.n..d {
            xh[c] = 0.0;
        }
        let xv = vector::sub(x, &xh);
        proj = proj.max(vector::max_abs(&vector::sub(&xh, &ph.apply(&xh))));
        proj = proj.max(vector::max_abs(&vector::sub(&xv, &pv.apply(&xv))));
    }
    rep.push(Check::measured(
        "projections",
        "orthogonal projections of TL to H and V lie in TL",
        proj,
        m.tol().max(1e-8),
    ));
    Ok(BlockStructure {
        d: dv,
        d_perp: horizontal,
        report: rep,
    })
}

/// Normalised `Φ(X) = (1/κ) J A(U, X)` on `D⊥`, in the `D⊥` basis.
pub fn normalized_phi(tw: &TwistorModel, bs: &BlockStructure) -> Matrix {
    let m = &tw.model;
    let k = bs.d_perp.len();
    Matrix::from_fn(k, k, |r, c| {
        let img = vector::scale(&m.apply_j(&m.apply_a(&bs.d, &bs.d_perp[c])), 1.0 / tw.kappa);
        vector::dot(&img, &bs.d_perp[r])
    })
}

/// Linear constraints on the second fundamental form of a Lagrangian in a twistor model.
#[derive(Clone, Debug)]
pub struct TwistorConstraintSystem {
    pub space: SymTensorSpace,
    pub block: Matrix,
    pub pluri: Matrix,
    pub cyc2: Matrix,
    /// Index of the vertical direction in the reordered basis (the last one).
    pub vertical: usize,
}

impl TwistorConstraintSystem {
    pub fn stacked(&self, parts: &[&Matrix]) -> Matrix {
        let mut out = Matrix::zeros(0, self.space.len());
        for p in parts {
            for r in 0..p.rows() {
                out.push_row(p.row(r));
            }
        }
        out
    }
}

/// Builds the constraint rows in the basis `(D⊥, U)`.
pub fn twistor_constraint_system(
    tw: &TwistorModel,
    bs: &BlockStructure,
) -> Result<TwistorConstraintSystem> {
    let m = &tw.model;
    let mut basis = bs.d_perp.clone();
    basis.push(bs.d.clone());
    let l = make_lagrangian(m, &basis)?;
    let rt = restricted_torsion(m, &l)?;
    let nl = l.dim();
    let u = nl - 1;
    let space = SymTensorSpace::new(nl);
    let mut block = Matrix::zeros(0, space.len());
    for x in 0..u {
        for y in x..u {
            block.push_row(&space.entry_functional(x, y, u));
        }
        block.push_row(&space.entry_functional(x, u, u));
    }
    let phi = normalized_phi(tw, bs);
    let mut pluri = Matrix::zeros(0, space.len());
    for x in 0..u {
        for y in x..u {
            for z in 0..nl {
                let row = space.functional(|a, b, c| {
                    let mut w = 0.0;
                    if c == z && a < u && b < u {
                        w += phi[(a, x)] * phi[(b, y)];
                    }
                    if (a, b, c) == (x, y, z) {
                        w += 1.0;
                    }
                    w
                });
                pluri.push_row(&row);
            }
        }
    }
    let cyc2 = cyc2_rows(&space, &rt.t);
    Ok(TwistorConstraintSystem {
        space,
        block,
        pluri,
        cyc2,
        vertical: u,
    })
}

/// Minimality and vanishing of the vertical slot as row-space containments.
pub fn twistor_minimality_check(tw: &TwistorModel, l: &LagrangianSubspace) -> Result<CheckReport> {
    let bs = lagrangian_block_structure(tw, l)?;
    let mut rep = CheckReport::new(tw.model.name());
    rep.absorb("", bs.report.clone());
    if !bs.report.passed() {
        return Ok(rep);
    }
    let sys = twistor_constraint_system(tw, &bs)?;
    let sp = &sys.space;
    let u = sys.vertical;
    let nl = u + 1;
    let tol = tw.model.tol();
    let phi = normalized_phi(tw, &bs);
    let k = phi.rows();
    let phi_sq = (&(&phi * &phi) + &Matrix::identity(k)).max_abs();
    let phi_orth = (&(&phi.transpose() * &phi) - &Matrix::identity(k)).max_abs();
    rep.push(Check::measured(
        "phi_complex",
        "Φ² = −Id on D⊥",
        phi_sq,
        tol,
    ));
    rep.push(Check::measured(
        "phi_isometry",
        "g(ΦX, ΦY) = g(X, Y)",
        phi_orth,
        tol,
    ));

    let horizontal_traces: Vec<Vec<f64>> = (0..u)
        .map(|z| sp.functional(|a, b, c| if a == b && a < u && c == z { 1.0 } else { 0.0 }))
        .collect();
    let traces: Vec<Vec<f64>> = (0..nl).map(|z| sp.trace_functional(z)).collect();
    let mut vertical_slots = Vec::new();
    for y in 0..nl {
        for z in y..nl {
            vertical_slots.push(sp.entry_functional(u, y, z));
        }
    }
    let bp = sys.stacked(&[&sys.block, &sys.pluri]);
    let full = sys.stacked(&[&sys.block, &sys.pluri, &sys.cyc2]);
    let rank_check = |name: &str, anchor: &str, a: &Matrix, f: &[Vec<f64>]| {
        let c = row_space_containment(a, f, sp.len());
        Check::measured(
            name,
            anchor,
            (c.rank_augmented - c.rank_constraints) as f64,
            0.0,
        )
        .with_note(format!(
            "rank {} vs {}, solution dim {}, residual {:e}",
            c.rank_constraints, c.rank_augmented, c.solution_dim, c.residual
        ))
    };
    rep.push(rank_check(
        "horizontal_trace",
        "Σ II(e_i, e_i) over D⊥ vanishes under the pluriminimal identity",
        &bp,
        &horizontal_traces,
    ));
    rep.push(rank_check("minimal", "L is minimal", &full, &traces));
    rep.push(rank_check(
        "vertical_normal_vanishes",
        "C(U, ·, ·) = 0 for U ∈ D",
        &full,
        &vertical_slots,
    ));
    let pluri_rows: Vec<Vec<f64>> = (0..sys.pluri.rows())
        .map(|r| sys.pluri.row(r).to_vec())
        .collect();
    rep.push(rank_check(
        "pluriminimal_from_cyclic",
        "the cyclic identity implies II(ΦX, ΦY) = −II(X, Y)",
        &sys.cyc2,
        &pluri_rows,
    ));
    let without_cyc = row_space_containment(&bp, &traces, sp.len());
    rep.detail("constrained_dim_block_pluri", without_cyc.solution_dim);
    rep.detail(
        "constrained_dim_with_cyclic",
        row_space_containment(&full, &[], sp.len()).solution_dim,
    );
    rep.detail(
        "trace_in_block_pluri_span",
        without_cyc.rank_augmented == without_cyc.rank_constraints,
    );
    Ok(rep)
}

/// `C(D, D, ·) = 0`: the fibre direction has vanishing geodesic curvature.
pub fn vertical_geodesic_note(tw: &TwistorModel, l: &LagrangianSubspace) -> Result<CheckReport> {
    let mut rep = CheckReport::new(tw.model.name());
    let anchor = "fibres are geodesics: C(U, U, ·) = 0";
    if tw.n < 2 {
        rep.push(Check::skipped(
            "vertical_geodesic",
            anchor,
            "requires n > 1",
        ));
        return Ok(rep);
    }
    let b = twistor_minimality_check(tw, l)?;
    let ok = b
        .check("vertical_normal_vanishes")
        .is_some_and(Check::passed);
    rep.push(Check::condition("vertical_geodesic", anchor, ok));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{identity_suite, r_operator};

    #[test]
    fn spectrum_n2() {
        let tw = build_twistor_model(2, 1.0).unwrap();
        let r = r_operator(&tw.model).unwrap();
        let s: Vec<(f64, usize)> = r
            .spectrum
            .iter()
            .map(|g| (g.value, g.multiplicity))
            .collect();
        assert_eq!(s.len(), 2);
        assert!((s[0].0 - 4.0).abs() < 1e-12 && s[0].1 == 8);
        assert!((s[1].0 - 8.0).abs() < 1e-12 && s[1].1 == 2);
    }

    #[test]
    fn identities_and_axioms_hold() {
        for n in 1..=3 {
            for kappa in [0.5, 1.0, 2.0] {
                let tw = build_twistor_model(n, kappa).unwrap();
                assert!(identity_suite(&tw.model).passed(), "n={n} κ={kappa}");
                assert!(check_torsion_axioms(&tw).passed(), "n={n} κ={kappa}");
            }
        }
    }

    #[test]
    fn zeroed_u_row_breaks_surjectivity() {
        let n = 2;
        let mut t = twistor_torsion(n, 1.0);
        let u = 4 * n;
        for x in 0..4 * n + 2 {
            for k in 0..4 * n + 2 {
                t[(u, x, k)] = 0.0;
                t[(x, u, k)] = 0.0;
                if k == u {
                    for y in 0..4 * n + 2 {
                        t[(x, y, u)] = 0.0;
                    }
                }
            }
        }
        let tw = from_parts(n, 1.0, &t).unwrap();
        let rep = check_torsion_axioms(&tw);
        assert!(!rep.check("surjective").unwrap().passed());
    }

    #[test]
    fn phi_squares() {
        let tw = build_twistor_model(2, 2.0).unwrap();
        let p = phi_maps(&tw, &tw.u()).unwrap();
        assert!(p.square_residual < 1e-12);
        assert!((&p.phi - &Matrix::from_fn(8, 8, |r, c| 2.0 * tw.jq_op[(r, c)])).max_abs() < 1e-15);
        assert!(phi_maps(&tw, &vector::unit(10, 0)).is_err());
    }

    #[test]
    fn standard_lagrangian_block_structure() {
        let tw = build_twistor_model(2, 1.0).unwrap();
        let l = tw.standard_lagrangian().unwrap();
        let bs = lagrangian_block_structure(&tw, &l).unwrap();
        assert!(bs.report.passed(), "{:?}", bs.report.failures());
        assert!((bs.d[8].abs() - 1.0).abs() < 1e-12);
        let rep = twistor_minimality_check(&tw, &l).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
        // Without the cyclic identity C(U, U, U) is unconstrained.
        assert_eq!(
            rep.details["trace_in_block_pluri_span"],
            serde_json::json!(false)
        );
        assert!(vertical_geodesic_note(&tw, &l).unwrap().passed());
    }

    #[test]
    fn phi_relations() {
        for kappa in [1.0, 2.0] {
            let tw = build_twistor_model(2, kappa).unwrap();
            let pu = phi_maps(&tw, &tw.u()).unwrap();
            let pv = phi_maps(&tw, &tw.v()).unwrap();
            assert!(pv.square_residual < 1e-12);
            // Φ^{Ju} = −I Φ^u on H
            let i_h = Matrix::from_fn(8, 8, |r, c| tw.i_op[(r, c)]);
            assert!((&pv.phi + &(&i_h * &pu.phi)).max_abs() < 1e-14);
            let w = vector::scale(&vector::add(&tw.u(), &tw.v()), 0.5f64.sqrt());
            assert!(phi_maps(&tw, &w).unwrap().square_residual < 1e-12);
        }
    }

    #[test]
    fn zero_and_violating_c() {
        let tw = build_twistor_model(2, 1.0).unwrap();
        let l = tw.standard_lagrangian().unwrap();
        let bs = lagrangian_block_structure(&tw, &l).unwrap();
        let sys = twistor_constraint_system(&tw, &bs).unwrap();
        let all = sys.stacked(&[&sys.block, &sys.pluri, &sys.cyc2]);
        let zero = vec![0.0; sys.space.len()];
        assert_eq!(vector::max_abs(&all.apply(&zero)), 0.0);
        // C = e⁰⊗e⁰⊗e⁰ on D⊥ violates C(ΦX, ΦX, ·) = −C(X, X, ·).
        let c = sys
            .space
            .from_tensor(&crate::lagrangian::CTensor::new(Tensor3::from_fn(
                5,
                |a, b, d| if (a, b, d) == (0, 0, 0) { 1.0 } else { 0.0 },
            )));
        assert!(vector::max_abs(&sys.pluri.apply(&c)) > 0.5);
    }

    #[test]
    fn random_lagrangians_split() {
        let tw = build_twistor_model(2, 1.0).unwrap();
        for seed in 0..10 {
            let l = crate::lagrangian::random_lagrangian(&tw.model, seed).unwrap();
            let bs = lagrangian_block_structure(&tw, &l).unwrap();
            assert!(bs.report.passed(), "seed {seed}");
            assert_eq!(bs.d_perp.len(), 4);
        }
    }

    #[test]
    fn n1_rejected() {
        let tw = build_twistor_model(1, 1.0).unwrap();
        let l = tw.standard_lagrangian().unwrap();
        assert!(matches!(
            lagrangian_block_structure(&tw, &l),
            Err(Error::RequiresNGreaterOne(1))
        ));
        let note = vertical_geodesic_note(&tw, &l).unwrap();
        assert_eq!(note.checks[0].status, crate::report::Status::Skipped);
    }
}
