use serde::Serialize;

use super::{make_lagrangian, LagrangianSubspace};
use crate::error::{Error, Result};
use crate::model::{r_operator, NKModel, SPECTRUM_GROUP_TOL};
use crate::report::{Check, CheckReport};
use crate::tensor::{intersection, vector};

/// Largest admissible `‖(I − P_L) r P_L‖∞`.
pub const LEAKAGE_TOL: f64 = 1e-8;

/// How one eigenvalue group of `r` meets `TL`.
#[derive(Clone, Debug, Serialize)]
pub struct GroupIntersection {
    pub value: f64,
    pub multiplicity: usize,
    pub dim_in_l: usize,
}

/// Splitting of `TL` into the Kähler part `L ∩ ker r` and its complement.
#[derive(Clone, Debug)]
pub struct RSplit {
    pub l_k: Vec<Vec<f64>>,
    pub l_snk: Vec<Vec<f64>>,
    pub leakage: f64,
    pub groups: Vec<GroupIntersection>,
    pub report: CheckReport,
}

pub fn split_by_r(m: &NKModel, l: &LagrangianSubspace) -> Result<RSplit> {
    let d = m.dim();
    let r = r_operator(m)?;
    let p = l.projector();
    let mut leakage: f64 = 0.0;
    for x in l.basis() {
        let rx = r.r.apply(x);
        leakage = leakage.max(vector::max_abs(&vector::sub(&rx, &p.apply(&rx))));
    }
    if leakage > LEAKAGE_TOL {
        return Err(Error::RNotReducing { leakage });
    }
    let mut groups = Vec::new();
    let mut law = true;
    let mut complement: Vec<Vec<f64>> = Vec::new();
    let mut l_k = Vec::new();
    for (gi, g) in r.spectrum.iter().enumerate() {
        let meet = intersection(l.basis(), &g.basis, d);
        law &= 2 * meet.len() == g.multiplicity;
        groups.push(GroupIntersection {
            value: g.value,
            multiplicity: g.multiplicity,
            dim_in_l: meet.len(),
        });
        if gi == 0 && r.kernel_dim > 0 {
            l_k = meet;
        } else {
            complement.extend(g.basis.iter().cloned());
        }
    }
    let l_snk = intersection(l.basis(), &complement, d);
    let mut report = CheckReport::new(m.name());
    report.push(Check::measured(
        "r_preserves_tangent_space",
        "r(TL) ⊆ TL",
        leakage,
        LEAKAGE_TOL,
    ));
    report.push(Check::condition(
        "eigenspace_dimension_law",
        "dim(Eig(λ) ∩ TL) = ½ mult(λ)",
        law,
    ));
    report.push(Check::condition(
        "kahler_part_dimension",
        "dim L_K = ½ dim ker r",
        2 * l_k.len() == r.kernel_dim && l_k.len() + l_snk.len() == l.dim(),
    ));
    report.detail("dim_l_k", l_k.len());
    report.detail("dim_l_snk", l_snk.len());
    report.detail("groups", &groups);
    Ok(RSplit {
        l_k,
        l_snk,
        leakage,
        groups,
        report,
    })
}

/// Splits a Lagrangian of `m1 × m2` into Lagrangians of the factors when
/// the spectra of `r` on the two factors are disjoint.
pub fn split_by_spectrum(
    m1: &NKModel,
    m2: &NKModel,
    l: &LagrangianSubspace,
) -> Result<(LagrangianSubspace, LagrangianSubspace)> {
    let (d1, d2) = (m1.dim(), m2.dim());
    if l.ambient_dim() != d1 + d2 {
        return Err(Error::DimensionMismatch {
            expected: d1 + d2,
            found: l.ambient_dim(),
            context: "product dimension".into(),
        });
    }
    let s1 = r_operator(m1)?.spectrum;
    let s2 = r_operator(m2)?.spectrum;
    for a in &s1 {
        for b in &s2 {
            if (a.value - b.value).abs() <= SPECTRUM_GROUP_TOL {
                return Err(Error::SpectraOverlap { value: a.value });
            }
        }
    }
    let d = d1 + d2;
    let v1: Vec<Vec<f64>> = (0..d1).map(|i| vector::unit(d, i)).collect();
    let v2: Vec<Vec<f64>> = (d1..d).map(|i| vector::unit(d, i)).collect();
    let l1: Vec<Vec<f64>> = intersection(l.basis(), &v1, d)
        .into_iter()
        .map(|v| v[..d1].to_vec())
        .collect();
    let l2: Vec<Vec<f64>> = intersection(l.basis(), &v2, d)
        .into_iter()
        .map(|v| v[d1..].to_vec())
        .collect();
    Ok((make_lagrangian(m1, &l1)?, make_lagrangian(m2, &l2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lagrangian::random_lagrangian;
    use crate::model::{flat_kahler, product, s6};

    #[test]
    fn kahler_line_times_sphere() {
        let m = product(&flat_kahler(1), &s6());
        for seed in 0..5 {
            let l = random_lagrangian(&m, seed).unwrap();
            let s = split_by_r(&m, &l).unwrap();
            assert!(s.report.passed(), "seed {seed}");
            assert_eq!((s.l_k.len(), s.l_snk.len()), (1, 3));
        }
    }

    #[test]
    fn equal_spheres_overlap() {
        let m = product(&s6(), &s6());
        let l = random_lagrangian(&m, 1).unwrap();
        assert!(matches!(
            split_by_spectrum(&s6(), &s6(), &l),
            Err(Error::SpectraOverlap { .. })
        ));
    }

    #[test]
    fn strict_model_has_no_kahler_part() {
        let m = s6();
        let l = random_lagrangian(&m, 2).unwrap();
        assert!(split_by_r(&m, &l).unwrap().l_k.is_empty());
    }
}
