use crate::error::{Error, Result};
use crate::report::{Check, CheckReport};
use crate::tensor::{Matrix, Tensor3};

/// `C(X, Y, Z) = ⟨II(X, Y), JZ⟩` in an orthonormal basis of `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct CTensor {
    entries: Tensor3,
}

impl CTensor {
    pub fn new(entries: Tensor3) -> Self {
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            entries: Tensor3::zeros(n),
        }
    }

    /// Average over all permutations of the slots.
    pub fn symmetrized(t: &Tensor3) -> Self {
        let n = t.dim();
        let entries = Tensor3::from_fn(n, |a, b, c| {
            (t[(a, b, c)]
                + t[(a, c, b)]
                + t[(b, a, c)]
                + t[(b, c, a)]
                + t[(c, a, b)]
                + t[(c, b, a)])
                / 6.0
        });
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn entries(&self) -> &Tensor3 {
        &self.entries
    }

    pub fn eval(&self, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
        self.entries.eval(x, y, z)
    }
}

/// Largest deviation from total symmetry over all index triples.
pub fn check_c_symmetry(c: &CTensor, tol: f64) -> CheckReport {
    let mut rep = CheckReport::new("c-tensor");
    rep.push(Check::measured(
        "c_symmetric",
        "C(X,Y,Z) = ⟨II(X,Y),JZ⟩ is totally symmetric",
        c.entries.symmetry_residual(),
        tol,
    ));
    rep
}

/// `h(Z) = Σ_i C(e_i, e_i, Z)`, the mean curvature vector paired with `JZ`.
pub fn mean_curvature(c: &CTensor) -> Vec<f64> {
    let n = c.dim();
    (0..n)
        .map(|z| (0..n).map(|i| c.entries[(i, i, z)]).sum())
        .collect()
}

/// `α(X, Y) = Σ_i C(e_i, X, T(e_i, Y))` and `β(X, Y, Z) = Σ_i C(T(e_i, X), Y, T(e_i, Z))`.
#[derive(Clone, Debug)]
pub struct TraceTensors {
    pub alpha: Matrix,
    pub beta: Tensor3,
}

/// `t` is the torsion restricted to `L` in `L`-coordinates (vector valued).
pub fn trace_tensors(c: &CTensor, t: &Tensor3) -> TraceTensors {
    let n = c.dim();
    let ce = &c.entries;
    let alpha = Matrix::from_fn(n, n, |x, y| {
        let mut s = 0.0;
        for i in 0..n {
            for k in 0..n {
                s += ce[(i, x, k)] * t[(i, y, k)];
            }
        }
        s
    });
    let beta = Tensor3::from_fn(n, |x, y, z| {
        let mut s = 0.0;
        for i in 0..n {
            for p in 0..n {
                let tp = t[(i, x, p)];
                if tp == 0.0 {
                    continue;
                }
                for q in 0..n {
                    s += tp * ce[(p, y, q)] * t[(i, z, q)];
                }
            }
        }
        s
    });
    TraceTensors { alpha, beta }
}

/// Residuals of the cyclic identity and its trace consequences.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CyclicResiduals {
    /// `C(X,Y,T(Z,V)) + C(X,Z,T(V,Y)) + C(X,V,T(Y,Z)) = 0`
    pub cyc2: f64,
    /// `α(X,Y) − α(Y,X) = h(T(X,Y))`
    pub cyc_mean: f64,
    /// `β(X,Y,Z) = β(Z,Y,X)`
    pub cyc_beta_first: f64,
    /// `β(X,Y,Z) = β(Y,X,Z) + α(T(Y,X),Z)`
    pub cyc_beta_second: f64,
    /// `α(T(X,Y),Z) + α(T(Y,Z),X) + α(T(Z,X),Y) = 0`
    pub cyc_beta2: f64,
}

fn c_with_vector(ce: &Tensor3, x: usize, y: usize, v: &[f64]) -> f64 {
    v.iter().enumerate().map(|(k, vk)| ce[(x, y, k)] * vk).sum()
}

pub fn cyclic_identity_residuals(c: &CTensor, t: &Tensor3) -> CyclicResiduals {
    let n = c.dim();
    let ce = &c.entries;
    let mut cyc2: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for v in 0..n {
                    let s = c_with_vector(ce, x, y, t.slot(z, v))
                        + c_with_vector(ce, x, z, t.slot(v, y))
                        + c_with_vector(ce, x, v, t.slot(y, z));
                    cyc2 = cyc2.max(s.abs());
                }
            }
        }
    }
    let tr = trace_tensors(c, t);
    let h = mean_curvature(c);
    let alpha_on = |v: &[f64], z: usize| -> f64 { (0..n).map(|k| v[k] * tr.alpha[(k, z)]).sum() };
    let mut cyc_mean: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            let hv: f64 = t.slot(x, y).iter().zip(&h).map(|(a, b)| a * b).sum();
            cyc_mean = cyc_mean.max((tr.alpha[(x, y)] - tr.alpha[(y, x)] - hv).abs());
        }
    }
    let (mut b1, mut b2, mut b3): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let b = tr.beta[(x, y, z)];
                b1 = b1.max((b - tr.beta[(z, y, x)]).abs());
                b2 = b2.max((b - tr.beta[(y, x, z)] - alpha_on(t.slot(y, x), z)).abs());
                let s = alpha_on(t.slot(x, y), z)
                    + alpha_on(t.slot(y, z), x)
                    + alpha_on(t.slot(z, x), y);
                b3 = b3.max(s.abs());
            }
        }
    }
    CyclicResiduals {
        cyc2,
        cyc_mean,
        cyc_beta_first: b1,
        cyc_beta_second: b2,
        cyc_beta2: b3,
    }
}

/// The trace identities for a `C` satisfying the cyclic identity.
pub fn check_cyclic_identities(c: &CTensor, t: &Tensor3, tol: f64) -> Result<CheckReport> {
    let r = cyclic_identity_residuals(c, t);
    if r.cyc2 > tol {
        return Err(Error::Cyc2Violated { residual: r.cyc2 });
    }
    let mut rep = CheckReport::new("cyclic-identities");
    rep.push(Check::measured(
        "cyc2",
        "C(X,Y,T(Z,V)) + C(X,Z,T(V,Y)) + C(X,V,T(Y,Z)) = 0",
        r.cyc2,
        tol,
    ));
    rep.push(Check::measured(
        "cyc_mean",
        "α(X,Y) − α(Y,X) = ⟨H, JT(X,Y)⟩",
        r.cyc_mean,
        tol,
    ));
    rep.push(Check::measured(
        "cyc_beta_first",
        "β(X,Y,Z) = β(Z,Y,X)",
        r.cyc_beta_first,
        tol,
    ));
    rep.push(Check::measured(
        "cyc_beta_second",
        "β(X,Y,Z) = β(Y,X,Z) + α(T(Y,X),Z)",
        r.cyc_beta_second,
        tol,
    ));
    rep.push(Check::measured(
        "cyc_beta2",
        "α(T(X,Y),Z) + α(T(Y,Z),X) + α(T(Z,X),Y) = 0",
        r.cyc_beta2,
        tol,
    ));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps_torsion(a: f64) -> Tensor3 {
        Tensor3::from_fn(3, |i, j, k| {
            a * match (i, j, k) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                _ => 0.0,
            }
        })
    }

    #[test]
    fn zero_tensor_is_trivial() {
        let c = CTensor::zeros(3);
        assert!(check_c_symmetry(&c, 1e-12).passed());
        let tr = trace_tensors(&c, &eps_torsion(1.0));
        assert_eq!(tr.alpha.max_abs(), 0.0);
        assert_eq!(tr.beta.max_abs(), 0.0);
        assert!(check_cyclic_identities(&c, &eps_torsion(1.0), 1e-12)
            .unwrap()
            .passed());
    }

    #[test]
    fn antisymmetric_pair_fails_symmetry() {
        let mut t = Tensor3::zeros(3);
        t[(0, 1, 2)] = 1.0;
        t[(1, 0, 2)] = -1.0;
        assert!(!check_c_symmetry(&CTensor::new(t), 1e-9).passed());
    }

    #[test]
    fn alpha_vanishes_in_dimension_three() {
        let raw = Tensor3::from_fn(3, |a, b, c| ((a * 7 + b * 3 + c * 5) % 11) as f64 - 4.0);
        let c = CTensor::symmetrized(&raw);
        let tr = trace_tensors(&c, &eps_torsion(0.7));
        assert!(tr.alpha.max_abs() < 1e-14);
        // β is symmetric in its outer slots for any symmetric C.
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    assert!((tr.beta[(x, y, z)] - tr.beta[(z, y, x)]).abs() < 1e-13);
                }
            }
        }
    }
}
