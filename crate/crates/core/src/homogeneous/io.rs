use serde::{Deserialize, Serialize};

use super::{decompose, LieAlgebra, ThreeSymmetricSpace};
use crate::error::{Error, Result};
use crate::tensor::{Matrix, Tensor3};

/// JSON shape of a Lie algebra with automorphism. `c[i][j][k]` is the
/// coefficient of `e_k` in `[e_i, e_j]`; `B_m`, when present, is a symmetric
/// form on the whole algebra whose restriction to `𝔪` becomes the metric.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureFile {
    pub dim: usize,
    pub c: Vec<Vec<Vec<f64>>>,
    pub s_star: Vec<Vec<f64>>,
    #[serde(rename = "B_m", default, skip_serializing_if = "Option::is_none")]
    pub b_m: Option<Vec<Vec<f64>>>,
}

impl StructureFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn into_space(self, tol: f64) -> Result<ThreeSymmetricSpace> {
        let c = Tensor3::from_nested(&self.c)?;
        let s = Matrix::from_rows(&self.s_star)?;
        if c.dim() != self.dim || s.rows() != self.dim || s.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: c.dim(),
                context: "structure-constant file".into(),
            });
        }
        let b = self.b_m.as_deref().map(Matrix::from_rows).transpose()?;
        decompose(LieAlgebra::new(c, tol)?, s, b, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homogeneous::su2_cubed_algebra;

    #[test]
    fn loads_su2_cubed_from_json() {
        let alg = su2_cubed_algebra();
        let s = Matrix::from_fn(9, 9, |r, c| {
            if r == 3 * ((c / 3 + 1) % 3) + c % 3 {
                1.0
            } else {
                0.0
            }
        });
        let file = StructureFile {
            dim: 9,
            c: alg.structure_constants().to_nested(),
            s_star: s.to_rows(),
            b_m: None,
        };
        let text = serde_json::to_string(&file).unwrap();
        let t = StructureFile::from_json(&text)
            .unwrap()
            .into_space(1e-12)
            .unwrap();
        assert_eq!(t.dim_m(), 6);
    }
}
