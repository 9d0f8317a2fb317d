use serde::{Deserialize, Serialize};

use super::NKModel;
use crate::error::{Error, Result};
use crate::tensor::{Matrix, Tensor3};

/// On-disk JSON shape of a model. `A[i][j][k]` is the `k`-th component of `A(e_i, e_j)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub name: String,
    pub dim: usize,
    pub g: Vec<Vec<f64>>,
    #[serde(rename = "J")]
    pub j: Vec<Vec<f64>>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Vec<f64>>>,
    pub tol: f64,
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn into_model(self) -> Result<NKModel> {
        if !self.dim.is_multiple_of(2) {
            return Err(Error::Parse(format!(
                "model dimension must be even, got {}",
                self.dim
            )));
        }
        let g = Matrix::from_rows(&self.g)?;
        let j = Matrix::from_rows(&self.j)?;
        let a = Tensor3::from_nested(&self.a)?;
        for (what, found) in [
            ("g", g.rows()),
            ("g", g.cols()),
            ("J", j.rows()),
            ("J", j.cols()),
            ("A", a.dim()),
        ] {
            if found != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found,
                    context: format!("model file field {what}"),
                });
            }
        }
        if !(self.tol > 0.0) {
            return Err(Error::Parse("tolerance must be positive".into()));
        }
        NKModel::new(&self.name, &g, &j, &a, self.tol)
    }

    /// Frame data of a model (the metric written is the identity).
    pub fn from_model(m: &NKModel) -> Self {
        Self {
            name: m.name().into(),
            dim: m.dim(),
            g: Matrix::identity(m.dim()).to_rows(),
            j: m.j().to_rows(),
            a: m.a().to_nested(),
            tol: m.tol(),
        }
    }
}

impl NKModel {
    pub fn from_json(text: &str) -> Result<Self> {
        ModelFile::from_json(text)?.into_model()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ModelFile::from_model(self)).expect("model serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::s6;

    #[test]
    fn odd_dim_and_ragged_rejected() {
        let odd = r#"{"name":"x","dim":3,"g":[[1,0,0],[0,1,0],[0,0,1]],"J":[[0,0,0],[0,0,0],[0,0,0]],"A":[],"tol":1e-9}"#;
        assert!(NKModel::from_json(odd).is_err());
        let ragged = r#"{"name":"x","dim":2,"g":[[1,0],[0]],"J":[[0,-1],[1,0]],"A":[[[0,0],[0,0]],[[0,0],[0,0]]],"tol":1e-9}"#;
        assert!(matches!(NKModel::from_json(ragged), Err(Error::Parse(_))));
    }

    #[test]
    fn export_then_load() {
        let m = s6();
        let back = NKModel::from_json(&m.to_json()).unwrap();
        assert_eq!(back.a(), m.a());
        assert_eq!(back.j(), m.j());
    }
}
