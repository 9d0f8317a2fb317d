use thiserror::Error;

/// Failures raised by the engine. Check failures are not errors: they are
/// reported through [`crate::report::CheckReport`]. These variants cover
/// malformed input and preconditions that make a computation meaningless.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not symmetric (residual {residual:e})")]
    NotSymmetric { residual: f64 },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        context: String,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("metric is not positive definite")]
    BadMetric,

    #[error("invalid model: {0}")]
    ModelInvalid(String),

    #[error("automorphism does not have order three (residual {residual:e})")]
    NotOrderThree { residual: f64 },

    #[error("map is not a Lie algebra automorphism (residual {residual:e})")]
    NotAutomorphism { residual: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("metric is not naturally reductive (residual {residual:e})")]
    NotNaturallyReductive { residual: f64 },

    #[error("subspace is not a subalgebra (residual {residual:e})")]
    NotSubalgebra { residual: f64 },

    #[error("subspace is not Lagrangian: omega(v{i}, v{j}) = {value:e}")]
    NotLagrangian { i: usize, j: usize, value: f64 },

    #[error("torsion does not preserve the tangent space (residual {residual:e})")]
    TorsionNotTangential { residual: f64 },

    #[error("cyclic identity of the second fundamental form fails (residual {residual:e})")]
    Cyc2Violated { residual: f64 },

    #[error("model is not strict: nabla J has a kernel of dimension {kernel_dim}")]
    NotStrict { kernel_dim: usize },

    #[error("operation requires a 6-dimensional model, got dimension {0}")]
    NotDimension6(usize),

    #[error("the r-operator does not preserve the subspace (leakage {leakage:e})")]
    RNotReducing { leakage: f64 },

    #[error("factor spectra overlap at eigenvalue {value}")]
    SpectraOverlap { value: f64 },

    #[error("distinguished vector is not vertical (residual {residual:e})")]
    NotVertical { residual: f64 },

    #[error("quaternionic dimension must be at least 2, got {0}")]
    RequiresNGreaterOne(usize),

    #[error("torsion vanishes on the subspace; no natural orientation")]
    DegenerateTorsion,

    #[error("vector {index} is linearly dependent on its predecessors")]
    Dependent { index: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("random search did not converge (best residual {residual:e})")]
    NoConvergence { residual: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Malformed or unusable input, as opposed to a mathematical condition that failed.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Io(_)
                | Error::Json(_)
                | Error::DimensionMismatch { .. }
                | Error::BadMetric
                | Error::NotSymmetric { .. }
                | Error::Dependent { .. }
                | Error::Degenerate(_)
                | Error::DegenerateTorsion
                | Error::NotDimension6(_)
                | Error::RequiresNGreaterOne(_)
        )
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotSymmetric { .. } => "NotSymmetric",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Parse(_) => "Parse",
            Error::BadMetric => "BadMetric",
            Error::ModelInvalid(_) => "ModelInvalid",
            Error::NotOrderThree { .. } => "NotOrderThree",
            Error::NotAutomorphism { .. } => "NotAutomorphism",
            Error::Degenerate(_) => "Degenerate",
            Error::NotNaturallyReductive { .. } => "NotNaturallyReductive",
            Error::NotSubalgebra { .. } => "NotSubalgebra",
            Error::NotLagrangian { .. } => "NotLagrangian",
            Error::TorsionNotTangential { .. } => "TorsionNotTangential",
            Error::Cyc2Violated { .. } => "Cyc2Violated",
            Error::NotStrict { .. } => "NotStrict",
            Error::NotDimension6(_) => "NotDimension6",
            Error::RNotReducing { .. } => "RNotReducing",
            Error::SpectraOverlap { .. } => "SpectraOverlap",
            Error::NotVertical { .. } => "NotVertical",
            Error::RequiresNGreaterOne(_) => "RequiresNGreaterOne",
            Error::DegenerateTorsion => "DegenerateTorsion",
            Error::Dependent { .. } => "Dependent",
            Error::Singular => "Singular",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
