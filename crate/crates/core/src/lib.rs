//! Algebraic verification of nearly Kähler structures and their Lagrangian
//! subspaces.
//!
//! A model is the pointwise data `(g, J, ∇J)` on a single tangent space. The
//! engine checks the defining identities of a model, computes the derived
//! tensors (torsion, the `r`-operator, the type constant), and then studies
//! Lagrangian subspaces: second fundamental form constraints, splittings along
//! `r`, twistor-type models, the `su(2)` classification on `S³×S³` and
//! invariant infinitesimal deformations.

pub mod deformation;
pub mod error;
pub mod homogeneous;
pub mod lagrangian;
pub mod model;
pub mod octonion;
pub mod quaternion;
pub mod report;
pub mod su2_classify;
pub mod tensor;
pub mod twistor;

pub use error::{Error, Result};
