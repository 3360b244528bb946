//! Exact computations with secondary Hochschild cochains of a triple `(A, B, ε)`:
//! the differential, cup and circle products, the Gerstenhaber bracket, the
//! BV operator Δ induced by a symmetric invariant form, and cohomology
//! dimensions over `Q` or `GF(p)`.

pub mod cochains;
pub mod cohomology;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod operators;
pub mod scalar;
pub mod structures;
pub mod verify;

pub use cochains::{domain_dimension, enumerate_indices, random_cochain, Cochain, GeneralTensorArgs, TensorIndex};
pub use operators::OperatorError;
pub use scalar::{Field, Scalar};
pub use structures::{validate_triple, TripleCandidate, TripleContext};
