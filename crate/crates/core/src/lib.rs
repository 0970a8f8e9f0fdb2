//! Exact invariant-theoretic machinery for a family of prehomogeneous
//! vector spaces: relative invariants computed over Q and real quadratic
//! fields, irrationality certificates for orbits, and lattice searches
//! demonstrating density of invariant values at primitive integer points.

pub mod actions;
pub mod cubic;
pub mod error;
pub mod exterior;
pub mod invariants15;
pub mod lie;
pub mod linalg;
pub mod points;
pub mod poly;
pub mod projective;
pub mod scalar;
pub mod search;
pub mod trivector;

pub use error::{Error, Result};
pub use exterior::ExtForm;
pub use linalg::{eigensplit_sqrt, Eigensplit, QMatrix, QVector};
pub use poly::PolyOnV;
pub use projective::{projective_is_rational, projectively_equal, RationalityVerdict};
pub use scalar::{parse_scalar, rational_reconstruct, QScalar};
pub use search::{
    box_search, oppenheim_baseline, quadratic_form_poly, walk_search, AnnealParams, ExactValue,
    SearchReport, TraceEntry, ValueFunction,
};
pub use trivector::{
    basis_search, certify_theorem11, decompose_trivector, k_operator, quartic_lambda,
    target_values, BasisSearchReport, Decomposition, Reality, Theorem11Certificate, Trivector,
};
