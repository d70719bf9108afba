//! Posets of quasistable pseudo-divisors on multigraphs.
//!
//! The crate builds the ranked poset `QD(Γ)` of quasistable pseudo-divisors of
//! a finite multigraph, decides isomorphism of such posets, compares graphs
//! through them, and builds the cell complex of the tropical Jacobian of a
//! metric graph.
//!
//! Divisor arithmetic and quasistability are exact. Edge lengths and volumes
//! are generic over [`scalar::Scalar`]; the aliases at the crate root fix the
//! exact rational choice.

pub mod fixtures;
pub mod divisor;
pub mod graph;
pub mod oracle;
pub mod poset;
pub mod scalar;
pub mod torelli;
pub mod tropical;
pub mod verify;

pub use graph::{EdgeSet, Graph, GraphError, VertexSet};
pub use scalar::{parse_rational, Rational, Scalar};

/// Metric graph with exact rational lengths.
pub type RationalMetricGraph = tropical::MetricGraph<Rational>;
/// Jacobian cell complex with exact rational side lengths.
pub type RationalJacobianComplex = tropical::JacobianComplex<Rational>;
/// Metric graph with `f64` lengths; comparisons are only as exact as the floats.
pub type F64MetricGraph = tropical::MetricGraph<f64>;
pub type F64JacobianComplex = tropical::JacobianComplex<f64>;
