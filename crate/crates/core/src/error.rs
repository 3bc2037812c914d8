use thiserror::Error;

/// Failures raised while building or verifying the manifold.
///
/// Every variant corresponds to a property that the construction relies on; hitting one
/// means the input data (or a construction formula) is wrong, not that a search ran out.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum HsmError {
    #[error("graph is disconnected: diameter is infinite")]
    Disconnected,
    #[error("graph construction failed invariant check: {0}")]
    Construction(String),
    #[error("lemma violated: {0}")]
    LemmaViolation(String),
    #[error("property violated ({bullet}): {detail}")]
    Property { bullet: &'static str, detail: String },
    #[error("labeling is not a bijection: {0}")]
    Labeling(String),
    #[error("map construction failed: {0}")]
    Map(String),
    #[error("planar development failed: {0}")]
    Development(String),
    #[error("planes do not intersect in hyperbolic space")]
    NoIntersection,
    #[error("tetrahedron is not congruent to the characteristic tetrahedron: {0}")]
    Congruence(String),
    #[error("face pairing synthesis failed: {0}")]
    Pairing(String),
    #[error("gluing inconsistency: {0}")]
    Gluing(String),
    #[error("Poincare condition failed: {0}")]
    Poincare(String),
    #[error("cusp analysis failed: {0}")]
    Cusp(String),
    #[error("symmetry check failed: {0}")]
    Symmetry(String),
    #[error("geodesic claim failed: {0}")]
    Geodesic(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, HsmError>;
