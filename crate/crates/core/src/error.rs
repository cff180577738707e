use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed cycle notation {text:?}: {reason}")]
    CycleSyntax { text: String, reason: String },
    #[error("point {point} appears more than once in cycle notation")]
    RepeatedPoint { point: usize },
    #[error("point {point} exceeds degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("image list is not a bijection of 0..{degree}")]
    NotABijection { degree: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("group of degree {degree} is not fully enumerated (element cap {cap})")]
    NotEnumerated { degree: usize, cap: usize },
    #[error("group is not transitive")]
    Intransitive,
    #[error("partition is not invariant under the group")]
    NotInvariant,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("group order {order} exceeds the bound {bound}")]
    OrderBound { order: usize, bound: usize },
    #[error("unknown group spec {0:?}")]
    GroupSpec(String),
    #[error("unknown element token {0:?}")]
    UnknownElement(String),
    #[error("identity element is not allowed in a connection set")]
    IdentityInConnectionSet,
    #[error("map is not an automorphism of the group")]
    NotAnAutomorphism,
    #[error("vertex sets must be disjoint and non-empty")]
    BadVertexSets,
    #[error("graph sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("automorphism group exceeds the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("subgroup is not contained in the ambient group")]
    NotASubgroup,
    #[error("group is not regular")]
    NotRegular,
}

pub type Result<T> = std::result::Result<T, Error>;
