use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for a graph on {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("label table has {got} entries but the graph has {expected} vertices")]
    LabelCount { expected: usize, got: usize },
    #[error("label of vertex {0} repeats an earlier label")]
    DuplicateLabel(usize),
    #[error("H({n}:{r}) has no vertices")]
    EmptyVertexSet { n: u8, r: u8 },
    #[error("parameter domain violation: {0}")]
    Domain(String),
    #[error("element {element} outside 1..={n}")]
    ElementOutOfRange { element: u8, n: u8 },
    #[error("partition is not equitable: vertices {vertex} and {other} of cell {cell} differ on cell {target}")]
    NotEquitable {
        vertex: usize,
        other: usize,
        cell: usize,
        target: usize,
    },
    #[error("partition does not cover the graph: {0}")]
    BadPartition(String),
    #[error("vertex set is not independent: edge {0}-{1}")]
    NotIndependent(usize, usize),
    #[error("generator {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("group does not act transitively ({orbits} vertex orbits)")]
    NotTransitive { orbits: usize },
    #[error("group order exceeds the enumeration cap of {cap}")]
    GroupCapExceeded { cap: usize },
    #[error("coloring is improper on edge {0}-{1}")]
    ImproperColoring(usize, usize),
    #[error("coloring does not cover all {expected} vertices (got {got})")]
    ColoringSize { expected: usize, got: usize },
    #[error("color {color} collides with the ground set {{1..{n}}}")]
    ColorCollision { color: u32, n: u8 },
    #[error("maximum degree {max_degree} violates the lifting bound (n-r)/(n-2r) = {bound_num}/{bound_den}")]
    DegreeCondition {
        max_degree: usize,
        bound_num: u64,
        bound_den: u64,
    },
    #[error("graph is not labeled by {0}")]
    MissingLabels(&'static str),
    #[error("permutation acts on {got} elements, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("vertices must be distinct")]
    IdenticalVertices,
    #[error("invalid vertex: {0}")]
    InvalidVertex(String),
    #[error("map violates the homomorphism at source edge {0}-{1}")]
    NotHomomorphism(usize, usize),
}
