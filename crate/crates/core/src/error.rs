use thiserror::Error;

/// Errors raised while building or operating on dual graphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(u32),
    #[error("duplicate halfedge id {0}")]
    DuplicateHalfedge(u32),
    #[error("halfedge {halfedge} refers to unknown vertex {vertex}")]
    UnknownVertex { halfedge: u32, vertex: u32 },
    #[error("unknown halfedge id {0}")]
    UnknownHalfedge(u32),
    #[error("halfedge {0} is used more than once in the edge pairing or leg map")]
    BrokenInvolution(u32),
    #[error("edge pairs halfedge {0} with itself")]
    SelfPaired(u32),
    #[error("halfedge {0} is neither paired nor labeled")]
    DanglingHalfedge(u32),
    #[error("marking label {0} is used twice")]
    DuplicateLeg(u32),
    #[error("marking labels must start at 1, got {0}")]
    InvalidLegLabel(u32),
    #[error("genus {genus} of vertex {vertex} exceeds the supported bound {max}")]
    GenusTooLarge { vertex: u32, genus: u32, max: u32 },
    #[error("unknown edge index {0}")]
    UnknownEdge(usize),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("graph has no vertices")]
    Empty,
    #[error("malformed graph json: {0}")]
    Json(String),
}

/// Errors from catalog construction and the degeneration relation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("(g, n) = ({genus}, {markings}) violates 2g - 2 + n > 0")]
    Unstable { genus: u32, markings: u32 },
    #[error("3g - 3 + n = {required} exceeds the configured bound {bound}; rerun with --bound {required}")]
    BoundExceeded { required: u32, bound: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Errors from extremal assignments and bridge analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssignmentError {
    #[error("assignment `{name}` is undefined on graph {key}")]
    Coverage { name: String, key: String },
    #[error("assignment table entry for {key} names vertex {vertex}, graph has {vertices} vertices")]
    BadVertex { key: String, vertex: usize, vertices: usize },
    #[error("assignment table is for (g, n) = ({table_genus}, {table_markings}), catalog is ({genus}, {markings})")]
    TypeMismatch { table_genus: u32, table_markings: u32, genus: u32, markings: u32 },
    #[error("assignment table entry {0} does not match any stable graph of the catalog")]
    UnknownKey(String),
    #[error("malformed assignment table: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Errors from axis-graph construction, contraction and fiber enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractionError {
    #[error("vertex subset must be proper")]
    NotProper,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("contracted component {component} has unstable boundary data (genus {genus}, {points} special points)")]
    UnstableComponent { component: usize, genus: u32, points: usize },
    #[error("axis graph is disconnected")]
    Disconnected,
    #[error("malformed axis graph: {0}")]
    Malformed(String),
    #[error("singular point {point} of type ({genus}, {m}) is not an axis point")]
    NotAxisPoint { point: usize, genus: u32, m: usize },
    #[error("singular point {0} carries marked points")]
    MarkedSingularity(usize),
    #[error("recorded genus {recorded} differs from computed genus {computed}")]
    GenusMismatch { recorded: u32, computed: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Errors from the Torelli machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorelliError {
    #[error("C1-sets need a graph without separating edges; edge {0} is separating")]
    SeparatingEdge(usize),
    #[error("C1-sets need a connected graph")]
    Disconnected,
    #[error("C1-set computation is not well defined at edge {0}")]
    IllDefined(usize),
    #[error("not a polystable graph: {0}")]
    NotPolystable(String),
    #[error("genus 0 has no Torelli target")]
    GenusZero,
    #[error("fiber check needs an axis-like graph: {0}")]
    NotAxisLike(String),
    #[error(transparent)]
    Contraction(#[from] ContractionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
