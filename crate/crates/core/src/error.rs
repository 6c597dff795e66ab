use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("vertex `{0}` is declared twice")]
    DuplicateVertex(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("edge {0}-{1} is declared twice")]
    DuplicateEdge(String, String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// A flow/gflow witness whose maps do not have the required domain or range.
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
    #[error("invalid flow: {0}")]
    InvalidFlow(String),
    #[error("expected as many inputs as outputs, found {inputs} inputs and {outputs} outputs")]
    NotUnitary { inputs: usize, outputs: usize },
    #[error("invalid measurement order: {0}")]
    InvalidOrder(String),
    #[error("invalid schedule at event {index}: {reason}")]
    InvalidSchedule { index: usize, reason: String },
    #[error("invalid layering: {0}")]
    InvalidLayering(String),
    #[error("exact search refused: {size} exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("cannot eliminate `{0}`: inputs and outputs are part of the interface")]
    InterfaceVertex(String),
    #[error("`{0}` is not a neighbour of `{1}`")]
    NotANeighbour(String, String),
    #[error("`{0}` is isolated, the X rule needs a neighbour")]
    IsolatedVertex(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("invalid pattern: {0}")]
    Pattern(String),
    #[error("forced outcome for `{0}` has zero probability")]
    DegenerateBranch(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
