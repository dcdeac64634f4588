use thiserror::Error;

/// Hard capacity bound: adjacency rows are single machine words.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("vertices must be distinct (got {0} twice)")]
    SameVertex(usize),
    #[error("graph capacity exceeded: {0} vertices > {MAX_VERTICES}")]
    CapacityExceeded(usize),
    #[error("operation requires a nonempty graph")]
    EmptyGraph,
    #[error("internal generation supports 1..=10 vertices, got {0}")]
    GenerationRange(usize),
    #[error("no edge between {u} and {v}")]
    NoSuchEdge { u: usize, v: usize },
    #[error("edge between {u} and {v} already present")]
    EdgeExists { u: usize, v: usize },
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("graph6: malformed header byte 0x{byte:02x} at offset {offset}")]
    BadHeader { byte: u8, offset: usize },
    #[error("graph6: byte 0x{byte:02x} at offset {offset} outside the graph6 alphabet")]
    BadAlphabet { byte: u8, offset: usize },
    #[error("graph6: record truncated at offset {offset} (need {need} payload bytes, got {got})")]
    Truncated { offset: usize, need: usize, got: usize },
    #[error("graph6: {0} vertices exceeds the {MAX_VERTICES}-vertex capacity")]
    TooLarge(usize),
    #[error("graph6: unexpected trailing byte at offset {offset}")]
    Trailing { offset: usize },
    #[error("graph6: nonzero padding bits in final byte at offset {offset}")]
    Padding { offset: usize },
    #[error("graph6: the empty graph has no encoding")]
    EmptyGraph,
    #[error("edge list, line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("stream line {line}: {source}")]
    Stream {
        #[source]
        source: Box<FormatError>,
        line: usize,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
