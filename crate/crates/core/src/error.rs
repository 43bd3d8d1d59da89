use thiserror::Error;

use crate::graph::Edge;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph order {0} is outside the supported range 1..=16")]
    OrderTooLarge(usize),
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    #[error("edge {0} is not present")]
    MissingEdge(Edge),
    #[error("edge {0} is already present")]
    DuplicateEdge(Edge),
    #[error("edge {0} is not an edge of the graph")]
    EdgeNotPresent(Edge),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("sub-deck size {size} is outside 1..={max}")]
    SizeOutOfRange { size: usize, max: usize },
    #[error("sub-deck is not contained in the edge deck")]
    InvalidSubDeck,
    #[error("graph is not a generated family instance: {0}")]
    NotAFamilyInstance(String),
    #[error("family size {0} is outside the range covered by the construction")]
    SizeOutOfTheoremRange(usize),
    #[error("constructed swap failed verification: {0}")]
    WitnessRejected(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("graph is not bipartite with the given parts")]
    NotBipartiteWithGivenParts,
    #[error("malformed graph6 line: {0}")]
    MalformedLine(String),
}
