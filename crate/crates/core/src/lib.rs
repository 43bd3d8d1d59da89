//! Edge decks, blockers, edge reconstruction numbers and swapping numbers of
//! small simple graphs.
//!
//! Graphs have at most 16 vertices and are stored as bitset adjacency rows.
//! Isomorphism classes are identified by [`CanonicalCode`], which drives
//! deck construction, blocker search and swap verification.

pub mod cli;
pub mod codec;
pub mod deck;
pub mod error;
pub mod families;
pub mod graph;
pub mod iso;
pub mod recon;
pub mod swap;

pub use deck::{edge_deck, enumerate_subdecks, is_removal_similar, EdgeDeck, SubDeck};
pub use error::{Error, Result};
pub use families::{bipartite_complement, generate, FamilyInstance, FamilyKind};
pub use graph::{Edge, EdgeSet, Graph, StructuralReport, MAX_ORDER};
pub use iso::{are_isomorphic, canonical_form, canonical_labeling, CanonicalCode, VertexMap};
pub use recon::{
    blockers_of, ern, verify_theorem1_sweep, verify_theorem2, verify_theorem7, BlockerCertificate,
    ErnResult, Universe,
};
pub use swap::{
    find_swap, full_2_swappable, is_k_swappable, swap_witness_family, swapping_number,
    SwapNumberResult, SwapWitness,
};
