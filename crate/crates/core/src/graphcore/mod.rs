//! Graph representation, elementary constructions, Seidel switching,
//! canonical labelling and graph6 interchange.

mod canon;
pub mod graph6;
mod graph;
mod ops;

pub use canon::{canonical_form, canonical_labeling, is_isomorphic, CanonicalCode, MAX_CANON_ORDER};
pub use graph::{Graph, VertexSet};
pub use ops::{
    add_apex, classify, coclique_extension, complement, complete_bipartite, components, disjoint_union,
    induced_subgraph, is_bipartite, is_connected, seidel_switch, valency_histogram, Classification, Valencies,
};
pub(crate) use graph::{low_mask, BitIter};
