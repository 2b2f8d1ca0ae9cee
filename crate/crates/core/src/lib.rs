//! Growth of Temperley-Lieb-type algebras attached to edge two-colored stars.
//!
//! The pipeline goes graph → presentation → Groebner basis → obstruction
//! automaton → Hilbert function and growth class, and a separate purely
//! graph-theoretic classifier predicts the same growth class so the two can
//! be cross-checked.

mod bigjson;
pub mod analysis;
pub mod classifier;
pub mod graph;
pub mod growth;
pub mod ncgb;
pub mod presentation;
pub mod scalar;

pub use graph::{
    canonical_form, contains_subgraph, dashed_components, enumerate_graphs, is_isomorphic,
    parse_graph, prune_isolated_leaves, CanonicalForm, Embedding, GraphError, TwoColoredStar,
};
pub use ncgb::{buchberger, GroebnerResult, NcPolynomial, ObstructionSet, Word};
pub use presentation::{build_presentation, ParameterMode, Presentation};
pub use scalar::Scalar;
