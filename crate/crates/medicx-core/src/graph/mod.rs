//! The knowledge graph itself: terms and quads, the fixed vocabulary, the
//! indexed store, and the builder that assembles the A-Box from records and
//! mapping results.

mod build;
mod store;
mod term;
pub mod vocab;

pub use build::{build_graph, GraphError};
pub use store::QuadStore;
pub use term::{escape_literal, Iri, Literal, Quad, Term, TermError};
