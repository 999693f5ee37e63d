//! Matching covered graphs: tight cuts, the brick/brace decomposition,
//! barriers and 2-separations, and a constructive search for ELP cuts
//! laminar with a given tight cut.

pub mod corpus;
pub mod elp;
pub mod error;
pub mod graph;
pub mod laminar;
pub mod matching;
pub mod oracle;
pub mod tightcuts;

pub use error::{Error, Result};
pub use graph::{boundary, contract, laminar, Contraction, Cut, Multigraph, Vertex, VertexSet};
