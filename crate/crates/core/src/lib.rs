//! Contraction sequences of bounded red degree and the algorithm family
//! built on top of them: replay and verification, independent and dominating
//! set dynamic programming, (induced) subgraph isomorphism, reverse-order
//! coloring, homogeneous pairs, and biclique-interval shortest paths.

pub mod coloring;
pub mod dominating;
pub mod error;
pub mod families;
pub mod graph;
pub mod ibp;
pub mod independent;
pub mod oracles;
pub mod sequence;
mod setops;
pub mod subiso;
pub mod toolkit;
pub mod trigraph;
pub mod union_tree;

pub use error::{Error, Result};
pub use graph::Graph;
pub use sequence::{verify_sequence, ContractionSequence, VertexPartition};
pub use trigraph::{EdgeColor, Trigraph};
pub use union_tree::{build_union_tree, OrderedUnionTree};
