//! Machinery for Ramsey goodness of degenerate graphs.
//!
//! The crate is organized around the objects that show up when one tries to
//! embed a sparse graph `H` into the blue side of a red/blue coloring of
//! `K_N` whose red side has few cliques:
//!
//! * [`graph`]: the graph type, named families, graph operations and I/O.
//! * [`degeneracy`]: degeneracy orderings, greedy colorings and the
//!   high-degree counting bound.
//! * [`cliques`]: exact clique counts, joint sizes, book sizes and complete
//!   multipartite pattern search.
//! * [`split`]: separator certificates, the tree splitter, trimming and the
//!   transfer constructions for powers, products, blow-ups and joins.
//! * [`embed`]: greedy embeddings of degenerate graphs, the component-wise
//!   embedding driver, dense cores and dependent random choice.
//! * [`ramsey`]: explicit colorings, exhaustive arrowing search, and the
//!   spectral test that rules out 3-goodness for random regular graphs.
//!
//! The guide in `book/` walks through each of these with runnable snippets.

pub mod bitset;
pub mod cliques;
pub mod degeneracy;
pub mod embed;
pub mod error;
pub mod graph;
pub mod ramsey;
pub mod split;

pub use error::{Error, Result};
pub use graph::Graph;

/// The guide's chapters, compiled so that their snippets stay correct.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/cliques.md")]
    mod cliques {}
    #[doc = include_str!("../../../book/src/splitting.md")]
    mod splitting {}
    #[doc = include_str!("../../../book/src/embedding.md")]
    mod embedding {}
    #[doc = include_str!("../../../book/src/ramsey.md")]
    mod ramsey {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
