//! Unavoidable colour patterns in two-coloured complete graphs.
//!
//! Deciders for balanceable, `r`-tonal and omnitonal graphs (via their cut
//! and induced-edge spectra), amoeba detection through edge-replacement
//! reconfiguration, the extremal colourings of `K_n` for stars, paths and
//! `K_4`, closed-form values and bounds, and exhaustive small-`n` oracles
//! that recompute `bal(n, G)`, `ot(n, G)` and `ex(n, G)` from scratch.
//!
//! Graphs have at most 16 vertices; edge sets of `K_n` are `u128` bitmaps in
//! colex slot order (see [`graph::slot`]).

#![allow(clippy::needless_range_loop)]

pub mod amoeba;
pub mod canon;
pub mod coloring;
pub mod embed;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod graph6;
pub mod named;
pub mod oracle;
pub mod par;
pub mod spectra;

pub use canon::{canonical_form, isomorphic, CanonicalForm};
pub use coloring::Coloring;
pub use embed::enumerate_embeddings;
pub use error::{Error, Result};
pub use graph::{complete_graph, named_graph, EdgeSet, Family, Graph, VertexSet};
pub use graph6::{parse_graph6, to_graph6};
pub use par::Jobs;
