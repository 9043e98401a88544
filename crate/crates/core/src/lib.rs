//! Constructions, samplers, and exhaustive oracles for spanning subgraphs
//! whose degree multiplicities are as balanced as the host graph allows.
//!
//! The crate is organized around one shared representation:
//!
//! - [`graph`]: immutable simple graphs with indexed edges, spanning
//!   subgraphs over them, and degree-multiplicity profiles;
//! - [`generate`]: deterministic seeded graph generators;
//! - [`io`]: the plain-text edge-list format and profile CSV serialization;
//! - [`coloring`]: equitable proper colorings of bounded-degree graphs;
//! - [`threshold`]: random threshold subgraphs and the samplers built on them;
//! - [`intervals`]: degree-interval prescriptions and the split
//!   constructions that realize them;
//! - [`rounding`]: exact rational rounding of fractional edge weights with
//!   per-vertex sum control;
//! - [`strength`]: brute-force irregularity strength and the transfer from an
//!   irregular weighting to a subgraph with few repeated degrees;
//! - [`dense`]: the three-step weighting pipeline for dense graphs;
//! - [`oracle`]: exhaustive minima over all spanning subgraphs and the
//!   checks derived from them;
//! - [`verify`]: consistency checks for stored subgraphs.

pub mod coloring;
pub mod dense;
pub mod generate;
pub mod graph;
pub mod intervals;
pub mod io;
pub mod oracle;
pub mod rounding;
pub mod strength;
pub mod threshold;
pub mod verify;

pub use graph::{DegreeProfile, Graph, SpanningSubgraph};
