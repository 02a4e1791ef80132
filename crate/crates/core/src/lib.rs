//! Constructions of highly edge-connected regular multigraphs without many
//! pairwise disjoint perfect matchings, and the machinery that certifies
//! their properties.

pub mod cli;
pub mod constructions;
pub mod graph;
pub mod matching;
pub mod report;
