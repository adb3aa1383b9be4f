// SPDX-License-Identifier: Apache-2.0

//! Balanced orientations, bipartite edge colorings and Schreier decorations of
//! bounded-degree multigraphs, with local-statistics checks.

pub mod canon;
pub mod coloring;
pub mod error;
pub mod generate;
pub mod graph;
pub mod labeling;
pub mod local;
pub mod orientation;
pub mod rng;
pub mod schreier;

pub use error::{Error, Result};
pub use graph::MultiGraph;
