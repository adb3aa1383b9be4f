// SPDX-License-Identifier: Apache-2.0

//! Edge colourings of bipartite multigraphs.
//!
//! Colours are 1-based. Partial colourings leave edges `None`.

mod divisibility;
mod finite;
mod konig;
mod peel;
mod pipeline;
mod purple;

pub use divisibility::{divisibility_witness, enumerate_bipartite_23, DivisibilityVerdict};
pub use finite::{budgeted_color, color_finite_components, FiniteColoringStats};
pub use konig::{konig_color, konig_color_by_matchings, konig_color_ordered, konig_color_subset, max_matching};
pub use peel::{peel_matching, Peel};
pub use pipeline::{almost_proper_color, incidence_report, DensityReport, IncidenceReport, StageReport};
pub use purple::{purple_eliminate, purple_eliminate_from, purple_eliminate_with, PhaseReport, PurpleOptions, PurpleReport, BLUE, PURPLE, RED};

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge_of, Edge, MultiGraph, Vertex, UNREACHED};
use crate::orientation::{Imbalance, Orientation};

/// A multigraph with every edge joining side 1 to side 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    graph: MultiGraph,
    side: Vec<u8>,
}

impl BipartiteGraph {
    pub fn new(graph: MultiGraph, side: Vec<u8>) -> Result<Self> {
        if side.len() != graph.vertex_count() || side.iter().any(|&s| s != 1 && s != 2) {
            return Err(Error::Invariant("side must assign 1 or 2 to every vertex".into()));
        }
        for (e, u, v) in graph.edges() {
            if u == v {
                return Err(Error::LoopNotAllowed { edge: e });
            }
            if side[u] == side[v] {
                return Err(Error::NotBipartite { edge: e });
            }
        }
        Ok(BipartiteGraph { graph, side })
    }

    /// Sides from a BFS 2-colouring; the smallest vertex of each component
    /// goes to side 1.
    pub fn from_graph(graph: MultiGraph) -> Result<Self> {
        let n = graph.vertex_count();
        let mut side = vec![0u8; n];
        for s in 0..n {
            if side[s] != 0 {
                continue;
            }
            side[s] = 1;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &d in graph.darts(u) {
                    let w = graph.across(d);
                    if w == u {
                        return Err(Error::LoopNotAllowed { edge: edge_of(d) });
                    }
                    if side[w] == 0 {
                        side[w] = 3 - side[u];
                        stack.push(w);
                    } else if side[w] == side[u] {
                        return Err(Error::NotBipartite { edge: edge_of(d) });
                    }
                }
            }
        }
        BipartiteGraph::new(graph, side)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn side(&self, v: Vertex) -> u8 {
        self.side[v]
    }

    pub fn sides(&self) -> &[u8] {
        &self.side
    }

    pub fn into_graph(self) -> MultiGraph {
        self.graph
    }

    /// Sub-bipartite graph on the kept edges (all vertices retained).
    pub fn edge_subgraph(&self, keep: &[bool]) -> (BipartiteGraph, Vec<Edge>) {
        let (g, map) = self.graph.edge_subgraph(keep);
        (
            BipartiteGraph {
                graph: g,
                side: self.side.clone(),
            },
            map,
        )
    }

    pub fn induced(&self, vertices: &[Vertex]) -> (BipartiteGraph, Vec<Vertex>, Vec<Edge>) {
        let (g, vmap, emap) = self.graph.induced(vertices);
        let side = vmap.iter().map(|&v| self.side[v]).collect();
        (BipartiteGraph { graph: g, side }, vmap, emap)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeColoring {
    pub colors: Vec<Option<u32>>,
    pub palette: u32,
}

/// First reason a colouring fails to be proper.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Violation {
    Conflict {
        vertex: Vertex,
        first: Edge,
        second: Edge,
        color: u32,
    },
    OutOfPalette {
        edge: Edge,
        color: u32,
    },
    SizeMismatch {
        got: usize,
        expected: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Conflict {
                vertex,
                first,
                second,
                color,
            } => write!(f, "edges {first} and {second} at vertex {vertex} share colour {color}"),
            Violation::OutOfPalette { edge, color } => write!(f, "edge {edge} has colour {color} outside the palette"),
            Violation::SizeMismatch { got, expected } => write!(f, "colouring covers {got} edges, graph has {expected}"),
        }
    }
}

impl EdgeColoring {
    pub fn uncolored(m: usize, palette: u32) -> Self {
        EdgeColoring {
            colors: vec![None; m],
            palette,
        }
    }

    pub fn color(&self, e: Edge) -> Option<u32> {
        self.colors[e]
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Edge count per colour, index `c - 1`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.palette as usize];
        for c in self.colors.iter().flatten() {
            if let Some(s) = sizes.get_mut(*c as usize - 1) {
                *s += 1;
            }
        }
        sizes
    }

    pub fn count(&self, color: u32) -> usize {
        self.colors.iter().filter(|&&c| c == Some(color)).count()
    }

    pub fn distinct_colors(&self) -> usize {
        let mut seen: Vec<u32> = self.colors.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Coloring file: one `edge_id color` line per coloured edge.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.colors.iter().enumerate() {
            if let Some(c) = c {
                writeln!(out, "{e} {c}").unwrap();
            }
        }
        out
    }

    /// Parses a coloring file for a graph with `m` edges; the palette is the
    /// largest colour present unless given.
    pub fn parse(m: usize, text: &str, palette: Option<u32>) -> Result<Self> {
        let mut colors = vec![None; m];
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let [e, c] = crate::graph::parse_pair(i + 1, line)?;
            if e >= m {
                return Err(Error::EdgeOutOfRange { edge: e, m });
            }
            if c == 0 || c > u32::MAX as usize {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("colour {c} is not a positive 32-bit integer"),
                });
            }
            colors[e] = Some(c as u32);
        }
        let max = colors.iter().flatten().copied().max().unwrap_or(0);
        Ok(EdgeColoring {
            colors,
            palette: palette.unwrap_or(max),
        })
    }
}

/// Checks properness of the coloured part: distinct edges sharing a vertex
/// never share a colour, and colours lie in `1..=palette`.
pub fn verify_proper(g: &MultiGraph, c: &EdgeColoring) -> std::result::Result<(), Violation> {
    if c.colors.len() != g.edge_count() {
        return Err(Violation::SizeMismatch {
            got: c.colors.len(),
            expected: g.edge_count(),
        });
    }
    for (e, col) in c.colors.iter().enumerate() {
        if let Some(col) = *col {
            if col == 0 || col > c.palette {
                return Err(Violation::OutOfPalette { edge: e, color: col });
            }
        }
    }
    let mut seen: Vec<(u32, Edge)> = Vec::new();
    for v in 0..g.vertex_count() {
        seen.clear();
        for &d in g.darts(v) {
            let e = edge_of(d);
            if let Some(col) = c.colors[e] {
                seen.push((col, e));
            }
        }
        seen.sort_unstable();
        seen.dedup();
        for w in seen.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Violation::Conflict {
                    vertex: v,
                    first: w[0].1,
                    second: w[1].1,
                    color: w[0].0,
                });
            }
        }
    }
    Ok(())
}

/// Oriented double cover: vertex `u` is `(u, 1)`, vertex `n + u` is `(u, 2)`,
/// and edge `e` of the source becomes edge `e` from `(tail, 1)` to `(head, 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCover {
    pub cover: BipartiteGraph,
    /// Cover edge id of each source edge.
    pub map: Vec<Edge>,
    /// Set when the orientation is unbalanced and the cover is irregular.
    pub imbalance: Option<Imbalance>,
}

pub fn double_cover(g: &MultiGraph, o: &Orientation) -> Result<DoubleCover> {
    if o.edge_count() != g.edge_count() {
        return Err(Error::OrientationSize {
            got: o.edge_count(),
            expected: g.edge_count(),
        });
    }
    let n = g.vertex_count();
    let edges: Vec<(Vertex, Vertex)> = (0..g.edge_count())
        .map(|e| (o.tail(g, e), n + o.head(g, e)))
        .collect();
    let cover = MultiGraph::build(2 * n, &edges)?;
    let side = (0..2 * n).map(|v| if v < n { 1 } else { 2 }).collect();
    Ok(DoubleCover {
        cover: BipartiteGraph::new(cover, side)?,
        map: (0..g.edge_count()).collect(),
        imbalance: o.imbalance(g),
    })
}

/// First pair of `set` members at distance at most `within`, as
/// `(u, v, distance)` with `u < v`.
pub(crate) fn close_pair(g: &MultiGraph, set: &[Vertex], within: usize) -> Option<(Vertex, Vertex, usize)> {
    let mut member = vec![false; g.vertex_count()];
    for &v in set {
        member[v] = true;
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut best: Option<(Vertex, Vertex, usize)> = None;
    for &u in &sorted {
        let dist = g.bfs_distances(u, Some(within));
        for &v in &sorted {
            if v > u && dist[v] != UNREACHED {
                let cand = (u, v, dist[v]);
                if best.is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                    best = Some(cand);
                }
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::orientation::eulerian_orientation;

    #[test]
    fn bipartition_inference() {
        let b = BipartiteGraph::from_graph(complete_bipartite(2, 3)).unwrap();
        assert_eq!(b.sides(), &[1, 1, 2, 2, 2]);
        assert!(matches!(
            BipartiteGraph::from_graph(cycle(5)),
            Err(Error::NotBipartite { .. })
        ));
        let looped = MultiGraph::build(2, &[(0, 1), (1, 1)]).unwrap();
        assert!(matches!(
            BipartiteGraph::from_graph(looped),
            Err(Error::LoopNotAllowed { edge: 1 })
        ));
    }

    #[test]
    fn verifier_examples() {
        let g = path(3);
        let good = EdgeColoring {
            colors: vec![Some(1), Some(2)],
            palette: 2,
        };
        assert_eq!(verify_proper(&g, &good), Ok(()));
        let bad = EdgeColoring {
            colors: vec![Some(1), Some(1)],
            palette: 2,
        };
        assert_eq!(
            verify_proper(&g, &bad),
            Err(Violation::Conflict {
                vertex: 1,
                first: 0,
                second: 1,
                color: 1
            })
        );
        let partial = EdgeColoring {
            colors: vec![Some(1), None],
            palette: 2,
        };
        assert_eq!(verify_proper(&g, &partial), Ok(()));
    }

    #[test]
    fn coloring_file_round_trip() {
        let c = EdgeColoring {
            colors: vec![Some(2), None, Some(1)],
            palette: 2,
        };
        assert_eq!(c.to_text(), "0 2\n2 1\n");
        assert_eq!(EdgeColoring::parse(3, &c.to_text(), Some(2)).unwrap(), c);
        assert!(EdgeColoring::parse(2, "5 1\n", None).is_err());
        assert!(EdgeColoring::parse(2, "0 0\n", None).is_err());
    }

    #[test]
    fn cover_of_two_cycle() {
        let g = MultiGraph::build(2, &[(0, 1), (1, 0)]).unwrap();
        let o = eulerian_orientation(&g).unwrap();
        let dc = double_cover(&g, &o).unwrap();
        let mut ends: Vec<_> = dc.cover.graph().edges().map(|(_, u, v)| (u, v)).collect();
        ends.sort_unstable();
        assert_eq!(ends, vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn cover_of_loop() {
        let g = MultiGraph::build(1, &[(0, 0)]).unwrap();
        let o = eulerian_orientation(&g).unwrap();
        let dc = double_cover(&g, &o).unwrap();
        assert_eq!(dc.cover.graph().endpoints(0), (0, 1));
        assert_eq!(dc.cover.graph().regular_degree().unwrap(), 1);
    }

    #[test]
    fn cover_of_k5_is_two_regular() {
        let g = complete(5);
        let o = eulerian_orientation(&g).unwrap();
        let dc = double_cover(&g, &o).unwrap();
        assert_eq!(dc.cover.graph().vertex_count(), 10);
        assert_eq!(dc.cover.graph().regular_degree().unwrap(), 2);
        assert!(dc.imbalance.is_none());
    }

    #[test]
    fn unbalanced_cover_is_flagged() {
        let g = cycle(3);
        let o = Orientation::from_heads(vec![1, 3, 4]).unwrap();
        let dc = double_cover(&g, &o).unwrap();
        assert!(dc.imbalance.is_some());
    }

    #[test]
    fn close_pairs() {
        let g = path(7);
        assert_eq!(close_pair(&g, &[0, 3, 6], 2), None);
        assert_eq!(close_pair(&g, &[0, 3, 6], 3), Some((0, 3, 3)));
    }
}
