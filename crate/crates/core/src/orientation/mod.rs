// SPDX-License-Identifier: Apache-2.0

//! Balanced orientations.
//!
//! An [`Orientation`] stores the head dart of every edge. For a non-loop edge
//! the tail is the owner of the other dart; a loop is its own tail and head and
//! contributes one to both the in- and the outdegree of its vertex.

mod cycles;
mod tree;

pub use cycles::{canonical_random_orientation, canonical_random_orientation_bounded};
pub use tree::{
    canonical_tree_orientation, canonical_tree_orientation_with_rng, empirical_orientation_law, root_invariance_test,
    tree_orientation_law, OrientationLaw, RootInvariance, TreeWindow,
};

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{darts_of, edge_of, partner, Dart, Edge, MultiGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orientation {
    head: Vec<Dart>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Imbalance {
    pub vertex: Vertex,
    pub indegree: usize,
    pub outdegree: usize,
}

impl From<Imbalance> for Error {
    fn from(i: Imbalance) -> Self {
        Error::Unbalanced {
            vertex: i.vertex,
            indegree: i.indegree,
            outdegree: i.outdegree,
        }
    }
}

impl Orientation {
    /// Head darts indexed by edge. Each entry must be one of the edge's darts.
    pub fn from_heads(head: Vec<Dart>) -> Result<Self> {
        for (e, &d) in head.iter().enumerate() {
            if edge_of(d) != e {
                return Err(Error::Invariant(format!(
                    "dart {d} does not belong to edge {e}"
                )));
            }
        }
        Ok(Orientation { head })
    }

    /// Every edge pointing from its first to its second listed endpoint.
    pub fn as_listed(g: &MultiGraph) -> Self {
        Orientation {
            head: (0..g.edge_count()).map(|e| 2 * e + 1).collect(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.head.len()
    }

    #[inline]
    pub fn head_dart(&self, e: Edge) -> Dart {
        self.head[e]
    }

    #[inline]
    pub fn head(&self, g: &MultiGraph, e: Edge) -> Vertex {
        g.owner(self.head[e])
    }

    #[inline]
    pub fn tail(&self, g: &MultiGraph, e: Edge) -> Vertex {
        g.owner(partner(self.head[e]))
    }

    pub fn heads(&self) -> &[Dart] {
        &self.head
    }

    /// Loops carry no direction; pin their head to the odd dart so equal
    /// orientations compare equal.
    pub(crate) fn normalize_loops(&mut self, g: &MultiGraph) {
        for (e, h) in self.head.iter_mut().enumerate() {
            if g.is_loop(e) {
                *h = 2 * e + 1;
            }
        }
    }

    pub fn reversed(&self) -> Self {
        Orientation {
            head: self.head.iter().map(|&d| partner(d)).collect(),
        }
    }

    /// (indegree, outdegree) per vertex; loops count once each way.
    pub fn degrees(&self, g: &MultiGraph) -> Vec<(usize, usize)> {
        let mut deg = vec![(0, 0); g.vertex_count()];
        for e in 0..self.head.len() {
            deg[self.head(g, e)].0 += 1;
            deg[self.tail(g, e)].1 += 1;
        }
        deg
    }

    /// First vertex with indegree ≠ outdegree.
    pub fn imbalance(&self, g: &MultiGraph) -> Option<Imbalance> {
        self.degrees(g)
            .into_iter()
            .enumerate()
            .find(|(_, (i, o))| i != o)
            .map(|(vertex, (indegree, outdegree))| Imbalance {
                vertex,
                indegree,
                outdegree,
            })
    }

    pub fn is_balanced(&self, g: &MultiGraph) -> bool {
        self.head.len() == g.edge_count() && self.imbalance(g).is_none()
    }

    /// Orientation file: one `edge_id head_vertex` line per edge.
    pub fn to_text(&self, g: &MultiGraph) -> String {
        let mut out = String::new();
        for e in 0..self.head.len() {
            writeln!(out, "{} {}", e, self.head(g, e)).unwrap();
        }
        out
    }

    pub fn parse(g: &MultiGraph, text: &str) -> Result<Self> {
        let mut head: Vec<Option<Dart>> = vec![None; g.edge_count()];
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let [e, v] = crate::graph::parse_pair(i + 1, line)?;
            if e >= g.edge_count() {
                return Err(Error::EdgeOutOfRange {
                    edge: e,
                    m: g.edge_count(),
                });
            }
            let (a, b) = darts_of(e);
            let d = if g.owner(b) == v {
                b
            } else if g.owner(a) == v {
                a
            } else {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("vertex {v} is not an endpoint of edge {e}"),
                });
            };
            head[e] = Some(d);
        }
        let got = head.iter().filter(|h| h.is_some()).count();
        if got != g.edge_count() {
            return Err(Error::OrientationSize {
                got,
                expected: g.edge_count(),
            });
        }
        Ok(Orientation {
            head: head.into_iter().map(Option::unwrap).collect(),
        })
    }
}

/// Balanced orientation of an even-degree multigraph: every edge is oriented
/// in the direction an Euler circuit of its component traverses it.
pub fn eulerian_orientation(g: &MultiGraph) -> Result<Orientation> {
    let odd = g.odd_vertices();
    if !odd.is_empty() {
        return Err(Error::OddDegree { vertices: odd });
    }
    let mut head = vec![usize::MAX; g.edge_count()];
    let mut used = vec![false; g.edge_count()];
    let mut cursor = vec![0usize; g.vertex_count()];
    let mut stack: Vec<Vertex> = Vec::new();
    for start in 0..g.vertex_count() {
        if cursor[start] == g.degree(start) {
            continue;
        }
        // Hierholzer: extend the current trail until stuck, backtrack, repeat.
        stack.push(start);
        while let Some(&v) = stack.last() {
            let darts = g.darts(v);
            while cursor[v] < darts.len() && used[edge_of(darts[cursor[v]])] {
                cursor[v] += 1;
            }
            if cursor[v] == darts.len() {
                stack.pop();
                continue;
            }
            let d = darts[cursor[v]];
            used[edge_of(d)] = true;
            head[edge_of(d)] = partner(d);
            stack.push(g.across(d));
        }
    }
    let mut o = Orientation { head };
    o.normalize_loops(g);
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GraphKind, GraphSpec};
    use crate::graph::fixtures::*;

    #[test]
    fn cycle_is_balanced() {
        let g = cycle(4);
        let o = eulerian_orientation(&g).unwrap();
        assert!(o.degrees(&g).iter().all(|&d| d == (1, 1)));
    }

    #[test]
    fn loops_self_balance() {
        let g = MultiGraph::build(1, &[(0, 0), (0, 0)]).unwrap();
        let o = eulerian_orientation(&g).unwrap();
        assert_eq!(o.degrees(&g), vec![(2, 2)]);
    }

    #[test]
    fn odd_degree_vertices_are_listed() {
        assert_eq!(
            eulerian_orientation(&path(3)),
            Err(Error::OddDegree {
                vertices: vec![0, 2]
            })
        );
    }

    #[test]
    fn unbalanced_triangle_is_reported() {
        let g = cycle(3);
        // 0->1, 1->2 clockwise, 2-0 edge flipped to 0->2
        let o = Orientation::from_heads(vec![1, 3, 4]).unwrap();
        let bad = o.imbalance(&g).unwrap();
        assert_eq!(bad.vertex, 0);
        assert_eq!((bad.indegree, bad.outdegree), (0, 2));
        assert!(!o.is_balanced(&g));
    }

    #[test]
    fn empty_graph_is_balanced() {
        let g = MultiGraph::empty(3);
        assert!(eulerian_orientation(&g).unwrap().is_balanced(&g));
    }

    #[test]
    fn random_even_graphs_are_balanced() {
        for seed in 0..200 {
            let degree = 2 * (1 + seed as usize % 4);
            let n = 1 + seed as usize % 37;
            let g = generate(&GraphSpec::new(
                GraphKind::ConfigurationRegular { degree, n },
                seed,
            ))
            .unwrap();
            assert!(eulerian_orientation(&g).unwrap().is_balanced(&g));
        }
    }

    #[test]
    fn orientation_file_round_trip() {
        let g = MultiGraph::build(3, &[(0, 1), (1, 2), (2, 0), (1, 1), (0, 1)]).unwrap();
        let o = Orientation::from_heads(vec![1, 2, 5, 7, 8]).unwrap();
        let text = o.to_text(&g);
        assert_eq!(Orientation::parse(&g, &text).unwrap(), o);
        assert!(Orientation::parse(&g, "0 1\n").is_err());
        assert!(Orientation::parse(&g, "0 2\n").is_err());
    }
}
