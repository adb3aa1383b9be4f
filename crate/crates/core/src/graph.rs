// SPDX-License-Identifier: Apache-2.0

//! Dart-based finite multigraphs.
//!
//! Edge `e` owns darts `2e` and `2e + 1`; the partner of a dart is obtained by
//! flipping its lowest bit. A loop has both darts owned by the same vertex, so
//! it contributes two to the degree and appears twice in the adjacency list.
//! Parallel edges are distinct edges with their own darts.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Edge = usize;
pub type Dart = usize;

pub const UNREACHED: usize = usize::MAX;

#[inline]
pub fn partner(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> Edge {
    d >> 1
}

#[inline]
pub fn darts_of(e: Edge) -> (Dart, Dart) {
    (2 * e, 2 * e + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiGraph {
    owner: Vec<Vertex>,
    adjacency: Vec<Vec<Dart>>,
}

impl MultiGraph {
    pub fn empty(n: usize) -> Self {
        MultiGraph {
            owner: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    /// One edge per input pair, in input order.
    pub fn build(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = MultiGraph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adjacency.push(Vec::new());
        self.adjacency.len() - 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<Edge> {
        let n = self.vertex_count();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        let e = self.edge_count();
        self.owner.push(u);
        self.owner.push(v);
        self.adjacency[u].push(2 * e);
        self.adjacency[v].push(2 * e + 1);
        Ok(e)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.owner.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.owner.len()
    }

    #[inline]
    pub fn owner(&self, d: Dart) -> Vertex {
        self.owner[d]
    }

    /// Darts at `v`, in insertion order.
    #[inline]
    pub fn darts(&self, v: Vertex) -> &[Dart] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    #[inline]
    pub fn endpoints(&self, e: Edge) -> (Vertex, Vertex) {
        (self.owner[2 * e], self.owner[2 * e + 1])
    }

    #[inline]
    pub fn is_loop(&self, e: Edge) -> bool {
        self.owner[2 * e] == self.owner[2 * e + 1]
    }

    /// Vertex across dart `d`.
    #[inline]
    pub fn across(&self, d: Dart) -> Vertex {
        self.owner[partner(d)]
    }

    /// The endpoint of `e` that is not `v` (or `v` itself for a loop).
    #[inline]
    pub fn other_end(&self, e: Edge, v: Vertex) -> Vertex {
        let (a, b) = self.endpoints(e);
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, Vertex, Vertex)> + '_ {
        (0..self.edge_count()).map(move |e| {
            let (u, v) = self.endpoints(e);
            (e, u, v)
        })
    }

    pub fn edge_list(&self) -> Vec<(Vertex, Vertex)> {
        self.edges().map(|(_, u, v)| (u, v)).collect()
    }

    pub fn sum_of_degrees(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    /// Component index per vertex (numbered by smallest member) and the count.
    pub fn component_ids(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut comp = vec![UNREACHED; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != UNREACHED {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &d in &self.adjacency[v] {
                    let w = self.across(d);
                    if comp[w] == UNREACHED {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let (comp, count) = self.component_ids();
        let mut parts = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            parts[c].push(v);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.component_ids().1 <= 1
    }

    /// BFS distances from `src`, truncated at `max_depth` (unreached = `UNREACHED`).
    pub fn bfs_distances(&self, src: Vertex, max_depth: Option<usize>) -> Vec<usize> {
        let mut dist = vec![UNREACHED; self.vertex_count()];
        let limit = max_depth.unwrap_or(usize::MAX);
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            if dist[v] >= limit {
                continue;
            }
            for &d in &self.adjacency[v] {
                let w = self.across(d);
                if dist[w] == UNREACHED {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Smallest distance between two distinct members of `set`, or `None` when
    /// no two members are connected.
    pub fn min_pairwise_distance(&self, set: &[Vertex]) -> Option<usize> {
        let groups: Vec<Vec<Vertex>> = set.iter().map(|&v| vec![v]).collect();
        self.min_group_distance(&groups)
    }

    /// Smallest distance between vertices of two different groups. Groups are
    /// vertex sets; a vertex listed in two groups gives distance zero.
    pub fn min_group_distance(&self, groups: &[Vec<Vertex>]) -> Option<usize> {
        let n = self.vertex_count();
        let mut dist = vec![UNREACHED; n];
        let mut label = vec![UNREACHED; n];
        let mut queue = VecDeque::new();
        let mut best = UNREACHED;
        for (i, group) in groups.iter().enumerate() {
            for &v in group {
                if label[v] != UNREACHED && label[v] != i {
                    return Some(0);
                }
                if label[v] == UNREACHED {
                    label[v] = i;
                    dist[v] = 0;
                    queue.push_back(v);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            for &d in &self.adjacency[v] {
                let w = self.across(d);
                if label[w] == UNREACHED {
                    label[w] = label[v];
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                } else if label[w] != label[v] {
                    best = best.min(dist[v] + dist[w] + 1);
                }
            }
        }
        (best != UNREACHED).then_some(best)
    }

    /// Subgraph on all vertices keeping the edges with `keep[e]`; also returns
    /// the parent edge id of every kept edge.
    pub fn edge_subgraph(&self, keep: &[bool]) -> (MultiGraph, Vec<Edge>) {
        let mut sub = MultiGraph::empty(self.vertex_count());
        let mut map = Vec::new();
        for (e, u, v) in self.edges() {
            if keep[e] {
                sub.owner.push(u);
                sub.owner.push(v);
                let k = map.len();
                sub.adjacency[u].push(2 * k);
                sub.adjacency[v].push(2 * k + 1);
                map.push(e);
            }
        }
        (sub, map)
    }

    /// Subgraph induced on `vertices` (renumbered in the given order), with
    /// vertex and edge maps back to the parent. Dart parity is preserved.
    pub fn induced(&self, vertices: &[Vertex]) -> (MultiGraph, Vec<Vertex>, Vec<Edge>) {
        let mut local = vec![UNREACHED; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut sub = MultiGraph::empty(vertices.len());
        let mut emap = Vec::new();
        for (e, u, v) in self.edges() {
            if local[u] != UNREACHED && local[v] != UNREACHED {
                let k = emap.len();
                sub.owner.push(local[u]);
                sub.owner.push(local[v]);
                sub.adjacency[local[u]].push(2 * k);
                sub.adjacency[local[v]].push(2 * k + 1);
                emap.push(e);
            }
        }
        (sub, vertices.to_vec(), emap)
    }

    /// Same graph with vertex `v` renamed to `perm[v]`; edge ids are kept.
    pub fn relabel(&self, perm: &[Vertex]) -> MultiGraph {
        let mut g = MultiGraph::empty(self.vertex_count());
        for (_, u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("perm is a permutation");
        }
        g
    }

    /// Vertices of odd degree.
    pub fn odd_vertices(&self) -> Vec<Vertex> {
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) % 2 == 1)
            .collect()
    }

    /// Common degree of a regular graph.
    pub fn regular_degree(&self) -> Result<usize> {
        let expected = if self.vertex_count() == 0 {
            0
        } else {
            self.degree(0)
        };
        match (0..self.vertex_count()).find(|&v| self.degree(v) != expected) {
            Some(v) => Err(Error::NotRegular {
                vertex: v,
                degree: self.degree(v),
                expected,
            }),
            None => Ok(expected),
        }
    }

    /// Edge-list text: a header `n m`, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.vertex_count(), self.edge_count()).unwrap();
        for (_, u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let [n, m] = parse_pair(hline, header)?;
        let mut g = MultiGraph::empty(n);
        for _ in 0..m {
            let (line, text) = lines.next().ok_or(Error::Parse {
                line: hline,
                message: format!("expected {m} edges"),
            })?;
            let [u, v] = parse_pair(line, text)?;
            g.add_edge(u, v).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                message: "trailing data after edge list".into(),
            });
        }
        Ok(g)
    }
}

pub(crate) fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse {
                line,
                message: "expected two integers".into(),
            })?
            .parse()
            .map_err(|e| Error::Parse {
                line,
                message: format!("{e}"),
            })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            message: "expected exactly two integers".into(),
        });
    }
    Ok([a, b])
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn cycle(n: usize) -> MultiGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::build(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> MultiGraph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        MultiGraph::build(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> MultiGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        MultiGraph::build(n, &edges).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        MultiGraph::build(a + b, &edges).unwrap()
    }

    pub fn disjoint_union(parts: &[&MultiGraph]) -> MultiGraph {
        let mut edges = Vec::new();
        let mut offset = 0;
        for g in parts {
            edges.extend(g.edges().map(|(_, u, v)| (u + offset, v + offset)));
            offset += g.vertex_count();
        }
        MultiGraph::build(offset, &edges).unwrap()
    }
}
