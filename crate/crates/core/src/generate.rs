// SPDX-License-Identifier: Apache-2.0

//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::rng;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TreeShape {
    /// Root has degree `2·h[0]`; a vertex at depth `k ≥ 1` has degree `2·h[k]`;
    /// vertices at depth `h.len()` are leaves.
    Spherical(Vec<usize>),
    /// Random tree with up to `internal` internal vertices, each of degree
    /// `2h` with `1 ≤ h ≤ max_half_degree`; all other vertices are leaves.
    Random {
        internal: usize,
        max_half_degree: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphKind {
    /// Uniform pairing of `degree` stubs per vertex; loops and parallel edges allowed.
    ConfigurationRegular { degree: usize, n: usize },
    /// Vertices `0..n` on side 1 and `n..2n` on side 2, each of degree `d`.
    BipartiteRegular { d: usize, n_per_side: usize },
    EvenTreeWindow(TreeShape),
    /// Even cycle carrying path-chords; chord endpoints are the only degree-3
    /// vertices and are pairwise at distance at least `chord_gap`.
    SparseChordCycle { cycle_len: usize, chord_gap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub kind: GraphKind,
    pub seed: u64,
}

impl GraphSpec {
    pub fn new(kind: GraphKind, seed: u64) -> Self {
        GraphSpec { kind, seed }
    }
}

pub fn generate(spec: &GraphSpec) -> Result<MultiGraph> {
    let mut rng = rng::seeded(spec.seed);
    match &spec.kind {
        &GraphKind::ConfigurationRegular { degree, n } => configuration_regular(degree, n, &mut rng),
        &GraphKind::BipartiteRegular { d, n_per_side } => bipartite_regular(d, n_per_side, &mut rng),
        GraphKind::EvenTreeWindow(shape) => even_tree(shape, &mut rng),
        &GraphKind::SparseChordCycle {
            cycle_len,
            chord_gap,
        } => sparse_chord_cycle(cycle_len, chord_gap, &mut rng),
    }
}

fn configuration_regular(degree: usize, n: usize, rng: &mut rng::Rng) -> Result<MultiGraph> {
    if (degree * n) % 2 == 1 {
        return Err(Error::InfeasibleSpec(format!(
            "degree·n = {degree}·{n} is odd"
        )));
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    stubs.shuffle(rng);
    let edges: Vec<_> = stubs.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    MultiGraph::build(n, &edges)
}

fn bipartite_regular(d: usize, n: usize, rng: &mut rng::Rng) -> Result<MultiGraph> {
    let mut right: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(n + v, d)).collect();
    right.shuffle(rng);
    let edges: Vec<_> = (0..n * d).map(|i| (i / d, right[i])).collect();
    MultiGraph::build(2 * n, &edges)
}

fn even_tree(shape: &TreeShape, rng: &mut rng::Rng) -> Result<MultiGraph> {
    let mut g = MultiGraph::empty(1);
    match shape {
        TreeShape::Spherical(halves) => {
            if halves.contains(&0) {
                return Err(Error::InfeasibleSpec("half-degrees must be positive".into()));
            }
            let mut frontier = vec![0];
            for (depth, &h) in halves.iter().enumerate() {
                let children = if depth == 0 { 2 * h } else { 2 * h - 1 };
                let mut next = Vec::new();
                for &v in &frontier {
                    for _ in 0..children {
                        let c = g.add_vertex();
                        g.add_edge(v, c)?;
                        next.push(c);
                    }
                }
                frontier = next;
            }
        }
        &TreeShape::Random {
            internal,
            max_half_degree,
        } => {
            if internal == 0 || max_half_degree == 0 {
                return Err(Error::InfeasibleSpec(
                    "random tree needs at least one internal vertex".into(),
                ));
            }
            let mut made = 1;
            let mut queue = std::collections::VecDeque::from([(0usize, true)]);
            while let Some((v, is_root)) = queue.pop_front() {
                let h = rng.gen_range(1..=max_half_degree);
                let children = if is_root { 2 * h } else { 2 * h - 1 };
                for _ in 0..children {
                    let c = g.add_vertex();
                    g.add_edge(v, c)?;
                    if made < internal && rng.gen_bool(0.5) {
                        made += 1;
                        queue.push_back((c, false));
                    }
                }
            }
        }
    }
    Ok(g)
}

fn sparse_chord_cycle(cycle_len: usize, gap: usize, rng: &mut rng::Rng) -> Result<MultiGraph> {
    if gap < 3 {
        return Err(Error::InfeasibleSpec(format!("chord_gap {gap} < 3")));
    }
    if cycle_len % 2 == 1 || cycle_len < 2 * gap {
        return Err(Error::InfeasibleSpec(format!(
            "cycle_len {cycle_len} must be even and at least 2·chord_gap"
        )));
    }
    let mut g = MultiGraph::empty(cycle_len);
    for i in 0..cycle_len {
        g.add_edge(i, (i + 1) % cycle_len)?;
    }
    // Endpoints spaced at least `gap` apart, including across the wrap.
    let mut ends = Vec::new();
    let mut p = 0;
    while p + gap <= cycle_len - gap {
        ends.push(p);
        p += gap + rng.gen_range(0..=gap / 2);
    }
    if ends.len() % 2 == 1 {
        ends.pop();
    }
    ends.shuffle(rng);
    for pair in ends.chunks_exact(2) {
        let (a, b) = (pair[0], pair[1]);
        // Path length with the parity of the cycle distance keeps the graph bipartite.
        let parity = (a + b) % 2;
        let mut len = if gap % 2 == parity { gap } else { gap + 1 };
        len += 2 * rng.gen_range(0..=1usize);
        let mut prev = a;
        for _ in 0..len - 1 {
            let w = g.add_vertex();
            g.add_edge(prev, w)?;
            prev = w;
        }
        g.add_edge(prev, b)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::UNREACHED;

    #[test]
    fn configuration_model_is_regular() {
        let g = generate(&GraphSpec::new(
            GraphKind::ConfigurationRegular { degree: 4, n: 100 },
            7,
        ))
        .unwrap();
        assert_eq!(g.vertex_count(), 100);
        assert_eq!(g.edge_count(), 200);
        assert_eq!(g.regular_degree().unwrap(), 4);
    }

    #[test]
    fn odd_stub_count_is_infeasible() {
        let spec = GraphSpec::new(GraphKind::ConfigurationRegular { degree: 3, n: 5 }, 1);
        assert!(matches!(generate(&spec), Err(Error::InfeasibleSpec(_))));
    }

    #[test]
    fn bipartite_regular_degrees() {
        let g = generate(&GraphSpec::new(
            GraphKind::BipartiteRegular { d: 3, n_per_side: 5 },
            1,
        ))
        .unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert!(g.edges().all(|(_, u, v)| (u < 5) != (v < 5)));
    }

    #[test]
    fn generation_is_pure_in_the_seed() {
        let spec = GraphSpec::new(GraphKind::ConfigurationRegular { degree: 6, n: 50 }, 99);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = GraphSpec::new(GraphKind::ConfigurationRegular { degree: 6, n: 50 }, 98);
        assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn spherical_tree_shape() {
        let g = generate(&GraphSpec::new(
            GraphKind::EvenTreeWindow(TreeShape::Spherical(vec![2, 1])),
            0,
        ))
        .unwrap();
        // root with 4 children, each with one child
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.degree(0), 4);
        assert!(g.is_connected());
        assert_eq!(g.edge_count(), g.vertex_count() - 1);
    }

    #[test]
    fn chord_cycle_degree_three_vertices_are_far_apart() {
        for seed in 0..5 {
            let g = generate(&GraphSpec::new(
                GraphKind::SparseChordCycle {
                    cycle_len: 60,
                    chord_gap: 10,
                },
                seed,
            ))
            .unwrap();
            let heavy: Vec<_> = (0..g.vertex_count()).filter(|&v| g.degree(v) == 3).collect();
            assert!(heavy.len() >= 2);
            assert!((0..g.vertex_count()).all(|v| matches!(g.degree(v), 2 | 3)));
            // all-pairs BFS
            for &a in &heavy {
                let dist = g.bfs_distances(a, None);
                for &b in &heavy {
                    if a != b {
                        assert!(dist[b] != UNREACHED && dist[b] >= 10, "{a}-{b}: {}", dist[b]);
                    }
                }
            }
            // bipartite: BFS 2-coloring succeeds
            let dist = g.bfs_distances(0, None);
            assert!(g.edges().all(|(_, u, v)| dist[u] % 2 != dist[v] % 2));
        }
    }
}
