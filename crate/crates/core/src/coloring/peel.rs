// SPDX-License-Identifier: Apache-2.0

//! Matchings covering every maximum-degree vertex.

use serde::Serialize;

use super::konig::max_matching;
use super::BipartiteGraph;
use crate::error::{Error, Result};
use crate::graph::{Edge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Peel {
    /// Edges of the matching, ascending.
    pub matching: Vec<Edge>,
    #[serde(skip)]
    pub residual: BipartiteGraph,
    /// Original id of each residual edge.
    #[serde(skip)]
    pub edge_map: Vec<Edge>,
    pub max_degree_before: usize,
    pub max_degree_after: usize,
    /// Largest `r` such that the residual's maximum-degree vertices are
    /// pairwise more than `r` apart; `None` with fewer than two of them.
    pub measured_sparsity: Option<usize>,
}

/// Matching covering all maximum-degree vertices on both sides, combined from
/// one-sided matchings by swapping along alternating paths.
pub fn peel_matching(b: &BipartiteGraph) -> Result<Peel> {
    let g = b.graph();
    let delta = g.max_degree();
    if delta == 0 {
        return Err(Error::EdgelessGraph);
    }
    let top: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| g.degree(v) == delta).collect();
    let ones: Vec<Vertex> = top.iter().copied().filter(|&v| b.side(v) == 1).collect();
    let twos: Vec<Vertex> = top.iter().copied().filter(|&v| b.side(v) == 2).collect();
    let all = vec![true; g.edge_count()];
    let m1 = max_matching(g, &ones, &all);
    let m2 = max_matching(g, &twos, &all);
    for &v in &top {
        let m = if b.side(v) == 1 { &m1 } else { &m2 };
        if m[v].is_none() {
            return Err(Error::Invariant(format!(
                "maximum-degree vertex {v} left unmatched in a bipartite graph"
            )));
        }
    }
    // Start from m1 (covers side-1 targets). For each uncovered side-2 target
    // follow its m2 edge; displace the side-1 partner's old edge and continue
    // from the freed side-2 vertex while it is itself a target.
    let mut mate = m1;
    let is_top: Vec<bool> = (0..g.vertex_count()).map(|v| g.degree(v) == delta).collect();
    for &start in &twos {
        let mut y = start;
        let mut steps = 0;
        while mate[y].is_none() {
            steps += 1;
            if steps > g.vertex_count() {
                return Err(Error::Invariant("alternating path did not terminate".into()));
            }
            let e = m2[y].unwrap();
            let x = g.other_end(e, y);
            let freed = mate[x].map(|old| g.other_end(old, x));
            if let Some(y2) = freed {
                mate[y2] = None;
            }
            mate[x] = Some(e);
            mate[y] = Some(e);
            match freed {
                Some(y2) if is_top[y2] => y = y2,
                _ => break,
            }
        }
    }
    let mut in_matching = vec![false; g.edge_count()];
    for e in mate.iter().flatten() {
        in_matching[*e] = true;
    }
    let matching: Vec<Edge> = (0..g.edge_count()).filter(|&e| in_matching[e]).collect();
    if let Some(&v) = top.iter().find(|&&v| mate[v].is_none()) {
        return Err(Error::Invariant(format!("vertex {v} not covered after combining")));
    }
    let keep: Vec<bool> = in_matching.iter().map(|&m| !m).collect();
    let (residual, edge_map) = b.edge_subgraph(&keep);
    let after = residual.graph().max_degree();
    let heavy: Vec<Vertex> = (0..residual.graph().vertex_count())
        .filter(|&v| after > 0 && residual.graph().degree(v) == after)
        .collect();
    let measured_sparsity = residual.graph().min_pairwise_distance(&heavy).map(|d| d.saturating_sub(1));
    Ok(Peel {
        matching,
        residual,
        edge_map,
        max_degree_before: delta,
        max_degree_after: after,
        measured_sparsity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GraphKind, GraphSpec};
    use crate::graph::fixtures::*;
    use crate::graph::MultiGraph;
    use proptest::prelude::*;

    fn covers_top(b: &BipartiteGraph, p: &Peel) -> bool {
        let g = b.graph();
        let delta = g.max_degree();
        let mut hit = vec![0; g.vertex_count()];
        for &e in &p.matching {
            let (u, v) = g.endpoints(e);
            hit[u] += 1;
            hit[v] += 1;
        }
        hit.iter().all(|&h| h <= 1) && (0..g.vertex_count()).all(|v| g.degree(v) < delta || hit[v] == 1)
    }

    #[test]
    fn regular_graphs_get_perfect_matchings() {
        let g = generate(&GraphSpec::new(GraphKind::BipartiteRegular { d: 4, n_per_side: 50 }, 2)).unwrap();
        let b = BipartiteGraph::from_graph(g).unwrap();
        let p = peel_matching(&b).unwrap();
        assert_eq!(p.matching.len(), 50);
        assert_eq!(p.residual.graph().regular_degree().unwrap(), 3);
    }

    #[test]
    fn single_edge() {
        let b = BipartiteGraph::from_graph(path(2)).unwrap();
        let p = peel_matching(&b).unwrap();
        assert_eq!(p.matching, vec![0]);
        assert_eq!(p.residual.graph().max_degree(), 0);
    }

    #[test]
    fn two_heavy_vertices_among_lighter_ones() {
        // K_{3,3} minus a perfect matching is C_6; add two far-apart pendant
        // edges to make two degree-3 vertices.
        let mut g = cycle(12);
        let a = g.add_vertex();
        let c = g.add_vertex();
        g.add_edge(0, a).unwrap();
        g.add_edge(6, c).unwrap();
        let b = BipartiteGraph::from_graph(g).unwrap();
        let p = peel_matching(&b).unwrap();
        assert!(covers_top(&b, &p));
        assert_eq!(p.max_degree_after, 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn covers_every_maximum_degree_vertex(
            a in 1usize..25, bsz in 1usize..25, m in 1usize..120, seed in any::<u64>()
        ) {
            use rand::Rng;
            let mut rng = crate::rng::seeded(seed);
            let edges: Vec<_> = (0..m).map(|_| (rng.gen_range(0..a), a + rng.gen_range(0..bsz))).collect();
            let b = BipartiteGraph::from_graph(MultiGraph::build(a + bsz, &edges).unwrap()).unwrap();
            let p = peel_matching(&b).unwrap();
            prop_assert!(covers_top(&b, &p));
            prop_assert_eq!(p.max_degree_after, p.max_degree_before - 1);
        }
    }
}
