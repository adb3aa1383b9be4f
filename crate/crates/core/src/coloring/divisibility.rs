// SPDX-License-Identifier: Apache-2.0

//! Degree-count checks on finite components with degrees `d - 1` and `d`.

use serde::Serialize;

use super::BipartiteGraph;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DivisibilityVerdict {
    /// Number of degree-`d` vertices.
    pub heavy: usize,
    /// False only for `d >= 3` with exactly one degree-`d` vertex.
    pub holds: bool,
}

/// Counts degree-`d` vertices of a connected component whose degrees are
/// `d - 1` or `d`. Edge counting on the two sides rules out a single one
/// when `d >= 3`.
pub fn divisibility_witness(b: &BipartiteGraph, d: usize) -> Result<DivisibilityVerdict> {
    let g = b.graph();
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let allowed = if d == 0 { vec![0] } else { vec![d - 1, d] };
    if let Some(v) = (0..g.vertex_count()).find(|&v| !allowed.contains(&g.degree(v))) {
        return Err(Error::DegreeProfile {
            vertex: v,
            degree: g.degree(v),
            allowed,
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let heavy = (0..g.vertex_count()).filter(|&v| g.degree(v) == d).count();
    Ok(DivisibilityVerdict {
        heavy,
        holds: d < 3 || heavy != 1,
    })
}

/// Visits every connected simple bipartite graph with all degrees in
/// `{2, 3}` and at most `max_vertices` vertices, for every split into sides
/// of sizes `a` (vertices `0..a`) and `b`. Side-1 neighbourhoods are listed
/// in non-decreasing order, so graphs differing only by a permutation of
/// side 1 are visited once. Returns the number of graphs visited.
pub fn enumerate_bipartite_23(max_vertices: usize, mut visit: impl FnMut(&BipartiteGraph)) -> usize {
    let mut count = 0;
    for total in 4..=max_vertices {
        for a in 2..=total - 2 {
            let b = total - a;
            let choices: Vec<u32> = (0u32..1 << b)
                .filter(|m| matches!(m.count_ones(), 2 | 3))
                .collect();
            let mut picked = Vec::with_capacity(a);
            let mut load = vec![0u8; b];
            extend(a, b, &choices, 0, &mut picked, &mut load, &mut |sets: &[u32]| {
                let edges: Vec<(Vertex, Vertex)> = sets
                    .iter()
                    .enumerate()
                    .flat_map(|(u, &m)| (0..b).filter(move |&j| m >> j & 1 == 1).map(move |j| (u, a + j)))
                    .collect();
                let g = MultiGraph::build(a + b, &edges).expect("vertex ids in range");
                if !g.is_connected() {
                    return;
                }
                let side = (0..a + b).map(|v| if v < a { 1 } else { 2 }).collect();
                let bg = BipartiteGraph::new(g, side).expect("sides are consistent");
                count += 1;
                visit(&bg);
            });
        }
    }
    count
}

fn extend(
    a: usize,
    b: usize,
    choices: &[u32],
    from: usize,
    picked: &mut Vec<u32>,
    load: &mut [u8],
    emit: &mut dyn FnMut(&[u32]),
) {
    if picked.len() == a {
        if load.iter().all(|&l| matches!(l, 2 | 3)) {
            emit(picked);
        }
        return;
    }
    // remaining side-1 vertices can add at most 3 to each side-2 vertex
    let left = (a - picked.len()) as u8;
    if load.iter().any(|&l| l + 3 * left < 2) {
        return;
    }
    for (i, &m) in choices.iter().enumerate().skip(from) {
        if (0..b).any(|j| m >> j & 1 == 1 && load[j] == 3) {
            continue;
        }
        for j in 0..b {
            load[j] += (m >> j & 1) as u8;
        }
        picked.push(m);
        extend(a, b, choices, i, picked, load, emit);
        picked.pop();
        for j in 0..b {
            load[j] -= (m >> j & 1) as u8;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn even_cycle_has_no_heavy_vertices() {
        let b = BipartiteGraph::from_graph(cycle(8)).unwrap();
        let v = divisibility_witness(&b, 3).unwrap();
        assert_eq!(v.heavy, 0);
        assert!(v.holds);
    }

    #[test]
    fn theta_graph_has_two() {
        // two degree-3 vertices joined by three paths of length 3
        let mut g = MultiGraph::empty(2);
        for _ in 0..3 {
            let x = g.add_vertex();
            let y = g.add_vertex();
            g.add_edge(0, x).unwrap();
            g.add_edge(x, y).unwrap();
            g.add_edge(y, 1).unwrap();
        }
        let b = BipartiteGraph::from_graph(g).unwrap();
        assert_eq!(divisibility_witness(&b, 3).unwrap().heavy, 2);
    }

    #[test]
    fn profile_and_connectivity_are_checked() {
        let b = BipartiteGraph::from_graph(path(3)).unwrap();
        assert!(matches!(divisibility_witness(&b, 3), Err(Error::DegreeProfile { .. })));
        let two = BipartiteGraph::from_graph(disjoint_union(&[&cycle(4), &cycle(4)])).unwrap();
        assert!(matches!(divisibility_witness(&two, 3), Err(Error::Disconnected)));
    }

    #[test]
    fn enumeration_finds_known_graphs() {
        // on 4 vertices only C_4; on 5 only K_{2,3}
        let mut sizes = Vec::new();
        let n = enumerate_bipartite_23(5, |b| sizes.push((b.graph().vertex_count(), b.graph().edge_count())));
        assert_eq!(n, sizes.len());
        assert!(sizes.contains(&(4, 4)));
        assert!(sizes.contains(&(5, 6)));
        assert!(sizes.iter().all(|&(v, _)| v == 4 || v == 5));
    }

    #[test]
    fn exhaustive_up_to_eight_vertices() {
        let mut bad = 0;
        let n = enumerate_bipartite_23(8, |b| {
            if !divisibility_witness(b, 3).unwrap().holds {
                bad += 1;
            }
        });
        assert!(n > 0);
        assert_eq!(bad, 0);
    }
}
