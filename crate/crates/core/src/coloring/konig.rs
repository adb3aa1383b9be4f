// SPDX-License-Identifier: Apache-2.0

//! Kőnig colourings: Kempe-chain insertion, and a matching-extraction oracle.

use super::{BipartiteGraph, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{Edge, MultiGraph, Vertex};

/// Proper colouring with `Δ` colours, inserting edges in id order.
pub fn konig_color(b: &BipartiteGraph) -> Result<EdgeColoring> {
    let order: Vec<Edge> = (0..b.graph().edge_count()).collect();
    konig_color_ordered(b, &order)
}

/// As [`konig_color`] with a caller-chosen insertion order (a permutation of
/// the edge ids).
pub fn konig_color_ordered(b: &BipartiteGraph, order: &[Edge]) -> Result<EdgeColoring> {
    let g = b.graph();
    let mut seen = vec![false; g.edge_count()];
    for &e in order {
        if e >= g.edge_count() || std::mem::replace(&mut seen[e], true) {
            return Err(Error::Invariant("insertion order is not a permutation of the edges".into()));
        }
    }
    if order.len() != g.edge_count() {
        return Err(Error::Invariant("insertion order is not a permutation of the edges".into()));
    }
    let palette = g.max_degree() as u32;
    let mut colors = vec![None; g.edge_count()];
    kempe_insert(g, order, palette, &mut colors)?;
    Ok(EdgeColoring { colors, palette })
}

/// Colours only `edges` with colours `1..=palette`; other entries of the
/// result are `None`. The graph must be bipartite.
pub fn konig_color_subset(g: &MultiGraph, edges: &[Edge], palette: u32) -> Result<Vec<Option<u32>>> {
    let mut colors = vec![None; g.edge_count()];
    kempe_insert(g, edges, palette, &mut colors)?;
    Ok(colors)
}

fn kempe_insert(g: &MultiGraph, order: &[Edge], palette: u32, colors: &mut [Option<u32>]) -> Result<()> {
    let k = palette as usize;
    let mut degree = vec![0usize; g.vertex_count()];
    for &e in order {
        let (u, v) = g.endpoints(e);
        if u == v {
            return Err(Error::LoopNotAllowed { edge: e });
        }
        degree[u] += 1;
        degree[v] += 1;
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| degree[v] > k) {
        return Err(Error::DegreeTooLarge {
            vertex: v,
            degree: degree[v],
            max: k,
        });
    }
    // at[v·k + c] = edge of colour c + 1 at v
    let mut at: Vec<Option<Edge>> = vec![None; g.vertex_count() * k];
    let free = |at: &[Option<Edge>], v: Vertex| (0..k).find(|&c| at[v * k + c].is_none()).unwrap();
    let mut path: Vec<Edge> = Vec::new();
    for &e in order {
        let (u, v) = g.endpoints(e);
        let a = free(&at, u);
        if at[v * k + a].is_some() {
            let b = free(&at, v);
            // a/b chain from v; in a bipartite graph it cannot reach u
            path.clear();
            let (mut cur, mut col) = (v, a);
            while let Some(f) = at[cur * k + col] {
                path.push(f);
                cur = g.other_end(f, cur);
                col = if col == a { b } else { a };
            }
            for &f in &path {
                let (x, y) = g.endpoints(f);
                let c = colors[f].unwrap() as usize - 1;
                at[x * k + c] = None;
                at[y * k + c] = None;
            }
            for &f in &path {
                let (x, y) = g.endpoints(f);
                let c = if colors[f].unwrap() as usize - 1 == a { b } else { a };
                colors[f] = Some(c as u32 + 1);
                at[x * k + c] = Some(f);
                at[y * k + c] = Some(f);
            }
            if at[u * k + a].is_some() {
                return Err(Error::NotBipartite { edge: e });
            }
        }
        colors[e] = Some(a as u32 + 1);
        at[u * k + a] = Some(e);
        at[v * k + a] = Some(e);
    }
    Ok(())
}

/// Maximum matching from the `left` vertices over `allowed` edges
/// (Hopcroft–Karp). Returns the matched edge of every vertex.
pub fn max_matching(g: &MultiGraph, left: &[Vertex], allowed: &[bool]) -> Vec<Option<Edge>> {
    const INF: usize = usize::MAX;
    let n = g.vertex_count();
    let mut mate: Vec<Option<Edge>> = vec![None; n];
    let mut dist = vec![INF; n];
    let mut cursor = vec![0usize; n];
    loop {
        dist.iter_mut().for_each(|d| *d = INF);
        let mut queue: Vec<Vertex> = left.iter().copied().filter(|&u| mate[u].is_none()).collect();
        for &u in &queue {
            dist[u] = 0;
        }
        let mut found = false;
        let mut i = 0;
        while i < queue.len() {
            let u = queue[i];
            i += 1;
            for &d in g.darts(u) {
                let e = crate::graph::edge_of(d);
                if !allowed[e] {
                    continue;
                }
                let w = g.across(d);
                match mate[w] {
                    None => found = true,
                    Some(f) => {
                        let u2 = g.other_end(f, w);
                        if dist[u2] == INF {
                            dist[u2] = dist[u] + 1;
                            queue.push(u2);
                        }
                    }
                }
            }
        }
        if !found {
            return mate;
        }
        cursor.iter_mut().for_each(|c| *c = 0);
        for &u in left {
            if mate[u].is_none() {
                augment(g, u, allowed, &mut mate, &mut dist, &mut cursor);
            }
        }
    }
}

fn augment(
    g: &MultiGraph,
    u: Vertex,
    allowed: &[bool],
    mate: &mut [Option<Edge>],
    dist: &mut [usize],
    cursor: &mut [usize],
) -> bool {
    while cursor[u] < g.degree(u) {
        let d = g.darts(u)[cursor[u]];
        cursor[u] += 1;
        let e = crate::graph::edge_of(d);
        if !allowed[e] {
            continue;
        }
        let w = g.across(d);
        let ok = match mate[w] {
            None => true,
            Some(f) => {
                let u2 = g.other_end(f, w);
                dist[u2] == dist[u].wrapping_add(1) && augment(g, u2, allowed, mate, dist, cursor)
            }
        };
        if ok {
            mate[u] = Some(e);
            mate[w] = Some(e);
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// Oracle for regular inputs: extract `Δ` perfect matchings one after another.
pub fn konig_color_by_matchings(b: &BipartiteGraph) -> Result<EdgeColoring> {
    let g = b.graph();
    let delta = g.regular_degree()?;
    let left: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| b.side(v) == 1).collect();
    let mut colors = vec![None; g.edge_count()];
    let mut allowed = vec![true; g.edge_count()];
    for c in 1..=delta as u32 {
        let mate = max_matching(g, &left, &allowed);
        if let Some(&v) = left.iter().find(|&&v| mate[v].is_none()) {
            return Err(Error::Invariant(format!(
                "no perfect matching in round {c}: vertex {v} unmatched"
            )));
        }
        for &v in &left {
            let e = mate[v].unwrap();
            colors[e] = Some(c);
            allowed[e] = false;
        }
    }
    Ok(EdgeColoring {
        colors,
        palette: delta as u32,
    })
}
