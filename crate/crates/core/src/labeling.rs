// SPDX-License-Identifier: Apache-2.0

//! Vertex labelings whose classes are `r`-sparse.

use serde::{Deserialize, Serialize};

use crate::graph::{MultiGraph, Vertex, UNREACHED};

/// Labels in `0..k`; distinct vertices at distance at most `radius` differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseLabeling {
    pub radius: usize,
    pub labels: Vec<usize>,
    pub k: usize,
}

impl SparseLabeling {
    /// Vertices grouped by label.
    pub fn classes(&self) -> Vec<Vec<Vertex>> {
        let mut classes = vec![Vec::new(); self.k];
        for (v, &l) in self.labels.iter().enumerate() {
            classes[l].push(v);
        }
        classes
    }
}

/// Vertices within distance `r` of `v`, excluding `v`, via truncated BFS.
/// `dist` must be all `UNREACHED` on entry and is restored on exit.
fn ball_into(g: &MultiGraph, v: Vertex, r: usize, dist: &mut [usize], out: &mut Vec<Vertex>) {
    out.clear();
    out.push(v);
    dist[v] = 0;
    let mut i = 0;
    while i < out.len() {
        let u = out[i];
        i += 1;
        if dist[u] == r {
            continue;
        }
        for &d in g.darts(u) {
            let w = g.across(d);
            if dist[w] == UNREACHED {
                dist[w] = dist[u] + 1;
                out.push(w);
            }
        }
    }
    for &u in out.iter() {
        dist[u] = UNREACHED;
    }
    out.swap_remove(0);
}

/// Greedy labeling in ascending vertex order: each vertex takes the smallest
/// label unused within distance `r`.
pub fn sparse_labeling(g: &MultiGraph, r: usize) -> SparseLabeling {
    let n = g.vertex_count();
    let mut labels = vec![usize::MAX; n];
    let mut dist = vec![UNREACHED; n];
    let mut near = Vec::new();
    let mut taken: Vec<bool> = Vec::new();
    let mut k = 0;
    for v in 0..n {
        ball_into(g, v, r, &mut dist, &mut near);
        taken.clear();
        taken.resize(near.len() + 1, false);
        for &u in &near {
            if labels[u] < taken.len() {
                taken[labels[u]] = true;
            }
        }
        let l = taken.iter().position(|&t| !t).unwrap();
        labels[v] = l;
        k = k.max(l + 1);
    }
    SparseLabeling {
        radius: r,
        labels,
        k,
    }
}

/// First pair `(u, v)`, `u < v`, of equally labelled vertices within the radius.
pub fn verify_sparse(g: &MultiGraph, l: &SparseLabeling) -> Result<(), (Vertex, Vertex)> {
    let n = g.vertex_count();
    let mut dist = vec![UNREACHED; n];
    let mut near = Vec::new();
    for v in 0..n {
        ball_into(g, v, l.radius, &mut dist, &mut near);
        if let Some(u) = near
            .iter()
            .copied()
            .filter(|&u| u > v && l.labels[u] == l.labels[v])
            .min()
        {
            return Err((v, u));
        }
    }
    Ok(())
}
