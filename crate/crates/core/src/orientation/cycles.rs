// SPDX-License-Identifier: Apache-2.0

//! Random balanced orientation by cycle elimination.
//!
//! Stages run over increasing cycle length. Within a stage every still
//! undirected simple cycle of the current length receives a fresh random
//! label; cycles beating all same-length cycles they share an edge with are
//! oriented in a random direction. Steps repeat until no undirected cycle of
//! that length is left. Stages with no cycles are skipped by jumping straight
//! to the girth of the undirected remainder. What remains is a forest with
//! even degrees, oriented tree by tree from a random root.

use std::collections::BTreeSet;

use rand::Rng as _;

use super::tree::orient_tree_from;
use super::Orientation;
use crate::error::{Error, Result};
use crate::graph::{edge_of, partner, Dart, MultiGraph, Vertex, UNREACHED};
use crate::rng::{self, Rng, WorkBudget};

pub fn canonical_random_orientation(
    g: &MultiGraph,
    seed: u64,
    budget: WorkBudget,
) -> Result<Orientation> {
    let odd = g.odd_vertices();
    if !odd.is_empty() {
        return Err(Error::OddDegree { vertices: odd });
    }
    orient(g, &vec![false; g.vertex_count()], seed, budget)
}

/// Like [`canonical_random_orientation`], but vertices flagged in `boundary`
/// carry no balance constraint and may have any degree. Used for finite
/// windows of larger graphs.
pub fn canonical_random_orientation_bounded(
    g: &MultiGraph,
    boundary: &[bool],
    seed: u64,
    budget: WorkBudget,
) -> Result<Orientation> {
    if boundary.len() != g.vertex_count() {
        return Err(Error::InvalidWindow(format!(
            "boundary mask has {} entries for {} vertices",
            boundary.len(),
            g.vertex_count()
        )));
    }
    let odd: Vec<Vertex> = g
        .odd_vertices()
        .into_iter()
        .filter(|&v| !boundary[v])
        .collect();
    if !odd.is_empty() {
        return Err(Error::OddDegree { vertices: odd });
    }
    orient(g, boundary, seed, budget)
}

fn orient(g: &MultiGraph, boundary: &[bool], seed: u64, budget: WorkBudget) -> Result<Orientation> {
    let m = g.edge_count();
    let mut rng = rng::seeded(seed);
    let mut head = vec![usize::MAX; m];
    // loops are balanced whichever way they point
    let mut active: Vec<bool> = (0..m).map(|e| !g.is_loop(e)).collect();
    for e in 0..m {
        if g.is_loop(e) {
            head[e] = 2 * e + 1;
        }
    }
    let mut work = 0u64;
    while let Some(len) = girth(g, &active) {
        let cycles = cycles_of_length(g, &active, len, budget, &mut work)?;
        eliminate_stage(g, &cycles, &mut active, &mut head, &mut rng)?;
    }
    orient_forest(g, &active, boundary, &mut head, &mut rng);
    Orientation::from_heads(head)
}

/// Length of the shortest cycle among active edges, parallel pairs counting
/// as 2-cycles.
fn girth(g: &MultiGraph, active: &[bool]) -> Option<usize> {
    let n = g.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![UNREACHED; n];
    let mut via = vec![usize::MAX; n];
    let mut queue = Vec::new();
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = UNREACHED);
        dist[s] = 0;
        queue.clear();
        queue.push(s);
        let mut i = 0;
        while i < queue.len() {
            let u = queue[i];
            i += 1;
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &d in g.darts(u) {
                let e = edge_of(d);
                if !active[e] || e == via[u] {
                    continue;
                }
                let w = g.across(d);
                if dist[w] == UNREACHED {
                    dist[w] = dist[u] + 1;
                    via[w] = e;
                    queue.push(w);
                } else {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
        via[s] = usize::MAX;
        for &v in &queue {
            via[v] = usize::MAX;
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Simple cycles of exactly `len` active edges, each as the dart sequence of
/// one traversal starting at its smallest vertex.
fn cycles_of_length(
    g: &MultiGraph,
    active: &[bool],
    len: usize,
    budget: WorkBudget,
    work: &mut u64,
) -> Result<Vec<Vec<Dart>>> {
    let n = g.vertex_count();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        // distances back to s inside the vertices ≥ s bound the search
        let dist = bfs_above(g, active, s);
        let mut path: Vec<Dart> = Vec::new();
        // explicit DFS: (vertex, next dart index)
        let mut stack: Vec<(Vertex, usize)> = vec![(s, 0)];
        on_path[s] = true;
        while let Some(&(v, next)) = stack.last() {
            *work += 1;
            if *work > budget.0 {
                return Err(Error::BudgetExceeded {
                    what: "cycle enumeration",
                    budget: budget.0,
                });
            }
            let darts = g.darts(v);
            if next == darts.len() {
                stack.pop();
                on_path[v] = false;
                path.pop();
                continue;
            }
            let d = darts[next];
            stack.last_mut().unwrap().1 += 1;
            let e = edge_of(d);
            if !active[e] || path.last().is_some_and(|&p| edge_of(p) == e) {
                continue;
            }
            let w = g.across(d);
            let depth = path.len() + 1;
            if w == s {
                if depth == len {
                    let mut key: Vec<usize> = path.iter().map(|&p| edge_of(p)).collect();
                    key.push(e);
                    key.sort_unstable();
                    if seen.insert(key) {
                        let mut cyc = path.clone();
                        cyc.push(d);
                        out.push(cyc);
                    }
                }
                continue;
            }
            if w < s || on_path[w] || depth >= len || dist[w] == UNREACHED || depth + dist[w] > len {
                continue;
            }
            on_path[w] = true;
            path.push(d);
            stack.push((w, 0));
        }
    }
    Ok(out)
}

fn bfs_above(g: &MultiGraph, active: &[bool], s: Vertex) -> Vec<usize> {
    let mut dist = vec![UNREACHED; g.vertex_count()];
    dist[s] = 0;
    let mut queue = vec![s];
    let mut i = 0;
    while i < queue.len() {
        let u = queue[i];
        i += 1;
        for &d in g.darts(u) {
            let w = g.across(d);
            if active[edge_of(d)] && w >= s && dist[w] == UNREACHED {
                dist[w] = dist[u] + 1;
                queue.push(w);
            }
        }
    }
    dist
}

fn eliminate_stage(
    g: &MultiGraph,
    cycles: &[Vec<Dart>],
    active: &mut [bool],
    head: &mut [Dart],
    rng: &mut Rng,
) -> Result<()> {
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); g.edge_count()];
    for (c, cyc) in cycles.iter().enumerate() {
        for &d in cyc {
            through[edge_of(d)].push(c);
        }
    }
    let mut alive = vec![true; cycles.len()];
    let mut remaining = cycles.len();
    let mut label = vec![0u64; cycles.len()];
    // every step orients at least the top-labelled cycle
    let cap = cycles.len() + 1;
    let mut steps = 0;
    while remaining > 0 {
        steps += 1;
        if steps > cap {
            return Err(Error::Invariant(format!(
                "cycle stage did not finish within {cap} steps"
            )));
        }
        for c in 0..cycles.len() {
            if alive[c] {
                label[c] = rng.gen();
            }
        }
        let beats = |a: usize, b: usize| (label[a], a) > (label[b], b);
        let winners: Vec<usize> = (0..cycles.len())
            .filter(|&c| {
                alive[c]
                    && cycles[c].iter().all(|&d| {
                        through[edge_of(d)]
                            .iter()
                            .all(|&o| o == c || !alive[o] || beats(c, o))
                    })
            })
            .collect();
        for c in winners {
            let forward = rng.gen_bool(0.5);
            for &d in &cycles[c] {
                let e = edge_of(d);
                head[e] = if forward { partner(d) } else { d };
                active[e] = false;
            }
        }
        for c in 0..cycles.len() {
            if alive[c] && cycles[c].iter().any(|&d| !active[edge_of(d)]) {
                alive[c] = false;
                remaining -= 1;
            }
        }
    }
    Ok(())
}

fn orient_forest(
    g: &MultiGraph,
    active: &[bool],
    boundary: &[bool],
    head: &mut [Dart],
    rng: &mut Rng,
) {
    let internal: Vec<bool> = boundary.iter().map(|&b| !b).collect();
    let (forest, _) = g.edge_subgraph(active);
    for comp in forest.components() {
        if comp.len() < 2 {
            continue;
        }
        let roots: Vec<Vertex> = comp.iter().copied().filter(|&v| internal[v]).collect();
        let root = if roots.is_empty() {
            comp[rng.gen_range(0..comp.len())]
        } else {
            roots[rng.gen_range(0..roots.len())]
        };
        orient_tree_from(g, active, &internal, root, head, rng);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GraphKind, GraphSpec};
    use crate::graph::fixtures::*;

    fn count_cycles(g: &MultiGraph, len: usize) -> usize {
        let active = vec![true; g.edge_count()];
        cycles_of_length(g, &active, len, WorkBudget::DEFAULT, &mut 0)
            .unwrap()
            .len()
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(count_cycles(&complete(4), 3), 4);
        assert_eq!(count_cycles(&complete(4), 4), 3);
        assert_eq!(count_cycles(&complete(5), 5), 12);
        assert_eq!(count_cycles(&complete_bipartite(3, 3), 4), 9);
        let doubled = MultiGraph::build(2, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(count_cycles(&doubled, 2), 3);
    }

    #[test]
    fn girths() {
        let all = |g: &MultiGraph| vec![true; g.edge_count()];
        assert_eq!(girth(&cycle(7), &all(&cycle(7))), Some(7));
        assert_eq!(girth(&path(5), &all(&path(5))), None);
        assert_eq!(girth(&complete_bipartite(2, 3), &all(&complete_bipartite(2, 3))), Some(4));
        let par = MultiGraph::build(3, &[(0, 1), (1, 2), (2, 0), (1, 2)]).unwrap();
        assert_eq!(girth(&par, &all(&par)), Some(2));
    }

    #[test]
    fn four_cycle_orientations_are_rotations() {
        let g = cycle(4);
        let mut forward = 0;
        let trials = 2000;
        for seed in 0..trials {
            let o = canonical_random_orientation(&g, seed, WorkBudget::DEFAULT).unwrap();
            assert!(o.is_balanced(&g));
            if o.head(&g, 0) == 1 {
                forward += 1;
            }
        }
        let p = forward as f64 / trials as f64;
        assert!((p - 0.5).abs() < 0.05, "{p}");
    }

    #[test]
    fn loop_is_balanced() {
        let g = MultiGraph::build(2, &[(0, 0), (0, 1), (1, 0)]).unwrap();
        let o = canonical_random_orientation(&g, 3, WorkBudget::DEFAULT).unwrap();
        assert!(o.is_balanced(&g));
    }

    #[test]
    fn odd_degree_rejected() {
        assert!(matches!(
            canonical_random_orientation(&path(3), 0, WorkBudget::DEFAULT),
            Err(Error::OddDegree { .. })
        ));
    }

    #[test]
    fn random_regular_graphs() {
        for seed in 0..60 {
            let degree = 2 * (1 + seed as usize % 3);
            let n = 4 + seed as usize % 25;
            let g = generate(&GraphSpec::new(GraphKind::ConfigurationRegular { degree, n }, seed)).unwrap();
            let o = canonical_random_orientation(&g, seed, WorkBudget::DEFAULT).unwrap();
            assert!(o.is_balanced(&g), "seed {seed}");
        }
    }

    #[test]
    fn bounded_variant_on_tree_window() {
        let g = generate(&GraphSpec::new(
            GraphKind::EvenTreeWindow(crate::generate::TreeShape::Spherical(vec![2, 2])),
            0,
        ))
        .unwrap();
        let boundary: Vec<bool> = (0..g.vertex_count()).map(|v| g.degree(v) == 1).collect();
        let o = canonical_random_orientation_bounded(&g, &boundary, 5, WorkBudget::DEFAULT).unwrap();
        let deg = o.degrees(&g);
        for v in 0..g.vertex_count() {
            if !boundary[v] {
                assert_eq!(deg[v].0, deg[v].1);
            }
        }
    }
}
