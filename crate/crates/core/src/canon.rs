// SPDX-License-Identifier: Apache-2.0

//! Canonical forms of small vertex- and edge-coloured multigraphs.
//!
//! Individualization-refinement: colour refinement to a stable partition,
//! then branching over the smallest non-singleton cell. Leaves give vertex
//! orders; the lexicographically smallest leaf code is canonical. Equal leaf
//! codes yield automorphisms, which prune sibling branches in the same orbit.

use crate::error::{Error, Result};
use crate::rng::WorkBudget;

/// Direction of an edge relative to its listed endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    None,
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedEdge {
    pub a: usize,
    pub b: usize,
    pub dir: Dir,
    pub color: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MarkedGraph {
    pub colors: Vec<u32>,
    pub edges: Vec<MarkedEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub code: Vec<u8>,
    /// `order[p]` is the vertex placed at position `p`.
    pub order: Vec<usize>,
}

const LOOP: u64 = 3;

/// Local view of an edge from one endpoint: 0 undirected, 1 out, 2 in, 3 loop.
fn local_dir(e: &MarkedEdge, from_a: bool) -> u64 {
    if e.a == e.b {
        return LOOP;
    }
    match (e.dir, from_a) {
        (Dir::None, _) => 0,
        (Dir::Forward, true) | (Dir::Backward, false) => 1,
        _ => 2,
    }
}

struct Search<'a> {
    g: &'a MarkedGraph,
    /// (packed local mark, neighbour) per vertex
    adj: Vec<Vec<(u64, usize)>>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
    work: u64,
    budget: u64,
}

#[derive(Clone)]
struct Leaf {
    prefix: Vec<usize>,
    /// position of each vertex
    position: Vec<usize>,
    code: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(g: &'a MarkedGraph, budget: WorkBudget) -> Self {
        let n = g.colors.len();
        let mut adj = vec![Vec::new(); n];
        for e in &g.edges {
            let pack = |dir: u64| dir << 40 | u64::from(e.color);
            adj[e.a].push((pack(local_dir(e, true)), e.b));
            if e.a != e.b {
                adj[e.b].push((pack(local_dir(e, false)), e.a));
            }
        }
        Search {
            g,
            adj,
            first: None,
            best: None,
            generators: Vec::new(),
            work: 0,
            budget: budget.0,
        }
    }

    fn charge(&mut self, units: u64) -> Result<()> {
        self.work += units;
        if self.work > self.budget {
            return Err(Error::BudgetExceeded {
                what: "canonical labeling",
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// Refines `colors` (dense ranks) to the coarsest equitable partition
    /// below it. Ranks depend only on the coloured structure.
    fn refine(&mut self, colors: &mut [u32]) -> Result<()> {
        let n = colors.len();
        let mut classes = count_classes(colors);
        let mut sig: Vec<(u32, Vec<(u64, u32)>, usize)> = Vec::with_capacity(n);
        loop {
            self.charge((n + 2 * self.g.edges.len()) as u64 + 1)?;
            sig.clear();
            for v in 0..n {
                let mut s: Vec<(u64, u32)> =
                    self.adj[v].iter().map(|&(m, w)| (m, colors[w])).collect();
                s.sort_unstable();
                sig.push((colors[v], s, v));
            }
            sig.sort_unstable();
            let mut rank = 0u32;
            for i in 0..n {
                if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                    rank += 1;
                }
                colors[sig[i].2] = rank;
            }
            let now = if n == 0 { 0 } else { rank as usize + 1 };
            if now == classes {
                return Ok(());
            }
            classes = now;
        }
    }

    fn leaf_code(&self, position: &[usize]) -> Vec<u32> {
        let n = position.len();
        let mut code = Vec::with_capacity(2 + n + 4 * self.g.edges.len());
        code.push(n as u32);
        let mut by_pos = vec![0u32; n];
        for v in 0..n {
            by_pos[position[v]] = self.g.colors[v];
        }
        code.extend(by_pos);
        let mut edges: Vec<[u32; 4]> = self
            .g
            .edges
            .iter()
            .map(|e| {
                let (p, q) = (position[e.a] as u32, position[e.b] as u32);
                let dir = if e.a == e.b {
                    LOOP as u32
                } else {
                    match e.dir {
                        Dir::None => 0,
                        Dir::Forward => 1,
                        Dir::Backward => 2,
                    }
                };
                if p <= q {
                    [p, q, dir, e.color]
                } else {
                    let flipped = match dir {
                        1 => 2,
                        2 => 1,
                        other => other,
                    };
                    [q, p, flipped, e.color]
                }
            })
            .collect();
        edges.sort_unstable();
        code.push(edges.len() as u32);
        code.extend(edges.into_iter().flatten());
        code
    }

    /// Returns `Some(level)` to abandon the search up to the node whose
    /// child at index `level` is on the current path.
    fn visit(&mut self, colors: Vec<u32>, prefix: &mut Vec<usize>) -> Result<Option<usize>> {
        let n = colors.len();
        let cell = target_cell(&colors);
        let Some(cell) = cell else {
            let position: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
            let code = self.leaf_code(&position);
            let leaf = Leaf {
                prefix: prefix.clone(),
                position,
                code,
            };
            return Ok(self.on_leaf(leaf));
        };
        let depth = prefix.len();
        let mut explored: Vec<usize> = Vec::new();
        for &w in &cell {
            if !explored.is_empty() {
                let orbit = self.orbits_fixing(prefix, n);
                if explored.iter().any(|&x| find(&orbit, x) == find(&orbit, w)) {
                    continue;
                }
            }
            explored.push(w);
            let target = colors[w];
            let mut next: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(v, &c)| 2 * c + u32::from(c == target && v != w))
                .collect();
            self.refine(&mut next)?;
            prefix.push(w);
            let jump = self.visit(next, prefix)?;
            prefix.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Ok(Some(level));
                }
            }
        }
        Ok(None)
    }

    fn on_leaf(&mut self, leaf: Leaf) -> Option<usize> {
        let Some(first) = self.first.as_ref() else {
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return None;
        };
        for reference in [first.clone(), self.best.clone().unwrap()] {
            if reference.code == leaf.code {
                let gamma = automorphism(&reference.position, &leaf.position);
                let level = diverge(&reference.prefix, &leaf.prefix);
                let maps_path = (0..=level).all(|i| gamma[reference.prefix[i]] == leaf.prefix[i]);
                if !gamma.iter().enumerate().all(|(v, &x)| v == x) {
                    self.generators.push(gamma);
                }
                return maps_path.then_some(level);
            }
        }
        if leaf.code < self.best.as_ref().unwrap().code {
            self.best = Some(leaf);
        }
        None
    }

    fn orbits_fixing(&self, prefix: &[usize], n: usize) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..n).collect();
        for gamma in &self.generators {
            if prefix.iter().all(|&v| gamma[v] == v) {
                for v in 0..n {
                    let (a, b) = (find(&parent, v), find(&parent, gamma[v]));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        parent
    }
}

fn find(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Smallest non-singleton cell, ties broken by colour; `None` when discrete.
fn target_cell(colors: &[u32]) -> Option<Vec<usize>> {
    let n = colors.len();
    let mut size = vec![0usize; n];
    for &c in colors {
        size[c as usize] += 1;
    }
    let c = (0..n).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c))?;
    Some((0..n).filter(|&v| colors[v] as usize == c).collect())
}

/// Map sending the vertex at each position of `from` to the vertex at the
/// same position of `to`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let n = from.len();
    let mut at = vec![0; n];
    for v in 0..n {
        at[to[v]] = v;
    }
    (0..n).map(|v| at[from[v]]).collect()
}

fn diverge(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Canonical code and vertex order. Equal codes iff isomorphic (respecting
/// vertex colours, edge multiplicities, loops, edge directions and colours).
pub fn canonical_form(g: &MarkedGraph, budget: WorkBudget) -> Result<Canonical> {
    let n = g.colors.len();
    for e in &g.edges {
        if e.a >= n || e.b >= n {
            return Err(Error::VertexOutOfRange {
                vertex: e.a.max(e.b),
                n,
            });
        }
    }
    let mut search = Search::new(g, budget);
    // dense ranks of the input colours
    let mut sorted = g.colors.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let mut colors: Vec<u32> = g
        .colors
        .iter()
        .map(|c| sorted.binary_search(c).unwrap() as u32)
        .collect();
    search.refine(&mut colors)?;
    search.visit(colors, &mut Vec::new())?;
    let best = search.best.unwrap_or(Leaf {
        prefix: vec![],
        position: vec![],
        code: vec![0, 0],
    });
    let mut order = vec![0; n];
    for v in 0..n {
        order[best.position[v]] = v;
    }
    Ok(Canonical {
        code: best.code.iter().flat_map(|x| x.to_be_bytes()).collect(),
        order,
    })
}
