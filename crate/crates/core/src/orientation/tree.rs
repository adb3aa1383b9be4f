// SPDX-License-Identifier: Apache-2.0

//! Random balanced orientations of even-degree trees.
//!
//! Starting at a root of degree `2d`, a uniformly random half of its edges is
//! pointed outwards. Every later internal vertex of degree `2d` sees exactly one
//! edge already oriented (the one towards the root) and orients the remaining
//! `2d - 1` edges uniformly among the balanced completions. Leaves of a window
//! are boundary stubs with no balance constraint.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::index;
use rand::Rng as _;

use super::Orientation;
use crate::error::{Error, Result};
use crate::graph::{edge_of, partner, Dart, MultiGraph, Vertex};
use crate::rng::{self, Rng, WorkBudget};

/// A finite tree whose internal vertices keep all their neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeWindow {
    tree: MultiGraph,
    internal: Vec<bool>,
}

impl TreeWindow {
    pub fn new(tree: MultiGraph, internal: Vec<bool>) -> Result<Self> {
        let n = tree.vertex_count();
        if internal.len() != n {
            return Err(Error::InvalidWindow(format!(
                "internal mask has {} entries for {} vertices",
                internal.len(),
                n
            )));
        }
        if n == 0 || tree.edge_count() + 1 != n || !tree.is_connected() {
            return Err(Error::InvalidWindow("not a tree".into()));
        }
        for v in 0..n {
            let deg = tree.degree(v);
            if internal[v] && (deg == 0 || deg % 2 == 1) {
                return Err(Error::InvalidWindow(format!(
                    "internal vertex {v} has degree {deg}"
                )));
            }
            if !internal[v] && deg > 1 {
                return Err(Error::InvalidWindow(format!(
                    "boundary vertex {v} has degree {deg}"
                )));
            }
        }
        Ok(TreeWindow { tree, internal })
    }

    /// Window whose internal vertices are exactly the non-leaves.
    pub fn from_tree(tree: MultiGraph) -> Result<Self> {
        let internal = (0..tree.vertex_count()).map(|v| tree.degree(v) >= 2).collect();
        TreeWindow::new(tree, internal)
    }

    pub fn tree(&self) -> &MultiGraph {
        &self.tree
    }

    pub fn is_internal(&self, v: Vertex) -> bool {
        self.internal.get(v).copied().unwrap_or(false)
    }

    pub fn internal_mask(&self) -> &[bool] {
        &self.internal
    }

    pub fn internal_vertices(&self) -> Vec<Vertex> {
        (0..self.internal.len()).filter(|&v| self.internal[v]).collect()
    }
}

/// Orients the tree spanned by the `active` edges around `root`, writing head
/// darts into `head`. Internal vertices must have even active degree; edges
/// hanging below a non-internal vertex get independent fair directions.
pub(crate) fn orient_tree_from(
    g: &MultiGraph,
    active: &[bool],
    internal: &[bool],
    root: Vertex,
    head: &mut [Dart],
    rng: &mut Rng,
) {
    let mut queue = VecDeque::from([(root, None::<Dart>)]);
    let mut children: Vec<Dart> = Vec::new();
    while let Some((v, parent)) = queue.pop_front() {
        children.clear();
        children.extend(
            g.darts(v)
                .iter()
                .copied()
                .filter(|&d| active[edge_of(d)] && Some(d) != parent),
        );
        if internal[v] {
            let half = (children.len() + usize::from(parent.is_some())) / 2;
            let out = match parent {
                None => half,
                // parent edge already points into v
                Some(p) if head[edge_of(p)] == p => half,
                Some(_) => half - 1,
            };
            let mut is_out = vec![false; children.len()];
            for i in index::sample(rng, children.len(), out) {
                is_out[i] = true;
            }
            for (&d, &o) in children.iter().zip(&is_out) {
                head[edge_of(d)] = if o { partner(d) } else { d };
            }
        } else {
            for &d in &children {
                head[edge_of(d)] = if rng.gen_bool(0.5) { partner(d) } else { d };
            }
        }
        for &d in &children {
            queue.push_back((g.across(d), Some(partner(d))));
        }
    }
}

pub fn canonical_tree_orientation(w: &TreeWindow, root: Vertex, seed: u64) -> Result<Orientation> {
    canonical_tree_orientation_with_rng(w, root, &mut rng::seeded(seed))
}

pub fn canonical_tree_orientation_with_rng(
    w: &TreeWindow,
    root: Vertex,
    rng: &mut Rng,
) -> Result<Orientation> {
    if !w.is_internal(root) {
        return Err(Error::NotInternal(root));
    }
    let g = &w.tree;
    let active = vec![true; g.edge_count()];
    let mut head = vec![usize::MAX; g.edge_count()];
    orient_tree_from(g, &active, &w.internal, root, &mut head, rng);
    Orientation::from_heads(head)
}

/// Exact law of the tree orientation: every orientation balanced at the
/// internal vertices, weighted `(1/2)·∏ 1/C(2d_v - 1, d_v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrientationLaw {
    pub outcomes: BTreeMap<Orientation, f64>,
}

impl OrientationLaw {
    pub fn total_mass(&self) -> f64 {
        self.outcomes.values().sum()
    }

    pub fn mass(&self, o: &Orientation) -> f64 {
        self.outcomes.get(o).copied().unwrap_or(0.0)
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as f64
}

pub fn tree_orientation_law(w: &TreeWindow, budget: WorkBudget) -> Result<OrientationLaw> {
    let g = &w.tree;
    let m = g.edge_count();
    if m >= 63 || (1u64 << m) > budget.0 {
        return Err(Error::BudgetExceeded {
            what: "orientation enumeration",
            budget: budget.0,
        });
    }
    let internal = w.internal_vertices();
    let weight = 0.5
        * internal
            .iter()
            .map(|&v| {
                let d = (g.degree(v) / 2) as u64;
                1.0 / binomial(2 * d - 1, d)
            })
            .product::<f64>();
    let mut outcomes = BTreeMap::new();
    let mut balance = vec![0i64; g.vertex_count()];
    for mask in 0u64..(1u64 << m) {
        balance.iter_mut().for_each(|b| *b = 0);
        for e in 0..m {
            let (u, v) = g.endpoints(e);
            // bit set: u -> v
            let (tail, head) = if mask >> e & 1 == 1 { (u, v) } else { (v, u) };
            balance[tail] += 1;
            balance[head] -= 1;
        }
        if internal.iter().all(|&v| balance[v] == 0) {
            let heads = (0..m).map(|e| 2 * e + (mask >> e & 1) as usize).collect();
            outcomes.insert(Orientation::from_heads(heads)?, weight);
        }
    }
    Ok(OrientationLaw { outcomes })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootInvariance {
    /// TV distance between the empirical laws rooted at `v1` and `v2`.
    pub tv12: f64,
    /// TV distance between the empirical law rooted at `v1` and the exact law.
    pub tv1_oracle: f64,
    pub samples: usize,
    pub outcomes: usize,
}

pub(crate) fn empirical_law(
    w: &TreeWindow,
    root: Vertex,
    samples: usize,
    rng: &mut Rng,
) -> Result<BTreeMap<Orientation, f64>> {
    let mut counts: BTreeMap<Orientation, usize> = BTreeMap::new();
    for _ in 0..samples {
        *counts
            .entry(canonical_tree_orientation_with_rng(w, root, rng)?)
            .or_default() += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(o, c)| (o, c as f64 / samples as f64))
        .collect())
}

pub(crate) fn tv<K: Ord + Clone>(p: &BTreeMap<K, f64>, q: &BTreeMap<K, f64>) -> f64 {
    let mut sum = 0.0;
    for (k, &a) in p {
        sum += (a - q.get(k).copied().unwrap_or(0.0)).abs();
    }
    for (k, &b) in q {
        if !p.contains_key(k) {
            sum += b;
        }
    }
    sum / 2.0
}

/// Empirical law of `samples` draws rooted at `root`; the same draws that
/// [`root_invariance_test`] makes for its first root under the same seed.
pub fn empirical_orientation_law(
    w: &TreeWindow,
    root: Vertex,
    samples: usize,
    seed: u64,
) -> Result<OrientationLaw> {
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    Ok(OrientationLaw {
        outcomes: empirical_law(w, root, samples, &mut rng::derived(seed, 1))?,
    })
}

pub fn root_invariance_test(
    w: &TreeWindow,
    v1: Vertex,
    v2: Vertex,
    samples: usize,
    seed: u64,
    budget: WorkBudget,
) -> Result<RootInvariance> {
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    for v in [v1, v2] {
        if !w.is_internal(v) {
            return Err(Error::NotInternal(v));
        }
    }
    let oracle = tree_orientation_law(w, budget)?;
    let p1 = empirical_law(w, v1, samples, &mut rng::derived(seed, 1))?;
    let p2 = empirical_law(w, v2, samples, &mut rng::derived(seed, 2))?;
    Ok(RootInvariance {
        tv12: tv(&p1, &p2),
        tv1_oracle: tv(&p1, &oracle.outcomes),
        samples,
        outcomes: oracle.outcomes.len(),
    })
}
