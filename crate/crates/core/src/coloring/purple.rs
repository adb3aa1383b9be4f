// SPDX-License-Identifier: Apache-2.0

//! Three-colourings of bipartite graphs with degrees 2 and 3 that keep the
//! third colour sparse.
//!
//! Red and blue are the main colours, purple the spare one. A purple edge is
//! standard when both ends have degree 2. Phase 0 recolours every standard
//! purple edge whose two neighbours agree. Phase `n` looks at the red/blue
//! chain leaving a standard purple edge: when it stops within `n` edges,
//! swapping it makes both neighbours of the purple edge agree, so the edge
//! turns red or blue; a standard purple edge met at the far end is recoloured
//! as well. Moves are scheduled by a sparse vertex labelling so that moves run
//! in the same step never touch the same edges.

use serde::Serialize;

use super::finite::{budgeted_color, color_components_with};
use super::konig::konig_color_subset;
use super::{close_pair, verify_proper, BipartiteGraph, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{edge_of, Edge, MultiGraph, Vertex};
use crate::labeling::sparse_labeling;
use crate::rng::WorkBudget;

pub const RED: u32 = 1;
pub const BLUE: u32 = 2;
pub const PURPLE: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PurpleOptions {
    pub r: usize,
    /// Components with at most this many vertices are coloured directly.
    pub finite_threshold: usize,
    /// Error on violated hypotheses or postconditions instead of reporting.
    pub strict: bool,
    pub budget: WorkBudget,
}

impl PurpleOptions {
    pub fn new(r: usize) -> Self {
        PurpleOptions {
            r,
            finite_threshold: 10 * r,
            strict: true,
            budget: WorkBudget::DEFAULT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseReport {
    pub phase: usize,
    pub recolored: usize,
    pub steps: usize,
    pub standard_purple_after: usize,
    /// Smallest distance between two standard purple edges afterwards.
    pub min_standard_distance: Option<usize>,
    pub postcondition_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PurpleReport {
    pub r: usize,
    pub vertices: usize,
    pub edges: usize,
    pub degree_three_vertices: usize,
    pub small_components: usize,
    pub large_components: usize,
    pub purple_initial: usize,
    pub purple: usize,
    pub standard_purple: usize,
    /// Purple edges per vertex.
    pub density: f64,
    pub bound: f64,
    pub phases: Vec<PhaseReport>,
    /// Description of the first violated hypothesis, if any.
    pub hypothesis_violation: Option<String>,
    pub postconditions_ok: bool,
}

pub fn purple_eliminate(b: &BipartiteGraph, r: usize) -> Result<(EdgeColoring, PurpleReport)> {
    purple_eliminate_with(b, &PurpleOptions::new(r))
}

pub fn purple_eliminate_with(b: &BipartiteGraph, opts: &PurpleOptions) -> Result<(EdgeColoring, PurpleReport)> {
    eliminate(b, opts, None)
}

/// As [`purple_eliminate_with`], but the phases start from `start` (a proper
/// colouring with colours `1..=3`) on large components instead of from a
/// Kőnig colouring.
pub fn purple_eliminate_from(
    b: &BipartiteGraph,
    start: &EdgeColoring,
    opts: &PurpleOptions,
) -> Result<(EdgeColoring, PurpleReport)> {
    if let Err(v) = verify_proper(b.graph(), start) {
        return Err(Error::Invariant(format!("starting colouring is not proper: {v}")));
    }
    if start.palette > 3 || !start.is_total() {
        return Err(Error::Invariant("starting colouring must be total with colours 1..=3".into()));
    }
    eliminate(b, opts, Some(start))
}

fn eliminate(
    b: &BipartiteGraph,
    opts: &PurpleOptions,
    given: Option<&EdgeColoring>,
) -> Result<(EdgeColoring, PurpleReport)> {
    let g = b.graph();
    let n = g.vertex_count();
    let r = opts.r;
    let mut violation = None;
    if let Some(v) = (0..n).find(|&v| !matches!(g.degree(v), 2 | 3)) {
        let err = Error::DegreeProfile {
            vertex: v,
            degree: g.degree(v),
            allowed: vec![2, 3],
        };
        if opts.strict || g.degree(v) > 3 {
            return Err(err);
        }
        violation = Some(err.to_string());
    }
    let heavy: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) == 3).collect();
    if let Some((u, v, distance)) = close_pair(g, &heavy, r.saturating_sub(1)) {
        let err = Error::NotSparse {
            u,
            v,
            distance,
            radius: r,
        };
        if opts.strict {
            return Err(err);
        }
        violation.get_or_insert(err.to_string());
    }

    let comps = g.components();
    let (small, large): (Vec<Vec<Vertex>>, Vec<Vec<Vertex>>) = comps
        .into_iter()
        .filter(|c| c.len() > 1)
        .partition(|c| c.len() <= opts.finite_threshold);
    let (mut coloring, _) = color_components_with(b, &small, PURPLE, opts.budget, |c| {
        match budgeted_color(c, 2) {
            Ok(col) => Ok(col.colors),
            Err(Error::NotSparse { .. }) => {
                let all: Vec<Edge> = (0..c.graph().edge_count()).collect();
                konig_color_subset(c.graph(), &all, 3)
            }
            Err(e) => Err(e),
        }
    })?;
    let mut in_large = vec![false; g.edge_count()];
    for comp in &large {
        for &v in comp {
            for &d in g.darts(v) {
                in_large[edge_of(d)] = true;
            }
        }
    }
    let large_edges: Vec<Edge> = (0..g.edge_count()).filter(|&e| in_large[e]).collect();
    let start = match given {
        Some(c) => c.colors.clone(),
        None => konig_color_subset(g, &large_edges, 3)?,
    };
    for &e in &large_edges {
        coloring.colors[e] = start[e];
    }
    let purple_initial = coloring.count(PURPLE);

    let mut state = State {
        g,
        colors: &mut coloring.colors,
        in_large: &in_large,
    };
    let labels = sparse_labeling(g, 2 * r + 4);
    let mut phases = Vec::new();
    let mut all_ok = true;
    for phase in 0..=r {
        let (recolored, steps) = state.run_phase(phase, &labels.labels, labels.k);
        let standard = state.standard_purples();
        let groups: Vec<Vec<Vertex>> = standard
            .iter()
            .map(|&e| {
                let (x, y) = g.endpoints(e);
                vec![x, y]
            })
            .collect();
        let min_standard_distance = g.min_group_distance(&groups);
        let ok = if phase == 0 {
            standard.iter().all(|&e| {
                let (x, y) = g.endpoints(e);
                state.other_color(x, e) != state.other_color(y, e)
            })
        } else {
            min_standard_distance.is_none_or(|d| d > phase)
        };
        if !ok {
            if opts.strict {
                return Err(Error::Invariant(format!(
                    "phase {phase} postcondition failed: standard purple edges at distance {min_standard_distance:?}"
                )));
            }
            all_ok = false;
        }
        phases.push(PhaseReport {
            phase,
            recolored,
            steps,
            standard_purple_after: standard.len(),
            min_standard_distance,
            postcondition_ok: ok,
        });
    }
    if let Err(v) = verify_proper(g, &coloring) {
        return Err(Error::Invariant(format!("purple elimination broke properness: {v}")));
    }
    let purple = coloring.count(PURPLE);
    let standard_purple = (0..g.edge_count())
        .filter(|&e| coloring.colors[e] == Some(PURPLE) && is_standard(g, e))
        .count();
    let report = PurpleReport {
        r,
        vertices: n,
        edges: g.edge_count(),
        degree_three_vertices: heavy.len(),
        small_components: small.len(),
        large_components: large.len(),
        purple_initial,
        purple,
        standard_purple,
        density: if n == 0 { 0.0 } else { purple as f64 / n as f64 },
        bound: if r == 0 { f64::INFINITY } else { 4.0 / r as f64 },
        phases,
        hypothesis_violation: violation,
        postconditions_ok: all_ok,
    };
    Ok((coloring, report))
}

fn is_standard(g: &MultiGraph, e: Edge) -> bool {
    let (x, y) = g.endpoints(e);
    g.degree(x) == 2 && g.degree(y) == 2
}

fn swap(c: u32) -> u32 {
    if c == RED {
        BLUE
    } else {
        RED
    }
}

struct State<'a> {
    g: &'a MultiGraph,
    colors: &'a mut [Option<u32>],
    in_large: &'a [bool],
}

/// A planned recolouring around one standard purple edge.
struct Move {
    edge: Edge,
    chain: Vec<Edge>,
}

impl State<'_> {
    fn standard_purples(&self) -> Vec<Edge> {
        (0..self.g.edge_count())
            .filter(|&e| self.in_large[e] && self.colors[e] == Some(PURPLE) && is_standard(self.g, e))
            .collect()
    }

    /// Colour of the edge at degree-2 vertex `v` other than `e`.
    fn other_color(&self, v: Vertex, e: Edge) -> Option<u32> {
        self.g
            .darts(v)
            .iter()
            .map(|&d| edge_of(d))
            .find(|&f| f != e)
            .and_then(|f| self.colors[f])
    }

    fn edge_with(&self, v: Vertex, c: u32) -> Option<Edge> {
        self.g
            .darts(v)
            .iter()
            .map(|&d| edge_of(d))
            .find(|&f| self.colors[f] == Some(c))
    }

    /// The maximal red/blue chain leaving `v` away from `e`, if it has at
    /// most `limit` edges.
    fn chain(&self, v: Vertex, e: Edge, limit: usize) -> Option<Vec<Edge>> {
        let first = self.g.darts(v).iter().map(|&d| edge_of(d)).find(|&f| f != e)?;
        let mut c = self.colors[first]?;
        if c == PURPLE {
            return None;
        }
        let mut chain = vec![first];
        let mut cur = self.g.other_end(first, v);
        loop {
            c = swap(c);
            match self.edge_with(cur, c) {
                None => return Some(chain),
                Some(f) => {
                    if chain.len() == limit {
                        return None;
                    }
                    chain.push(f);
                    cur = self.g.other_end(f, cur);
                }
            }
        }
    }

    fn plan(&self, e: Edge, phase: usize) -> Option<Move> {
        if self.colors[e] != Some(PURPLE) || !self.in_large[e] || !is_standard(self.g, e) {
            return None;
        }
        let (x, y) = self.g.endpoints(e);
        let (cx, cy) = (self.other_color(x, e)?, self.other_color(y, e)?);
        if cx == cy {
            return Some(Move { edge: e, chain: vec![] });
        }
        if phase == 0 {
            return None;
        }
        let from_x = self.chain(x, e, phase);
        let from_y = self.chain(y, e, phase);
        let chain = match (from_x, from_y) {
            (Some(a), Some(b)) => {
                if b.len() < a.len() {
                    b
                } else {
                    a
                }
            }
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return None,
        };
        Some(Move { edge: e, chain })
    }

    /// Swaps the chain, recolours the purple edge and, when the chain ends at
    /// a standard purple edge whose neighbours now agree, that edge too.
    fn apply(&mut self, m: &Move) -> usize {
        for &f in &m.chain {
            self.colors[f] = self.colors[f].map(swap);
        }
        let mut recolored = usize::from(self.settle(m.edge));
        if let Some(&last) = m.chain.last() {
            let (a, b) = self.g.endpoints(last);
            for z in [a, b] {
                if let Some(f) = self.edge_with(z, PURPLE) {
                    if f != m.edge && self.in_large[f] && is_standard(self.g, f) {
                        recolored += usize::from(self.settle(f));
                    }
                }
            }
        }
        recolored
    }

    /// Recolours a standard purple edge whose neighbours share a colour.
    fn settle(&mut self, e: Edge) -> bool {
        let (x, y) = self.g.endpoints(e);
        match (self.other_color(x, e), self.other_color(y, e)) {
            (Some(a), Some(b)) if a == b && a != PURPLE => {
                self.colors[e] = Some(swap(a));
                true
            }
            _ => false,
        }
    }

    /// Sweeps the label classes until no move applies. Returns recoloured
    /// edge count and number of label steps that moved something.
    fn run_phase(&mut self, phase: usize, labels: &[usize], k: usize) -> (usize, usize) {
        let mut recolored = 0;
        let mut steps = 0;
        loop {
            let mut by_label: Vec<Vec<Edge>> = vec![Vec::new(); k];
            for e in self.standard_purples() {
                if self.plan(e, phase).is_some() {
                    let (x, y) = self.g.endpoints(e);
                    by_label[labels[x.min(y)]].push(e);
                }
            }
            let mut moved = false;
            for class in by_label {
                let mut step_moved = false;
                // same-label edges are far apart; plans stay valid within a step
                for e in class {
                    if let Some(m) = self.plan(e, phase) {
                        let done = self.apply(&m);
                        recolored += done;
                        step_moved |= done > 0;
                    }
                }
                if step_moved {
                    steps += 1;
                    moved = true;
                }
            }
            if !moved {
                return (recolored, steps);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GraphKind, GraphSpec};
    use crate::graph::fixtures::*;

    #[test]
    fn even_cycle_needs_no_purple() {
        let b = BipartiteGraph::from_graph(cycle(200)).unwrap();
        let (c, rep) = purple_eliminate(&b, 5).unwrap();
        assert_eq!(c.count(PURPLE), 0);
        assert_eq!(rep.purple, 0);
        assert_eq!(verify_proper(b.graph(), &c), Ok(()));
    }

    #[test]
    fn figure_three_path_is_repaired() {
        // Long even cycle coloured so that two standard purple edges sit at
        // distance 2 with alternating red/blue between and around them:
        // ... R B [P] R B [P] ... arranged on a 12-cycle.
        let g = cycle(12);
        let b = BipartiteGraph::from_graph(g).unwrap();
        let seq = [RED, BLUE, PURPLE, RED, BLUE, PURPLE, RED, BLUE, RED, BLUE, RED, BLUE];
        let mut colors: Vec<Option<u32>> = seq.iter().map(|&c| Some(c)).collect();
        let in_large = vec![true; 12];
        let mut s = State {
            g: b.graph(),
            colors: &mut colors,
            in_large: &in_large,
        };
        let labels = sparse_labeling(b.graph(), 8);
        s.run_phase(0, &labels.labels, labels.k);
        assert_eq!(s.standard_purples().len(), 2);
        s.run_phase(1, &labels.labels, labels.k);
        s.run_phase(2, &labels.labels, labels.k);
        assert!(s.standard_purples().is_empty());
        let c = EdgeColoring { colors, palette: 3 };
        assert_eq!(verify_proper(b.graph(), &c), Ok(()));
    }

    #[test]
    fn chord_cycles_meet_the_density_bound() {
        for (r, seed) in [(10usize, 1u64), (20, 2)] {
            let g = generate(&GraphSpec::new(
                GraphKind::SparseChordCycle {
                    cycle_len: 20 * r,
                    chord_gap: r,
                },
                seed,
            ))
            .unwrap();
            let b = BipartiteGraph::from_graph(g).unwrap();
            let (c, rep) = purple_eliminate(&b, r).unwrap();
            assert_eq!(verify_proper(b.graph(), &c), Ok(()));
            assert!(rep.density <= 4.0 / r as f64, "{rep:?}");
            assert!(rep.phases.iter().all(|p| p.postcondition_ok));
        }
    }

    /// Kőnig colouring with random edges turned purple where no purple
    /// edge touches them yet.
    fn purple_heavy_start(b: &BipartiteGraph, seed: u64) -> EdgeColoring {
        use rand::seq::SliceRandom;
        let g = b.graph();
        let all: Vec<Edge> = (0..g.edge_count()).collect();
        let mut colors = konig_color_subset(g, &all, 3).unwrap();
        let mut order = all;
        let mut rng = crate::rng::seeded(seed);
        order.shuffle(&mut rng);
        for e in order {
            let (x, y) = g.endpoints(e);
            let touched = [x, y]
                .iter()
                .any(|&v| g.darts(v).iter().any(|&d| colors[edge_of(d)] == Some(PURPLE)));
            if !touched && rand::Rng::gen_bool(&mut rng, 0.5) {
                colors[e] = Some(PURPLE);
            }
        }
        EdgeColoring { colors, palette: 3 }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(60))]
        #[test]
        fn phases_clear_purple_heavy_starts(r in 3usize..25, extra in 0usize..40, seed in proptest::prelude::any::<u64>()) {
            let len = 2 * (10 * r + extra);
            let g = generate(&GraphSpec::new(GraphKind::SparseChordCycle { cycle_len: len, chord_gap: r }, seed)).unwrap();
            let n = g.vertex_count();
            let b = BipartiteGraph::from_graph(g).unwrap();
            let start = purple_heavy_start(&b, seed);
            let mut opts = PurpleOptions::new(r);
            opts.finite_threshold = 0;
            let (c, rep) = purple_eliminate_from(&b, &start, &opts).unwrap();
            proptest::prop_assert!(rep.purple_initial > rep.purple);
            proptest::prop_assert_eq!(verify_proper(b.graph(), &c), Ok(()));
            proptest::prop_assert!(rep.phases.iter().all(|p| p.postcondition_ok));
            proptest::prop_assert!(c.count(PURPLE) as f64 / n as f64 <= 4.0 / r as f64, "{:?}", rep);
        }
    }

    #[test]
    fn dense_degree_three_vertices_are_rejected() {
        let mut g = cycle(40);
        let a = g.add_vertex();
        g.add_edge(0, a).unwrap();
        g.add_edge(a, 4).unwrap();
        let b = BipartiteGraph::from_graph(g).unwrap();
        assert!(matches!(purple_eliminate(&b, 10), Err(Error::NotSparse { .. })));
        let mut lenient = PurpleOptions::new(10);
        lenient.strict = false;
        let (c, rep) = purple_eliminate_with(&b, &lenient).unwrap();
        assert!(rep.hypothesis_violation.is_some());
        assert_eq!(verify_proper(b.graph(), &c), Ok(()));
    }

    #[test]
    fn degree_profile_is_checked() {
        let b = BipartiteGraph::from_graph(path(4)).unwrap();
        assert!(matches!(purple_eliminate(&b, 3), Err(Error::DegreeProfile { .. })));
    }
}
