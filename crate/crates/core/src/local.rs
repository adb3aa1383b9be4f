// SPDX-License-Identifier: Apache-2.0

//! Rooted balls, their canonical codes and neighbourhood statistics.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng as _;
use serde::Serialize;

use crate::canon::{canonical_form, Dir, MarkedEdge, MarkedGraph};
use crate::error::{Error, Result};
use crate::graph::{edge_of, Dart, MultiGraph, Vertex, UNREACHED};
use crate::orientation::Orientation;
use crate::rng::{self, WorkBudget};
use crate::schreier::SchreierDecoration;

/// Optional edge decorations carried into ball codes.
#[derive(Debug, Clone, Copy, Default)]
pub struct Marks<'a> {
    pub orientation: Option<&'a Orientation>,
    /// Edge colours, `None` for uncoloured edges.
    pub colors: Option<&'a [Option<u32>]>,
}

impl<'a> Marks<'a> {
    pub const NONE: Marks<'static> = Marks {
        orientation: None,
        colors: None,
    };
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BallCode {
    pub radius: usize,
    pub code: Vec<u8>,
}

impl BallCode {
    pub fn hex(&self) -> String {
        hex::encode(&self.code)
    }
}

/// Reusable scratch space for extracting balls of one graph.
pub struct BallCoder<'g> {
    g: &'g MultiGraph,
    marks: Marks<'g>,
    budget: WorkBudget,
    dist: [Vec<usize>; 2],
    local: Vec<usize>,
    members: Vec<Vertex>,
}

impl<'g> BallCoder<'g> {
    pub fn new(g: &'g MultiGraph, marks: Marks<'g>, budget: WorkBudget) -> Self {
        let n = g.vertex_count();
        BallCoder {
            g,
            marks,
            budget,
            dist: [vec![UNREACHED; n], vec![UNREACHED; n]],
            local: vec![UNREACHED; n],
            members: Vec::new(),
        }
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if v >= self.g.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.g.vertex_count(),
            });
        }
        Ok(())
    }

    fn bfs(&mut self, which: usize, root: Vertex, r: usize) {
        let dist = &mut self.dist[which];
        dist[root] = 0;
        let mut queue = vec![root];
        let mut i = 0;
        while i < queue.len() {
            let u = queue[i];
            i += 1;
            if self.local[u] == UNREACHED {
                self.local[u] = self.members.len();
                self.members.push(u);
            }
            if dist[u] == r {
                continue;
            }
            for &d in self.g.darts(u) {
                let w = self.g.across(d);
                if dist[w] == UNREACHED {
                    dist[w] = dist[u] + 1;
                    queue.push(w);
                }
            }
        }
    }

    /// Code of the ball of radius `r` around the roots (one or two), the
    /// subgraph induced on vertices within `r` of some root.
    fn code_of(&mut self, roots: &[Vertex], r: usize) -> Result<Vec<u8>> {
        for (i, &root) in roots.iter().enumerate() {
            self.bfs(i, root, r);
        }
        let g = self.g;
        let level = |d: usize| if d == UNREACHED { r + 1 } else { d };
        let colors: Vec<u32> = self
            .members
            .iter()
            .map(|&v| match roots.len() {
                1 => level(self.dist[0][v]) as u32,
                _ => (level(self.dist[0][v]) * (r + 2) + level(self.dist[1][v])) as u32,
            })
            .collect();
        let mut edges = Vec::new();
        for &v in &self.members {
            for &d in g.darts(v) {
                let w = g.across(d);
                if d % 2 == 1 || self.local[w] == UNREACHED {
                    continue;
                }
                let e = edge_of(d);
                let dir = match self.marks.orientation {
                    Some(o) if o.head_dart(e) == d + 1 => Dir::Forward,
                    Some(_) => Dir::Backward,
                    None => Dir::None,
                };
                let color = self
                    .marks
                    .colors
                    .and_then(|c| c[e])
                    .map_or(0, |c| c + 1);
                edges.push(MarkedEdge {
                    a: self.local[v],
                    b: self.local[w],
                    dir,
                    color,
                });
            }
        }
        let result = canonical_form(&MarkedGraph { colors, edges }, self.budget);
        for &v in &self.members {
            self.local[v] = UNREACHED;
            self.dist[0][v] = UNREACHED;
            self.dist[1][v] = UNREACHED;
        }
        self.members.clear();
        Ok(result?.code)
    }

    pub fn rooted(&mut self, root: Vertex, r: usize) -> Result<BallCode> {
        self.check(root)?;
        Ok(BallCode {
            radius: r,
            code: self.code_of(&[root], r)?,
        })
    }

    /// Ball around the ordered pair `(o, o2)`; the roots are distinguishable.
    pub fn birooted(&mut self, o: Vertex, o2: Vertex, r: usize) -> Result<BallCode> {
        self.check(o)?;
        self.check(o2)?;
        Ok(BallCode {
            radius: r,
            code: self.code_of(&[o, o2], r)?,
        })
    }
}

pub fn ball_code(
    g: &MultiGraph,
    root: Vertex,
    r: usize,
    marks: Marks<'_>,
    budget: WorkBudget,
) -> Result<BallCode> {
    BallCoder::new(g, marks, budget).rooted(root, r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodDistribution {
    pub radius: usize,
    pub counts: BTreeMap<Vec<u8>, u64>,
    pub total: u64,
    /// 0 for exact enumeration over all roots.
    pub sample_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodeMass {
    pub code: String,
    pub count: u64,
    pub mass: f64,
}

impl NeighborhoodDistribution {
    pub fn from_codes(radius: usize, codes: impl IntoIterator<Item = Vec<u8>>, sample_count: usize) -> Self {
        let mut counts = BTreeMap::new();
        let mut total = 0;
        for c in codes {
            *counts.entry(c).or_insert(0) += 1;
            total += 1;
        }
        NeighborhoodDistribution {
            radius,
            counts,
            total,
            sample_count,
        }
    }

    pub fn mass(&self, code: &[u8]) -> f64 {
        self.counts.get(code).map_or(0.0, |&c| c as f64 / self.total as f64)
    }

    pub fn support(&self) -> usize {
        self.counts.len()
    }

    /// The `k` heaviest codes, ties broken by code.
    pub fn top(&self, k: usize) -> Vec<CodeMass> {
        let mut all: Vec<(&Vec<u8>, &u64)> = self.counts.iter().collect();
        all.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
        all.into_iter()
            .take(k)
            .map(|(c, &n)| CodeMass {
                code: hex::encode(c),
                count: n,
                mass: n as f64 / self.total as f64,
            })
            .collect()
    }

    /// Lines `<hex code> <count> <mass>` sorted by code.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (c, &n) in &self.counts {
            writeln!(out, "{} {} {}", hex::encode(c), n, n as f64 / self.total as f64).unwrap();
        }
        out
    }
}

/// Exact mode averages over every vertex; `sample = Some((N, seed))` draws `N`
/// uniform roots.
pub fn neighborhood_distribution(
    g: &MultiGraph,
    r: usize,
    marks: Marks<'_>,
    sample: Option<(usize, u64)>,
    budget: WorkBudget,
) -> Result<NeighborhoodDistribution> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut coder = BallCoder::new(g, marks, budget);
    let roots: Vec<Vertex> = match sample {
        None => (0..n).collect(),
        Some((0, _)) => return Err(Error::ZeroSamples),
        Some((count, seed)) => {
            let mut rng = rng::seeded(seed);
            (0..count).map(|_| rng.gen_range(0..n)).collect()
        }
    };
    let mut codes = Vec::with_capacity(roots.len());
    for v in roots {
        codes.push(coder.rooted(v, r)?.code);
    }
    Ok(NeighborhoodDistribution::from_codes(
        r,
        codes,
        sample.map_or(0, |s| s.0),
    ))
}

/// Total variation distance; exactly 0 for equal empirical distributions.
pub fn tv_distance(p: &NeighborhoodDistribution, q: &NeighborhoodDistribution) -> Result<f64> {
    if p.radius != q.radius {
        return Err(Error::RadiusMismatch {
            left: p.radius,
            right: q.radius,
        });
    }
    // sum |cp/Tp - cq/Tq| computed on integers scaled by Tp·Tq
    let (tp, tq) = (u128::from(p.total), u128::from(q.total));
    let mut diff: u128 = 0;
    for (c, &a) in &p.counts {
        let b = q.counts.get(c).copied().unwrap_or(0);
        diff += (u128::from(a) * tq).abs_diff(u128::from(b) * tp);
    }
    for (c, &b) in &q.counts {
        if !p.counts.contains_key(c) {
            diff += u128::from(b) * tp;
        }
    }
    if diff == 0 {
        return Ok(0.0);
    }
    Ok(diff as f64 / (2.0 * tp as f64 * tq as f64))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvolutionReport {
    pub radius: usize,
    pub pairs: u64,
    pub distinct_codes: usize,
    pub top_original: Vec<CodeMass>,
    pub top_swapped: Vec<CodeMass>,
}

/// Compares the law of birooted balls `(o, o')`, with `(o, o')` a uniform
/// dart, against the law of `(o', o)`. Exact mode walks every dart.
pub fn involution_invariance_check(
    g: &MultiGraph,
    r: usize,
    sample: Option<(usize, u64)>,
    budget: WorkBudget,
) -> Result<(f64, InvolutionReport)> {
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let mut coder = BallCoder::new(g, Marks::NONE, budget);
    let darts: Vec<Dart> = match sample {
        None => (0..g.dart_count()).collect(),
        Some((0, _)) => return Err(Error::ZeroSamples),
        Some((count, seed)) => {
            let mut rng = rng::seeded(seed);
            (0..count).map(|_| rng.gen_range(0..g.dart_count())).collect()
        }
    };
    let mut original = Vec::with_capacity(darts.len());
    let mut swapped = Vec::with_capacity(darts.len());
    if sample.is_none() {
        // the swap of dart d is its partner, so each code is computed once
        let codes = darts
            .iter()
            .map(|&d| Ok(coder.birooted(g.owner(d), g.across(d), r)?.code))
            .collect::<Result<Vec<_>>>()?;
        for &d in &darts {
            original.push(codes[d].clone());
            swapped.push(codes[d ^ 1].clone());
        }
    } else {
        for &d in &darts {
            let (o, o2) = (g.owner(d), g.across(d));
            original.push(coder.birooted(o, o2, r)?.code);
            swapped.push(coder.birooted(o2, o, r)?.code);
        }
    }
    let count = sample.map_or(0, |s| s.0);
    let p = NeighborhoodDistribution::from_codes(r, original, count);
    let q = NeighborhoodDistribution::from_codes(r, swapped, count);
    let tv = tv_distance(&p, &q)?;
    let report = InvolutionReport {
        radius: r,
        pairs: p.total,
        distinct_codes: p.support(),
        top_original: p.top(5),
        top_swapped: q.top(5),
    };
    Ok((tv, report))
}

/// TV distance between the decorated `r`-ball law at a uniform vertex `o` and
/// at `s.o`, for the generator with colour `color` (1-based).
pub fn generator_shift_check(
    s: &SchreierDecoration,
    color: u32,
    r: usize,
    budget: WorkBudget,
) -> Result<f64> {
    s.verify().map_err(|v| Error::InvalidDecoration(v.to_string()))?;
    if color == 0 || color > s.d() {
        return Err(Error::InvalidDecoration(format!(
            "generator {color} outside palette 1..={}",
            s.d()
        )));
    }
    generator_shift_unchecked(s.graph(), s.orientation(), s.colors(), color, r, budget)
}

/// As [`generator_shift_check`] without validating the decoration: `s.o` is
/// the head of the first out-edge of the given colour at `o`, or `o` itself.
pub fn generator_shift_unchecked(
    g: &MultiGraph,
    o: &Orientation,
    colors: &[Option<u32>],
    color: u32,
    r: usize,
    budget: WorkBudget,
) -> Result<f64> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let marks = Marks {
        orientation: Some(o),
        colors: Some(colors),
    };
    let mut coder = BallCoder::new(g, marks, budget);
    let codes = (0..n)
        .map(|v| Ok(coder.rooted(v, r)?.code))
        .collect::<Result<Vec<_>>>()?;
    let step = |v: Vertex| {
        g.darts(v)
            .iter()
            .map(|&d| edge_of(d))
            .find(|&e| colors[e] == Some(color) && o.tail(g, e) == v)
            .map_or(v, |e| o.head(g, e))
    };
    let at_o = NeighborhoodDistribution::from_codes(r, codes.iter().cloned(), 0);
    let at_so = NeighborhoodDistribution::from_codes(r, (0..n).map(|v| codes[step(v)].clone()), 0);
    tv_distance(&at_o, &at_so)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn code(g: &MultiGraph, v: Vertex, r: usize) -> Vec<u8> {
        ball_code(g, v, r, Marks::NONE, WorkBudget::DEFAULT).unwrap().code
    }

    #[test]
    fn vertex_transitive_cycle() {
        let g = cycle(6);
        assert!((0..6).all(|v| code(&g, v, 2) == code(&g, 0, 2)));
    }

    #[test]
    fn path_end_versus_centre() {
        let g = path(5);
        assert_ne!(code(&g, 0, 1), code(&g, 2, 1));
    }

    #[test]
    fn directed_cycles_agree_and_sinks_differ() {
        let g = cycle(6);
        let cw = Orientation::as_listed(&g);
        let ccw = cw.reversed();
        let with = |o: &Orientation| {
            let marks = Marks {
                orientation: Some(o),
                colors: None,
            };
            ball_code(&g, 0, 1, marks, WorkBudget::DEFAULT).unwrap()
        };
        // a reflection carries one directed cycle onto the other
        assert_eq!(with(&cw), with(&ccw));
        // 0 a sink: both edges point at the root
        let sink = Orientation::from_heads(
            (0..6).map(|e| if e == 5 { 2 * e + 1 } else if e == 0 { 2 * e } else { cw.head_dart(e) }).collect(),
        )
        .unwrap();
        assert_ne!(with(&cw), with(&sink));
        assert_eq!(code(&g, 0, 1), code(&g, 3, 1));
    }

    #[test]
    fn ball_includes_edges_between_outer_vertices() {
        // triangle vs path at radius 1 from the middle
        assert_ne!(code(&cycle(3), 0, 1), code(&path(3), 1, 1));
    }

    #[test]
    fn distributions() {
        let d = neighborhood_distribution(&cycle(6), 1, Marks::NONE, None, WorkBudget::DEFAULT).unwrap();
        assert_eq!(d.support(), 1);
        assert_eq!(d.total, 6);
        let u = disjoint_union(&[&cycle(3), &cycle(4)]);
        let d = neighborhood_distribution(&u, 2, Marks::NONE, None, WorkBudget::DEFAULT).unwrap();
        let mut masses: Vec<f64> = d.counts.keys().map(|c| d.mass(c)).collect();
        masses.sort_by(f64::total_cmp);
        assert_eq!(masses, vec![3.0 / 7.0, 4.0 / 7.0]);
        let k4 = neighborhood_distribution(&complete(4), 1, Marks::NONE, Some((1000, 5)), WorkBudget::DEFAULT)
            .unwrap();
        assert_eq!(k4.support(), 1);
        assert_eq!(k4.sample_count, 1000);
    }

    #[test]
    fn tv_examples() {
        let mk = |pairs: &[(&[u8], u64)]| NeighborhoodDistribution {
            radius: 1,
            counts: pairs.iter().map(|(c, n)| (c.to_vec(), *n)).collect(),
            total: pairs.iter().map(|p| p.1).sum(),
            sample_count: 0,
        };
        let p = mk(&[(b"a", 1), (b"b", 1)]);
        let q = mk(&[(b"a", 3)]);
        assert_eq!(tv_distance(&p, &p).unwrap(), 0.0);
        assert_eq!(tv_distance(&p, &q).unwrap(), 0.5);
        assert_eq!(tv_distance(&q, &mk(&[(b"c", 2)])).unwrap(), 1.0);
        let mut other = q.clone();
        other.radius = 2;
        assert!(matches!(tv_distance(&q, &other), Err(Error::RadiusMismatch { .. })));
    }

    #[test]
    fn involution_exact_is_zero() {
        for g in [cycle(4), complete_bipartite(1, 3), complete(5)] {
            let (tv, rep) = involution_invariance_check(&g, 1, None, WorkBudget::DEFAULT).unwrap();
            assert_eq!(tv, 0.0);
            assert_eq!(rep.pairs, 2 * g.edge_count() as u64);
        }
        assert_eq!(
            involution_invariance_check(&MultiGraph::empty(3), 1, None, WorkBudget::DEFAULT),
            Err(Error::EdgelessGraph)
        );
    }

    #[test]
    fn star_swapped_codes_by_hand() {
        // In K_{1,3} the three centre→leaf darts share one code, the three
        // leaf→centre darts share another; swapping exchanges the classes.
        let g = complete_bipartite(1, 3);
        let mut coder = BallCoder::new(&g, Marks::NONE, WorkBudget::DEFAULT);
        let out = coder.birooted(0, 1, 1).unwrap();
        let back = coder.birooted(1, 0, 1).unwrap();
        assert_ne!(out, back);
        for leaf in 2..4 {
            assert_eq!(coder.birooted(0, leaf, 1).unwrap(), out);
            assert_eq!(coder.birooted(leaf, 0, 1).unwrap(), back);
        }
    }

    #[test]
    fn dump_is_sorted() {
        let u = disjoint_union(&[&cycle(3), &path(3)]);
        let d = neighborhood_distribution(&u, 1, Marks::NONE, None, WorkBudget::DEFAULT).unwrap();
        let dump = d.dump();
        let lines: Vec<&str> = dump.lines().collect();
        let mut sorted = lines.clone();
        sorted.sort();
        assert_eq!(lines, sorted);
        assert_eq!(lines.len(), d.support());
    }
}
