// SPDX-License-Identifier: Apache-2.0

//! Colourings with one spare colour, and isomorphism-consistent colouring of
//! finite components.

use std::collections::BTreeMap;

use serde::Serialize;

use super::konig::konig_color_subset;
use super::{close_pair, BipartiteGraph, EdgeColoring};
use crate::canon::{canonical_form, Dir, MarkedEdge, MarkedGraph};
use crate::error::{Error, Result};
use crate::graph::{edge_of, Edge, MultiGraph, Vertex};
use crate::rng::WorkBudget;

/// `(d + 1)`-colouring for maximum degree at most `d + 1` whose
/// degree-`(d + 1)` vertices are pairwise more than 3 apart. Each such vertex
/// gives its lowest-id edge colour `d + 1`; the rest is Kőnig with `d` colours.
pub fn budgeted_color(b: &BipartiteGraph, d: u32) -> Result<EdgeColoring> {
    let g = b.graph();
    let top = d as usize + 1;
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) > top) {
        return Err(Error::DegreeTooLarge {
            vertex: v,
            degree: g.degree(v),
            max: top,
        });
    }
    let excess: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| g.degree(v) == top).collect();
    if let Some((u, v, distance)) = close_pair(g, &excess, 3) {
        return Err(Error::NotSparse {
            u,
            v,
            distance,
            radius: 3,
        });
    }
    let mut spare = vec![false; g.edge_count()];
    for &v in &excess {
        let e = g.darts(v).iter().map(|&x| edge_of(x)).min().unwrap();
        spare[e] = true;
    }
    let rest: Vec<Edge> = (0..g.edge_count()).filter(|&e| !spare[e]).collect();
    let mut colors = konig_color_subset(g, &rest, d)?;
    for e in 0..g.edge_count() {
        if spare[e] {
            colors[e] = Some(d + 1);
        }
    }
    Ok(EdgeColoring {
        colors,
        palette: d + 1,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FiniteColoringStats {
    pub components: usize,
    pub isomorphism_types: usize,
}

/// Canonical relabelling of a component: its code, the relabelled copy, and
/// the component edge behind each edge of the copy.
struct CanonicalComponent {
    code: Vec<u8>,
    graph: BipartiteGraph,
    /// component edge id at each canonical edge index
    edges: Vec<Edge>,
}

fn canonical_component(b: &BipartiteGraph, budget: WorkBudget) -> Result<CanonicalComponent> {
    let g = b.graph();
    let marked = MarkedGraph {
        colors: b.sides().iter().map(|&s| u32::from(s)).collect(),
        edges: g
            .edges()
            .map(|(_, a, bb)| MarkedEdge {
                a,
                b: bb,
                dir: Dir::None,
                color: 0,
            })
            .collect(),
    };
    let canon = canonical_form(&marked, budget)?;
    let mut position = vec![0; g.vertex_count()];
    for (p, &v) in canon.order.iter().enumerate() {
        position[v] = p;
    }
    let mut keyed: Vec<((usize, usize), Edge)> = g
        .edges()
        .map(|(e, u, v)| {
            let (p, q) = (position[u], position[v]);
            ((p.min(q), p.max(q)), e)
        })
        .collect();
    keyed.sort_unstable();
    let canon_edges: Vec<(Vertex, Vertex)> = keyed.iter().map(|&(k, _)| k).collect();
    let side = canon.order.iter().map(|&v| b.side(v)).collect();
    Ok(CanonicalComponent {
        code: canon.code,
        graph: BipartiteGraph::new(MultiGraph::build(g.vertex_count(), &canon_edges)?, side)?,
        edges: keyed.into_iter().map(|(_, e)| e).collect(),
    })
}

/// Colours each listed vertex set (a union of components of `b`) with
/// `colorer`, applied once per isomorphism type to a canonical copy and
/// transported to every component of that type.
pub(crate) fn color_components_with(
    b: &BipartiteGraph,
    components: &[Vec<Vertex>],
    palette: u32,
    budget: WorkBudget,
    colorer: impl Fn(&BipartiteGraph) -> Result<Vec<Option<u32>>>,
) -> Result<(EdgeColoring, FiniteColoringStats)> {
    let mut out = EdgeColoring::uncolored(b.graph().edge_count(), palette);
    let mut cache: BTreeMap<Vec<u8>, Vec<Option<u32>>> = BTreeMap::new();
    for comp in components {
        let (sub, _, emap) = b.induced(comp);
        let canon = canonical_component(&sub, budget)?;
        if !cache.contains_key(&canon.code) {
            let colors = colorer(&canon.graph)?;
            cache.insert(canon.code.clone(), colors);
        }
        let colors = &cache[&canon.code];
        for (i, &e) in canon.edges.iter().enumerate() {
            out.colors[emap[e]] = colors[i];
        }
    }
    Ok((
        out,
        FiniteColoringStats {
            components: components.len(),
            isomorphism_types: cache.len(),
        },
    ))
}

/// [`budgeted_color`] per component, consistent across isomorphic components.
pub fn color_finite_components(
    b: &BipartiteGraph,
    d: u32,
    budget: WorkBudget,
) -> Result<(EdgeColoring, FiniteColoringStats)> {
    let comps: Vec<Vec<Vertex>> = b
        .graph()
        .components()
        .into_iter()
        .filter(|c| c.len() > 1)
        .collect();
    color_components_with(b, &comps, d + 1, budget, |c| Ok(budgeted_color(c, d)?.colors))
}
