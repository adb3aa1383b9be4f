// SPDX-License-Identifier: Apache-2.0

//! `(d + 1)`-colouring of `d`-regular bipartite graphs that uses the last
//! colour sparingly: peel matchings down to degree 2, colour small components
//! directly along the way, and finish with purple elimination.

use serde::Serialize;

use super::finite::{budgeted_color, color_components_with};
use super::konig::konig_color_subset;
use super::peel::peel_matching;
use super::purple::{purple_eliminate_with, PurpleOptions, PurpleReport, PURPLE};
use super::{close_pair, verify_proper, BipartiteGraph, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{edge_of, Edge, MultiGraph, Vertex};
use crate::rng::WorkBudget;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageReport {
    /// Maximum degree entering the stage; its matching gets this colour.
    pub max_degree: usize,
    pub radius: usize,
    pub finite_components: usize,
    pub finite_isomorphism_types: usize,
    /// Finite edges that ended up with colour `d + 1`.
    pub finite_spare_edges: usize,
    pub matching_size: usize,
    /// Largest `r` with the residual's maximum-degree vertices pairwise more
    /// than `r` apart.
    pub measured_sparsity: Option<usize>,
    /// Radius the next stage asks for.
    pub target_sparsity: usize,
    pub sparsity_met: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub palette: u32,
    pub class_sizes: Vec<usize>,
    /// `|C_{d+1}| / |V|`.
    pub density_last_color: f64,
    pub stage_reports: Vec<StageReport>,
    pub terminal: PurpleReport,
}

/// Colours a `d`-regular bipartite graph with `d + 1` colours. `r_schedule`
/// lists `r_2 <= r_3 <= ... <= r_d`.
pub fn almost_proper_color(
    b: &BipartiteGraph,
    r_schedule: &[usize],
    budget: WorkBudget,
) -> Result<(EdgeColoring, DensityReport)> {
    let g = b.graph();
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let d = g.regular_degree()?;
    if d < 2 {
        return Err(Error::InvalidSchedule(format!("degree {d} is below 2")));
    }
    if r_schedule.len() != d - 1 {
        return Err(Error::InvalidSchedule(format!(
            "expected {} radii r_2..r_{d}, got {}",
            d - 1,
            r_schedule.len()
        )));
    }
    if r_schedule.windows(2).any(|w| w[0] > w[1]) || r_schedule[0] == 0 {
        return Err(Error::InvalidSchedule("radii must be positive and ascending".into()));
    }
    let spare = d as u32 + 1;
    let mut out = EdgeColoring::uncolored(g.edge_count(), spare);
    // current graph and the original id of each of its edges
    let mut cur = b.clone();
    let mut ids: Vec<Edge> = (0..g.edge_count()).collect();
    let mut stages = Vec::new();
    for big in (3..=d).rev() {
        let radius = r_schedule[big - 2];
        let h = cur.graph();
        let small: Vec<Vec<Vertex>> = h
            .components()
            .into_iter()
            .filter(|c| c.len() > 1 && c.len() <= 10 * radius)
            .collect();
        let (fc, stats) = color_components_with(&cur, &small, spare, budget, |c| {
            stage_colorer(c, big as u32, spare)
        })?;
        let mut keep = vec![true; h.edge_count()];
        let mut finite_spare_edges = 0;
        for (e, col) in fc.colors.iter().enumerate() {
            if let Some(col) = *col {
                out.colors[ids[e]] = Some(col);
                keep[e] = false;
                finite_spare_edges += usize::from(col == spare);
            }
        }
        let (rest, map) = cur.edge_subgraph(&keep);
        let rest_ids: Vec<Edge> = map.iter().map(|&e| ids[e]).collect();
        if rest.graph().edge_count() == 0 {
            stages.push(StageReport {
                max_degree: big,
                radius,
                finite_components: stats.components,
                finite_isomorphism_types: stats.isomorphism_types,
                finite_spare_edges,
                matching_size: 0,
                measured_sparsity: None,
                target_sparsity: r_schedule[big - 3],
                sparsity_met: true,
            });
            cur = rest;
            ids = rest_ids;
            break;
        }
        let peel = peel_matching(&rest)?;
        for &e in &peel.matching {
            out.colors[rest_ids[e]] = Some(big as u32);
        }
        let target = r_schedule[big - 3];
        stages.push(StageReport {
            max_degree: big,
            radius,
            finite_components: stats.components,
            finite_isomorphism_types: stats.isomorphism_types,
            finite_spare_edges,
            matching_size: peel.matching.len(),
            measured_sparsity: peel.measured_sparsity,
            target_sparsity: target,
            sparsity_met: peel.measured_sparsity.is_none_or(|s| s + 1 >= target),
        });
        ids = peel.edge_map.iter().map(|&e| rest_ids[e]).collect();
        cur = peel.residual;
    }

    // terminal stage on the non-isolated part
    let live: Vec<Vertex> = (0..cur.graph().vertex_count())
        .filter(|&v| cur.graph().degree(v) > 0)
        .collect();
    let (term, _, emap) = cur.induced(&live);
    let opts = PurpleOptions {
        strict: false,
        budget,
        ..PurpleOptions::new(r_schedule[0])
    };
    let (pc, terminal) = purple_eliminate_with(&term, &opts)?;
    for (e, col) in pc.colors.iter().enumerate() {
        let col = col.ok_or_else(|| Error::Invariant(format!("terminal edge {e} left uncoloured")))?;
        out.colors[ids[emap[e]]] = Some(if col == PURPLE { spare } else { col });
    }
    if let Err(v) = verify_proper(g, &out) {
        return Err(Error::Invariant(format!("pipeline output is not proper: {v}")));
    }
    if !out.is_total() {
        return Err(Error::Invariant("pipeline left edges uncoloured".into()));
    }
    let report = DensityReport {
        palette: spare,
        class_sizes: out.class_sizes(),
        density_last_color: out.count(spare) as f64 / g.vertex_count() as f64,
        stage_reports: stages,
        terminal,
    };
    Ok((out, report))
}

/// Colours a small component whose degrees are at most `big`: with one spare
/// edge per degree-`big` vertex when those vertices are 3-sparse, else
/// exactly with `1..=big`.
fn stage_colorer(c: &BipartiteGraph, big: u32, spare: u32) -> Result<Vec<Option<u32>>> {
    let g = c.graph();
    let heavy: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| g.degree(v) == big as usize).collect();
    if close_pair(g, &heavy, 3).is_none() {
        let col = budgeted_color(c, big - 1)?;
        Ok(col
            .colors
            .into_iter()
            .map(|x| x.map(|x| if x == big { spare } else { x }))
            .collect())
    } else {
        let all: Vec<Edge> = (0..g.edge_count()).collect();
        konig_color_subset(g, &all, big)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncidenceReport {
    pub color: u32,
    pub class_size: usize,
    pub incident_vertices: usize,
    pub vertices: usize,
    /// Fraction of vertices touching the colour.
    pub fraction: f64,
    /// Class size per vertex.
    pub density: f64,
    /// `incident_vertices <= 2 * class_size`.
    pub bound_ok: bool,
    /// `fraction <= 4 * density`.
    pub fraction_ok: bool,
}

pub fn incidence_report(g: &MultiGraph, c: &EdgeColoring, color: u32) -> IncidenceReport {
    let n = g.vertex_count();
    let incident = (0..n)
        .filter(|&v| g.darts(v).iter().any(|&d| c.colors[edge_of(d)] == Some(color)))
        .count();
    let class_size = c.count(color);
    let (fraction, density) = if n == 0 {
        (0.0, 0.0)
    } else {
        (incident as f64 / n as f64, class_size as f64 / n as f64)
    };
    IncidenceReport {
        color,
        class_size,
        incident_vertices: incident,
        vertices: n,
        fraction,
        density,
        bound_ok: incident <= 2 * class_size,
        fraction_ok: fraction <= 4.0 * density,
    }
}
