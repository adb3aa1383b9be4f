// SPDX-License-Identifier: Apache-2.0

//! Schreier decorations: an orientation plus a colouring by `1..=d` giving
//! every vertex one outgoing and one incoming edge of each colour.
//!
//! Generator `s` (colour `s + 1`) acts on vertices by following the unique
//! outgoing edge of that colour. A loop is one outgoing and one incoming edge
//! of its colour, so its vertex is a fixed point.

use std::fmt::{self, Write as _};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::coloring::{double_cover, konig_color_ordered, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{edge_of, Edge, MultiGraph, Vertex};
use crate::orientation::{eulerian_orientation, Orientation};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierDecoration {
    graph: MultiGraph,
    orientation: Orientation,
    coloring: EdgeColoring,
}

/// First defect found by [`SchreierDecoration::verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DecorationViolation {
    SizeMismatch { what: &'static str, got: usize, expected: usize },
    Uncolored { edge: Edge },
    OutOfPalette { edge: Edge, color: u32 },
    OutEdges { vertex: Vertex, color: u32, count: usize },
    InEdges { vertex: Vertex, color: u32, count: usize },
    NotBijective { color: u32, image: Vertex },
}

impl fmt::Display for DecorationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DecorationViolation::SizeMismatch { what, got, expected } => {
                write!(f, "{what} covers {got} edges, graph has {expected}")
            }
            DecorationViolation::Uncolored { edge } => write!(f, "edge {edge} has no colour"),
            DecorationViolation::OutOfPalette { edge, color } => {
                write!(f, "edge {edge} has colour {color} outside the palette")
            }
            DecorationViolation::OutEdges { vertex, color, count } => {
                write!(f, "vertex {vertex} has {count} outgoing edges of colour {color}")
            }
            DecorationViolation::InEdges { vertex, color, count } => {
                write!(f, "vertex {vertex} has {count} incoming edges of colour {color}")
            }
            DecorationViolation::NotBijective { color, image } => {
                write!(f, "generator {color} hits vertex {image} twice")
            }
        }
    }
}

impl SchreierDecoration {
    /// Bundles the parts without checking them; see [`Self::verify`].
    pub fn from_parts(graph: MultiGraph, orientation: Orientation, coloring: EdgeColoring) -> Self {
        SchreierDecoration {
            graph,
            orientation,
            coloring,
        }
    }

    pub fn d(&self) -> u32 {
        self.coloring.palette
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn coloring(&self) -> &EdgeColoring {
        &self.coloring
    }

    pub fn colors(&self) -> &[Option<u32>] {
        &self.coloring.colors
    }

    pub fn verify(&self) -> std::result::Result<(), DecorationViolation> {
        let g = &self.graph;
        let m = g.edge_count();
        if self.orientation.edge_count() != m {
            return Err(DecorationViolation::SizeMismatch {
                what: "orientation",
                got: self.orientation.edge_count(),
                expected: m,
            });
        }
        if self.coloring.colors.len() != m {
            return Err(DecorationViolation::SizeMismatch {
                what: "colouring",
                got: self.coloring.colors.len(),
                expected: m,
            });
        }
        let d = self.d() as usize;
        let n = g.vertex_count();
        let mut outs = vec![0usize; n * d];
        let mut ins = vec![0usize; n * d];
        for e in 0..m {
            let c = self.coloring.colors[e].ok_or(DecorationViolation::Uncolored { edge: e })?;
            if c == 0 || c as usize > d {
                return Err(DecorationViolation::OutOfPalette { edge: e, color: c });
            }
            let s = c as usize - 1;
            outs[self.orientation.tail(g, e) * d + s] += 1;
            ins[self.orientation.head(g, e) * d + s] += 1;
        }
        for v in 0..n {
            for s in 0..d {
                let color = s as u32 + 1;
                if outs[v * d + s] != 1 {
                    return Err(DecorationViolation::OutEdges {
                        vertex: v,
                        color,
                        count: outs[v * d + s],
                    });
                }
                if ins[v * d + s] != 1 {
                    return Err(DecorationViolation::InEdges {
                        vertex: v,
                        color,
                        count: ins[v * d + s],
                    });
                }
            }
        }
        for (s, perm) in self.raw_sigma().iter().enumerate() {
            let mut hit = vec![false; n];
            for &w in perm {
                if std::mem::replace(&mut hit[w], true) {
                    return Err(DecorationViolation::NotBijective {
                        color: s as u32 + 1,
                        image: w,
                    });
                }
            }
        }
        Ok(())
    }

    /// `sigma[s][u]`: head of the colour-`s + 1` edge leaving `u` (`u` itself
    /// if there is none).
    fn raw_sigma(&self) -> Vec<Vec<Vertex>> {
        let g = &self.graph;
        let d = self.d() as usize;
        let mut sigma: Vec<Vec<Vertex>> = (0..d).map(|_| (0..g.vertex_count()).collect()).collect();
        for e in 0..g.edge_count() {
            if let Some(c) = self.coloring.colors[e] {
                if let Some(p) = sigma.get_mut(c as usize - 1) {
                    p[self.orientation.tail(g, e)] = self.orientation.head(g, e);
                }
            }
        }
        sigma
    }

    /// The `d` generator permutations of a valid decoration.
    pub fn sigma(&self) -> Result<Vec<Vec<Vertex>>> {
        self.verify().map_err(|v| Error::InvalidDecoration(v.to_string()))?;
        Ok(self.raw_sigma())
    }

    pub fn to_json(&self) -> String {
        let g = &self.graph;
        let file = DecorationFile {
            n: g.vertex_count(),
            d: self.d(),
            edges: g
                .edges()
                .map(|(e, u, v)| DecoratedEdge {
                    u,
                    v,
                    head: self.orientation.head(g, e),
                    color: self.coloring.colors[e].unwrap_or(0),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("plain data serializes")
    }

    /// Reads the JSON decoration format; the result is verified.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: DecorationFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let pairs: Vec<(Vertex, Vertex)> = file.edges.iter().map(|x| (x.u, x.v)).collect();
        let graph = MultiGraph::build(file.n, &pairs)?;
        let mut heads = Vec::with_capacity(pairs.len());
        for (e, x) in file.edges.iter().enumerate() {
            let dart = if x.head == x.v {
                2 * e + 1
            } else if x.head == x.u {
                2 * e
            } else {
                return Err(Error::InvalidDecoration(format!(
                    "edge {e}: head {} is not an endpoint",
                    x.head
                )));
            };
            heads.push(dart);
        }
        let colors = file.edges.iter().map(|x| (x.color != 0).then_some(x.color)).collect();
        let s = SchreierDecoration {
            graph,
            orientation: Orientation::from_heads(heads)?,
            coloring: EdgeColoring {
                colors,
                palette: file.d,
            },
        };
        s.verify().map_err(|v| Error::InvalidDecoration(v.to_string()))?;
        Ok(s)
    }

    /// `d` lines, line `s` listing the images of `0..n` under generator `s`.
    pub fn to_permutation_text(&self) -> Result<String> {
        let mut out = String::new();
        for p in self.sigma()? {
            let line: Vec<String> = p.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        Ok(out)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct DecorationFile {
    n: usize,
    d: u32,
    edges: Vec<DecoratedEdge>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DecoratedEdge {
    u: Vertex,
    v: Vertex,
    head: Vertex,
    color: u32,
}

/// Decorates a `2d`-regular multigraph: Euler orientation, Kőnig colouring of
/// the oriented double cover in a seed-shuffled edge order, colours pulled
/// back along the cover map.
pub fn schreier_decorate(g: &MultiGraph, seed: u64) -> Result<SchreierDecoration> {
    let odd = g.odd_vertices();
    if !odd.is_empty() {
        return Err(Error::OddDegree { vertices: odd });
    }
    let degree = g.regular_degree()?;
    let d = (degree / 2) as u32;
    let orientation = eulerian_orientation(g)?;
    let dc = double_cover(g, &orientation)?;
    if let Some(i) = dc.imbalance {
        return Err(i.into());
    }
    let mut order: Vec<Edge> = (0..g.edge_count()).map(|e| dc.map[e]).collect();
    order.shuffle(&mut rng::seeded(seed));
    let cover_coloring = konig_color_ordered(&dc.cover, &order)?;
    let colors = (0..g.edge_count()).map(|e| cover_coloring.colors[dc.map[e]]).collect();
    let s = SchreierDecoration {
        graph: g.clone(),
        orientation,
        coloring: EdgeColoring { colors, palette: d },
    };
    s.verify()
        .map_err(|v| Error::Invariant(format!("decoration failed verification: {v}")))?;
    Ok(s)
}

pub fn verify_decoration(s: &SchreierDecoration) -> std::result::Result<(), DecorationViolation> {
    s.verify()
}

/// Schreier graph of `d` permutations of `0..n`: edge `u -> sigma[s][u]` with
/// colour `s + 1`, edges numbered generator by generator.
pub fn from_permutations(sigma: &[Vec<Vertex>]) -> Result<SchreierDecoration> {
    let n = sigma.first().map_or(0, Vec::len);
    for (s, p) in sigma.iter().enumerate() {
        if p.len() != n {
            return Err(Error::NotPermutation {
                generator: s,
                detail: format!("length {} differs from {n}", p.len()),
            });
        }
        let mut hit = vec![false; n];
        for (u, &w) in p.iter().enumerate() {
            if w >= n {
                return Err(Error::NotPermutation {
                    generator: s,
                    detail: format!("image {w} of {u} is out of range"),
                });
            }
            if std::mem::replace(&mut hit[w], true) {
                return Err(Error::NotPermutation {
                    generator: s,
                    detail: format!("{w} is hit twice"),
                });
            }
        }
    }
    let pairs: Vec<(Vertex, Vertex)> = sigma
        .iter()
        .flat_map(|p| p.iter().enumerate().map(|(u, &w)| (u, w)))
        .collect();
    let graph = MultiGraph::build(n, &pairs)?;
    let heads = (0..pairs.len()).map(|e| 2 * e + 1).collect();
    let colors = (0..pairs.len()).map(|e| Some((e / n.max(1)) as u32 + 1)).collect();
    Ok(SchreierDecoration {
        graph,
        orientation: Orientation::from_heads(heads)?,
        coloring: EdgeColoring {
            colors,
            palette: sigma.len() as u32,
        },
    })
}

/// Parses `d` lines of `n` images each.
pub fn parse_permutations(text: &str) -> Result<Vec<Vec<Vertex>>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|e| Error::Parse {
                        line: i + 1,
                        message: format!("{t:?}: {e}"),
                    })
                })
                .collect()
        })
        .collect()
}

/// The underlying multigraph.
pub fn forget(s: &SchreierDecoration) -> MultiGraph {
    s.graph.clone()
}

/// Edges of colour `color` as `(tail, head)` pairs, in edge order.
pub fn colored_arcs(s: &SchreierDecoration, color: u32) -> Vec<(Vertex, Vertex)> {
    let g = &s.graph;
    (0..g.edge_count())
        .filter(|&e| s.coloring.colors[e] == Some(color))
        .map(|e| (s.orientation.tail(g, e), s.orientation.head(g, e)))
        .collect()
}

/// Outgoing edge of colour `color` at `v`.
pub fn out_edge(s: &SchreierDecoration, v: Vertex, color: u32) -> Option<Edge> {
    let g = &s.graph;
    g.darts(v)
        .iter()
        .map(|&d| edge_of(d))
        .find(|&e| s.coloring.colors[e] == Some(color) && s.orientation.tail(g, e) == v)
}
