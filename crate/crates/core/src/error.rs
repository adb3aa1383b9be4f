// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {edge} out of range for a graph with {m} edges")]
    EdgeOutOfRange { edge: usize, m: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),

    #[error("odd degree at vertices {vertices:?}")]
    OddDegree { vertices: Vec<usize> },

    #[error("graph is not regular: vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },

    #[error("invalid tree window: {0}")]
    InvalidWindow(String),

    #[error("vertex {0} is not an internal vertex of the window")]
    NotInternal(usize),

    #[error("{what} exceeded the work budget of {budget}")]
    BudgetExceeded { what: &'static str, budget: u64 },

    #[error("sample count must be positive")]
    ZeroSamples,

    #[error("radius mismatch: {left} vs {right}")]
    RadiusMismatch { left: usize, right: usize },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph has no edges")]
    EdgelessGraph,

    #[error("loop at edge {edge} is not allowed here")]
    LoopNotAllowed { edge: usize },

    #[error("edge {edge} joins two vertices on the same side")]
    NotBipartite { edge: usize },

    #[error("vertex {vertex} has degree {degree}, more than the allowed {max}")]
    DegreeTooLarge {
        vertex: usize,
        degree: usize,
        max: usize,
    },

    #[error("vertex {vertex} has degree {degree}, outside the allowed profile {allowed:?}")]
    DegreeProfile {
        vertex: usize,
        degree: usize,
        allowed: Vec<usize>,
    },

    #[error("vertices {u} and {v} are at distance {distance}, sparsity requires more than {radius}")]
    NotSparse {
        u: usize,
        v: usize,
        distance: usize,
        radius: usize,
    },

    #[error("orientation is not balanced at vertex {vertex} (in {indegree}, out {outdegree})")]
    Unbalanced {
        vertex: usize,
        indegree: usize,
        outdegree: usize,
    },

    #[error("orientation covers {got} edges, graph has {expected}")]
    OrientationSize { got: usize, expected: usize },

    #[error("invalid decoration: {0}")]
    InvalidDecoration(String),

    #[error("generator {generator} is not a permutation: {detail}")]
    NotPermutation { generator: usize, detail: String },

    #[error("invalid radius schedule: {0}")]
    InvalidSchedule(String),

    #[error("component is not connected")]
    Disconnected,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
