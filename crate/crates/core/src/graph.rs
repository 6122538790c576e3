//! Immutable edge-weighted graph.
//!
//! Vertices are stored 0-based. Everything that crosses the crate boundary
//! as text (parsers, reports, partition dumps) uses 1-based labels; the
//! conversion happens at that boundary and nowhere else.

use alloc::vec::Vec;
use core::fmt;

/// Errors raised while building a [`WeightedGraph`].
#[derive(Debug, Clone, PartialEq)]
pub enum GraphError {
    /// Endpoint index `>= n` (0-based).
    VertexOutOfRange {
        vertex: usize,
        n: usize,
    },
    SelfLoop {
        vertex: usize,
    },
    DuplicateEdge {
        u: usize,
        v: usize,
    },
    NonPositiveWeight {
        u: usize,
        v: usize,
        weight: f64,
    },
    /// Density is only defined for two or more vertices.
    TooFewVertices {
        n: usize,
    },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {} out of range 1..={}", vertex + 1, n)
            }
            GraphError::SelfLoop { vertex } => write!(f, "self-loop on vertex {}", vertex + 1),
            GraphError::DuplicateEdge { u, v } => {
                write!(f, "duplicate edge {{{}, {}}}", u + 1, v + 1)
            }
            GraphError::NonPositiveWeight { u, v, weight } => write!(
                f,
                "edge {{{}, {}}} has non-positive weight {}",
                u + 1,
                v + 1,
                weight
            ),
            GraphError::TooFewVertices { n } => {
                write!(f, "density needs at least 2 vertices, graph has {}", n)
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// An undirected edge with `u < v` (0-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Adjacency entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub vertex: usize,
    pub weight: f64,
}

/// Undirected simple graph with strictly positive edge weights.
///
/// Adjacency is stored in compressed form (one offset table and one flat
/// neighbor array), sorted by neighbor index within each row.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    neighbors: Vec<Neighbor>,
    w_total: f64,
    integral: bool,
}

/// How [`WeightedGraph::build`] treats a repeated unordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Duplicates {
    /// Keep the first occurrence, drop the rest.
    Collapse,
    Reject,
}

impl WeightedGraph {
    /// Builds a graph from 0-based `(u, v, weight)` triples, rejecting
    /// self-loops, out-of-range endpoints, non-positive weights and
    /// duplicate pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        Self::build(n, edges, Duplicates::Reject)
    }

    pub fn build<I>(n: usize, edges: I, duplicates: Duplicates) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut list: Vec<(Edge, usize)> = Vec::new();
        for (idx, (a, b, weight)) in edges.into_iter().enumerate() {
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop { vertex: a });
            }
            // `!(w > 0)` also rejects NaN.
            if !weight.is_finite() || weight <= 0.0 {
                return Err(GraphError::NonPositiveWeight { u: a, v: b, weight });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            list.push((Edge { u, v, weight }, idx));
        }

        // Stable on input position so `Collapse` keeps the first occurrence.
        list.sort_by_key(|(x, i)| (x.u, x.v, *i));
        let mut edges: Vec<Edge> = Vec::with_capacity(list.len());
        let mut first_seen: Vec<usize> = Vec::with_capacity(list.len());
        for (e, idx) in list {
            if let Some(last) = edges.last() {
                if last.u == e.u && last.v == e.v {
                    match duplicates {
                        Duplicates::Collapse => continue,
                        Duplicates::Reject => {
                            return Err(GraphError::DuplicateEdge { u: e.u, v: e.v })
                        }
                    }
                }
            }
            edges.push(e);
            first_seen.push(idx);
        }
        // Restore input order so edge lists survive a write/read cycle unchanged.
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by_key(|&i| first_seen[i]);
        let edges: Vec<Edge> = order.into_iter().map(|i| edges[i]).collect();

        Ok(Self::assemble(n, edges))
    }

    fn assemble(n: usize, edges: Vec<Edge>) -> Self {
        let mut degree = alloc::vec![0usize; n];
        for e in &edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            let last = *offsets.last().unwrap();
            offsets.push(last + d);
        }
        let mut fill = offsets.clone();
        let placeholder = Neighbor {
            vertex: usize::MAX,
            weight: 0.0,
        };
        let mut neighbors = alloc::vec![placeholder; 2 * edges.len()];
        let mut w_total = 0.0;
        let mut integral = true;
        for e in &edges {
            neighbors[fill[e.u]] = Neighbor {
                vertex: e.v,
                weight: e.weight,
            };
            fill[e.u] += 1;
            neighbors[fill[e.v]] = Neighbor {
                vertex: e.u,
                weight: e.weight,
            };
            fill[e.v] += 1;
            w_total += e.weight;
            integral &= is_integer(e.weight);
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_by_key(|nb| nb.vertex);
        }
        // Integer sums above 2^53 are no longer exact in f64.
        integral &= w_total <= 9_007_199_254_740_992.0;
        WeightedGraph {
            n,
            edges,
            offsets,
            neighbors,
            w_total,
            integral,
        }
    }

    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Self {
        Self::assemble(n, Vec::new())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[Neighbor] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Weight of edge `{u, v}`, if present.
    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        let row = self.neighbors(u);
        row.binary_search_by_key(&v, |nb| nb.vertex)
            .ok()
            .map(|i| row[i].weight)
    }

    /// Sum of all edge weights.
    #[inline]
    pub fn w_total(&self) -> f64 {
        self.w_total
    }

    /// True when every weight is an integer and the total is exactly
    /// representable; objective comparisons are then exact.
    #[inline]
    pub fn is_integral(&self) -> bool {
        self.integral
    }

    /// `2|E| / (|V|(|V|-1))`.
    pub fn density(&self) -> Result<f64, GraphError> {
        if self.n < 2 {
            return Err(GraphError::TooFewVertices { n: self.n });
        }
        let n = self.n as f64;
        Ok(2.0 * self.edges.len() as f64 / (n * (n - 1.0)))
    }

    /// Replaces every weight by `((i + j) mod 200) + 1` on 1-based labels,
    /// the synthetic rule used for unweighted benchmark graphs.
    pub fn with_dimacs_weights(&self) -> WeightedGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                u: e.u,
                v: e.v,
                weight: dimacs_weight(e.u + 1, e.v + 1),
            })
            .collect();
        Self::assemble(self.n, edges)
    }
}

/// `((i + j) mod 200) + 1` for 1-based vertex labels `i`, `j`.
pub fn dimacs_weight(i: usize, j: usize) -> f64 {
    (((i + j) % 200) + 1) as f64
}

fn is_integer(x: f64) -> bool {
    x.is_finite() && x == (x as i64) as f64 && (x as i64) < (1i64 << 53)
}
