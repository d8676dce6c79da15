//! Simple undirected graphs, their distances and power graphs.
//!
//! Every public constructor rejects disconnected inputs, so the rest of the
//! crate can assume a simple top eigenvalue and finite distances.

mod family;
mod io;

use std::collections::VecDeque;

pub use family::FamilySpec;
pub(crate) use family::binomial_f64;
pub use io::{parse_edge_list, parse_graph6, to_graph6};

use crate::bitset::BitSet;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    rows: Vec<BitSet>,
    label: Option<String>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges are merged; loops and
    /// out-of-range endpoints are rejected, as are disconnected graphs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let g = Self::from_edges_unchecked(n, edges)?;
        if !g.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        Ok(g)
    }

    pub(crate) fn from_edges_unchecked(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidFamilyParameters("graph needs at least one vertex".into()));
        }
        let mut rows = vec![BitSet::new(n); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::InvalidVertex(u));
            }
            if v >= n {
                return Err(Error::InvalidVertex(v));
            }
            if u == v {
                return Err(Error::InvalidVertex(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    fn from_rows(rows: Vec<BitSet>) -> Graph {
        let neighbors = rows.iter().map(|r| r.iter().collect()).collect();
        Graph {
            n: rows.len(),
            neighbors,
            rows,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.neighbors[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn is_connected(&self) -> bool {
        bfs(self, 0).iter().all(|&d| d != u32::MAX)
    }

    /// Row-major dense 0/1 adjacency matrix.
    pub fn adjacency_dense(&self) -> Vec<f64> {
        let mut a = vec![0.0; self.n * self.n];
        for u in 0..self.n {
            for &v in &self.neighbors[u] {
                a[u * self.n + v] = 1.0;
            }
        }
        a
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .field("label", &self.label)
            .finish()
    }
}

fn bfs(g: &Graph, source: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.n];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// All-pairs hop distances of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
    diameter: usize,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.n + v] as usize
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    /// Number of vertices at distance exactly `i` from `u`.
    pub fn sphere_size(&self, u: usize, i: usize) -> usize {
        (0..self.n).filter(|&v| self.get(u, v) == i).count()
    }
}

/// BFS from every vertex.
pub fn distance_matrix(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut dist = Vec::with_capacity(n * n);
    for u in 0..n {
        dist.extend(bfs(g, u));
    }
    let diameter = dist.iter().copied().max().unwrap_or(0) as usize;
    DistanceMatrix { n, dist, diameter }
}

/// The `k`-th power: same vertices, edges between vertices at distance
/// `1..=k`. For `k >= D` this is the complete graph.
pub fn power_graph(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidK {
            k,
            reason: "power graph needs k >= 1".into(),
        });
    }
    Ok(power_graph_from(&distance_matrix(g), k))
}

pub fn power_graph_from(dist: &DistanceMatrix, k: usize) -> Graph {
    let n = dist.n();
    let mut rows = vec![BitSet::new(n); n];
    for (u, row) in rows.iter_mut().enumerate() {
        for v in 0..n {
            let d = dist.get(u, v);
            if d >= 1 && d <= k {
                row.insert(v);
            }
        }
    }
    Graph::from_rows(rows)
}
