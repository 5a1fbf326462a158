//! Weighted undirected graphs, Hamiltonian matrices, clusters and real pure states.
//!
//! Graphs are stored as a map from unordered vertex pairs `(u, v)` with
//! `u < v` to a positive weight. Matrices are assembled densely on demand.

mod cluster;
mod io;
mod model;
mod state;

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub use cluster::{detect_clusters, Cluster, WEIGHT_RTOL};
pub use io::GraphFile;
pub use model::HamiltonianModel;
pub use state::{pair_state, s_pair_state, vertex_state, RealPureState, StateKind};

/// A finite simple graph with positive edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), f64>,
    labels: Option<Vec<String>>,
}

#[inline]
fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl WeightedGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: BTreeMap::new(),
            labels: None,
        }
    }

    /// Builds a graph from `(u, v, w)` triples, rejecting loops, repeats and bad weights.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut g = Self::empty(n);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Unit-weight graph from vertex pairs.
    pub fn from_unweighted<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.edges.insert((u, v), 1.0);
            }
        }
        g
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 1..n {
            g.edges.insert((u - 1, u), 1.0);
        }
        g
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`. For `n < 3` this degenerates to a path.
    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.edges.insert((0, n - 1), 1.0);
        }
        g
    }

    /// `K_{m,n}` with parts `0..m` and `m..m+n`.
    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        let mut g = Self::empty(m + n);
        for u in 0..m {
            for v in m..m + n {
                g.edges.insert((u, v), 1.0);
            }
        }
        g
    }

    /// Star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Self::complete_bipartite(1, leaves)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LabelCount {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::BadWeight { u, v, w });
        }
        let k = key(u, v);
        if self.edges.contains_key(&k) {
            return Err(Error::DuplicateEdge(k.0, k.1));
        }
        self.edges.insert(k, w);
        Ok(())
    }

    /// Removes an edge, returning its weight if it was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Option<f64> {
        self.edges.remove(&key(u, v))
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.edges.get(&key(u, v)).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&key(u, v))
    }

    /// Edges as `(u, v, w)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    /// Neighbors of `u` with edge weights, sorted by vertex.
    pub fn neighbors(&self, u: usize) -> Vec<(usize, f64)> {
        let mut out: Vec<(usize, f64)> = self
            .edges
            .iter()
            .filter_map(|(&(a, b), &w)| {
                if a == u {
                    Some((b, w))
                } else if b == u {
                    Some((a, w))
                } else {
                    None
                }
            })
            .collect();
        out.sort_by_key(|&(v, _)| v);
        out
    }

    pub fn degree(&self, u: usize) -> f64 {
        self.edges
            .iter()
            .filter(|(&(a, b), _)| a == u || b == u)
            .map(|(_, &w)| w)
            .sum()
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.values().all(|&w| w == 1.0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in self.edges.keys() {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Dense Hamiltonian matrix for the given model.
    ///
    /// Each edge writes the same value into `(u, v)` and `(v, u)`, so the
    /// result is bitwise symmetric.
    pub fn matrix(&self, model: HamiltonianModel) -> DMatrix<f64> {
        let n = self.n;
        let mut m = DMatrix::zeros(n, n);
        let off = match model {
            HamiltonianModel::Laplacian => -1.0,
            _ => 1.0,
        };
        let with_degree = model.delta() == 1;
        for (&(u, v), &w) in &self.edges {
            m[(u, v)] = off * w;
            m[(v, u)] = off * w;
            if with_degree {
                m[(u, u)] += w;
                m[(v, v)] += w;
            }
        }
        m
    }
}

/// Dense `A`, `L = Δ - A` or `Q = Δ + A` of `g`.
pub fn build_matrix(g: &WeightedGraph, model: HamiltonianModel) -> DMatrix<f64> {
    g.matrix(model)
}
