//! Benchmark topologies and their structural features.

mod edgelist;
mod features;
mod generators;

use std::collections::BTreeSet;

use crate::{Error, Result};

pub use edgelist::{parse_edge_list, to_edge_list};
pub use features::{degree_histogram, graph_features, DegreeHistogram, GraphFeatures};
pub use generators::{
    add_jumpers, make_ba, make_hypercube, make_star, make_tree, make_ws, MAX_HYPERCUBE_DIM,
    MAX_VERTICES,
};

/// Undirected simple graph on dense vertex ids `0..n`.
///
/// Adjacency lists are kept sorted; a `Graph` cannot be mutated once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Build from an edge iterator, rejecting self-loops, duplicates and
    /// out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n)?;
        for (a, c) in edges {
            b.try_add_edge(a, c)?;
        }
        Ok(b.build())
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Self> {
        Ok(GraphBuilder::new(n)?.build())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.adj.len() && self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(low, high)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    pub(crate) fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            adj: self.adj.iter().map(|ns| ns.iter().copied().collect()).collect(),
            edge_count: self.edge_count,
        }
    }
}

/// Mutable adjacency used while a generator is running.
#[derive(Clone, Debug)]
pub(crate) struct GraphBuilder {
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl GraphBuilder {
    pub(crate) fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("graph needs at least one vertex"));
        }
        if n > MAX_VERTICES {
            return Err(Error::param(format!(
                "{n} vertices exceeds the cap of {MAX_VERTICES}"
            )));
        }
        Ok(Self { adj: vec![BTreeSet::new(); n], edge_count: 0 })
    }

    pub(crate) fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub(crate) fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub(crate) fn try_add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        let n = self.adj.len();
        if a >= n || b >= n {
            return Err(Error::input(format!("edge ({a}, {b}) references a vertex >= {n}")));
        }
        if a == b {
            return Err(Error::input(format!("self-loop at vertex {a}")));
        }
        if self.has_edge(a, b) {
            return Err(Error::input(format!("duplicate edge ({a}, {b})")));
        }
        self.insert(a, b);
        Ok(())
    }

    /// Caller guarantees `a != b`, both in range, edge absent.
    pub(crate) fn insert(&mut self, a: usize, b: usize) {
        debug_assert!(a != b && !self.has_edge(a, b));
        self.adj[a].insert(b);
        self.adj[b].insert(a);
        self.edge_count += 1;
    }

    pub(crate) fn remove(&mut self, a: usize, b: usize) {
        if self.adj[a].remove(&b) {
            self.adj[b].remove(&a);
            self.edge_count -= 1;
        }
    }

    pub(crate) fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub(crate) fn build(self) -> Graph {
        Graph {
            adj: self.adj.into_iter().map(|s| s.into_iter().collect()).collect(),
            edge_count: self.edge_count,
        }
    }
}
