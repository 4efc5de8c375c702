//! Undirected, positively weighted simple graphs with dense node ids.
//!
//! Nodes are `0..n`. Every edge gets a stable id (its insertion index) so
//! that fault masks and path certificates can refer to edges cheaply.
//! Graphs only grow: there is no edge removal, and fault sets are applied
//! at query time through a [`FaultMask`] instead of copying.

mod distance;
mod fault;
mod girth;
mod io;
mod search;

pub use distance::{exceeds, within, Distance, REL_TOL};
pub use fault::{FaultMask, FaultMode, FaultSet};
pub use girth::{girth, shortest_cycle};
pub use io::{parse_edge_list, parse_metadata, read_edge_list, to_edge_list, write_edge_list};
pub use search::{dist, hop_path, shortest_path_lengths, Path, PathFinder};

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type EdgeId = usize;

/// An undirected edge, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub w: f64,
}

impl Edge {
    pub fn new(a: NodeId, b: NodeId, w: f64) -> Self {
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        Edge { u, v, w }
    }

    pub fn key(&self) -> (NodeId, NodeId) {
        (self.u, self.v)
    }

    pub fn other(&self, x: NodeId) -> NodeId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    /// Greedy processing order: weight, then smaller endpoint, then larger endpoint.
    pub fn processing_cmp(&self, other: &Edge) -> Ordering {
        self.w
            .total_cmp(&other.w)
            .then(self.u.cmp(&other.u))
            .then(self.v.cmp(&other.v))
    }
}

/// Normalises an unordered pair so the smaller id comes first.
pub fn edge_key(a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Adjacent {
    pub to: u32,
    pub edge: u32,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Adjacent>>,
    edges: Vec<Edge>,
}

/// Serialised form: node count plus the edge list in id order.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(NodeId, NodeId, f64)>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges.iter().map(|e| (e.u, e.v, e.w)).collect(),
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::from_edges(r.n, r.edges)
    }
}

impl PartialEq for Graph {
    /// Two graphs are equal when they have the same nodes and the same
    /// weighted edge set, regardless of insertion order.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m() == other.m() && self.is_subgraph_of(other)
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, f64)>,
    {
        let mut g = Graph::new(n);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Unit-weight graph from an edge list.
    pub fn unweighted<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Self::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId, w: f64) -> Result<EdgeId> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::InvalidWeight { u, v, weight: w });
        }
        let pos_u = match self.adj[u].binary_search_by_key(&(v as u32), |a| a.to) {
            Ok(_) => {
                let (a, b) = edge_key(u, v);
                return Err(Error::DuplicateEdge(a, b));
            }
            Err(p) => p,
        };
        let id = self.edges.len();
        self.adj[u].insert(
            pos_u,
            Adjacent {
                to: v as u32,
                edge: id as u32,
            },
        );
        let pos_v = self.adj[v].binary_search_by_key(&(u as u32), |a| a.to).unwrap_err();
        self.adj[v].insert(
            pos_v,
            Adjacent {
                to: u as u32,
                edge: id as u32,
            },
        );
        self.edges.push(Edge::new(u, v, w));
        Ok(id)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order; the index is the edge id.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    /// Edges sorted by the greedy processing order.
    pub fn sorted_edges(&self) -> Vec<Edge> {
        let mut es = self.edges.clone();
        es.sort_by(Edge::processing_cmp);
        es
    }

    /// Neighbours of `u` in increasing id order, as `(neighbour, weight, edge id)`.
    pub fn neighbors(&self, u: NodeId) -> impl Iterator<Item = (NodeId, f64, EdgeId)> + '_ {
        self.adj[u].iter().map(move |a| {
            let e = a.edge as usize;
            (a.to as usize, self.edges[e].w, e)
        })
    }

    pub(crate) fn adjacency(&self, u: NodeId) -> &[Adjacent] {
        &self.adj[u]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adj[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn edge_id(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.adj[u]
            .binary_search_by_key(&(v as u32), |a| a.to)
            .ok()
            .map(|i| self.adj[u][i].edge as usize)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        self.edge_id(u, v).map(|e| self.edges[e].w)
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1.0)
    }

    pub fn total_weight_is_integral(&self) -> bool {
        self.edges.iter().all(|e| e.w.fract() == 0.0)
    }

    /// True when every edge of `self` is an edge of `other` with the same
    /// weight, and both have the same node count.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges.iter().all(|e| other.weight(e.u, e.v) == Some(e.w))
    }

    /// Copy of the graph with all weights set to 1.
    pub fn to_unit_weight(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for e in &self.edges {
            g.add_edge(e.u, e.v, 1.0).expect("edges of a valid graph");
        }
        g
    }

    /// Subgraph on the same node set keeping the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(&Edge) -> bool) -> Graph {
        let mut g = Graph::new(self.n);
        for e in self.edges.iter().filter(|e| keep(e)) {
            g.add_edge(e.u, e.v, e.w).expect("edges of a valid graph");
        }
        g
    }

    pub fn check_node(&self, u: NodeId) -> Result<()> {
        if u < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: u, n: self.n })
        }
    }
}
