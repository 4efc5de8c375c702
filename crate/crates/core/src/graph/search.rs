use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};

use super::distance::exceeds;
use super::{Distance, EdgeId, FaultMask, FaultSet, Graph, NodeId};
use crate::error::{Error, Result};

/// A simple path, listed from its source to its target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Path {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeId>,
    pub weight: f64,
}

impl Path {
    pub fn hops(&self) -> usize {
        self.edges.len()
    }

    /// Nodes strictly between the endpoints.
    pub fn interior(&self) -> &[NodeId] {
        if self.nodes.len() <= 2 {
            &[]
        } else {
            &self.nodes[1..self.nodes.len() - 1]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapEntry {
    d: f64,
    node: u32,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on (distance, node id).
        other.d.total_cmp(&self.d).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

const NO_PARENT: (u32, u32) = (u32::MAX, u32::MAX);

/// Reusable Dijkstra state. Stamps avoid clearing per-node arrays between
/// queries, so repeated searches over one graph allocate nothing.
#[derive(Debug, Default)]
pub struct PathFinder {
    dist: Vec<f64>,
    parent: Vec<(u32, u32)>,
    reached: Vec<u32>,
    settled: Vec<u32>,
    stamp: u32,
    heap: BinaryHeap<HeapEntry>,
}

impl PathFinder {
    pub fn new() -> Self {
        Self::default()
    }

    fn reset(&mut self, n: usize) {
        if self.dist.len() < n {
            self.dist.resize(n, f64::INFINITY);
            self.parent.resize(n, NO_PARENT);
            self.reached.resize(n, 0);
            self.settled.resize(n, 0);
        }
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.reached.iter_mut().for_each(|s| *s = 0);
            self.settled.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        self.heap.clear();
    }

    /// Runs Dijkstra from `source` under `mask`, ignoring tentative
    /// distances above `bound`. Stops early once `target` is settled.
    fn run(&mut self, g: &Graph, source: NodeId, target: Option<NodeId>, mask: &FaultMask, bound: Option<f64>) {
        self.reset(g.n());
        let stamp = self.stamp;
        if mask.node_blocked(source) {
            return;
        }
        self.dist[source] = 0.0;
        self.parent[source] = NO_PARENT;
        self.reached[source] = stamp;
        self.heap.push(HeapEntry {
            d: 0.0,
            node: source as u32,
        });
        while let Some(HeapEntry { d, node }) = self.heap.pop() {
            let x = node as usize;
            if self.settled[x] == stamp {
                continue;
            }
            self.settled[x] = stamp;
            if Some(x) == target {
                return;
            }
            for a in g.adjacency(x) {
                let y = a.to as usize;
                let e = a.edge as usize;
                if mask.edge_blocked(e) || mask.node_blocked(y) || self.settled[y] == stamp {
                    continue;
                }
                let nd = d + g.edge(e).w;
                if let Some(b) = bound {
                    if exceeds(nd, b) {
                        continue;
                    }
                }
                if self.reached[y] != stamp || nd < self.dist[y] {
                    self.reached[y] = stamp;
                    self.dist[y] = nd;
                    self.parent[y] = (node, a.edge);
                    self.heap.push(HeapEntry { d: nd, node: a.to });
                }
            }
        }
    }

    /// Shortest `source -> target` path under `mask` whose weight does not
    /// exceed `bound` (when given). Ties resolve deterministically by node
    /// id through the heap order and the sorted adjacency lists.
    pub fn shortest_path(
        &mut self,
        g: &Graph,
        source: NodeId,
        target: NodeId,
        mask: &FaultMask,
        bound: Option<f64>,
    ) -> Option<Path> {
        if mask.node_blocked(target) {
            return None;
        }
        self.run(g, source, Some(target), mask, bound);
        if self.settled[target] != self.stamp {
            return None;
        }
        let mut nodes = vec![target];
        let mut edges = Vec::new();
        let mut x = target;
        while x != source {
            let (p, e) = self.parent[x];
            nodes.push(p as usize);
            edges.push(e as usize);
            x = p as usize;
        }
        nodes.reverse();
        edges.reverse();
        Some(Path {
            nodes,
            edges,
            weight: self.dist[target],
        })
    }

    pub fn distance(&mut self, g: &Graph, source: NodeId, target: NodeId, mask: &FaultMask) -> Distance {
        if mask.node_blocked(target) {
            return Distance::Unreachable;
        }
        self.run(g, source, Some(target), mask, None);
        if self.settled[target] == self.stamp {
            Distance::Finite(self.dist[target])
        } else {
            Distance::Unreachable
        }
    }

    /// Distances from `source` to every node, written into `out`.
    pub fn single_source(&mut self, g: &Graph, source: NodeId, mask: &FaultMask, out: &mut Vec<Distance>) {
        self.run(g, source, None, mask, None);
        out.clear();
        out.extend((0..g.n()).map(|x| {
            if self.settled[x] == self.stamp {
                Distance::Finite(self.dist[x])
            } else {
                Distance::Unreachable
            }
        }));
    }
}

/// Distances from `source` to all nodes of `g` under `mask`.
pub fn shortest_path_lengths(g: &Graph, source: NodeId, mask: &FaultMask) -> Vec<Distance> {
    let mut out = Vec::with_capacity(g.n());
    PathFinder::new().single_source(g, source, mask, &mut out);
    out
}

/// Weight of a shortest `u -> v` path in `g` with `faults` deleted.
pub fn dist(g: &Graph, u: NodeId, v: NodeId, faults: &FaultSet) -> Result<Distance> {
    g.check_node(u)?;
    g.check_node(v)?;
    if faults.contains_vertex(u) || faults.contains_vertex(v) {
        return Err(Error::InvalidQuery(format!(
            "endpoint of ({u}, {v}) is in the vertex fault set"
        )));
    }
    if u == v {
        return Ok(Distance::ZERO);
    }
    let mask = FaultMask::new(g, faults)?;
    Ok(PathFinder::new().distance(g, u, v, &mask))
}

/// Unweighted BFS path from `source` to `target` under `mask`.
pub fn hop_path(g: &Graph, source: NodeId, target: NodeId, mask: &FaultMask) -> Option<Vec<NodeId>> {
    if mask.node_blocked(source) || mask.node_blocked(target) {
        return None;
    }
    let mut parent = vec![usize::MAX; g.n()];
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::new();
    seen[source] = true;
    queue.push_back(source);
    while let Some(x) = queue.pop_front() {
        if x == target {
            let mut path = vec![target];
            let mut y = target;
            while y != source {
                y = parent[y];
                path.push(y);
            }
            path.reverse();
            return Some(path);
        }
        for a in g.adjacency(x) {
            let y = a.to as usize;
            if seen[y] || mask.edge_blocked(a.edge as usize) || mask.node_blocked(y) {
                continue;
            }
            seen[y] = true;
            parent[y] = x;
            queue.push_back(y);
        }
    }
    None
}
