use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{edge_key, EdgeId, Graph, NodeId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaultMode {
    Vertex,
    Edge,
}

impl fmt::Display for FaultMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FaultMode::Vertex => "vertex",
            FaultMode::Edge => "edge",
        })
    }
}

impl std::str::FromStr for FaultMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "vertex" | "v" | "vft" => Ok(FaultMode::Vertex),
            "edge" | "e" | "eft" => Ok(FaultMode::Edge),
            _ => Err(format!("unknown fault mode {s:?} (expected vertex or edge)")),
        }
    }
}

/// A set of failed vertices or failed edges. Edges are unordered pairs
/// stored as `(min, max)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "mode", content = "members", rename_all = "lowercase")]
pub enum FaultSet {
    Vertex(BTreeSet<NodeId>),
    Edge(BTreeSet<(NodeId, NodeId)>),
}

impl FaultSet {
    pub fn empty(mode: FaultMode) -> Self {
        match mode {
            FaultMode::Vertex => FaultSet::Vertex(BTreeSet::new()),
            FaultMode::Edge => FaultSet::Edge(BTreeSet::new()),
        }
    }

    pub fn vertices<I: IntoIterator<Item = NodeId>>(members: I) -> Self {
        FaultSet::Vertex(members.into_iter().collect())
    }

    pub fn edges<I: IntoIterator<Item = (NodeId, NodeId)>>(members: I) -> Self {
        FaultSet::Edge(members.into_iter().map(|(a, b)| edge_key(a, b)).collect())
    }

    pub fn mode(&self) -> FaultMode {
        match self {
            FaultSet::Vertex(_) => FaultMode::Vertex,
            FaultSet::Edge(_) => FaultMode::Edge,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            FaultSet::Vertex(s) => s.len(),
            FaultSet::Edge(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains_vertex(&self, x: NodeId) -> bool {
        matches!(self, FaultSet::Vertex(s) if s.contains(&x))
    }

    pub fn contains_edge(&self, a: NodeId, b: NodeId) -> bool {
        matches!(self, FaultSet::Edge(s) if s.contains(&edge_key(a, b)))
    }

    /// Checks membership against `g`: vertices in range, edges present.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        match self {
            FaultSet::Vertex(s) => s.iter().try_for_each(|&x| g.check_node(x)),
            FaultSet::Edge(s) => s.iter().try_for_each(|&(a, b)| {
                if g.has_edge(a, b) {
                    Ok(())
                } else {
                    Err(Error::UnknownEdge(a, b))
                }
            }),
        }
    }
}

impl fmt::Display for FaultSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaultSet::Vertex(s) => write!(f, "vertices {s:?}"),
            FaultSet::Edge(s) => write!(f, "edges {s:?}"),
        }
    }
}

/// Query-time view of a fault set over one specific graph.
///
/// Edge faults that name a pair absent from the graph are ignored, which
/// lets a fault set drawn from `G` be applied to a subgraph `H`.
#[derive(Debug, Clone)]
pub struct FaultMask {
    node_blocked: Vec<bool>,
    edge_blocked: Vec<bool>,
}

impl FaultMask {
    pub fn none(g: &Graph) -> Self {
        FaultMask {
            node_blocked: vec![false; g.n()],
            edge_blocked: vec![false; g.m()],
        }
    }

    pub fn new(g: &Graph, faults: &FaultSet) -> Result<Self> {
        let mut mask = FaultMask::none(g);
        match faults {
            FaultSet::Vertex(s) => {
                for &x in s {
                    g.check_node(x)?;
                    mask.node_blocked[x] = true;
                }
            }
            FaultSet::Edge(s) => {
                for &(a, b) in s {
                    if let Some(e) = g.edge_id(a, b) {
                        mask.edge_blocked[e] = true;
                    }
                }
            }
        }
        Ok(mask)
    }

    #[inline]
    pub fn node_blocked(&self, x: NodeId) -> bool {
        self.node_blocked[x]
    }

    #[inline]
    pub fn edge_blocked(&self, e: EdgeId) -> bool {
        self.edge_blocked[e]
    }

    pub fn set_node(&mut self, x: NodeId, blocked: bool) {
        self.node_blocked[x] = blocked;
    }

    pub fn set_edge(&mut self, e: EdgeId, blocked: bool) {
        self.edge_blocked[e] = blocked;
    }
}
