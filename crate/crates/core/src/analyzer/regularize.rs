use std::fmt;

use serde::{Deserialize, Serialize};

use super::DegreeStats;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeId};

/// Edge class kept at one step: inside the low-degree side `A`, across,
/// or inside the high-degree side `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegularizeCase {
    A,
    AB,
    B,
}

impl fmt::Display for RegularizeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegularizeCase::A => "A",
            RegularizeCase::AB => "AB",
            RegularizeCase::B => "B",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseStep {
    pub case: RegularizeCase,
    pub nodes_before: usize,
    pub edges_before: usize,
    pub average_degree: f64,
    pub a_nodes: usize,
    pub b_nodes: usize,
    pub e_a: usize,
    pub e_ab: usize,
    pub e_b: usize,
    pub nodes_after: usize,
    pub edges_after: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Regularized {
    /// Output graph on `kept.len()` nodes; node `i` is input node `kept[i]`.
    pub graph: Graph,
    pub kept: Vec<NodeId>,
    pub stats: DegreeStats,
    pub cases: Vec<CaseStep>,
    /// Fraction of input edges that survive.
    pub edge_retention: f64,
}

impl Regularized {
    pub fn case_sequence(&self) -> Vec<RegularizeCase> {
        self.cases.iter().map(|s| s.case).collect()
    }
}

/// `12 * 9^k`.
pub fn default_c(k: usize) -> f64 {
    12.0 * 9f64.powi(k as i32)
}

fn degrees(n: usize, edges: &[Edge]) -> Vec<usize> {
    let mut d = vec![0; n];
    for e in edges {
        d[e.u] += 1;
        d[e.v] += 1;
    }
    d
}

fn failure(reason: impl Into<String>, cases: &[CaseStep]) -> Error {
    Error::Regularization {
        reason: reason.into(),
        cases: cases.iter().map(|s| s.case.to_string()).collect(),
    }
}

/// Degree-banding transform. Each step splits nodes at `c` times the
/// current average degree and keeps the largest edge class (ties:
/// `A`, then `AB`, then `B`). Class `A` ends the procedure after
/// repeatedly deleting nodes of degree at most a quarter of the class's
/// average degree; the other classes shrink the node set and repeat.
pub fn regularize(g: &Graph, c: f64) -> Result<Regularized> {
    if !(c > 1.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("c must be a finite real > 1, got {c}")));
    }
    let n = g.n();
    let mut alive = vec![true; n];
    let mut edges: Vec<Edge> = g.edges().to_vec();
    let mut cases = Vec::new();
    loop {
        let live = alive.iter().filter(|&&a| a).count();
        if live == 0 || edges.is_empty() {
            return Err(failure("graph became empty", &cases));
        }
        let deg = degrees(n, &edges);
        let avg = 2.0 * edges.len() as f64 / live as f64;
        let in_a: Vec<bool> = (0..n).map(|x| alive[x] && deg[x] as f64 <= c * avg).collect();
        let (mut e_a, mut e_ab, mut e_b) = (Vec::new(), Vec::new(), Vec::new());
        for &e in &edges {
            match (in_a[e.u], in_a[e.v]) {
                (true, true) => e_a.push(e),
                (false, false) => e_b.push(e),
                _ => e_ab.push(e),
            }
        }
        let a_nodes = in_a.iter().filter(|&&a| a).count();
        let mut step = CaseStep {
            case: RegularizeCase::A,
            nodes_before: live,
            edges_before: edges.len(),
            average_degree: avg,
            a_nodes,
            b_nodes: live - a_nodes,
            e_a: e_a.len(),
            e_ab: e_ab.len(),
            e_b: e_b.len(),
            nodes_after: 0,
            edges_after: 0,
        };
        if e_a.len() >= e_ab.len() && e_a.len() >= e_b.len() {
            alive.copy_from_slice(&in_a);
            edges = e_a;
            let threshold = 2.0 * edges.len() as f64 / a_nodes as f64 / 4.0;
            loop {
                let deg = degrees(n, &edges);
                let doomed: Vec<NodeId> = (0..n).filter(|&x| alive[x] && deg[x] as f64 <= threshold).collect();
                if doomed.is_empty() {
                    break;
                }
                for x in doomed {
                    alive[x] = false;
                }
                edges.retain(|e| alive[e.u] && alive[e.v]);
            }
            step.nodes_after = alive.iter().filter(|&&a| a).count();
            step.edges_after = edges.len();
            cases.push(step);
            if edges.is_empty() {
                return Err(failure("case A deleted every node", &cases));
            }
            break;
        }
        if e_ab.len() >= e_b.len() {
            step.case = RegularizeCase::AB;
            edges = e_ab;
            let deg = degrees(n, &edges);
            let mut a_side: Vec<NodeId> = (0..n).filter(|&x| in_a[x]).collect();
            a_side.sort_by(|&x, &y| deg[y].cmp(&deg[x]).then(x.cmp(&y)));
            for &x in &a_side[step.b_nodes.min(a_side.len())..] {
                alive[x] = false;
            }
            edges.retain(|e| alive[e.u] && alive[e.v]);
        } else {
            step.case = RegularizeCase::B;
            edges = e_b;
            let deg = degrees(n, &edges);
            for x in 0..n {
                alive[x] = alive[x] && !in_a[x] && deg[x] > 0;
            }
        }
        step.nodes_after = alive.iter().filter(|&&a| a).count();
        step.edges_after = edges.len();
        let stalled = step.nodes_after == step.nodes_before && step.edges_after == step.edges_before;
        cases.push(step);
        if stalled {
            return Err(failure("no progress; c is too small for this instance", &cases));
        }
    }
    let kept: Vec<NodeId> = (0..n).filter(|&x| alive[x]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &x) in kept.iter().enumerate() {
        index[x] = i;
    }
    let mut out = Graph::new(kept.len());
    for e in &edges {
        out.add_edge(index[e.u], index[e.v], e.w)?;
    }
    Ok(Regularized {
        stats: DegreeStats::of(&out).with_band(),
        edge_retention: out.m() as f64 / g.m() as f64,
        graph: out,
        kept,
        cases,
    })
}
