//! The greedy fault-tolerant spanner.
//!
//! Edges are scanned in ascending weight (ties by smaller then larger
//! endpoint). An edge `(u, v)` joins `H` iff the pair is not
//! `(2k - 1, f)` protected in the current `H`, which never contains the
//! edge under consideration. The result carries a trace with one record per
//! input edge so that any third party can replay every decision.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, FaultMode, FaultSet, Graph, Path};
use crate::protection::{is_protected, ProtectionQuery, ProtectionResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpannerParams {
    pub f: usize,
    pub k: usize,
    pub mode: FaultMode,
}

impl SpannerParams {
    pub fn new(f: usize, k: usize, mode: FaultMode) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("stretch parameter k must be at least 1".into()));
        }
        Ok(SpannerParams { f, k, mode })
    }

    /// The stretch `2k - 1`.
    pub fn stretch(&self) -> f64 {
        (2 * self.k - 1) as f64
    }

    fn query_for(&self, e: &Edge) -> Result<ProtectionQuery> {
        ProtectionQuery::new(e.u, e.v, self.stretch() * e.w, self.f, self.mode)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeDecision {
    Added,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub edge: Edge,
    pub decision: EdgeDecision,
    /// Fault set showing the pair was unprotected before insertion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<FaultSet>,
    /// Disjoint short paths proving protection, when the fast check found them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<Path>>,
}

impl TraceRecord {
    fn from_result(edge: Edge, r: ProtectionResult) -> Self {
        if r.is_protected() {
            TraceRecord {
                edge,
                decision: EdgeDecision::Skipped,
                witness: None,
                certificate: r.certificate,
            }
        } else {
            TraceRecord {
                edge,
                decision: EdgeDecision::Added,
                witness: r.witness,
                certificate: None,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpannerResult {
    pub h: Graph,
    pub trace: Vec<TraceRecord>,
}

impl SpannerResult {
    pub fn added(&self) -> impl Iterator<Item = &TraceRecord> {
        self.trace.iter().filter(|r| r.decision == EdgeDecision::Added)
    }
}

pub fn greedy_ft_spanner(g: &Graph, p: &SpannerParams) -> Result<SpannerResult> {
    let p = SpannerParams::new(p.f, p.k, p.mode)?;
    let mut h = Graph::new(g.n());
    let mut trace = Vec::with_capacity(g.m());
    for e in g.sorted_edges() {
        let r = is_protected(&h, &p.query_for(&e)?)?;
        if !r.is_protected() {
            h.add_edge(e.u, e.v, e.w)?;
        }
        trace.push(TraceRecord::from_result(e, r));
    }
    Ok(SpannerResult { h, trace })
}

/// Why a replayed trace diverged.
#[derive(Debug, Clone, PartialEq)]
pub enum ReplayOutcome {
    Consistent,
    LengthMismatch { expected: usize, found: usize },
    OrderMismatch { index: usize },
    DecisionMismatch { index: usize },
    SpannerMismatch,
}

/// Re-derives every decision of `r` against `g`.
///
/// Errors when a record names an edge that `g` does not have.
pub fn replay_trace_detailed(g: &Graph, r: &SpannerResult, p: &SpannerParams) -> Result<ReplayOutcome> {
    for (index, rec) in r.trace.iter().enumerate() {
        let e = rec.edge;
        if g.weight(e.u, e.v) != Some(e.w) || e.u > e.v {
            return Err(Error::TraceUnknownEdge { index, u: e.u, v: e.v });
        }
    }
    if r.trace.len() != g.m() {
        return Ok(ReplayOutcome::LengthMismatch {
            expected: g.m(),
            found: r.trace.len(),
        });
    }
    let order = g.sorted_edges();
    if let Some(index) = order
        .iter()
        .zip(&r.trace)
        .position(|(a, rec)| a.key() != rec.edge.key())
    {
        return Ok(ReplayOutcome::OrderMismatch { index });
    }
    let p = SpannerParams::new(p.f, p.k, p.mode)?;
    let mut h = Graph::new(g.n());
    for (index, rec) in r.trace.iter().enumerate() {
        let res = is_protected(&h, &p.query_for(&rec.edge)?)?;
        if TraceRecord::from_result(rec.edge, res) != *rec {
            return Ok(ReplayOutcome::DecisionMismatch { index });
        }
        if rec.decision == EdgeDecision::Added {
            h.add_edge(rec.edge.u, rec.edge.v, rec.edge.w)?;
        }
    }
    if h != r.h {
        return Ok(ReplayOutcome::SpannerMismatch);
    }
    Ok(ReplayOutcome::Consistent)
}

pub fn replay_trace(g: &Graph, r: &SpannerResult, p: &SpannerParams) -> Result<bool> {
    Ok(replay_trace_detailed(g, r, p)? == ReplayOutcome::Consistent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{dist, girth};

    fn c4() -> Graph {
        Graph::unweighted(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn four_cycle_without_faults_drops_the_last_edge() {
        let p = SpannerParams::new(0, 2, FaultMode::Vertex).unwrap();
        let r = greedy_ft_spanner(&c4(), &p).unwrap();
        let order: Vec<_> = r.trace.iter().map(|t| (t.edge.key(), t.decision)).collect();
        use EdgeDecision::*;
        assert_eq!(
            order,
            vec![((0, 1), Added), ((0, 3), Added), ((1, 2), Added), ((2, 3), Skipped)]
        );
        assert_eq!(r.h.m(), 3);
        assert_eq!(girth(&r.h), None);
    }

    #[test]
    fn four_cycle_with_one_fault_keeps_everything() {
        for mode in [FaultMode::Vertex, FaultMode::Edge] {
            let p = SpannerParams::new(1, 2, mode).unwrap();
            let r = greedy_ft_spanner(&c4(), &p).unwrap();
            assert_eq!(r.h.m(), 4);
            let last = r.trace.last().unwrap();
            assert_eq!(last.edge.key(), (2, 3));
            let w = last.witness.as_ref().unwrap();
            assert_eq!(w.len(), 1);
            if mode == FaultMode::Vertex {
                assert_eq!(*w, FaultSet::vertices([1]));
            }
        }
    }

    #[test]
    fn witnesses_replay_on_the_pre_insertion_graph() {
        let g = Graph::from_edges(
            5,
            [
                (0, 1, 1.0),
                (1, 2, 1.0),
                (2, 0, 2.0),
                (2, 3, 1.0),
                (3, 4, 3.0),
                (4, 0, 1.0),
                (1, 3, 2.0),
            ],
        )
        .unwrap();
        for mode in [FaultMode::Vertex, FaultMode::Edge] {
            let p = SpannerParams::new(1, 2, mode).unwrap();
            let r = greedy_ft_spanner(&g, &p).unwrap();
            let mut pre = Graph::new(g.n());
            for rec in &r.trace {
                if let Some(w) = &rec.witness {
                    assert!(w.len() <= p.f);
                    let d = dist(&pre, rec.edge.u, rec.edge.v, w).unwrap();
                    assert!(d.exceeds(p.stretch() * rec.edge.w));
                    pre.add_edge(rec.edge.u, rec.edge.v, rec.edge.w).unwrap();
                }
            }
            assert_eq!(pre, r.h);
        }
    }

    #[test]
    fn single_edge_is_always_kept() {
        let g = Graph::unweighted(2, [(0, 1)]).unwrap();
        for k in 1..4 {
            for f in 0..3 {
                let r = greedy_ft_spanner(&g, &SpannerParams::new(f, k, FaultMode::Edge).unwrap()).unwrap();
                assert_eq!(r.h.m(), 1);
            }
        }
    }

    #[test]
    fn replay_accepts_own_output_and_rejects_tampering() {
        let g = c4();
        let p = SpannerParams::new(0, 2, FaultMode::Vertex).unwrap();
        let r = greedy_ft_spanner(&g, &p).unwrap();
        assert!(replay_trace(&g, &r, &p).unwrap());

        let mut flipped = r.clone();
        flipped.trace[3].decision = EdgeDecision::Added;
        assert!(!replay_trace(&g, &flipped, &p).unwrap());

        let mut swapped = r.clone();
        swapped.trace.swap(1, 2);
        assert_eq!(
            replay_trace_detailed(&g, &swapped, &p).unwrap(),
            ReplayOutcome::OrderMismatch { index: 1 }
        );

        let mut alien = r.clone();
        alien.trace[2].edge = Edge::new(0, 2, 1.0);
        assert_eq!(
            replay_trace(&g, &alien, &p),
            Err(Error::TraceUnknownEdge { index: 2, u: 0, v: 2 })
        );
    }

    #[test]
    fn rejects_zero_stretch_parameter() {
        assert!(SpannerParams::new(0, 0, FaultMode::Vertex).is_err());
    }
}
