//! Exact `(t, f)` protection decisions.
//!
//! A pair `(u, v)` is protected in `h` when no fault set of at most `f`
//! vertices (not `u` or `v`) or edges pushes `dist(u, v)` above the
//! threshold. Deciding this is a length-bounded cut problem, so the search
//! is a bounded-depth hitting-set branching:
//!
//! * find a shortest `u -> v` path under the partial fault set `F0`;
//! * none within the threshold: `F0` is a witness;
//! * `|F0| = f`: this branch cannot cut, so it is protected;
//! * otherwise branch on each faultable element of that path, in path order.
//!
//! Any witness must hit every short path, so some branch always extends
//! towards it and the search is exact. Two prunings keep it small: a
//! greedy packing of disjoint short paths lower-bounds the faults still
//! needed, and fault sets already explored (reached in another order) are
//! skipped. Neither changes which witness is found first.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, FaultMask, FaultMode, FaultSet, Graph, NodeId, Path, PathFinder};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtectionQuery {
    pub u: NodeId,
    pub v: NodeId,
    pub threshold: f64,
    pub f: usize,
    pub mode: FaultMode,
}

impl ProtectionQuery {
    pub fn new(u: NodeId, v: NodeId, threshold: f64, f: usize, mode: FaultMode) -> Result<Self> {
        if !(threshold.is_finite() && threshold > 0.0) {
            return Err(Error::InvalidQuery(format!(
                "threshold must be finite and positive, got {threshold}"
            )));
        }
        if mode == FaultMode::Vertex && u == v {
            return Err(Error::InvalidQuery(format!(
                "vertex protection needs distinct endpoints, got ({u}, {u})"
            )));
        }
        Ok(ProtectionQuery {
            u,
            v,
            threshold,
            f,
            mode,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Protected,
    Unprotected,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtectionResult {
    pub decision: Decision,
    /// Present iff unprotected.
    pub witness: Option<FaultSet>,
    /// `f + 1` disjoint short paths, when the fast packing found them.
    pub certificate: Option<Vec<Path>>,
    /// Branching nodes visited (0 when the fast path decided).
    pub explored: usize,
}

impl ProtectionResult {
    pub fn is_protected(&self) -> bool {
        self.decision == Decision::Protected
    }

    fn protected(certificate: Option<Vec<Path>>, explored: usize) -> Self {
        ProtectionResult {
            decision: Decision::Protected,
            witness: None,
            certificate,
            explored,
        }
    }
}

/// Decides whether `(q.u, q.v)` is `(threshold, f)` protected in `h`.
pub fn is_protected(h: &Graph, q: &ProtectionQuery) -> Result<ProtectionResult> {
    let q = ProtectionQuery::new(q.u, q.v, q.threshold, q.f, q.mode)?;
    h.check_node(q.u)?;
    h.check_node(q.v)?;
    if q.u == q.v {
        return Ok(ProtectionResult::protected(None, 0));
    }
    let mut search = Search::new(h, &q);
    // A direct edge within the threshold cannot be hit by vertex faults.
    if search.direct_edge_unhittable {
        return Ok(ProtectionResult::protected(None, 0));
    }
    let packing = search.pack(q.f + 1);
    if packing.len() > q.f {
        return Ok(ProtectionResult::protected(Some(packing), 0));
    }
    match search.branch() {
        Some(witness) => Ok(ProtectionResult {
            decision: Decision::Unprotected,
            witness: Some(witness),
            certificate: None,
            explored: search.explored,
        }),
        None => Ok(ProtectionResult::protected(None, search.explored)),
    }
}

/// Greedily collects `count` pairwise disjoint `u -> v` paths of weight at
/// most `threshold`: internally vertex-disjoint in vertex mode, edge-disjoint
/// in edge mode. In vertex mode the direct edge `(u, v)` is never used.
///
/// Sound but not complete: `None` does not mean fewer paths exist.
pub fn find_disjoint_short_paths(
    h: &Graph,
    u: NodeId,
    v: NodeId,
    threshold: f64,
    count: usize,
    mode: FaultMode,
) -> Result<Option<Vec<Path>>> {
    h.check_node(u)?;
    h.check_node(v)?;
    if count == 0 {
        return Err(Error::InvalidQuery("path count must be at least 1".into()));
    }
    if u == v {
        return Ok(None);
    }
    let q = ProtectionQuery::new(u, v, threshold, 0, mode)?;
    let mut search = Search::new(h, &q);
    let paths = search.pack(count);
    Ok((paths.len() == count).then_some(paths))
}

struct Search<'a> {
    h: &'a Graph,
    q: ProtectionQuery,
    finder: PathFinder,
    mask: FaultMask,
    chosen: Vec<usize>,
    seen: HashSet<Vec<usize>>,
    direct_edge_unhittable: bool,
    explored: usize,
}

impl<'a> Search<'a> {
    fn new(h: &'a Graph, q: &ProtectionQuery) -> Self {
        let mut mask = FaultMask::none(h);
        let mut direct_edge_unhittable = false;
        if q.mode == FaultMode::Vertex {
            if let Some(e) = h.edge_id(q.u, q.v) {
                direct_edge_unhittable = crate::graph::within(h.edge(e).w, q.threshold);
                mask.set_edge(e, true);
            }
        }
        Search {
            h,
            q: *q,
            finder: PathFinder::new(),
            mask,
            chosen: Vec::new(),
            seen: HashSet::new(),
            direct_edge_unhittable,
            explored: 0,
        }
    }

    /// Faultable elements of a path: interior nodes or edge ids.
    fn elements(&self, p: &Path) -> Vec<usize> {
        match self.q.mode {
            FaultMode::Vertex => p.interior().to_vec(),
            FaultMode::Edge => p.edges.clone(),
        }
    }

    fn set_blocked(&mut self, element: usize, blocked: bool) {
        match self.q.mode {
            FaultMode::Vertex => self.mask.set_node(element, blocked),
            FaultMode::Edge => self.mask.set_edge(element, blocked),
        }
    }

    /// Up to `limit` disjoint short paths under the current mask; the mask
    /// is restored before returning.
    fn pack(&mut self, limit: usize) -> Vec<Path> {
        let mut paths = Vec::new();
        let mut blocked: Vec<usize> = Vec::new();
        while paths.len() < limit {
            let Some(p) = self
                .finder
                .shortest_path(self.h, self.q.u, self.q.v, &self.mask, Some(self.q.threshold))
            else {
                break;
            };
            for x in self.elements(&p) {
                self.set_blocked(x, true);
                blocked.push(x);
            }
            paths.push(p);
        }
        for x in blocked {
            self.set_blocked(x, false);
        }
        paths
    }

    fn witness(&self) -> FaultSet {
        match self.q.mode {
            FaultMode::Vertex => FaultSet::vertices(self.chosen.iter().copied()),
            FaultMode::Edge => FaultSet::edges(self.chosen.iter().map(|&e: &EdgeId| self.h.edge(e).key())),
        }
    }

    /// Depth-first branching; returns the first witness found.
    fn branch(&mut self) -> Option<FaultSet> {
        self.explored += 1;
        let remaining = self.q.f - self.chosen.len();
        let packing = self.pack(remaining + 1);
        let Some(first) = packing.first() else {
            return Some(self.witness());
        };
        if packing.len() > remaining {
            return None;
        }
        for x in self.elements(first) {
            self.chosen.push(x);
            let mut key = self.chosen.clone();
            key.sort_unstable();
            if self.seen.insert(key) {
                self.set_blocked(x, true);
                let found = self.branch();
                self.set_blocked(x, false);
                if found.is_some() {
                    return found;
                }
            }
            self.chosen.pop();
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::dist;

    // u=0, v=1, a=2, b=3
    fn two_paths() -> Graph {
        Graph::unweighted(4, [(0, 2), (2, 1), (0, 3), (3, 1)]).unwrap()
    }

    fn query(u: NodeId, v: NodeId, threshold: f64, f: usize, mode: FaultMode) -> ProtectionQuery {
        ProtectionQuery::new(u, v, threshold, f, mode).unwrap()
    }

    #[test]
    fn two_disjoint_paths_survive_one_vertex_fault() {
        let r = is_protected(&two_paths(), &query(0, 1, 3.0, 1, FaultMode::Vertex)).unwrap();
        assert!(r.is_protected());
        assert_eq!(r.certificate.as_ref().map(Vec::len), Some(2));
    }

    #[test]
    fn two_vertex_faults_cut_both_paths() {
        let r = is_protected(&two_paths(), &query(0, 1, 3.0, 2, FaultMode::Vertex)).unwrap();
        assert_eq!(r.decision, Decision::Unprotected);
        assert_eq!(r.witness, Some(FaultSet::vertices([2, 3])));
    }

    #[test]
    fn single_path_cut_by_its_first_edge() {
        let h = Graph::unweighted(3, [(0, 2), (2, 1)]).unwrap();
        let r = is_protected(&h, &query(0, 1, 3.0, 1, FaultMode::Edge)).unwrap();
        assert_eq!(r.witness, Some(FaultSet::edges([(0, 2)])));
        let replay = dist(&h, 0, 1, r.witness.as_ref().unwrap()).unwrap();
        assert!(replay.exceeds(3.0));
    }

    #[test]
    fn direct_edge_is_only_faultable_in_edge_mode() {
        let h = Graph::unweighted(2, [(0, 1)]).unwrap();
        assert!(is_protected(&h, &query(0, 1, 1.0, 5, FaultMode::Vertex))
            .unwrap()
            .is_protected());
        let r = is_protected(&h, &query(0, 1, 1.0, 1, FaultMode::Edge)).unwrap();
        assert_eq!(r.witness, Some(FaultSet::edges([(0, 1)])));
        let r = is_protected(&h, &query(0, 1, 1.0, 0, FaultMode::Edge)).unwrap();
        assert!(r.is_protected());
    }

    #[test]
    fn zero_budget_is_a_plain_distance_check() {
        let h = Graph::unweighted(3, [(0, 2), (2, 1)]).unwrap();
        assert!(is_protected(&h, &query(0, 1, 2.0, 0, FaultMode::Vertex))
            .unwrap()
            .is_protected());
        let r = is_protected(&h, &query(0, 1, 1.5, 0, FaultMode::Vertex)).unwrap();
        assert_eq!(r.witness, Some(FaultSet::empty(FaultMode::Vertex)));
    }

    #[test]
    fn rejects_bad_queries() {
        assert!(ProtectionQuery::new(0, 0, 1.0, 1, FaultMode::Vertex).is_err());
        assert!(ProtectionQuery::new(0, 1, 0.0, 1, FaultMode::Vertex).is_err());
        assert!(ProtectionQuery::new(0, 0, 1.0, 1, FaultMode::Edge).is_ok());
        let h = two_paths();
        assert!(is_protected(
            &h,
            &ProtectionQuery {
                u: 0,
                v: 9,
                threshold: 1.0,
                f: 0,
                mode: FaultMode::Edge
            }
        )
        .is_err());
    }

    #[test]
    fn disjoint_paths_examples() {
        let paths = find_disjoint_short_paths(&two_paths(), 0, 1, 2.0, 2, FaultMode::Vertex)
            .unwrap()
            .unwrap();
        let nodes: Vec<_> = paths.iter().map(|p| p.nodes.clone()).collect();
        assert_eq!(nodes, vec![vec![0, 2, 1], vec![0, 3, 1]]);

        let h = Graph::from_edges(2, [(0, 1, 2.5)]).unwrap();
        let paths = find_disjoint_short_paths(&h, 0, 1, 2.5, 1, FaultMode::Edge)
            .unwrap()
            .unwrap();
        assert_eq!(paths[0].nodes, vec![0, 1]);

        assert!(find_disjoint_short_paths(&two_paths(), 0, 1, 2.0, 3, FaultMode::Vertex)
            .unwrap()
            .is_none());
    }

    #[test]
    fn k4_yields_the_two_detours() {
        // Every u -> v path of at most two edges in K4 avoiding the direct
        // edge goes through exactly one of a, b.
        let k4 = Graph::unweighted(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let paths = find_disjoint_short_paths(&k4, 0, 1, 2.0, 2, FaultMode::Vertex)
            .unwrap()
            .unwrap();
        let nodes: Vec<_> = paths.iter().map(|p| p.nodes.clone()).collect();
        assert_eq!(nodes, vec![vec![0, 2, 1], vec![0, 3, 1]]);
    }
}
