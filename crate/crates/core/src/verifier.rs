//! Fault-tolerant spanner verification.
//!
//! `H` is an `f`-fault-tolerant `t`-spanner of `G` when, for every fault
//! set `F` with `|F| <= f`, `dist_{H-F}(u, v) <= t * dist_{G-F}(u, v)` for
//! all surviving pairs. Pairs disconnected in `G - F` impose nothing.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge_key, within, Distance, Edge, FaultMask, FaultMode, FaultSet, Graph, NodeId, PathFinder};
use crate::protection::{is_protected, ProtectionQuery};

/// Default cap on `(fault sets) x (pairs)` for exhaustive verification.
pub const DEFAULT_WORK_CAP: u128 = 100_000_000;

const CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub faults: FaultSet,
    pub u: NodeId,
    pub v: NodeId,
    /// Distance in `H - F`.
    pub lhs: Distance,
    /// `t` times the distance in `G - F`.
    pub rhs: Distance,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationStats {
    pub fault_sets_examined: u64,
    pub pairs_examined: u64,
    pub max_stretch: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    pub stats: VerificationStats,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// `sum_{i <= f} C(m, i)`, saturating.
pub fn fault_set_count(candidates: usize, f: usize) -> u128 {
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for i in 0..=f.min(candidates) {
        total = total.saturating_add(term);
        term = term.saturating_mul((candidates - i) as u128) / (i as u128 + 1);
    }
    total
}

/// `(fault sets) x (pairs)` examined by [`verify_exhaustive`].
pub fn exhaustive_work_estimate(g: &Graph, f: usize, mode: FaultMode) -> u128 {
    let candidates = match mode {
        FaultMode::Vertex => g.n(),
        FaultMode::Edge => g.m(),
    };
    let n = g.n() as u128;
    fault_set_count(candidates, f).saturating_mul(n * n.saturating_sub(1) / 2)
}

/// Lexicographic `r`-subsets of `0..m`, starting from `first`.
struct Combinations {
    m: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(m: usize, r: usize) -> Self {
        Combinations {
            m,
            current: (r <= m).then(|| (0..r).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let c = self.current.as_mut().unwrap();
        let r = c.len();
        let mut i = r;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if c[i] < self.m - r + i {
                c[i] += 1;
                for j in i + 1..r {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// All fault sets with at most `f` members, by size then lexicographically.
fn fault_sets(g: &Graph, f: usize, mode: FaultMode) -> impl Iterator<Item = FaultSet> + '_ {
    let edges: Vec<(NodeId, NodeId)> = {
        let mut es: Vec<_> = g.edges().iter().map(Edge::key).collect();
        es.sort_unstable();
        es
    };
    let m = match mode {
        FaultMode::Vertex => g.n(),
        FaultMode::Edge => edges.len(),
    };
    (0..=f.min(m)).flat_map(move |r| {
        let edges = edges.clone();
        Combinations::new(m, r).map(move |c| match mode {
            FaultMode::Vertex => FaultSet::vertices(c),
            FaultMode::Edge => FaultSet::edges(c.into_iter().map(|i| edges[i])),
        })
    })
}

struct FaultOutcome {
    pairs: u64,
    max_stretch: f64,
    violation: Option<Counterexample>,
}

fn check_fault_set(g: &Graph, h: &Graph, faults: &FaultSet, t: f64) -> FaultOutcome {
    let gmask = FaultMask::new(g, faults).expect("fault set drawn from g");
    let hmask = FaultMask::new(h, faults).expect("same node set");
    let mut finder = PathFinder::new();
    let (mut dg, mut dh) = (Vec::new(), Vec::new());
    let mut out = FaultOutcome {
        pairs: 0,
        max_stretch: 1.0,
        violation: None,
    };
    for u in 0..g.n() {
        if faults.contains_vertex(u) {
            continue;
        }
        finder.single_source(g, u, &gmask, &mut dg);
        finder.single_source(h, u, &hmask, &mut dh);
        for v in u + 1..g.n() {
            if faults.contains_vertex(v) {
                continue;
            }
            out.pairs += 1;
            let Distance::Finite(base) = dg[v] else {
                continue;
            };
            let rhs = Distance::Finite(t * base);
            match dh[v] {
                Distance::Finite(x) if within(x, t * base) => {
                    if base > 0.0 {
                        out.max_stretch = out.max_stretch.max(x / base);
                    }
                }
                lhs => {
                    if let Distance::Finite(x) = lhs {
                        out.max_stretch = out.max_stretch.max(x / base);
                    } else {
                        out.max_stretch = f64::INFINITY;
                    }
                    out.violation = Some(Counterexample {
                        faults: faults.clone(),
                        u,
                        v,
                        lhs,
                        rhs,
                    });
                    return out;
                }
            }
        }
    }
    out
}

fn check_inputs(g: &Graph, h: &Graph, t: f64) -> Result<()> {
    if !h.is_subgraph_of(g) {
        return Err(Error::InvalidParameter(
            "h must be a subgraph of g on the same node set".into(),
        ));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidParameter(format!("stretch must be positive, got {t}")));
    }
    Ok(())
}

/// Checks every fault set of size at most `f` and every surviving pair.
///
/// Fault sets are visited by size, then lexicographically; the reported
/// counterexample is the first in that order. Work is split across the
/// rayon pool in fixed-size chunks, so the result does not depend on the
/// number of threads.
pub fn verify_exhaustive(
    g: &Graph,
    h: &Graph,
    f: usize,
    t: f64,
    mode: FaultMode,
    work_cap: u128,
) -> Result<VerificationReport> {
    check_inputs(g, h, t)?;
    let estimate = exhaustive_work_estimate(g, f, mode);
    if estimate > work_cap {
        return Err(Error::WorkCapExceeded {
            estimate,
            cap: work_cap,
        });
    }
    let mut stats = VerificationStats {
        max_stretch: 1.0,
        ..Default::default()
    };
    let mut sets = fault_sets(g, f, mode).peekable();
    while sets.peek().is_some() {
        let chunk: Vec<FaultSet> = sets.by_ref().take(CHUNK).collect();
        let outcomes: Vec<FaultOutcome> = chunk.par_iter().map(|fs| check_fault_set(g, h, fs, t)).collect();
        for o in outcomes {
            stats.fault_sets_examined += 1;
            stats.pairs_examined += o.pairs;
            stats.max_stretch = stats.max_stretch.max(o.max_stretch);
            if let Some(cx) = o.violation {
                return Ok(VerificationReport {
                    verdict: Verdict::Fail,
                    counterexample: Some(cx),
                    stats,
                });
            }
        }
    }
    Ok(VerificationReport {
        verdict: Verdict::Pass,
        counterexample: None,
        stats,
    })
}

/// Per-edge failure found by [`verify_per_edge`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeFailure {
    pub edge: Edge,
    pub witness: FaultSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerEdgeReport {
    #[serde(flatten)]
    pub report: VerificationReport,
    pub failed_edge: Option<EdgeFailure>,
}

/// Sound sufficient check: every edge of `g` is in `h` or is `(t, f)`
/// protected in `h`. A pass implies [`verify_exhaustive`] passes.
///
/// On failure the counterexample is the offending edge with its witness:
/// `lhs` is the distance in `h` minus the witness, `rhs` is `t * w`.
pub fn verify_per_edge(g: &Graph, h: &Graph, f: usize, t: f64, mode: FaultMode) -> Result<PerEdgeReport> {
    check_inputs(g, h, t)?;
    let edges = g.sorted_edges();
    let results: Vec<Option<(Edge, FaultSet)>> = edges
        .par_iter()
        .map(|e| -> Result<Option<(Edge, FaultSet)>> {
            if h.has_edge(e.u, e.v) {
                return Ok(None);
            }
            let q = ProtectionQuery::new(e.u, e.v, t * e.w, f, mode)?;
            let r = is_protected(h, &q)?;
            Ok(r.witness.map(|w| (*e, w)))
        })
        .collect::<Result<_>>()?;
    let mut stats = VerificationStats {
        max_stretch: 1.0,
        ..Default::default()
    };
    for (i, res) in results.into_iter().enumerate() {
        stats.pairs_examined = i as u64 + 1;
        if !h.has_edge(edges[i].u, edges[i].v) {
            stats.fault_sets_examined += 1;
        }
        if let Some((edge, witness)) = res {
            let lhs = crate::graph::dist(h, edge.u, edge.v, &witness)?;
            let counterexample = Counterexample {
                faults: witness.clone(),
                u: edge.u,
                v: edge.v,
                lhs,
                rhs: Distance::Finite(t * edge.w),
            };
            stats.max_stretch = match lhs {
                Distance::Finite(x) => stats.max_stretch.max(x / edge.w),
                Distance::Unreachable => f64::INFINITY,
            };
            return Ok(PerEdgeReport {
                report: VerificationReport {
                    verdict: Verdict::Fail,
                    counterexample: Some(counterexample),
                    stats,
                },
                failed_edge: Some(EdgeFailure { edge, witness }),
            });
        }
    }
    Ok(PerEdgeReport {
        report: VerificationReport {
            verdict: Verdict::Pass,
            counterexample: None,
            stats,
        },
        failed_edge: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StretchReport {
    /// Largest `dist_{H-F} / dist_{G-F}` over pairs connected in both.
    pub max_stretch: f64,
    /// Pairs connected in `G - F` but not in `H - F`.
    pub disconnected_pairs: Vec<(NodeId, NodeId)>,
}

impl StretchReport {
    pub fn has_violation_flag(&self) -> bool {
        !self.disconnected_pairs.is_empty()
    }
}

/// Maximum stretch of `h` against `g` under one fault set.
pub fn max_stretch(g: &Graph, h: &Graph, faults: &FaultSet) -> Result<StretchReport> {
    if !h.is_subgraph_of(g) {
        return Err(Error::InvalidParameter(
            "h must be a subgraph of g on the same node set".into(),
        ));
    }
    faults.validate(g)?;
    let gmask = FaultMask::new(g, faults)?;
    let hmask = FaultMask::new(h, faults)?;
    let mut finder = PathFinder::new();
    let (mut dg, mut dh) = (Vec::new(), Vec::new());
    let mut report = StretchReport {
        max_stretch: 1.0,
        disconnected_pairs: Vec::new(),
    };
    for u in (0..g.n()).filter(|&u| !faults.contains_vertex(u)) {
        finder.single_source(g, u, &gmask, &mut dg);
        finder.single_source(h, u, &hmask, &mut dh);
        for v in (u + 1..g.n()).filter(|&v| !faults.contains_vertex(v)) {
            match (dg[v], dh[v]) {
                (Distance::Finite(b), Distance::Finite(x)) if b > 0.0 => {
                    report.max_stretch = report.max_stretch.max(x / b);
                }
                (Distance::Finite(_), Distance::Unreachable) => {
                    report.disconnected_pairs.push(edge_key(u, v));
                }
                _ => {}
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(fault_set_count(5, 2), 1 + 5 + 10);
        assert_eq!(fault_set_count(3, 7), 8);
    }

    #[test]
    fn missing_detour_is_caught_by_both_verifiers() {
        // u=0, a=1, v=2: path u-a-v plus the chord (u, v); h drops the chord.
        let g = Graph::unweighted(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let h = g.filter_edges(|e| e.key() != (0, 2));
        let r = verify_exhaustive(&g, &h, 1, 3.0, FaultMode::Vertex, DEFAULT_WORK_CAP).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let cx = r.counterexample.unwrap();
        assert_eq!(cx.faults, FaultSet::vertices([1]));
        assert_eq!((cx.u, cx.v), (0, 2));
        assert_eq!(cx.lhs, Distance::Unreachable);
        assert_eq!(cx.rhs, Distance::Finite(3.0));

        let pe = verify_per_edge(&g, &h, 1, 3.0, FaultMode::Vertex).unwrap();
        assert_eq!(pe.report.verdict, Verdict::Fail);
        assert_eq!(pe.failed_edge.unwrap().witness, FaultSet::vertices([1]));
    }

    #[test]
    fn whole_graph_always_passes() {
        let g = Graph::from_edges(4, [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0), (0, 3, 5.0)]).unwrap();
        for mode in [FaultMode::Vertex, FaultMode::Edge] {
            assert!(verify_exhaustive(&g, &g, 2, 1.0, mode, DEFAULT_WORK_CAP)
                .unwrap()
                .passed());
            assert!(verify_per_edge(&g, &g, 2, 1.0, mode).unwrap().report.passed());
        }
    }

    #[test]
    fn refuses_above_work_cap() {
        let g = Graph::unweighted(6, (0..5).map(|i| (i, i + 1))).unwrap();
        let err = verify_exhaustive(&g, &g, 2, 3.0, FaultMode::Vertex, 10).unwrap_err();
        assert_eq!(
            err,
            Error::WorkCapExceeded {
                estimate: 22 * 15,
                cap: 10
            }
        );
    }

    #[test]
    fn stretch_of_triangle_path() {
        let g = Graph::unweighted(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let h = g.filter_edges(|e| e.key() != (0, 2));
        let none = FaultSet::empty(FaultMode::Vertex);
        let r = max_stretch(&g, &h, &none).unwrap();
        assert_eq!(r.max_stretch, 2.0);
        assert!(!r.has_violation_flag());
        assert_eq!(max_stretch(&g, &g, &FaultSet::vertices([1])).unwrap().max_stretch, 1.0);
        let cut = max_stretch(&g, &h, &FaultSet::vertices([1])).unwrap();
        assert_eq!(cut.disconnected_pairs, vec![(0, 2)]);
    }
}
