//! Lower-bound instances: blow-ups of high-girth graphs in which every
//! edge is critical for any `f`-fault-tolerant `(2k - 1)`-spanner.
//!
//! Each base node `u` becomes `copies` nodes `(u, i)`, encoded as node id
//! `u * copies + i`, and each base edge becomes a complete bipartite graph
//! between the two copy sets. For an edge `e = ((u,i),(v,j))` the witness
//! fault set leaves `e` as the only short connection; girth at least
//! `2k + 2` in the base forces every other route to have `2k + 1` edges.

mod base;

pub use base::{
    base_girth_graph, projective_plane_incidence, random_high_girth, registry, registry_graph, BaseGraph, BaseSource,
    NamedGraph,
};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{girth, hop_path, parse_edge_list, parse_metadata, shortest_cycle, to_edge_list};
use crate::graph::{FaultMask, FaultMode, FaultSet, Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EftVariant {
    /// Fail the other copy-edges at both endpoints: `2(copies - 1)` faults.
    K2,
    /// Fail every other edge between the two copy sets: `copies^2 - 1` faults.
    General,
}

impl std::str::FromStr for EftVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "k2" => Ok(EftVariant::K2),
            "general" => Ok(EftVariant::General),
            _ => Err(format!("unknown EFT variant {s:?} (expected k2 or general)")),
        }
    }
}

impl std::fmt::Display for EftVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EftVariant::K2 => "k2",
            EftVariant::General => "general",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlowupInstance {
    pub base_name: String,
    pub base: Graph,
    pub copies: usize,
    pub blown: Graph,
    pub k: usize,
    pub f: usize,
    pub mode: FaultMode,
    /// Set iff `mode` is `Edge`.
    pub eft_variant: Option<EftVariant>,
    pub seed: Option<u64>,
}

impl BlowupInstance {
    /// Builds the blow-up without checking the base girth. Useful for
    /// negative controls; the public constructors check it.
    pub fn build_unchecked(
        base: &Graph,
        copies: usize,
        k: usize,
        f: usize,
        mode: FaultMode,
        eft_variant: Option<EftVariant>,
    ) -> Self {
        let mut blown = Graph::new(base.n() * copies);
        for e in base.edges() {
            for i in 0..copies {
                for j in 0..copies {
                    blown
                        .add_edge(e.u * copies + i, e.v * copies + j, 1.0)
                        .expect("distinct copy pairs");
                }
            }
        }
        BlowupInstance {
            base_name: "custom".into(),
            base: base.to_unit_weight(),
            copies,
            blown,
            k,
            f,
            mode,
            eft_variant: if mode == FaultMode::Edge { eft_variant } else { None },
            seed: None,
        }
    }

    pub fn with_base_name(mut self, name: impl Into<String>) -> Self {
        self.base_name = name.into();
        self
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn node(&self, u: NodeId, i: usize) -> NodeId {
        u * self.copies + i
    }

    /// `(base node, copy index)` of a blown node.
    pub fn decode(&self, x: NodeId) -> (NodeId, usize) {
        (x / self.copies, x % self.copies)
    }

    pub fn metadata(&self) -> Vec<(String, String)> {
        let mut meta = vec![
            ("base".to_string(), self.base_name.clone()),
            ("copies".to_string(), self.copies.to_string()),
            ("k".to_string(), self.k.to_string()),
            ("f".to_string(), self.f.to_string()),
            ("mode".to_string(), self.mode.to_string()),
        ];
        if let Some(v) = self.eft_variant {
            meta.push(("variant".to_string(), v.to_string()));
        }
        if let Some(s) = self.seed {
            meta.push(("seed".to_string(), s.to_string()));
        }
        meta
    }

    /// The blown graph as an edge list with `#!` metadata lines.
    pub fn to_edge_list(&self) -> String {
        to_edge_list(&self.blown, &self.metadata())
    }

    /// Reads an instance written by [`BlowupInstance::to_edge_list`]. The
    /// base graph is recovered by projecting copy 0 edges.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let meta: BTreeMap<String, String> = parse_metadata(text).into_iter().collect();
        let get = |key: &str| {
            meta.get(key)
                .ok_or_else(|| Error::InvalidParameter(format!("instance metadata lacks {key:?}")))
        };
        let num = |key: &str| -> Result<usize> {
            get(key)?
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad {key:?} in instance metadata")))
        };
        let copies = num("copies")?;
        let (k, f) = (num("k")?, num("f")?);
        let mode: FaultMode = get("mode")?.parse().map_err(Error::InvalidParameter)?;
        let variant = match meta.get("variant") {
            Some(v) => Some(v.parse().map_err(Error::InvalidParameter)?),
            None => None,
        };
        let seed = meta.get("seed").and_then(|s| s.parse().ok());
        let blown = parse_edge_list(text)?;
        if copies == 0 || blown.n() % copies != 0 {
            return Err(Error::InvalidParameter(format!(
                "{} nodes is not a multiple of {copies} copies",
                blown.n()
            )));
        }
        let mut base = Graph::new(blown.n() / copies);
        for e in blown.edges() {
            let (u, i) = (e.u / copies, e.u % copies);
            let (v, j) = (e.v / copies, e.v % copies);
            if i == 0 && j == 0 {
                base.add_edge(u, v, 1.0)?;
            }
        }
        let inst = BlowupInstance {
            base_name: get("base")?.clone(),
            base,
            copies,
            blown,
            k,
            f,
            mode,
            eft_variant: variant,
            seed,
        };
        Ok(inst)
    }

    /// Largest witness fault set this variant produces.
    pub fn witness_size(&self) -> usize {
        match (self.mode, self.eft_variant) {
            (FaultMode::Edge, Some(EftVariant::General)) => self.copies * self.copies - 1,
            _ => 2 * (self.copies - 1),
        }
    }
}

fn check_base(base: &Graph, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let required = 2 * k + 2;
    if let Some(cycle) = shortest_cycle(base) {
        if cycle.len() < required {
            return Err(Error::GirthTooSmall {
                girth: cycle.len(),
                required,
                cycle,
            });
        }
    }
    Ok(())
}

fn positive_copies(copies: usize, f: usize) -> Result<usize> {
    if copies == 0 {
        return Err(Error::InvalidParameter(format!(
            "fault budget f = {f} gives zero copies"
        )));
    }
    Ok(copies)
}

/// Vertex-fault blow-up with `ceil(f / 2)` copies.
pub fn vft_blowup(base: &Graph, f: usize, k: usize) -> Result<BlowupInstance> {
    check_base(base, k)?;
    let copies = positive_copies(f.div_ceil(2), f)?;
    Ok(BlowupInstance::build_unchecked(
        base,
        copies,
        k,
        f,
        FaultMode::Vertex,
        None,
    ))
}

/// Edge-fault blow-up: the `k2` variant for `k <= 2`, the general one otherwise.
pub fn eft_blowup(base: &Graph, f: usize, k: usize) -> Result<BlowupInstance> {
    let variant = if k <= 2 { EftVariant::K2 } else { EftVariant::General };
    eft_blowup_with_variant(base, f, k, variant)
}

/// Edge-fault blow-up with an explicit variant: `ceil(f / 2)` copies for
/// `k2`, `floor(sqrt(f))` for `general`.
pub fn eft_blowup_with_variant(base: &Graph, f: usize, k: usize, variant: EftVariant) -> Result<BlowupInstance> {
    check_base(base, k)?;
    let copies = match variant {
        EftVariant::K2 => f.div_ceil(2),
        EftVariant::General => f.isqrt(),
    };
    let copies = positive_copies(copies, f)?;
    Ok(BlowupInstance::build_unchecked(
        base,
        copies,
        k,
        f,
        FaultMode::Edge,
        Some(variant),
    ))
}

/// The fault set that isolates blown edge `(a, b)` from every short detour.
pub fn witness_fault_set(inst: &BlowupInstance, a: NodeId, b: NodeId) -> Result<FaultSet> {
    if !inst.blown.has_edge(a, b) {
        return Err(Error::UnknownEdge(a, b));
    }
    let (u, i) = inst.decode(a);
    let (v, j) = inst.decode(b);
    let c = inst.copies;
    Ok(match (inst.mode, inst.eft_variant) {
        (FaultMode::Vertex, _) => FaultSet::vertices(
            (0..c)
                .filter(|&l| l != i)
                .map(|l| inst.node(u, l))
                .chain((0..c).filter(|&l| l != j).map(|l| inst.node(v, l))),
        ),
        (FaultMode::Edge, Some(EftVariant::General)) => FaultSet::edges(
            (0..c)
                .flat_map(|x| (0..c).map(move |y| (x, y)))
                .filter(|&(x, y)| (x, y) != (i, j))
                .map(|(x, y)| (inst.node(u, x), inst.node(v, y))),
        ),
        (FaultMode::Edge, _) => FaultSet::edges(
            (0..c)
                .filter(|&l| l != j)
                .map(|l| (a, inst.node(v, l)))
                .chain((0..c).filter(|&l| l != i).map(|l| (inst.node(u, l), b))),
        ),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalityViolation {
    pub edge: (NodeId, NodeId),
    pub faults: FaultSet,
    /// A detour shorter than `2k + 1` edges.
    pub detour: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalityReport {
    pub passed: bool,
    pub edges_checked: usize,
    pub required_detour: usize,
    /// Shortest detour over all edges; `None` when every detour is cut off.
    pub min_detour: Option<usize>,
    pub max_witness_size: usize,
    pub violations: Vec<CriticalityViolation>,
}

/// For every blown edge, removes it and applies its witness fault set, then
/// checks that the endpoints are at least `2k + 1` hops apart.
pub fn check_criticality(inst: &BlowupInstance) -> Result<CriticalityReport> {
    let required = 2 * inst.k + 1;
    let g = &inst.blown;
    let per_edge: Vec<(Option<usize>, usize, Option<CriticalityViolation>)> = g
        .edges()
        .par_iter()
        .enumerate()
        .map(|(id, e)| -> Result<_> {
            let faults = witness_fault_set(inst, e.u, e.v)?;
            let mut mask = FaultMask::new(g, &faults)?;
            mask.set_edge(id, true);
            let detour = hop_path(g, e.u, e.v, &mask);
            let hops = detour.as_ref().map(|p| p.len() - 1);
            let violation = match detour {
                Some(p) if p.len() - 1 < required => Some(CriticalityViolation {
                    edge: e.key(),
                    faults: faults.clone(),
                    detour: p,
                }),
                _ => None,
            };
            Ok((hops, faults.len(), violation))
        })
        .collect::<Result<_>>()?;
    let min_detour = per_edge.iter().filter_map(|(h, _, _)| *h).min();
    let max_witness_size = per_edge.iter().map(|(_, s, _)| *s).max().unwrap_or(0);
    let violations: Vec<_> = per_edge.into_iter().filter_map(|(_, _, v)| v).collect();
    Ok(CriticalityReport {
        passed: violations.is_empty() && max_witness_size <= inst.f,
        edges_checked: g.m(),
        required_detour: required,
        min_detour,
        max_witness_size,
        violations,
    })
}

/// Girth of the base graph, for reports.
pub fn base_girth(inst: &BlowupInstance) -> Option<usize> {
    girth(&inst.base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heawood() -> Graph {
        registry_graph("heawood").unwrap().graph
    }

    #[test]
    fn vft_sizes_follow_copy_arithmetic() {
        let inst = vft_blowup(&heawood(), 4, 2).unwrap();
        assert_eq!((inst.copies, inst.blown.n(), inst.blown.m()), (2, 28, 84));
        let inst = vft_blowup(&heawood(), 6, 2).unwrap();
        assert_eq!((inst.copies, inst.blown.n(), inst.blown.m()), (3, 42, 189));
        let inst = vft_blowup(&heawood(), 1, 2).unwrap();
        assert_eq!(inst.copies, 1);
        assert_eq!(inst.blown, heawood());
        assert!(vft_blowup(&heawood(), 0, 2).is_err());
    }

    #[test]
    fn eft_copy_counts() {
        let inst = eft_blowup(&heawood(), 4, 2).unwrap();
        assert_eq!((inst.copies, inst.eft_variant), (2, Some(EftVariant::K2)));
        let tc = registry_graph("tutte-coxeter").unwrap().graph;
        let inst = eft_blowup(&tc, 9, 3).unwrap();
        assert_eq!((inst.copies, inst.blown.n(), inst.blown.m()), (3, 90, 405));
        assert_eq!(inst.eft_variant, Some(EftVariant::General));
        let inst = eft_blowup(&tc, 1, 3).unwrap();
        assert_eq!(inst.blown, tc);
        assert!(eft_blowup(&tc, 0, 3).is_err());
    }

    #[test]
    fn girth_precondition_names_a_cycle() {
        let c4 = Graph::unweighted(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        match vft_blowup(&c4, 2, 2) {
            Err(Error::GirthTooSmall {
                girth: 4,
                required: 6,
                cycle,
            }) => assert_eq!(cycle.len(), 4),
            other => panic!("unexpected {other:?}"),
        }
        // Girth 6 is too small for k = 3.
        assert!(eft_blowup(&heawood(), 9, 3).is_err());
    }

    #[test]
    fn witness_examples() {
        let inst = vft_blowup(&heawood(), 4, 2).unwrap();
        let e = inst.base.edges()[0];
        let (a, b) = (inst.node(e.u, 0), inst.node(e.v, 1));
        assert_eq!(
            witness_fault_set(&inst, a, b).unwrap(),
            FaultSet::vertices([inst.node(e.u, 1), inst.node(e.v, 0)])
        );

        let inst = eft_blowup_with_variant(&heawood(), 4, 2, EftVariant::General).unwrap();
        let (a, b) = (inst.node(e.u, 0), inst.node(e.v, 0));
        let w = witness_fault_set(&inst, a, b).unwrap();
        assert_eq!(
            w,
            FaultSet::edges([
                (inst.node(e.u, 0), inst.node(e.v, 1)),
                (inst.node(e.u, 1), inst.node(e.v, 0)),
                (inst.node(e.u, 1), inst.node(e.v, 1)),
            ])
        );

        let inst = eft_blowup(&heawood(), 4, 2).unwrap();
        let w = witness_fault_set(&inst, a, b).unwrap();
        assert_eq!(
            w,
            FaultSet::edges([
                (inst.node(e.u, 0), inst.node(e.v, 1)),
                (inst.node(e.u, 1), inst.node(e.v, 0))
            ])
        );

        let inst = vft_blowup(&heawood(), 1, 2).unwrap();
        assert!(witness_fault_set(&inst, e.u, e.v).unwrap().is_empty());
        assert!(witness_fault_set(&inst, 0, 7).is_err());
    }

    #[test]
    fn heawood_blowups_are_critical() {
        for inst in [
            vft_blowup(&heawood(), 4, 2).unwrap(),
            eft_blowup(&heawood(), 4, 2).unwrap(),
        ] {
            let r = check_criticality(&inst).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.edges_checked, 84);
            assert!(r.min_detour.is_none_or(|d| d >= 5));
            assert!(r.max_witness_size <= 4);
        }
    }

    #[test]
    fn girth_four_base_exposes_short_detour() {
        let c4 = Graph::unweighted(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let inst = BlowupInstance::build_unchecked(&c4, 2, 2, 4, FaultMode::Vertex, None);
        let r = check_criticality(&inst).unwrap();
        assert!(!r.passed);
        assert_eq!(r.violations.len(), 16);
        let v = &r.violations[0];
        assert_eq!(v.detour.len() - 1, 3);
        assert_eq!((v.detour[0], *v.detour.last().unwrap()), v.edge);
    }

    #[test]
    fn instance_file_round_trip() {
        let inst = eft_blowup(&heawood(), 4, 2)
            .unwrap()
            .with_base_name("heawood")
            .with_seed(Some(3));
        let text = inst.to_edge_list();
        assert!(text.starts_with("#! base=heawood\n#! copies=2\n"));
        let back = BlowupInstance::from_edge_list(&text).unwrap();
        assert_eq!(back.blown, inst.blown);
        assert_eq!(back.base, inst.base);
        assert_eq!(back.metadata(), inst.metadata());
    }
}
