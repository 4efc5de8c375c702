use serde::{Deserialize, Serialize};

use super::walks::walk_stats;
use super::{BlockadeSet, DegreeStats};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub edges: usize,
    pub n: usize,
    pub f: usize,
    pub k: usize,
    /// `f^(1-1/k) * n^(1+1/k)`, with `f` raised to at least 1.
    pub bound: f64,
    pub ratio: f64,
    pub degree: DegreeStats,
}

pub fn density_report(g: &Graph, h: &Graph, f: usize, k: usize) -> Result<DensityReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if !h.is_subgraph_of(g) {
        return Err(Error::InvalidParameter("h is not a subgraph of g".into()));
    }
    let kf = k as f64;
    let n = g.n();
    let bound = (f.max(1) as f64).powf(1.0 - 1.0 / kf) * (n as f64).powf(1.0 + 1.0 / kf);
    Ok(DensityReport {
        edges: h.m(),
        n,
        f,
        k,
        bound,
        ratio: if bound > 0.0 { h.m() as f64 / bound } else { 0.0 },
        degree: DegreeStats::of(h),
    })
}

/// Measured `M_k / (|E| * (f D)^(k-1))` with `D` the average degree and
/// `f` raised to at least 1. Reported only; its scale is asymptotic.
pub fn meet_bound_ratio(g: &Graph, k: usize, f: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if g.m() == 0 {
        return Ok(0.0);
    }
    let meets = walk_stats(g, k, &BlockadeSet::empty())?.meets;
    let d = 2.0 * g.m() as f64 / g.n() as f64;
    Ok(meets as f64 / (g.m() as f64 * (f.max(1) as f64 * d).powi(k as i32 - 1)))
}
