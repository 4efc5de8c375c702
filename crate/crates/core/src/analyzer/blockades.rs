use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::walks::total_walks;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// A walk as its node sequence; its length is one less than its node count.
pub type Walk = Vec<NodeId>;

/// Largest number of walks of one length that blockade construction will
/// enumerate explicitly.
const ENUMERATION_CAP: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockadeLevel {
    pub walks: Vec<Walk>,
    /// Number of walks of this length in the whole graph.
    pub total_walks: u128,
    pub fraction: f64,
    /// Largest unblocked pair count seen before each selection.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub max_unblocked_log: Vec<u128>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BlockadeSet {
    pub phi: f64,
    /// Keyed by walk length.
    pub levels: BTreeMap<usize, BlockadeLevel>,
}

fn is_walk(g: &Graph, w: &[NodeId]) -> bool {
    w.len() >= 2 && w.iter().all(|&x| x < g.n()) && w.windows(2).all(|p| g.has_edge(p[0], p[1]))
}

impl BlockadeSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Groups arbitrary walks of `g` into levels. The `phi` bound is
    /// recorded but not enforced; see [`BlockadeSet::within_fraction`].
    pub fn from_walks<I: IntoIterator<Item = Walk>>(g: &Graph, phi: f64, walks: I) -> Result<Self> {
        let mut grouped: BTreeMap<usize, BTreeSet<Walk>> = BTreeMap::new();
        for w in walks {
            if !is_walk(g, &w) {
                return Err(Error::InvalidParameter(format!(
                    "{w:?} is not a walk of positive length"
                )));
            }
            grouped.entry(w.len() - 1).or_default().insert(w);
        }
        let mut levels = BTreeMap::new();
        for (len, ws) in grouped {
            let total = total_walks(g, len)?;
            levels.insert(
                len,
                BlockadeLevel {
                    fraction: ws.len() as f64 / total as f64,
                    walks: ws.into_iter().collect(),
                    total_walks: total,
                    max_unblocked_log: Vec::new(),
                },
            );
        }
        Ok(BlockadeSet { phi, levels })
    }

    pub fn len(&self) -> usize {
        self.levels.values().map(|l| l.walks.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when every level holds at most a `phi` fraction of the walks of its length.
    pub fn within_fraction(&self) -> bool {
        self.levels
            .values()
            .all(|l| l.walks.len() as f64 <= self.phi * l.total_walks as f64)
    }

    pub(crate) fn count_longer_than(&self, i: usize) -> usize {
        self.levels.range(i + 1..).map(|(_, l)| l.walks.len()).sum()
    }

    /// Node windows (a blockade or its reversal) that block a walk, keyed
    /// by blockade length, for lengths up to `i`.
    pub(crate) fn blocked_windows(&self, i: usize) -> BTreeMap<usize, HashSet<Vec<u32>>> {
        self.levels
            .range(..=i)
            .filter(|(_, l)| !l.walks.is_empty())
            .map(|(&len, l)| {
                let set = l
                    .walks
                    .iter()
                    .flat_map(|w| {
                        let fwd: Vec<u32> = w.iter().map(|&x| x as u32).collect();
                        let mut rev = fwd.clone();
                        rev.reverse();
                        [fwd, rev]
                    })
                    .collect();
                (len, set)
            })
            .collect()
    }
}

/// `(4 psi)^-k`, with `psi` the measured max/min degree ratio of `g`
/// (isolated nodes ignored).
pub fn default_phi(g: &Graph, k: usize) -> f64 {
    let degrees: Vec<usize> = g.degrees().into_iter().filter(|&d| d > 0).collect();
    let psi = match (degrees.iter().min(), degrees.iter().max()) {
        (Some(&lo), Some(&hi)) => hi as f64 / lo as f64,
        _ => 1.0,
    };
    (4.0 * psi).powi(-(k as i32))
}

/// Every `len`-walk not blocked by `windows`, grouped by endpoints and
/// sorted lexicographically.
fn unblocked_walks(
    g: &Graph,
    len: usize,
    windows: &BTreeMap<usize, HashSet<Vec<u32>>>,
) -> BTreeMap<(NodeId, NodeId), BTreeSet<Walk>> {
    fn extend(
        g: &Graph,
        len: usize,
        windows: &BTreeMap<usize, HashSet<Vec<u32>>>,
        walk: &mut Vec<u32>,
        out: &mut BTreeMap<(NodeId, NodeId), BTreeSet<Walk>>,
    ) {
        if walk.len() == len + 1 {
            let w: Walk = walk.iter().map(|&x| x as usize).collect();
            out.entry((w[0], w[len])).or_default().insert(w);
            return;
        }
        let last = *walk.last().unwrap() as usize;
        for (y, _, _) in g.neighbors(last) {
            walk.push(y as u32);
            let blocked = windows
                .iter()
                .any(|(&l, set)| walk.len() > l && set.contains(&walk[walk.len() - l - 1..]));
            if !blocked {
                extend(g, len, windows, walk, out);
            }
            walk.pop();
        }
    }
    let mut out = BTreeMap::new();
    for u in 0..g.n() {
        extend(g, len, windows, &mut vec![u as u32], &mut out);
    }
    out
}

/// Builds `B_2, ..., B_{k-1}` greedily.
///
/// At level `i`, the ordered pair `(u, v)` with the most unblocked
/// `i`-walks is chosen (ties: smallest pair) and its lexicographically
/// smallest unblocked walk becomes a blockade, as long as the level stays
/// within a `phi` fraction of all `i`-walks. The budget `f` does not steer
/// the construction; it is accepted so callers can pass the same
/// parameters they report alongside.
pub fn build_blockades(g: &Graph, k: usize, f: usize, phi: f64) -> Result<BlockadeSet> {
    let _ = f;
    if k < 2 {
        return Err(Error::InvalidParameter("blockades need k >= 2".into()));
    }
    if !(phi > 0.0 && phi < 1.0) {
        return Err(Error::InvalidParameter(format!("phi must lie in (0, 1), got {phi}")));
    }
    let mut set = BlockadeSet {
        phi,
        levels: BTreeMap::new(),
    };
    for i in 2..k {
        let total = total_walks(g, i)?;
        if total > ENUMERATION_CAP {
            return Err(Error::InvalidParameter(format!(
                "{total} walks of length {i} exceed the enumeration cap {ENUMERATION_CAP}"
            )));
        }
        let budget = (phi * total as f64).floor() as usize;
        let windows = set.blocked_windows(i - 1);
        let mut by_pair = unblocked_walks(g, i, &windows);
        let mut chosen: Vec<Walk> = Vec::new();
        let mut log = Vec::new();
        // Bucket pairs by count so the maximum is cheap to find.
        let mut buckets: BTreeMap<usize, BTreeSet<(NodeId, NodeId)>> = BTreeMap::new();
        for (&pair, ws) in &by_pair {
            buckets.entry(ws.len()).or_default().insert(pair);
        }
        let mut count_of: HashMap<(NodeId, NodeId), usize> = by_pair.iter().map(|(&p, ws)| (p, ws.len())).collect();
        while chosen.len() < budget {
            let Some((&max, pairs)) = buckets.iter().next_back() else {
                break;
            };
            if max == 0 {
                break;
            }
            let pair = *pairs.iter().next().unwrap();
            log.push(max as u128);
            let walk = by_pair.get_mut(&pair).unwrap().pop_first().unwrap();
            let mut rev = walk.clone();
            rev.reverse();
            let mut touched = vec![pair];
            let rpair = (pair.1, pair.0);
            if by_pair.get_mut(&rpair).is_some_and(|ws| ws.remove(&rev)) && rpair != pair {
                touched.push(rpair);
            }
            for p in touched {
                let old = count_of[&p];
                let new = by_pair[&p].len();
                let bucket = buckets.get_mut(&old).unwrap();
                bucket.remove(&p);
                if bucket.is_empty() {
                    buckets.remove(&old);
                }
                if new > 0 {
                    buckets.entry(new).or_default().insert(p);
                }
                count_of.insert(p, new);
            }
            chosen.push(walk);
        }
        set.levels.insert(
            i,
            BlockadeLevel {
                fraction: chosen.len() as f64 / total as f64,
                walks: chosen,
                total_walks: total,
                max_unblocked_log: log,
            },
        );
    }
    Ok(set)
}
