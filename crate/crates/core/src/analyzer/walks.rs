use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::blockades::BlockadeSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

fn add(a: u128, b: u128) -> Result<u128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn mul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// Row `u` of `A^len`: number of `len`-walks from `u` to each node.
fn walk_row(g: &Graph, u: NodeId, len: usize) -> Result<Vec<u128>> {
    let mut cur = vec![0u128; g.n()];
    cur[u] = 1;
    let mut next = vec![0u128; g.n()];
    for _ in 0..len {
        next.iter_mut().for_each(|x| *x = 0);
        for (x, &c) in cur.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (y, _, _) in g.neighbors(x) {
                next[y] = add(next[y], c)?;
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(cur)
}

/// Closed walks of exactly `len` edges, counted with a designated start
/// and direction: the trace of `A^len`. Weights are ignored.
pub fn count_closed_walks(g: &Graph, len: usize) -> Result<u128> {
    if len == 0 {
        return Err(Error::InvalidParameter("walk length must be at least 1".into()));
    }
    (0..g.n()).try_fold(0u128, |acc, u| add(acc, walk_row(g, u, len)?[u]))
}

/// All `len`-walks in `g`: the sum of the entries of `A^len`.
pub fn total_walks(g: &Graph, len: usize) -> Result<u128> {
    let mut acc = 0u128;
    for u in 0..g.n() {
        for c in walk_row(g, u, len)? {
            acc = add(acc, c)?;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkStats {
    /// Walk length.
    pub i: usize,
    /// `counts[u][v]`: unblocked `i`-walks from `u` to `v`.
    pub counts: Vec<Vec<u128>>,
    pub total: u128,
    /// Unblocked `i`-walk meets: sum of squared counts.
    pub meets: u128,
    /// Closed-walk counts (ignoring blockades), by length.
    pub closed_walks: BTreeMap<usize, u128>,
    /// Blockades longer than `i`, which cannot occur inside an `i`-walk.
    pub inert_blockades: usize,
}

impl WalkStats {
    pub fn count(&self, u: NodeId, v: NodeId) -> u128 {
        self.counts[u][v]
    }

    pub fn max_pair_count(&self) -> u128 {
        self.counts.iter().flatten().copied().max().unwrap_or(0)
    }
}

/// [`walk_stats_with_closed`] requesting the closed walks of length `2i`.
pub fn walk_stats(g: &Graph, i: usize, blockades: &BlockadeSet) -> Result<WalkStats> {
    walk_stats_with_closed(g, i, blockades, &[2 * i])
}

/// Unblocked walk counts between every ordered pair.
///
/// A walk is blocked when some blockade or its reversal occurs in it as a
/// contiguous sub-walk. The count is a dynamic program over walk prefixes
/// whose state is the last `L` nodes, `L` being the longest relevant
/// blockade length.
pub fn walk_stats_with_closed(
    g: &Graph,
    i: usize,
    blockades: &BlockadeSet,
    closed_lengths: &[usize],
) -> Result<WalkStats> {
    if i == 0 {
        return Err(Error::InvalidParameter("walk length must be at least 1".into()));
    }
    let blocked = blockades.blocked_windows(i);
    let inert_blockades = blockades.count_longer_than(i);
    let window = blocked.keys().copied().max().unwrap_or(0);

    let mut counts = vec![vec![0u128; g.n()]; g.n()];
    for (u, row) in counts.iter_mut().enumerate() {
        if window == 0 {
            *row = walk_row(g, u, i)?;
            continue;
        }
        let mut states: HashMap<Vec<u32>, u128> = HashMap::from([(vec![u as u32], 1)]);
        let mut buf: Vec<u32> = Vec::with_capacity(window + 1);
        for _ in 0..i {
            let mut next: HashMap<Vec<u32>, u128> = HashMap::with_capacity(states.len());
            for (state, c) in &states {
                let last = *state.last().expect("states are nonempty") as usize;
                'ext: for (y, _, _) in g.neighbors(last) {
                    buf.clear();
                    buf.extend_from_slice(state);
                    buf.push(y as u32);
                    for (&len, set) in &blocked {
                        if buf.len() > len && set.contains(&buf[buf.len() - len - 1..]) {
                            continue 'ext;
                        }
                    }
                    let keep = buf.len().min(window);
                    let key = buf[buf.len() - keep..].to_vec();
                    let slot = next.entry(key).or_insert(0);
                    *slot = add(*slot, *c)?;
                }
            }
            states = next;
        }
        for (state, c) in states {
            let v = *state.last().unwrap() as usize;
            row[v] = add(row[v], c)?;
        }
    }

    let mut total = 0u128;
    let mut meets = 0u128;
    for &c in counts.iter().flatten() {
        total = add(total, c)?;
        meets = add(meets, mul(c, c)?)?;
    }
    let closed_walks = closed_lengths
        .iter()
        .map(|&len| Ok((len, count_closed_walks(g, len)?)))
        .collect::<Result<_>>()?;
    Ok(WalkStats {
        i,
        counts,
        total,
        meets,
        closed_walks,
        inert_blockades,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_walk_examples() {
        let edge = Graph::unweighted(2, [(0, 1)]).unwrap();
        assert_eq!(count_closed_walks(&edge, 2).unwrap(), 2);
        let triangle = Graph::unweighted(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(count_closed_walks(&triangle, 4).unwrap(), 18);
        let c4 = Graph::unweighted(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(count_closed_walks(&c4, 4).unwrap(), 32);
        assert_eq!(count_closed_walks(&c4, 3).unwrap(), 0);
        assert!(count_closed_walks(&c4, 0).is_err());
    }

    #[test]
    fn four_cycle_meets_equal_closed_four_walks() {
        let c4 = Graph::unweighted(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = walk_stats(&c4, 2, &BlockadeSet::empty()).unwrap();
        assert_eq!(s.meets, 32);
        assert_eq!(s.closed_walks[&4], 32);
        assert_eq!(s.total, 16);
        assert_eq!(total_walks(&c4, 2).unwrap(), 16);
    }

    #[test]
    fn only_walk_blocked_in_both_directions() {
        let path = Graph::unweighted(3, [(0, 1), (1, 2)]).unwrap();
        let b = BlockadeSet::from_walks(&path, 1.0, [vec![0, 1, 2]]).unwrap();
        let s = walk_stats(&path, 2, &b).unwrap();
        assert_eq!(s.count(0, 2), 0);
        assert_eq!(s.count(2, 0), 0);
        assert_eq!(s.count(0, 0), 1);
        let s = walk_stats(&path, 1, &b).unwrap();
        assert_eq!(s.inert_blockades, 1);
        assert_eq!(s.count(0, 1), 1);
    }

    #[test]
    fn complete_graph_overflow_is_reported() {
        let n = 40;
        let g = Graph::unweighted(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap();
        assert_eq!(count_closed_walks(&g, 30), Err(Error::Overflow));
    }
}
