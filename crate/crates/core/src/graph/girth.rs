use std::collections::VecDeque;

use super::{Graph, NodeId};

/// Length in edges of the shortest cycle, ignoring weights. `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    shortest_cycle(g).map(|c| c.len())
}

/// A shortest cycle as its node sequence (first node not repeated).
///
/// BFS from every root; a non-tree edge `(x, y)` closes a closed walk of
/// length `d(x) + d(y) + 1` through the root. The minimum over all roots
/// is the girth, and at that minimum the two tree branches are disjoint.
pub fn shortest_cycle(g: &Graph) -> Option<Vec<NodeId>> {
    let n = g.n();
    let mut best: Option<(usize, NodeId, NodeId, NodeId)> = None;
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let mut best_parents: Vec<usize> = Vec::new();

    for root in 0..n {
        depth.iter_mut().for_each(|d| *d = usize::MAX);
        queue.clear();
        depth[root] = 0;
        parent[root] = usize::MAX;
        queue.push_back(root);
        let mut found: Option<(usize, NodeId, NodeId)> = None;
        while let Some(x) = queue.pop_front() {
            let limit = match (best, found) {
                (Some((b, ..)), Some((f, ..))) => Some(b.min(f)),
                (Some((b, ..)), None) => Some(b),
                (None, Some((f, ..))) => Some(f),
                (None, None) => None,
            };
            // Nothing reachable from here can close a shorter cycle.
            if limit.is_some_and(|l| 2 * depth[x] + 1 >= l) {
                break;
            }
            for (y, _, _) in g.neighbors(x) {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let len = depth[x] + depth[y] + 1;
                    if found.is_none_or(|(f, ..)| len < f) {
                        found = Some((len, x, y));
                    }
                }
            }
        }
        if let Some((len, x, y)) = found {
            if best.is_none_or(|(b, ..)| len < b) {
                best = Some((len, root, x, y));
                best_parents.clone_from(&parent);
            }
        }
    }

    let (_, root, x, y) = best?;
    let climb = |mut z: NodeId| {
        let mut up = vec![z];
        while z != root {
            z = best_parents[z];
            up.push(z);
        }
        up
    };
    // root .. x, then y .. back toward root (excluding root).
    let mut cycle = climb(x);
    cycle.reverse();
    let mut tail = climb(y);
    tail.pop();
    cycle.extend(tail);
    Some(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(n: usize) -> Graph {
        Graph::unweighted(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn is_cycle(g: &Graph, c: &[NodeId]) -> bool {
        let mut sorted = c.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == c.len() && c.len() >= 3 && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
    }

    #[test]
    fn cycles_and_forests() {
        for n in 3..9 {
            let g = cycle_graph(n);
            assert_eq!(girth(&g), Some(n));
            assert!(is_cycle(&g, &shortest_cycle(&g).unwrap()));
        }
        let tree = Graph::unweighted(5, [(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(girth(&tree), None);
        assert_eq!(girth(&Graph::new(0)), None);
    }

    #[test]
    fn chorded_cycle_reports_the_short_side() {
        let mut g = cycle_graph(8);
        g.add_edge(0, 3, 1.0).unwrap();
        let c = shortest_cycle(&g).unwrap();
        assert_eq!(c.len(), 4);
        assert!(is_cycle(&g, &c));
    }
}
