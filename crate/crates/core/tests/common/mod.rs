//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use ftspanner_core::graph::{exceeds, Graph};
use ftspanner_core::{FaultMode, FaultSet, NodeId};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) with integer weights drawn from `1..=max_w` (`max_w == 1` gives unit weights).
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, max_w: u32) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                let w = rng.gen_range(1..=max_w) as f64;
                g.add_edge(u, v, w).unwrap();
            }
        }
    }
    g
}

/// Random subgraph keeping each edge with probability `p`.
pub fn random_subgraph(rng: &mut ChaCha8Rng, g: &Graph, p: f64) -> Graph {
    let mut h = Graph::new(g.n());
    for e in g.edges() {
        if rng.gen_bool(p) {
            h.add_edge(e.u, e.v, e.w).unwrap();
        }
    }
    h
}

/// All-pairs distances by Floyd-Warshall after deleting `faults`.
/// Unreachable pairs are `f64::INFINITY`.
pub fn floyd(g: &Graph, faults: &FaultSet) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (x, row) in d.iter_mut().enumerate() {
        row[x] = 0.0;
    }
    for e in g.edges() {
        if faults.contains_vertex(e.u) || faults.contains_vertex(e.v) || faults.contains_edge(e.u, e.v) {
            continue;
        }
        d[e.u][e.v] = d[e.u][e.v].min(e.w);
        d[e.v][e.u] = d[e.v][e.u].min(e.w);
    }
    for m in 0..n {
        if faults.contains_vertex(m) {
            continue;
        }
        for a in 0..n {
            for b in 0..n {
                let via = d[a][m] + d[m][b];
                if via < d[a][b] {
                    d[a][b] = via;
                }
            }
        }
    }
    d
}

/// Every subset of `items` with at most `f` members.
pub fn subsets<T: Clone>(items: &[T], f: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    fn rec<T: Clone>(items: &[T], start: usize, f: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == f {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            out.push(cur.clone());
            rec(items, i + 1, f, cur, out);
            cur.pop();
        }
    }
    rec(items, 0, f, &mut Vec::new(), &mut out);
    out
}

/// Every fault set of size at most `f`. Vertex sets avoid `avoid`.
pub fn all_fault_sets(g: &Graph, f: usize, mode: FaultMode, avoid: &[NodeId]) -> Vec<FaultSet> {
    match mode {
        FaultMode::Vertex => {
            let cands: Vec<NodeId> = (0..g.n()).filter(|x| !avoid.contains(x)).collect();
            subsets(&cands, f).into_iter().map(FaultSet::vertices).collect()
        }
        FaultMode::Edge => {
            let cands: Vec<(NodeId, NodeId)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
            subsets(&cands, f).into_iter().map(FaultSet::edges).collect()
        }
    }
}

/// Definition-level protection: no fault set of size at most `f` (avoiding
/// the endpoints) pushes `dist_{h-F}(u, v)` above `threshold`.
pub fn brute_protected(h: &Graph, u: NodeId, v: NodeId, threshold: f64, f: usize, mode: FaultMode) -> bool {
    all_fault_sets(h, f, mode, &[u, v])
        .iter()
        .all(|fs| !exceeds(floyd(h, fs)[u][v], threshold))
}

/// Definition-level fault-tolerant spanner check.
pub fn brute_is_ft_spanner(g: &Graph, h: &Graph, f: usize, t: f64, mode: FaultMode) -> bool {
    all_fault_sets(g, f, mode, &[]).iter().all(|fs| {
        let dg = floyd(g, fs);
        let dh = floyd(h, fs);
        (0..g.n()).all(|a| {
            (a + 1..g.n()).all(|b| {
                fs.contains_vertex(a)
                    || fs.contains_vertex(b)
                    || dg[a][b].is_infinite()
                    || !exceeds(dh[a][b], t * dg[a][b])
            })
        })
    })
}

/// `trace(A^len)` by repeated dense matrix multiplication.
pub fn trace_of_power(g: &Graph, len: usize) -> u128 {
    let n = g.n();
    let mut a = vec![vec![0u128; n]; n];
    for e in g.edges() {
        a[e.u][e.v] = 1;
        a[e.v][e.u] = 1;
    }
    let mut p = vec![vec![0u128; n]; n];
    for (x, row) in p.iter_mut().enumerate() {
        row[x] = 1;
    }
    for _ in 0..len {
        let mut next = vec![vec![0u128; n]; n];
        for i in 0..n {
            for m in 0..n {
                if p[i][m] == 0 {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += p[i][m] * a[m][j];
                }
            }
        }
        p = next;
    }
    (0..n).map(|x| p[x][x]).sum()
}

/// Every walk with `len` edges, as node sequences.
pub fn enumerate_walks(g: &Graph, len: usize) -> Vec<Vec<NodeId>> {
    let mut out = Vec::new();
    fn rec(g: &Graph, len: usize, cur: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        if cur.len() == len + 1 {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().unwrap();
        for y in 0..g.n() {
            if g.has_edge(last, y) {
                cur.push(y);
                rec(g, len, cur, out);
                cur.pop();
            }
        }
    }
    for u in 0..g.n() {
        rec(g, len, &mut vec![u], &mut out);
    }
    out
}

/// Whether `walk` contains `b` or its reversal as a contiguous piece.
pub fn contains_blockade(walk: &[NodeId], b: &[NodeId]) -> bool {
    let rev: Vec<NodeId> = b.iter().rev().copied().collect();
    walk.windows(b.len()).any(|w| w == b || w == rev.as_slice())
}

/// Shortest cycle length by enumerating simple cycles through every edge
/// (remove the edge, BFS between its endpoints).
pub fn brute_girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for e in g.edges() {
        let mut dist = vec![usize::MAX; g.n()];
        dist[e.u] = 0;
        let mut queue = std::collections::VecDeque::from([e.u]);
        while let Some(x) = queue.pop_front() {
            for y in 0..g.n() {
                if g.has_edge(x, y) && !((x == e.u && y == e.v) || (x == e.v && y == e.u)) && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if dist[e.v] != usize::MAX {
            let c = dist[e.v] + 1;
            best = Some(best.map_or(c, |b| b.min(c)));
        }
    }
    best
}
