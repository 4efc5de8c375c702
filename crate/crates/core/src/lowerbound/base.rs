//! High-girth base graphs: a small registry of named cages, projective
//! plane incidence graphs, and a seeded random fallback.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{girth, shortest_cycle, Graph};

const REGISTRY: &str = include_str!("registry.txt");

#[derive(Debug, Clone, PartialEq)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
    pub girth: usize,
}

fn registry_err(name: &str, message: impl Into<String>) -> Error {
    Error::Registry {
        name: name.to_string(),
        message: message.into(),
    }
}

/// Parses the embedded registry and re-verifies each recorded girth.
pub fn registry() -> Result<Vec<NamedGraph>> {
    let mut out = Vec::new();
    let mut lines = REGISTRY.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    while let Some(header) = lines.next() {
        let fields: Vec<&str> = header.split_whitespace().collect();
        let ["graph", name, n, m, recorded] = fields[..] else {
            return Err(registry_err("?", format!("bad header {header:?}")));
        };
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| registry_err(name, format!("bad number {s:?}")))
        };
        let (n, m, recorded) = (parse(n)?, parse(m)?, parse(recorded)?);
        let mut g = Graph::new(n);
        for line in lines.by_ref() {
            if line == "end" {
                break;
            }
            let (node, rest) = line
                .split_once(':')
                .ok_or_else(|| registry_err(name, format!("bad adjacency line {line:?}")))?;
            let u = parse(node.trim())?;
            for v in rest.split_whitespace() {
                let v = parse(v)?;
                if u < v {
                    g.add_edge(u, v, 1.0).map_err(|e| registry_err(name, e.to_string()))?;
                } else if !g.has_edge(u, v) {
                    return Err(registry_err(name, format!("asymmetric adjacency {u} -> {v}")));
                }
            }
        }
        if g.m() != m {
            return Err(registry_err(name, format!("expected {m} edges, read {}", g.m())));
        }
        let actual = girth(&g).unwrap_or(usize::MAX);
        if actual != recorded {
            return Err(registry_err(
                name,
                format!("recorded girth {recorded}, computed {actual}"),
            ));
        }
        out.push(NamedGraph {
            name: name.to_string(),
            graph: g,
            girth: recorded,
        });
    }
    Ok(out)
}

pub fn registry_graph(name: &str) -> Result<NamedGraph> {
    registry()?
        .into_iter()
        .find(|g| g.name == name)
        .ok_or_else(|| registry_err(name, "no such graph"))
}

pub(crate) fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Incidence graph of the projective plane over `GF(q)`, `q` prime.
///
/// Points `0..q^2+q+1` come first, lines follow; a point is joined to a
/// line when their homogeneous coordinates are orthogonal mod `q`. The
/// result is `(q+1)`-regular with girth 6.
pub fn projective_plane_incidence(q: usize) -> Result<Graph> {
    if !is_prime(q) {
        return Err(Error::InvalidParameter(format!(
            "projective plane order {q} is not prime"
        )));
    }
    // Normalised representatives: first nonzero coordinate equals 1.
    let mut reps: Vec<[usize; 3]> = Vec::new();
    for a in 0..q {
        for b in 0..q {
            reps.push([1, a, b]);
        }
    }
    for b in 0..q {
        reps.push([0, 1, b]);
    }
    reps.push([0, 0, 1]);
    let count = reps.len();
    let mut g = Graph::new(2 * count);
    for (p, x) in reps.iter().enumerate() {
        for (l, y) in reps.iter().enumerate() {
            if (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) % q == 0 {
                g.add_edge(p, count + l, 1.0)?;
            }
        }
    }
    Ok(g)
}

/// Random graph on `n` nodes with every cycle of length at most `2k + 1`
/// broken by deleting one random edge of it. No density guarantee.
pub fn random_high_girth(n: usize, k: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degree = (n as f64).powf(1.0 / k.max(1) as f64);
    let p = if n > 1 { (degree / (n - 1) as f64).min(1.0) } else { 0.0 };
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v, 1.0).expect("fresh pair");
            }
        }
    }
    while let Some(cycle) = shortest_cycle(&g) {
        if cycle.len() >= 2 * k + 2 {
            break;
        }
        let i = *(0..cycle.len())
            .collect::<Vec<_>>()
            .choose(&mut rng)
            .expect("nonempty cycle");
        let (a, b) = crate::graph::edge_key(cycle[i], cycle[(i + 1) % cycle.len()]);
        g = g.filter_edges(|e| e.key() != (a, b));
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseSource {
    Registry { name: String },
    ProjectivePlane { q: usize },
    Random { seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaseGraph {
    pub name: String,
    pub source: BaseSource,
    pub graph: Graph,
}

fn within_factor_two(n: usize, target: usize) -> bool {
    n <= 2 * target && 2 * n >= target
}

/// A unit-weight graph with girth at least `2k + 2` and close to
/// `target_n` nodes: registry first, then (for `k <= 2`) projective
/// planes, then the random fallback when a seed is supplied.
pub fn base_girth_graph(k: usize, target_n: usize, seed: Option<u64>) -> Result<BaseGraph> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let required = 2 * k + 2;
    let mut largest: Option<(usize, String)> = None;
    let mut note = |n: usize, name: &str| {
        if largest.as_ref().is_none_or(|(m, _)| n > *m) {
            largest = Some((n, format!("{name} ({n} nodes)")));
        }
    };

    let fitting = registry()?.into_iter().filter(|r| r.girth >= required);
    let mut best: Option<NamedGraph> = None;
    for r in fitting {
        note(r.graph.n(), &r.name);
        if within_factor_two(r.graph.n(), target_n)
            && best
                .as_ref()
                .is_none_or(|b| r.graph.n().abs_diff(target_n) < b.graph.n().abs_diff(target_n))
        {
            best = Some(r);
        }
    }
    if let Some(b) = best {
        return Ok(BaseGraph {
            name: b.name.clone(),
            source: BaseSource::Registry { name: b.name },
            graph: b.graph,
        });
    }

    if required <= 6 {
        let nodes = |q: usize| 2 * (q * q + q + 1);
        let q = (2..)
            .filter(|&q| is_prime(q))
            .take_while(|&q| nodes(q) <= 2 * target_n.max(1))
            .filter(|&q| within_factor_two(nodes(q), target_n))
            .min_by_key(|&q| nodes(q).abs_diff(target_n));
        if let Some(q) = q {
            return Ok(BaseGraph {
                name: format!("pg2-{q}"),
                source: BaseSource::ProjectivePlane { q },
                graph: projective_plane_incidence(q)?,
            });
        }
    }

    if let Some(seed) = seed {
        return Ok(BaseGraph {
            name: format!("random-{target_n}-{seed}"),
            source: BaseSource::Random { seed },
            graph: random_high_girth(target_n, k, seed),
        });
    }
    Err(Error::NoBaseGraph {
        target: target_n,
        largest: largest.map(|(_, s)| s).unwrap_or_else(|| "none".into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_loads_and_verifies() {
        let reg = registry().unwrap();
        let summary: Vec<_> = reg
            .iter()
            .map(|r| (r.name.as_str(), r.graph.n(), r.graph.m(), r.girth))
            .collect();
        assert_eq!(
            summary,
            vec![
                ("petersen", 10, 15, 5),
                ("heawood", 14, 21, 6),
                ("mcgee", 24, 36, 7),
                ("tutte-coxeter", 30, 45, 8)
            ]
        );
        for r in &reg {
            assert!(r.graph.degrees().iter().all(|&d| d == 3), "{} is cubic", r.name);
        }
    }

    #[test]
    fn projective_planes_have_girth_six() {
        for q in [2, 3, 5] {
            let g = projective_plane_incidence(q).unwrap();
            let points = q * q + q + 1;
            assert_eq!(g.n(), 2 * points);
            assert_eq!(g.m(), (q + 1) * points);
            assert!(g.degrees().iter().all(|&d| d == q + 1));
            assert_eq!(girth(&g), Some(6));
        }
        assert!(projective_plane_incidence(4).is_err());
    }

    #[test]
    fn fano_incidence_is_heawood() {
        let g = projective_plane_incidence(2).unwrap();
        let heawood = registry_graph("heawood").unwrap().graph;
        assert_eq!((g.n(), g.m()), (heawood.n(), heawood.m()));
        assert_eq!(girth(&g), girth(&heawood));
    }

    #[test]
    fn base_selection_prefers_registry() {
        let b = base_girth_graph(2, 14, None).unwrap();
        assert_eq!(b.name, "heawood");
        assert_eq!((b.graph.n(), b.graph.m()), (14, 21));
        let b = base_girth_graph(3, 30, None).unwrap();
        assert_eq!(b.name, "tutte-coxeter");
        let b = base_girth_graph(2, 62, None).unwrap();
        assert_eq!(b.source, BaseSource::ProjectivePlane { q: 5 });
        assert!(girth(&b.graph).unwrap() >= 6);
    }

    #[test]
    fn base_selection_errors_or_falls_back() {
        let err = base_girth_graph(3, 200, None).unwrap_err();
        assert!(matches!(err, Error::NoBaseGraph { target: 200, ref largest } if largest.contains("tutte-coxeter")));
        let b = base_girth_graph(3, 200, Some(7)).unwrap();
        assert_eq!(b.graph.n(), 200);
        assert!(girth(&b.graph).unwrap_or(usize::MAX) >= 8);
        assert_eq!(b.graph, base_girth_graph(3, 200, Some(7)).unwrap().graph);
    }

    #[test]
    fn primes() {
        let ps: Vec<_> = (0..20).filter(|&q| is_prime(q)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
