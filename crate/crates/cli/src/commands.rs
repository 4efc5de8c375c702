use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use ftspanner_core::analyzer::{
    build_blockades, default_c, default_phi, density_report, regularize, walk_stats_with_closed, BlockadeSet,
    DegreeStats,
};
use ftspanner_core::graph::{girth, parse_edge_list, to_edge_list};
use ftspanner_core::lowerbound::{
    base_girth, base_girth_graph, check_criticality, eft_blowup_with_variant, projective_plane_incidence,
    registry_graph, vft_blowup, BaseSource, EftVariant,
};
use ftspanner_core::spanner::{greedy_ft_spanner, replay_trace_detailed, ReplayOutcome, SpannerParams, SpannerResult};
use ftspanner_core::verifier::{verify_exhaustive, verify_per_edge};
use ftspanner_core::{FaultMode, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::config::{Command, RunConfig, SpannerArgs, Weights};

/// Result of one command: whether it passed, report fields, and resolved
/// defaults to merge into the embedded config.
pub struct CommandOutput {
    pub passed: bool,
    pub body: Map<String, Value>,
    pub resolved: Map<String, Value>,
}

fn load(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("parsing graph {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn params(a: &SpannerArgs) -> Result<SpannerParams> {
    Ok(SpannerParams::new(a.f, a.k, a.mode)?)
}

fn object(pairs: Value) -> Map<String, Value> {
    match pairs {
        Value::Object(m) => m,
        _ => unreachable!("object() takes a JSON object"),
    }
}

pub fn execute(cfg: &RunConfig) -> Result<CommandOutput> {
    match &cfg.command {
        Command::Build {
            input,
            params: args,
            spanner_out,
            no_trace,
        } => {
            let g = load(input)?;
            let p = params(args)?;
            let r = greedy_ft_spanner(&g, &p)?;
            if let Some(path) = spanner_out {
                write(path, &to_edge_list(&r.h, &[]))?;
            }
            let density = density_report(&g, &r.h, p.f, p.k)?;
            let mut body = object(json!({
                "input": {"n": g.n(), "m": g.m()},
                "stretch": p.stretch(),
                "edges": r.h.m(),
                "skipped": g.m() - r.h.m(),
                "density": density,
                "spanner": r.h,
            }));
            if !no_trace {
                body.insert("trace".into(), serde_json::to_value(&r.trace)?);
            }
            Ok(CommandOutput {
                passed: true,
                body,
                resolved: object(json!({"stretch": p.stretch()})),
            })
        }
        Command::Verify {
            input,
            spanner,
            params: args,
            stretch,
            exhaustive,
            per_edge,
            replay,
        } => {
            let g = load(input)?;
            let p = params(args)?;
            let t = stretch.unwrap_or(p.stretch());
            let resolved = object(json!({"stretch": t}));
            if let Some(path) = replay {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let report: Value = serde_json::from_str(&text).context("replay file is not JSON")?;
                let field = |name: &str| {
                    report
                        .get(name)
                        .cloned()
                        .ok_or_else(|| anyhow!("replay report lacks {name:?}"))
                };
                let r = SpannerResult {
                    h: serde_json::from_value(field("spanner")?)?,
                    trace: serde_json::from_value(field("trace")?)?,
                };
                let outcome = replay_trace_detailed(&g, &r, &p)?;
                let passed = outcome == ReplayOutcome::Consistent;
                return Ok(CommandOutput {
                    passed,
                    body: object(json!({
                        "method": "replay",
                        "verdict": if passed { "pass" } else { "fail" },
                        "outcome": format!("{outcome:?}"),
                        "records": r.trace.len(),
                    })),
                    resolved,
                });
            }
            let path = spanner
                .as_ref()
                .ok_or_else(|| anyhow!("--spanner is required with --exhaustive and --per-edge"))?;
            let h = load(path)?;
            if *exhaustive {
                let rep = verify_exhaustive(&g, &h, p.f, t, p.mode, cfg.work_cap)?;
                let mut body = object(json!({"method": "exhaustive"}));
                body.extend(object(serde_json::to_value(&rep)?));
                Ok(CommandOutput {
                    passed: rep.passed(),
                    body,
                    resolved,
                })
            } else {
                debug_assert!(*per_edge);
                let rep = verify_per_edge(&g, &h, p.f, t, p.mode)?;
                let mut body = object(json!({"method": "per-edge"}));
                body.extend(object(serde_json::to_value(&rep)?));
                Ok(CommandOutput {
                    passed: rep.report.passed(),
                    body,
                    resolved,
                })
            }
        }
        Command::Generate {
            params: args,
            variant,
            base,
            target_n,
            instance_out,
            greedy,
        } => {
            let p = params(args)?;
            let (name, source, graph) = match (base, target_n) {
                (Some(b), _) => match b.strip_prefix("projective:") {
                    Some(q) => {
                        let q: usize = q.parse().with_context(|| format!("bad projective plane order {q:?}"))?;
                        (
                            b.clone(),
                            BaseSource::ProjectivePlane { q },
                            projective_plane_incidence(q)?,
                        )
                    }
                    None => {
                        let r = registry_graph(b)?;
                        (r.name.clone(), BaseSource::Registry { name: r.name }, r.graph)
                    }
                },
                (None, Some(n)) => {
                    let b = base_girth_graph(p.k, *n, cfg.seed)?;
                    (b.name, b.source, b.graph)
                }
                (None, None) => bail!("one of --base or --target-n is required"),
            };
            let seed = match source {
                BaseSource::Random { seed } => Some(seed),
                _ => None,
            };
            let resolved_variant = match p.mode {
                FaultMode::Vertex => None,
                FaultMode::Edge => Some(variant.unwrap_or(if p.k <= 2 { EftVariant::K2 } else { EftVariant::General })),
            };
            let inst = match resolved_variant {
                None => vft_blowup(&graph, p.f, p.k)?,
                Some(v) => eft_blowup_with_variant(&graph, p.f, p.k, v)?,
            }
            .with_base_name(name.clone())
            .with_seed(seed);
            if let Some(path) = instance_out {
                write(path, &inst.to_edge_list())?;
            }
            let crit = check_criticality(&inst)?;
            let mut body = object(json!({
                "base": {"name": name, "source": source, "n": inst.base.n(), "m": inst.base.m(), "girth": base_girth(&inst)},
                "instance": {
                    "n": inst.blown.n(),
                    "m": inst.blown.m(),
                    "copies": inst.copies,
                    "witness_size": inst.witness_size(),
                    "metadata": inst.metadata().into_iter().map(|(k, v)| (k, Value::String(v))).collect::<Map<String, Value>>(),
                },
                "criticality": crit,
            }));
            if *greedy {
                let h = greedy_ft_spanner(&inst.blown, &p)?.h;
                body.insert(
                    "greedy".into(),
                    json!({"edges": h.m(), "kept_all": h.m() == inst.blown.m()}),
                );
            }
            Ok(CommandOutput {
                passed: crit.passed,
                body,
                resolved: object(json!({"variant": resolved_variant})),
            })
        }
        Command::Analyze {
            input,
            original,
            k,
            f,
            walks,
            closed,
            blockades,
            phi,
            regularize: do_regularize,
            c,
        } => {
            let h = load(input)?;
            let g = match original {
                Some(path) => load(path)?,
                None => h.clone(),
            };
            let i = walks.unwrap_or(*k);
            let mut resolved = object(json!({"walks": i}));
            let mut body = object(json!({
                "graph": {"n": h.n(), "m": h.m(), "girth": girth(&h)},
                "degree": DegreeStats::of(&h),
                "density": density_report(&g, &h, *f, *k)?,
            }));
            let b = if *blockades {
                let phi = phi.unwrap_or_else(|| default_phi(&h, *k));
                resolved.insert("phi".into(), json!(phi));
                let b = build_blockades(&h, *k, *f, phi)?;
                let levels: Map<String, Value> = b
                    .levels
                    .iter()
                    .map(|(len, l)| {
                        (
                            len.to_string(),
                            json!({
                                "selected": l.walks.len(),
                                "total_walks": l.total_walks,
                                "fraction": l.fraction,
                                "max_unblocked_first": l.max_unblocked_log.first(),
                                "max_unblocked_last": l.max_unblocked_log.last(),
                            }),
                        )
                    })
                    .collect();
                body.insert(
                    "blockades".into(),
                    json!({"phi": phi, "within_fraction": b.within_fraction(), "levels": levels}),
                );
                b
            } else {
                BlockadeSet::empty()
            };
            let mut lens = vec![2 * i];
            lens.extend(closed.iter().copied());
            lens.sort_unstable();
            lens.dedup();
            let s = walk_stats_with_closed(&h, i, &b, &lens)?;
            body.insert(
                "walks".into(),
                json!({
                    "i": s.i,
                    "total": s.total,
                    "meets": s.meets,
                    "max_pair_count": s.max_pair_count(),
                    "closed_walks": s.closed_walks.iter().map(|(l, c)| (l.to_string(), json!(c))).collect::<Map<String, Value>>(),
                    "inert_blockades": s.inert_blockades,
                }),
            );
            if *do_regularize {
                let c = c.unwrap_or_else(|| default_c(*k));
                resolved.insert("c".into(), json!(c));
                let r = regularize(&h, c)?;
                body.insert(
                    "regularize".into(),
                    json!({
                        "c": c,
                        "n": r.graph.n(),
                        "m": r.graph.m(),
                        "edge_retention": r.edge_retention,
                        "degree": r.stats,
                        "cases": r.case_sequence(),
                        "steps": r.cases,
                    }),
                );
            }
            Ok(CommandOutput {
                passed: true,
                body,
                resolved,
            })
        }
        Command::Bench {
            input,
            n,
            p,
            weights,
            k,
            mode,
            fs,
            no_timing,
        } => {
            let g = match input {
                Some(path) => load(path)?,
                None => {
                    let seed = cfg.seed.ok_or_else(|| anyhow!("bench without --input needs --seed"))?;
                    random_graph(*n, *p, *weights, seed)?
                }
            };
            if fs.is_empty() {
                bail!("--fs needs at least one fault budget");
            }
            let mut rows = Vec::new();
            let mut first = None;
            for &f in fs {
                let params = SpannerParams::new(f, *k, *mode)?;
                let start = Instant::now();
                let h = greedy_ft_spanner(&g, &params)?.h;
                let elapsed = start.elapsed();
                let base = *first.get_or_insert(h.m());
                let density = density_report(&g, &h, f, *k)?;
                let mut row = object(json!({
                    "f": f,
                    "edges": h.m(),
                    "ratio_to_first": h.m() as f64 / base as f64,
                    "bound_ratio": density.ratio,
                }));
                if !no_timing {
                    row.insert("millis".into(), json!(elapsed.as_millis() as u64));
                }
                rows.push(Value::Object(row));
            }
            Ok(CommandOutput {
                passed: true,
                body: object(json!({"graph": {"n": g.n(), "m": g.m()}, "rows": rows})),
                resolved: Map::new(),
            })
        }
    }
}

/// Seeded `G(n, p)`; each pair draws its coin first, then its weight.
pub fn random_graph(n: usize, p: f64, weights: Weights, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        bail!("edge probability must lie in [0, 1], got {p}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                let w = match weights {
                    Weights::Unit => 1.0,
                    Weights::Uniform => rng.gen_range(1.0..2.0),
                };
                g.add_edge(u, v, w)?;
            }
        }
    }
    Ok(g)
}
