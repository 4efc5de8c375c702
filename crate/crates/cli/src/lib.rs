//! Command-line driver: one [`RunConfig`] in, one report and exit status out.

mod commands;
mod config;
mod report;

use std::fs;

use serde_json::Value;

pub use commands::random_graph;
pub use config::{Command, Format, RunConfig, SpannerArgs, Weights};
pub use report::{to_text, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerificationFailed = 1,
    UsageError = 2,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: ExitStatus,
    /// Rendered report; `None` when it went to `--output` or the run failed.
    pub stdout: Option<String>,
    pub error: Option<String>,
}

impl Outcome {
    fn error(message: String) -> Self {
        Outcome {
            status: ExitStatus::UsageError,
            stdout: None,
            error: Some(message),
        }
    }
}

/// Builds the full report document for `cfg`.
pub fn report(cfg: &RunConfig) -> anyhow::Result<(bool, Value)> {
    let out = commands::execute(cfg)?;
    let mut config = serde_json::to_value(cfg)?;
    if let Value::Object(map) = &mut config {
        map.insert("resolved".into(), Value::Object(out.resolved));
    }
    let status = if out.passed { "pass" } else { "fail" };
    Ok((
        out.passed,
        report::envelope(cfg.command.name(), status, config, out.body),
    ))
}

pub fn run(cfg: &RunConfig) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => return Outcome::error(format!("thread pool: {e}")),
    };
    let (passed, doc) = match pool.install(|| report(cfg)) {
        Ok(r) => r,
        Err(e) => return Outcome::error(format!("{e:#}")),
    };
    let rendered = match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => to_text(&doc),
    };
    let status = if passed {
        ExitStatus::Success
    } else {
        ExitStatus::VerificationFailed
    };
    match &cfg.output {
        Some(path) => match fs::write(path, &rendered) {
            Ok(()) => Outcome {
                status,
                stdout: None,
                error: None,
            },
            Err(e) => Outcome::error(format!("writing {}: {e}", path.display())),
        },
        None => Outcome {
            status,
            stdout: Some(rendered),
            error: None,
        },
    }
}
