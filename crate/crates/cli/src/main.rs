mod args;
mod commands;

use std::fs;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use heun_core::{HeunError, OperatorParams, WorkingPrecision};
use rayon::prelude::*;
use serde_json::json;

use args::{Cli, Command};
use commands::run_point;

fn error_kind(e: &HeunError) -> &'static str {
    match e {
        HeunError::InvalidParams(_) => "invalid_params",
        HeunError::Domain(_) => "domain",
        HeunError::NotFinite(_) => "not_finite",
        HeunError::Precision { .. } => "precision",
        HeunError::Hypothesis(_) => "hypothesis",
        HeunError::Unsupported(_) => "unsupported",
        HeunError::ApproximantFailed { .. } => "approximant_failed",
        HeunError::SearchExhausted(_) => "search_exhausted",
    }
}

fn report_failure(as_json: bool, command: &str, errors: Vec<serde_json::Value>) -> ExitCode {
    if as_json {
        let body = json!({ "command": command, "errors": errors });
        println!("{}", serde_json::to_string_pretty(&body).expect("json value"));
    } else {
        for e in &errors {
            let at = match (e.get("p"), e.get("m")) {
                (Some(p), Some(m)) => format!(" at (p={p}, m={m})"),
                _ => String::new(),
            };
            eprintln!("heun {command}{at}: {}", e["message"].as_str().unwrap_or_default());
        }
    }
    ExitCode::from(1)
}

fn run(cmd: Command) -> anyhow::Result<ExitCode> {
    let common = cmd.common().clone();
    let name = cmd.name();
    if let Err(e) = WorkingPrecision::new(common.precision_bits) {
        let err = json!({ "kind": error_kind(&e), "message": e.to_string() });
        return Ok(report_failure(common.error_json, name, vec![err]));
    }
    let grid: Vec<(u32, u32)> = common.p.0.iter().flat_map(|&p| common.m.0.iter().map(move |&m| (p, m))).collect();
    // rayon keeps the grid order in the collected vector
    let results: Vec<_> = grid
        .par_iter()
        .map(|&(p, m)| OperatorParams::new(p, m).and_then(|params| run_point(&cmd, params)))
        .collect();

    fs::create_dir_all(&common.out).with_context(|| format!("creating {}", common.out.display()))?;
    let mut errors = Vec::new();
    for (&(p, m), result) in grid.iter().zip(results) {
        match result {
            Ok(out) => {
                for a in &out.artifacts {
                    let path = common.out.join(&a.file);
                    fs::write(&path, &a.contents).with_context(|| format!("writing {}", path.display()))?;
                }
                println!("{name} (p={p}, m={m}): {}", out.summary);
            }
            Err(e) => errors.push(json!({ "p": p, "m": m, "kind": error_kind(&e), "message": e.to_string() })),
        }
    }
    if errors.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(report_failure(common.error_json, name, errors))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let wants_json = std::env::args().any(|a| a == "--error-json");
            if wants_json && e.use_stderr() {
                let err = json!({ "kind": "usage", "message": e.to_string().trim_end() });
                return report_failure(true, "heun", vec![err]);
            }
            e.exit();
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("heun: {e:#}");
            ExitCode::from(1)
        }
    }
}
