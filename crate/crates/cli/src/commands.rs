use heun_core::bounds::derive_constants;
use heun_core::chaos::{
    approximant, chaos_report, eigen_witness, eigenvector, periodic_point, periodic_witness, recurrence_u,
    series_csv, ChaosConfig, RecurrenceWitness,
};
use heun_core::indeterminacy::verdict;
use heun_core::serial::{fmt_f64, to_json, CsvTable};
use heun_core::{truncated_matrix, CoefficientVector, OperatorParams, Result, WeightSequence};

use crate::args::Command;

/// One file to write, named relative to the output directory.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub file: String,
    pub contents: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointOutput {
    pub summary: String,
    pub artifacts: Vec<Artifact>,
}

fn stem(cmd: &Command, params: OperatorParams) -> String {
    format!("{}_p{}_m{}", cmd.name(), params.p, params.m)
}

fn json(cmd: &Command, params: OperatorParams, contents: String) -> Artifact {
    Artifact { file: format!("{}.json", stem(cmd, params)), contents }
}

fn csv(cmd: &Command, params: OperatorParams, contents: String) -> Artifact {
    Artifact { file: format!("{}.csv", stem(cmd, params)), contents }
}

fn vector_csv(v: &CoefficientVector) -> String {
    series_csv(v.offset, &v.coeffs)
}

pub fn run_point(cmd: &Command, params: OperatorParams) -> Result<PointOutput> {
    let p = params.p as usize;
    let (summary, artifacts) = match cmd {
        Command::Weights { k_max, .. } => {
            let w = WeightSequence::new(params);
            let mut t = CsvTable::new(&["k", "up_sq", "down_sq", "up", "down"]);
            for k in 0..=*k_max {
                t.row(&[
                    k.to_string(),
                    w.up_sq_integer(k).map_or_else(|| "0".into(), |v| v.to_string()),
                    w.down_sq_integer(k).map_or_else(|| "0".into(), |v| v.to_string()),
                    fmt_f64(w.up(k)),
                    fmt_f64(w.down(k)),
                ]);
            }
            (format!("k = 0..={k_max}"), vec![csv(cmd, params, t.finish())])
        }
        Command::Matrix { n, .. } => {
            let mat = truncated_matrix(params, *n as usize);
            let mut t = CsvTable::new(&["row", "col", "value"]);
            for (i, j, v) in mat.triplets() {
                t.row(&[(p + i).to_string(), (p + j).to_string(), fmt_f64(v)]);
            }
            (
                format!("{n} x {n}, {} nonzeros", 2 * mat.band.len()),
                vec![csv(cmd, params, t.finish()), json(cmd, params, to_json(&mat))],
            )
        }
        Command::Indeterminacy { j, .. } => {
            let report = verdict(params, *j as usize)?;
            let text = serde_json::to_value(report.verdict).expect("verdict serializes");
            (format!("verdict {}", text.as_str().unwrap_or_default()), vec![json(cmd, params, to_json(&report))])
        }
        Command::ChaosCert { j, lambda, .. } => {
            let mut config = ChaosConfig { window: *j as usize, ..ChaosConfig::default() };
            if !lambda.is_empty() {
                config.lambdas = lambda.clone();
            }
            let report = chaos_report(params, &config)?;
            let text = serde_json::to_value(report.status).expect("status serializes");
            (format!("status {}", text.as_str().unwrap_or_default()), vec![json(cmd, params, to_json(&report))])
        }
        Command::Eigenvector { lambda, n, .. } => {
            let phi = eigenvector(*lambda, params, *n as usize)?;
            let witness = eigen_witness(*lambda, params, *n as usize)?;
            (
                format!("residual {}", fmt_f64(witness.residual)),
                vec![csv(cmd, params, vector_csv(&phi)), json(cmd, params, to_json(&witness))],
            )
        }
        Command::Periodic { s, n, j, .. } => {
            let s = s.unwrap_or(p.max(1));
            let period = n.map_or(s + 1, |n| n as usize);
            let point = periodic_point(s, period, params, *j as usize)?;
            let witness = periodic_witness(s, period, params, *j as usize)?;
            (
                format!("s = {s}, N = {period}, residual {}", fmt_f64(witness.residual)),
                vec![csv(cmd, params, vector_csv(&point.to_vector())), json(cmd, params, to_json(&witness))],
            )
        }
        Command::Recurrence { lambda, n, .. } => {
            let sol = recurrence_u(*lambda, params, *n as usize)?;
            let witness = RecurrenceWitness::from_solution(&sol, 32);
            (
                format!("partial norm^2 {}", fmt_f64(sol.partial_norm_sq)),
                vec![csv(cmd, params, series_csv(1, &sol.u)), json(cmd, params, to_json(&witness))],
            )
        }
        Command::Approximant { target, eps, max_depth, .. } => {
            let targets: Vec<CoefficientVector> = if target.is_empty() {
                vec![CoefficientVector::from_real(p, &[1.0]), CoefficientVector::from_real(p, &[0.0, 2.0])]
            } else {
                target.iter().map(|t| CoefficientVector::from_real(p, t)).collect()
            };
            let a = approximant(&targets, *eps, params, *max_depth)?;
            (
                format!("hit times {:?}", a.hit_times),
                vec![csv(cmd, params, vector_csv(&a.phi)), json(cmd, params, to_json(&a))],
            )
        }
        Command::Bound { j, eps, k_max, .. } => {
            let j = j.unwrap_or(params.degree() as usize / 2 + 1);
            let cert = derive_constants(params, j, *eps, *k_max)?;
            (format!("j = {j}, C_eps = {}", fmt_f64(cert.c_eps)), vec![json(cmd, params, to_json(&cert))])
        }
    };
    Ok(PointOutput { summary, artifacts })
}
