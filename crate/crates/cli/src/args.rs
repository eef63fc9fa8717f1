use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(name = "heun", version, about = "Weights, indeterminacy and chaos certificates for H^{p,m}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Creation power p: a single value, a range `0-3`, or a list `0,2`.
    #[arg(long, default_value = "1", value_parser = parse_range)]
    pub p: Values,
    /// Shift step m, same syntax as `--p`.
    #[arg(long, default_value = "1", value_parser = parse_range)]
    pub m: Values,
    /// Output directory.
    #[arg(long, env = "HEUN_OUT_DIR", default_value = ".")]
    pub out: PathBuf,
    /// Mantissa bits of the floating path; only 53 is available.
    #[arg(long, default_value_t = 53)]
    pub precision_bits: u32,
    /// Print failures as a JSON object on stdout.
    #[arg(long)]
    pub error_json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// CSV of exact squared weights and their float roots.
    Weights {
        #[command(flatten)]
        common: Common,
        /// Last index `k`.
        #[arg(long, default_value_t = 100)]
        k_max: u64,
    },
    /// Truncated band matrix on `e_p .. e_{p+N-1}`.
    Matrix {
        #[command(flatten)]
        common: Common,
        #[arg(long = "N", default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Complete-indeterminacy report.
    Indeterminacy {
        #[command(flatten)]
        common: Common,
        /// Window: blocks checked for log-concavity and kernel terms kept.
        #[arg(long = "J", default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        j: u64,
    },
    /// Chaos report with the hypotheses witness.
    ChaosCert {
        #[command(flatten)]
        common: Common,
        /// Window for the hypotheses checks.
        #[arg(long = "J", default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        j: u64,
        /// Eigenvalue grid; repeat the flag for several values.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Vec<Complex64>,
    },
    /// Truncated eigenvector of the shift.
    Eigenvector {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        #[arg(long = "N", default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Truncated periodic point `phi_{s,N}`.
    Periodic {
        #[command(flatten)]
        common: Common,
        /// Base index; defaults to `max(p, 1)`.
        #[arg(long)]
        s: Option<usize>,
        /// Period; defaults to `s + 1`.
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n: Option<u64>,
        /// Retained terms.
        #[arg(long = "J", default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
        j: u64,
    },
    /// Three-term recurrence solution `u_n`.
    Recurrence {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "1", value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        #[arg(long = "N", default_value_t = 2048, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
    },
    /// Finite vector whose orbit visits each target within eps.
    Approximant {
        #[command(flatten)]
        common: Common,
        /// Real coefficients from `e_p` upward, comma separated; repeatable.
        /// Defaults to `e_p` and `2 e_{p+1}`.
        #[arg(long, value_parser = parse_reals, allow_hyphen_values = true)]
        target: Vec<Vec<f64>>,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[arg(long, default_value_t = heun_core::chaos::DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// Constants of the relative form bound.
    Bound {
        #[command(flatten)]
        common: Common,
        /// Power of `a`; defaults to the smallest integer above `p + m/2`.
        #[arg(long = "j")]
        j: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value_t = heun_core::bounds::DEFAULT_K_MAX)]
        k_max: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Weights { .. } => "weights",
            Command::Matrix { .. } => "matrix",
            Command::Indeterminacy { .. } => "indeterminacy",
            Command::ChaosCert { .. } => "chaos-cert",
            Command::Eigenvector { .. } => "eigenvector",
            Command::Periodic { .. } => "periodic",
            Command::Recurrence { .. } => "recurrence",
            Command::Approximant { .. } => "approximant",
            Command::Bound { .. } => "bound",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Weights { common, .. }
            | Command::Matrix { common, .. }
            | Command::Indeterminacy { common, .. }
            | Command::ChaosCert { common, .. }
            | Command::Eigenvector { common, .. }
            | Command::Periodic { common, .. }
            | Command::Recurrence { common, .. }
            | Command::Approximant { common, .. }
            | Command::Bound { common, .. } => common,
        }
    }
}

/// Parameter values in the order given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Values(pub Vec<u32>);

/// `3`, `0-3` or `0,2,3`.
pub fn parse_range(s: &str) -> Result<Values, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
    let mut out = Vec::new();
    for part in s.split(',') {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(format!("empty range `{part}`"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    Ok(Values(out))
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let z: Complex64 = s.trim().parse().map_err(|_| format!("`{s}` is not a complex number"))?;
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

pub fn parse_reals(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            let x: f64 = t.trim().parse().map_err(|e| format!("`{t}`: {e}"))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(format!("`{t}` is not finite"))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2").unwrap().0, vec![2]);
        assert_eq!(parse_range("0-3").unwrap().0, vec![0, 1, 2, 3]);
        assert_eq!(parse_range("1,3-4").unwrap().0, vec![1, 3, 4]);
        assert!(parse_range("3-1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn complex_values() {
        assert_eq!(parse_complex("2+3i").unwrap(), Complex64::new(2.0, 3.0));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-0.5").unwrap(), Complex64::new(-0.5, 0.0));
        assert!(parse_complex("inf").is_err());
        assert!(parse_complex("2+").is_err());
    }

    #[test]
    fn reals() {
        assert_eq!(parse_reals("1, 0.1").unwrap(), vec![1.0, 0.1]);
        assert!(parse_reals("1,,2").is_err());
    }
}
