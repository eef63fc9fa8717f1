//! Finite checks of the three hypotheses under which `H + H*` is chaotic
//! for a backward shift `H` with weights `omega_n`.
//!
//! The hypotheses use a 1-based weight sequence; it is mapped onto the shift
//! as `omega_n := omega(p + n - 1)`, so `omega_1` is the first weight above the
//! bottom of the domain.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{HeunError, Result};
use crate::serial::f17;
use crate::weights::{up_sq_int, OperatorParams};

/// Auxiliary sequence `gamma_n = c * n^e * ln n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaSpec {
    /// `p * n^{m/2} * ln n`.
    PowerLog,
    /// `sqrt(n) * ln n`, the classical choice for `(p, m) = (1, 1)`.
    SqrtLog,
}

impl GammaSpec {
    fn coefficient(self, params: OperatorParams) -> f64 {
        match self {
            GammaSpec::PowerLog => params.p as f64,
            GammaSpec::SqrtLog => 1.0,
        }
    }

    fn exponent(self, params: OperatorParams) -> f64 {
        match self {
            GammaSpec::PowerLog => params.m as f64 / 2.0,
            GammaSpec::SqrtLog => 0.5,
        }
    }

    pub fn describe(self, params: OperatorParams) -> String {
        match self {
            GammaSpec::PowerLog => format!("gamma_n = {} * n^({}/2) * ln(n)", params.p, params.m),
            GammaSpec::SqrtLog => "gamma_n = sqrt(n) * ln(n)".to_string(),
        }
    }
}

/// One reproducible comparison over an index range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowCheck {
    pub name: String,
    pub from: usize,
    pub to: usize,
    pub worst_index: usize,
    #[serde(with = "f17")]
    pub worst_value: f64,
    /// The check passes when `worst_value > threshold`.
    #[serde(with = "f17")]
    pub threshold: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyp1Witness {
    #[serde(with = "f17")]
    pub partial_sum: f64,
    /// Bound on `sum_{n > window} 1/omega_n` from `omega_n >= n^{p+m/2}`.
    #[serde(with = "f17")]
    pub tail_bound: f64,
    pub flag: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyp2Witness {
    pub from: usize,
    /// Largest `n` up to which `omega_{n-1} omega_{n+1} <= omega_n^2` was
    /// verified exactly without a gap.
    pub verified_up_to: usize,
    pub first_failure: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyp3Witness {
    pub gamma: GammaSpec,
    pub gamma_spec: String,
    /// Smallest `ln(omega_n gamma_n / gamma_{n+1}) / ln n - 1` on the upper
    /// half of the window.
    #[serde(with = "f17")]
    pub alpha: f64,
    /// `n (1 - r_n)` at the window end, `r_n` the ratio in the expansion.
    #[serde(with = "f17")]
    pub a: f64,
    /// Decay exponent of `a_n - a` from the differences at `n/4, n/2, n`.
    #[serde(with = "f17")]
    pub beta: f64,
    #[serde(with = "f17")]
    pub series_partial_sum: f64,
    #[serde(with = "f17")]
    pub series_tail_bound: f64,
    pub series_converges: bool,
    pub series_analysis: String,
    pub window_checks: Vec<WindowCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesesWitness {
    pub params: OperatorParams,
    pub window: usize,
    pub hyp1: Hyp1Witness,
    pub hyp2: Hyp2Witness,
    pub hyp3: Hyp3Witness,
    /// `p + m/2 > 2`.
    pub analytic_flag: bool,
}

impl HypothesesWitness {
    pub fn all_window_checks_pass(&self) -> bool {
        self.hyp1.flag
            && self.hyp2.first_failure.is_none()
            && self.hyp3.window_checks.iter().all(|c| c.holds)
    }
}

pub const MIN_WINDOW: usize = 12;

/// `ln omega(k)` for `k >= p`.
fn ln_omega(k: usize, params: OperatorParams) -> f64 {
    let k = k as f64;
    let falling: f64 = (0..params.p).map(|i| (k - i as f64).ln()).sum();
    let rising: f64 = (1..=params.m).map(|i| (k + i as f64).ln()).sum();
    falling + 0.5 * rising
}

/// `ln omega(k) - ln omega(k-1)` for `k - 1 >= p`, without cancellation.
fn ln_omega_step(k: usize, params: OperatorParams) -> f64 {
    let k = k as f64;
    let falling: f64 = (0..params.p).map(|i| -(-1.0 / (k - i as f64)).ln_1p()).sum();
    let rising: f64 = (1..=params.m).map(|i| -(-1.0 / (k + i as f64)).ln_1p()).sum();
    falling + 0.5 * rising
}

/// `ln gamma_{n+d} - ln gamma_n` for `n >= 2`.
fn ln_gamma_step(n: usize, d: usize, exponent: f64) -> f64 {
    let x = d as f64 / n as f64;
    let log_step = x.ln_1p();
    exponent * log_step + (log_step / (n as f64).ln()).ln_1p()
}

fn omega_index(n: usize, params: OperatorParams) -> usize {
    params.p as usize + n - 1
}

/// `n (1 - r_n)` with `r_n = omega_{n-1} gamma_{n+1} / (omega_n gamma_{n-1})`.
fn expansion_coefficient(n: usize, params: OperatorParams, exponent: f64) -> f64 {
    let k = omega_index(n, params);
    let ln_r = -ln_omega_step(k, params) + ln_gamma_step(n - 1, 2, exponent);
    -(ln_r.exp_m1()) * n as f64
}

/// Exact `omega(k-1)^2 omega(k+1)^2 <= omega(k)^4` for `k` in `k_from..=k_to`,
/// with `omega = 0` below `p`. Returns the first failing `k`.
pub fn check_weight_logconcavity(params: OperatorParams, k_from: usize, k_to: usize) -> Result<Option<usize>> {
    if k_from < 1 {
        return Err(HeunError::Domain("log-concavity of the weights needs k >= 1".into()));
    }
    let p = params.p as u64;
    let sq = |k: u64| if k < p { BigUint::default() } else { up_sq_int(k, params) };
    if k_from > k_to {
        return Ok(None);
    }
    let (mut prev, mut cur) = (sq(k_from as u64 - 1), sq(k_from as u64));
    for k in k_from..=k_to {
        let next = sq(k as u64 + 1);
        if &prev * &next > &cur * &cur {
            return Ok(Some(k));
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(None)
}

pub fn check_hypotheses(params: OperatorParams, window: usize) -> Result<HypothesesWitness> {
    check_hypotheses_with(params, window, GammaSpec::PowerLog)
}

pub fn check_hypotheses_with(params: OperatorParams, window: usize, gamma: GammaSpec) -> Result<HypothesesWitness> {
    if params.p == 0 {
        return Err(HeunError::Unsupported(
            "p = 0: gamma_n = p n^(m/2) ln n vanishes identically".into(),
        ));
    }
    if window < MIN_WINDOW {
        return Err(HeunError::Domain(format!("window must be >= {MIN_WINDOW}, got {window}")));
    }
    let s = params.growth();

    // Hyp1
    let partial_sum: f64 = (1..=window).map(|n| (-ln_omega(omega_index(n, params), params)).exp()).sum();
    let hyp1_flag = s > 1.0;
    let tail_bound = if hyp1_flag {
        (window as f64).powf(1.0 - s) / (s - 1.0) * (1.0 + 1e-12)
    } else {
        f64::INFINITY
    };
    let hyp1 = Hyp1Witness { partial_sum, tail_bound, flag: hyp1_flag };

    // Hyp2, in n-indexing
    let k_shift = params.p as usize - 1;
    let first = check_weight_logconcavity(params, 2 + k_shift, window + k_shift)?.map(|k| k - k_shift);
    let hyp2 = Hyp2Witness {
        from: 2,
        verified_up_to: first.map_or(window, |n| n - 1),
        first_failure: first,
    };

    // Hyp3
    let c = gamma.coefficient(params);
    let e = gamma.exponent(params);
    let (lo, hi) = (window / 2, window);
    let (alpha_at, alpha) = (lo..=hi)
        .map(|n| {
            let ln_ratio = ln_omega(omega_index(n, params), params) - ln_gamma_step(n, 1, e);
            (n, ln_ratio / (n as f64).ln() - 1.0)
        })
        .fold((lo, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    let check_34 = WindowCheck {
        name: "omega_n gamma_n / gamma_(n+1) >= n^(1+alpha)".into(),
        from: lo,
        to: hi,
        worst_index: alpha_at,
        worst_value: alpha,
        threshold: 0.0,
        holds: alpha > 0.0,
    };

    let (q1, q2, q3) = (window / 4, window / 2, window);
    let a1 = expansion_coefficient(q1, params, e);
    let a2 = expansion_coefficient(q2, params, e);
    let a = expansion_coefficient(q3, params, e);
    let beta = ((a2 - a1) / (a - a2)).log2();
    let (a_at, a_min) = (lo..=hi)
        .map(|n| (n, expansion_coefficient(n, params, e)))
        .fold((lo, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    let check_35a = WindowCheck {
        name: "n (1 - r_n) > 0 (a > 0)".into(),
        from: lo,
        to: hi,
        worst_index: a_at,
        worst_value: a_min,
        threshold: 0.0,
        holds: a_min > 0.0 && a > 0.0,
    };
    let check_35b = WindowCheck {
        name: "remainder decay exponent beta > 0".into(),
        from: q1,
        to: q3,
        worst_index: q3,
        worst_value: beta,
        threshold: 0.0,
        holds: beta.is_finite() && beta > 0.0,
    };

    let series_partial_sum: f64 = (2..=window)
        .map(|n| {
            let g = c * (n as f64).powf(e) * (n as f64).ln();
            1.0 / (g * g)
        })
        .sum();
    let two_e = 2.0 * e;
    let ln_w = (window as f64).ln();
    let (series_converges, series_tail_bound, series_analysis) = if two_e > 1.0 {
        (
            true,
            (window as f64).powf(1.0 - two_e) / ((two_e - 1.0) * c * c * ln_w * ln_w),
            format!("1/gamma_n^2 = 1/({} n^{two_e} ln^2 n): power exponent above 1, converges", c * c),
        )
    } else if two_e == 1.0 {
        (
            true,
            1.0 / (c * c * ln_w),
            format!(
                "1/gamma_n^2 = 1/({} n ln^2 n): Bertrand series with log exponent 2 > 1, converges",
                c * c
            ),
        )
    } else {
        (false, f64::INFINITY, format!("power exponent {two_e} < 1, diverges"))
    };
    let check_36 = WindowCheck {
        name: "sum 1/gamma_n^2 < inf".into(),
        from: 2,
        to: window,
        worst_index: window,
        worst_value: series_tail_bound,
        threshold: 0.0,
        holds: series_converges,
    };

    Ok(HypothesesWitness {
        params,
        window,
        hyp1,
        hyp2,
        hyp3: Hyp3Witness {
            gamma,
            gamma_spec: gamma.describe(params),
            alpha,
            a,
            beta,
            series_partial_sum,
            series_tail_bound: series_tail_bound * (1.0 + 1e-12),
            series_converges,
            series_analysis,
            window_checks: vec![check_34, check_35a, check_35b, check_36],
        },
        analytic_flag: params.p as f64 + params.m as f64 / 2.0 > 2.0,
    })
}
