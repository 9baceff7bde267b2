//! Finite-time statistics against the limiting constants.
//!
//! For each scheduled time the finite statistic is compared with its limit:
//!
//! * Rényi: `R_α(n) - log2(n/2)` against `R_α(∞)`;
//! * Tsallis: `(T_α(n) + 1/(1-α)) / (n/2)^(1-α) - 1/(1-α)` against
//!   `(∫ f^α - 1)/(1-α)`;
//! * conditional: `R^v_α(X_n|Y) - log2(n/2)` against the conditional limit.
//!
//! No rate of convergence is known, so thresholds are configuration, not
//! derived bounds.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closedform::closed_distribution;
use crate::entropy::{check_finite_order, conditional_from_values, renyi, tsallis, Order, Variant};
use crate::error::{Error, Result};
use crate::evolve::run;
use crate::limitdist::{conditional_renyi_limit, make_limit_density, renyi_limit, tsallis_limit_const};
use crate::{Coin, Distribution, EnsemblePrior, QubitState};

/// Default pass threshold on the final gap.
pub const DEFAULT_THRESHOLD: f64 = 0.05;

/// Default schedule `2^7, 2^8, ..., 2^13`.
pub fn default_schedule() -> Vec<usize> {
    (7..=13).map(|e| 1usize << e).collect()
}

/// Where finite-time distributions come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Evolve,
    #[default]
    ClosedForm,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "evolve" => Ok(Method::Evolve),
            "closedform" | "closed-form" | "closed" => Ok(Method::ClosedForm),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "method must be `evolve` or `closedform`".into(),
            }),
        }
    }
}

/// Distribution at time `n` by the chosen method. The closed forms need
/// `abcd != 0`; other coins always go through amplitude evolution.
pub fn distribution(coin: &Coin, state: &QubitState, n: usize, method: Method) -> Result<Distribution> {
    match method {
        Method::ClosedForm if coin.is_nondegenerate() && n >= 1 => closed_distribution(coin, state, n),
        _ => Ok(run(coin, state, n)),
    }
}

/// One statistic tracked over a schedule of times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceSeries {
    pub id: String,
    pub alpha: f64,
    pub schedule: Vec<usize>,
    pub finite_values: Vec<f64>,
    /// Mean of the statistic at `n` and `n + 1`, damping the even/odd
    /// oscillation. Reported only; verdicts use `finite_values`.
    pub parity_averaged: Vec<f64>,
    pub limit_value: f64,
    pub gaps: Vec<f64>,
    /// Excluded from pass/fail (order 0).
    pub informational: bool,
}

fn check_schedule(schedule: &[usize]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::Invalid("empty schedule".into()));
    }
    if schedule[0] < 1 || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("schedule must be strictly increasing times >= 1".into()));
    }
    Ok(())
}

fn check_series_order(alpha: f64) -> Result<()> {
    check_finite_order(alpha)?;
    if alpha >= 2.0 {
        return Err(Error::DivergentIntegral(alpha));
    }
    Ok(())
}

fn build_series<F>(id: String, alpha: f64, schedule: &[usize], limit_value: f64, stat: F) -> Result<ConvergenceSeries>
where
    F: Fn(usize) -> Result<f64> + Sync,
{
    let pairs = schedule
        .par_iter()
        .map(|&n| Ok((stat(n)?, stat(n + 1)?)))
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let finite_values: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    Ok(ConvergenceSeries {
        id,
        alpha,
        schedule: schedule.to_vec(),
        parity_averaged: pairs.iter().map(|p| 0.5 * (p.0 + p.1)).collect(),
        gaps: finite_values.iter().map(|v| (v - limit_value).abs()).collect(),
        finite_values,
        limit_value,
        informational: alpha == 0.0,
    })
}

fn log_half(n: usize) -> f64 {
    (n as f64 / 2.0).log2()
}

/// `R_α(n) - log2(n/2)` over `schedule`.
pub fn renyi_gap_series(
    coin: &Coin,
    state: &QubitState,
    alpha: f64,
    schedule: &[usize],
    method: Method,
) -> Result<ConvergenceSeries> {
    check_series_order(alpha)?;
    check_schedule(schedule)?;
    let limit = renyi_limit(&make_limit_density(coin, state)?, alpha)?;
    build_series(format!("renyi(alpha={alpha})"), alpha, schedule, limit, |n| {
        Ok(renyi_statistic(&distribution(coin, state, n, method)?, alpha))
    })
}

/// `R_α(n) - log2(n/2)` of one distribution.
pub fn renyi_statistic(dist: &Distribution, alpha: f64) -> f64 {
    renyi(dist, Order::Finite(alpha)) - log_half(dist.time())
}

/// `(T + 1/(1-α)) / (n/2)^(1-α) - 1/(1-α)` from a Tsallis value at time `n`.
pub fn tsallis_statistic_from_value(t: f64, n: usize, alpha: f64) -> f64 {
    let inv = 1.0 / (1.0 - alpha);
    (t + inv) / (n as f64 / 2.0).powf(1.0 - alpha) - inv
}

/// Rescaled Tsallis statistic over `schedule`.
pub fn tsallis_scaled_series(
    coin: &Coin,
    state: &QubitState,
    alpha: f64,
    schedule: &[usize],
    method: Method,
) -> Result<ConvergenceSeries> {
    check_series_order(alpha)?;
    check_schedule(schedule)?;
    let limit = tsallis_limit_const(&make_limit_density(coin, state)?, alpha)?;
    build_series(format!("tsallis(alpha={alpha})"), alpha, schedule, limit, |n| {
        let t = tsallis(&distribution(coin, state, n, method)?, alpha)?;
        Ok(tsallis_statistic_from_value(t, n, alpha))
    })
}

/// `R^variant_α(X_n | Y) - log2(n/2)` over `schedule`.
pub fn conditional_gap_series(
    variant: Variant,
    coin: &Coin,
    prior: &EnsemblePrior,
    alpha: f64,
    schedule: &[usize],
    method: Method,
) -> Result<ConvergenceSeries> {
    check_series_order(alpha)?;
    check_schedule(schedule)?;
    let limit = conditional_renyi_limit(variant, coin, prior, alpha)?;
    let weights = prior.weights();
    build_series(
        format!("conditional-{variant}(alpha={alpha})"),
        alpha,
        schedule,
        limit,
        |n| {
            let values = prior
                .entries()
                .iter()
                .map(|(state, _)| Ok(renyi(&distribution(coin, state, n, method)?, Order::Finite(alpha))))
                .collect::<Result<Vec<f64>>>()?;
            Ok(conditional_from_values(variant, &weights, &values, alpha)? - log_half(n))
        },
    )
}

/// Trend check between the first and last scheduled gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Trend {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Informational,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Informational => "INFORMATIONAL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesVerdict {
    pub id: String,
    pub alpha: f64,
    pub first_gap: f64,
    pub last_gap: f64,
    pub trend: Trend,
    pub below_threshold: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub threshold: f64,
    /// Thresholds are configuration, not bounds derived from a known rate.
    pub threshold_note: String,
    pub series: Vec<ConvergenceSeries>,
    pub verdicts: Vec<SeriesVerdict>,
}

/// Collects series into a report with one verdict per series: the last gap
/// must be below the first (when there are two or more points) and below
/// `threshold`.
pub fn convergence_report(series: Vec<ConvergenceSeries>, threshold: f64) -> Result<Report> {
    if series.is_empty() {
        return Err(Error::Invalid("report needs at least one series".into()));
    }
    let verdicts = series
        .iter()
        .map(|s| {
            let first_gap = s.gaps[0];
            let last_gap = *s.gaps.last().unwrap_or(&f64::NAN);
            let trend = if s.gaps.len() < 2 {
                Trend::NotApplicable
            } else if last_gap < first_gap {
                Trend::Pass
            } else {
                Trend::Fail
            };
            let below_threshold = last_gap < threshold;
            let verdict = if s.informational {
                Verdict::Informational
            } else if below_threshold && trend != Trend::Fail {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            SeriesVerdict {
                id: s.id.clone(),
                alpha: s.alpha,
                first_gap,
                last_gap,
                trend,
                below_threshold,
                verdict,
            }
        })
        .collect();
    Ok(Report {
        threshold,
        threshold_note: "threshold is a configured default; no error term for the limit is known".into(),
        series,
        verdicts,
    })
}

impl Report {
    /// `series_id,n,finite_value,limit_value,gap` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("series_id,n,finite_value,limit_value,gap\n");
        for s in &self.series {
            for ((n, v), g) in s.schedule.iter().zip(&s.finite_values).zip(&s.gaps) {
                out.push_str(&format!("{},{n},{v:.16e},{:.16e},{g:.16e}\n", s.id, s.limit_value));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            input: "report json".into(),
            reason: e.to_string(),
        })
    }

    /// Human-readable table with the parity-averaged column.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for (s, v) in self.series.iter().zip(&self.verdicts) {
            out.push_str(&format!("{}  limit = {:.10}\n", s.id, s.limit_value));
            out.push_str("        n        finite           gap   parity-avg\n");
            for i in 0..s.schedule.len() {
                out.push_str(&format!(
                    "{:>9} {:>13.8} {:>13.3e} {:>12.8}\n",
                    s.schedule[i], s.finite_values[i], s.gaps[i], s.parity_averaged[i]
                ));
            }
            out.push_str(&format!("  verdict: {}\n\n", v.verdict));
        }
        out
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.verdict != Verdict::Fail)
    }
}
