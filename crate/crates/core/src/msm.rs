//! Per-step change statistics and their time aggregates.
//!
//! For consecutive states `Q(t)`, `Q(t+1)` of length `n`:
//!
//! | stat | value |
//! |------|-------|
//! | `I`  | `abs(sum Q(t+1) - sum Q(t)) / (n u)` |
//! | `L`  | `norm(Q(t+1) - Q(t)) / (sqrt(n) u)` |
//! | `LR` | `norm(Q(t+1) - Q(t)) / norm(Q(t+1))`, undefined if `Q(t+1) = 0` |
//! | `S`  | `<Q(t+1), Q(t)> / (norm(Q(t+1)) norm(Q(t)))`, undefined if either is 0 |
//!
//! Aggregation takes the mean and population variance of each statistic
//! over the steps where it is defined. The composite mixism measure is
//! `M_mix = mu_S * var_S`; atomism is `var_LR` and mobism is `mu_L`.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::commsim::{InfoSeries, InfoState};
use crate::fmt::sig6_opt;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepStats {
    pub i: f64,
    pub l: f64,
    pub lr: Option<f64>,
    pub s: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepSeries {
    pub stats: Vec<StepStats>,
}

fn check_len(prev: &InfoState, next: &InfoState) -> Result<()> {
    if prev.len() != next.len() || prev.is_empty() {
        return Err(Error::input(format!(
            "state lengths differ or are empty ({} vs {})",
            prev.len(),
            next.len()
        )));
    }
    Ok(())
}

fn sq_diff(prev: &InfoState, next: &InfoState) -> u128 {
    prev.q
        .iter()
        .zip(&next.q)
        .map(|(&a, &b)| {
            let d = a.abs_diff(b) as u128;
            d * d
        })
        .sum()
}

fn sq_norm(s: &InfoState) -> u128 {
    s.q.iter().map(|&x| (x as u128) * (x as u128)).sum()
}

fn dot(a: &InfoState, b: &InfoState) -> u128 {
    a.q.iter().zip(&b.q).map(|(&x, &y)| (x as u128) * (y as u128)).sum()
}

/// Normalised absolute change of total information.
pub fn stat_i(prev: &InfoState, next: &InfoState, u: u64) -> Result<f64> {
    check_len(prev, next)?;
    check_unit(u)?;
    let a: u128 = prev.q.iter().map(|&x| x as u128).sum();
    let b: u128 = next.q.iter().map(|&x| x as u128).sum();
    Ok(a.abs_diff(b) as f64 / (prev.len() as f64 * u as f64))
}

/// Normalised Euclidean change.
pub fn stat_l(prev: &InfoState, next: &InfoState, u: u64) -> Result<f64> {
    check_len(prev, next)?;
    check_unit(u)?;
    Ok((sq_diff(prev, next) as f64).sqrt() / ((prev.len() as f64).sqrt() * u as f64))
}

/// Euclidean change relative to the size of `next`; `None` if `next` is zero.
pub fn stat_lr(prev: &InfoState, next: &InfoState) -> Result<Option<f64>> {
    check_len(prev, next)?;
    let den = sq_norm(next);
    if den == 0 {
        return Ok(None);
    }
    Ok(Some((sq_diff(prev, next) as f64).sqrt() / (den as f64).sqrt()))
}

/// Cosine similarity; `None` if either state is zero.
pub fn stat_s(prev: &InfoState, next: &InfoState) -> Result<Option<f64>> {
    check_len(prev, next)?;
    let (a, b) = (sq_norm(prev), sq_norm(next));
    if a == 0 || b == 0 {
        return Ok(None);
    }
    // sqrt(a*b) in one rounding makes identical states land on exactly 1.
    let s = dot(prev, next) as f64 / ((a as f64) * (b as f64)).sqrt();
    Ok(Some(s.min(1.0)))
}

fn check_unit(u: u64) -> Result<()> {
    if u == 0 {
        return Err(Error::input("information unit u must be positive"));
    }
    Ok(())
}

pub fn step_stats(prev: &InfoState, next: &InfoState, u: u64) -> Result<StepStats> {
    Ok(StepStats {
        i: stat_i(prev, next, u)?,
        l: stat_l(prev, next, u)?,
        lr: stat_lr(prev, next)?,
        s: stat_s(prev, next)?,
    })
}

/// `stats[t]` covers the transition `Q(t) -> Q(t+1)`.
pub fn step_series(series: &InfoSeries, u: u64) -> Result<StepSeries> {
    if series.len() < 2 {
        return Err(Error::input("need at least two states to measure change"));
    }
    let stats = series
        .states
        .windows(2)
        .map(|w| step_stats(&w[0], &w[1], u))
        .collect::<Result<_>>()?;
    Ok(StepSeries { stats })
}

/// Mean and population variance of the finite sample, `None` when empty.
pub fn mean_var(xs: &[f64]) -> Option<(f64, f64)> {
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    Some((mean, var))
}

/// The nine aggregate measures plus undefined-step counts.
///
/// For a single run `m_mix == mu_s * var_s` exactly. For an average over
/// repetitions every field, `m_mix` included, is the mean of per-run values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureSet {
    pub mu_i: Option<f64>,
    pub var_i: Option<f64>,
    pub mu_l: Option<f64>,
    pub var_l: Option<f64>,
    pub mu_lr: Option<f64>,
    pub var_lr: Option<f64>,
    pub mu_s: Option<f64>,
    pub var_s: Option<f64>,
    pub m_mix: Option<f64>,
    pub excluded_lr: usize,
    pub excluded_s: usize,
}

/// Identifies one of the nine measures, in table order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Measure {
    MuI,
    VarI,
    MuL,
    VarL,
    MuLr,
    VarLr,
    MuS,
    VarS,
    MMix,
}

impl Measure {
    pub const ALL: [Measure; 9] = [
        Measure::MuI,
        Measure::VarI,
        Measure::MuL,
        Measure::VarL,
        Measure::MuLr,
        Measure::VarLr,
        Measure::MuS,
        Measure::VarS,
        Measure::MMix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::MuI => "mu_I",
            Measure::VarI => "var_I",
            Measure::MuL => "mu_L",
            Measure::VarL => "var_L",
            Measure::MuLr => "mu_LR",
            Measure::VarLr => "var_LR",
            Measure::MuS => "mu_S",
            Measure::VarS => "var_S",
            Measure::MMix => "M_mix",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl MeasureSet {
    pub fn get(&self, m: Measure) -> Option<f64> {
        match m {
            Measure::MuI => self.mu_i,
            Measure::VarI => self.var_i,
            Measure::MuL => self.mu_l,
            Measure::VarL => self.var_l,
            Measure::MuLr => self.mu_lr,
            Measure::VarLr => self.var_lr,
            Measure::MuS => self.mu_s,
            Measure::VarS => self.var_s,
            Measure::MMix => self.m_mix,
        }
    }

    pub fn values(&self) -> [Option<f64>; 9] {
        Measure::ALL.map(|m| self.get(m))
    }

    /// Atomism measure, the variance of `LR`.
    pub fn m_atom(&self) -> Option<f64> {
        self.var_lr
    }

    /// Mobism measure, the mean of `L`.
    pub fn m_mob(&self) -> Option<f64> {
        self.mu_l
    }
}

pub fn aggregate(ss: &StepSeries) -> MeasureSet {
    let is: Vec<f64> = ss.stats.iter().map(|s| s.i).collect();
    let ls: Vec<f64> = ss.stats.iter().map(|s| s.l).collect();
    let lrs: Vec<f64> = ss.stats.iter().filter_map(|s| s.lr).collect();
    let sims: Vec<f64> = ss.stats.iter().filter_map(|s| s.s).collect();
    let (mu_i, var_i) = split(mean_var(&is));
    let (mu_l, var_l) = split(mean_var(&ls));
    let (mu_lr, var_lr) = split(mean_var(&lrs));
    let (mu_s, var_s) = split(mean_var(&sims));
    let m_mix = mu_s.zip(var_s).map(|(m, v)| m * v);
    MeasureSet {
        mu_i,
        var_i,
        mu_l,
        var_l,
        mu_lr,
        var_lr,
        mu_s,
        var_s,
        m_mix,
        excluded_lr: ss.stats.len() - lrs.len(),
        excluded_s: ss.stats.len() - sims.len(),
    }
}

fn split(mv: Option<(f64, f64)>) -> (Option<f64>, Option<f64>) {
    (mv.map(|p| p.0), mv.map(|p| p.1))
}

/// Series to measures in one call.
pub fn measure_series(series: &InfoSeries, u: u64) -> Result<MeasureSet> {
    Ok(aggregate(&step_series(series, u)?))
}

/// Communication phase labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Phase {
    Mixism,
    Atomism,
    Mobism,
    Nihilism,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Heuristic decision rule for [`classify_phase`]. Not a published rule:
/// measures are compared after dividing by reference scales read off
/// typical magnitudes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseRule {
    pub epsilon: f64,
    pub r_mix: f64,
    pub r_atom: f64,
    pub r_mob: f64,
}

impl Default for PhaseRule {
    fn default() -> Self {
        Self { epsilon: 1e-3, r_mix: 0.02, r_atom: 0.1, r_mob: 0.25 }
    }
}

/// Nihilism when `M_mix`, `M_atom` and `M_mob` are all below `epsilon`;
/// otherwise the phase whose scaled measure is largest (ties resolve in the
/// order mixism, atomism, mobism).
pub fn classify_phase(ms: &MeasureSet, rule: &PhaseRule) -> Result<Phase> {
    let (mix, atom, mob) = match (ms.m_mix, ms.m_atom(), ms.m_mob()) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => {
            return Err(Error::Incomplete(
                "M_mix, M_atom and M_mob must all be present to classify".into(),
            ))
        }
    };
    if mix.max(atom).max(mob) < rule.epsilon {
        return Ok(Phase::Nihilism);
    }
    let scored = [
        (Phase::Mixism, mix / rule.r_mix),
        (Phase::Atomism, atom / rule.r_atom),
        (Phase::Mobism, mob / rule.r_mob),
    ];
    let mut best = scored[0];
    for c in &scored[1..] {
        if c.1 > best.1 {
            best = *c;
        }
    }
    Ok(best.0)
}

pub const CSV_HEADER: &str =
    "network,case,mu_I,var_I,mu_L,var_L,mu_LR,var_LR,mu_S,var_S,M_mix,M_atom,M_mob,excluded_LR,excluded_S";

/// One CSV row in [`CSV_HEADER`] order, 6 significant digits, absent
/// values as empty fields.
pub fn csv_row(network: &str, case: &str, ms: &MeasureSet) -> String {
    let mut fields = vec![network.to_string(), case.to_string()];
    fields.extend(ms.values().iter().map(|&v| sig6_opt(v)));
    fields.push(sig6_opt(ms.m_atom()));
    fields.push(sig6_opt(ms.m_mob()));
    fields.push(ms.excluded_lr.to_string());
    fields.push(ms.excluded_s.to_string());
    fields.join(",")
}

pub fn write_csv<W: Write>(mut w: W, rows: &[(String, String, MeasureSet)]) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for (net, case, ms) in rows {
        writeln!(w, "{}", csv_row(net, case, ms))?;
    }
    Ok(())
}
