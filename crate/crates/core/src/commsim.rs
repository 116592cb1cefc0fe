//! Stochastic generation, transmission and disappearance of information
//! units on a graph.
//!
//! Communication copies a unit: the receiver gains `u` and the sender keeps
//! its holding. Only vertices holding at least `u` can send or lose
//! information, and a receiver is always a graph neighbour of its sender.
//!
//! Two event granularities share this contract:
//!
//! - [`EventMode::SingleEvent`]: per step, at most one send (probability
//!   `g_rate`) followed by at most one erasure (probability `d_rate`), with
//!   erasure eligibility re-evaluated after the send.
//! - [`EventMode::PerVertex`]: every holder independently sends with
//!   probability `g_rate` and loses `u` with probability `d_rate`; all changes
//!   are computed from the start-of-step state and applied together.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::netgen::Graph;
use crate::rng::{chance, rng_from_seed, uniform_index};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventMode {
    #[default]
    SingleEvent,
    PerVertex,
}

impl fmt::Display for EventMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EventMode::SingleEvent => "single",
            EventMode::PerVertex => "per-vertex",
        })
    }
}

impl FromStr for EventMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" | "single-event" => Ok(EventMode::SingleEvent),
            "per-vertex" => Ok(EventMode::PerVertex),
            other => Err(Error::param(format!(
                "unknown event mode `{other}` (expected `single` or `per-vertex`)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub g_rate: f64,
    pub d_rate: f64,
    pub u: u64,
    pub n0: usize,
    pub t_max: usize,
    pub mode: EventMode,
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self { g_rate: 0.4, d_rate: 0.4, u: 1, n0: 10, t_max: 100, mode: EventMode::SingleEvent, seed: 1 }
    }
}

impl SimConfig {
    /// Check rates, unit and step count, and that `n0` fits a graph of `n`
    /// vertices.
    pub fn validate(&self, n: usize) -> Result<()> {
        for (name, p) in [("g", self.g_rate), ("d", self.d_rate)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::param(format!("rate {name}={p} outside [0, 1]")));
            }
        }
        if self.u == 0 {
            return Err(Error::param("information unit u must be positive"));
        }
        if self.t_max == 0 {
            return Err(Error::param("step count must be positive"));
        }
        if self.n0 > n {
            return Err(Error::param(format!(
                "n0={} exceeds the {n} vertices of the graph",
                self.n0
            )));
        }
        Ok(())
    }
}

/// Holdings `q_0..q_{n-1}` at one time step.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InfoState {
    pub q: Vec<u64>,
}

impl InfoState {
    pub fn zeros(n: usize) -> Self {
        Self { q: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.q.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.q.iter().all(|&x| x == 0)
    }

    fn holders(&self, u: u64) -> Vec<usize> {
        self.q.iter().enumerate().filter(|&(_, &x)| x >= u).map(|(i, _)| i).collect()
    }
}

/// States `Q(0)..=Q(t_max)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoSeries {
    pub states: Vec<InfoState>,
}

impl InfoSeries {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// CSV with header `t,q_0,..,q_{n-1}` and one row per step.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let n = self.states.first().map_or(0, InfoState::len);
        let mut header = String::from("t");
        for i in 0..n {
            header.push_str(&format!(",q_{i}"));
        }
        writeln!(w, "{header}")?;
        for (t, s) in self.states.iter().enumerate() {
            let mut row = t.to_string();
            for x in &s.q {
                row.push(',');
                row.push_str(&x.to_string());
            }
            writeln!(w, "{row}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Send,
    /// A sender was drawn but has no neighbours; nothing moved.
    BlockedSend,
    Erase,
    /// Step with no event.
    Idle,
}

impl EventKind {
    fn as_str(self) -> &'static str {
        match self {
            EventKind::Send => "send",
            EventKind::BlockedSend => "blocked_send",
            EventKind::Erase => "erase",
            EventKind::Idle => "idle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Event {
    pub step: usize,
    pub kind: EventKind,
    pub sender: Option<usize>,
    pub receiver: Option<usize>,
    pub erased: Option<usize>,
}

impl Event {
    fn idle(step: usize) -> Self {
        Self { step, kind: EventKind::Idle, sender: None, receiver: None, erased: None }
    }
}

/// Audit trail; every step contributes at least one row (`idle` if nothing
/// happened).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EventLog {
    pub events: Vec<Event>,
}

impl EventLog {
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        fn opt(x: Option<usize>) -> String {
            x.map(|v| v.to_string()).unwrap_or_default()
        }
        writeln!(w, "step,kind,sender,receiver,erased")?;
        for e in &self.events {
            writeln!(
                w,
                "{},{},{},{},{}",
                e.step,
                e.kind.as_str(),
                opt(e.sender),
                opt(e.receiver),
                opt(e.erased)
            )?;
        }
        Ok(())
    }
}

/// `n0` distinct vertices, chosen uniformly, start with one unit each.
pub fn init_state<R: Rng + ?Sized>(graph: &Graph, cfg: &SimConfig, rng: &mut R) -> Result<InfoState> {
    let n = graph.vertex_count();
    cfg.validate(n)?;
    let mut ids: Vec<usize> = (0..n).collect();
    for i in 0..cfg.n0 {
        let j = i + uniform_index(rng, n - i);
        ids.swap(i, j);
    }
    let mut state = InfoState::zeros(n);
    for &v in &ids[..cfg.n0] {
        state.q[v] = cfg.u;
    }
    Ok(state)
}

/// Advance one step.
pub fn step<R: Rng + ?Sized>(
    graph: &Graph,
    state: &InfoState,
    cfg: &SimConfig,
    rng: &mut R,
) -> Result<InfoState> {
    let mut log = Vec::new();
    step_logged(graph, state, cfg, rng, 0, &mut log)
}

/// [`step`] that appends its events (tagged with `t`) to `log`.
pub fn step_logged<R: Rng + ?Sized>(
    graph: &Graph,
    state: &InfoState,
    cfg: &SimConfig,
    rng: &mut R,
    t: usize,
    log: &mut Vec<Event>,
) -> Result<InfoState> {
    if state.len() != graph.vertex_count() {
        return Err(Error::input(format!(
            "state has {} entries but graph has {} vertices",
            state.len(),
            graph.vertex_count()
        )));
    }
    let before = log.len();
    let next = match cfg.mode {
        EventMode::SingleEvent => single_event(graph, state, cfg, rng, t, log),
        EventMode::PerVertex => per_vertex(graph, state, cfg, rng, t, log),
    };
    if log.len() == before {
        log.push(Event::idle(t));
    }
    Ok(next)
}

fn single_event<R: Rng + ?Sized>(
    graph: &Graph,
    state: &InfoState,
    cfg: &SimConfig,
    rng: &mut R,
    t: usize,
    log: &mut Vec<Event>,
) -> InfoState {
    let mut next = state.clone();
    if chance(rng, cfg.g_rate) {
        let holders = next.holders(cfg.u);
        if !holders.is_empty() {
            let sender = holders[uniform_index(rng, holders.len())];
            let ns = graph.neighbors(sender);
            if ns.is_empty() {
                log.push(Event { step: t, kind: EventKind::BlockedSend, sender: Some(sender), receiver: None, erased: None });
            } else {
                let receiver = ns[uniform_index(rng, ns.len())];
                next.q[receiver] += cfg.u;
                log.push(Event { step: t, kind: EventKind::Send, sender: Some(sender), receiver: Some(receiver), erased: None });
            }
        }
    }
    if chance(rng, cfg.d_rate) {
        let holders = next.holders(cfg.u);
        if !holders.is_empty() {
            let v = holders[uniform_index(rng, holders.len())];
            next.q[v] -= cfg.u;
            log.push(Event { step: t, kind: EventKind::Erase, sender: None, receiver: None, erased: Some(v) });
        }
    }
    next
}

fn per_vertex<R: Rng + ?Sized>(
    graph: &Graph,
    state: &InfoState,
    cfg: &SimConfig,
    rng: &mut R,
    t: usize,
    log: &mut Vec<Event>,
) -> InfoState {
    let mut next = state.clone();
    let mut erased = Vec::new();
    for v in state.holders(cfg.u) {
        if chance(rng, cfg.g_rate) {
            let ns = graph.neighbors(v);
            if ns.is_empty() {
                log.push(Event { step: t, kind: EventKind::BlockedSend, sender: Some(v), receiver: None, erased: None });
            } else {
                let receiver = ns[uniform_index(rng, ns.len())];
                next.q[receiver] += cfg.u;
                log.push(Event { step: t, kind: EventKind::Send, sender: Some(v), receiver: Some(receiver), erased: None });
            }
        }
        if chance(rng, cfg.d_rate) {
            erased.push(v);
        }
    }
    // v held >= u at step start and receives only increments, so this never
    // underflows.
    for v in erased {
        next.q[v] -= cfg.u;
        log.push(Event { step: t, kind: EventKind::Erase, sender: None, receiver: None, erased: Some(v) });
    }
    next
}

/// Full run seeded from `cfg.seed`: `Q(0) = init_state`, then `t_max` steps.
pub fn run(graph: &Graph, cfg: &SimConfig) -> Result<InfoSeries> {
    run_logged(graph, cfg).map(|(series, _)| series)
}

pub fn run_logged(graph: &Graph, cfg: &SimConfig) -> Result<(InfoSeries, EventLog)> {
    let mut rng = rng_from_seed(cfg.seed);
    let mut states = Vec::with_capacity(cfg.t_max + 1);
    let mut events = Vec::new();
    let mut cur = init_state(graph, cfg, &mut rng)?;
    for t in 0..cfg.t_max {
        let next = step_logged(graph, &cur, cfg, &mut rng, t, &mut events)?;
        states.push(std::mem::replace(&mut cur, next));
    }
    states.push(cur);
    Ok((InfoSeries { states }, EventLog { events }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgen::{make_hypercube, make_star};
    use crate::rng::rng_from_seed;

    fn cfg(g: f64, d: f64) -> SimConfig {
        SimConfig { g_rate: g, d_rate: d, ..SimConfig::default() }
    }

    #[test]
    fn init_state_counts() {
        let g = make_star(91).unwrap();
        let mut rng = rng_from_seed(1);
        let s = init_state(&g, &cfg(0.4, 0.4), &mut rng).unwrap();
        assert_eq!(s.total(), 10);
        assert_eq!(s.q.iter().filter(|&&x| x == 1).count(), 10);

        let s = init_state(&g, &SimConfig { n0: 0, ..cfg(0.4, 0.4) }, &mut rng).unwrap();
        assert!(s.is_zero());
        let s = init_state(&g, &SimConfig { n0: 91, u: 3, ..cfg(0.4, 0.4) }, &mut rng).unwrap();
        assert!(s.q.iter().all(|&x| x == 3));
        assert!(init_state(&g, &SimConfig { n0: 92, ..cfg(0.4, 0.4) }, &mut rng).is_err());
    }

    #[test]
    fn validation() {
        for bad in [
            SimConfig { g_rate: -0.1, ..SimConfig::default() },
            SimConfig { d_rate: 1.1, ..SimConfig::default() },
            SimConfig { u: 0, ..SimConfig::default() },
            SimConfig { t_max: 0, ..SimConfig::default() },
        ] {
            assert!(bad.validate(91).is_err(), "{bad:?}");
        }
        assert!(SimConfig::default().validate(91).is_ok());
    }

    #[test]
    fn no_rates_no_change() {
        let g = make_hypercube(4).unwrap();
        let mut rng = rng_from_seed(2);
        for mode in [EventMode::SingleEvent, EventMode::PerVertex] {
            let c = SimConfig { mode, ..cfg(0.0, 0.0) };
            let s = init_state(&g, &c, &mut rng).unwrap();
            assert_eq!(step(&g, &s, &c, &mut rng).unwrap(), s);
        }
    }

    #[test]
    fn zero_state_is_absorbing() {
        let g = make_star(10).unwrap();
        let mut rng = rng_from_seed(3);
        for mode in [EventMode::SingleEvent, EventMode::PerVertex] {
            let c = SimConfig { mode, ..cfg(1.0, 1.0) };
            let z = InfoState::zeros(10);
            for _ in 0..20 {
                assert!(step(&g, &z, &c, &mut rng).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn state_length_mismatch() {
        let g = make_star(5).unwrap();
        let mut rng = rng_from_seed(4);
        assert!(step(&g, &InfoState::zeros(4), &cfg(0.5, 0.5), &mut rng).is_err());
    }

    #[test]
    fn isolated_sender_is_logged() {
        let g = Graph::empty(3).unwrap();
        let c = cfg(1.0, 0.0);
        let s = InfoState { q: vec![1, 0, 0] };
        let mut rng = rng_from_seed(5);
        let mut log = Vec::new();
        let next = step_logged(&g, &s, &c, &mut rng, 7, &mut log).unwrap();
        assert_eq!(next, s);
        assert_eq!(log.len(), 1);
        assert_eq!(log[0].kind, EventKind::BlockedSend);
        assert_eq!(log[0].step, 7);
    }

    #[test]
    fn forced_erasure_drains_one_unit_per_step() {
        let g = make_star(91).unwrap();
        let c = SimConfig { t_max: 15, ..cfg(0.0, 1.0) };
        let series = run(&g, &c).unwrap();
        let totals: Vec<u64> = series.states.iter().map(InfoState::total).collect();
        let expected: Vec<u64> = (0..=15).map(|t: u64| 10u64.saturating_sub(t)).collect();
        assert_eq!(totals, expected);
    }

    #[test]
    fn run_length_and_determinism() {
        let g = make_star(91).unwrap();
        let c = cfg(0.4, 0.3);
        let a = run(&g, &c).unwrap();
        assert_eq!(a.len(), 101);
        assert_eq!(a, run(&g, &c).unwrap());
        let b = run(&g, &SimConfig { seed: 2, ..c }).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn single_event_changes_total_by_at_most_u() {
        let g = make_star(91).unwrap();
        let c = SimConfig { t_max: 100_000, ..cfg(0.5, 0.4) };
        let (series, log) = run_logged(&g, &c).unwrap();
        for w in series.states.windows(2) {
            let diff = w[1].total() as i64 - w[0].total() as i64;
            assert!((-1..=1).contains(&diff));
        }
        assert!(log.events.iter().any(|e| e.kind == EventKind::Send));
    }

    #[test]
    fn per_vertex_allows_multi_unit_change() {
        let g = make_hypercube(6).unwrap();
        let c = SimConfig { mode: EventMode::PerVertex, n0: 64, ..cfg(1.0, 0.0) };
        let series = run(&g, &SimConfig { t_max: 1, ..c }).unwrap();
        assert_eq!(series.states[1].total(), 128);
    }

    #[test]
    fn empty_graph_only_erases() {
        let g = Graph::empty(20).unwrap();
        for mode in [EventMode::SingleEvent, EventMode::PerVertex] {
            let c = SimConfig { mode, t_max: 200, ..cfg(0.9, 0.2) };
            let series = run(&g, &c).unwrap();
            for w in series.states.windows(2) {
                assert!(w[1].q.iter().zip(&w[0].q).all(|(a, b)| a <= b));
            }
        }
    }

    #[test]
    fn csv_exports() {
        let g = make_star(3).unwrap();
        let c = SimConfig { n0: 1, t_max: 2, ..cfg(1.0, 0.0) };
        let (series, log) = run_logged(&g, &c).unwrap();
        let mut buf = Vec::new();
        series.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,q_0,q_1,q_2\n0,"));
        assert_eq!(text.lines().count(), 4);
        let mut buf = Vec::new();
        log.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("step,kind,sender,receiver,erased\n0,send,"));
    }
}
