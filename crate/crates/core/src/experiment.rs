//! Repetitions and cross-network comparisons.
//!
//! Repetition `r` of a cell runs with seed `derive_seed(master, [TAG_REPETITION, r])`,
//! and random network constructions use `derive_seed(master, [TAG_NETWORK, i])`
//! unless the network carries its own seed. Work units may run in any order
//! or in parallel; every reduction happens in index order, so serial and
//! parallel execution give bit-identical reports.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::commsim::{run, EventMode, SimConfig};
use crate::fmt::sig6_opt;
use crate::msm::{self, measure_series, Measure, MeasureSet};
use crate::netgen::{self, graph_features, Graph, GraphFeatures};
use crate::rng::{derive_seed, rng_from_seed, TAG_NETWORK, TAG_REPETITION};
use crate::svg;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NetworkKind {
    Star { n: usize },
    Tree { branching: usize, depth: u32 },
    TreeJumpers { branching: usize, depth: u32, jumpers: usize },
    Ws { n: usize, k: usize, p: f64 },
    Ba { n: usize, m: usize },
    Hypercube { dim: u32 },
    EdgeList { path: PathBuf },
}

impl NetworkKind {
    pub fn is_random(&self) -> bool {
        matches!(self, NetworkKind::TreeJumpers { .. } | NetworkKind::Ws { .. } | NetworkKind::Ba { .. })
    }

    /// Build with an explicit construction seed (ignored by deterministic kinds).
    pub fn build(&self, seed: u64) -> Result<Graph> {
        let mut rng = rng_from_seed(seed);
        match self {
            NetworkKind::Star { n } => netgen::make_star(*n),
            NetworkKind::Tree { branching, depth } => netgen::make_tree(*branching, *depth),
            NetworkKind::TreeJumpers { branching, depth, jumpers } => {
                let tree = netgen::make_tree(*branching, *depth)?;
                netgen::add_jumpers(&tree, *jumpers, &mut rng)
            }
            NetworkKind::Ws { n, k, p } => netgen::make_ws(*n, *k, *p, &mut rng),
            NetworkKind::Ba { n, m } => netgen::make_ba(*n, *m, &mut rng),
            NetworkKind::Hypercube { dim } => netgen::make_hypercube(*dim),
            NetworkKind::EdgeList { path } => {
                let text = fs::read_to_string(path)?;
                netgen::parse_edge_list(&text)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetworkSpec {
    pub name: String,
    pub kind: NetworkKind,
    /// Construction seed; `None` derives one from the master seed and the
    /// network's index.
    pub seed: Option<u64>,
}

impl NetworkSpec {
    pub fn new(name: impl Into<String>, kind: NetworkKind) -> Self {
        Self { name: name.into(), kind, seed: None }
    }

    pub fn construction_seed(&self, master_seed: u64, index: usize) -> u64 {
        self.seed.unwrap_or_else(|| derive_seed(master_seed, &[TAG_NETWORK, index as u64]))
    }

    pub fn build(&self, master_seed: u64, index: usize) -> Result<Graph> {
        self.kind.build(self.construction_seed(master_seed, index))
    }
}

/// A generation / disappearance rate pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Case {
    pub g: f64,
    pub d: f64,
}

impl Case {
    pub fn label(&self) -> String {
        format!("g={};d={}", self.g, self.d)
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSpec {
    pub networks: Vec<NetworkSpec>,
    pub cases: Vec<Case>,
    pub reps: usize,
    pub u: u64,
    pub n0: usize,
    pub t_max: usize,
    pub mode: EventMode,
    pub master_seed: u64,
}

impl ExperimentSpec {
    /// Six organizational topologies, four rate cases, `u = 1`, `n0 = 10`,
    /// `t_max = 100`, 100 repetitions.
    pub fn paper_default(master_seed: u64) -> Self {
        let networks = vec![
            NetworkSpec::new("star", NetworkKind::Star { n: 91 }),
            NetworkSpec::new("tree", NetworkKind::Tree { branching: 9, depth: 2 }),
            NetworkSpec::new("tree+jumpers", NetworkKind::TreeJumpers { branching: 9, depth: 2, jumpers: 30 }),
            NetworkSpec::new("tree+more_jumpers", NetworkKind::TreeJumpers { branching: 9, depth: 2, jumpers: 60 }),
            NetworkSpec::new("small_world", NetworkKind::Ws { n: 91, k: 4, p: 0.55 }),
            NetworkSpec::new("hypercube", NetworkKind::Hypercube { dim: 6 }),
        ];
        let cases = [(0.4, 0.3), (0.4, 0.4), (0.5, 0.4), (0.5, 0.5)]
            .into_iter()
            .map(|(g, d)| Case { g, d })
            .collect();
        Self { networks, cases, reps: 100, u: 1, n0: 10, t_max: 100, mode: EventMode::SingleEvent, master_seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::param("reps must be >= 1"));
        }
        if self.networks.is_empty() || self.cases.is_empty() {
            return Err(Error::param("experiment needs at least one network and one case"));
        }
        for (i, a) in self.networks.iter().enumerate() {
            if self.networks[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::param(format!("duplicate network name `{}`", a.name)));
            }
        }
        for c in &self.cases {
            self.sim_config(c).validate(usize::MAX)?;
        }
        Ok(())
    }

    /// Simulation config for a case; the seed is replaced per repetition.
    pub fn sim_config(&self, case: &Case) -> SimConfig {
        SimConfig {
            g_rate: case.g,
            d_rate: case.d,
            u: self.u,
            n0: self.n0,
            t_max: self.t_max,
            mode: self.mode,
            seed: self.master_seed,
        }
    }
}

/// Averaged measures of one cell plus the per-repetition values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepetitionSummary {
    /// Mean of each measure over repetitions where it is present. The
    /// exclusion counts are totals over all repetitions.
    pub average: MeasureSet,
    pub per_rep: Vec<MeasureSet>,
    /// Repetitions in which `LR` was never defined.
    pub absent_lr_reps: usize,
    /// Repetitions in which `S` was never defined.
    pub absent_s_reps: usize,
}

pub fn repetition_seed(master_seed: u64, rep: usize) -> u64 {
    derive_seed(master_seed, &[TAG_REPETITION, rep as u64])
}

pub fn run_repetitions(
    graph: &Graph,
    cfg: &SimConfig,
    reps: usize,
    master_seed: u64,
    exec: Execution,
) -> Result<RepetitionSummary> {
    if reps == 0 {
        return Err(Error::param("reps must be >= 1"));
    }
    cfg.validate(graph.vertex_count())?;
    let one = |r: usize| -> Result<MeasureSet> {
        let c = SimConfig { seed: repetition_seed(master_seed, r), ..cfg.clone() };
        measure_series(&run(graph, &c)?, c.u)
    };
    let per_rep: Vec<MeasureSet> = match exec {
        Execution::Serial => (0..reps).map(one).collect::<Result<_>>()?,
        Execution::Parallel => (0..reps).into_par_iter().map(one).collect::<Result<_>>()?,
    };
    Ok(summarize(per_rep))
}

/// Index-ordered average of per-repetition measure sets.
pub fn summarize(per_rep: Vec<MeasureSet>) -> RepetitionSummary {
    let mean_of = |m: Measure| -> Option<f64> {
        let vals: Vec<f64> = per_rep.iter().filter_map(|ms| ms.get(m)).collect();
        if vals.is_empty() {
            None
        } else {
            Some(vals.iter().sum::<f64>() / vals.len() as f64)
        }
    };
    let average = MeasureSet {
        mu_i: mean_of(Measure::MuI),
        var_i: mean_of(Measure::VarI),
        mu_l: mean_of(Measure::MuL),
        var_l: mean_of(Measure::VarL),
        mu_lr: mean_of(Measure::MuLr),
        var_lr: mean_of(Measure::VarLr),
        mu_s: mean_of(Measure::MuS),
        var_s: mean_of(Measure::VarS),
        m_mix: mean_of(Measure::MMix),
        excluded_lr: per_rep.iter().map(|m| m.excluded_lr).sum(),
        excluded_s: per_rep.iter().map(|m| m.excluded_s).sum(),
    };
    RepetitionSummary {
        absent_lr_reps: per_rep.iter().filter(|m| m.mu_lr.is_none()).count(),
        absent_s_reps: per_rep.iter().filter(|m| m.mu_s.is_none()).count(),
        average,
        per_rep,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetworkInfo {
    pub name: String,
    pub construction_seed: u64,
    pub features: Option<GraphFeatures>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellOutcome {
    Completed(RepetitionSummary),
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub network: usize,
    pub case: usize,
    pub outcome: CellOutcome,
}

impl Cell {
    pub fn summary(&self) -> Option<&RepetitionSummary> {
        match &self.outcome {
            CellOutcome::Completed(s) => Some(s),
            CellOutcome::Failed(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadarRow {
    pub network: String,
    pub values: [Option<f64>; 9],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadarTable {
    pub case: usize,
    pub rows: Vec<RadarRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub spec: ExperimentSpec,
    pub networks: Vec<NetworkInfo>,
    pub cases: Vec<Case>,
    /// Network-major: `cells[i * cases.len() + j]` is network `i`, case `j`.
    pub cells: Vec<Cell>,
    pub radar: Vec<RadarTable>,
}

impl ExperimentReport {
    pub fn cell(&self, network: usize, case: usize) -> &Cell {
        &self.cells[network * self.cases.len() + case]
    }

    pub fn network_index(&self, name: &str) -> Option<usize> {
        self.networks.iter().position(|n| n.name == name)
    }

    pub fn failed_cells(&self) -> usize {
        self.cells.iter().filter(|c| c.summary().is_none()).count()
    }

    /// Completed cells as `(network, case, averaged measures)` in report order.
    pub fn measure_rows(&self) -> Vec<(String, String, MeasureSet)> {
        self.cells
            .iter()
            .filter_map(|c| {
                c.summary().map(|s| {
                    (self.networks[c.network].name.clone(), self.cases[c.case].label(), s.average.clone())
                })
            })
            .collect()
    }

    pub fn write_measures_csv<W: Write>(&self, w: W) -> std::io::Result<()> {
        msm::write_csv(w, &self.measure_rows())
    }

    /// `network,case,measure,normalized_value`, case-major.
    pub fn write_radar_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "network,case,measure,normalized_value")?;
        for table in &self.radar {
            let case = self.cases[table.case].label();
            for row in &table.rows {
                for (m, v) in Measure::ALL.iter().zip(&row.values) {
                    writeln!(w, "{},{},{},{}", row.network, case, m, sig6_opt(*v))?;
                }
            }
        }
        Ok(())
    }

    pub fn radar_svg(&self, case: usize) -> Option<String> {
        let table = self.radar.iter().find(|t| t.case == case)?;
        let labels: Vec<&str> = Measure::ALL.iter().map(|m| m.name()).collect();
        let series: Vec<(&str, Vec<Option<f64>>)> =
            table.rows.iter().map(|r| (r.network.as_str(), r.values.to_vec())).collect();
        Some(svg::radar_svg(&labels, &series))
    }

    /// Writes `measures.csv`, `radar.csv`, `radar_case<j>.svg` per case and
    /// `report.json` into `dir`. Returns the paths written.
    pub fn write_outputs(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let mut buf = Vec::new();
        self.write_measures_csv(&mut buf)?;
        written.push(write_file(dir, "measures.csv", &buf)?);
        buf.clear();
        self.write_radar_csv(&mut buf)?;
        written.push(write_file(dir, "radar.csv", &buf)?);
        for table in &self.radar {
            let svg = self.radar_svg(table.case).expect("table exists");
            written.push(write_file(dir, &format!("radar_case{}.svg", table.case), svg.as_bytes())?);
        }
        let json = serde_json::to_vec_pretty(self)?;
        written.push(write_file(dir, "report.json", &json)?);
        Ok(written)
    }
}

fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, bytes)?;
    Ok(path)
}

/// Builds every network once, runs every (network, case) cell and
/// assembles the report. Cell failures are recorded, not propagated.
pub fn compare_networks(spec: &ExperimentSpec, exec: Execution) -> Result<ExperimentReport> {
    spec.validate()?;
    let build = |(i, ns): (usize, &NetworkSpec)| {
        let seed = ns.construction_seed(spec.master_seed, i);
        (seed, ns.kind.build(seed))
    };
    let graphs: Vec<(u64, Result<Graph>)> = match exec {
        Execution::Serial => spec.networks.iter().enumerate().map(build).collect(),
        Execution::Parallel => spec.networks.par_iter().enumerate().map(build).collect(),
    };
    let networks: Vec<NetworkInfo> = spec
        .networks
        .iter()
        .zip(&graphs)
        .map(|(ns, (seed, g))| NetworkInfo {
            name: ns.name.clone(),
            construction_seed: *seed,
            features: g.as_ref().ok().map(graph_features),
            error: g.as_ref().err().map(|e| e.to_string()),
        })
        .collect();

    let pairs: Vec<(usize, usize)> = (0..spec.networks.len())
        .flat_map(|i| (0..spec.cases.len()).map(move |j| (i, j)))
        .collect();
    let run_cell = |&(i, j): &(usize, usize)| -> Cell {
        let outcome = match &graphs[i].1 {
            Err(e) => CellOutcome::Failed(format!("network build failed: {e}")),
            Ok(g) => {
                let cfg = spec.sim_config(&spec.cases[j]);
                match run_repetitions(g, &cfg, spec.reps, spec.master_seed, exec) {
                    Ok(s) => CellOutcome::Completed(s),
                    Err(e) => CellOutcome::Failed(e.to_string()),
                }
            }
        };
        Cell { network: i, case: j, outcome }
    };
    let cells: Vec<Cell> = match exec {
        Execution::Serial => pairs.iter().map(run_cell).collect(),
        Execution::Parallel => pairs.par_iter().map(run_cell).collect(),
    };

    let mut report = ExperimentReport {
        spec: spec.clone(),
        networks,
        cases: spec.cases.clone(),
        cells,
        radar: Vec::new(),
    };
    report.radar = (0..report.cases.len())
        .map(|j| RadarTable { case: j, rows: radar_normalize(&report, j).expect("case in range") })
        .collect();
    Ok(report)
}

/// Max-normalise the nine measures across the completed networks of one
/// case.
pub fn radar_normalize(report: &ExperimentReport, case: usize) -> Result<Vec<RadarRow>> {
    if case >= report.cases.len() {
        return Err(Error::param(format!("case index {case} not in report")));
    }
    let (names, raw): (Vec<String>, Vec<[Option<f64>; 9]>) = (0..report.networks.len())
        .filter_map(|i| {
            report
                .cell(i, case)
                .summary()
                .map(|s| (report.networks[i].name.clone(), s.average.values()))
        })
        .unzip();
    Ok(names
        .into_iter()
        .zip(normalize_columns(&raw))
        .map(|(network, values)| RadarRow { network, values })
        .collect())
}

/// Divide each column by its maximum over present entries; columns whose
/// maximum is 0 stay 0 and absent entries stay absent.
pub fn normalize_columns<const K: usize>(rows: &[[Option<f64>; K]]) -> Vec<[Option<f64>; K]> {
    let mut maxes = [0.0f64; K];
    for row in rows {
        for (m, v) in maxes.iter_mut().zip(row) {
            if let Some(v) = v {
                *m = m.max(*v);
            }
        }
    }
    rows.iter()
        .map(|row| {
            let mut out = *row;
            for (o, &m) in out.iter_mut().zip(&maxes) {
                *o = o.map(|v| if m > 0.0 { v / m } else { 0.0 });
            }
            out
        })
        .collect()
}
