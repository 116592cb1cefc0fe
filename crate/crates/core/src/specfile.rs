//! Text formats for describing experiments and graph sources.
//!
//! An experiment file is a sequence of `[experiment]`, `[network]` and
//! `[case]` sections holding `key = value` lines; `#` starts a comment
//! line. `[experiment]` may appear at most once, `[network]` and `[case]`
//! once per entry. Unknown sections, unknown keys and repeated keys are
//! rejected.
//!
//! ```text
//! [experiment]
//! reps = 100
//! steps = 100
//!
//! [network]
//! name = teal
//! kind = ws
//! n = 91
//! k = 4
//! p = 0.55
//!
//! [case]
//! g = 0.4
//! d = 0.3
//! ```
//!
//! A graph source is either an inline constructor `kind:params` or a path to
//! an edge-list file:
//!
//! | source | graph |
//! |--------|-------|
//! | `star:N` | star on `N` vertices |
//! | `tree:B,D` | complete `B`-ary tree of depth `D` |
//! | `jumpers:B,D,C[,SEED]` | tree plus `C` random jumper edges |
//! | `ws:N,K,P[,SEED]` | Watts-Strogatz |
//! | `ba:N,M[,SEED]` | Barabási-Albert |
//! | `hypercube:DIM` | hypercube |

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use crate::commsim::EventMode;
use crate::experiment::{Case, ExperimentSpec, NetworkKind, NetworkSpec};
use crate::{Error, Result};

const KINDS: [&str; 6] = ["star", "tree", "jumpers", "ws", "ba", "hypercube"];

/// Parse an inline constructor or fall back to an edge-list path.
pub fn parse_graph_source(src: &str) -> Result<NetworkSpec> {
    if let Some((kind, params)) = src.split_once(':') {
        if KINDS.contains(&kind) {
            let args: Vec<&str> = if params.is_empty() { vec![] } else { params.split(',').collect() };
            let (kind, seed) = inline_kind(kind, &args)
                .map_err(|e| Error::param(format!("graph source `{src}`: {e}")))?;
            return Ok(NetworkSpec { name: src.to_string(), kind, seed });
        }
    }
    if src.is_empty() {
        return Err(Error::param("empty graph source"));
    }
    Ok(NetworkSpec::new(src, NetworkKind::EdgeList { path: PathBuf::from(src) }))
}

fn num<T: FromStr>(s: &str, what: &str) -> std::result::Result<T, String> {
    s.trim().parse().map_err(|_| format!("bad {what} `{s}`"))
}

fn inline_kind(kind: &str, a: &[&str]) -> std::result::Result<(NetworkKind, Option<u64>), String> {
    let arity = |lo: usize, hi: usize| {
        if a.len() < lo || a.len() > hi {
            Err(format!("`{kind}` takes {lo}..={hi} parameters, got {}", a.len()))
        } else {
            Ok(())
        }
    };
    let seed_at = |i: usize| a.get(i).map(|s| num::<u64>(s, "seed")).transpose();
    Ok(match kind {
        "star" => {
            arity(1, 1)?;
            (NetworkKind::Star { n: num(a[0], "n")? }, None)
        }
        "tree" => {
            arity(2, 2)?;
            (NetworkKind::Tree { branching: num(a[0], "branching")?, depth: num(a[1], "depth")? }, None)
        }
        "jumpers" => {
            arity(3, 4)?;
            let k = NetworkKind::TreeJumpers {
                branching: num(a[0], "branching")?,
                depth: num(a[1], "depth")?,
                jumpers: num(a[2], "jumper count")?,
            };
            (k, seed_at(3)?)
        }
        "ws" => {
            arity(3, 4)?;
            let k = NetworkKind::Ws { n: num(a[0], "n")?, k: num(a[1], "k")?, p: num(a[2], "p")? };
            (k, seed_at(3)?)
        }
        "ba" => {
            arity(2, 3)?;
            (NetworkKind::Ba { n: num(a[0], "n")?, m: num(a[1], "m")? }, seed_at(2)?)
        }
        "hypercube" => {
            arity(1, 1)?;
            (NetworkKind::Hypercube { dim: num(a[0], "dim")? }, None)
        }
        _ => unreachable!("kind checked by caller"),
    })
}

struct Section {
    name: String,
    line: usize,
    keys: BTreeMap<String, (String, usize)>,
}

impl Section {
    fn take<T: FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.keys.remove(key) {
            None => Ok(None),
            Some((v, line)) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::Parse { line, message: format!("bad value `{v}` for `{key}`") }),
        }
    }

    fn require<T: FromStr>(&mut self, key: &str) -> Result<T> {
        let line = self.line;
        let name = self.name.clone();
        self.take(key)?
            .ok_or_else(|| Error::Parse { line, message: format!("[{name}] is missing `{key}`") })
    }

    fn finish(self) -> Result<()> {
        if let Some((k, (_, line))) = self.keys.into_iter().next() {
            return Err(Error::Parse { line, message: format!("unknown key `{k}` in [{}]", self.name) });
        }
        Ok(())
    }
}

fn sections(text: &str) -> Result<Vec<Section>> {
    let mut out: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        if let Some(name) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let name = name.trim();
            if !["experiment", "network", "case"].contains(&name) {
                return Err(Error::Parse { line, message: format!("unknown section [{name}]") });
            }
            out.push(Section { name: name.to_string(), line, keys: BTreeMap::new() });
            continue;
        }
        let Some((k, v)) = s.split_once('=') else {
            return Err(Error::Parse { line, message: format!("expected `key = value`, found `{s}`") });
        };
        let sec = out
            .last_mut()
            .ok_or_else(|| Error::Parse { line, message: "key outside of any section".into() })?;
        let k = k.trim().to_string();
        if sec.keys.insert(k.clone(), (v.trim().to_string(), line)).is_some() {
            return Err(Error::Parse { line, message: format!("`{k}` repeated in [{}]", sec.name) });
        }
    }
    Ok(out)
}

/// Parse an experiment file. Values omitted from `[experiment]` take the
/// defaults of [`ExperimentSpec::paper_default`]; `default_seed` is used when
/// the file sets no `seed`.
pub fn parse_experiment(text: &str, default_seed: u64) -> Result<ExperimentSpec> {
    let mut spec = ExperimentSpec::paper_default(default_seed);
    spec.networks.clear();
    spec.cases.clear();
    let mut seen_experiment = false;
    for mut sec in sections(text)? {
        match sec.name.as_str() {
            "experiment" => {
                if seen_experiment {
                    return Err(Error::Parse { line: sec.line, message: "[experiment] repeated".into() });
                }
                seen_experiment = true;
                if let Some(v) = sec.take("reps")? {
                    spec.reps = v;
                }
                if let Some(v) = sec.take("u")? {
                    spec.u = v;
                }
                if let Some(v) = sec.take("n0")? {
                    spec.n0 = v;
                }
                if let Some(v) = sec.take("steps")? {
                    spec.t_max = v;
                }
                if let Some(v) = sec.take::<String>("mode")? {
                    spec.mode = v.parse::<EventMode>()?;
                }
                if let Some(v) = sec.take("seed")? {
                    spec.master_seed = v;
                }
                sec.finish()?;
            }
            "network" => {
                let name: String = sec.require("name")?;
                let kind = network_kind(&mut sec)?;
                let seed = sec.take("seed")?;
                sec.finish()?;
                spec.networks.push(NetworkSpec { name, kind, seed });
            }
            "case" => {
                let g = sec.require("g")?;
                let d = sec.require("d")?;
                sec.finish()?;
                spec.cases.push(Case { g, d });
            }
            _ => unreachable!(),
        }
    }
    spec.validate()?;
    Ok(spec)
}

fn network_kind(sec: &mut Section) -> Result<NetworkKind> {
    let kind: String = sec.require("kind")?;
    Ok(match kind.as_str() {
        "star" => NetworkKind::Star { n: sec.require("n")? },
        "tree" => NetworkKind::Tree { branching: sec.require("branching")?, depth: sec.require("depth")? },
        "jumpers" => NetworkKind::TreeJumpers {
            branching: sec.require("branching")?,
            depth: sec.require("depth")?,
            jumpers: sec.require("jumpers")?,
        },
        "ws" => NetworkKind::Ws { n: sec.require("n")?, k: sec.require("k")?, p: sec.require("p")? },
        "ba" => NetworkKind::Ba { n: sec.require("n")?, m: sec.require("m")? },
        "hypercube" => NetworkKind::Hypercube { dim: sec.require("dim")? },
        "edgelist" => NetworkKind::EdgeList { path: PathBuf::from(sec.require::<String>("path")?) },
        other => {
            return Err(Error::Parse { line: sec.line, message: format!("unknown network kind `{other}`") })
        }
    })
}
