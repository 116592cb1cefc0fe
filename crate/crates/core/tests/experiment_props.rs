use mixbiotic::commsim::{run, EventMode, SimConfig};
use mixbiotic::experiment::{
    compare_networks, normalize_columns, radar_normalize, repetition_seed, run_repetitions, summarize, Case, Execution,
    ExperimentSpec, NetworkKind, NetworkSpec,
};
use mixbiotic::msm::{measure_series, Measure, MeasureSet};
use mixbiotic::netgen::make_tree;
use proptest::prelude::*;

fn spec() -> ExperimentSpec {
    ExperimentSpec {
        networks: vec![
            NetworkSpec::new("star", NetworkKind::Star { n: 40 }),
            NetworkSpec::new("tree", NetworkKind::Tree { branching: 3, depth: 3 }),
            NetworkSpec::new("ws", NetworkKind::Ws { n: 40, k: 4, p: 0.5 }),
        ],
        cases: vec![Case { g: 0.4, d: 0.3 }, Case { g: 0.5, d: 0.5 }],
        reps: 12,
        u: 1,
        n0: 6,
        t_max: 50,
        mode: EventMode::SingleEvent,
        master_seed: 5,
    }
}

#[test]
fn averages_are_index_ordered_means() {
    let g = make_tree(3, 3).unwrap();
    let cfg = SimConfig { n0: 6, t_max: 50, ..SimConfig::default() };
    let s = run_repetitions(&g, &cfg, 25, 9, Execution::Parallel).unwrap();
    let mus: Vec<f64> = s.per_rep.iter().filter_map(|m| m.mu_s).collect();
    assert_eq!(s.average.mu_s, Some(mus.iter().sum::<f64>() / mus.len() as f64));
    let mix: Vec<f64> = s.per_rep.iter().filter_map(|m| m.m_mix).collect();
    assert_eq!(s.average.m_mix, Some(mix.iter().sum::<f64>() / mix.len() as f64));
    for m in &s.per_rep {
        if let (Some(a), Some(b)) = (m.mu_s, m.var_s) {
            assert_eq!(m.m_mix, Some(a * b));
        }
    }
}

#[test]
fn repetition_results_do_not_depend_on_execution_order() {
    let g = make_tree(3, 3).unwrap();
    let cfg = SimConfig { n0: 6, t_max: 50, ..SimConfig::default() };
    let s = run_repetitions(&g, &cfg, 10, 9, Execution::Parallel).unwrap();
    // Evaluate repetitions in a permuted order, then reduce in index order.
    let order = [7, 2, 9, 0, 4, 1, 8, 3, 6, 5];
    let mut computed: Vec<(usize, MeasureSet)> = order
        .iter()
        .map(|&r| {
            let c = SimConfig { seed: repetition_seed(9, r), ..cfg.clone() };
            (r, measure_series(&run(&g, &c).unwrap(), 1).unwrap())
        })
        .collect();
    computed.sort_by_key(|(r, _)| *r);
    assert_eq!(summarize(computed.into_iter().map(|(_, m)| m).collect()), s);
    let shorter = run_repetitions(&g, &cfg, 4, 9, Execution::Serial).unwrap();
    assert_eq!(&s.per_rep[..4], &shorter.per_rep[..]);
}

#[test]
fn parallel_equals_serial() {
    let a = compare_networks(&spec(), Execution::Serial).unwrap();
    let b = compare_networks(&spec(), Execution::Parallel).unwrap();
    assert_eq!(a, b);
    let (mut x, mut y) = (Vec::new(), Vec::new());
    a.write_measures_csv(&mut x).unwrap();
    b.write_measures_csv(&mut y).unwrap();
    assert_eq!(x, y);
}

#[test]
fn radar_columns_are_max_normalised() {
    let r = compare_networks(&spec(), Execution::Parallel).unwrap();
    for j in 0..r.cases.len() {
        let rows = radar_normalize(&r, j).unwrap();
        assert_eq!(rows.len(), 3);
        for k in 0..Measure::ALL.len() {
            let col: Vec<f64> = rows.iter().filter_map(|row| row.values[k]).collect();
            assert!(col.iter().all(|v| (0.0..=1.0).contains(v)));
            if col.iter().any(|&v| v > 0.0) {
                assert!(col.contains(&1.0), "case {j} measure {k}");
            }
        }
    }
    assert!(radar_normalize(&r, 9).is_err());
}

#[test]
fn outputs_written() {
    let dir = tempfile::tempdir().unwrap();
    let r = compare_networks(&spec(), Execution::Parallel).unwrap();
    let files = r.write_outputs(dir.path()).unwrap();
    let names: Vec<String> = files.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
    assert_eq!(names, ["measures.csv", "radar.csv", "radar_case0.svg", "radar_case1.svg", "report.json"]);
    let csv = std::fs::read_to_string(dir.path().join("measures.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 6);
    let radar = std::fs::read_to_string(dir.path().join("radar.csv")).unwrap();
    assert_eq!(radar.lines().count(), 1 + 2 * 3 * 9);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json["cells"].as_array().unwrap().len(), 6);
    assert_eq!(json["cells"][0]["outcome"]["completed"]["per_rep"].as_array().unwrap().len(), 12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn radar_normalisation_is_idempotent(
        rows in prop::collection::vec(prop::array::uniform4(prop::option::of(0.0f64..5.0)), 1..8)
    ) {
        let once = normalize_columns(&rows);
        prop_assert_eq!(normalize_columns(&once), once.clone());
        for row in &once {
            for v in row.iter().flatten() {
                prop_assert!((0.0..=1.0).contains(v));
            }
        }
    }
}
