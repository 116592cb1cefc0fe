mod common;

use std::collections::HashSet;

use mixbiotic::netgen::{
    add_jumpers, degree_histogram, graph_features, make_ba, make_hypercube, make_star, make_tree, make_ws, Graph,
};
use mixbiotic::rng::rng_from_seed;
use proptest::prelude::*;

fn check_simple(g: &Graph) {
    let n = g.vertex_count();
    let mut seen = HashSet::new();
    for (a, b) in g.edges() {
        assert!(a < b && b < n, "edge ({a}, {b}) with n={n}");
        assert!(seen.insert((a, b)));
    }
    assert_eq!(seen.len(), g.edge_count());
    let h = degree_histogram(g);
    assert_eq!(h.vertex_total(), n);
    assert_eq!(h.degree_total(), 2 * g.edge_count());
}

#[derive(Debug, Clone)]
enum Gen {
    Star(usize),
    Tree(usize, u32),
    Jumpers(usize, u32, usize, u64),
    Ws(usize, usize, f64, u64),
    Ba(usize, usize, u64),
    Hypercube(u32),
}

fn gen_strategy() -> impl Strategy<Value = Gen> {
    prop_oneof![
        (2usize..200).prop_map(Gen::Star),
        (1usize..6, 0u32..4).prop_map(|(b, d)| Gen::Tree(b, d)),
        (2usize..6, 1u32..4, 0usize..40, any::<u64>()).prop_map(|(b, d, c, s)| Gen::Jumpers(b, d, c, s)),
        (1usize..4, 1usize..60, 0.0f64..=1.0, any::<u64>())
            .prop_map(|(h, extra, p, s)| Gen::Ws(2 * h + extra, 2 * h, p, s)),
        (1usize..5, 1usize..80, any::<u64>()).prop_map(|(m, extra, s)| Gen::Ba(m + extra, m, s)),
        (0u32..8).prop_map(Gen::Hypercube),
    ]
}

fn build(g: &Gen) -> Graph {
    match *g {
        Gen::Star(n) => make_star(n).unwrap(),
        Gen::Tree(b, d) => make_tree(b, d).unwrap(),
        Gen::Jumpers(b, d, c, s) => {
            let t = make_tree(b, d).unwrap();
            let free = t.vertex_count() * (t.vertex_count() - 1) / 2 - t.edge_count();
            add_jumpers(&t, c.min(free), &mut rng_from_seed(s)).unwrap()
        }
        Gen::Ws(n, k, p, s) => make_ws(n, k, p, &mut rng_from_seed(s)).unwrap(),
        Gen::Ba(n, m, s) => make_ba(n, m, &mut rng_from_seed(s)).unwrap(),
        Gen::Hypercube(d) => make_hypercube(d).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn generators_produce_simple_graphs(g in gen_strategy()) {
        let graph = build(&g);
        check_simple(&graph);
        match g {
            Gen::Ws(n, k, _, _) => prop_assert_eq!(graph.edge_count(), n * k / 2),
            Gen::Ba(n, m, _) => {
                prop_assert_eq!(graph.edge_count(), m + m * (n - m - 1));
                prop_assert!(graph_features(&graph).diameter.is_some());
            }
            Gen::Hypercube(d) => prop_assert!((0..graph.vertex_count()).all(|v| graph.degree(v) == d as usize)),
            _ => {}
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jumpers_never_increase_diameter(seed in any::<u64>(), count in 0usize..80) {
        let base = make_tree(3, 3).unwrap();
        let before = graph_features(&base).diameter.unwrap();
        let g = add_jumpers(&base, count, &mut rng_from_seed(seed)).unwrap();
        prop_assert_eq!(g.edge_count(), base.edge_count() + count);
        prop_assert!(base.edges().all(|(a, b)| g.has_edge(a, b)));
        prop_assert!(graph_features(&g).diameter.unwrap() <= before);
    }

    #[test]
    fn jumpers_on_disconnected_base_keep_base(seed in any::<u64>()) {
        let base = Graph::from_edges(10, [(0, 1), (2, 3)]).unwrap();
        let g = add_jumpers(&base, 5, &mut rng_from_seed(seed)).unwrap();
        prop_assert_eq!(g.edge_count(), 7);
        prop_assert!(g.has_edge(0, 1) && g.has_edge(2, 3));
    }

    #[test]
    fn features_agree_with_floyd_oracle(seed in any::<u64>(), n in 5usize..40) {
        let g = make_ws(n, 4, 0.3, &mut rng_from_seed(seed)).unwrap();
        let edges: Vec<_> = g.edges().collect();
        let f = graph_features(&g);
        match common::floyd_features(n, &edges) {
            Some((d, mean)) => {
                prop_assert_eq!(f.diameter, Some(d));
                prop_assert!((f.mean_distance.unwrap() - mean).abs() < 1e-12);
                prop_assert!(f.mean_distance.unwrap() <= d as f64);
            }
            None => prop_assert_eq!(f.diameter, None),
        }
        prop_assert!((0.0..=1.0).contains(&f.density));
        prop_assert!((0.0..=1.0).contains(&f.mean_clustering));
    }
}

#[test]
fn star_mean_distance_closed_form() {
    for n in 3..=50 {
        let g = make_star(n).unwrap();
        let edges: Vec<_> = g.edges().collect();
        let (_, oracle) = common::floyd_features(n, &edges).unwrap();
        let closed = ((n - 1) + (n - 1) * (n - 2)) as f64 / (n * (n - 1) / 2) as f64;
        let got = graph_features(&g).mean_distance.unwrap();
        assert!((got - oracle).abs() < 1e-12, "n={n}");
        assert!((got - closed).abs() < 1e-12, "n={n}");
    }
}

// At n = 91, k = 4 the random-graph floor (~0.04) adds to the surviving
// lattice triangles; p = 0.70 is where the average lands near 0.045.
#[test]
fn ws_clustering_calibration() {
    let mean: f64 = (0..100)
        .map(|s| graph_features(&make_ws(91, 4, 0.70, &mut rng_from_seed(s)).unwrap()).mean_clustering)
        .sum::<f64>()
        / 100.0;
    assert!((mean - 0.045).abs() <= 0.02, "mean clustering {mean}");
}
