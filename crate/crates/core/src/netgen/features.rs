use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::Graph;

/// Structural summary of a graph.
///
/// `diameter` and `mean_distance` are `None` when the graph is
/// disconnected; `mean_distance` is also `None` for a single vertex (no
/// pairs to average over).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphFeatures {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub diameter: Option<usize>,
    pub mean_distance: Option<f64>,
    pub density: f64,
    pub mean_clustering: f64,
}

/// Vertex count per degree value, ordered by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DegreeHistogram(BTreeMap<usize, usize>);

impl DegreeHistogram {
    pub fn get(&self, degree: usize) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    /// `(degree, count)` pairs in ascending degree order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&d, &c)| (d, c))
    }

    pub fn vertex_total(&self) -> usize {
        self.0.values().sum()
    }

    /// Sum of degree times count, i.e. twice the edge count.
    pub fn degree_total(&self) -> usize {
        self.0.iter().map(|(d, c)| d * c).sum()
    }
}

pub fn degree_histogram(g: &Graph) -> DegreeHistogram {
    let mut h = BTreeMap::new();
    for v in 0..g.vertex_count() {
        *h.entry(g.degree(v)).or_insert(0) += 1;
    }
    DegreeHistogram(h)
}

/// Exact features via one BFS per vertex.
pub fn graph_features(g: &Graph) -> GraphFeatures {
    let n = g.vertex_count();
    let pairs = n * (n - 1) / 2;
    let density = if pairs == 0 { 0.0 } else { g.edge_count() as f64 / pairs as f64 };

    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    let mut connected = true;
    let mut diameter = 0usize;
    // Ordered-pair distance sum; halved below.
    let mut ordered_sum: u128 = 0;
    for src in 0..n {
        dist.fill(usize::MAX);
        dist[src] = 0;
        queue.clear();
        queue.push_back(src);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            let dv = dist[v];
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dv + 1;
                    reached += 1;
                    ordered_sum += (dv + 1) as u128;
                    diameter = diameter.max(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        if reached < n {
            connected = false;
            break;
        }
    }
    let (diameter, mean_distance) = if !connected {
        (None, None)
    } else if pairs == 0 {
        (Some(0), None)
    } else {
        (Some(diameter), Some((ordered_sum / 2) as f64 / pairs as f64))
    };

    GraphFeatures {
        vertex_count: n,
        edge_count: g.edge_count(),
        diameter,
        mean_distance,
        density,
        mean_clustering: mean_clustering(g),
    }
}

/// Average local clustering coefficient; vertices of degree < 2 count as 0.
fn mean_clustering(g: &Graph) -> f64 {
    let n = g.vertex_count();
    let mut mark = vec![false; n];
    let mut total = 0.0;
    for v in 0..n {
        let ns = g.neighbors(v);
        let d = ns.len();
        if d < 2 {
            continue;
        }
        for &a in ns {
            mark[a] = true;
        }
        let mut links = 0usize;
        for &a in ns {
            links += g.neighbors(a).iter().filter(|&&b| b > a && mark[b]).count();
        }
        for &a in ns {
            mark[a] = false;
        }
        total += links as f64 / (d * (d - 1) / 2) as f64;
    }
    total / n as f64
}
