//! Test-only reference implementations, written independently of the
//! library code paths they check.
#![allow(dead_code)]

use std::collections::VecDeque;

/// Change statistics by direct formula evaluation in f64, summing in
/// reverse index order. Returns `(I, L, LR, S)`.
pub fn naive_stats(prev: &[u64], next: &[u64], u: u64) -> (f64, f64, Option<f64>, Option<f64>) {
    let n = prev.len();
    let mut tot_prev = 0.0;
    let mut tot_next = 0.0;
    let mut diff2 = 0.0;
    let mut next2 = 0.0;
    let mut prev2 = 0.0;
    let mut dot = 0.0;
    for i in (0..n).rev() {
        let a = prev[i] as f64;
        let b = next[i] as f64;
        tot_prev += a;
        tot_next += b;
        diff2 += (b - a) * (b - a);
        next2 += b * b;
        prev2 += a * a;
        dot += b * a;
    }
    let i_stat = (tot_next - tot_prev).abs() / (n as f64 * u as f64);
    let l_stat = diff2.sqrt() / ((n as f64).sqrt() * u as f64);
    let lr = if next2 == 0.0 { None } else { Some(diff2.sqrt() / next2.sqrt()) };
    let s = if next2 == 0.0 || prev2 == 0.0 { None } else { Some(dot / (next2.sqrt() * prev2.sqrt())) };
    (i_stat, l_stat, lr, s)
}

/// All-pairs shortest paths by Floyd-Warshall on an adjacency matrix.
/// Returns `(diameter, mean distance)` or `None` when disconnected.
#[allow(clippy::needless_range_loop)]
pub fn floyd_features(n: usize, edges: &[(usize, usize)]) -> Option<(usize, f64)> {
    const INF: usize = usize::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(a, b) in edges {
        d[a][b] = 1;
        d[b][a] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let mut diam = 0;
    let mut sum = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if d[i][j] >= INF {
                return None;
            }
            diam = diam.max(d[i][j]);
            sum += d[i][j];
        }
    }
    Some((diam, sum as f64 / (n * (n - 1) / 2) as f64))
}

/// Eccentricity-based diameter by BFS over an edge list (no library code).
pub fn bfs_diameter(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut best = 0;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        if dist.contains(&usize::MAX) {
            return None;
        }
        best = best.max(*dist.iter().max().unwrap());
    }
    Some(best)
}

/// Population mean and variance, textbook two-pass form.
pub fn naive_mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    (m, xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n)
}
