use std::collections::HashSet;

use rand::Rng;

use super::{Graph, GraphBuilder};
use crate::rng::{chance, uniform_index};
use crate::{Error, Result};

/// Largest vertex count any generator or loader will build.
pub const MAX_VERTICES: usize = 1 << 22;
/// Largest hypercube dimension (`2^20` vertices).
pub const MAX_HYPERCUBE_DIM: u32 = 20;

/// Star: vertex 0 is the hub, joined to every other vertex.
pub fn make_star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::param(format!("star needs n >= 2, got {n}")));
    }
    Graph::from_edges(n, (1..n).map(|v| (0, v)))
}

/// Complete `branching`-ary tree of the given depth, numbered breadth-first
/// from the root 0.
pub fn make_tree(branching: usize, depth: u32) -> Result<Graph> {
    if branching == 0 {
        return Err(Error::param("tree branching must be >= 1"));
    }
    let mut n: usize = 0;
    let mut level: usize = 1;
    for k in 0..=depth {
        if k > 0 {
            level = level
                .checked_mul(branching)
                .ok_or_else(|| Error::param("tree size overflows"))?;
        }
        n = n
            .checked_add(level)
            .filter(|&n| n <= MAX_VERTICES)
            .ok_or_else(|| {
                Error::param(format!(
                    "tree({branching}, {depth}) exceeds the cap of {MAX_VERTICES} vertices"
                ))
            })?;
    }
    // In BFS numbering the children of v are v*b+1 ..= v*b+b.
    let edges = (1..n).map(|child| ((child - 1) / branching, child));
    Graph::from_edges(n, edges)
}

/// Copy of `base` with `count` extra edges drawn uniformly without
/// replacement among the vertex pairs absent from `base`.
pub fn add_jumpers<R: Rng + ?Sized>(base: &Graph, count: usize, rng: &mut R) -> Result<Graph> {
    let n = base.vertex_count();
    let all_pairs = n * (n - 1) / 2;
    let absent = all_pairs - base.edge_count();
    if count > absent {
        return Err(Error::param(format!(
            "cannot add {count} jumpers, only {absent} vertex pairs are free"
        )));
    }
    let mut b = base.to_builder();
    if count == 0 {
        return Ok(b.build());
    }
    if count * 2 <= absent {
        // Sparse: rejection on uniformly drawn ordered pairs. Each unordered
        // pair is hit by two ordered pairs, so acceptance is uniform.
        let mut chosen = HashSet::with_capacity(count);
        let mut order = Vec::with_capacity(count);
        while order.len() < count {
            let a = uniform_index(rng, n);
            let mut c = uniform_index(rng, n - 1);
            if c >= a {
                c += 1;
            }
            let pair = (a.min(c), a.max(c));
            if base.has_edge(pair.0, pair.1) || !chosen.insert(pair) {
                continue;
            }
            order.push(pair);
        }
        for (a, c) in order {
            b.insert(a, c);
        }
    } else {
        // Dense: enumerate the free pairs and take a partial shuffle.
        let mut free: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |c| (a, c)))
            .filter(|&(a, c)| !base.has_edge(a, c))
            .collect();
        for i in 0..count {
            let j = i + uniform_index(rng, free.len() - i);
            free.swap(i, j);
        }
        for &(a, c) in &free[..count] {
            b.insert(a, c);
        }
    }
    Ok(b.build())
}

/// Watts-Strogatz small world: ring lattice where each vertex joins its
/// `k/2` nearest neighbours on either side, then every lattice edge
/// `(v, v+j)` is visited (by `j`, then `v`) and with probability `p` its far
/// end is moved to a uniform vertex that is neither `v` nor already adjacent
/// to `v`. Edge count stays `n*k/2`.
pub fn make_ws<R: Rng + ?Sized>(n: usize, k: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::param(format!("ws needs an even k >= 2, got {k}")));
    }
    if n <= k {
        return Err(Error::param(format!("ws needs n > k, got n={n}, k={k}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("ws rewiring probability {p} outside [0, 1]")));
    }
    let mut b = GraphBuilder::new(n)?;
    for j in 1..=k / 2 {
        for v in 0..n {
            b.insert(v, (v + j) % n);
        }
    }
    for j in 1..=k / 2 {
        for v in 0..n {
            let w = (v + j) % n;
            if !chance(rng, p) || b.degree(v) >= n - 1 {
                continue;
            }
            let target = loop {
                let t = uniform_index(rng, n);
                if t != v && !b.has_edge(v, t) {
                    break t;
                }
            };
            b.remove(v, w);
            b.insert(v, target);
        }
    }
    debug_assert_eq!(b.edge_count(), n * k / 2);
    Ok(b.build())
}

/// Barabási-Albert preferential attachment. Starts from a path on `m + 1`
/// vertices; each later vertex attaches to `m` distinct existing vertices
/// chosen with probability proportional to degree. Edge count is
/// `m + m*(n - m - 1)`.
pub fn make_ba<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    if m < 1 {
        return Err(Error::param("ba needs m >= 1"));
    }
    if n <= m {
        return Err(Error::param(format!("ba needs n > m, got n={n}, m={m}")));
    }
    let mut b = GraphBuilder::new(n)?;
    // Every edge endpoint appears once, so a uniform draw is degree-weighted.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * m * (n - m));
    for v in 0..m {
        b.insert(v, v + 1);
        endpoints.extend([v, v + 1]);
    }
    let mut targets = Vec::with_capacity(m);
    for v in m + 1..n {
        targets.clear();
        while targets.len() < m {
            let t = endpoints[uniform_index(rng, endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            b.insert(v, t);
            endpoints.extend([v, t]);
        }
    }
    Ok(b.build())
}

/// `dim`-dimensional hypercube: `2^dim` vertices, edges between ids that
/// differ in exactly one bit.
pub fn make_hypercube(dim: u32) -> Result<Graph> {
    if dim > MAX_HYPERCUBE_DIM {
        return Err(Error::param(format!(
            "hypercube dimension {dim} exceeds the cap of {MAX_HYPERCUBE_DIM}"
        )));
    }
    let n = 1usize << dim;
    let edges = (0..n).flat_map(move |v| {
        (0..dim).map(move |bit| (v, v ^ (1 << bit))).filter(|&(a, c)| a < c)
    });
    Graph::from_edges(n, edges)
}
