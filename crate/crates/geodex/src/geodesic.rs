//! Shortest-path counting and the geodesic subpath number.
//!
//! Every subpath of a shortest path is itself a shortest path, so the
//! geodesic subpaths of a graph are exactly its geodesics: one per
//! unordered vertex pair per shortest path between them, plus one trivial
//! path per vertex. Counts grow factorially with order (hypercubes reach
//! `d!` per pair), so all counting is done in [`BigUint`].

use crate::error::{Error, Result};
use crate::graph::Graph;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::VecDeque;

/// Per-source BFS result: distances and shortest-path counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicTable {
    /// The BFS source.
    pub source: usize,
    /// `dist[v]` is the distance from the source, `None` if unreachable.
    pub dist: Vec<Option<usize>>,
    /// `sigma[v]` is the number of shortest source-`v` paths (0 if
    /// unreachable, 1 for the source itself).
    pub sigma: Vec<BigUint>,
}

/// Counts shortest paths from `s` to every vertex in one BFS pass.
///
/// Uses the standard dynamic program: when `v` is first reached at
/// distance `d+1`, every shortest path to a distance-`d` in-neighbor
/// extends to one ending at `v`, so the counts sum over such in-neighbors.
pub fn bfs_count(g: &Graph, s: usize) -> Result<GeodesicTable> {
    let n = g.n();
    if s >= n {
        return Err(Error::VertexOutOfRange {
            vertex: s,
            order: n,
        });
    }
    let mut dist: Vec<Option<usize>> = vec![None; n];
    let mut sigma: Vec<BigUint> = vec![BigUint::zero(); n];
    dist[s] = Some(0);
    sigma[s] = BigUint::one();
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in g.neighbors(u) {
            match dist[v] {
                None => {
                    dist[v] = Some(du + 1);
                    sigma[v] = sigma[u].clone();
                    queue.push_back(v);
                }
                Some(dv) if dv == du + 1 => {
                    let add = sigma[u].clone();
                    sigma[v] += add;
                }
                Some(_) => {}
            }
        }
    }
    Ok(GeodesicTable {
        source: s,
        dist,
        sigma,
    })
}

/// Number of shortest paths between `u` and `v`.
///
/// By convention the trivial path counts, so `gpn_pair(g, u, u) == 1`.
/// Errors if the pair is disconnected.
pub fn gpn_pair(g: &Graph, u: usize, v: usize) -> Result<BigUint> {
    if u == v {
        if u >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: u,
                order: g.n(),
            });
        }
        return Ok(BigUint::one());
    }
    let table = bfs_count(g, u)?;
    if v >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: g.n(),
        });
    }
    if table.dist[v].is_none() {
        return Err(Error::DisconnectedPair { u, v });
    }
    Ok(table.sigma[v].clone())
}

/// The geodesic subpath number: the number of distinct geodesics of the
/// connected graph `g`, trivial one-vertex paths included.
///
/// Equals the sum of [`gpn_pair`] over unordered pairs plus the order.
/// Sources are processed in parallel; the per-source sums are exact
/// integers, so the result is independent of scheduling.
pub fn gpn(g: &Graph) -> Result<BigUint> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let ordered: BigUint = (0..g.n())
        .into_par_iter()
        .map(|s| {
            let table = bfs_count(g, s).expect("source in range");
            let mut sum = BigUint::zero();
            for (v, sig) in table.sigma.iter().enumerate() {
                if v != s {
                    sum += sig;
                }
            }
            sum
        })
        .reduce(BigUint::zero, |a, b| a + b);
    if (&ordered % 2u32) != BigUint::zero() {
        return Err(Error::Consistency(
            "ordered geodesic count is odd; pair counts must be symmetric".into(),
        ));
    }
    Ok(ordered / 2u32 + g.n())
}

/// Brute-force geodesic count for cross-checking, guarded to `n <= 10`.
///
/// Independent of the BFS counting recurrence: for every pair it walks all
/// simple paths of length at most the pair's distance by explicit DFS and
/// counts the ones that reach the far endpoint at exactly that length.
pub fn gpn_brute(g: &Graph) -> Result<BigUint> {
    const LIMIT: usize = 10;
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.n() > LIMIT {
        return Err(Error::SizeLimit {
            op: "gpn_brute",
            given: g.n(),
            limit: LIMIT,
        });
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.n();
    let mut total = BigUint::from(n);
    for u in 0..n {
        let dist = g.bfs_dist(u)?;
        for (v, d) in dist.iter().enumerate().skip(u + 1) {
            let d = d.expect("connected");
            let mut on_path = vec![false; n];
            on_path[u] = true;
            total += count_paths(g, u, v, d, &mut on_path);
        }
    }
    Ok(total)
}

fn count_paths(
    g: &Graph,
    at: usize,
    target: usize,
    steps_left: usize,
    on_path: &mut [bool],
) -> u64 {
    if steps_left == 0 {
        return u64::from(at == target);
    }
    let mut found = 0;
    for &w in g.neighbors(at) {
        if !on_path[w] {
            on_path[w] = true;
            found += count_paths(g, w, target, steps_left - 1, on_path);
            on_path[w] = false;
        }
    }
    found
}

/// Whether every vertex pair of the connected graph `g` is joined by a
/// unique shortest path.
pub fn is_geodetic(g: &Graph) -> Result<bool> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let one = BigUint::one();
    for s in 0..g.n() {
        let table = bfs_count(g, s)?;
        if table.sigma.iter().any(|sig| *sig > one) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The interval between `u` and `v` layered by distance from `u`.
///
/// Layer `i` holds the vertices lying on at least one shortest `u`-`v`
/// path at distance `i` from `u`; there are `d(u, v) + 1` layers, the
/// first being `[u]` and the last `[v]`.
pub fn geodesic_interval(g: &Graph, u: usize, v: usize) -> Result<Vec<Vec<usize>>> {
    let du = g.bfs_dist(u)?;
    let dv = g.bfs_dist(v)?;
    let t = du[v].ok_or(Error::DisconnectedPair { u, v })?;
    let mut layers = vec![Vec::new(); t + 1];
    for w in 0..g.n() {
        if let (Some(a), Some(b)) = (du[w], dv[w]) {
            if a + b == t {
                layers[a].push(w);
            }
        }
    }
    Ok(layers)
}
