//! Stochastic search for graphs with large geodesic subpath numbers, and
//! a small designed experiment on complete bipartite graphs.
//!
//! The hill climber is a sanity check on the layered-join family: if
//! single-edge rewiring could beat `G_{3, n/3}` at some small order, the
//! search would surface a witness. The bipartite experiment compares the
//! balanced biclique against its skewed siblings and the crown graph at
//! one order.

use crate::error::{Error, Result};
use crate::families::{formula_sjoin, gen_complete_bipartite, gen_crown, gen_path};
use crate::formats::render_graph6;
use crate::geodesic::gpn;
use crate::graph::Graph;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of [`local_search_max`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub n: usize,
    pub seed: u64,
    pub budget: usize,
    /// Largest count seen across all restarts.
    pub best_value: BigUint,
    /// The graph attaining it, in graph6 form with the labels the search
    /// produced.
    pub best_graph6: String,
    /// The layered-join reference value `gpn(G_{3, n/3})`, when `n >= 6`.
    pub family_value: Option<BigUint>,
    /// Whether the search strictly beat the reference (when one exists).
    pub beats_family: Option<bool>,
    /// Counted calls to the counting routine; never exceeds the budget.
    pub evaluations: usize,
    /// Times the climb re-seeded after stalling.
    pub restarts: usize,
}

/// Layer sizes `3, 3, .., r` joined consecutively — the climb's structured
/// starting point. Falls back to a path when only one layer fits.
fn layered_seed(n: usize) -> Result<Graph> {
    let mut sizes = vec![3usize; n / 3];
    if !n.is_multiple_of(3) {
        sizes.push(n % 3);
    }
    if sizes.len() < 2 {
        return gen_path(n);
    }
    let mut g = Graph::new(n);
    let mut start = 0usize;
    let mut prev: Option<(usize, usize)> = None;
    for sz in sizes {
        if let Some((ps, pe)) = prev {
            for a in ps..pe {
                for b in start..start + sz {
                    g.add_edge(a, b)?;
                }
            }
        }
        prev = Some((start, start + sz));
        start += sz;
    }
    Ok(g)
}

/// A uniform random attachment tree: vertex `v` joins an earlier vertex.
fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let mut g = Graph::new(n);
    for v in 1..n {
        g.add_edge(rng.random_range(0..v), v)?;
    }
    Ok(g)
}

/// Flips one edge, refusing deletions that disconnect.
fn toggled(g: &Graph, u: usize, v: usize) -> Option<Graph> {
    let mut h = g.clone();
    if h.has_edge(u, v) {
        h.remove_edge(u, v);
        h.is_connected().then_some(h)
    } else {
        h.add_edge(u, v).ok()?;
        Some(h)
    }
}

/// First-improvement hill climb over single-edge toggles, restarted from
/// alternating structured and random seeds until the evaluation budget is
/// spent. Deterministic for a fixed `(n, seed, budget)`.
///
/// Edge additions are always legal moves; deletions only when the graph
/// stays connected. Each candidate costs one evaluation against `budget`.
pub fn local_search_max(n: usize, seed: u64, budget: usize) -> Result<SearchReport> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if budget == 0 {
        return Err(Error::Domain(
            "the evaluation budget must be at least 1".into(),
        ));
    }
    let family_value = if n / 3 >= 2 {
        Some(formula_sjoin(3, (n / 3) as u64)?)
    } else {
        None
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evaluations = 0usize;
    let mut restarts = 0usize;
    let mut best: Option<(BigUint, Graph)> = None;
    let all_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    'outer: loop {
        let mut cur = if restarts.is_multiple_of(2) {
            layered_seed(n)?
        } else {
            random_tree(n, &mut rng)?
        };
        let mut cur_val = gpn(&cur)?;
        evaluations += 1;
        if best.as_ref().is_none_or(|(b, _)| cur_val > *b) {
            best = Some((cur_val.clone(), cur.clone()));
        }
        if evaluations >= budget {
            break;
        }
        loop {
            let mut moves = all_pairs.clone();
            moves.shuffle(&mut rng);
            let mut improved = false;
            for (u, v) in moves {
                let Some(cand) = toggled(&cur, u, v) else {
                    continue;
                };
                let val = gpn(&cand)?;
                evaluations += 1;
                if val > cur_val {
                    cur = cand;
                    cur_val = val;
                    if best.as_ref().is_none_or(|(b, _)| cur_val > *b) {
                        best = Some((cur_val.clone(), cur.clone()));
                    }
                    improved = true;
                }
                if evaluations >= budget {
                    break 'outer;
                }
                if improved {
                    break;
                }
            }
            if !improved {
                break;
            }
        }
        restarts += 1;
    }
    let (best_value, best_graph) = best.expect("at least one seed was evaluated");
    let beats_family = family_value.as_ref().map(|f| best_value > *f);
    Ok(SearchReport {
        n,
        seed,
        budget,
        best_graph6: render_graph6(&best_graph)?,
        best_value,
        family_value,
        beats_family,
        evaluations,
        restarts,
    })
}

/// One bipartite graph compared by [`bipartite_experiment`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteRow {
    pub a: usize,
    pub b: usize,
    pub family: String,
    pub gpn: BigUint,
    /// Whether this row attains the maximum of its report.
    pub is_max: bool,
}

/// Outcome of [`bipartite_experiment`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteReport {
    pub n: usize,
    pub rows: Vec<BipartiteRow>,
}

/// Compares every complete bipartite split of `n` vertices, plus the
/// crown graph when `n` is even and at least 6, by geodesic subpath
/// number. The balanced split always wins; the crown never does (removing
/// the matching costs more geodesics than the extra distance-2 pairs
/// recover).
pub fn bipartite_experiment(n: usize) -> Result<BipartiteReport> {
    const LIMIT: usize = 14;
    if n > LIMIT {
        return Err(Error::SizeLimit {
            op: "bipartite_experiment",
            given: n,
            limit: LIMIT,
        });
    }
    if n < 2 {
        return Err(Error::Domain(format!(
            "needs n >= 2 to split into two sides, got {n}"
        )));
    }
    let mut rows = Vec::new();
    for a in 1..=n / 2 {
        let g = gen_complete_bipartite(a, n - a)?;
        rows.push(BipartiteRow {
            a,
            b: n - a,
            family: "complete-bipartite".into(),
            gpn: gpn(&g)?,
            is_max: false,
        });
    }
    if n.is_multiple_of(2) && n / 2 >= 3 {
        let g = gen_crown(n / 2)?;
        rows.push(BipartiteRow {
            a: n / 2,
            b: n / 2,
            family: "crown".into(),
            gpn: gpn(&g)?,
            is_max: false,
        });
    }
    let max = rows
        .iter()
        .map(|r| r.gpn.clone())
        .max()
        .expect("n >= 2 yields a row");
    for row in &mut rows {
        row.is_max = row.gpn == max;
    }
    Ok(BipartiteReport { n, rows })
}
