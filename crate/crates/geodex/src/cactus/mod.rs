//! Cactus graphs: decomposition, structural predicates, and the
//! transforms that drive a cactus toward the maximum geodesic subpath
//! number at its order and cycle count.
//!
//! A cactus is a connected graph in which no two cycles share an edge.
//! The gpn-maximal cacti with `n` vertices and `k` cycles have a rigid
//! shape: a chain of 4-cycles sharing opposite corners, with the leftover
//! vertices attached at the two free end corners — as two nearly equal
//! pendant trees when vertices are plentiful (`n >= 3k + 1`), and as two
//! nearly equal chains of triangles otherwise. The predicates in this
//! module test that shape in layers, and [`transform`] rewires graphs
//! that fail a layer without ever decreasing the count.

mod transform;

pub use transform::{
    balance_step, gen_balanced_square_chain, improve_to_extremal, transform_antipodal,
    transform_bisquare, transform_girth, transform_maximal, transform_odd, transform_unipath,
    ImproveOutcome, TransformRule, TransformStep, UnipathCase,
};

use crate::error::{Error, Result};
use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// The cycle/bridge structure of a cactus, plus everything the shape
/// predicates look at.
#[derive(Debug, Clone)]
pub struct CactusDecomposition {
    /// Every cycle as a closed ring: rotated so the smallest vertex comes
    /// first, oriented toward its smaller ring neighbor, and the list of
    /// cycles sorted. In a cactus the cycles are exactly the fundamental
    /// cycles of any spanning tree, pairwise edge-disjoint.
    pub cycles: Vec<Vec<usize>>,
    /// Edges on no cycle, as `(u, v)` with `u < v`, sorted.
    pub bridges: Vec<(usize, usize)>,
    /// Edges of the 4-cycles, `(u, v)` with `u < v`, sorted.
    pub square_edges: Vec<(usize, usize)>,
    /// Per vertex, the number of 4-cycles through it.
    pub square_count: Vec<usize>,
    /// Connected components of the graph minus [`Self::square_edges`],
    /// singletons included, ordered by decreasing size then smallest
    /// member.
    pub components: Vec<Vec<usize>>,
}

impl CactusDecomposition {
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Indices into [`Self::cycles`] of the 4-cycles.
    pub fn square_indices(&self) -> Vec<usize> {
        (0..self.cycles.len())
            .filter(|&i| self.cycles[i].len() == 4)
            .collect()
    }

    /// Indices into [`Self::cycles`] of the 3-cycles.
    pub fn triangle_indices(&self) -> Vec<usize> {
        (0..self.cycles.len())
            .filter(|&i| self.cycles[i].len() == 3)
            .collect()
    }

    /// Vertices on at least one 4-cycle, ascending.
    pub fn squared_vertices(&self) -> Vec<usize> {
        (0..self.square_count.len())
            .filter(|&v| self.square_count[v] >= 1)
            .collect()
    }

    /// Vertices on at least two 4-cycles, ascending.
    pub fn multisquared_vertices(&self) -> Vec<usize> {
        (0..self.square_count.len())
            .filter(|&v| self.square_count[v] >= 2)
            .collect()
    }

    /// The component of the square-edge-deleted graph containing `v`.
    pub fn component_of(&self, v: usize) -> &[usize] {
        self.components
            .iter()
            .find(|c| c.binary_search(&v).is_ok())
            .expect("every vertex lies in a component")
    }
}

/// Rotates and orients a ring so the smallest vertex comes first,
/// followed by the smaller of its two neighbors.
fn normalize_ring(ring: &[usize]) -> Vec<usize> {
    let len = ring.len();
    let start = (0..len).min_by_key(|&i| ring[i]).expect("nonempty ring");
    let forward = ring[(start + 1) % len] < ring[(start + len - 1) % len];
    (0..len)
        .map(|j| {
            if forward {
                ring[(start + j) % len]
            } else {
                ring[(start + len - j) % len]
            }
        })
        .collect()
}

pub(crate) fn norm_edge(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Decomposes a connected cactus into cycles and bridges.
///
/// Errors with [`Error::NotCactus`] — carrying two cycles that share an
/// edge — when the graph is connected but not a cactus, since a connected
/// graph is a cactus exactly when its fundamental cycles are pairwise
/// edge-disjoint.
pub fn decompose(g: &Graph) -> Result<CactusDecomposition> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    // Iterative DFS recording parents and discovery order.
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![usize::MAX; n];
    let mut next_child = vec![0usize; n];
    let mut stack = vec![0usize];
    order[0] = 0;
    let mut counter = 1usize;
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut edge_cycle: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    while let Some(&u) = stack.last() {
        if next_child[u] == g.neighbors(u).len() {
            stack.pop();
            continue;
        }
        let v = g.neighbors(u)[next_child[u]];
        next_child[u] += 1;
        if v == parent[u] {
            continue;
        }
        if order[v] == usize::MAX {
            parent[v] = u;
            order[v] = counter;
            counter += 1;
            stack.push(v);
        } else if order[v] < order[u] {
            // Back edge: the fundamental cycle climbs from u to v.
            let mut ring = vec![u];
            let mut w = u;
            while w != v {
                w = parent[w];
                ring.push(w);
            }
            let ring = normalize_ring(&ring);
            let idx = cycles.len();
            for i in 0..ring.len() {
                let e = norm_edge(ring[i], ring[(i + 1) % ring.len()]);
                if let Some(&other) = edge_cycle.get(&e) {
                    return Err(Error::NotCactus(cycles[other].clone(), ring.clone()));
                }
                edge_cycle.insert(e, idx);
            }
            cycles.push(ring);
        }
    }
    cycles.sort();
    let bridges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| !edge_cycle.contains_key(&norm_edge(u, v)))
        .collect();
    let mut square_edges = Vec::new();
    let mut square_count = vec![0usize; n];
    for ring in cycles.iter().filter(|r| r.len() == 4) {
        for i in 0..4 {
            square_edges.push(norm_edge(ring[i], ring[(i + 1) % 4]));
            square_count[ring[i]] += 1;
        }
    }
    square_edges.sort_unstable();
    let mut pruned = g.clone();
    for &(u, v) in &square_edges {
        pruned.remove_edge(u, v);
    }
    Ok(CactusDecomposition {
        cycles,
        bridges,
        square_edges,
        square_count,
        components: pruned.components(),
    })
}

/// Whether the connected graph `g` is a cactus.
pub fn is_cactus(g: &Graph) -> Result<bool> {
    match decompose(g) {
        Ok(_) => Ok(true),
        Err(Error::NotCactus(_, _)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// How far a cactus climbs the layered shape conditions. Each layer
/// presupposes the ones before it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum ChainStage {
    /// Some cycle is longer than 4.
    NotGirthRestricted,
    /// Some 4-cycle has attachments at adjacent corners.
    NotAntipodal,
    /// Some component off the squares touches two squares, or hangs at a
    /// corner shared by two squares.
    NotUnipathResolved,
    /// Some vertex lies on three or more squares.
    NotSquaredChain,
    /// Fewer squares than the parameters allow.
    NotMaximal,
    /// End attachments differ too much in size.
    NotBalanced,
    Balanced,
}

/// The number of 4-cycles in a gpn-maximal cactus with `n` vertices and
/// `k` cycles: `k` when `n >= 3k + 1`, else `n - 2k - 1`.
pub fn max_square_count(n: usize, k: usize) -> Result<usize> {
    if n < 2 * k + 1 {
        return Err(Error::Domain(format!(
            "no cactus has {k} cycles on only {n} vertices"
        )));
    }
    Ok(if n > 3 * k { k } else { n - 2 * k - 1 })
}

/// Whether a 4-cycle's attachment corners (degree >= 3) number at most
/// two and, if exactly two, sit at opposite ring positions.
pub(crate) fn square_antipodal_ok(g: &Graph, ring: &[usize]) -> bool {
    let actives: Vec<usize> = (0..4).filter(|&i| g.degree(ring[i]) >= 3).collect();
    actives.len() < 2 || (actives.len() == 2 && actives[1] - actives[0] == 2)
}

/// Whether a component of the square-edge-deleted graph touches at most
/// one square corner, and that corner lies on exactly one square.
pub(crate) fn component_good(d: &CactusDecomposition, comp: &[usize]) -> bool {
    let squared: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|&v| d.square_count[v] >= 1)
        .collect();
    squared.len() < 2 && squared.iter().all(|&v| d.square_count[v] == 1)
}

pub(crate) fn chain_stage(g: &Graph, d: &CactusDecomposition) -> ChainStage {
    if d.cycles.iter().any(|c| c.len() > 4) {
        return ChainStage::NotGirthRestricted;
    }
    if d.cycles
        .iter()
        .filter(|r| r.len() == 4)
        .any(|r| !square_antipodal_ok(g, r))
    {
        return ChainStage::NotAntipodal;
    }
    if d.components
        .iter()
        .filter(|c| c.len() >= 2)
        .any(|c| !component_good(d, c))
    {
        return ChainStage::NotUnipathResolved;
    }
    if d.square_count.iter().any(|&c| c >= 3) {
        return ChainStage::NotSquaredChain;
    }
    let n = g.n();
    let k = d.cycle_count();
    let target = max_square_count(n, k).expect("a cactus satisfies n >= 2k + 1");
    if d.square_indices().len() != target {
        return ChainStage::NotMaximal;
    }
    if target == 0 {
        // Trees and all-triangle cacti: nothing to balance.
        return ChainStage::Balanced;
    }
    let k1 = d.components.first().map_or(0, Vec::len);
    let k2 = d.components.get(1).map_or(0, Vec::len);
    let threshold = if n > 3 * k { 1 } else { 2 };
    if k1 - k2 > threshold {
        return ChainStage::NotBalanced;
    }
    ChainStage::Balanced
}

fn stage_at_least(g: &Graph, stage: ChainStage) -> Result<bool> {
    let d = decompose(g)?;
    Ok(chain_stage(g, &d) >= stage)
}

/// Whether every cycle of the cactus has length 3 or 4.
pub fn is_girth_restricted(g: &Graph) -> Result<bool> {
    stage_at_least(g, ChainStage::NotAntipodal)
}

/// Whether, on top of [`is_girth_restricted`], every 4-cycle with two or
/// more attachment corners has exactly two, at opposite corners.
pub fn is_antipodal(g: &Graph) -> Result<bool> {
    stage_at_least(g, ChainStage::NotUnipathResolved)
}

/// Whether, on top of [`is_antipodal`], every non-trivial component left
/// by deleting all 4-cycle edges contains at most one 4-cycle corner, and
/// that corner lies on exactly one 4-cycle.
pub fn is_unipath_resolved(g: &Graph) -> Result<bool> {
    stage_at_least(g, ChainStage::NotSquaredChain)
}

/// Whether, on top of [`is_unipath_resolved`], no vertex lies on three or
/// more 4-cycles — the squares then form disjoint chains.
pub fn is_squared_chain(g: &Graph) -> Result<bool> {
    stage_at_least(g, ChainStage::NotMaximal)
}

/// Whether, on top of [`is_squared_chain`], the number of squares equals
/// [`max_square_count`] for the graph's parameters.
pub fn is_maximal_square_chain(g: &Graph) -> Result<bool> {
    stage_at_least(g, ChainStage::NotBalanced)
}

/// Whether, on top of [`is_maximal_square_chain`], the two largest
/// components left by deleting square edges differ in size by at most 1
/// when `n >= 3k + 1`, at most 2 otherwise. This is the full shape of a
/// gpn-maximal cactus.
pub fn is_balanced_square_chain(g: &Graph) -> Result<bool> {
    stage_at_least(g, ChainStage::Balanced)
}

/// A deterministic pseudorandom connected cactus with exactly `n`
/// vertices and `k` cycles, for stress-testing. Cycle lengths vary
/// between 3 and roughly 7, and cycles and pendant vertices are attached
/// at random existing vertices in shuffled order.
pub fn random_cactus(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if n < 2 * k + 1 {
        return Err(Error::Domain(format!(
            "no cactus has {k} cycles on only {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lengths = vec![3usize; k];
    let mut pendants = n - 1 - 2 * k;
    let slack = pendants;
    for _ in 0..slack {
        if k > 0 && rng.random_bool(0.4) {
            let i = rng.random_range(0..k);
            if lengths[i] < 7 {
                lengths[i] += 1;
                pendants -= 1;
            }
        }
    }
    enum Op {
        Cycle(usize),
        Pendant,
    }
    let mut ops: Vec<Op> = lengths
        .into_iter()
        .map(Op::Cycle)
        .chain((0..pendants).map(|_| Op::Pendant))
        .collect();
    // Fisher-Yates shuffle so cycles and pendants interleave.
    for i in (1..ops.len()).rev() {
        ops.swap(i, rng.random_range(0..=i));
    }
    let mut g = Graph::new(n);
    let mut used = 1usize;
    for op in ops {
        let anchor = rng.random_range(0..used);
        match op {
            Op::Pendant => {
                g.add_edge(anchor, used)?;
                used += 1;
            }
            Op::Cycle(c) => {
                let mut ring = vec![anchor];
                ring.extend(used..used + c - 1);
                used += c - 1;
                for i in 0..c {
                    g.add_edge(ring[i], ring[(i + 1) % c])?;
                }
            }
        }
    }
    debug_assert_eq!(used, n);
    Ok(g)
}
