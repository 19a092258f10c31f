//! Local rewirings that never decrease the geodesic subpath number of a
//! cactus, and the driver that applies them to a fixed point.
//!
//! Each transform targets one failing layer of the shape-predicate chain
//! and strictly increases the count, with a single exception: merging the
//! square anchors of one attachment component keeps the count unchanged.
//! The driver [`improve_to_extremal`] always fixes the lowest failing
//! layer first, so every step's precondition is established by the
//! layers below it, and terminates because each rule either strictly
//! increases the count or strictly decreases a bounded structural
//! potential.
//!
//! Tie-breaking is deterministic throughout: cycles, components, and
//! vertices are considered in the sorted orders the decomposition
//! provides, so equal inputs always produce identical outputs.

use super::{
    chain_stage, component_good, decompose, max_square_count, norm_edge, square_antipodal_ok,
    CactusDecomposition, ChainStage,
};
use crate::error::{Error, Result};
use crate::geodesic::{bfs_count, gpn, GeodesicTable};
use crate::graph::Graph;
use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::BTreeSet;

/// Which rewiring rule a step of [`improve_to_extremal`] applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformRule {
    /// Odd cycle of length >= 5 shortened to an even cycle plus a pendant.
    Odd,
    /// Even cycle of length >= 6 split into a shorter cycle plus pendants.
    Girth,
    /// Attachments of a square moved to opposite corners.
    Antipodal,
    /// An attachment component's square anchors merged, or the attachment
    /// moved to the far end of a square chain.
    Unipath,
    /// A third square at one vertex re-anchored at a chain end.
    Bisquare,
    /// A triangle and a spare vertex combined into an extra square.
    Maximal,
    /// A pendant vertex or triangle moved to the lighter chain end.
    Balance,
}

impl TransformRule {
    pub fn name(self) -> &'static str {
        match self {
            TransformRule::Odd => "odd",
            TransformRule::Girth => "girth",
            TransformRule::Antipodal => "antipodal",
            TransformRule::Unipath => "unipath",
            TransformRule::Bisquare => "bisquare",
            TransformRule::Maximal => "maximal",
            TransformRule::Balance => "balance",
        }
    }
}

/// Which of the two attachment-component situations [`transform_unipath`]
/// handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnipathCase {
    /// Several square anchors in one component merged into one; the count
    /// is unchanged.
    MergeAnchors,
    /// An attachment at a corner of several squares moved to the far end
    /// of the lighter chain; the count strictly increases.
    RelocateAttachment,
}

/// One applied rewiring, with the exact edge changes and counts.
#[derive(Debug, Clone)]
pub struct TransformStep {
    pub rule: TransformRule,
    pub removed: Vec<(usize, usize)>,
    pub added: Vec<(usize, usize)>,
    pub gpn_before: BigUint,
    pub gpn_after: BigUint,
}

/// Result of driving a cactus to the extremal shape.
#[derive(Debug, Clone)]
pub struct ImproveOutcome {
    pub graph: Graph,
    pub steps: Vec<TransformStep>,
    /// Set when the parameters admit no improvement at all.
    pub note: Option<String>,
}

fn find_ring<'a>(d: &'a CactusDecomposition, cycle: &[usize]) -> Result<&'a Vec<usize>> {
    let want: BTreeSet<usize> = cycle.iter().copied().collect();
    d.cycles
        .iter()
        .find(|r| {
            r.len() == want.len() && want.len() == cycle.len() && r.iter().all(|v| want.contains(v))
        })
        .ok_or_else(|| Error::Precondition(format!("no cycle on vertices {cycle:?}")))
}

/// Applies removals then additions, insisting every removal existed and
/// no addition collides; the rules above guarantee both on a cactus.
fn rewire(g: &Graph, remove: &[(usize, usize)], add: &[(usize, usize)]) -> Result<Graph> {
    let mut h = g.clone();
    for &(u, v) in remove {
        if !h.remove_edge(u, v) {
            return Err(Error::Consistency(format!(
                "rewiring expected the edge ({u}, {v}) to exist"
            )));
        }
    }
    for &(u, v) in add {
        if h.has_edge(u, v) {
            return Err(Error::Consistency(format!(
                "rewiring would duplicate the edge ({u}, {v})"
            )));
        }
        h.add_edge(u, v)?;
    }
    Ok(h)
}

/// Shortens an odd cycle `v_1 .. v_g` (length >= 5) by removing
/// `(v_1, v_g)` and adding `(v_2, v_g)`: an even cycle of length `g - 1`
/// with `v_1` left as a pendant. Strictly increases the count.
pub fn transform_odd(g: &Graph, cycle: &[usize]) -> Result<Graph> {
    let d = decompose(g)?;
    let ring = find_ring(&d, cycle)?.clone();
    let glen = ring.len();
    if glen < 5 || glen % 2 == 0 {
        return Err(Error::Precondition(format!(
            "needs an odd cycle of length >= 5, got length {glen}"
        )));
    }
    rewire(
        g,
        &[(ring[0], ring[glen - 1])],
        &[(ring[1], ring[glen - 1])],
    )
}

/// Splits an even cycle `v_1 .. v_g` (length >= 6) by removing
/// `(v_1, v_g)` and `(v_{g/2}, v_{g/2+1})` and adding `(v_2, v_g)` and
/// `(v_{g/2}, v_{g/2+2})`: a cycle of length `g - 2` with two pendants at
/// opposite corners. Strictly increases the count.
pub fn transform_girth(g: &Graph, cycle: &[usize]) -> Result<Graph> {
    let d = decompose(g)?;
    let ring = find_ring(&d, cycle)?.clone();
    let glen = ring.len();
    if glen < 6 || glen % 2 == 1 {
        return Err(Error::Precondition(format!(
            "needs an even cycle of length >= 6, got length {glen}"
        )));
    }
    let h = glen / 2;
    rewire(
        g,
        &[(ring[0], ring[glen - 1]), (ring[h - 1], ring[h])],
        &[(ring[1], ring[glen - 1]), (ring[h - 1], ring[h + 1])],
    )
}

/// Moves the attachments of a square with attachments at adjacent corners
/// so that all attachments sit at two opposite corners. Strictly
/// increases the count.
pub fn transform_antipodal(g: &Graph, square: &[usize]) -> Result<Graph> {
    let d = decompose(g)?;
    let ring = find_ring(&d, square)?.clone();
    if ring.len() != 4 {
        return Err(Error::Precondition(format!(
            "needs a 4-cycle, got length {}",
            ring.len()
        )));
    }
    let active: Vec<bool> = ring.iter().map(|&v| g.degree(v) >= 3).collect();
    let i = (0..4)
        .find(|&i| active[i] && active[(i + 1) % 4])
        .ok_or_else(|| {
            Error::Precondition("the square's attachments are already at opposite corners".into())
        })?;
    let v2 = ring[i];
    let v3 = ring[(i + 1) % 4];
    let v4 = ring[(i + 2) % 4];
    let v1 = ring[(i + 3) % 4];
    let mut removed = Vec::new();
    let mut added = Vec::new();
    for &x in g.neighbors(v2).iter().filter(|&&x| x != v1 && x != v3) {
        removed.push((v2, x));
        added.push((v1, x));
    }
    for &x in g.neighbors(v4).iter().filter(|&&x| x != v1 && x != v3) {
        removed.push((v4, x));
        added.push((v3, x));
    }
    rewire(g, &removed, &added)
}

/// BFS table from `u` plus the vertex set of the component of `g - u`
/// containing `probe`.
fn branch(g: &Graph, u: usize, probe: usize) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    seen[u] = true;
    seen[probe] = true;
    let mut queue = std::collections::VecDeque::from([probe]);
    let mut out = vec![probe];
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out.sort_unstable();
    out
}

fn branch_weight(table: &GeodesicTable, members: &[usize]) -> BigUint {
    members
        .iter()
        .map(|&x| table.sigma[x].clone())
        .fold(BigUint::zero(), |a, b| a + b)
}

/// Orders two squares at `u` so the first has the lighter branch (sum of
/// shortest-path counts from `u` over the branch of `g - u` holding it);
/// ties keep the given sorted order. Returns the far end of the first
/// branch: its square corner farthest from `u`, smallest id on ties.
fn lighter_branch_far_end(
    g: &Graph,
    d: &CactusDecomposition,
    u: usize,
    ca: &[usize],
    cb: &[usize],
) -> Result<usize> {
    let table = bfs_count(g, u)?;
    let probe = |ring: &[usize]| {
        *ring
            .iter()
            .find(|&&x| x != u)
            .expect("square has 4 corners")
    };
    let branch_a = branch(g, u, probe(ca));
    let branch_b = branch(g, u, probe(cb));
    let first = if branch_weight(&table, &branch_a) <= branch_weight(&table, &branch_b) {
        branch_a
    } else {
        branch_b
    };
    first
        .iter()
        .copied()
        .filter(|&x| d.square_count[x] >= 1)
        .max_by(|&a, &b| {
            (table.dist[a], std::cmp::Reverse(a)).cmp(&(table.dist[b], std::cmp::Reverse(b)))
        })
        .ok_or_else(|| Error::Consistency("a square branch lost its corners".into()))
}

/// Repairs one non-trivial component of the square-edge-deleted graph
/// that violates the attachment condition.
///
/// With two or more square corners in the component, all their square
/// edges are re-anchored at the smallest corner; the count stays equal
/// ([`UnipathCase::MergeAnchors`]). With a single corner lying on two or
/// more squares, the component's attachment edges move to the far end of
/// the lighter square chain, strictly increasing the count
/// ([`UnipathCase::RelocateAttachment`]).
pub fn transform_unipath(g: &Graph, structure: &[usize]) -> Result<(Graph, UnipathCase)> {
    let d = decompose(g)?;
    let want: BTreeSet<usize> = structure.iter().copied().collect();
    let comp = d
        .components
        .iter()
        .find(|c| c.len() == want.len() && c.iter().all(|v| want.contains(v)))
        .ok_or_else(|| {
            Error::Precondition(format!(
                "no component off the squares has vertices {structure:?}"
            ))
        })?
        .clone();
    if comp.len() < 2 {
        return Err(Error::Precondition(
            "the component is a single vertex; nothing to repair".into(),
        ));
    }
    let squared: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|&v| d.square_count[v] >= 1)
        .collect();
    if squared.len() >= 2 {
        let s1 = squared[0];
        let mut removed = Vec::new();
        let mut added = Vec::new();
        for &si in &squared[1..] {
            for &w in g.neighbors(si) {
                if d.square_edges.binary_search(&norm_edge(si, w)).is_ok() {
                    removed.push((si, w));
                    added.push((s1, w));
                }
            }
        }
        Ok((rewire(g, &removed, &added)?, UnipathCase::MergeAnchors))
    } else if squared.len() == 1 && d.square_count[squared[0]] >= 2 {
        let u = squared[0];
        let squares_at_u: Vec<&Vec<usize>> = d
            .cycles
            .iter()
            .filter(|r| r.len() == 4 && r.contains(&u))
            .collect();
        let z = lighter_branch_far_end(g, &d, u, squares_at_u[0], squares_at_u[1])?;
        let mut removed = Vec::new();
        let mut added = Vec::new();
        for &w in g.neighbors(u) {
            if comp.binary_search(&w).is_ok() {
                removed.push((u, w));
                added.push((z, w));
            }
        }
        Ok((
            rewire(g, &removed, &added)?,
            UnipathCase::RelocateAttachment,
        ))
    } else {
        Err(Error::Precondition(
            "the component already satisfies the attachment condition".into(),
        ))
    }
}

/// Re-anchors the third square at a vertex lying on three or more squares
/// to the far end of the lighter of its first two square branches.
/// Strictly increases the count. Requires the attachment components to be
/// resolved first.
pub fn transform_bisquare(g: &Graph, vertex: usize) -> Result<Graph> {
    if vertex >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex,
            order: g.n(),
        });
    }
    let d = decompose(g)?;
    if chain_stage(g, &d) < ChainStage::NotSquaredChain {
        return Err(Error::Precondition(
            "attachment components must be resolved before re-anchoring squares".into(),
        ));
    }
    if d.square_count[vertex] < 3 {
        return Err(Error::Precondition(format!(
            "vertex {vertex} lies on {} squares; three or more are needed",
            d.square_count[vertex]
        )));
    }
    let squares_at: Vec<&Vec<usize>> = d
        .cycles
        .iter()
        .filter(|r| r.len() == 4 && r.contains(&vertex))
        .collect();
    let z = lighter_branch_far_end(g, &d, vertex, squares_at[0], squares_at[1])?;
    let third = squares_at[2];
    let pos = third
        .iter()
        .position(|&x| x == vertex)
        .expect("third square contains the vertex");
    let s_left = third[(pos + 3) % 4];
    let s_right = third[(pos + 1) % 4];
    let mut ends = [s_left, s_right];
    ends.sort_unstable();
    rewire(
        g,
        &[(vertex, ends[0]), (vertex, ends[1])],
        &[(z, ends[0]), (z, ends[1])],
    )
}

fn triangles_of(d: &CactusDecomposition) -> Vec<&Vec<usize>> {
    d.cycles.iter().filter(|r| r.len() == 3).collect()
}

/// Case 1 of [`transform_maximal`]: the first bridge (in sorted order,
/// endpoints in order) with an endpoint on a triangle pulls the far
/// bridge end into that triangle, forming a square.
fn maximal_case1(g: &Graph, d: &CactusDecomposition) -> Result<Option<Graph>> {
    let triangles = triangles_of(d);
    for &(a, b) in &d.bridges {
        for (u, z) in [(a, b), (b, a)] {
            if let Some(tri) = triangles.iter().find(|t| t.contains(&u)) {
                let others: Vec<usize> = tri.iter().copied().filter(|&x| x != u).collect();
                let (_, w) = (others[0], others[1]);
                return Ok(Some(rewire(g, &[(u, w)], &[(w, z)])?));
            }
        }
    }
    Ok(None)
}

/// Turns one triangle plus one spare vertex into an additional square on
/// a squared chain that has fewer squares than [`max_square_count`]
/// allows. Strictly increases the count and raises the square count by
/// exactly one.
pub fn transform_maximal(g: &Graph) -> Result<Graph> {
    let d = decompose(g)?;
    if chain_stage(g, &d) < ChainStage::NotMaximal {
        return Err(Error::Precondition(
            "the graph must be a squared chain before squares are added".into(),
        ));
    }
    let n = g.n();
    let k = d.cycle_count();
    let target = max_square_count(n, k)?;
    let s = d.square_indices().len();
    if s == target {
        return Err(Error::Precondition(
            "the square count is already maximal".into(),
        ));
    }
    if s > target {
        return Err(Error::Precondition(
            "the squares share corners in a closed ring; this shape never maximizes the count"
                .into(),
        ));
    }
    if let Some(h) = maximal_case1(g, &d)? {
        return Ok(h);
    }
    // No bridge touches a triangle. The triangles then all sit in one
    // bridge-free component K2 off the squares, and the bridges in the
    // other non-trivial component K1.
    let nontrivial: Vec<&Vec<usize>> = d.components.iter().filter(|c| c.len() >= 2).collect();
    if nontrivial.len() != 2 {
        return Err(Error::Consistency(
            "expected exactly two attachment components when no bridge touches a triangle".into(),
        ));
    }
    let triangles = triangles_of(&d);
    let first_corner = triangles.first().ok_or_else(|| {
        Error::Consistency("a non-maximal squared chain must have a triangle".into())
    })?[0];
    let k1 = if nontrivial[0].binary_search(&first_corner).is_ok() {
        nontrivial[1]
    } else {
        nontrivial[0]
    };
    if triangles.len() == 1 {
        // Lone triangle {anchor, u, v}: recruit the smallest leaf of K1.
        let tri = triangles[0];
        let others: Vec<usize> = tri
            .iter()
            .copied()
            .filter(|&x| d.square_count[x] == 0)
            .collect();
        if others.len() != 2 {
            return Err(Error::Consistency(
                "the lone triangle must have exactly two passive corners".into(),
            ));
        }
        let (u, v) = (others[0], others[1]);
        let w = *k1
            .iter()
            .find(|&&x| g.degree(x) == 1)
            .ok_or_else(|| Error::Consistency("the tree component has no leaf".into()))?;
        let z = g.neighbors(w)[0];
        return rewire(g, &[(u, v), (w, z)], &[(u, w), (v, w)]);
    }
    let intermediate = if k1.len() >= 3 {
        // Fold two tree edges of K1 into a triangle and remove one
        // triangle edge from K2; the freed edges become bridges that
        // touch triangles, so case 1 then applies.
        let in_k1 = |x: usize| k1.binary_search(&x).is_ok();
        let center = *k1
            .iter()
            .find(|&&v| g.neighbors(v).iter().filter(|&&x| in_k1(x)).count() >= 2)
            .ok_or_else(|| {
                Error::Consistency("no branching vertex in the tree component".into())
            })?;
        let nbrs: Vec<usize> = g
            .neighbors(center)
            .iter()
            .copied()
            .filter(|&x| in_k1(x))
            .take(2)
            .collect();
        let e = triangles
            .iter()
            .flat_map(|t| (0..3).map(|i| norm_edge(t[i], t[(i + 1) % 3])))
            .min()
            .expect("triangles exist");
        rewire(g, &[e], &[(nbrs[0], nbrs[1])])?
    } else {
        // K1 is a single bridge: move the first one-attachment triangle
        // of the blob to K1's square corner, then case 1 applies there.
        let tri = triangles
            .iter()
            .find(|t| t.iter().filter(|&&x| g.degree(x) >= 3).count() == 1)
            .ok_or_else(|| {
                Error::Consistency("no triangle with a single attachment corner in the blob".into())
            })?;
        let u = *tri
            .iter()
            .find(|&&x| g.degree(x) >= 3)
            .expect("just checked");
        let others: Vec<usize> = tri.iter().copied().filter(|&x| x != u).collect();
        let v1 = *k1
            .iter()
            .find(|&&x| d.square_count[x] >= 1)
            .ok_or_else(|| Error::Consistency("the bridge component misses its anchor".into()))?;
        rewire(
            g,
            &[(u, others[0]), (u, others[1])],
            &[(v1, others[0]), (v1, others[1])],
        )?
    };
    let d2 = decompose(&intermediate)?;
    maximal_case1(&intermediate, &d2)?.ok_or_else(|| {
        Error::Consistency("the rearranged triangle did not expose a usable bridge".into())
    })
}

/// The two free end corners of the square chain: for a single square the
/// attachment corner and its opposite, for longer chains the corner
/// opposite the shared corner in each end square.
fn chain_ends(g: &Graph, d: &CactusDecomposition) -> Result<(usize, usize)> {
    let squares: Vec<&Vec<usize>> = d.cycles.iter().filter(|r| r.len() == 4).collect();
    if squares.len() == 1 {
        let ring = squares[0];
        let actives: Vec<usize> = (0..4).filter(|&i| g.degree(ring[i]) >= 3).collect();
        let i = actives.first().copied().unwrap_or(0);
        return Ok((ring[i], ring[(i + 2) % 4]));
    }
    let mut ends = Vec::new();
    for ring in squares {
        let shared: Vec<usize> = (0..4).filter(|&i| d.square_count[ring[i]] >= 2).collect();
        if shared.len() == 1 {
            ends.push(ring[(shared[0] + 2) % 4]);
        }
    }
    if ends.len() != 2 {
        return Err(Error::Consistency(
            "the squares do not form a single open chain".into(),
        ));
    }
    ends.sort_unstable();
    Ok((ends[0], ends[1]))
}

/// Moves one pendant vertex (plentiful regime) or one triangle (scarce
/// regime) from the heavier chain end to the lighter one. Strictly
/// increases the count. Requires a maximal square chain that is not yet
/// balanced.
pub fn balance_step(g: &Graph) -> Result<Graph> {
    let d = decompose(g)?;
    let stage = chain_stage(g, &d);
    if stage < ChainStage::NotBalanced {
        return Err(Error::Precondition(
            "the graph must be a maximal square chain before balancing".into(),
        ));
    }
    if stage > ChainStage::NotBalanced {
        return Err(Error::Precondition("the chain is already balanced".into()));
    }
    let n = g.n();
    let k = d.cycle_count();
    let (e1, e2) = chain_ends(g, &d)?;
    let c1 = d.component_of(e1);
    let c2 = d.component_of(e2);
    let (big, small) = if c1.len() > c2.len() {
        (c1, c2)
    } else if c2.len() > c1.len() {
        (c2, c1)
    } else {
        return Err(Error::Consistency(
            "an unbalanced chain must have unequal end components".into(),
        ));
    };
    let z = small[0];
    if n > 3 * k {
        let w = *big
            .iter()
            .find(|&&x| g.degree(x) == 1)
            .ok_or_else(|| Error::Consistency("the heavier end component has no leaf".into()))?;
        let nb = g.neighbors(w)[0];
        rewire(g, &[(w, nb)], &[(w, z)])
    } else {
        let tri = d
            .cycles
            .iter()
            .filter(|r| r.len() == 3)
            .filter(|t| big.binary_search(&t[0]).is_ok())
            .find(|t| t.iter().filter(|&&x| g.degree(x) >= 3).count() == 1)
            .ok_or_else(|| {
                Error::Consistency("the heavier blob has no detachable triangle".into())
            })?;
        let u = *tri
            .iter()
            .find(|&&x| g.degree(x) >= 3)
            .expect("just checked");
        let others: Vec<usize> = tri.iter().copied().filter(|&x| x != u).collect();
        rewire(
            g,
            &[(u, others[0]), (u, others[1])],
            &[(z, others[0]), (z, others[1])],
        )
    }
}

/// Edges only in `before`, then edges only in `after`, both sorted.
#[allow(clippy::type_complexity)]
fn edge_diff(before: &Graph, after: &Graph) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let b: BTreeSet<(usize, usize)> = before.edges().into_iter().collect();
    let a: BTreeSet<(usize, usize)> = after.edges().into_iter().collect();
    (
        b.difference(&a).copied().collect(),
        a.difference(&b).copied().collect(),
    )
}

/// Drives a cactus to the gpn-maximal shape for its order and cycle
/// count: a maximal chain of squares with balanced attachments at its two
/// free ends.
///
/// Repeatedly fixes the lowest failing predicate layer, recording every
/// step. The count never decreases; it stays equal only when square
/// anchors are merged. Cacti with `n = 2k + 1` (all-triangle) and trees
/// are already extremal; they come back unchanged, the former with a
/// note.
pub fn improve_to_extremal(g: &Graph) -> Result<ImproveOutcome> {
    let d0 = decompose(g)?;
    let n = g.n();
    let k = d0.cycle_count();
    let note = (k >= 1 && n == 2 * k + 1).then(|| {
        format!(
            "every cactus with {n} vertices and {k} cycles is a triangle cactus; \
             all of them are geodetic and already attain the extremal count"
        )
    });
    let mut current = g.clone();
    let mut steps: Vec<TransformStep> = Vec::new();
    let cap = 100 + 20 * (n + k);
    for _ in 0..cap {
        let d = decompose(&current)?;
        let stage = chain_stage(&current, &d);
        if stage == ChainStage::Balanced {
            return Ok(ImproveOutcome {
                graph: current,
                steps,
                note,
            });
        }
        let before = gpn(&current)?;
        let (next, rule, allow_equal) = match stage {
            ChainStage::NotGirthRestricted => {
                let ring = d
                    .cycles
                    .iter()
                    .find(|r| r.len() >= 5)
                    .expect("stage reports a long cycle")
                    .clone();
                if ring.len() % 2 == 1 {
                    (transform_odd(&current, &ring)?, TransformRule::Odd, false)
                } else {
                    (
                        transform_girth(&current, &ring)?,
                        TransformRule::Girth,
                        false,
                    )
                }
            }
            ChainStage::NotAntipodal => {
                let ring = d
                    .cycles
                    .iter()
                    .filter(|r| r.len() == 4)
                    .find(|r| !square_antipodal_ok(&current, r))
                    .expect("stage reports a violating square")
                    .clone();
                (
                    transform_antipodal(&current, &ring)?,
                    TransformRule::Antipodal,
                    false,
                )
            }
            ChainStage::NotUnipathResolved => {
                let comp = d
                    .components
                    .iter()
                    .find(|c| c.len() >= 2 && !component_good(&d, c))
                    .expect("stage reports a violating component")
                    .clone();
                let (h, case) = transform_unipath(&current, &comp)?;
                (h, TransformRule::Unipath, case == UnipathCase::MergeAnchors)
            }
            ChainStage::NotSquaredChain => {
                let u = (0..n)
                    .find(|&v| d.square_count[v] >= 3)
                    .expect("stage reports an overloaded vertex");
                (
                    transform_bisquare(&current, u)?,
                    TransformRule::Bisquare,
                    false,
                )
            }
            ChainStage::NotMaximal => (transform_maximal(&current)?, TransformRule::Maximal, false),
            ChainStage::NotBalanced => (balance_step(&current)?, TransformRule::Balance, false),
            ChainStage::Balanced => unreachable!("handled above"),
        };
        let after = gpn(&next)?;
        if after < before || (after == before && !allow_equal) {
            return Err(Error::Consistency(format!(
                "the {} rewiring failed to increase the count ({before} -> {after})",
                rule.name()
            )));
        }
        let (removed, added) = edge_diff(&current, &next);
        steps.push(TransformStep {
            rule,
            removed,
            added,
            gpn_before: before,
            gpn_after: after,
        });
        current = next;
    }
    Err(Error::Consistency(
        "rewiring did not reach the extremal shape within the step budget".into(),
    ))
}

/// Builds the gpn-maximal cactus with `n` vertices and `k >= 1` cycles
/// directly: [`max_square_count`] squares in a chain sharing opposite
/// corners, with the leftover vertices split as evenly as possible over
/// the two free end corners — as pendant paths when `n >= 3k + 1`, as
/// chains of triangles otherwise. Requires `n > 2k + 1`; at `n = 2k + 1`
/// every cactus is already extremal and no square fits.
pub fn gen_balanced_square_chain(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n <= 2 * k + 1 {
        return Err(Error::Domain(format!(
            "needs k >= 1 and n > 2k + 1, got n = {n}, k = {k}"
        )));
    }
    let s = max_square_count(n, k)?;
    let t = k - s;
    let mut g = Graph::new(n);
    for j in 0..s {
        let (a, b, c, ax) = (3 * j, 3 * j + 1, 3 * j + 2, 3 * j + 3);
        g.add_edge(a, b)?;
        g.add_edge(b, ax)?;
        g.add_edge(ax, c)?;
        g.add_edge(c, a)?;
    }
    let ends = [0, 3 * s];
    let mut next = 3 * s + 1;
    if n > 3 * k {
        let spare = n - (3 * s + 1);
        for (end, len) in ends.into_iter().zip([spare.div_ceil(2), spare / 2]) {
            let mut prev = end;
            for _ in 0..len {
                g.add_edge(prev, next)?;
                prev = next;
                next += 1;
            }
        }
    } else {
        for (end, count) in ends.into_iter().zip([t.div_ceil(2), t / 2]) {
            let mut anchor = end;
            for _ in 0..count {
                g.add_edge(anchor, next)?;
                g.add_edge(anchor, next + 1)?;
                g.add_edge(next, next + 1)?;
                anchor = next + 1;
                next += 2;
            }
        }
    }
    debug_assert_eq!(next, n);
    Ok(g)
}
