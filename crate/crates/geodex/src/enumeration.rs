//! Isomorphism-free enumeration of small graphs and exhaustive scans.
//!
//! Graphs are deduplicated by a canonical form: the graph6 string of the
//! relabeling that minimizes the adjacency bitstring, found by
//! backtracking over vertex orderings restricted to the cells of an
//! iterated neighborhood-color refinement. Exact but exponential in the
//! worst case, hence the hard size guards.
//!
//! Connected graphs are enumerated by extending all (not necessarily
//! connected) classes one vertex at a time and filtering at the final
//! order; cacti are grown block by block, attaching either a pendant
//! vertex or a whole cycle at an existing vertex.

use crate::error::{Error, Result};
use crate::families::binomial;
use crate::formats::{parse_graph6, render_graph6};
use crate::geodesic::gpn;
use crate::graph::Graph;
use num_bigint::BigUint;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// The public guard for [`canonical_form`].
pub const CANONICAL_LIMIT: usize = 10;
/// The ceiling the internal machinery tolerates (enumeration uses it).
pub(crate) const CANONICAL_CEILING: usize = 12;

/// A label-independent fingerprint of a graph: the graph6 encoding of its
/// canonical relabeling. Two graphs get equal forms exactly when they are
/// isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    graph6: String,
}

impl CanonicalForm {
    /// The canonical graph6 string.
    pub fn as_str(&self) -> &str {
        &self.graph6
    }

    /// Reconstructs the canonical representative.
    pub fn to_graph(&self) -> Graph {
        parse_graph6(&self.graph6).expect("canonical forms hold valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.graph6)
    }
}

fn adjacency_masks(g: &Graph) -> Vec<u16> {
    let mut rows = vec![0u16; g.n()];
    for (u, v) in g.edges() {
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    }
    rows
}

/// Iterated neighborhood refinement: vertices get dense color ids, stable
/// under the map color -> (color, sorted neighbor colors).
fn refine_colors(n: usize, rows: &[u16]) -> Vec<u32> {
    let mut color = vec![0u32; n];
    let mut distinct = 1usize;
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = (0..n)
                    .filter(|&w| rows[v] >> w & 1 == 1)
                    .map(|w| color[w])
                    .collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut uniq: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
        uniq.sort();
        uniq.dedup();
        if uniq.len() == distinct {
            return color;
        }
        distinct = uniq.len();
        color = sigs
            .iter()
            .map(|s| uniq.binary_search(&s).unwrap() as u32)
            .collect();
    }
}

struct CanonSearch<'a> {
    rows: &'a [u16],
    color: &'a [u32],
    /// Color required at each position (cells in ascending color order).
    cell_of_pos: Vec<u32>,
    placed: Vec<usize>,
    used: u16,
    cur: Vec<u16>,
    best: Option<(Vec<u16>, Vec<usize>)>,
}

impl CanonSearch<'_> {
    /// Row value of vertex `v` at position `p`: adjacency bits to the
    /// already placed positions, earliest position most significant.
    fn row_value(&self, v: usize, p: usize) -> u16 {
        let mut val = 0u16;
        for q in 0..p {
            val = (val << 1) | u16::from(self.rows[v] >> self.placed[q] & 1 == 1);
        }
        val
    }

    fn descend(&mut self, p: usize, tight: bool) {
        let n = self.rows.len();
        if p == n {
            let better = match &self.best {
                None => true,
                Some((rows, _)) => self.cur < *rows,
            };
            if better {
                self.best = Some((self.cur.clone(), self.placed.clone()));
            }
            return;
        }
        for v in 0..n {
            if self.used >> v & 1 == 1 || self.color[v] != self.cell_of_pos[p] {
                continue;
            }
            let rv = self.row_value(v, p);
            let mut child_tight = tight;
            if tight {
                if let Some((rows, _)) = &self.best {
                    if rv > rows[p] {
                        continue;
                    }
                    child_tight = rv == rows[p];
                }
            }
            self.placed.push(v);
            self.used |= 1 << v;
            self.cur.push(rv);
            self.descend(p + 1, child_tight);
            self.cur.pop();
            self.used &= !(1 << v);
            self.placed.pop();
        }
    }
}

fn canon(g: &Graph) -> (Graph, CanonicalForm) {
    let n = g.n();
    debug_assert!(n <= CANONICAL_CEILING);
    let rows = adjacency_masks(g);
    let color = refine_colors(n, &rows);
    let mut cell_of_pos: Vec<u32> = color.clone();
    cell_of_pos.sort_unstable();
    let mut search = CanonSearch {
        rows: &rows,
        color: &color,
        cell_of_pos,
        placed: Vec::with_capacity(n),
        used: 0,
        cur: Vec::with_capacity(n),
        best: None,
    };
    search.descend(0, true);
    let placed = match search.best {
        Some((_, placed)) => placed,
        None => Vec::new(), // only for the vertexless graph
    };
    let mut canon_graph = Graph::new(n);
    for p in 0..n {
        for q in (p + 1)..n {
            if g.has_edge(placed[p], placed[q]) {
                canon_graph.add_edge(p, q).expect("positions in range");
            }
        }
    }
    let graph6 = render_graph6(&canon_graph).expect("order within graph6 range");
    (canon_graph, CanonicalForm { graph6 })
}

/// Canonical form of `g`, guarded to order [`CANONICAL_LIMIT`].
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    if g.n() > CANONICAL_LIMIT {
        return Err(Error::SizeLimit {
            op: "canonical_form",
            given: g.n(),
            limit: CANONICAL_LIMIT,
        });
    }
    Ok(canon(g).1)
}

pub(crate) fn canonical_form_internal(g: &Graph) -> Result<CanonicalForm> {
    if g.n() > CANONICAL_CEILING {
        return Err(Error::SizeLimit {
            op: "canonical_form_internal",
            given: g.n(),
            limit: CANONICAL_CEILING,
        });
    }
    Ok(canon(g).1)
}

/// All isomorphism classes on `m` vertices obtained by adding one vertex
/// to `prev` in every possible way, keyed by canonical form.
fn extend_level(prev: &[Graph], m: usize) -> BTreeMap<CanonicalForm, Graph> {
    let pairs: Vec<(CanonicalForm, Graph)> = prev
        .par_iter()
        .flat_map_iter(|g| {
            (0..1u32 << (m - 1)).map(move |mask| {
                let mut h = Graph::new(m);
                for (u, v) in g.edges() {
                    h.add_edge(u, v).expect("within range");
                }
                for u in 0..m - 1 {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, m - 1).expect("within range");
                    }
                }
                let (canon_graph, form) = canon(&h);
                (form, canon_graph)
            })
        })
        .collect();
    pairs.into_iter().collect()
}

fn connected_classes(n: usize) -> Vec<Graph> {
    let mut level: Vec<Graph> = vec![Graph::new(1)];
    for m in 2..=n {
        level = extend_level(&level, m).into_values().collect();
    }
    level.retain(Graph::is_connected);
    level
}

/// All connected graphs on `n` vertices up to isomorphism, canonical
/// representatives in canonical-form order. Guarded to `n <= 7`
/// (853 classes); see [`enum_connected_large`] for `n == 8`.
pub fn enum_connected(n: usize) -> Result<Vec<Graph>> {
    const LIMIT: usize = 7;
    if n == 0 {
        return Err(Error::Domain("enumeration needs n >= 1".into()));
    }
    if n > LIMIT {
        return Err(Error::SizeLimit {
            op: "enum_connected",
            given: n,
            limit: LIMIT,
        });
    }
    Ok(connected_classes(n))
}

/// [`enum_connected`] with the guard raised to `n <= 8` (11117 classes,
/// noticeably slower); callers opt in explicitly.
pub fn enum_connected_large(n: usize) -> Result<Vec<Graph>> {
    const LIMIT: usize = 8;
    if n == 0 {
        return Err(Error::Domain("enumeration needs n >= 1".into()));
    }
    if n > LIMIT {
        return Err(Error::SizeLimit {
            op: "enum_connected_large",
            given: n,
            limit: LIMIT,
        });
    }
    Ok(connected_classes(n))
}

/// All connected cacti with `n` vertices and exactly `k` cycles, up to
/// isomorphism, canonical representatives in canonical-form order.
/// Guarded to `n <= 12`; `n < 2k + 1` yields no cacti at all.
///
/// Grown constructively: every cactus arises from a smaller one by
/// attaching either a pendant vertex or a whole cycle at one vertex, so
/// the level-by-level closure with canonical deduplication is exhaustive.
pub fn enum_cacti(n: usize, k: usize) -> Result<Vec<Graph>> {
    const LIMIT: usize = 12;
    if n == 0 {
        return Err(Error::Domain("enumeration needs n >= 1".into()));
    }
    if n > LIMIT {
        return Err(Error::SizeLimit {
            op: "enum_cacti",
            given: n,
            limit: LIMIT,
        });
    }
    if n < 2 * k + 1 {
        return Ok(Vec::new());
    }
    // buckets[(order, cycles)] -> classes; only feasible buckets are kept:
    // each missing cycle will consume at least two further vertices.
    let feasible = |order: usize, cycles: usize| cycles <= k && order + 2 * (k - cycles) <= n;
    let mut buckets: BTreeMap<(usize, usize), BTreeMap<CanonicalForm, Graph>> = BTreeMap::new();
    let (g1, f1) = canon_seed();
    buckets.entry((1, 0)).or_default().insert(f1, g1);
    for order in 1..n {
        let snapshot: Vec<(usize, Vec<Graph>)> = buckets
            .range((order, 0)..(order + 1, 0))
            .map(|(&(_, cyc), map)| (cyc, map.values().cloned().collect()))
            .collect();
        for (cycles, graphs) in snapshot {
            // Pendant vertex: order + 1, same cycle count.
            if feasible(order + 1, cycles) {
                let pairs: Vec<(CanonicalForm, Graph)> = graphs
                    .par_iter()
                    .flat_map_iter(|g| {
                        (0..order).map(move |v| {
                            let mut h = grown_copy(g, 1);
                            h.add_edge(v, order).expect("within range");
                            let (cg, form) = canon(&h);
                            (form, cg)
                        })
                    })
                    .collect();
                let target = buckets.entry((order + 1, cycles)).or_default();
                target.extend(pairs);
            }
            // Whole cycle of length c at a vertex: c - 1 new vertices.
            for c in 3..=(n - order + 1) {
                if !feasible(order + c - 1, cycles + 1) {
                    continue;
                }
                let pairs: Vec<(CanonicalForm, Graph)> = graphs
                    .par_iter()
                    .flat_map_iter(|g| {
                        (0..order).map(move |v| {
                            let mut h = grown_copy(g, c - 1);
                            let ring: Vec<usize> =
                                std::iter::once(v).chain(order..order + c - 1).collect();
                            for i in 0..c {
                                h.add_edge(ring[i], ring[(i + 1) % c])
                                    .expect("within range");
                            }
                            let (cg, form) = canon(&h);
                            (form, cg)
                        })
                    })
                    .collect();
                let target = buckets.entry((order + c - 1, cycles + 1)).or_default();
                target.extend(pairs);
            }
        }
    }
    Ok(buckets
        .remove(&(n, k))
        .map(|m| m.into_values().collect())
        .unwrap_or_default())
}

fn canon_seed() -> (Graph, CanonicalForm) {
    canon(&Graph::new(1))
}

fn grown_copy(g: &Graph, extra: usize) -> Graph {
    let mut h = Graph::new(g.n() + extra);
    for (u, v) in g.edges() {
        h.add_edge(u, v).expect("within range");
    }
    h
}

/// Which end of the value range an extremal scan keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Max,
    Min,
}

/// Outcome of an extremal scan over a stream of graphs.
#[derive(Debug, Clone)]
pub struct ExtremalReport {
    pub objective: Objective,
    /// Order of the scanned graphs.
    pub n: usize,
    /// Cycle count when the stream was a cactus enumeration.
    pub k: Option<usize>,
    /// The extremal geodesic subpath number.
    pub extremal_value: BigUint,
    /// Canonical forms of all graphs attaining it, sorted.
    pub witnesses: Vec<CanonicalForm>,
    pub instances_scanned: usize,
}

fn extremal_scan(graphs: &[Graph], objective: Objective) -> Result<ExtremalReport> {
    if graphs.is_empty() {
        return Err(Error::Domain("extremal scan over an empty stream".into()));
    }
    let n = graphs[0].n();
    let scored: Vec<(BigUint, CanonicalForm)> = graphs
        .par_iter()
        .map(|g| -> Result<_> { Ok((gpn(g)?, canonical_form_internal(g)?)) })
        .collect::<Result<_>>()?;
    let best = match objective {
        Objective::Max => scored.iter().map(|(v, _)| v).max(),
        Objective::Min => scored.iter().map(|(v, _)| v).min(),
    }
    .expect("nonempty")
    .clone();
    let mut witnesses: Vec<CanonicalForm> = scored
        .iter()
        .filter(|(v, _)| *v == best)
        .map(|(_, f)| f.clone())
        .collect();
    witnesses.sort();
    witnesses.dedup();
    Ok(ExtremalReport {
        objective,
        n,
        k: None,
        extremal_value: best,
        witnesses,
        instances_scanned: graphs.len(),
    })
}

/// Scans a stream of same-order graphs for the maximum geodesic subpath
/// number. Errors on an empty stream.
pub fn argmax_gpn(graphs: &[Graph]) -> Result<ExtremalReport> {
    extremal_scan(graphs, Objective::Max)
}

/// Scans a stream of same-order graphs for the minimum geodesic subpath
/// number. Errors on an empty stream.
pub fn argmin_gpn(graphs: &[Graph]) -> Result<ExtremalReport> {
    extremal_scan(graphs, Objective::Min)
}

/// One connected class in a bound sweep.
#[derive(Debug, Clone)]
pub struct BoundRow {
    /// Canonical graph6 of the class.
    pub graph6: String,
    pub value: BigUint,
    /// Verdict of the bare cube-root bound.
    pub asymptotic_ok: bool,
    /// Verdict of the slack-adjusted bound.
    pub safe_ok: bool,
}

/// Exhaustive bound verdicts over every connected class of one order.
#[derive(Debug, Clone)]
pub struct BoundsSweep {
    pub n: usize,
    pub classes: usize,
    pub asymptotic_violations: usize,
    pub safe_violations: usize,
    pub rows: Vec<BoundRow>,
}

/// Checks both bound variants on every connected graph of order
/// `n <= 7` and tallies the violations.
pub fn verify_bounds(n: usize) -> Result<BoundsSweep> {
    use crate::families::{check_asymptotic_bound, check_safe_bound};
    let classes = enum_connected(n)?;
    let rows: Vec<BoundRow> = classes
        .par_iter()
        .map(|g| -> Result<BoundRow> {
            let value = gpn(g)?;
            Ok(BoundRow {
                graph6: render_graph6(g)?,
                asymptotic_ok: check_asymptotic_bound(&value, n),
                safe_ok: check_safe_bound(&value, n),
                value,
            })
        })
        .collect::<Result<_>>()?;
    Ok(BoundsSweep {
        n,
        classes: rows.len(),
        asymptotic_violations: rows.iter().filter(|r| !r.asymptotic_ok).count(),
        safe_violations: rows.iter().filter(|r| !r.safe_ok).count(),
        rows,
    })
}

/// Lower bound attained by geodetic graphs: `C(n + 1, 2)`.
pub fn geodetic_floor(n: usize) -> BigUint {
    binomial(n as u64 + 1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_cycle, gen_path, gen_petersen};
    use crate::geodesic::is_geodetic;

    #[test]
    fn canonical_form_is_label_independent() {
        let g = gen_cycle(5).unwrap();
        let h = g.relabeled(&[3, 0, 4, 1, 2]).unwrap();
        assert_ne!(g, h);
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        let p4 = gen_path(4).unwrap();
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_form(&p4).unwrap(), canonical_form(&star).unwrap());
    }

    #[test]
    fn canonical_form_round_trips() {
        let g = gen_petersen();
        let form = canonical_form(&g).unwrap();
        let back = form.to_graph();
        assert_eq!(canonical_form(&back).unwrap(), form);
        assert_eq!(back.m(), 15);
    }

    #[test]
    fn canonical_form_guard() {
        let g = gen_path(11).unwrap();
        assert!(matches!(
            canonical_form(&g),
            Err(Error::SizeLimit {
                given: 11,
                limit: 10,
                ..
            })
        ));
        assert!(canonical_form_internal(&g).is_ok());
        assert!(canonical_form_internal(&gen_path(13).unwrap()).is_err());
    }

    #[test]
    fn connected_class_counts() {
        let expect = [1usize, 1, 2, 6, 21, 112, 853];
        for (i, &want) in expect.iter().enumerate() {
            let n = i + 1;
            assert_eq!(enum_connected(n).unwrap().len(), want, "order {n}");
        }
        assert!(matches!(
            enum_connected(8),
            Err(Error::SizeLimit {
                given: 8,
                limit: 7,
                ..
            })
        ));
    }

    #[test]
    fn enumeration_is_sorted_and_connected() {
        let classes = enum_connected(6).unwrap();
        assert!(classes.iter().all(Graph::is_connected));
        let forms: Vec<String> = classes.iter().map(|g| render_graph6(g).unwrap()).collect();
        let mut sorted = forms.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(forms, sorted);
    }

    #[test]
    fn cactus_class_counts() {
        let table = [
            (5, 0, 3),
            (5, 1, 5),
            (5, 2, 1),
            (6, 0, 6),
            (6, 1, 13),
            (6, 2, 4),
            (7, 0, 11),
            (7, 1, 33),
            (7, 2, 17),
            (7, 3, 2),
            (8, 2, 65),
            (8, 3, 11),
        ];
        for (n, k, want) in table {
            assert_eq!(enum_cacti(n, k).unwrap().len(), want, "(n, k) = ({n}, {k})");
        }
        assert!(enum_cacti(4, 2).unwrap().is_empty());
        assert!(matches!(enum_cacti(13, 1), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn extremal_scan_order_five() {
        let classes = enum_connected(5).unwrap();
        let min = argmin_gpn(&classes).unwrap();
        assert_eq!(min.extremal_value, BigUint::from(15u32));
        assert_eq!(min.extremal_value, geodetic_floor(5));
        assert_eq!(min.witnesses.len(), 10);
        assert_eq!(min.instances_scanned, 21);
        for w in &min.witnesses {
            assert!(is_geodetic(&w.to_graph()).unwrap());
        }
        let max = argmax_gpn(&classes).unwrap();
        assert_eq!(max.extremal_value, BigUint::from(20u32));
        assert!(argmax_gpn(&[]).is_err());
    }

    #[test]
    fn bound_sweep_small_orders() {
        let sweep = verify_bounds(4).unwrap();
        assert_eq!(sweep.classes, 6);
        assert_eq!(sweep.asymptotic_violations, 6);
        assert_eq!(sweep.safe_violations, 0);
        let sweep = verify_bounds(2).unwrap();
        assert_eq!(sweep.asymptotic_violations, 1);
        assert_eq!(sweep.safe_violations, 0);
    }
}
