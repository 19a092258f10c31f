//! A simple undirected graph with validated construction.

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n` stored as sorted
/// adjacency lists.
///
/// Construction validates vertex ranges and rejects self-loops; duplicate
/// edges collapse silently. Neighbor lists stay sorted, so adjacency tests
/// are binary searches and iteration order is deterministic everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph on `n` vertices from an edge list.
    ///
    /// Rejects endpoints `>= n` and self-loops; repeated edges (in either
    /// orientation) are stored once.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.adj.iter().map(|nb| nb.len()).sum::<usize>() / 2
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Whether the edge `{u, v}` is present.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb.iter().filter(|&&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Inserts the edge `{u, v}`. Inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    order: n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
        Ok(())
    }

    /// Removes the edge `{u, v}`; returns whether it was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// BFS distances from `s`; `None` marks unreachable vertices.
    pub fn bfs_dist(&self, s: usize) -> Result<Vec<Option<usize>>> {
        if s >= self.n() {
            return Err(Error::VertexOutOfRange {
                vertex: s,
                order: self.n(),
            });
        }
        let mut dist = vec![None; self.n()];
        dist[s] = Some(0);
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// Whether the graph is connected. The empty graph is not.
    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return false;
        }
        self.bfs_dist(0)
            .map(|d| d.iter().all(|x| x.is_some()))
            .unwrap_or(false)
    }

    /// Connected components as sorted vertex lists, ordered by
    /// decreasing size and then by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        comps
    }

    /// The subgraph induced by `keep`, relabeled `0..keep.len()` in the
    /// order given, together with the old-id-per-new-id map.
    pub fn induced(&self, keep: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let n = self.n();
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in keep.iter().enumerate() {
            if v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: n,
                });
            }
            new_id[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for &v in keep {
            for &w in &self.adj[v] {
                if w > v && new_id[w] != usize::MAX && new_id[v] != usize::MAX {
                    g.add_edge(new_id[v], new_id[w])?;
                }
            }
        }
        Ok((g, keep.to_vec()))
    }

    /// The graph with vertex `v` mapped to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n() {
            return Err(Error::Domain(format!(
                "permutation length {} does not match order {}",
                perm.len(),
                self.n()
            )));
        }
        let mut g = Graph::new(self.n());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])?;
        }
        Ok(g)
    }
}
