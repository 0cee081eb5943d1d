//! Immutable simple graphs with exact metric computations.
//!
//! Vertices are dense indices `0..vertex_count`. Adjacency is stored twice:
//! as bit-packed rows (constant-time tests, bit-parallel set operations) and
//! as sorted neighbor lists (BFS).

use std::collections::{HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::bitset::{words_for, Ones, VertexSet};
use crate::error::{Error, Result};
use crate::families::HHVertex;
use crate::subset::Subset;

/// A path length or cycle length; `Infinite` marks the vacuous cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Finite(u64),
    Infinite,
}

impl Metric {
    pub fn is_finite(self) -> bool {
        matches!(self, Metric::Finite(_))
    }

    pub fn value(self) -> Option<u64> {
        match self {
            Metric::Finite(v) => Some(v),
            Metric::Infinite => None,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Finite(v) => write!(f, "{v}"),
            Metric::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// Family-specific vertex label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Hh(HHVertex),
    Subset(Subset),
    Element(u8),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Hh(v) => write!(f, "{};{}", v.head, v.tail),
            Label::Subset(s) => write!(f, ";{s}"),
            Label::Element(e) => write!(f, "{e};"),
        }
    }
}

#[derive(Clone)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
    adj: Vec<Vec<u32>>,
    edge_count: usize,
    labels: Option<Vec<Label>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.n)
            .field("edges", &self.edge_count)
            .field("labeled", &self.labels.is_some())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate and reversed pairs collapse.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let stride = words_for(vertex_count);
        let mut rows = vec![0u64; stride * vertex_count];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        index: x,
                        count: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            rows[u * stride + v / 64] |= 1 << (v % 64);
            rows[v * stride + u / 64] |= 1 << (u % 64);
        }
        Ok(Self::from_rows(vertex_count, rows))
    }

    /// Builds a graph from a symmetric predicate evaluated on every unordered pair.
    pub fn from_predicate<F>(vertex_count: usize, adjacent: F) -> Graph
    where
        F: Fn(usize, usize) -> bool + Sync,
    {
        let stride = words_for(vertex_count);
        let mut rows = vec![0u64; stride * vertex_count];
        if stride > 0 {
            rows.par_chunks_mut(stride).enumerate().for_each(|(u, row)| {
                for v in 0..vertex_count {
                    if u != v && adjacent(u.min(v), u.max(v)) {
                        row[v / 64] |= 1 << (v % 64);
                    }
                }
            });
        }
        Self::from_rows(vertex_count, rows)
    }

    fn from_rows(n: usize, rows: Vec<u64>) -> Graph {
        let stride = words_for(n);
        let adj: Vec<Vec<u32>> = (0..n)
            .map(|u| Ones::new(&rows[u * stride..(u + 1) * stride]).map(|v| v as u32).collect())
            .collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            n,
            stride,
            rows,
            adj,
            edge_count,
            labels: None,
        }
    }

    /// Attaches a label table; labels must be unique.
    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Graph> {
        if labels.len() != self.n {
            return Err(Error::LabelCount {
                expected: self.n,
                got: labels.len(),
            });
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if !seen.insert(*l) {
                return Err(Error::DuplicateLabel(i));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<Label> {
        self.labels.as_ref().map(|l| l[v])
    }

    /// Index of the vertex carrying `label`, if any.
    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: v,
                count: self.n,
            })
        }
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.stride + v / 64] & (1 << (v % 64)) != 0
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced on `keep`, re-indexed in ascending order of the old indices.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Graph {
        let old: Vec<usize> = keep.to_vec();
        let g = Graph::from_predicate(old.len(), |a, b| self.adjacent(old[a], old[b]));
        match &self.labels {
            Some(l) => g
                .with_labels(old.iter().map(|&v| l[v]).collect())
                .expect("labels of a subset stay unique"),
            None => g,
        }
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                let w = w as usize;
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<Metric> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(match self.bfs(u)[v] {
            Some(d) => Metric::Finite(d as u64),
            None => Metric::Infinite,
        })
    }

    /// Eccentricity of `v`: `Infinite` if some vertex is unreachable.
    pub fn eccentricity(&self, v: usize) -> Metric {
        self.bfs(v)
            .into_iter()
            .try_fold(0u64, |acc, d| d.map(|d| acc.max(d as u64)))
            .map_or(Metric::Infinite, Metric::Finite)
    }

    /// Maximum pairwise distance; `Infinite` iff the graph is disconnected.
    pub fn diameter(&self) -> Metric {
        (0..self.n)
            .into_par_iter()
            .map(|v| self.eccentricity(v))
            .max()
            .unwrap_or(Metric::Finite(0))
    }

    /// Length of a shortest cycle through BFS from every vertex.
    pub fn girth(&self) -> Metric {
        (0..self.n)
            .into_par_iter()
            .map(|s| self.shortest_cycle_from(s))
            .min()
            .unwrap_or(Metric::Infinite)
    }

    fn shortest_cycle_from(&self, s: usize) -> Metric {
        let mut dist = vec![u32::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        let mut best = u64::MAX;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] as u64 + 1 >= best {
                break;
            }
            for &w in &self.adj[u] {
                let w = w as usize;
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] as u64 + dist[w] as u64 + 1);
                }
            }
        }
        if best == u64::MAX {
            Metric::Infinite
        } else {
            Metric::Finite(best)
        }
    }

    /// Length of a shortest odd cycle, via BFS on the bipartite double cover:
    /// the distance from `(v, even)` to `(v, odd)` is the shortest odd closed
    /// walk through `v`, and the minimum over `v` is the odd girth.
    pub fn odd_girth(&self) -> Metric {
        (0..self.n)
            .into_par_iter()
            .map(|s| self.shortest_odd_walk_from(s))
            .min()
            .unwrap_or(Metric::Infinite)
    }

    fn shortest_odd_walk_from(&self, s: usize) -> Metric {
        let mut dist = vec![u32::MAX; 2 * self.n];
        let mut queue = VecDeque::new();
        dist[2 * s] = 0;
        queue.push_back(2 * s);
        while let Some(state) = queue.pop_front() {
            let (u, parity) = (state / 2, state % 2);
            for &w in &self.adj[u] {
                let next = 2 * w as usize + (1 - parity);
                if dist[next] == u32::MAX {
                    dist[next] = dist[state] + 1;
                    if next == 2 * s + 1 {
                        return Metric::Finite(dist[next] as u64);
                    }
                    queue.push_back(next);
                }
            }
        }
        Metric::Infinite
    }

    /// Reachability classes, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    let w = w as usize;
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// A proper 2-coloring (sides 0/1) when one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    let w = w as usize;
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<VertexSet> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let words = self.row(u).iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
        Ok(VertexSet::from_words(self.n, words))
    }

    /// First triangle `(a, b, c)` with `a < b < c`, if any.
    pub fn find_triangle(&self) -> Option<(usize, usize, usize)> {
        for (a, b) in self.edges() {
            let common = self.row(a).iter().zip(self.row(b)).map(|(x, y)| x & y);
            for (wi, w) in common.enumerate() {
                let mut w = w;
                while w != 0 {
                    let c = wi * 64 + w.trailing_zeros() as usize;
                    w &= w - 1;
                    if c > b {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}
