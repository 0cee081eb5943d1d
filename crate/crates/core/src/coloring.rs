//! Proper colorings: DSATUR upper bounds, an exact chromatic-number search,
//! the constructive coloring of H(n:r) with `n - 2r + 2` colors, and exact
//! fractional colorings of vertex-transitive graphs.

use std::collections::HashMap;

use num_rational::Ratio;

use crate::bitset::VertexSet;
use crate::budget::{Budget, Ticker};
use crate::error::{Error, Result};
use crate::families::{hh_graph, hh_vertices, FamilyParams};
use crate::graph::Graph;
use crate::group::{symmetric_vertex_generators, transitive_group, VertexPermutation, DEFAULT_GROUP_CAP};
use crate::independence::first_internal_edge;
use crate::structure::orbit_count;

/// Color of every vertex; colors are `0..color_count` after normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub assignment: Vec<u32>,
    pub color_count: u32,
}

impl Coloring {
    /// Counts the distinct colors in `assignment`.
    pub fn new(assignment: Vec<u32>) -> Self {
        let mut used: Vec<u32> = assignment.clone();
        used.sort_unstable();
        used.dedup();
        Coloring {
            color_count: used.len() as u32,
            assignment,
        }
    }

    /// Relabels colors to `0..color_count` by first appearance.
    pub fn normalized(&self) -> Coloring {
        let mut map = HashMap::new();
        let assignment = self
            .assignment
            .iter()
            .map(|c| {
                let next = map.len() as u32;
                *map.entry(*c).or_insert(next)
            })
            .collect();
        Coloring {
            assignment,
            color_count: map.len() as u32,
        }
    }

    /// Errors on a size mismatch or on the first monochromatic edge.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if self.assignment.len() != g.vertex_count() {
            return Err(Error::ColoringSize {
                expected: g.vertex_count(),
                got: self.assignment.len(),
            });
        }
        match g.edges().find(|&(u, v)| self.assignment[u] == self.assignment[v]) {
            Some((u, v)) => Err(Error::ImproperColoring(u, v)),
            None => Ok(()),
        }
    }
}

/// Picks the uncolored vertex of highest saturation, then highest degree,
/// then lowest index.
fn dsatur_pick(g: &Graph, colored: &[bool], sat: &[u32]) -> Option<usize> {
    (0..g.vertex_count())
        .filter(|&v| !colored[v])
        .max_by(|&a, &b| (sat[a], g.degree(a)).cmp(&(sat[b], g.degree(b))).then(b.cmp(&a)))
}

/// DSATUR greedy coloring.
pub fn chi_upper_greedy(g: &Graph) -> Coloring {
    let n = g.vertex_count();
    let mut colors = vec![u32::MAX; n];
    let mut colored = vec![false; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0u32; n];
    while let Some(v) = dsatur_pick(g, &colored, &sat) {
        let c = (0..).find(|&c| !seen[v].get(c as usize).copied().unwrap_or(false)).unwrap();
        colors[v] = c;
        colored[v] = true;
        for &w in g.neighbors(v) {
            let s = &mut seen[w as usize];
            if s.len() <= c as usize {
                s.resize(c as usize + 1, false);
            }
            if !s[c as usize] {
                s[c as usize] = true;
                sat[w as usize] += 1;
            }
        }
    }
    Coloring::new(colors)
}

#[derive(Clone, Debug)]
pub struct ChiResult {
    /// Proven lower bound.
    pub lower: u32,
    /// Colors used by `coloring`.
    pub upper: u32,
    pub coloring: Coloring,
    /// `lower == upper` was proven within the budget.
    pub exact: bool,
    pub nodes: u64,
}

impl ChiResult {
    pub fn chi(&self) -> Option<u32> {
        self.exact.then_some(self.upper)
    }
}

struct KColoring<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<u32>,
    colored: Vec<bool>,
    /// `forbid[v * k + c]`: colored neighbors of `v` with color `c`.
    forbid: Vec<u32>,
    sat: Vec<u32>,
    ticker: Ticker,
}

impl KColoring<'_> {
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.colors[v] = c as u32;
        self.colored[v] = true;
        let mut ok = true;
        for &w in self.g.neighbors(v) {
            let w = w as usize;
            let f = &mut self.forbid[w * self.k + c];
            *f += 1;
            if *f == 1 {
                self.sat[w] += 1;
                if !self.colored[w] && self.sat[w] as usize == self.k {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v] as usize;
        self.colored[v] = false;
        for &w in self.g.neighbors(v) {
            let w = w as usize;
            let f = &mut self.forbid[w * self.k + c];
            *f -= 1;
            if *f == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    /// `Some(true)` when a coloring completes, `None` on budget exhaustion.
    fn search(&mut self, done: usize, used: usize) -> Option<bool> {
        if done == self.g.vertex_count() {
            return Some(true);
        }
        if self.ticker.tick() {
            return None;
        }
        let v = dsatur_pick(self.g, &self.colored, &self.sat).expect("uncolored vertex remains");
        // a fresh color is interchangeable with any other fresh color
        for c in 0..self.k.min(used + 1) {
            if self.forbid[v * self.k + c] != 0 {
                continue;
            }
            if self.assign(v, c) {
                match self.search(done + 1, used.max(c + 1)) {
                    Some(false) => {}
                    other => {
                        if other.is_none() {
                            self.unassign(v);
                        }
                        return other;
                    }
                }
            }
            self.unassign(v);
        }
        Some(false)
    }
}

/// A proper `k`-coloring, `Some(None)` if none exists, `None` on budget exhaustion.
fn find_k_coloring(g: &Graph, k: usize, ticker: &mut Ticker) -> Option<Option<Coloring>> {
    let n = g.vertex_count();
    let mut s = KColoring {
        g,
        k,
        colors: vec![0; n],
        colored: vec![false; n],
        forbid: vec![0; n * k],
        sat: vec![0; n],
        ticker: std::mem::replace(ticker, Ticker::new(Budget::unlimited())),
    };
    let out = s.search(0, 0);
    *ticker = s.ticker;
    out.map(|found| found.then(|| Coloring::new(s.colors)))
}

/// Exact chromatic number.
///
/// Starts from the DSATUR coloring and refutes smaller color counts in
/// ascending order by DSATUR backtracking in which a new color is only ever
/// the next unused one. The lower bound starts at 2 for graphs with an edge
/// and 3 for non-bipartite graphs.
pub fn chi_exact(g: &Graph, budget: Budget) -> ChiResult {
    let mut best = chi_upper_greedy(g).normalized();
    let mut lower = if g.vertex_count() == 0 {
        0
    } else if g.edge_count() == 0 {
        1
    } else if g.is_bipartite() {
        2
    } else {
        3
    };
    if g.is_bipartite() && g.edge_count() > 0 {
        let side = g.bipartition().expect("bipartite graph has a bipartition");
        best = Coloring::new(side.into_iter().map(u32::from).collect()).normalized();
    }
    let mut ticker = Ticker::new(budget);
    let mut exhausted = false;
    while lower < best.color_count {
        match find_k_coloring(g, lower as usize, &mut ticker) {
            Some(Some(c)) => {
                best = c.normalized();
            }
            Some(None) => lower += 1,
            None => {
                exhausted = true;
                break;
            }
        }
    }
    ChiResult {
        lower,
        upper: best.color_count,
        exact: !exhausted && lower == best.color_count,
        coloring: best,
        nodes: ticker.nodes,
    }
}

/// Colors H(n:r) with `n - 2r + 2` colors: H(2r:r) by whether 1 is in the
/// tail, then for each larger `m` the vertices whose largest element is `m`
/// get a fresh color when `m` is in the tail and the first color when `m` is
/// the head.
pub fn constructive_coloring(p: FamilyParams) -> Result<Coloring> {
    p.require_standard()?;
    let two_r = 2 * p.r;
    let assignment = hh_vertices(p)
        .into_iter()
        .map(|v| {
            let m = v.support().max_element().expect("vertices are nonempty");
            if m <= two_r {
                u32::from(!v.tail.contains(1))
            } else if v.head == m {
                0
            } else {
                (m - two_r + 1) as u32
            }
        })
        .collect();
    Ok(Coloring::new(assignment))
}

/// `|V| / alpha` for H(n:r) after checking vertex transitivity under `S_n`.
pub fn fractional_chromatic(p: FamilyParams, alpha: u64) -> Result<Ratio<u64>> {
    if alpha == 0 {
        return Err(Error::Domain("independence number must be positive".into()));
    }
    let g = hh_graph(p)?;
    let gens = symmetric_vertex_generators(&g, p.n)?;
    let (orbits, _) = orbit_count(&g, &gens)?;
    if orbits != 1 {
        return Err(Error::NotTransitive { orbits });
    }
    Ok(Ratio::new(g.vertex_count() as u64, alpha))
}

/// Independent sets with exact nonnegative weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalColoring {
    pub weighted_sets: Vec<(VertexSet, Ratio<u64>)>,
    pub total_weight: Ratio<u64>,
}

impl FractionalColoring {
    /// Total weight of the sets containing each vertex.
    pub fn coverage(&self, vertex_count: usize) -> Vec<Ratio<u64>> {
        let mut cover = vec![Ratio::from_integer(0); vertex_count];
        for (s, w) in &self.weighted_sets {
            for v in s.iter() {
                cover[v] += *w;
            }
        }
        cover
    }

    /// Every set independent and every vertex covered with weight at least 1.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        for (s, _) in &self.weighted_sets {
            if let Some((u, v)) = first_internal_edge(g, s)? {
                return Err(Error::NotIndependent(u, v));
            }
        }
        let sum: Ratio<u64> = self.weighted_sets.iter().map(|(_, w)| *w).sum();
        if sum != self.total_weight {
            return Err(Error::Domain("total weight does not match the weights".into()));
        }
        match self.coverage(g.vertex_count()).iter().position(|c| *c < Ratio::from_integer(1)) {
            Some(v) => Err(Error::Domain(format!("vertex {v} is covered with weight below 1"))),
            None => Ok(()),
        }
    }
}

/// The images of `s` under a transitive group, as a fractional coloring.
///
/// Each distinct image gets weight `multiplicity / r'` with
/// `r' = |G| |s| / |V|`, so every vertex is covered exactly once and the
/// total weight is `|V| / |s|`.
pub fn orbit_fractional_coloring(
    g: &Graph,
    generators: &[VertexPermutation],
    s: &VertexSet,
) -> Result<FractionalColoring> {
    orbit_fractional_coloring_capped(g, generators, s, DEFAULT_GROUP_CAP)
}

pub fn orbit_fractional_coloring_capped(
    g: &Graph,
    generators: &[VertexPermutation],
    s: &VertexSet,
    cap: usize,
) -> Result<FractionalColoring> {
    if let Some((u, v)) = first_internal_edge(g, s)? {
        return Err(Error::NotIndependent(u, v));
    }
    if s.is_empty() {
        return Err(Error::Domain("the seed set is empty".into()));
    }
    let group = transitive_group(g, generators, cap)?;
    let n = g.vertex_count();
    let r_prime = (group.len() * s.size() / n) as u64;
    let mut order: Vec<VertexSet> = Vec::new();
    let mut mult: HashMap<VertexSet, u64> = HashMap::new();
    for perm in &group {
        let image = VertexSet::from_indices(n, s.iter().map(|v| perm.apply(v)));
        let m = mult.entry(image.clone()).or_insert(0);
        if *m == 0 {
            order.push(image);
        }
        *m += 1;
    }
    let weighted_sets: Vec<(VertexSet, Ratio<u64>)> = order
        .into_iter()
        .map(|set| {
            let w = Ratio::new(mult[&set], r_prime);
            (set, w)
        })
        .collect();
    let total_weight = weighted_sets.iter().map(|(_, w)| *w).sum();
    let out = FractionalColoring {
        weighted_sets,
        total_weight,
    };
    debug_assert!(out.coverage(n).iter().all(|c| *c == Ratio::from_integer(1)));
    Ok(out)
}
