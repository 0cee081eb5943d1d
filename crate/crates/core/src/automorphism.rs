//! Automorphisms: the coordinate action of `S_n` on H(n:r), an exact
//! automorphism-group search, and a test for "same tail" that reads only the
//! adjacency of H(n:r).

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::budget::{Budget, Ticker};
use crate::error::{Error, Result};
use crate::families::{hh_labels, hh_valency, hh_vertex_count, hh_vertices, FamilyParams, HHVertex};
use crate::graph::Graph;
use crate::group::{enumerate_group, is_automorphism, Permutation, VertexPermutation};
use crate::subset::binom_i;

/// `(h, T) -> (σ(h), σ(T))`.
pub fn apply_perm(p: FamilyParams, sigma: &Permutation, v: HHVertex) -> Result<HHVertex> {
    if sigma.degree() != p.n as usize {
        return Err(Error::ArityMismatch {
            expected: p.n as usize,
            got: sigma.degree(),
        });
    }
    v.validate(p)?;
    Ok(sigma.apply_vertex(v))
}

/// An ordered partition of the vertex set; cells keep ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Partition {
    cells: Vec<Vec<u32>>,
}

/// Per-cell neighbor counts of the first vertex of every cell, which for an
/// equitable partition is its quotient.
type Fingerprint = Vec<(usize, Vec<(u32, u32)>)>;

impl Partition {
    /// Smallest cell with more than one vertex, earliest on ties.
    fn target_cell(&self) -> Option<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].len() > 1)
            .min_by_key(|&i| (self.cells[i].len(), i))
    }

    fn cell_of(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0; n];
        for (i, c) in self.cells.iter().enumerate() {
            for &v in c {
                out[v as usize] = i as u32;
            }
        }
        out
    }

    /// Splits `v` off the front of its cell.
    fn individualize(&self, v: u32) -> Partition {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        for c in &self.cells {
            if c.contains(&v) && c.len() > 1 {
                cells.push(vec![v]);
                cells.push(c.iter().copied().filter(|&w| w != v).collect());
            } else {
                cells.push(c.clone());
            }
        }
        Partition { cells }
    }
}

fn signature(g: &Graph, cell_of: &[u32], v: usize) -> Vec<(u32, u32)> {
    let mut ids: Vec<u32> = g.neighbors(v).iter().map(|&w| cell_of[w as usize]).collect();
    ids.sort_unstable();
    let mut out: Vec<(u32, u32)> = Vec::new();
    for id in ids {
        match out.last_mut() {
            Some((c, k)) if *c == id => *k += 1,
            _ => out.push((id, 1)),
        }
    }
    out
}

/// Coarsest equitable refinement, splitting every cell by neighbor-count
/// signature and ordering the pieces by signature. The result depends only on
/// the input up to isomorphism.
fn refine(g: &Graph, mut part: Partition) -> Partition {
    loop {
        let cell_of = part.cell_of(g.vertex_count());
        let mut cells = Vec::with_capacity(part.cells.len());
        let mut split = false;
        for c in &part.cells {
            if c.len() == 1 {
                cells.push(c.clone());
                continue;
            }
            let mut groups: BTreeMap<Vec<(u32, u32)>, Vec<u32>> = BTreeMap::new();
            for &v in c {
                groups.entry(signature(g, &cell_of, v as usize)).or_default().push(v);
            }
            split |= groups.len() > 1;
            cells.extend(groups.into_values());
        }
        part = Partition { cells };
        if !split {
            return part;
        }
    }
}

fn fingerprint(g: &Graph, part: &Partition) -> Fingerprint {
    let cell_of = part.cell_of(g.vertex_count());
    part.cells
        .iter()
        .map(|c| (c.len(), signature(g, &cell_of, c[0] as usize)))
        .collect()
}

/// Result of the automorphism-group search.
#[derive(Clone, Debug)]
pub struct AutResult {
    /// The group order when `exact`, otherwise a lower bound.
    pub order: u128,
    pub exact: bool,
    /// Generators of the group found (all of `Aut` when `exact`).
    pub generators: Vec<VertexPermutation>,
    pub nodes: u64,
}

struct AutSearch<'a> {
    g: &'a Graph,
    ticker: Ticker,
    generators: Vec<VertexPermutation>,
}

impl AutSearch<'_> {
    /// An automorphism matching the individualized vertices of `left` to
    /// those of `right`: `Some(None)` when there is none, `None` when the
    /// budget ran out.
    fn extend(&mut self, left: &Partition, right: &Partition) -> Option<Option<VertexPermutation>> {
        if self.ticker.tick() {
            return None;
        }
        let Some(t) = left.target_cell() else {
            let mut images = vec![0u32; self.g.vertex_count()];
            for (l, r) in left.cells.iter().zip(&right.cells) {
                images[l[0] as usize] = r[0];
            }
            let perm = VertexPermutation::new(images).expect("discrete partitions give a bijection");
            return Some(is_automorphism(self.g, &perm).then_some(perm));
        };
        let x = left.cells[t][0];
        let l2 = refine(self.g, left.individualize(x));
        let want = fingerprint(self.g, &l2);
        for &y in &right.cells[t] {
            let r2 = refine(self.g, right.individualize(y));
            if fingerprint(self.g, &r2) != want {
                continue;
            }
            match self.extend(&l2, &r2)? {
                Some(perm) => return Some(Some(perm)),
                None => continue,
            }
        }
        Some(None)
    }

    /// Order of the pointwise stabilizer of the individualized vertices of
    /// `part`, and whether it is exact.
    fn stabilizer_order(&mut self, part: &Partition) -> (u128, bool) {
        let Some(t) = part.target_cell() else {
            return (1, true);
        };
        let cell = part.cells[t].clone();
        let base = cell[0];
        let fixed = refine(self.g, part.individualize(base));
        let (below, mut exact) = self.stabilizer_order(&fixed);
        // generators found so far fix every vertex individualized in `part`
        let mut known = self.orbit_of(base);
        let mut orbit = 1u128;
        if exact {
            for &w in &cell[1..] {
                if known.contains(&w) {
                    orbit += 1;
                    continue;
                }
                let other = refine(self.g, part.individualize(w));
                if fingerprint(self.g, &other) != fingerprint(self.g, &fixed) {
                    continue;
                }
                match self.extend(&fixed, &other) {
                    None => {
                        exact = false;
                        break;
                    }
                    Some(None) => {}
                    Some(Some(perm)) => {
                        self.generators.push(perm);
                        known = self.orbit_of(base);
                        orbit += 1;
                    }
                }
            }
        }
        (orbit * below, exact)
    }

    fn orbit_of(&self, v: u32) -> HashSet<u32> {
        let mut seen = HashSet::from([v]);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for s in &self.generators {
                let y = s.apply(x as usize) as u32;
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }
}

/// Order of the automorphism group by individualization and refinement.
///
/// Walks a chain of point stabilizers: at each level the orbit of the base
/// point is found by searching, for each candidate image, for one
/// automorphism realizing it. The automorphisms found generate the group.
/// When the budget runs out the product of the orbit parts confirmed so far is
/// returned as a lower bound.
pub fn aut_order(g: &Graph, budget: Budget) -> AutResult {
    let mut by_degree: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for v in 0..g.vertex_count() {
        by_degree.entry(g.degree(v)).or_default().push(v as u32);
    }
    let start = refine(
        g,
        Partition {
            cells: by_degree.into_values().collect(),
        },
    );
    let mut s = AutSearch {
        g,
        ticker: Ticker::new(budget),
        generators: Vec::new(),
    };
    let (order, exact) = s.stabilizer_order(&start);
    AutResult {
        order,
        exact,
        generators: s.generators,
        nodes: s.ticker.nodes,
    }
}

/// Every automorphism of `g`, sorted by image sequence.
pub fn automorphism_group(g: &Graph, budget: Budget, cap: usize) -> Result<Vec<VertexPermutation>> {
    let res = aut_order(g, budget);
    if !res.exact {
        return Err(Error::Domain("automorphism search ran out of budget".into()));
    }
    let all = enumerate_group(&res.generators, g.vertex_count(), cap)?;
    debug_assert_eq!(all.len() as u128, res.order);
    Ok(all)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairClass {
    /// Equal tails, different heads.
    TailType,
    /// Equal heads, tails sharing `r - 1` elements.
    HeadType,
    Other,
}

pub fn pair_classify(p: FamilyParams, u: HHVertex, v: HHVertex) -> Result<PairClass> {
    u.validate(p)?;
    v.validate(p)?;
    if u == v {
        return Err(Error::IdenticalVertices);
    }
    Ok(if u.tail == v.tail {
        PairClass::TailType
    } else if u.head == v.head && u.tail.intersection(v.tail).len() + 1 == p.r as usize {
        PairClass::HeadType
    } else {
        PairClass::Other
    })
}

/// Common-neighbor counts of a tail-type pair and of a head-type pair:
/// `r C(n-r-2, r-2)` and `(r-1) C(n-r-2, r-1)`.
pub fn common_count_formulas(p: FamilyParams) -> Result<(u64, u64)> {
    p.require_standard()?;
    p.require_connected()?;
    let (n, r) = (p.n as i64, p.r as i64);
    Ok((
        r as u64 * binom_i(n - r - 2, r - 2),
        (r - 1) as u64 * binom_i(n - r - 2, r - 1),
    ))
}

/// Recovers `(n, r)` with `r >= 2` and `n >= 2r + 1` from the vertex count and
/// valency of a regular graph.
pub fn infer_params(g: &Graph) -> Result<FamilyParams> {
    let degree = g
        .regular_degree()
        .ok_or_else(|| Error::Domain("graph is not regular".into()))? as u64;
    let count = g.vertex_count() as u64;
    let mut found = None;
    for r in 2u8..=21 {
        for n in 2 * r + 1..=64 {
            let p = FamilyParams { n, r };
            let vc = hh_vertex_count(p);
            if vc > count {
                break;
            }
            if vc == count && hh_valency(p) == degree {
                if found.is_some() {
                    return Err(Error::Domain("vertex count and valency are ambiguous".into()));
                }
                found = Some(p);
            }
        }
    }
    found.ok_or_else(|| Error::Domain(format!("no H(n:r) with n >= 2r+1 has {count} vertices of degree {degree}")))
}

fn union_of_rows(g: &Graph, s: &VertexSet) -> VertexSet {
    s.iter()
        .fold(VertexSet::new(g.vertex_count()), |acc, v| acc.union(&g.neighbor_set(v)))
}

/// Whether `u` and `v` have the same tail, decided from adjacency alone.
///
/// Steps: no common neighbor means different tails; a third vertex adjacent
/// to every common neighbor means different tails; off `n = 3r` the number
/// of common neighbors decides; at `n = 3r` vertices seeing a neighbor of each
/// decide (for `r = 2` through exclusive neighbors).
pub fn structural_same_tail(g: &Graph, u: usize, v: usize) -> Result<bool> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::IdenticalVertices);
    }
    let p = infer_params(g)?;
    structural_same_tail_with(g, p, u, v)
}

/// As [`structural_same_tail`] with the parameters already known.
pub fn structural_same_tail_with(g: &Graph, p: FamilyParams, u: usize, v: usize) -> Result<bool> {
    p.require_connected()?;
    if u == v {
        return Err(Error::IdenticalVertices);
    }
    let nu = g.neighbor_set(u);
    let nv = g.neighbor_set(v);
    let common = nu.intersection(&nv);
    if common.is_empty() {
        return Ok(false);
    }
    let mut dominators = VertexSet::full(g.vertex_count());
    for c in common.iter() {
        dominators = dominators.intersection(&g.neighbor_set(c));
    }
    dominators.remove(u);
    dominators.remove(v);
    if !dominators.is_empty() {
        return Ok(false);
    }
    let (n, r) = (p.n, p.r);
    if n != 3 * r {
        let (tail_count, _) = common_count_formulas(p)?;
        return Ok(common.size() as u64 == tail_count);
    }
    let sees_common = union_of_rows(g, &common);
    if r >= 3 {
        let both = union_of_rows(g, &nu).intersection(&union_of_rows(g, &nv));
        Ok(both.is_subset(&sees_common))
    } else {
        let both = union_of_rows(g, &nu.difference(&nv)).intersection(&union_of_rows(g, &nv.difference(&nu)));
        Ok(!both.intersects(&sees_common))
    }
}

/// Whether every listed automorphism maps vertices with equal tails to
/// vertices with equal tails.
pub fn tail_preservation_check(g: &Graph, autos: &[VertexPermutation]) -> Result<bool> {
    let labels = hh_labels(g)?;
    for (i, a) in autos.iter().enumerate() {
        if !is_automorphism(g, a) {
            return Err(Error::NotAutomorphism(i));
        }
    }
    let mut classes: BTreeMap<crate::subset::Subset, Vec<usize>> = BTreeMap::new();
    for (i, v) in labels.iter().enumerate() {
        classes.entry(v.tail).or_default().push(i);
    }
    Ok(autos.iter().all(|a| {
        classes.values().all(|class| {
            let t = labels[a.apply(class[0])].tail;
            class.iter().all(|&x| labels[a.apply(x)].tail == t)
        })
    }))
}

/// Index pairs of every tail-type and head-type pair of H(n:r), `u < v`.
pub fn typed_pairs(p: FamilyParams) -> Vec<(usize, usize, PairClass)> {
    let verts = hh_vertices(p);
    let mut out = Vec::new();
    for u in 0..verts.len() {
        for v in u + 1..verts.len() {
            let (a, b) = (verts[u], verts[v]);
            let class = if a.tail == b.tail {
                PairClass::TailType
            } else if a.head == b.head && a.tail.intersection(b.tail).len() + 1 == p.r as usize {
                PairClass::HeadType
            } else {
                continue;
            };
            out.push((u, v, class));
        }
    }
    out
}

/// `count` distinct pairs `u < v` of class OTHER drawn uniformly with a
/// ChaCha8 generator seeded by `seed`.
pub fn sample_other_pairs(p: FamilyParams, count: usize, seed: u64) -> Result<Vec<(usize, usize)>> {
    let verts = hh_vertices(p);
    let n = verts.len();
    let total = n * n.saturating_sub(1) / 2;
    if count > total {
        return Err(Error::Domain(format!("cannot draw {count} pairs out of {total}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * (count + 1) {
            return Err(Error::Domain("too few pairs of class OTHER".into()));
        }
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let (u, v) = (a.min(b), a.max(b));
        if u == v || pair_classify(p, verts[u], verts[v])? != PairClass::Other {
            continue;
        }
        if seen.insert((u, v)) {
            out.push((u, v));
        }
    }
    Ok(out)
}
