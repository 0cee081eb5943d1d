//! Independent sets: certificate checks, the explicit constructions for
//! H(n:r), the constructive recursion for their best size, and an exact
//! branch-and-bound for the independence number of any graph.

use crate::bitset::VertexSet;
use crate::budget::{Budget, Ticker};
use crate::error::{Error, Result};
use crate::families::{hh_vertex_count, hh_vertices, FamilyParams, HHVertex};
use crate::graph::Graph;
use crate::subset::{binom, Subset};

pub fn is_independent(g: &Graph, s: &VertexSet) -> Result<bool> {
    Ok(first_internal_edge(g, s)?.is_none())
}

/// First edge inside `s` in canonical order.
pub fn first_internal_edge(g: &Graph, s: &VertexSet) -> Result<Option<(usize, usize)>> {
    check_universe(g, s)?;
    for u in s.iter() {
        if let Some(&v) = g.neighbors(u).iter().find(|&&v| v as usize > u && s.contains(v as usize)) {
            return Ok(Some((u, v as usize)));
        }
    }
    Ok(None)
}

/// Independent, and every vertex outside has a neighbor inside.
pub fn is_maximal_independent(g: &Graph, s: &VertexSet) -> Result<bool> {
    if !is_independent(g, s)? {
        return Ok(false);
    }
    Ok((0..g.vertex_count())
        .filter(|v| !s.contains(*v))
        .all(|v| g.neighbors(v).iter().any(|&u| s.contains(u as usize))))
}

fn check_universe(g: &Graph, s: &VertexSet) -> Result<()> {
    if s.universe() != g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            index: s.universe().saturating_sub(1),
            count: g.vertex_count(),
        });
    }
    Ok(())
}

/// Vertices of H(n:r), in canonical indexing, that satisfy `pred`.
pub fn hh_select<F: Fn(HHVertex) -> bool>(p: FamilyParams, pred: F) -> VertexSet {
    let verts = hh_vertices(p);
    VertexSet::from_indices(
        verts.len(),
        verts.iter().enumerate().filter(|(_, v)| pred(**v)).map(|(i, _)| i),
    )
}

fn require_nonempty(p: FamilyParams) -> Result<()> {
    if p.n < p.r + 1 {
        Err(Error::EmptyVertexSet { n: p.n, r: p.r })
    } else {
        Ok(())
    }
}

/// All vertices with `t` in the tail: the preimage of a maximum independent
/// set of K(n:r) under the tail map.
pub fn kneser_type_set(p: FamilyParams, t: u8) -> Result<VertexSet> {
    require_nonempty(p)?;
    if !(1..=p.n).contains(&t) {
        return Err(Error::ElementOutOfRange { element: t, n: p.n });
    }
    Ok(hh_select(p, |v| v.tail.contains(t)))
}

/// All vertices whose head exceeds every tail element; one per (r+1)-subset.
pub fn recursive_type_set(p: FamilyParams) -> Result<VertexSet> {
    require_nonempty(p)?;
    Ok(hh_select(p, |v| v.tail.max_element().is_some_and(|m| v.head > m)))
}

/// Mirror image of [`recursive_type_set`]: head below every tail element.
pub fn reverse_recursive_type_set(p: FamilyParams) -> Result<VertexSet> {
    require_nonempty(p)?;
    Ok(hh_select(p, |v| v.tail.min_element().is_some_and(|m| v.head < m)))
}

/// Recursive-type vertices with head above `r^2`, plus the vertices over
/// `{1..r^2}` that have 1 in the tail.
fn hybrid_member(p: FamilyParams, v: HHVertex) -> bool {
    let sq = p.r * p.r;
    let above = v.head > sq && v.tail.max_element().is_some_and(|m| v.head > m);
    let below = v.support().is_subset_of(Subset::ground(sq)) && v.tail.contains(1);
    above || below
}

pub fn hybrid_set(p: FamilyParams) -> Result<VertexSet> {
    p.require_standard()?;
    Ok(hh_select(p, |v| hybrid_member(p, v)))
}

/// `|kneser_type_set| = (n - r) C(n-1, r-1)`.
pub fn kneser_type_size(p: FamilyParams) -> u64 {
    (p.n as u64).saturating_sub(p.r as u64) * binom((p.n as u64).saturating_sub(1), p.r as u64 - 1)
}

/// `|recursive_type_set| = C(n, r+1)`.
pub fn recursive_type_size(p: FamilyParams) -> u64 {
    binom(p.n as u64, p.r as u64 + 1)
}

/// `|hybrid_set|`: `C(n, r+1) + (r-1) C(r^2, r) / (r+1)` from `n = r^2` on;
/// below that the hybrid set is the Kneser-type set.
pub fn hybrid_size(p: FamilyParams) -> u64 {
    let r = p.r as u64;
    if (p.n as u64) < r * r {
        kneser_type_size(p)
    } else {
        recursive_type_size(p) + (r - 1) * binom(r * r, r) / (r + 1)
    }
}

/// The largest independent set of the Kneser-type/recursive-type family:
/// the Kneser-type set up to `n = r^2 + 1`, the hybrid set beyond.
pub fn best_constructed_set(p: FamilyParams) -> Result<VertexSet> {
    p.require_standard()?;
    let (n, r) = (p.n as u16, p.r as u16);
    if n <= r * r + 1 {
        kneser_type_set(p, 1)
    } else {
        hybrid_set(p)
    }
}

/// Size of the best constructed set, by the defining recursion
/// `a(n) = max{ r C(n-1, r), C(n-1, r) + a(n-1) }` from `a(2r) = |V(H(2r:r))| / 2`.
pub fn alpha_prime(p: FamilyParams) -> Result<u64> {
    p.require_standard()?;
    let r = p.r as u64;
    let mut a = hh_vertex_count(FamilyParams { n: p.r * 2, r: p.r }) / 2;
    for m in 2 * r + 1..=p.n as u64 {
        a = (r * binom(m - 1, r)).max(binom(m - 1, r) + a);
    }
    Ok(a)
}

/// Two disjoint independent sets of equal size: the hybrid set and its image
/// under the reversal `i -> n + 1 - i`.
pub fn disjoint_pair(p: FamilyParams) -> Result<(VertexSet, VertexSet)> {
    p.require_standard()?;
    let (n, r) = (p.n as u16, p.r as u16);
    if n < r * r + 1 {
        return Err(Error::Domain(format!("disjoint pair needs n >= r^2 + 1, got n={n} r={r}")));
    }
    let reversal: Vec<u8> = (1..=p.n).rev().collect();
    let plus = hybrid_set(p)?;
    let verts = hh_vertices(p);
    let index: std::collections::HashMap<HHVertex, usize> =
        verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let minus = VertexSet::from_indices(
        verts.len(),
        plus.iter().map(|i| {
            let v = verts[i];
            index[&HHVertex::new(reversal[v.head as usize - 1], v.tail.map(&reversal))]
        }),
    );
    Ok((plus, minus))
}

#[derive(Clone, Debug)]
pub struct AlphaResult {
    pub alpha: usize,
    pub witness: VertexSet,
    pub optimality_certified: bool,
    pub nodes: u64,
}

struct MisSearch<'a> {
    g: &'a Graph,
    stride: usize,
    best: usize,
    best_set: Vec<usize>,
    chosen: Vec<usize>,
    ticker: Ticker,
}

impl MisSearch<'_> {
    /// Greedy partition of `p` into cliques; the number of cliques bounds
    /// the independence number of `G[p]`.
    fn clique_cover_bound(&self, p: &[u64], limit: usize) -> usize {
        let mut rem = p.to_vec();
        let mut cand = vec![0u64; self.stride];
        let mut cliques = 0;
        for wi in 0..self.stride {
            while rem[wi] != 0 {
                let v = wi * 64 + rem[wi].trailing_zeros() as usize;
                rem[wi] &= rem[wi] - 1;
                cliques += 1;
                if cliques > limit {
                    return cliques;
                }
                for (c, (r, a)) in cand.iter_mut().zip(rem.iter().zip(self.g.row(v))) {
                    *c = r & a;
                }
                // grow the clique greedily from the lowest candidate
                let mut i = 0;
                while i < self.stride {
                    if cand[i] == 0 {
                        i += 1;
                        continue;
                    }
                    let u = i * 64 + cand[i].trailing_zeros() as usize;
                    rem[u / 64] &= !(1 << (u % 64));
                    for (c, a) in cand.iter_mut().zip(self.g.row(u)) {
                        *c &= a;
                    }
                }
            }
        }
        cliques
    }

    fn search(&mut self, p: Vec<u64>) {
        if self.ticker.tick() {
            return;
        }
        let size = self.chosen.len();
        if p.iter().all(|&w| w == 0) {
            if size > self.best {
                self.best = size;
                self.best_set = self.chosen.clone();
            }
            return;
        }
        let need = self.best.saturating_sub(size);
        if self.clique_cover_bound(&p, need) <= need {
            return;
        }
        // branch on a vertex of maximum degree inside p, lowest index on ties
        let mut pick = usize::MAX;
        let mut pick_deg = 0usize;
        for v in crate::bitset::Ones::new(&p) {
            let d: usize = p
                .iter()
                .zip(self.g.row(v))
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum();
            if pick == usize::MAX || d > pick_deg {
                pick = v;
                pick_deg = d;
            }
        }
        if pick_deg == 0 {
            // p is independent
            let members: Vec<usize> = crate::bitset::Ones::new(&p).collect();
            if size + members.len() > self.best {
                self.best = size + members.len();
                self.best_set = self.chosen.iter().copied().chain(members).collect();
            }
            return;
        }
        let mut include = p.clone();
        for (w, a) in include.iter_mut().zip(self.g.row(pick)) {
            *w &= !a;
        }
        include[pick / 64] &= !(1 << (pick % 64));
        self.chosen.push(pick);
        self.search(include);
        self.chosen.pop();

        let mut exclude = p;
        exclude[pick / 64] &= !(1 << (pick % 64));
        self.search(exclude);
    }
}

/// Minimum-degree greedy independent set, used to seed the exact search.
pub fn greedy_independent_set(g: &Graph) -> VertexSet {
    let n = g.vertex_count();
    let mut alive = VertexSet::full(n);
    let mut out = VertexSet::new(n);
    while let Some(v) = alive.iter().min_by_key(|&v| (g.neighbor_set(v).intersection_size(&alive), v)) {
        out.insert(v);
        alive.remove(v);
        for &u in g.neighbors(v) {
            alive.remove(u as usize);
        }
    }
    out
}

/// Exact independence number by branch and bound.
///
/// The bound is a greedy clique cover of the candidate set; branching takes
/// a maximum-degree candidate, trying inclusion first. When the budget runs
/// out the best set found so far is returned uncertified.
pub fn alpha_exact(g: &Graph, budget: Budget) -> AlphaResult {
    let seed = greedy_independent_set(g);
    let mut s = MisSearch {
        g,
        stride: g.stride(),
        best: seed.size(),
        best_set: seed.to_vec(),
        chosen: Vec::new(),
        ticker: Ticker::new(budget),
    };
    s.search(VertexSet::full(g.vertex_count()).words().to_vec());
    AlphaResult {
        alpha: s.best,
        witness: VertexSet::from_indices(g.vertex_count(), s.best_set),
        optimality_certified: !s.ticker.exhausted,
        nodes: s.ticker.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::hh_graph;

    fn p(n: u8, r: u8) -> FamilyParams {
        FamilyParams::new(n, r).unwrap()
    }

    /// Exhaustive maximum independent set for tiny graphs.
    fn brute_alpha(g: &Graph) -> usize {
        let n = g.vertex_count();
        assert!(n <= 20);
        (0u32..1 << n)
            .filter(|m| g.edges().all(|(u, v)| m >> u & 1 == 0 || m >> v & 1 == 0))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn constructed_set_sizes() {
        assert_eq!(kneser_type_set(p(5, 2), 1).unwrap().size(), 12);
        assert_eq!(kneser_type_set(p(6, 2), 1).unwrap().size(), 20);
        assert_eq!(kneser_type_set(p(8, 3), 1).unwrap().size(), 105);
        assert_eq!(recursive_type_set(p(6, 2)).unwrap().size(), 20);
        assert_eq!(recursive_type_set(p(7, 2)).unwrap().size(), 35);
        assert_eq!(recursive_type_set(p(3, 2)).unwrap().size(), 1);
        assert_eq!(best_constructed_set(p(6, 2)).unwrap().size(), 22);
        assert_eq!(best_constructed_set(p(8, 2)).unwrap().size(), 58);
        assert_eq!(best_constructed_set(p(7, 3)).unwrap().size(), 60);
    }

    #[test]
    fn size_formulas_match_sets() {
        for (n, r) in [(4, 2), (5, 2), (6, 2), (9, 2), (6, 3), (8, 3), (9, 3), (10, 3), (8, 4)] {
            let q = p(n, r);
            assert_eq!(kneser_type_set(q, 1).unwrap().size() as u64, kneser_type_size(q));
            assert_eq!(recursive_type_set(q).unwrap().size() as u64, recursive_type_size(q));
            assert_eq!(hybrid_set(q).unwrap().size() as u64, hybrid_size(q));
        }
    }

    #[test]
    fn element_out_of_range() {
        assert!(matches!(
            kneser_type_set(p(5, 2), 6),
            Err(Error::ElementOutOfRange { element: 6, n: 5 })
        ));
        assert!(kneser_type_set(p(5, 2), 0).is_err());
    }

    #[test]
    fn alpha_prime_values() {
        assert_eq!(alpha_prime(p(4, 2)).unwrap(), 6);
        assert_eq!(alpha_prime(p(6, 2)).unwrap(), 22);
        assert_eq!(alpha_prime(p(8, 3)).unwrap(), 105);
        assert!(alpha_prime(p(5, 3)).is_err());
    }

    #[test]
    fn disjoint_pair_examples() {
        let (a, b) = disjoint_pair(p(6, 2)).unwrap();
        assert_eq!((a.size(), b.size()), (22, 22));
        assert!(!a.intersects(&b));
        let (a, b) = disjoint_pair(p(5, 2)).unwrap();
        assert_eq!((a.size(), b.size()), (12, 12));
        assert!(!a.intersects(&b));
        assert!(disjoint_pair(p(4, 2)).is_err());
    }

    #[test]
    fn maximality_examples() {
        let g = hh_graph(p(6, 2)).unwrap();
        let t = kneser_type_set(p(6, 2), 6).unwrap();
        assert!(is_maximal_independent(&g, &t).unwrap());
        let h = best_constructed_set(p(6, 2)).unwrap();
        assert!(is_maximal_independent(&g, &h).unwrap());
        let empty = VertexSet::new(g.vertex_count());
        assert!(is_independent(&g, &empty).unwrap());
        assert!(!is_maximal_independent(&g, &empty).unwrap());
    }

    #[test]
    fn non_independent_set_reports_edge() {
        let g = hh_graph(p(5, 2)).unwrap();
        let (u, v) = g.edges().next().unwrap();
        let s = VertexSet::from_indices(g.vertex_count(), [u, v]);
        assert_eq!(first_internal_edge(&g, &s).unwrap(), Some((u, v)));
    }

    #[test]
    fn exact_matches_brute_force_on_small_graphs() {
        let petersen = crate::families::kneser_graph(p(5, 2)).unwrap();
        let r = alpha_exact(&petersen, Budget::unlimited());
        assert_eq!(r.alpha, brute_alpha(&petersen));
        assert_eq!(r.alpha, 4);
        assert!(r.optimality_certified);

        let g = hh_graph(p(4, 2)).unwrap();
        let r = alpha_exact(&g, Budget::unlimited());
        assert_eq!(r.alpha, brute_alpha(&g));
        assert_eq!(r.alpha, 6);
        assert!(is_independent(&g, &r.witness).unwrap());
        assert_eq!(r.witness.size(), 6);
    }

    #[test]
    fn exhausted_budget_still_returns_independent_witness() {
        let g = hh_graph(p(8, 2)).unwrap();
        let r = alpha_exact(&g, Budget::seconds(0.0));
        assert!(!r.optimality_certified);
        assert!(is_independent(&g, &r.witness).unwrap());
        assert_eq!(r.witness.size(), r.alpha);
    }
}
