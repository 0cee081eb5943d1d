//! Vertex maps between graphs: checking, the head and tail projections of
//! H(n:r), embeddings into larger H graphs, paths in Kneser graphs, and the
//! orbit map of a vertex-transitive graph into a Kneser graph.

use std::collections::HashMap;

use num_rational::Ratio;

use crate::bitset::VertexSet;
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::families::{hh_graph, hh_vertices, subset_labels, FamilyParams, HHVertex};
use crate::graph::Graph;
use crate::group::{transitive_group, VertexPermutation, DEFAULT_GROUP_CAP};
use crate::independence::first_internal_edge;
use crate::subset::{lex_subsets, Subset};

/// A total map from source vertex indices to target vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    pub source: String,
    pub target: String,
    pub map: Vec<u32>,
}

impl VertexMap {
    pub fn apply(&self, v: usize) -> usize {
        self.map[v] as usize
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.map.len());
        self.map.iter().all(|t| seen.insert(*t))
    }

    fn check_shape(&self, source: &Graph, target: &Graph) -> Result<()> {
        if self.map.len() != source.vertex_count() {
            return Err(Error::LabelCount {
                expected: source.vertex_count(),
                got: self.map.len(),
            });
        }
        match self.map.iter().find(|&&t| t as usize >= target.vertex_count()) {
            Some(&t) => Err(Error::VertexOutOfRange {
                index: t as usize,
                count: target.vertex_count(),
            }),
            None => Ok(()),
        }
    }
}

/// Outcome of a homomorphism check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomCheck {
    Valid,
    /// First source edge (canonical order) whose image is not an edge.
    Violation(usize, usize),
}

impl HomCheck {
    pub fn is_valid(self) -> bool {
        self == HomCheck::Valid
    }
}

pub fn verify_hom(source: &Graph, target: &Graph, m: &VertexMap) -> Result<HomCheck> {
    m.check_shape(source, target)?;
    Ok(source
        .edges()
        .find(|&(u, v)| !target.adjacent(m.apply(u), m.apply(v)))
        .map_or(HomCheck::Valid, |(u, v)| HomCheck::Violation(u, v)))
}

/// First non-adjacent source pair whose images are adjacent, if any.
pub fn induced_violation(source: &Graph, target: &Graph, m: &VertexMap) -> Result<Option<(usize, usize)>> {
    m.check_shape(source, target)?;
    let n = source.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            if !source.adjacent(u, v) && target.adjacent(m.apply(u), m.apply(v)) {
                return Ok(Some((u, v)));
            }
        }
    }
    Ok(None)
}

fn hh_index(p: FamilyParams) -> HashMap<HHVertex, u32> {
    hh_vertices(p).into_iter().enumerate().map(|(i, v)| (v, i as u32)).collect()
}

/// Checks a map into H(n:r) given by vertex labels, using the adjacency rule
/// directly instead of building the target graph.
fn check_hh_images(source: &Graph, images: &[HHVertex]) -> Result<()> {
    match source.edges().find(|&(u, v)| !images[u].adjacent(images[v])) {
        Some((u, v)) => Err(Error::NotHomomorphism(u, v)),
        None => Ok(()),
    }
}

/// `(h, T) -> h` into the complete graph on `{1..n}`.
pub fn head_hom(p: FamilyParams) -> Result<VertexMap> {
    p.require_standard()?;
    Ok(VertexMap {
        source: format!("H{p}"),
        target: format!("K{}", p.n),
        map: hh_vertices(p).iter().map(|v| v.head as u32 - 1).collect(),
    })
}

/// `(h, T) -> T` into the Kneser graph K(n:r).
pub fn tail_hom(p: FamilyParams) -> Result<VertexMap> {
    p.require_standard()?;
    let index: HashMap<Subset, u32> = lex_subsets(p.n, p.r as usize)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i as u32))
        .collect();
    Ok(VertexMap {
        source: format!("H{p}"),
        target: format!("K{p}"),
        map: hh_vertices(p).iter().map(|v| index[&v.tail]).collect(),
    })
}

/// `(h, T) -> (h, T ∪ {c(h, T)})` into H(n + m : r + 1), where the colors of
/// `c` are the elements `n+1..=n+m` and `m` is the number of colors.
pub fn tail_growth_embed(p: FamilyParams, c: &Coloring) -> Result<VertexMap> {
    let g = hh_graph(p)?;
    c.verify(&g)?;
    let m = c.color_count;
    for &color in &c.assignment {
        if color <= p.n as u32 {
            return Err(Error::ColorCollision { color, n: p.n });
        }
        if color > p.n as u32 + m {
            return Err(Error::Domain(format!(
                "color {color} outside {}..={}",
                p.n as u32 + 1,
                p.n as u32 + m
            )));
        }
    }
    let top = p.n as u32 + m;
    if top > crate::subset::MAX_GROUND as u32 {
        return Err(Error::Domain(format!("target ground set {top} exceeds 64")));
    }
    let q = FamilyParams::new(top as u8, p.r + 1)?;
    let verts = hh_vertices(p);
    let images: Vec<HHVertex> = verts
        .iter()
        .zip(&c.assignment)
        .map(|(v, &color)| HHVertex::new(v.head, v.tail.with(color as u8)))
        .collect();
    check_hh_images(&g, &images)?;
    let index = hh_index(q);
    let out = VertexMap {
        source: format!("H{p}"),
        target: format!("H{q}"),
        map: images.iter().map(|v| index[v]).collect(),
    };
    if !out.is_injective() {
        return Err(Error::Domain("tail growth map is not injective".into()));
    }
    Ok(out)
}

/// `{x1 < x2 < x3} -> (x2, {x1, x3})` from the shift graph into H(n:2).
///
/// Checked to be an injective homomorphism onto an induced subgraph whose
/// complement is covered by the vertices with head above or below the whole
/// tail.
pub fn shift_embed(n: u8) -> Result<VertexMap> {
    let source = crate::families::shift_graph(n)?;
    let p = FamilyParams::new(n, 2)?;
    let triples = subset_labels(&source)?;
    let images: Vec<HHVertex> = triples
        .iter()
        .map(|t| {
            let x = t.to_vec();
            HHVertex::of(x[1], &[x[0], x[2]])
        })
        .collect();
    check_hh_images(&source, &images)?;
    for u in 0..images.len() {
        for v in u + 1..images.len() {
            if !source.adjacent(u, v) && images[u].adjacent(images[v]) {
                return Err(Error::Domain(format!("image of {u},{v} is an extra edge")));
            }
        }
    }
    let index = hh_index(p);
    let out = VertexMap {
        source: format!("S{n}"),
        target: format!("H{p}"),
        map: images.iter().map(|v| index[v]).collect(),
    };
    if !out.is_injective() {
        return Err(Error::Domain("shift embedding is not injective".into()));
    }
    let image: std::collections::HashSet<&HHVertex> = images.iter().collect();
    let uncovered = hh_vertices(p).into_iter().find(|v| {
        let (lo, hi) = (v.tail.min_element().unwrap(), v.tail.max_element().unwrap());
        !image.contains(v) && !(v.head > hi || v.head < lo)
    });
    if let Some(v) = uncovered {
        return Err(Error::Domain(format!("{v} lies outside the image and both covering sets")));
    }
    Ok(out)
}

/// Lifts a subgraph of K(n:r) with maximum degree `Δ` satisfying
/// `Δ (n - 2r) < n - r` into H(n:r) by giving each subset `X` as head the
/// smallest element common to all its neighbors (the smallest element outside
/// `X` when it has none).
pub fn lift_kneser_subgraph(p: FamilyParams, sub: &Graph) -> Result<VertexMap> {
    p.require_connected()?;
    let sets = subset_labels(sub)?;
    for s in &sets {
        if s.len() != p.r as usize || !s.is_subset_of(p.ground()) {
            return Err(Error::InvalidVertex(format!("{{{s}}} is not an {}-subset of 1..{}", p.r, p.n)));
        }
    }
    if let Some((u, v)) = sub.edges().find(|&(u, v)| !sets[u].is_disjoint(sets[v])) {
        return Err(Error::NotHomomorphism(u, v));
    }
    let (num, den) = ((p.n - p.r) as u64, (p.n - 2 * p.r) as u64);
    let delta = sub.max_degree();
    if delta as u64 * den >= num {
        return Err(Error::DegreeCondition {
            max_degree: delta,
            bound_num: num,
            bound_den: den,
        });
    }
    let images: Vec<HHVertex> = (0..sub.vertex_count())
        .map(|x| {
            let common = sub
                .neighbors(x)
                .iter()
                .fold(p.ground().difference(sets[x]), |acc, &y| acc.intersection(sets[y as usize]));
            let head = common
                .min_element()
                .expect("the degree bound leaves a common element");
            HHVertex::new(head, sets[x])
        })
        .collect();
    check_hh_images(sub, &images)?;
    let index = hh_index(p);
    Ok(VertexMap {
        source: format!("subgraph of K{p}"),
        target: format!("H{p}"),
        map: images.iter().map(|v| index[v]).collect(),
    })
}

/// A walk `X = T_0, T_1, ..., T_{2m} = Y` swapping up to `n - 2r` elements of
/// `X \ Y` for elements of `Y \ X` every two steps.
fn even_path(n: u8, r: usize, x: Subset, y: Subset) -> Vec<Subset> {
    let k = n as usize - 2 * r;
    let c = x.intersection(y);
    let a = x.difference(c).to_vec();
    let b = y.difference(c).to_vec();
    let d = Subset::ground(n).difference(x.union(y)).to_vec();
    let t = a.len();
    let mut path = vec![x];
    let mut i = 1;
    while *path.last().unwrap() != y {
        let swapped = (i * k).min(t);
        let odd: Vec<u8> = d
            .iter()
            .chain(&a[..((i - 1) * k).min(t)])
            .chain(&b[swapped..])
            .copied()
            .take(r)
            .collect();
        path.push(Subset::from_elements(odd));
        let even = Subset::from_elements(b[..swapped].iter().chain(&a[swapped..]).copied()).union(c);
        path.push(even);
        i += 1;
    }
    path
}

/// A shortest path between distinct vertices of K(n:r), `n >= 2r + 1`, of
/// length `min{2 ceil((r - s)/k), 2 ceil(s/k) + 1}` with `s = |X ∩ Y|` and
/// `k = n - 2r`.
pub fn kneser_path(n: u8, r: u8, x: Subset, y: Subset) -> Result<Vec<Subset>> {
    let p = FamilyParams::new(n, r)?;
    p.require_connected()?;
    for s in [x, y] {
        if s.len() != r as usize || !s.is_subset_of(p.ground()) {
            return Err(Error::InvalidVertex(format!("{{{s}}} is not an {r}-subset of 1..{n}")));
        }
    }
    if x == y {
        return Err(Error::IdenticalVertices);
    }
    let r = r as usize;
    let even = even_path(n, r, x, y);
    let c = x.intersection(y);
    let s = c.len();
    let d = Subset::ground(n).difference(x.union(y));
    let detour = y.difference(c).union(Subset::from_elements(d.elements().take(s)));
    let mut odd = vec![x];
    if detour == y {
        odd.push(y);
    } else {
        odd.extend(even_path(n, r, detour, y));
    }
    Ok(if odd.len() < even.len() { odd } else { even })
}

/// Sets of group elements: vertex `x` goes to `{g : x ∈ g(S)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetValuedMap {
    pub source: String,
    /// `n'`, the group order.
    pub ground_size: usize,
    /// `r'`, the common image size.
    pub image_size: usize,
    /// Image of each vertex as a set of group-element indices.
    pub images: Vec<VertexSet>,
}

impl SetValuedMap {
    /// `n' / r'`.
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.ground_size as u64, self.image_size as u64)
    }

    /// Every image has `r'` elements and adjacent vertices get disjoint images.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if self.images.len() != g.vertex_count() {
            return Err(Error::LabelCount {
                expected: g.vertex_count(),
                got: self.images.len(),
            });
        }
        if let Some(v) = self.images.iter().position(|s| s.size() != self.image_size) {
            return Err(Error::Domain(format!("image of vertex {v} has the wrong size")));
        }
        match g.edges().find(|&(u, v)| self.images[u].intersects(&self.images[v])) {
            Some((u, v)) => Err(Error::NotHomomorphism(u, v)),
            None => Ok(()),
        }
    }
}

/// The orbit homomorphism into K(|G| : |G||S|/|V|), group elements indexed
/// in the sorted order of [`crate::group::enumerate_group`].
pub fn orbit_hom(g: &Graph, generators: &[VertexPermutation], s: &VertexSet) -> Result<SetValuedMap> {
    if let Some((u, v)) = first_internal_edge(g, s)? {
        return Err(Error::NotIndependent(u, v));
    }
    let group = transitive_group(g, generators, DEFAULT_GROUP_CAP)?;
    let n = g.vertex_count();
    let mut images = vec![VertexSet::new(group.len()); n];
    for (i, perm) in group.iter().enumerate() {
        for v in s.iter() {
            images[perm.apply(v)].insert(i);
        }
    }
    let out = SetValuedMap {
        source: format!("graph on {n} vertices"),
        ground_size: group.len(),
        image_size: group.len() * s.size() / n,
        images,
    };
    out.verify(g)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::chi_exact;
    use crate::families::{complete_graph, kneser_graph, shift_graph};
    use crate::group::symmetric_vertex_generators;
    use crate::independence::{hybrid_set, kneser_type_set};
    use crate::Budget;

    fn fp(n: u8, r: u8) -> FamilyParams {
        FamilyParams::new(n, r).unwrap()
    }

    fn kneser_sub(sets: &[&[u8]], edges: &[(usize, usize)]) -> Graph {
        Graph::new(sets.len(), edges)
            .unwrap()
            .with_labels(
                sets.iter()
                    .map(|s| crate::graph::Label::Subset(Subset::from_elements(s.iter().copied())))
                    .collect(),
            )
            .unwrap()
    }

    #[test]
    fn projections() {
        let p = fp(5, 2);
        let g = hh_graph(p).unwrap();
        let id = VertexMap {
            source: "H".into(),
            target: "H".into(),
            map: (0..30).collect(),
        };
        assert!(verify_hom(&g, &g, &id).unwrap().is_valid());
        let head = head_hom(p).unwrap();
        assert!(verify_hom(&g, &complete_graph(5).unwrap(), &head).unwrap().is_valid());
        let tail = tail_hom(p).unwrap();
        assert!(verify_hom(&g, &kneser_graph(p).unwrap(), &tail).unwrap().is_valid());
        let hit: std::collections::HashSet<u32> = tail.map.iter().copied().collect();
        assert_eq!(hit.len(), 10);
        let constant = VertexMap {
            map: vec![0; 30],
            ..id
        };
        let first = g.neighbors(0)[0] as usize;
        assert_eq!(verify_hom(&g, &g, &constant).unwrap(), HomCheck::Violation(0, first));
    }

    #[test]
    fn tail_map_on_bipartite_case_hits_a_matching() {
        let p = fp(4, 2);
        let g = hh_graph(p).unwrap();
        let k = kneser_graph(p).unwrap();
        let m = tail_hom(p).unwrap();
        assert!(verify_hom(&g, &k, &m).unwrap().is_valid());
        let image_edges: std::collections::HashSet<(usize, usize)> = g
            .edges()
            .map(|(u, v)| (m.apply(u).min(m.apply(v)), m.apply(u).max(m.apply(v))))
            .collect();
        assert_eq!(image_edges.len(), 3);
        assert_eq!(k.edge_count(), 3);
    }

    #[test]
    fn tail_growth() {
        for (n, target) in [(4u8, 6u8), (5, 8)] {
            let p = fp(n, 2);
            let g = hh_graph(p).unwrap();
            let c = chi_exact(&g, Budget::unlimited()).coloring;
            let lifted = Coloring::new(c.assignment.iter().map(|x| x + n as u32 + 1).collect());
            let m = tail_growth_embed(p, &lifted).unwrap();
            let big = hh_graph(fp(target, 3)).unwrap();
            assert!(verify_hom(&g, &big, &m).unwrap().is_valid());
            assert!(m.is_injective());
        }
        let bad = Coloring::new(vec![5; 12]);
        assert!(tail_growth_embed(fp(4, 2), &bad).is_err());
        let g = hh_graph(fp(4, 2)).unwrap();
        let c = chi_exact(&g, Budget::unlimited()).coloring;
        let low = Coloring::new(c.assignment.iter().map(|x| x + 4).collect());
        assert_eq!(
            tail_growth_embed(fp(4, 2), &low).unwrap_err(),
            Error::ColorCollision { color: 4, n: 4 }
        );
    }

    #[test]
    fn shift_embeddings() {
        for n in 3..=7u8 {
            let m = shift_embed(n).unwrap();
            let s = shift_graph(n).unwrap();
            let h = hh_graph(fp(n, 2)).unwrap();
            assert!(verify_hom(&s, &h, &m).unwrap().is_valid());
            assert_eq!(induced_violation(&s, &h, &m).unwrap(), None);
        }
        let m = shift_embed(3).unwrap();
        assert_eq!(hh_vertices(fp(3, 2))[m.apply(0)], HHVertex::of(2, &[1, 3]));
        assert_eq!(shift_graph(5).unwrap().edge_count(), 5);
    }

    #[test]
    fn lifting() {
        let cycle = kneser_sub(&[&[1, 2], &[3, 4], &[5, 1], &[2, 3], &[4, 5]], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let p = fp(5, 2);
        let h = hh_graph(p).unwrap();
        let m = lift_kneser_subgraph(p, &cycle).unwrap();
        assert!(verify_hom(&cycle, &h, &m).unwrap().is_valid());
        let matching = kneser_sub(
            &[&[1, 2], &[3, 5], &[3, 4], &[2, 5], &[1, 5], &[2, 4], &[2, 3], &[1, 4], &[4, 5], &[1, 3]],
            &[(0, 1), (2, 3), (4, 5), (6, 7), (8, 9)],
        );
        let m = lift_kneser_subgraph(p, &matching).unwrap();
        assert!(verify_hom(&matching, &h, &m).unwrap().is_valid());
        let petersen = kneser_graph(p).unwrap();
        assert_eq!(
            lift_kneser_subgraph(p, &petersen).unwrap_err(),
            Error::DegreeCondition {
                max_degree: 3,
                bound_num: 3,
                bound_den: 1
            }
        );
    }

    #[test]
    fn kneser_paths_are_shortest() {
        for (n, r) in [(7u8, 3u8), (9, 4), (7, 2), (8, 3)] {
            let k = kneser_graph(fp(n, r)).unwrap();
            let sets = subset_labels(&k).unwrap();
            for x in 0..sets.len() {
                let dist = k.bfs(x);
                for y in 0..sets.len() {
                    if x == y {
                        continue;
                    }
                    let path = kneser_path(n, r, sets[x], sets[y]).unwrap();
                    assert_eq!(path[0], sets[x]);
                    assert_eq!(*path.last().unwrap(), sets[y]);
                    assert!(path.iter().all(|s| s.len() == r as usize));
                    assert!(path.windows(2).all(|w| w[0].is_disjoint(w[1])));
                    assert_eq!(Some(path.len() as u32 - 1), dist[y]);
                }
            }
        }
        let s = |v: &[u8]| Subset::from_elements(v.iter().copied());
        assert_eq!(kneser_path(7, 3, s(&[1, 2, 3]), s(&[4, 5, 6])).unwrap().len(), 2);
        assert_eq!(kneser_path(7, 3, s(&[1, 2, 3]), s(&[1, 2, 4])).unwrap().len(), 3);
        assert_eq!(kneser_path(7, 3, s(&[1, 2, 3]), s(&[1, 4, 5])).unwrap().len(), 4);
        assert!(kneser_path(6, 3, s(&[1, 2, 3]), s(&[4, 5, 6])).is_err());
    }

    #[test]
    fn orbit_maps() {
        for (n, s, r_prime, ratio) in [
            (4u8, kneser_type_set(fp(4, 2), 1).unwrap(), 12, Ratio::new(2, 1)),
            (5, kneser_type_set(fp(5, 2), 1).unwrap(), 48, Ratio::new(5, 2)),
            (6, hybrid_set(fp(6, 2)).unwrap(), 264, Ratio::new(30, 11)),
        ] {
            let g = hh_graph(fp(n, 2)).unwrap();
            let gens = symmetric_vertex_generators(&g, n).unwrap();
            let m = orbit_hom(&g, &gens, &s).unwrap();
            assert_eq!(m.image_size, r_prime);
            assert_eq!(m.ratio(), ratio);
            m.verify(&g).unwrap();
        }
    }
}
