//! Permutations of the ground set, induced permutations of vertex indices,
//! group closure and orbit computation.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::families::{label_index, HHVertex};
use crate::graph::{Graph, Label};

/// Default enumeration cap: 10! elements.
pub const DEFAULT_GROUP_CAP: usize = 3_628_800;

/// A permutation of `{1..n}`; `images[e - 1]` is the image of `e`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let i = (x as usize).wrapping_sub(1);
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: u8) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn transposition(n: u8, a: u8, b: u8) -> Result<Self> {
        let mut images: Vec<u8> = (1..=n).collect();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::InvalidPermutation(format!("transposition ({a} {b}) on {n}")));
        }
        images.swap(a as usize - 1, b as usize - 1);
        Ok(Permutation { images })
    }

    /// `1 -> 2 -> ... -> n -> 1`.
    pub fn long_cycle(n: u8) -> Self {
        Permutation {
            images: (1..=n).map(|e| e % n + 1).collect(),
        }
    }

    /// `i -> n + 1 - i`.
    pub fn reversal(n: u8) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, e: u8) -> u8 {
        self.images[e as usize - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&e| self.apply(e)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &e) in self.images.iter().enumerate() {
            images[e as usize - 1] = i as u8 + 1;
        }
        Permutation { images }
    }

    /// Image of an H(n:r) vertex under the coordinate-wise action.
    pub fn apply_vertex(&self, v: HHVertex) -> HHVertex {
        HHVertex::new(self.apply(v.head), v.tail.map(&self.images))
    }

    pub fn apply_label(&self, l: Label) -> Label {
        match l {
            Label::Hh(v) => Label::Hh(self.apply_vertex(v)),
            Label::Subset(s) => Label::Subset(s.map(&self.images)),
            Label::Element(e) => Label::Element(self.apply(e)),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

/// A transposition and the long cycle, which generate `S_n`.
pub fn symmetric_generators(n: u8) -> Vec<Permutation> {
    if n < 2 {
        return vec![Permutation::identity(n)];
    }
    vec![
        Permutation::transposition(n, 1, 2).expect("valid transposition"),
        Permutation::long_cycle(n),
    ]
}

/// A permutation of vertex indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VertexPermutation(Vec<u32>);

impl VertexPermutation {
    pub fn identity(n: usize) -> Self {
        VertexPermutation((0..n as u32).collect())
    }

    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("vertex map is not a bijection on {n} vertices")));
            }
            seen[x] = true;
        }
        Ok(VertexPermutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        VertexPermutation(other.0.iter().map(|&v| self.0[v as usize]).collect())
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut out = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            out[v as usize] = i as u32;
        }
        VertexPermutation(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v as usize)
    }
}

pub fn is_automorphism(g: &Graph, perm: &VertexPermutation) -> bool {
    perm.len() == g.vertex_count()
        && (0..g.vertex_count()).all(|u| {
            g.degree(u) == g.degree(perm.apply(u))
                && g.neighbors(u).iter().all(|&v| g.adjacent(perm.apply(u), perm.apply(v as usize)))
        })
}

/// The permutation of vertex indices induced by a ground-set permutation on a
/// labeled family graph.
pub fn induced_vertex_permutation(g: &Graph, sigma: &Permutation) -> Result<VertexPermutation> {
    let labels = g.labels().ok_or(Error::MissingLabels("family labels"))?;
    let top = labels
        .iter()
        .map(|l| match l {
            Label::Hh(v) => v.support().max_element().unwrap_or(0),
            Label::Subset(s) => s.max_element().unwrap_or(0),
            Label::Element(e) => *e,
        })
        .max()
        .unwrap_or(0);
    if (top as usize) > sigma.degree() {
        return Err(Error::ArityMismatch {
            expected: top as usize,
            got: sigma.degree(),
        });
    }
    let index = label_index(g);
    let images = labels
        .iter()
        .map(|l| {
            let img = sigma.apply_label(*l);
            index.get(&img).map(|&i| i as u32).ok_or(Error::ArityMismatch {
                expected: top as usize,
                got: sigma.degree(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VertexPermutation(images))
}

/// Induced permutations for the standard generators of `S_n`.
pub fn symmetric_vertex_generators(g: &Graph, n: u8) -> Result<Vec<VertexPermutation>> {
    symmetric_generators(n)
        .iter()
        .map(|s| induced_vertex_permutation(g, s))
        .collect()
}

/// All elements of the group generated by `gens`, by breadth-first closure,
/// sorted lexicographically by image sequence.
pub fn enumerate_group(gens: &[VertexPermutation], degree: usize, cap: usize) -> Result<Vec<VertexPermutation>> {
    let id = VertexPermutation::identity(degree);
    let mut seen: HashSet<VertexPermutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::GroupCapExceeded { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut all: Vec<_> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

/// Checks that `gens` are automorphisms of `g` generating a vertex-transitive
/// group, then enumerates that group.
pub fn transitive_group(g: &Graph, gens: &[VertexPermutation], cap: usize) -> Result<Vec<VertexPermutation>> {
    for (i, s) in gens.iter().enumerate() {
        if !is_automorphism(g, s) {
            return Err(Error::NotAutomorphism(i));
        }
    }
    let orbit_total = orbits(gens, g.vertex_count()).len();
    if orbit_total != 1 {
        return Err(Error::NotTransitive { orbits: orbit_total });
    }
    enumerate_group(gens, g.vertex_count(), cap)
}

/// Union-find over `0..len`.
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    classes: usize,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
            size: vec![1; len],
            classes: len,
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn merge(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.classes -= 1;
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    /// Classes sorted internally and by smallest member.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..self.parent.len() {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort();
        out
    }
}

/// Orbits of the group generated by `gens` on `0..degree`.
pub fn orbits(gens: &[VertexPermutation], degree: usize) -> Vec<Vec<usize>> {
    let mut ds = DisjointSets::new(degree);
    for g in gens {
        for v in 0..degree {
            ds.merge(v, g.apply(v));
        }
    }
    ds.classes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{hh_graph, FamilyParams};

    #[test]
    fn permutation_algebra() {
        let s = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(s.apply(1), 2);
        assert_eq!(s.compose(&s.inverse()), Permutation::identity(3));
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert_eq!(Permutation::reversal(4).images(), &[4, 3, 2, 1]);
        assert_eq!(Permutation::long_cycle(3).images(), &[2, 3, 1]);
    }

    #[test]
    fn symmetric_group_closure_sizes() {
        for n in 1..=5u8 {
            let g = crate::families::complete_graph(n).unwrap();
            let gens = symmetric_vertex_generators(&g, n).unwrap();
            let all = enumerate_group(&gens, n as usize, DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(all.len(), (1..=n as usize).product::<usize>());
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            assert!(all[0].is_identity());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = crate::families::complete_graph(5).unwrap();
        let gens = symmetric_vertex_generators(&g, 5).unwrap();
        assert_eq!(
            enumerate_group(&gens, 5, 100).unwrap_err(),
            Error::GroupCapExceeded { cap: 100 }
        );
    }

    #[test]
    fn induced_permutations_are_automorphisms() {
        let g = hh_graph(FamilyParams::new(5, 2).unwrap()).unwrap();
        for s in symmetric_generators(5) {
            let vp = induced_vertex_permutation(&g, &s).unwrap();
            assert!(is_automorphism(&g, &vp));
        }
        let mut bogus: Vec<u32> = (0..30).collect();
        bogus.swap(0, 1);
        let bogus = VertexPermutation::new(bogus).unwrap();
        // (3,{1,2}) and (4,{1,2}) are not twins
        assert!(!is_automorphism(&g, &bogus));
    }

    #[test]
    fn union_find_orbits() {
        let p = VertexPermutation::new(vec![1, 0, 3, 2, 4]).unwrap();
        assert_eq!(orbits(&[p], 5), vec![vec![0, 1], vec![2, 3], vec![4]]);
    }
}
