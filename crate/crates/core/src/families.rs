//! Graph families: Häggkvist–Hell graphs H(n:r), Kneser graphs K(n:r),
//! complete graphs and the shift graph on triples, together with the
//! closed-form parameter values proved for H(n:r).
//!
//! Ground-set elements are 1-based everywhere. H(n:r) vertices are ordered by
//! tail (ascending element tuple, lexicographically) and then by head.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Label, Metric};
use crate::subset::{binom, binom_i, lex_subsets, Subset, MAX_GROUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    pub n: u8,
    pub r: u8,
}

impl FamilyParams {
    /// Checks only the structural limits `r >= 1` and `n <= 64`.
    pub fn new(n: u8, r: u8) -> Result<Self> {
        if r == 0 {
            return Err(Error::Domain("tail size r must be at least 1".into()));
        }
        if n > MAX_GROUND {
            return Err(Error::Domain(format!("ground set size {n} exceeds 64")));
        }
        Ok(FamilyParams { n, r })
    }

    /// `k = n - 2r`, which may be negative.
    pub fn k(self) -> i64 {
        self.n as i64 - 2 * self.r as i64
    }

    pub fn ground(self) -> Subset {
        Subset::ground(self.n)
    }

    /// Requires `r >= 2` and `n >= 2r`, the range the closed forms cover.
    pub fn require_standard(self) -> Result<()> {
        if self.r < 2 || self.n < 2 * self.r {
            return Err(Error::Domain(format!(
                "need r >= 2 and n >= 2r, got n={} r={}",
                self.n, self.r
            )));
        }
        Ok(())
    }

    /// Requires `n >= 2r + 1` (connected range).
    pub fn require_connected(self) -> Result<()> {
        if self.n < 2 * self.r + 1 {
            return Err(Error::Domain(format!(
                "need n >= 2r+1, got n={} r={}",
                self.n, self.r
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.n, self.r)
    }
}

/// A vertex `(head, tail)` of H(n:r).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HHVertex {
    pub head: u8,
    pub tail: Subset,
}

impl HHVertex {
    pub fn new(head: u8, tail: Subset) -> Self {
        HHVertex { head, tail }
    }

    /// Convenience constructor from element lists.
    pub fn of(head: u8, tail: &[u8]) -> Self {
        HHVertex {
            head,
            tail: Subset::from_elements(tail.iter().copied()),
        }
    }

    pub fn validate(self, p: FamilyParams) -> Result<()> {
        if !(1..=p.n).contains(&self.head) || !self.tail.is_subset_of(p.ground()) {
            return Err(Error::InvalidVertex(format!("{self} not over {{1..{}}}", p.n)));
        }
        if self.tail.contains(self.head) || self.tail.len() != p.r as usize {
            return Err(Error::InvalidVertex(format!("{self} is not a vertex of H{p}")));
        }
        Ok(())
    }

    /// The adjacency rule of H(n:r).
    #[inline]
    pub fn adjacent(self, other: HHVertex) -> bool {
        other.tail.contains(self.head)
            && self.tail.contains(other.head)
            && self.tail.is_disjoint(other.tail)
    }

    /// Every element mentioned by the vertex.
    pub fn support(self) -> Subset {
        self.tail.with(self.head)
    }
}

impl fmt::Display for HHVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{{{}}})", self.head, self.tail)
    }
}

/// Vertices of H(n:r) in canonical order.
pub fn hh_vertices(p: FamilyParams) -> Vec<HHVertex> {
    let mut out = Vec::new();
    for tail in lex_subsets(p.n, p.r as usize) {
        for head in p.ground().difference(tail).elements() {
            out.push(HHVertex { head, tail });
        }
    }
    out
}

pub fn hh_graph(p: FamilyParams) -> Result<Graph> {
    if p.n < p.r + 1 {
        return Err(Error::EmptyVertexSet { n: p.n, r: p.r });
    }
    let verts = hh_vertices(p);
    let g = Graph::from_predicate(verts.len(), |a, b| verts[a].adjacent(verts[b]));
    g.with_labels(verts.into_iter().map(Label::Hh).collect())
}

/// Kneser graph on the `r`-subsets of `{1..n}` in lexicographic order.
pub fn kneser_graph(p: FamilyParams) -> Result<Graph> {
    if p.n < p.r {
        return Err(Error::Domain(format!("K({}:{}) needs n >= r", p.n, p.r)));
    }
    let verts = lex_subsets(p.n, p.r as usize);
    let g = Graph::from_predicate(verts.len(), |a, b| verts[a].is_disjoint(verts[b]));
    g.with_labels(verts.into_iter().map(Label::Subset).collect())
}

pub fn complete_graph(n: u8) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Domain("complete graph needs n >= 1".into()));
    }
    let g = Graph::from_predicate(n as usize, |_, _| true);
    g.with_labels((1..=n).map(Label::Element).collect())
}

/// Undirected shift graph on the 3-subsets of `{1..n}`.
pub fn shift_graph(n: u8) -> Result<Graph> {
    if !(3..=MAX_GROUND).contains(&n) {
        return Err(Error::Domain(format!("shift graph needs 3 <= n <= 64, got {n}")));
    }
    let verts = lex_subsets(n, 3);
    let triples: Vec<Vec<u8>> = verts.iter().map(|s| s.to_vec()).collect();
    let shifted = |x: &[u8], y: &[u8]| x[1] == y[0] && x[2] == y[1];
    let g = Graph::from_predicate(verts.len(), |a, b| {
        shifted(&triples[a], &triples[b]) || shifted(&triples[b], &triples[a])
    });
    g.with_labels(verts.into_iter().map(Label::Subset).collect())
}

/// Label lookup for graphs built by this module.
pub fn label_index(g: &Graph) -> HashMap<Label, usize> {
    g.labels()
        .map(|l| l.iter().enumerate().map(|(i, l)| (*l, i)).collect())
        .unwrap_or_default()
}

/// The H(n:r) labels of `g`, or an error if it is not labeled that way.
pub fn hh_labels(g: &Graph) -> Result<Vec<HHVertex>> {
    g.labels()
        .ok_or(Error::MissingLabels("H(n:r) vertices"))?
        .iter()
        .map(|l| match l {
            Label::Hh(v) => Ok(*v),
            _ => Err(Error::MissingLabels("H(n:r) vertices")),
        })
        .collect()
}

/// Subset labels of a Kneser-style graph.
pub fn subset_labels(g: &Graph) -> Result<Vec<Subset>> {
    g.labels()
        .ok_or(Error::MissingLabels("subsets"))?
        .iter()
        .map(|l| match l {
            Label::Subset(s) => Ok(*s),
            _ => Err(Error::MissingLabels("subsets")),
        })
        .collect()
}

/// Closed-form values for H(n:r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub params: FamilyParams,
    pub vertex_count: u64,
    pub valency: u64,
    pub edge_count: u64,
    pub diameter_formula: Metric,
    pub odd_girth_formula: Metric,
    pub girth_formula: Metric,
    pub alpha_lower: u64,
    pub chi_upper: u64,
    pub component_count: u64,
    /// `n >= 2r + 1`: the diameter and odd-girth theorems apply.
    pub metric_theorems_apply: bool,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    (a + b - 1).div_euclid(b)
}

/// `max{5, ceil((r-1)/(n-2r)) + 1}` below `n = 5r/2`, otherwise 4.
pub fn diameter_formula(p: FamilyParams) -> Metric {
    let (n, r, k) = (p.n as i64, p.r as i64, p.k());
    if k <= 0 {
        return Metric::Infinite;
    }
    if 2 * n >= 5 * r {
        Metric::Finite(4)
    } else {
        Metric::Finite(5.max(ceil_div(r - 1, k) + 1) as u64)
    }
}

/// `max{5, 2 ceil(r/(n-2r)) + 1}`; infinite for the bipartite case `n = 2r`.
pub fn odd_girth_formula(p: FamilyParams) -> Metric {
    let k = p.k();
    if k <= 0 {
        return Metric::Infinite;
    }
    Metric::Finite(5.max(2 * ceil_div(p.r as i64, k) + 1) as u64)
}

/// Kneser-graph diameter `ceil((r-1)/(n-2r)) + 1` for `n >= 2r + 1`.
pub fn kneser_diameter_formula(p: FamilyParams) -> Metric {
    let k = p.k();
    if k <= 0 {
        return Metric::Infinite;
    }
    Metric::Finite((ceil_div(p.r as i64 - 1, k) + 1) as u64)
}

pub fn hh_vertex_count(p: FamilyParams) -> u64 {
    (p.n as u64).saturating_sub(p.r as u64) * binom(p.n as u64, p.r as u64)
}

pub fn hh_valency(p: FamilyParams) -> u64 {
    p.r as u64 * binom_i(p.n as i64 - p.r as i64 - 1, p.r as i64 - 1)
}

/// Size of the largest independent set built from the recursive and
/// Kneser-type constructions.
pub fn alpha_lower_formula(p: FamilyParams) -> u64 {
    let (n, r) = (p.n as u64, p.r as u64);
    if n <= r * r + 1 {
        r * binom(n - 1, r)
    } else {
        let extra = (r - 1) * binom(r * r, r);
        debug_assert_eq!(extra % (r + 1), 0);
        binom(n, r + 1) + extra / (r + 1)
    }
}

pub fn closed_form(p: FamilyParams) -> Result<ClosedFormReport> {
    p.require_standard()?;
    let (n, r) = (p.n as u64, p.r as u64);
    let vertex_count = hh_vertex_count(p);
    let valency = hh_valency(p);
    let connected = n > 2 * r;
    Ok(ClosedFormReport {
        params: p,
        vertex_count,
        valency,
        edge_count: vertex_count * valency / 2,
        diameter_formula: diameter_formula(p),
        odd_girth_formula: odd_girth_formula(p),
        girth_formula: Metric::Finite(4),
        alpha_lower: alpha_lower_formula(p),
        chi_upper: n - 2 * r + 2,
        component_count: if connected { 1 } else { binom(2 * r, r) / 2 },
        metric_theorems_apply: connected,
    })
}
