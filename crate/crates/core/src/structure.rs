//! The three-cell partition of H(n:r) by the role of the largest element,
//! equitable quotient matrices, and orbit counts under generated groups.

use std::fmt;

use crate::error::{Error, Result};
use crate::families::{hh_vertices, FamilyParams};
use crate::graph::Graph;
use crate::group::{is_automorphism, DisjointSets, VertexPermutation};
use crate::subset::binom_i;

/// Ordered disjoint cells covering the vertex set; each cell is ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPartition {
    pub cells: Vec<Vec<usize>>,
}

impl CellPartition {
    pub fn new(cells: Vec<Vec<usize>>) -> Self {
        let cells = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        CellPartition { cells }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Cell index of every vertex, checking disjointness and coverage.
    pub fn cell_of(&self, vertex_count: usize) -> Result<Vec<usize>> {
        let mut out = vec![usize::MAX; vertex_count];
        for (i, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                if v >= vertex_count {
                    return Err(Error::BadPartition(format!("vertex {v} out of range")));
                }
                if out[v] != usize::MAX {
                    return Err(Error::BadPartition(format!("vertex {v} in two cells")));
                }
                out[v] = i;
            }
        }
        if let Some(v) = out.iter().position(|&c| c == usize::MAX) {
            return Err(Error::BadPartition(format!("vertex {v} in no cell")));
        }
        Ok(out)
    }
}

/// Entry `(i, j)` counts the neighbors in cell `j` of any vertex of cell `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub entries: Vec<Vec<u64>>,
}

impl QuotientMatrix {
    pub fn row_sums(&self) -> Vec<u64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }
}

impl fmt::Display for QuotientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(u64::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Cells: no `n` at all, `n` in the tail, head `n`.
pub fn three_cell_partition(p: FamilyParams) -> Result<CellPartition> {
    if p.n < p.r + 2 {
        return Err(Error::Domain(format!("three nonempty cells need n >= r+2, got H{p}")));
    }
    let mut cells = vec![Vec::new(), Vec::new(), Vec::new()];
    for (i, v) in hh_vertices(p).into_iter().enumerate() {
        let c = if v.head == p.n {
            2
        } else if v.tail.contains(p.n) {
            1
        } else {
            0
        };
        cells[c].push(i);
    }
    Ok(CellPartition { cells })
}

/// The quotient matrix if `part` is equitable. Otherwise reports the first
/// vertex (in index order) whose neighbor counts differ from the first vertex
/// of its cell.
pub fn quotient_matrix(g: &Graph, part: &CellPartition) -> Result<QuotientMatrix> {
    let cell_of = part.cell_of(g.vertex_count())?;
    let k = part.cells.len();
    let counts = |v: usize| {
        let mut row = vec![0u64; k];
        for &w in g.neighbors(v) {
            row[cell_of[w as usize]] += 1;
        }
        row
    };
    let mut entries: Vec<Option<(usize, Vec<u64>)>> = vec![None; k];
    for v in 0..g.vertex_count() {
        let c = cell_of[v];
        let row = counts(v);
        match &entries[c] {
            None => entries[c] = Some((v, row)),
            Some((rep, expected)) => {
                if let Some(target) = (0..k).find(|&j| row[j] != expected[j]) {
                    return Err(Error::NotEquitable {
                        vertex: *rep,
                        other: v,
                        cell: c,
                        target,
                    });
                }
            }
        }
    }
    Ok(QuotientMatrix {
        entries: entries
            .into_iter()
            .map(|e| e.map_or_else(|| vec![0; k], |(_, row)| row))
            .collect(),
    })
}

/// The quotient matrix of the three-cell partition predicted by counting.
pub fn expected_quotient_matrix(p: FamilyParams) -> Result<QuotientMatrix> {
    p.require_connected()?;
    let (n, r) = (p.n as i64, p.r as i64);
    let ru = r as u64;
    let a = binom_i(n - r - 1, r - 1);
    Ok(QuotientMatrix {
        entries: vec![
            vec![ru * binom_i(n - r - 2, r - 1), ru * binom_i(n - r - 2, r - 2), 0],
            vec![(ru - 1) * a, 0, a],
            vec![0, ru * a, 0],
        ],
    })
}

/// Numbers of orbits on vertices and on arcs (ordered adjacent pairs) of the
/// group generated by `generators`, each checked to be an automorphism.
pub fn orbit_count(g: &Graph, generators: &[VertexPermutation]) -> Result<(usize, usize)> {
    for (i, s) in generators.iter().enumerate() {
        if !is_automorphism(g, s) {
            return Err(Error::NotAutomorphism(i));
        }
    }
    let n = g.vertex_count();
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + g.degree(v);
    }
    let arc_index = |u: usize, v: usize| {
        let pos = g
            .neighbors(u)
            .binary_search(&(v as u32))
            .expect("automorphisms map arcs to arcs");
        offset[u] + pos
    };
    let mut vertices = DisjointSets::new(n);
    let mut arcs = DisjointSets::new(offset[n]);
    for s in generators {
        for u in 0..n {
            vertices.merge(u, s.apply(u));
            for (pos, &v) in g.neighbors(u).iter().enumerate() {
                arcs.merge(offset[u] + pos, arc_index(s.apply(u), s.apply(v as usize)));
            }
        }
    }
    Ok((vertices.class_count(), arcs.class_count()))
}
