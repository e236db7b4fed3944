//! Matching signs, generating functions, and Pfaffians.
//!
//! The crossing number of a matching counts crossings between *distinct*
//! matching edges only — self-crossings never contribute to a sign. The
//! Pfaffian of a weighted simple graph is defined as the signed sum under
//! the half-circle profile and is cross-checked against a classical
//! first-row expansion of the skew adjacency matrix; the matrix route is
//! the oracle, not the definition.

use thiserror::Error;

use crate::embedding::{stembridge_profile, CrossingProfile, EmbeddingError, VertexOrder};
use crate::graph::{enumerate_perfect_matchings, Graph, Matching, WeightAssignment};
use crate::ring::RingElem;

/// C(M, η): total crossings among the edges of `m`, excluding self-crossings.
pub fn crossing_number(m: &Matching, p: &CrossingProfile) -> u64 {
    m.edge_pairs().map(|(a, b)| p.cross(a, b) as u64).sum()
}

/// (−1)^C(M,η) as +1 or −1.
pub fn matching_sign(m: &Matching, p: &CrossingProfile) -> i32 {
    #[cfg(feature = "inject-fault")]
    {
        // Deliberately wrong sign rule used to prove the randomized
        // verification suites can detect a broken implementation.
        let _ = (m, p);
        1
    }
    #[cfg(not(feature = "inject-fault"))]
    {
        if crossing_number(m, p).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// ω(M): product of the weights of the matching's edges.
pub fn matching_weight(m: &Matching, w: &WeightAssignment) -> RingElem {
    m.ids().fold(RingElem::one(), |acc, id| {
        acc.mul(w.get(id).expect("weight assignment is total"))
    })
}

/// m(G, ω): sum of ω(M) over all perfect matchings, 0 when none exist.
pub fn matching_sum(g: &Graph, w: &WeightAssignment) -> RingElem {
    enumerate_perfect_matchings(g)
        .iter()
        .fold(RingElem::zero(), |acc, m| acc.add(&matching_weight(m, w)))
}

/// s(G, ω, η): sum of sgn(M, η)·ω(M) over all perfect matchings.
pub fn signed_sum(g: &Graph, w: &WeightAssignment, p: &CrossingProfile) -> RingElem {
    enumerate_perfect_matchings(g)
        .iter()
        .fold(RingElem::zero(), |acc, m| {
            let term = matching_weight(m, w);
            if matching_sign(m, p) >= 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            }
        })
}

/// Pf(G, ω): the signed sum under the half-circle profile for `ord`.
pub fn pfaffian_of_graph(
    g: &Graph,
    w: &WeightAssignment,
    ord: &VertexOrder,
) -> Result<RingElem, EmbeddingError> {
    Ok(signed_sum(g, w, &stembridge_profile(g, ord)?))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("entries ({i},{j}) and ({j},{i}) are not negatives of each other")]
    NotSkew { i: usize, j: usize },
}

/// Exactly skew-symmetric matrix over the polynomial ring; indices 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewMatrix {
    entries: Vec<Vec<RingElem>>,
}

impl SkewMatrix {
    /// Validates squareness and a[j][i] = −a[i][j] (forcing a zero diagonal).
    #[allow(clippy::needless_range_loop)] // mirrored indexing across the diagonal
    pub fn new(entries: Vec<Vec<RingElem>>) -> Result<Self, MatrixError> {
        let dim = entries.len();
        for (row, r) in entries.iter().enumerate() {
            if r.len() != dim {
                return Err(MatrixError::NotSquare {
                    row,
                    len: r.len(),
                    dim,
                });
            }
        }
        for i in 0..dim {
            for j in i..dim {
                if entries[j][i] != entries[i][j].neg() {
                    return Err(MatrixError::NotSkew { i, j });
                }
            }
        }
        Ok(SkewMatrix { entries })
    }

    pub fn zero(dim: usize) -> Self {
        SkewMatrix {
            entries: vec![vec![RingElem::zero(); dim]; dim],
        }
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[i][j]
    }

    /// Submatrix with the given (sorted, distinct) rows/columns removed.
    fn without(&self, removed: &[usize]) -> SkewMatrix {
        let keep: Vec<usize> = (0..self.dimension())
            .filter(|i| !removed.contains(i))
            .collect();
        let entries = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        SkewMatrix { entries }
    }
}

/// Skew adjacency form for a simple graph: entry (i, j) with i < j holds the
/// sum of weights of edges joining the vertices at positions i+1 and j+1.
pub fn skew_from_graph(
    g: &Graph,
    w: &WeightAssignment,
    ord: &VertexOrder,
) -> Result<SkewMatrix, EmbeddingError> {
    if !g.is_simple() {
        return Err(EmbeddingError::NotSimpleGraph);
    }
    if ord.len() != g.vertex_count() {
        return Err(EmbeddingError::BadOrder(format!(
            "order lists {} vertices, graph has {}",
            ord.len(),
            g.vertex_count()
        )));
    }
    let n = g.vertex_count() as usize;
    let mut entries = vec![vec![RingElem::zero(); n]; n];
    for e in g.edges() {
        let i = ord.position_of(e.u) as usize - 1;
        let j = ord.position_of(e.v) as usize - 1;
        let (i, j) = (i.min(j), i.max(j));
        let weight = w.get(e.id).expect("weight assignment is total");
        entries[i][j] = entries[i][j].add(weight);
        entries[j][i] = entries[i][j].neg();
    }
    Ok(SkewMatrix { entries })
}

/// First-row expansion Pf(A) = Σ_{j≥2} (−1)^j · a[1][j] · Pf(A \ {1, j})
/// (1-based indices); 0 for odd dimensions, 1 for the empty matrix.
pub fn pfaffian_expand(a: &SkewMatrix) -> RingElem {
    let n = a.dimension();
    if n % 2 == 1 {
        return RingElem::zero();
    }
    if n == 0 {
        return RingElem::one();
    }
    let mut acc = RingElem::zero();
    for j in 1..n {
        let coeff = a.entry(0, j);
        if coeff.is_zero() {
            continue;
        }
        let term = coeff.mul(&pfaffian_expand(&a.without(&[0, j])));
        // 1-based column index j+1: even columns add, odd columns subtract
        let negate = j % 2 == 0;
        #[cfg(feature = "inject-fault")]
        let negate = if j == 1 { !negate } else { negate };
        if negate {
            acc = acc.sub(&term);
        } else {
            acc = acc.add(&term);
        }
    }
    acc
}

/// Exact determinant by column-subset dynamic programming (O(2ⁿ·n) ring
/// operations, no division).
pub fn determinant(a: &SkewMatrix) -> RingElem {
    let n = a.dimension();
    if n == 0 {
        return RingElem::one();
    }
    let mut table = vec![RingElem::zero(); 1 << n];
    table[0] = RingElem::one();
    for mask in 0..(1usize << n) - 1 {
        if table[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        for col in 0..n {
            if mask & (1 << col) != 0 {
                continue;
            }
            let coeff = a.entry(row, col);
            if coeff.is_zero() {
                continue;
            }
            let term = table[mask].mul(coeff);
            let next = mask | (1 << col);
            let sign_flips = (mask >> (col + 1)).count_ones();
            table[next] = if sign_flips % 2 == 0 {
                table[next].add(&term)
            } else {
                table[next].sub(&term)
            };
        }
    }
    table[(1 << n) - 1].clone()
}
