//! Constructive sign modifications: solve for weight flips that equate the
//! signed generating functions of two crossing profiles.
//!
//! For each perfect matching M the sign discrepancy between two profiles is
//! the parity of C(M, A) + C(M, B); a set of flipped edges offsets it iff
//! the number of flipped edges inside M has that same parity. Collecting
//! one GF(2) equation per matching and solving by Gaussian elimination
//! yields the modification. For a pair of profiles realizable as genuine
//! drawings of the same graph a solution always exists; `NoSolution` means
//! the profiles are not co-realizable — e.g. the zero profile against any
//! drawing of a non-planar graph.
//!
//! The system has one row per perfect matching, so this is exponential by
//! design; the intended scale is small graphs, guarded by a matching cap.

use thiserror::Error;

use crate::embedding::{
    stembridge_profile, zero_profile, CrossingProfile, EmbeddingError, VertexOrder,
};
use crate::graph::{enumerate_perfect_matchings_capped, Graph, Matching, WeightAssignment};
use crate::matching::{crossing_number, signed_sum};
use crate::moves::SignModification;

/// Default ceiling on the number of matchings (= GF(2) rows).
pub const DEFAULT_MATCHING_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("no sign modification equates the two profiles")]
    NoSolution,
    #[error("internal recomputation check failed after solving; this is a bug")]
    VerificationFailed,
    #[error("more than {cap} perfect matchings; raise the cap to proceed")]
    TooManyMatchings { cap: usize },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// One GF(2) equation per perfect matching: Σ_{e∈M} x_e ≡ b_M, where b_M is
/// the parity of the crossing-number difference between the two profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2System {
    columns: usize,
    rows: Vec<Gf2Row>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Gf2Row {
    bits: Vec<u64>,
    rhs: bool,
}

impl Gf2Row {
    fn zero(columns: usize) -> Self {
        Gf2Row {
            bits: vec![0; columns.div_ceil(64)],
            rhs: false,
        }
    }

    fn set(&mut self, col: usize) {
        self.bits[col / 64] |= 1 << (col % 64);
    }

    fn get(&self, col: usize) -> bool {
        self.bits[col / 64] >> (col % 64) & 1 == 1
    }

    fn xor_in(&mut self, other: &Gf2Row) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        self.rhs ^= other.rhs;
    }

    fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }
}

impl Gf2System {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns
    }

    /// True iff flipping exactly the modification's edges satisfies every
    /// matching equation.
    pub fn is_satisfied_by(&self, m: &SignModification) -> bool {
        self.rows.iter().all(|row| {
            let parity = m
                .flipped()
                .filter(|&e| {
                    let col = e as usize - 1;
                    col < self.columns && row.get(col)
                })
                .count()
                % 2
                == 1;
            parity == row.rhs
        })
    }

    /// Reduced row echelon form; returns pivot column per reduced row, or
    /// `None` on an inconsistent system.
    fn eliminate(&self) -> Option<Vec<(usize, Gf2Row)>> {
        let mut rows = self.rows.clone();
        let mut pivot_cols: Vec<usize> = Vec::new();
        // columns ascend, so pivots always take the lowest available edge id
        for col in 0..self.columns {
            let next = pivot_cols.len();
            let Some(hit) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, hit);
            let pivot = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_in(&pivot);
                }
            }
            pivot_cols.push(col);
        }
        // all non-pivot rows are fully reduced now; a leftover RHS bit means
        // the system is inconsistent
        if rows[pivot_cols.len()..].iter().any(|r| r.rhs && r.is_zero()) {
            return None;
        }
        // pair each pivot column with its final reduced row
        Some(pivot_cols.into_iter().zip(rows).collect())
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        match self.eliminate() {
            Some(pivots) => pivots.len(),
            None => {
                // rank of the coefficient matrix alone
                let mut sys = self.clone();
                for row in &mut sys.rows {
                    row.rhs = false;
                }
                sys.eliminate().expect("homogeneous system").len()
            }
        }
    }

    /// Dimension of the solution space of the homogeneous system: the number
    /// of independent sign modifications that leave every matching sign
    /// unchanged.
    pub fn nullity(&self) -> usize {
        self.columns - self.rank()
    }
}

/// Builds the matching-indexed GF(2) system for profiles `a` and `b`, rows
/// in matching enumeration order, using the default cap.
pub fn build_system(g: &Graph, a: &CrossingProfile, b: &CrossingProfile) -> Result<Gf2System, SolverError> {
    build_system_capped(g, a, b, DEFAULT_MATCHING_CAP)
}

pub fn build_system_capped(
    g: &Graph,
    a: &CrossingProfile,
    b: &CrossingProfile,
    cap: usize,
) -> Result<Gf2System, SolverError> {
    let matchings: Vec<Matching> = enumerate_perfect_matchings_capped(g, cap)
        .ok_or(SolverError::TooManyMatchings { cap })?;
    let columns = g.edge_count();
    let rows = matchings
        .iter()
        .map(|m| {
            let mut row = Gf2Row::zero(columns);
            for id in m.ids() {
                row.set(id as usize - 1);
            }
            row.rhs = (crossing_number(m, a) + crossing_number(m, b)) % 2 == 1;
            row
        })
        .collect();
    Ok(Gf2System { columns, rows })
}

/// Solves the system by Gaussian elimination. Deterministic: pivots take the
/// lowest edge id available and free variables are left unflipped, so the
/// canonical solution flips as few pivot edges as the elimination allows.
pub fn solve_gf2(sys: &Gf2System) -> Result<SignModification, SolverError> {
    let pivots = sys.eliminate().ok_or(SolverError::NoSolution)?;
    // free variables are 0, so each pivot variable equals its reduced RHS
    let flipped = pivots
        .iter()
        .filter(|(_, row)| row.rhs)
        .map(|(col, _)| *col as u32 + 1);
    Ok(SignModification::from_flipped(flipped))
}

/// Finds ω′ with s(G, ω, a) = s(G, ω′, b), verifying the identity by exact
/// recomputation before returning.
pub fn equalize(
    g: &Graph,
    w: &WeightAssignment,
    a: &CrossingProfile,
    b: &CrossingProfile,
) -> Result<SignModification, SolverError> {
    equalize_capped(g, w, a, b, DEFAULT_MATCHING_CAP)
}

pub fn equalize_capped(
    g: &Graph,
    w: &WeightAssignment,
    a: &CrossingProfile,
    b: &CrossingProfile,
    cap: usize,
) -> Result<SignModification, SolverError> {
    if !g.is_simple() {
        return Err(EmbeddingError::NotSimpleGraph.into());
    }
    let sys = build_system_capped(g, a, b, cap)?;
    let modification = solve_gf2(&sys)?;
    let lhs = signed_sum(g, w, a);
    let rhs = signed_sum(g, &modification.apply(w), b);
    if lhs != rhs {
        return Err(SolverError::VerificationFailed);
    }
    Ok(modification)
}

/// Sign modification turning the plain matching generating function into a
/// Pfaffian: equalizes the zero (planar) profile with the half-circle
/// profile for `ord`. Succeeds exactly when the crossing parities of the
/// half-circle drawing can be absorbed into edge signs — for genuinely
/// planar graphs they always can; for K₃,₃ they never can.
pub fn kasteleyn_weights(
    g: &Graph,
    w: &WeightAssignment,
    ord: &VertexOrder,
) -> Result<SignModification, SolverError> {
    kasteleyn_weights_capped(g, w, ord, DEFAULT_MATCHING_CAP)
}

pub fn kasteleyn_weights_capped(
    g: &Graph,
    w: &WeightAssignment,
    ord: &VertexOrder,
    cap: usize,
) -> Result<SignModification, SolverError> {
    let flat = zero_profile(g);
    let half_circle = stembridge_profile(g, ord)?;
    equalize_capped(g, w, &flat, &half_circle, cap)
}
