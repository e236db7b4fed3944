//! Randomized invariant suites and the seeded generators behind them.
//!
//! Four suites probe the load-bearing identities on random inputs:
//! move invariance of the signed sum, Pf² = det for the matrix oracle,
//! the half-circle sign against an independent permutation-inversion
//! oracle, and solver soundness on move-generated profile pairs. Every
//! suite is a pure function of its seed, so reports are reproducible
//! byte for byte.
//!
//! Building with `--features inject-fault` deliberately mis-signs two
//! internal computations; the suites must then report failures, which is
//! the self-test showing they can catch a broken implementation.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{stembridge_profile, CrossingProfile, VertexOrder};
use crate::graph::{
    enumerate_perfect_matchings, Edge, EdgeId, Graph, Matching, VertexId, WeightAssignment,
};
use crate::matching::{
    determinant, matching_sign, pfaffian_expand, signed_sum, SkewMatrix,
};
use crate::moves::{apply_move, apply_script, ledger_to_modification, Ledger, Move};
use crate::ring::RingElem;
use crate::solver::{build_system, equalize, SolverError};

// ---------------------------------------------------------------- generators

/// Random simple graph on `n` vertices (n even) that contains at least one
/// perfect matching: a random pairing of the vertices plus random extra
/// edges.
pub fn random_simple_graph_with_matching(rng: &mut impl Rng, n: u32) -> Graph {
    assert!(n >= 2 && n.is_multiple_of(2), "need an even number of vertices");
    let mut labels: Vec<VertexId> = (1..=n).collect();
    labels.shuffle(rng);
    let mut pairs: Vec<(VertexId, VertexId)> = labels
        .chunks(2)
        .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
        .collect();
    for u in 1..=n {
        for v in u + 1..=n {
            if !pairs.contains(&(u, v)) && rng.random_bool(0.35) {
                pairs.push((u, v));
            }
        }
    }
    pairs.sort();
    let edges = pairs
        .into_iter()
        .enumerate()
        .map(|(i, (u, v))| Edge::new(i as EdgeId + 1, u, v));
    Graph::new(n, edges).expect("generated graph is valid")
}

/// As above, with one or two parallel copies of existing edges added.
pub fn random_multigraph_with_matching(rng: &mut impl Rng, n: u32) -> Graph {
    let simple = random_simple_graph_with_matching(rng, n);
    let mut pairs: Vec<(VertexId, VertexId)> = simple
        .edges()
        .iter()
        .map(|e| (e.u, e.v))
        .collect();
    for _ in 0..rng.random_range(1..=2usize) {
        let copy = pairs[rng.random_range(0..pairs.len())];
        pairs.push(copy);
    }
    pairs.sort();
    let edges = pairs
        .into_iter()
        .enumerate()
        .map(|(i, (u, v))| Edge::new(i as EdgeId + 1, u, v));
    Graph::new(simple.vertex_count(), edges).expect("generated multigraph is valid")
}

/// Nonzero integer weights drawn from [−bound, bound].
pub fn random_int_weights(rng: &mut impl Rng, g: &Graph, bound: i64) -> WeightAssignment {
    let weights = g
        .edges()
        .iter()
        .map(|e| {
            let mut c = 0i64;
            while c == 0 {
                c = rng.random_range(-bound..=bound);
            }
            (e.id, RingElem::constant(c))
        })
        .collect();
    WeightAssignment::new(g, weights).expect("nonzero weights on every edge")
}

/// Random crossing profile: sparse pair counts and self-crossing counts.
pub fn random_profile(rng: &mut impl Rng, g: &Graph, max_count: u32) -> CrossingProfile {
    let mut p = CrossingProfile::new();
    let edges = g.edges();
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if rng.random_bool(0.3) {
                p.set_cross(e.id, f.id, rng.random_range(0..=max_count));
            }
        }
        if rng.random_bool(0.15) {
            p.set_self_cross(e.id, rng.random_range(1..=max_count.max(1)));
        }
    }
    p
}

/// Uniformly random vertex order.
pub fn random_order(rng: &mut impl Rng, n: u32) -> VertexOrder {
    let mut seq: Vec<VertexId> = (1..=n).collect();
    seq.shuffle(rng);
    VertexOrder::new(seq).expect("shuffle of 1..=n is a permutation")
}

/// A single move that is valid on `p`, drawn uniformly-ish over the four
/// kinds (kinds that cannot apply to this graph are skipped).
pub fn random_valid_move(rng: &mut impl Rng, g: &Graph, p: &CrossingProfile) -> Move {
    let edges = g.edges();
    let adjacent_pairs: Vec<(EdgeId, EdgeId)> = edges
        .iter()
        .enumerate()
        .flat_map(|(i, e)| {
            edges[i + 1..]
                .iter()
                .filter(|f| e.shared_vertex(f).is_some())
                .map(|f| (e.id, f.id))
                .collect::<Vec<_>>()
        })
        .collect();
    loop {
        match rng.random_range(0..4u8) {
            0 => {
                if adjacent_pairs.is_empty() {
                    continue;
                }
                let (e1, e2) = adjacent_pairs[rng.random_range(0..adjacent_pairs.len())];
                let delta = if p.cross(e1, e2) > 0 && rng.random_bool(0.5) {
                    -1
                } else {
                    1
                };
                return Move::AdjacentCross { e1, e2, delta };
            }
            1 => {
                let e = edges[rng.random_range(0..edges.len())].id;
                let delta = if p.self_cross(e) > 0 && rng.random_bool(0.5) {
                    -1
                } else {
                    1
                };
                return Move::SelfCross { e, delta };
            }
            2 => {
                if edges.len() < 2 {
                    continue;
                }
                let i = rng.random_range(0..edges.len());
                let mut j = rng.random_range(0..edges.len());
                while j == i {
                    j = rng.random_range(0..edges.len());
                }
                let (e1, e2) = (edges[i].id, edges[j].id);
                let delta = if p.cross(e1, e2) >= 2 && rng.random_bool(0.5) {
                    -2
                } else {
                    2
                };
                return Move::DoubleCross { e1, e2, delta };
            }
            _ => {
                let e = edges[rng.random_range(0..edges.len())];
                let candidates: Vec<VertexId> =
                    g.vertices().filter(|&v| !e.is_incident(v)).collect();
                if candidates.is_empty() {
                    continue;
                }
                let v = candidates[rng.random_range(0..candidates.len())];
                let deltas = g
                    .incident_edges(v)
                    .into_iter()
                    .filter(|&f| f != e.id)
                    .map(|f| {
                        let d = if p.cross(e.id, f) > 0 && rng.random_bool(0.5) {
                            -1
                        } else {
                            1
                        };
                        (f, d)
                    })
                    .collect();
                return Move::VertexTransition { e: e.id, v, deltas };
            }
        }
    }
}

/// A script of `len` moves, each valid after the previous ones.
pub fn random_script(
    rng: &mut impl Rng,
    g: &Graph,
    p: &CrossingProfile,
    len: usize,
) -> Vec<Move> {
    let mut profile = p.clone();
    let mut ledger = Ledger::new();
    let mut script = Vec::with_capacity(len);
    for _ in 0..len {
        let mv = random_valid_move(rng, g, &profile);
        (profile, ledger) = apply_move(g, &profile, &ledger, &mv)
            .expect("generator only proposes valid moves");
        script.push(mv);
    }
    script
}

/// Random integer skew-symmetric matrix with entries in [−bound, bound].
#[allow(clippy::needless_range_loop)] // mirrored indexing across the diagonal
pub fn random_skew_matrix(rng: &mut impl Rng, dim: usize, bound: i64) -> SkewMatrix {
    let mut entries = vec![vec![RingElem::zero(); dim]; dim];
    for i in 0..dim {
        for j in i + 1..dim {
            let c: i64 = rng.random_range(-bound..=bound);
            entries[i][j] = RingElem::constant(c);
            entries[j][i] = RingElem::constant(-c);
        }
    }
    SkewMatrix::new(entries).expect("constructed skew-symmetric")
}

/// Independent sign oracle: list the matching's edges by smaller endpoint
/// position, concatenate the position pairs, and take the permutation sign
/// of the resulting sequence by counting inversions.
pub fn permutation_sign_of_matching(g: &Graph, ord: &VertexOrder, m: &Matching) -> i32 {
    let mut pairs: Vec<(u32, u32)> = m
        .ids()
        .map(|id| {
            let e = g.edge(id).expect("matching edges exist");
            let a = ord.position_of(e.u);
            let b = ord.position_of(e.v);
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort();
    let seq: Vec<u32> = pairs.into_iter().flat_map(|(a, b)| [a, b]).collect();
    let mut inversions = 0u64;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

// -------------------------------------------------------------------- suites

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub trials: u64,
    pub failures: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: trials = {}, failures = {}, {}",
            self.name,
            self.trials,
            self.failures,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed = {}", self.seed)?;
        for suite in &self.suites {
            writeln!(f, "{suite}")?;
        }
        write!(
            f,
            "verify: {}",
            if self.all_passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn suite_rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

fn random_graph_mixed(rng: &mut impl Rng) -> Graph {
    let n = [4, 6, 8][rng.random_range(0..3usize)];
    if rng.random_bool(0.15) {
        random_multigraph_with_matching(rng, n)
    } else {
        random_simple_graph_with_matching(rng, n)
    }
}

/// Signed sum with ledger-adjusted weights is unchanged by any valid move.
pub fn move_invariance_suite(seed: u64, trials: u64) -> SuiteReport {
    let mut rng = suite_rng(seed, 0x6d6f7665);
    let mut failures = 0;
    for _ in 0..trials {
        let g = random_graph_mixed(&mut rng);
        let w = random_int_weights(&mut rng, &g, 5);
        let p = random_profile(&mut rng, &g, 2);
        let mv = random_valid_move(&mut rng, &g, &p);
        let before = signed_sum(&g, &w, &p);
        let (p2, led) = apply_move(&g, &p, &Ledger::new(), &mv)
            .expect("generator only proposes valid moves");
        let after = signed_sum(&g, &ledger_to_modification(&led).apply(&w), &p2);
        if before != after {
            failures += 1;
        }
    }
    SuiteReport {
        name: "move-invariance",
        trials,
        failures,
    }
}

/// Pf(A)² = det(A) for random integer skew matrices of dimension 2–10.
pub fn pfaffian_determinant_suite(seed: u64, trials: u64) -> SuiteReport {
    let mut rng = suite_rng(seed, 0x70666466);
    let mut failures = 0;
    for trial in 0..trials {
        let dim = 2 + (trial as usize % 5) * 2;
        let a = random_skew_matrix(&mut rng, dim, 9);
        let pf = pfaffian_expand(&a);
        if pf.mul(&pf) != determinant(&a) {
            failures += 1;
        }
    }
    SuiteReport {
        name: "pfaffian-determinant",
        trials,
        failures,
    }
}

/// Half-circle matching sign equals the permutation-inversion sign.
pub fn parity_oracle_suite(seed: u64, trials: u64) -> SuiteReport {
    let mut rng = suite_rng(seed, 0x70617269);
    let mut failures = 0;
    for _ in 0..trials {
        let n = [4, 6, 8][rng.random_range(0..3usize)];
        let g = random_simple_graph_with_matching(&mut rng, n);
        let ord = random_order(&mut rng, n);
        let matchings = enumerate_perfect_matchings(&g);
        let m = &matchings[rng.random_range(0..matchings.len())];
        let p = stembridge_profile(&g, &ord).expect("generated graph is simple");
        if matching_sign(m, &p) != permutation_sign_of_matching(&g, &ord, m) {
            failures += 1;
        }
    }
    SuiteReport {
        name: "parity-oracle",
        trials,
        failures,
    }
}

/// Equalizing a half-circle profile against a move-rewritten copy always
/// has a solution, the internal recomputation accepts it, and the script's
/// own ledger solves the same system.
pub fn solver_soundness_suite(seed: u64, trials: u64) -> SuiteReport {
    let mut rng = suite_rng(seed, 0x736f6c76);
    let mut failures = 0;
    for _ in 0..trials {
        let n = [4, 6][rng.random_range(0..2usize)];
        let g = random_simple_graph_with_matching(&mut rng, n);
        let w = random_int_weights(&mut rng, &g, 5);
        let ord = random_order(&mut rng, n);
        let p0 = stembridge_profile(&g, &ord).expect("generated graph is simple");
        let len = rng.random_range(1..=5);
        let script = random_script(&mut rng, &g, &p0, len);
        let (p1, ledger) = apply_script(&g, &p0, &script)
            .expect("generator only proposes valid scripts");

        let ok = match equalize(&g, &w, &p0, &p1) {
            Ok(modification) => {
                // the returned modification passed the internal check; the
                // script ledger must solve the same system
                let sys = build_system(&g, &p0, &p1).expect("desk-scale graph");
                sys.is_satisfied_by(&modification)
                    && sys.is_satisfied_by(&ledger_to_modification(&ledger))
            }
            Err(SolverError::NoSolution) | Err(SolverError::VerificationFailed) => false,
            Err(other) => panic!("unexpected solver error: {other}"),
        };
        if !ok {
            failures += 1;
        }
    }
    SuiteReport {
        name: "solver-soundness",
        trials,
        failures,
    }
}

pub const DEFAULT_MOVE_TRIALS: u64 = 1000;
pub const DEFAULT_PFAFFIAN_TRIALS: u64 = 200;
pub const DEFAULT_PARITY_TRIALS: u64 = 200;
pub const DEFAULT_SOLVER_TRIALS: u64 = 500;

/// Runs all four suites. `trials` overrides every suite's trial count;
/// `None` keeps the per-suite defaults.
pub fn run_all(seed: u64, trials: Option<u64>) -> VerifyReport {
    let pick = |default| trials.unwrap_or(default);
    VerifyReport {
        seed,
        suites: vec![
            move_invariance_suite(seed, pick(DEFAULT_MOVE_TRIALS)),
            pfaffian_determinant_suite(seed, pick(DEFAULT_PFAFFIAN_TRIALS)),
            parity_oracle_suite(seed, pick(DEFAULT_PARITY_TRIALS)),
            solver_soundness_suite(seed, pick(DEFAULT_SOLVER_TRIALS)),
        ],
    }
}
