//! Local redraw moves on crossing profiles, with a ledger of weight-sign
//! flips.
//!
//! Each move mirrors a local picture rewrite: creating or straightening a
//! single crossing of two adjacent edges, a self-crossing, or a double
//! crossing of two edges, and dragging an edge across a vertex. The vertex
//! transition toggles one crossing between the dragged edge and every edge
//! incident to the vertex and — because a perfect matching contains exactly
//! one edge at that vertex — reverses the sign of precisely the matchings
//! containing the dragged edge; recording a flip of that edge's weight in
//! the ledger offsets this, so every move preserves the signed generating
//! function with ledger-adjusted weights.
//!
//! Geometric side conditions become count-feasibility preconditions: a move
//! is valid iff no crossing count would go negative. Untangling a multiple
//! crossing point is a representational no-op on profiles and has no move.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::CrossingProfile;
use crate::graph::{EdgeId, Graph, VertexId, WeightAssignment};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("move references unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("move references vertex {0} outside the graph")]
    UnknownVertex(VertexId),
    #[error("edges {e1} and {e2} do not share exactly one vertex")]
    NotAdjacent { e1: EdgeId, e2: EdgeId },
    #[error("move needs two distinct edges, got {0} twice")]
    SameEdge(EdgeId),
    #[error("vertex {v} is an endpoint of edge {e}")]
    EndpointVertex { e: EdgeId, v: VertexId },
    #[error("vertex transition deltas must cover exactly the other edges at the vertex; missing {missing:?}, unexpected {unexpected:?}")]
    IncompleteDeltas {
        missing: Vec<EdgeId>,
        unexpected: Vec<EdgeId>,
    },
    #[error("delta {found} not allowed here (expected {expected})")]
    BadDelta { found: i8, expected: &'static str },
    #[error("crossing count of ({a}, {b}) would become negative")]
    NegativeCount { a: EdgeId, b: EdgeId },
    #[error("self-crossing count of edge {e} would become negative")]
    NegativeSelfCount { e: EdgeId },
    #[error("malformed move script JSON: {0}")]
    Json(String),
}

/// A move script error, tagged with the position of the failing move.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("move {index}: {source}")]
pub struct ScriptError {
    pub index: usize,
    #[source]
    pub source: MoveError,
}

/// One local redraw.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// Create (+1) or straighten (−1) a crossing of two edges sharing
    /// exactly one vertex. Sign-irrelevant: the two edges can never belong
    /// to the same perfect matching.
    AdjacentCross { e1: EdgeId, e2: EdgeId, delta: i8 },
    /// Create (+1) or straighten (−1) a self-crossing. Sign-irrelevant:
    /// only crossings of different edges count.
    SelfCross { e: EdgeId, delta: i8 },
    /// Create (+2) or straighten (−2) a double crossing of two distinct
    /// edges. Parity-preserving, hence sign-irrelevant.
    DoubleCross { e1: EdgeId, e2: EdgeId, delta: i8 },
    /// Drag edge `e` across vertex `v` (not an endpoint of `e`): the
    /// crossing count of `e` with every other edge at `v` changes by ±1,
    /// and ω(e) flips sign in the ledger.
    VertexTransition {
        e: EdgeId,
        v: VertexId,
        deltas: BTreeMap<EdgeId, i8>,
    },
}

/// Running count of weight-sign flips per edge. The induced modification
/// multiplies ω(e) by (−1)^flips(e).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Ledger {
    flips: BTreeMap<EdgeId, u64>,
}

impl Ledger {
    pub fn new() -> Self {
        Ledger::default()
    }

    pub fn record_flip(&mut self, e: EdgeId) {
        *self.flips.entry(e).or_insert(0) += 1;
    }

    pub fn flips(&self, e: EdgeId) -> u64 {
        self.flips.get(&e).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (EdgeId, u64)> + '_ {
        self.flips.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Entry {
            e: EdgeId,
            count: u64,
        }
        #[derive(Serialize)]
        struct File {
            flips: Vec<Entry>,
        }
        let file = File {
            flips: self.entries().map(|(e, count)| Entry { e, count }).collect(),
        };
        serde_json::to_string(&file).expect("ledger serialization cannot fail")
    }
}

/// A choice of sign ±1 per edge, stored as the set of edges mapped to −1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SignModification {
    flipped: BTreeSet<EdgeId>,
}

impl SignModification {
    /// The identity modification: every edge keeps its sign.
    pub fn identity() -> Self {
        SignModification::default()
    }

    pub fn from_flipped<I: IntoIterator<Item = EdgeId>>(ids: I) -> Self {
        SignModification {
            flipped: ids.into_iter().collect(),
        }
    }

    pub fn sign(&self, e: EdgeId) -> i32 {
        if self.flipped.contains(&e) {
            -1
        } else {
            1
        }
    }

    pub fn flipped(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.flipped.iter().copied()
    }

    pub fn is_identity(&self) -> bool {
        self.flipped.is_empty()
    }

    /// ω′ = modified weights: ω′(e) = sign(e)·ω(e).
    pub fn apply(&self, w: &WeightAssignment) -> WeightAssignment {
        w.negate_edges(&self.flipped)
    }

    /// Composition of two modifications (signs multiply), i.e. the
    /// symmetric difference of the flipped sets.
    pub fn compose(&self, other: &SignModification) -> SignModification {
        SignModification {
            flipped: self
                .flipped
                .symmetric_difference(&other.flipped)
                .copied()
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct File {
            flips: Vec<EdgeId>,
        }
        let file = File {
            flips: self.flipped().collect(),
        };
        serde_json::to_string(&file).expect("modification serialization cannot fail")
    }

    pub fn from_json(input: &str) -> Result<Self, serde_json::Error> {
        #[derive(Deserialize)]
        struct File {
            flips: Vec<EdgeId>,
        }
        let file: File = serde_json::from_str(input)?;
        Ok(SignModification::from_flipped(file.flips))
    }
}

/// The modification accumulated by a ledger: flip where the count is odd.
pub fn ledger_to_modification(led: &Ledger) -> SignModification {
    SignModification::from_flipped(
        led.entries()
            .filter(|&(_, count)| count % 2 == 1)
            .map(|(e, _)| e),
    )
}

fn check_edge(g: &Graph, id: EdgeId) -> Result<(), MoveError> {
    g.edge(id).map(|_| ()).map_err(|_| MoveError::UnknownEdge(id))
}

fn check_unit_delta(delta: i8) -> Result<(), MoveError> {
    if delta == 1 || delta == -1 {
        Ok(())
    } else {
        Err(MoveError::BadDelta {
            found: delta,
            expected: "+1 or -1",
        })
    }
}

fn adjust_cross(
    p: &CrossingProfile,
    a: EdgeId,
    b: EdgeId,
    delta: i8,
) -> Result<CrossingProfile, MoveError> {
    p.adjusted_cross(a, b, delta as i64)
        .ok_or(MoveError::NegativeCount { a, b })
}

/// Applies one move, returning the rewritten profile and extended ledger.
/// Pure: inputs are untouched, and a failed move changes nothing.
pub fn apply_move(
    g: &Graph,
    p: &CrossingProfile,
    led: &Ledger,
    mv: &Move,
) -> Result<(CrossingProfile, Ledger), MoveError> {
    match mv {
        Move::AdjacentCross { e1, e2, delta } => {
            check_edge(g, *e1)?;
            check_edge(g, *e2)?;
            if e1 == e2 {
                return Err(MoveError::SameEdge(*e1));
            }
            check_unit_delta(*delta)?;
            let a = g.edge(*e1).expect("checked above");
            let b = g.edge(*e2).expect("checked above");
            if a.shared_vertex(b).is_none() {
                return Err(MoveError::NotAdjacent { e1: *e1, e2: *e2 });
            }
            Ok((adjust_cross(p, *e1, *e2, *delta)?, led.clone()))
        }
        Move::SelfCross { e, delta } => {
            check_edge(g, *e)?;
            check_unit_delta(*delta)?;
            let next = p
                .adjusted_self_cross(*e, *delta as i64)
                .ok_or(MoveError::NegativeSelfCount { e: *e })?;
            Ok((next, led.clone()))
        }
        Move::DoubleCross { e1, e2, delta } => {
            check_edge(g, *e1)?;
            check_edge(g, *e2)?;
            if e1 == e2 {
                return Err(MoveError::SameEdge(*e1));
            }
            if *delta != 2 && *delta != -2 {
                return Err(MoveError::BadDelta {
                    found: *delta,
                    expected: "+2 or -2",
                });
            }
            Ok((adjust_cross(p, *e1, *e2, *delta)?, led.clone()))
        }
        Move::VertexTransition { e, v, deltas } => {
            check_edge(g, *e)?;
            if *v == 0 || *v > g.vertex_count() {
                return Err(MoveError::UnknownVertex(*v));
            }
            let dragged = g.edge(*e).expect("checked above");
            if dragged.is_incident(*v) {
                return Err(MoveError::EndpointVertex { e: *e, v: *v });
            }
            let expected: BTreeSet<EdgeId> = g
                .incident_edges(*v)
                .into_iter()
                .filter(|id| id != e)
                .collect();
            let got: BTreeSet<EdgeId> = deltas.keys().copied().collect();
            if expected != got {
                return Err(MoveError::IncompleteDeltas {
                    missing: expected.difference(&got).copied().collect(),
                    unexpected: got.difference(&expected).copied().collect(),
                });
            }
            for &d in deltas.values() {
                check_unit_delta(d)?;
            }
            let mut next = p.clone();
            for (&f, &d) in deltas {
                next = adjust_cross(&next, *e, f, d)?;
            }
            let mut led = led.clone();
            led.record_flip(*e);
            Ok((next, led))
        }
    }
}

/// Left fold of `apply_move` over the script starting from an empty ledger.
pub fn apply_script(
    g: &Graph,
    p: &CrossingProfile,
    script: &[Move],
) -> Result<(CrossingProfile, Ledger), ScriptError> {
    let mut profile = p.clone();
    let mut ledger = Ledger::new();
    for (index, mv) in script.iter().enumerate() {
        (profile, ledger) = apply_move(g, &profile, &ledger, mv)
            .map_err(|source| ScriptError { index, source })?;
    }
    Ok((profile, ledger))
}

#[derive(Serialize, Deserialize)]
struct DeltaEntry {
    f: EdgeId,
    d: i8,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum MoveFile {
    AdjacentCross { e1: EdgeId, e2: EdgeId, delta: i8 },
    SelfCross { e: EdgeId, delta: i8 },
    DoubleCross { e1: EdgeId, e2: EdgeId, delta: i8 },
    VertexTransition {
        e: EdgeId,
        v: VertexId,
        deltas: Vec<DeltaEntry>,
    },
}

/// Parses a move script: a JSON array of tagged move objects.
pub fn script_from_json(input: &str) -> Result<Vec<Move>, MoveError> {
    let files: Vec<MoveFile> =
        serde_json::from_str(input).map_err(|e| MoveError::Json(e.to_string()))?;
    files
        .into_iter()
        .map(|mf| {
            Ok(match mf {
                MoveFile::AdjacentCross { e1, e2, delta } => Move::AdjacentCross { e1, e2, delta },
                MoveFile::SelfCross { e, delta } => Move::SelfCross { e, delta },
                MoveFile::DoubleCross { e1, e2, delta } => Move::DoubleCross { e1, e2, delta },
                MoveFile::VertexTransition { e, v, deltas } => {
                    let mut map = BTreeMap::new();
                    for entry in deltas {
                        if map.insert(entry.f, entry.d).is_some() {
                            return Err(MoveError::Json(format!(
                                "duplicate delta for edge {}",
                                entry.f
                            )));
                        }
                    }
                    Move::VertexTransition { e, v, deltas: map }
                }
            })
        })
        .collect()
}

/// Serializes a move script in the format `script_from_json` reads.
pub fn script_to_json(script: &[Move]) -> String {
    let files: Vec<MoveFile> = script
        .iter()
        .map(|mv| match mv {
            Move::AdjacentCross { e1, e2, delta } => MoveFile::AdjacentCross {
                e1: *e1,
                e2: *e2,
                delta: *delta,
            },
            Move::SelfCross { e, delta } => MoveFile::SelfCross {
                e: *e,
                delta: *delta,
            },
            Move::DoubleCross { e1, e2, delta } => MoveFile::DoubleCross {
                e1: *e1,
                e2: *e2,
                delta: *delta,
            },
            Move::VertexTransition { e, v, deltas } => MoveFile::VertexTransition {
                e: *e,
                v: *v,
                deltas: deltas.iter().map(|(&f, &d)| DeltaEntry { f, d }).collect(),
            },
        })
        .collect();
    serde_json::to_string(&files).expect("script serialization cannot fail")
}

/// The hexagonal redraw of the alternately labeled K₃,₃, replayed as a
/// script: drag the long edge {3,6} (id 7) across vertices 4 and 5 —
/// flipping its weight twice — then straighten the two single crossings
/// with its neighbors {3,4} and {5,6} and the double crossing with {4,5}.
/// Starting from the half-circle profile this leaves a single crossing on
/// the disjoint pair {1,4}/{2,5} (ids 2 and 5).
pub fn k33_redraw_script() -> Vec<Move> {
    vec![
        Move::VertexTransition {
            e: 7,
            v: 4,
            deltas: BTreeMap::from([(2, -1), (6, 1), (8, 1)]),
        },
        Move::VertexTransition {
            e: 7,
            v: 5,
            deltas: BTreeMap::from([(5, -1), (8, 1), (9, 1)]),
        },
        Move::AdjacentCross {
            e1: 6,
            e2: 7,
            delta: -1,
        },
        Move::AdjacentCross {
            e1: 9,
            e2: 7,
            delta: -1,
        },
        Move::DoubleCross {
            e1: 8,
            e2: 7,
            delta: -2,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{stembridge_profile, zero_profile, VertexOrder};
    use crate::graph::Edge;
    use crate::matching::signed_sum;
    use crate::ring::RingElem;

    #[test]
    fn double_cross_down_leaves_ledger_alone() {
        let g = Graph::cycle(4);
        let mut p = zero_profile(&g);
        p.set_cross(1, 4, 2);
        let led = Ledger::new();
        let mv = Move::DoubleCross {
            e1: 1,
            e2: 4,
            delta: -2,
        };
        let (p2, led2) = apply_move(&g, &p, &led, &mv).unwrap();
        assert_eq!(p2.cross(1, 4), 0);
        assert!(led2.is_empty());
    }

    #[test]
    fn vertex_transition_touches_every_other_edge_at_the_vertex() {
        // star at vertex 4 of K4: edges 3={1,4}, 5={2,4}, 6={3,4}; drag 1={1,2}?
        // edge 4={2,3} is not incident to vertex 4
        let g = Graph::complete(4);
        let p = zero_profile(&g);
        let mv = Move::VertexTransition {
            e: 4,
            v: 4,
            deltas: BTreeMap::from([(3, 1), (5, 1), (6, 1)]),
        };
        let (p2, led) = apply_move(&g, &p, &Ledger::new(), &mv).unwrap();
        assert_eq!(p2.cross(4, 3), 1);
        assert_eq!(p2.cross(4, 5), 1);
        assert_eq!(p2.cross(4, 6), 1);
        assert_eq!(led.flips(4), 1);
    }

    #[test]
    fn guards_reject_invalid_moves() {
        let g = Graph::complete(4);
        let p = zero_profile(&g);
        let led = Ledger::new();

        let below_zero = Move::SelfCross { e: 1, delta: -1 };
        assert_eq!(
            apply_move(&g, &p, &led, &below_zero),
            Err(MoveError::NegativeSelfCount { e: 1 })
        );

        // edges 1={1,2} and 6={3,4} are disjoint
        let disjoint = Move::AdjacentCross {
            e1: 1,
            e2: 6,
            delta: 1,
        };
        assert_eq!(
            apply_move(&g, &p, &led, &disjoint),
            Err(MoveError::NotAdjacent { e1: 1, e2: 6 })
        );

        let endpoint = Move::VertexTransition {
            e: 1,
            v: 2,
            deltas: BTreeMap::new(),
        };
        assert_eq!(
            apply_move(&g, &p, &led, &endpoint),
            Err(MoveError::EndpointVertex { e: 1, v: 2 })
        );

        // dragging edge 4={2,3} over vertex 4 must list edges 3, 5, 6
        let incomplete = Move::VertexTransition {
            e: 4,
            v: 4,
            deltas: BTreeMap::from([(3, 1), (5, 1)]),
        };
        assert_eq!(
            apply_move(&g, &p, &led, &incomplete),
            Err(MoveError::IncompleteDeltas {
                missing: vec![6],
                unexpected: vec![]
            })
        );

        let foreign = Move::VertexTransition {
            e: 4,
            v: 4,
            deltas: BTreeMap::from([(3, 1), (5, 1), (6, 1), (1, 1)]),
        };
        assert_eq!(
            apply_move(&g, &p, &led, &foreign),
            Err(MoveError::IncompleteDeltas {
                missing: vec![],
                unexpected: vec![1]
            })
        );

        let bad_delta = Move::AdjacentCross {
            e1: 1,
            e2: 2,
            delta: 2,
        };
        assert!(matches!(
            apply_move(&g, &p, &led, &bad_delta),
            Err(MoveError::BadDelta { found: 2, .. })
        ));

        let same = Move::DoubleCross {
            e1: 3,
            e2: 3,
            delta: 2,
        };
        assert_eq!(apply_move(&g, &p, &led, &same), Err(MoveError::SameEdge(3)));

        let unknown = Move::SelfCross { e: 9, delta: 1 };
        assert_eq!(
            apply_move(&g, &p, &led, &unknown),
            Err(MoveError::UnknownEdge(9))
        );
    }

    #[test]
    fn parallel_edges_are_never_adjacent() {
        let g = Graph::new(
            3,
            vec![Edge::new(1, 1, 2), Edge::new(2, 1, 2), Edge::new(3, 2, 3)],
        )
        .unwrap();
        let mv = Move::AdjacentCross {
            e1: 1,
            e2: 2,
            delta: 1,
        };
        assert_eq!(
            apply_move(&g, &zero_profile(&g), &Ledger::new(), &mv),
            Err(MoveError::NotAdjacent { e1: 1, e2: 2 })
        );
        // but a parallel edge can still double-cross its twin
        let mv = Move::DoubleCross {
            e1: 1,
            e2: 2,
            delta: 2,
        };
        assert!(apply_move(&g, &zero_profile(&g), &Ledger::new(), &mv).is_ok());
    }

    #[test]
    fn empty_script_is_the_identity() {
        let g = Graph::cycle(4);
        let p = stembridge_profile(&g, &VertexOrder::identity(4)).unwrap();
        let (p2, led) = apply_script(&g, &p, &[]).unwrap();
        assert_eq!(p2, p);
        assert!(led.is_empty());
    }

    #[test]
    fn script_errors_carry_the_failing_index() {
        let g = Graph::cycle(4);
        let p = zero_profile(&g);
        let script = vec![
            Move::SelfCross { e: 1, delta: 1 },
            Move::SelfCross { e: 1, delta: -1 },
            Move::SelfCross { e: 1, delta: -1 },
        ];
        let err = apply_script(&g, &p, &script).unwrap_err();
        assert_eq!(err.index, 2);
        assert_eq!(err.source, MoveError::NegativeSelfCount { e: 1 });
    }

    #[test]
    fn transition_there_and_back_restores_profile_and_sign() {
        let g = Graph::complete(4);
        let p = zero_profile(&g);
        let there = Move::VertexTransition {
            e: 4,
            v: 4,
            deltas: BTreeMap::from([(3, 1), (5, 1), (6, 1)]),
        };
        let back = Move::VertexTransition {
            e: 4,
            v: 4,
            deltas: BTreeMap::from([(3, -1), (5, -1), (6, -1)]),
        };
        let (p2, led) = apply_script(&g, &p, &[there, back]).unwrap();
        assert_eq!(p2, p);
        assert_eq!(led.flips(4), 2);
        assert!(ledger_to_modification(&led).is_identity());
    }

    #[test]
    fn ledger_to_modification_takes_parity() {
        let mut led = Ledger::new();
        assert!(ledger_to_modification(&led).is_identity());
        led.record_flip(7);
        assert_eq!(ledger_to_modification(&led).sign(7), -1);
        led.record_flip(7);
        assert_eq!(ledger_to_modification(&led).sign(7), 1);
        led.record_flip(3);
        let m = ledger_to_modification(&led);
        assert_eq!(m.sign(3), -1);
        assert_eq!(m.sign(7), 1);
    }

    #[test]
    fn modification_application_and_composition() {
        let g = Graph::cycle(4);
        let w = WeightAssignment::symbolic(&g);
        let m = SignModification::from_flipped([2]);
        let w2 = m.apply(&w);
        assert_eq!(w2.get(2).unwrap(), &RingElem::variable(2).neg());
        assert_eq!(w2.get(1).unwrap(), &RingElem::variable(1));

        let other = SignModification::from_flipped([2, 3]);
        let composed = m.compose(&other);
        assert_eq!(composed, SignModification::from_flipped([3]));
    }

    /// Signed sum with ledger-adjusted weights is invariant under every move.
    fn assert_invariant(g: &Graph, p: &CrossingProfile, led: &Ledger, mv: &Move) {
        let w = WeightAssignment::symbolic(g);
        let before = signed_sum(g, &ledger_to_modification(led).apply(&w), p);
        let (p2, led2) = apply_move(g, p, led, mv).unwrap();
        let after = signed_sum(g, &ledger_to_modification(&led2).apply(&w), &p2);
        assert_eq!(before, after);
    }

    #[test]
    fn each_move_kind_preserves_the_signed_sum() {
        let g = Graph::complete(4);
        let ord = VertexOrder::identity(4);
        let p = stembridge_profile(&g, &ord).unwrap();
        let led = Ledger::new();

        assert_invariant(
            &g,
            &p,
            &led,
            &Move::AdjacentCross {
                e1: 1,
                e2: 2,
                delta: 1,
            },
        );
        assert_invariant(&g, &p, &led, &Move::SelfCross { e: 3, delta: 1 });
        assert_invariant(
            &g,
            &p,
            &led,
            &Move::DoubleCross {
                e1: 1,
                e2: 6,
                delta: 2,
            },
        );
        assert_invariant(
            &g,
            &p,
            &led,
            &Move::VertexTransition {
                e: 4,
                v: 4,
                deltas: BTreeMap::from([(3, 1), (5, 1), (6, 1)]),
            },
        );
        // and the sign-relevant one again on a profile with crossings to remove
        let mut p2 = p.clone();
        p2.set_cross(4, 3, 1);
        p2.set_cross(4, 5, 2);
        assert_invariant(
            &g,
            &p2,
            &led,
            &Move::VertexTransition {
                e: 4,
                v: 4,
                deltas: BTreeMap::from([(3, -1), (5, 1), (6, 1)]),
            },
        );
    }

    #[test]
    fn k33_redraw_replays_to_a_single_crossing() {
        let g = Graph::complete_bipartite_alternating(3, 3);
        let p0 = stembridge_profile(&g, &VertexOrder::identity(6)).unwrap();
        let (p_final, led) = apply_script(&g, &p0, &k33_redraw_script()).unwrap();

        // single crossing left, on the disjoint pair {1,4}/{2,5}
        assert_eq!(p_final.total_crossings(), 1);
        assert_eq!(p_final.cross(2, 5), 1);
        let e2 = g.edge(2).unwrap();
        let e5 = g.edge(5).unwrap();
        assert!(e2.is_disjoint(e5));

        // the dragged edge's weight flipped twice, netting +1
        assert_eq!(led.flips(7), 2);
        assert_eq!(led.entries().count(), 1);
        assert!(ledger_to_modification(&led).is_identity());

        // signed sums agree before and after, symbolically and at ω ≡ 1
        let w = WeightAssignment::symbolic(&g);
        let before = signed_sum(&g, &w, &p0);
        let after = signed_sum(&g, &ledger_to_modification(&led).apply(&w), &p_final);
        assert_eq!(before, after);

        let ones = WeightAssignment::ones(&g);
        assert_eq!(signed_sum(&g, &ones, &p0), RingElem::constant(4));
        assert_eq!(signed_sum(&g, &ones, &p_final), RingElem::constant(4));
    }

    #[test]
    fn script_json_round_trip() {
        let text = r#"[
            {"type": "vertex_transition", "e": 7, "v": 4,
             "deltas": [{"f": 2, "d": -1}, {"f": 6, "d": 1}, {"f": 8, "d": 1}]},
            {"type": "adjacent_cross", "e1": 6, "e2": 7, "delta": -1},
            {"type": "self_cross", "e": 3, "delta": 1},
            {"type": "double_cross", "e1": 8, "e2": 7, "delta": -2}
        ]"#;
        let script = script_from_json(text).unwrap();
        assert_eq!(script.len(), 4);
        assert_eq!(
            script[0],
            Move::VertexTransition {
                e: 7,
                v: 4,
                deltas: BTreeMap::from([(2, -1), (6, 1), (8, 1)]),
            }
        );
        let round = script_from_json(&script_to_json(&script)).unwrap();
        assert_eq!(round, script);

        assert!(matches!(
            script_from_json("[{\"type\": \"no_such_move\"}]"),
            Err(MoveError::Json(_))
        ));
        let dup = r#"[{"type": "vertex_transition", "e": 1, "v": 3,
                       "deltas": [{"f": 2, "d": 1}, {"f": 2, "d": -1}]}]"#;
        assert!(matches!(script_from_json(dup), Err(MoveError::Json(_))));
    }
}
