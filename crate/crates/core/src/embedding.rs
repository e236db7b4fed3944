//! Combinatorial stand-in for plane drawings: crossing profiles.
//!
//! A drawing is represented only by how often each unordered pair of distinct
//! edges crosses, plus per-edge self-crossing counts. Every sign-relevant
//! quantity factors through these counts, so curve geometry never appears.
//! A k-fold multiple point is stored as its C(k,2) pairwise crossings, which
//! makes "untangling" a multiple crossing a representational no-op. The
//! classical side condition that only two curves pass through any crossing
//! point is vacuous in this form and is deliberately not modeled.
//!
//! Whether a given profile is realizable by an actual drawing is not checked;
//! operations that need co-realizable profiles surface failures as
//! `NoSolution` in the solver instead.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("graph has parallel edges; this operation needs a simple graph")]
    NotSimpleGraph,
    #[error("profile mentions unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("invalid vertex order: {0}")]
    BadOrder(String),
    #[error("malformed profile JSON: {0}")]
    Json(String),
}

/// A bijective arrangement of the vertices 1..n along a line; positions are
/// 1-based, so `vertex_at(1)` is the leftmost vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    seq: Vec<VertexId>,
    pos: Vec<u32>,
}

impl VertexOrder {
    pub fn new(seq: Vec<VertexId>) -> Result<Self, EmbeddingError> {
        let n = seq.len() as u32;
        let mut pos = vec![0u32; n as usize + 1];
        for (i, &v) in seq.iter().enumerate() {
            if v == 0 || v > n {
                return Err(EmbeddingError::BadOrder(format!(
                    "label {v} outside 1..={n}"
                )));
            }
            if pos[v as usize] != 0 {
                return Err(EmbeddingError::BadOrder(format!("label {v} repeated")));
            }
            pos[v as usize] = i as u32 + 1;
        }
        Ok(VertexOrder { seq, pos })
    }

    pub fn identity(n: u32) -> Self {
        VertexOrder::new((1..=n).collect()).expect("identity is a permutation")
    }

    pub fn len(&self) -> u32 {
        self.seq.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Vertex at 1-based position `i`.
    pub fn vertex_at(&self, i: u32) -> VertexId {
        self.seq[i as usize - 1]
    }

    /// 1-based position of `vertex`.
    pub fn position_of(&self, vertex: VertexId) -> u32 {
        self.pos[vertex as usize]
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.seq
    }
}

/// Crossing counts of a drawing: unordered distinct edge pairs to counts,
/// and per-edge self-crossing counts. Absent entries are zero; zero counts
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrossingProfile {
    cross: BTreeMap<(EdgeId, EdgeId), u32>,
    self_cross: BTreeMap<EdgeId, u32>,
}

fn pair_key(a: EdgeId, b: EdgeId) -> (EdgeId, EdgeId) {
    assert_ne!(a, b, "crossing pairs join distinct edges");
    (a.min(b), a.max(b))
}

impl CrossingProfile {
    pub fn new() -> Self {
        CrossingProfile::default()
    }

    pub fn cross(&self, a: EdgeId, b: EdgeId) -> u32 {
        self.cross.get(&pair_key(a, b)).copied().unwrap_or(0)
    }

    pub fn self_cross(&self, e: EdgeId) -> u32 {
        self.self_cross.get(&e).copied().unwrap_or(0)
    }

    pub fn set_cross(&mut self, a: EdgeId, b: EdgeId, count: u32) {
        let key = pair_key(a, b);
        if count == 0 {
            self.cross.remove(&key);
        } else {
            self.cross.insert(key, count);
        }
    }

    pub fn set_self_cross(&mut self, e: EdgeId, count: u32) {
        if count == 0 {
            self.self_cross.remove(&e);
        } else {
            self.self_cross.insert(e, count);
        }
    }

    /// New profile with cross(a, b) shifted by `delta`; `None` if the count
    /// would become negative.
    pub fn adjusted_cross(&self, a: EdgeId, b: EdgeId, delta: i64) -> Option<Self> {
        let count = self.cross(a, b) as i64 + delta;
        let count = u32::try_from(count).ok()?;
        let mut next = self.clone();
        next.set_cross(a, b, count);
        Some(next)
    }

    /// New profile with self_cross(e) shifted by `delta`; `None` if negative.
    pub fn adjusted_self_cross(&self, e: EdgeId, delta: i64) -> Option<Self> {
        let count = self.self_cross(e) as i64 + delta;
        let count = u32::try_from(count).ok()?;
        let mut next = self.clone();
        next.set_self_cross(e, count);
        Some(next)
    }

    /// Stored pair entries, ascending by key; counts are always positive.
    pub fn cross_entries(&self) -> impl Iterator<Item = ((EdgeId, EdgeId), u32)> + '_ {
        self.cross.iter().map(|(&k, &c)| (k, c))
    }

    pub fn self_cross_entries(&self) -> impl Iterator<Item = (EdgeId, u32)> + '_ {
        self.self_cross.iter().map(|(&e, &c)| (e, c))
    }

    /// Sum of all pair counts (self-crossings excluded).
    pub fn total_crossings(&self) -> u64 {
        self.cross.values().map(|&c| c as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cross.is_empty() && self.self_cross.is_empty()
    }

    /// Checks that every edge id mentioned by the profile exists in `g`.
    pub fn validate_for(&self, g: &Graph) -> Result<(), EmbeddingError> {
        let known = |id: EdgeId| {
            g.edge(id)
                .map(|_| ())
                .map_err(|_| EmbeddingError::UnknownEdge(id))
        };
        for &(a, b) in self.cross.keys() {
            known(a)?;
            known(b)?;
        }
        for &e in self.self_cross.keys() {
            known(e)?;
        }
        Ok(())
    }
}

/// The profile of a planar (crossing-free) drawing: all counts zero.
pub fn zero_profile(_g: &Graph) -> CrossingProfile {
    CrossingProfile::new()
}

/// The half-circle drawing: vertex at position i sits at (i, 0) and each edge
/// is the upper half-circle over its endpoints. Two edges cross exactly once
/// iff their position intervals strictly interleave (i < k < j < l with
/// edges spanning [i, j] and [k, l]); edges sharing an endpoint never cross,
/// and no edge crosses itself.
pub fn stembridge_profile(g: &Graph, ord: &VertexOrder) -> Result<CrossingProfile, EmbeddingError> {
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
    let span = |id: EdgeId| {
        let e = g.edge(id).expect("iterating over edges of g");
        let p = ord.position_of(e.u);
        let q = ord.position_of(e.v);
        (p.min(q), p.max(q))
    };
    let mut profile = CrossingProfile::new();
    let edges = g.edges();
    for (idx, e) in edges.iter().enumerate() {
        let (i, j) = span(e.id);
        for f in &edges[idx + 1..] {
            let (k, l) = span(f.id);
            let interleave = (i < k && k < j && j < l) || (k < i && i < l && l < j);
            if interleave {
                profile.set_cross(e.id, f.id, 1);
            }
        }
    }
    Ok(profile)
}

/// Crossing-count parities on every vertex-disjoint edge pair of `g`.
/// Adjacent pairs are omitted: a pair of edges inside a matching is always
/// vertex-disjoint, so these parities determine every matching sign.
pub fn disjoint_parity(p: &CrossingProfile, g: &Graph) -> BTreeMap<(EdgeId, EdgeId), u8> {
    let mut out = BTreeMap::new();
    let edges = g.edges();
    for (idx, e) in edges.iter().enumerate() {
        for f in &edges[idx + 1..] {
            if e.is_disjoint(f) {
                out.insert((e.id, f.id), (p.cross(e.id, f.id) % 2) as u8);
            }
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct CrossEntry {
    e1: EdgeId,
    e2: EdgeId,
    count: u32,
}

#[derive(Serialize, Deserialize)]
struct SelfEntry {
    e: EdgeId,
    count: u32,
}

#[derive(Serialize, Deserialize)]
struct ProfileFile {
    #[serde(default)]
    cross: Vec<CrossEntry>,
    #[serde(default)]
    self_cross: Vec<SelfEntry>,
}

/// Loads a profile from JSON and validates its edge ids against `g`.
/// Omitted entries are zero; repeated entries for the same pair accumulate.
pub fn profile_from_json(g: &Graph, input: &str) -> Result<CrossingProfile, EmbeddingError> {
    let file: ProfileFile =
        serde_json::from_str(input).map_err(|e| EmbeddingError::Json(e.to_string()))?;
    let mut profile = CrossingProfile::new();
    for entry in &file.cross {
        if entry.e1 == entry.e2 {
            return Err(EmbeddingError::Json(format!(
                "cross entry pairs edge {} with itself",
                entry.e1
            )));
        }
        let so_far = profile.cross(entry.e1, entry.e2);
        profile.set_cross(entry.e1, entry.e2, so_far + entry.count);
    }
    for entry in &file.self_cross {
        let so_far = profile.self_cross(entry.e);
        profile.set_self_cross(entry.e, so_far + entry.count);
    }
    profile.validate_for(g)?;
    Ok(profile)
}

/// Serializes a profile in the same JSON shape `profile_from_json` reads.
pub fn profile_to_json(p: &CrossingProfile) -> String {
    let file = ProfileFile {
        cross: p
            .cross_entries()
            .map(|((e1, e2), count)| CrossEntry { e1, e2, count })
            .collect(),
        self_cross: p
            .self_cross_entries()
            .map(|(e, count)| SelfEntry { e, count })
            .collect(),
    };
    serde_json::to_string(&file).expect("profile serialization cannot fail")
}
