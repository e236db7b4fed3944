//! Finite loopless multigraphs with nowhere-zero edge weights, and exhaustive
//! perfect-matching enumeration at desk scale.
//!
//! Vertices are labeled 1..n. Edge ids are unique and dense 1..|E|; parallel
//! edges are permitted and carry distinct ids.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;
use thiserror::Error;

use crate::ring::{RingElem, RingError};

pub type EdgeId = u32;
pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {id} is a loop at vertex {vertex}")]
    LoopEdge { id: EdgeId, vertex: VertexId },
    #[error("edge {id} uses vertex label {label} outside 1..={n}")]
    BadVertexLabel { id: EdgeId, label: VertexId, n: u32 },
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(EdgeId),
    #[error("edge ids are not the dense range 1..={edge_count}")]
    NonContiguousEdgeIds { edge_count: usize },
    #[error("unknown edge id {0}")]
    UnknownEdgeId(EdgeId),
    #[error("no weight assigned to edge {0}")]
    MissingWeight(EdgeId),
    #[error("weight of edge {0} is zero; weights must be nowhere-zero")]
    ZeroWeight(EdgeId),
    #[error("invalid weight on edge {id}: {source}")]
    BadWeight { id: EdgeId, source: RingError },
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// An edge joining two distinct vertices, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn new(id: EdgeId, a: VertexId, b: VertexId) -> Self {
        Edge {
            id,
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    pub fn is_incident(&self, vertex: VertexId) -> bool {
        self.u == vertex || self.v == vertex
    }

    /// The endpoint shared with `other`, if exactly one exists.
    pub fn shared_vertex(&self, other: &Edge) -> Option<VertexId> {
        let mine = [self.u, self.v];
        let shared: Vec<VertexId> = mine
            .into_iter()
            .filter(|&w| other.is_incident(w))
            .collect();
        match shared.as_slice() {
            [w] => Some(*w),
            _ => None,
        }
    }

    pub fn is_disjoint(&self, other: &Edge) -> bool {
        !other.is_incident(self.u) && !other.is_incident(self.v)
    }
}

/// Validated loopless multigraph. Immutable once constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    edges: Vec<Edge>,
}

impl Graph {
    /// Validates all graph invariants and keeps edges sorted by id.
    pub fn new(n: u32, edges: impl IntoIterator<Item = Edge>) -> Result<Graph, GraphError> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_by_key(|e| e.id);
        for e in &edges {
            if e.u == e.v {
                return Err(GraphError::LoopEdge {
                    id: e.id,
                    vertex: e.u,
                });
            }
            for label in [e.u, e.v] {
                if label == 0 || label > n {
                    return Err(GraphError::BadVertexLabel { id: e.id, label, n });
                }
            }
        }
        for w in edges.windows(2) {
            if w[0].id == w[1].id {
                return Err(GraphError::DuplicateEdgeId(w[0].id));
            }
        }
        let dense = edges
            .iter()
            .enumerate()
            .all(|(i, e)| e.id as usize == i + 1);
        if !dense {
            return Err(GraphError::NonContiguousEdgeIds {
                edge_count: edges.len(),
            });
        }
        Ok(Graph { n, edges })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge, GraphError> {
        let idx = (id as usize)
            .checked_sub(1)
            .filter(|&i| i < self.edges.len())
            .ok_or(GraphError::UnknownEdgeId(id))?;
        Ok(&self.edges[idx])
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        1..=self.n
    }

    /// Edge ids incident to `vertex`, ascending.
    pub fn incident_edges(&self, vertex: VertexId) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|e| e.is_incident(vertex))
            .map(|e| e.id)
            .collect()
    }

    /// True when no two edges join the same vertex pair.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert((e.u, e.v)))
    }

    // ---- small named families, edge ids in lexicographic (u, v) order ----

    fn from_pairs(n: u32, mut pairs: Vec<(VertexId, VertexId)>) -> Graph {
        for p in pairs.iter_mut() {
            *p = (p.0.min(p.1), p.0.max(p.1));
        }
        pairs.sort();
        let edges = pairs
            .into_iter()
            .enumerate()
            .map(|(i, (u, v))| Edge::new(i as EdgeId + 1, u, v));
        Graph::new(n, edges).expect("generated family is always valid")
    }

    pub fn path(n: u32) -> Graph {
        Graph::from_pairs(n, (1..n).map(|i| (i, i + 1)).collect())
    }

    pub fn cycle(n: u32) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut pairs: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        pairs.push((1, n));
        Graph::from_pairs(n, pairs)
    }

    /// Grid with `rows * cols` vertices labeled row-major.
    pub fn grid(rows: u32, cols: u32) -> Graph {
        let label = |r: u32, c: u32| r * cols + c + 1;
        let mut pairs = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    pairs.push((label(r, c), label(r, c + 1)));
                }
                if r + 1 < rows {
                    pairs.push((label(r, c), label(r + 1, c)));
                }
            }
        }
        Graph::from_pairs(rows * cols, pairs)
    }

    /// Rim cycle on 1..n-1 plus hub vertex n joined to every rim vertex.
    pub fn wheel(n: u32) -> Graph {
        assert!(n >= 4, "wheel needs at least 4 vertices");
        let rim = n - 1;
        let mut pairs: Vec<_> = (1..rim).map(|i| (i, i + 1)).collect();
        pairs.push((1, rim));
        pairs.extend((1..=rim).map(|i| (i, n)));
        Graph::from_pairs(n, pairs)
    }

    pub fn complete(n: u32) -> Graph {
        let pairs = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        Graph::from_pairs(n, pairs)
    }

    /// Parts 1..=a and a+1..=a+b.
    pub fn complete_bipartite(a: u32, b: u32) -> Graph {
        let pairs = (1..=a)
            .flat_map(|u| (a + 1..=a + b).map(move |v| (u, v)))
            .collect();
        Graph::from_pairs(a + b, pairs)
    }

    /// Complete bipartite graph whose parts are the odd and the even labels,
    /// so that consecutive labels alternate sides — the labeling that puts
    /// the two parts on alternating positions of a line or hexagon. Requires
    /// part sizes differing by at most one so the labels stay within 1..=n.
    pub fn complete_bipartite_alternating(odd: u32, even: u32) -> Graph {
        assert!(
            odd.abs_diff(even) <= 1,
            "alternating labels need part sizes within one of each other"
        );
        let odds = (0..odd).map(|i| 2 * i + 1);
        let pairs = odds
            .flat_map(|u| (0..even).map(move |j| (u, 2 * j + 2)))
            .collect();
        Graph::from_pairs(odd + even, pairs)
    }
}

/// A set of pairwise vertex-disjoint edges covering every vertex.
/// Ordered lexicographically by its sorted edge-id sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Matching(BTreeSet<EdgeId>);

impl Matching {
    pub fn from_ids<I: IntoIterator<Item = EdgeId>>(ids: I) -> Self {
        Matching(ids.into_iter().collect())
    }

    pub fn ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.0.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Unordered pairs of distinct edge ids in the matching.
    pub fn edge_pairs(&self) -> impl Iterator<Item = (EdgeId, EdgeId)> + '_ {
        let ids: Vec<EdgeId> = self.0.iter().copied().collect();
        (0..ids.len()).flat_map(move |i| {
            let ids = ids.clone();
            (i + 1..ids.len()).map(move |j| (ids[i], ids[j]))
        })
    }
}

/// True iff `ids` is a perfect matching of `g`.
pub fn is_perfect_matching(
    g: &Graph,
    ids: impl IntoIterator<Item = EdgeId>,
) -> Result<bool, GraphError> {
    let mut covered = BTreeSet::new();
    for id in ids {
        let e = g.edge(id)?;
        if !covered.insert(e.u) || !covered.insert(e.v) {
            return Ok(false);
        }
    }
    Ok(covered.len() == g.vertex_count() as usize)
}

/// All perfect matchings, duplicate-free, sorted lexicographically by edge-id
/// sequence. Empty when the vertex count is odd.
pub fn enumerate_perfect_matchings(g: &Graph) -> Vec<Matching> {
    enumerate_perfect_matchings_capped(g, usize::MAX).expect("uncapped enumeration")
}

/// As above but aborts with `None` once more than `cap` matchings are found.
pub fn enumerate_perfect_matchings_capped(g: &Graph, cap: usize) -> Option<Vec<Matching>> {
    if g.vertex_count() % 2 == 1 {
        return Some(Vec::new());
    }
    let n = g.vertex_count() as usize;
    let mut incident: Vec<Vec<EdgeId>> = vec![Vec::new(); n + 1];
    for e in g.edges() {
        incident[e.u as usize].push(e.id);
        incident[e.v as usize].push(e.id);
    }
    let mut covered = vec![false; n + 1];
    let mut chosen = Vec::with_capacity(n / 2);
    let mut out = Vec::new();
    if !extend(g, &incident, &mut covered, &mut chosen, &mut out, cap) {
        return None;
    }
    out.sort();
    Some(out)
}

fn extend(
    g: &Graph,
    incident: &[Vec<EdgeId>],
    covered: &mut [bool],
    chosen: &mut Vec<EdgeId>,
    out: &mut Vec<Matching>,
    cap: usize,
) -> bool {
    let next = (1..covered.len()).find(|&v| !covered[v]);
    let v = match next {
        Some(v) => v,
        None => {
            out.push(Matching::from_ids(chosen.iter().copied()));
            return out.len() <= cap;
        }
    };
    for &id in &incident[v] {
        let e = g.edge(id).expect("incidence lists hold valid ids");
        let other = if e.u as usize == v { e.v } else { e.u } as usize;
        if covered[other] {
            continue;
        }
        covered[v] = true;
        covered[other] = true;
        chosen.push(id);
        let ok = extend(g, incident, covered, chosen, out, cap);
        chosen.pop();
        covered[v] = false;
        covered[other] = false;
        if !ok {
            return false;
        }
    }
    true
}

/// Nowhere-zero edge weights, total on the edge set of the graph it was
/// built against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightAssignment {
    weights: BTreeMap<EdgeId, RingElem>,
}

impl WeightAssignment {
    pub fn new(g: &Graph, weights: BTreeMap<EdgeId, RingElem>) -> Result<Self, GraphError> {
        for (&id, w) in &weights {
            g.edge(id)?;
            if w.is_zero() {
                return Err(GraphError::ZeroWeight(id));
            }
        }
        for e in g.edges() {
            if !weights.contains_key(&e.id) {
                return Err(GraphError::MissingWeight(e.id));
            }
        }
        Ok(WeightAssignment { weights })
    }

    /// Every edge weighted by its own indeterminate x_e.
    pub fn symbolic(g: &Graph) -> Self {
        WeightAssignment {
            weights: g
                .edges()
                .iter()
                .map(|e| (e.id, RingElem::variable(e.id)))
                .collect(),
        }
    }

    /// The constant weight 1, used for enumeration.
    pub fn ones(g: &Graph) -> Self {
        WeightAssignment {
            weights: g.edges().iter().map(|e| (e.id, RingElem::one())).collect(),
        }
    }

    pub fn get(&self, id: EdgeId) -> Option<&RingElem> {
        self.weights.get(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, &RingElem)> {
        self.weights.iter().map(|(&id, w)| (id, w))
    }

    /// Same weights with the listed edges negated. Negation preserves the
    /// nowhere-zero and totality invariants.
    pub fn negate_edges(&self, flipped: &BTreeSet<EdgeId>) -> WeightAssignment {
        WeightAssignment {
            weights: self
                .weights
                .iter()
                .map(|(&id, w)| {
                    let w = if flipped.contains(&id) { w.neg() } else { w.clone() };
                    (id, w)
                })
                .collect(),
        }
    }
}

#[derive(Deserialize)]
struct EdgeFile {
    id: EdgeId,
    u: VertexId,
    v: VertexId,
    #[serde(default)]
    weight: Option<String>,
}

#[derive(Deserialize)]
struct GraphFile {
    n: u32,
    edges: Vec<EdgeFile>,
}

/// Loads a graph plus weight assignment from JSON. A missing `weight` field
/// defaults to the symbolic weight `x<id>`.
pub fn graph_from_json(input: &str) -> Result<(Graph, WeightAssignment), GraphError> {
    let file: GraphFile =
        serde_json::from_str(input).map_err(|e| GraphError::Json(e.to_string()))?;
    let mut weights = BTreeMap::new();
    let mut edges = Vec::with_capacity(file.edges.len());
    for ef in &file.edges {
        edges.push(Edge::new(ef.id, ef.u, ef.v));
        let w = match &ef.weight {
            Some(text) => RingElem::parse(text)
                .map_err(|source| GraphError::BadWeight { id: ef.id, source })?,
            None => RingElem::variable(ef.id),
        };
        weights.insert(ef.id, w);
    }
    let g = Graph::new(file.n, edges)?;
    let w = WeightAssignment::new(&g, weights)?;
    Ok((g, w))
}
