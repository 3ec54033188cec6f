//! Combinatorial degenerations into planes.
//!
//! A [`DegenerationComplex`] records which planes meet along which lines
//! (edges) and which lines meet at which singular points (vertices). It is
//! read from the JSON degeneration file, checked for the local conditions a
//! degeneration combinatorially homeomorphic to a surface must satisfy, and
//! queried for vertex types, parasitic line pairs and the dual graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::PresentationOverrides;

/// A line of the degeneration: the intersection of two planes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub planes: [usize; 2],
}

impl Edge {
    /// Planes shared with `other` (0, 1 or 2 of them).
    pub fn shared_planes(&self, other: &Edge) -> usize {
        self.planes
            .iter()
            .filter(|p| other.planes.contains(p))
            .count()
    }

    pub fn is_degenerate(&self) -> bool {
        self.planes[0] == self.planes[1]
    }
}

/// A singular point where several lines meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ComplexFile {
    name: String,
    planes: usize,
    edges: Vec<Edge>,
    vertices: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    overrides: Option<PresentationOverrides>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("empty degeneration file")]
    Empty,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: plane count must be positive")]
    NoPlanes { field: String },
    #[error("{field}: duplicate edge id {id}")]
    DuplicateEdgeId { field: String, id: usize },
    #[error("{field}: duplicate vertex id {id}")]
    DuplicateVertexId { field: String, id: usize },
    #[error("{field}: plane index {plane} out of range 1..={planes}")]
    PlaneOutOfRange {
        field: String,
        plane: usize,
        planes: usize,
    },
    #[error("{field}: vertex {vertex} references unknown edge {edge}")]
    UnknownEdge {
        field: String,
        vertex: usize,
        edge: usize,
    },
    #[error("vertex {vertex} has {count} edges; only inner 3- and 4-points are supported")]
    UnsupportedMultiplicity { vertex: usize, count: usize },
    #[error("vertex {vertex}: the plane-sharing relation of its edges is not a {k}-cycle")]
    NotACycle { vertex: usize, k: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
}

/// The planes, lines and singular points of a degeneration `X₀ = ⋃ Pᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerationComplex {
    name: String,
    plane_count: usize,
    edges: Vec<Edge>,
    vertices: Vec<Vertex>,
    overrides: Option<PresentationOverrides>,
}

impl DegenerationComplex {
    /// Builds a complex, rejecting structural errors (duplicate ids, plane
    /// indices out of range, dangling edge references). Softer conditions are
    /// left to [`DegenerationComplex::validate`].
    pub fn new(
        name: impl Into<String>,
        plane_count: usize,
        edges: Vec<Edge>,
        vertices: Vec<Vertex>,
        overrides: Option<PresentationOverrides>,
    ) -> Result<Self, ComplexError> {
        if plane_count == 0 {
            return Err(ComplexError::NoPlanes {
                field: "planes".into(),
            });
        }
        let mut seen = BTreeSet::new();
        for (k, e) in edges.iter().enumerate() {
            if !seen.insert(e.id) {
                return Err(ComplexError::DuplicateEdgeId {
                    field: format!("edges[{k}].id"),
                    id: e.id,
                });
            }
            for &p in &e.planes {
                if p == 0 || p > plane_count {
                    return Err(ComplexError::PlaneOutOfRange {
                        field: format!("edges[{k}].planes"),
                        plane: p,
                        planes: plane_count,
                    });
                }
            }
        }
        let mut seen_v = BTreeSet::new();
        for (k, v) in vertices.iter().enumerate() {
            if !seen_v.insert(v.id) {
                return Err(ComplexError::DuplicateVertexId {
                    field: format!("vertices[{k}].id"),
                    id: v.id,
                });
            }
            for &e in &v.edges {
                if !seen.contains(&e) {
                    return Err(ComplexError::UnknownEdge {
                        field: format!("vertices[{k}].edges"),
                        vertex: v.id,
                        edge: e,
                    });
                }
            }
        }
        Ok(Self {
            name: name.into(),
            plane_count,
            edges,
            vertices,
            overrides,
        })
    }

    /// Parses a degeneration file.
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        if text.trim().is_empty() {
            return Err(ComplexError::Empty);
        }
        let file: ComplexFile = serde_json::from_str(text).map_err(|e| ComplexError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::new(
            file.name,
            file.planes,
            file.edges,
            file.vertices,
            file.overrides,
        )
    }

    pub fn to_json(&self) -> String {
        let file = ComplexFile {
            name: self.name.clone(),
            planes: self.plane_count,
            edges: self.edges.clone(),
            vertices: self.vertices.clone(),
            overrides: self.overrides.clone(),
        };
        serde_json::to_string_pretty(&file).expect("complex serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn plane_count(&self) -> usize {
        self.plane_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn overrides(&self) -> Option<&PresentationOverrides> {
        self.overrides.as_ref()
    }

    pub fn with_overrides(mut self, overrides: Option<PresentationOverrides>) -> Self {
        self.overrides = overrides;
        self
    }

    pub fn edge(&self, id: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn vertex(&self, id: usize) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    fn edge_unchecked(&self, id: usize) -> &Edge {
        self.edge(id).expect("edge ids are checked on construction")
    }

    /// Number of vertices each edge id appears in.
    fn endpoint_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts: BTreeMap<usize, usize> = self.edges.iter().map(|e| (e.id, 0)).collect();
        for v in &self.vertices {
            let distinct: BTreeSet<usize> = v.edges.iter().copied().collect();
            for e in distinct {
                *counts.entry(e).or_default() += 1;
            }
        }
        counts
    }

    /// Checks the local combinatorial conditions. Violations are returned as
    /// data; an empty list means the complex is usable by the pipeline.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        let mut ids: Vec<usize> = self.edges.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        if ids.iter().enumerate().any(|(k, &id)| id != k + 1) {
            violations.push(Violation::EdgeIdsNotConsecutive);
        }
        for e in &self.edges {
            if e.is_degenerate() {
                violations.push(Violation::DegenerateEdge {
                    edge: e.id,
                    plane: e.planes[0],
                });
            }
        }

        let counts = self.endpoint_counts();
        let mut every_edge_two = true;
        for (&edge, &n) in &counts {
            if n != 2 {
                every_edge_two = false;
                violations.push(Violation::EndpointCount {
                    edge,
                    endpoints: n,
                });
            }
        }

        for v in &self.vertices {
            let distinct: BTreeSet<usize> = v.edges.iter().copied().collect();
            if distinct.len() != v.edges.len() {
                violations.push(Violation::RepeatedEdgeAtVertex { vertex: v.id });
            }
            if distinct.len() < 3 {
                violations.push(Violation::TooFewEdges {
                    vertex: v.id,
                    count: distinct.len(),
                });
                continue;
            }
            let list: Vec<&Edge> = distinct.iter().map(|&id| self.edge_unchecked(id)).collect();
            for (a, ea) in list.iter().enumerate() {
                for eb in &list[a + 1..] {
                    if !ea.is_degenerate() && ea.shared_planes(eb) == 2 {
                        violations.push(Violation::RepeatedPlanePair {
                            vertex: v.id,
                            edges: (ea.id, eb.id),
                        });
                    }
                }
            }
            match self.classify_vertex(v) {
                Ok(_) => {}
                Err(ComplexError::UnsupportedMultiplicity { count, .. }) => {
                    violations.push(Violation::UnsupportedMultiplicity {
                        vertex: v.id,
                        count,
                    })
                }
                Err(_) => violations.push(Violation::NotCyclic { vertex: v.id }),
            }
        }

        if self.dual_graph().components() > 1 {
            violations.push(Violation::DisconnectedDualGraph);
        }

        ValidationReport {
            violations,
            every_edge_in_two_vertices: every_edge_two,
        }
    }

    /// Determines the vertex type from the plane-sharing relation of its edges.
    pub fn classify_vertex(&self, v: &Vertex) -> Result<VertexClass, ComplexError> {
        let ids: BTreeSet<usize> = v.edges.iter().copied().collect();
        let ids: Vec<usize> = ids.into_iter().collect();
        let k = ids.len();
        if k != 3 && k != 4 {
            return Err(ComplexError::UnsupportedMultiplicity {
                vertex: v.id,
                count: k,
            });
        }
        let edges: Vec<&Edge> = ids
            .iter()
            .map(|&id| self.edge(id).ok_or(ComplexError::UnknownEdge {
                field: "vertices".into(),
                vertex: v.id,
                edge: id,
            }))
            .collect::<Result<_, _>>()?;
        let adjacent = |a: usize, b: usize| edges[a].shared_planes(edges[b]) == 1;
        let not_cycle = ComplexError::NotACycle { vertex: v.id, k };

        // every edge must have exactly two plane-sharing neighbours
        let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); k];
        for a in 0..k {
            if edges[a].is_degenerate() {
                return Err(not_cycle);
            }
            for b in 0..k {
                if a != b {
                    match edges[a].shared_planes(edges[b]) {
                        0 => {}
                        1 => nbrs[a].push(b),
                        _ => return Err(not_cycle),
                    }
                }
            }
            if nbrs[a].len() != 2 {
                return Err(not_cycle);
            }
        }

        if k == 3 {
            return Ok(VertexClass::Inner3 {
                edges: [ids[0], ids[1], ids[2]],
            });
        }

        // walk the 4-cycle from the smallest id towards its smaller neighbour
        let mut order = vec![0usize];
        let mut prev = 0usize;
        let mut cur = nbrs[0][0].min(nbrs[0][1]);
        while cur != 0 {
            if order.contains(&cur) {
                return Err(not_cycle);
            }
            order.push(cur);
            let next = if nbrs[cur][0] == prev {
                nbrs[cur][1]
            } else {
                nbrs[cur][0]
            };
            prev = cur;
            cur = next;
        }
        if order.len() != 4 || adjacent(order[0], order[2]) || adjacent(order[1], order[3]) {
            return Err(not_cycle);
        }
        Ok(VertexClass::Inner4 {
            cycle: [ids[order[0]], ids[order[1]], ids[order[2]], ids[order[3]]],
        })
    }

    pub fn classify_vertex_id(&self, id: usize) -> Result<VertexClass, ComplexError> {
        let v = self.vertex(id).ok_or(ComplexError::UnknownVertex(id))?;
        self.classify_vertex(v)
    }

    pub fn classify_all(&self) -> Result<Vec<(usize, VertexClass)>, ComplexError> {
        self.vertices
            .iter()
            .map(|v| self.classify_vertex(v).map(|c| (v.id, c)))
            .collect()
    }

    /// Unordered edge pairs that occur together at some vertex, sorted.
    pub fn vertex_sharing_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = BTreeSet::new();
        for v in &self.vertices {
            let ids: BTreeSet<usize> = v.edges.iter().copied().collect();
            let ids: Vec<usize> = ids.into_iter().collect();
            for (a, &x) in ids.iter().enumerate() {
                for &y in &ids[a + 1..] {
                    pairs.insert((x, y));
                }
            }
        }
        pairs.into_iter().collect()
    }

    /// Edge pairs that share no vertex: lines that only meet after projection.
    pub fn parasitic_pairs(&self) -> Vec<(usize, usize)> {
        let sharing: BTreeSet<(usize, usize)> = self.vertex_sharing_pairs().into_iter().collect();
        let mut ids: Vec<usize> = self.edges.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        let mut out = Vec::new();
        for (a, &x) in ids.iter().enumerate() {
            for &y in &ids[a + 1..] {
                if !sharing.contains(&(x, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn dual_graph(&self) -> DualGraph {
        DualGraph::new(
            self.plane_count,
            self.edges
                .iter()
                .map(|e| (e.planes[0], e.planes[1], e.id))
                .collect(),
        )
    }
}

/// Outcome of [`DegenerationComplex::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub every_edge_in_two_vertices: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Homeomorphism of the glued complex with a closed surface is not tested;
    /// only the local conditions above are.
    pub fn surface_homeomorphism(&self) -> &'static str {
        "not verified"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Violation {
    EdgeIdsNotConsecutive,
    DegenerateEdge { edge: usize, plane: usize },
    EndpointCount { edge: usize, endpoints: usize },
    RepeatedEdgeAtVertex { vertex: usize },
    TooFewEdges { vertex: usize, count: usize },
    UnsupportedMultiplicity { vertex: usize, count: usize },
    RepeatedPlanePair { vertex: usize, edges: (usize, usize) },
    NotCyclic { vertex: usize },
    DisconnectedDualGraph,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EdgeIdsNotConsecutive => write!(f, "edge ids are not 1..E consecutive"),
            Violation::DegenerateEdge { edge, plane } => {
                write!(f, "edge {edge} is a degenerate edge (planes {plane},{plane})")
            }
            Violation::EndpointCount { edge, endpoints } => {
                write!(f, "edge {edge} has {endpoints} endpoints")
            }
            Violation::RepeatedEdgeAtVertex { vertex } => {
                write!(f, "vertex {vertex} lists an edge more than once")
            }
            Violation::TooFewEdges { vertex, count } => {
                write!(f, "vertex {vertex} has only {count} edges")
            }
            Violation::UnsupportedMultiplicity { vertex, count } => {
                write!(f, "vertex {vertex} has unsupported multiplicity {count}")
            }
            Violation::RepeatedPlanePair { vertex, edges } => write!(
                f,
                "edges {} and {} at vertex {vertex} join the same two planes",
                edges.0, edges.1
            ),
            Violation::NotCyclic { vertex } => {
                write!(f, "vertex {vertex} is not an inner point (planes do not meet cyclically)")
            }
            Violation::DisconnectedDualGraph => write!(f, "dual graph is disconnected"),
        }
    }
}

/// Type of a singular point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum VertexClass {
    /// Edge ids in increasing order.
    Inner3 { edges: [usize; 3] },
    /// Cyclic order: consecutive edges share a plane, diagonals share none.
    /// Starts at the smallest id and continues to its smaller neighbour.
    Inner4 { cycle: [usize; 4] },
}

impl VertexClass {
    pub fn multiplicity(&self) -> usize {
        match self {
            VertexClass::Inner3 { .. } => 3,
            VertexClass::Inner4 { .. } => 4,
        }
    }

    /// Diagonal edge pairs of an inner 4-point, each sorted.
    pub fn diagonals(&self) -> Vec<(usize, usize)> {
        match self {
            VertexClass::Inner3 { .. } => Vec::new(),
            VertexClass::Inner4 { cycle } => {
                let d = |a: usize, b: usize| (a.min(b), a.max(b));
                vec![d(cycle[0], cycle[2]), d(cycle[1], cycle[3])]
            }
        }
    }
}

/// Graph with one vertex per plane and one edge per line, labeled by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize, usize)>,
}

impl DualGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, usize)>) -> Self {
        Self {
            vertex_count,
            edges,
        }
    }

    /// Connected components over vertices `1..=vertex_count`.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..=self.vertex_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.vertex_count;
        for &(a, b, _) in &self.edges {
            if a == 0 || b == 0 || a > self.vertex_count || b > self.vertex_count {
                continue;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                comps -= 1;
            }
        }
        comps
    }

    /// First Betti number `|E| − |V| + #components`.
    pub fn betti(&self) -> usize {
        self.edges.len() + self.components() - self.vertex_count
    }
}
