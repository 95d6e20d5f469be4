//! Weighted planar multigraphs with a rotation system.
//!
//! The embedding is stored as a rotation at every vertex: the cyclic,
//! counterclockwise sequence of darts (half-edges) leaving it. Faces are the
//! orbits of `next_in_rotation ∘ opposite`.

mod augmented;
mod embed;
mod faces;
mod minor;
mod moves;
mod orient;
mod props;
mod trees;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use augmented::{AugmentedGraph, CrossingCoefficient};
pub use faces::{ComponentEuler, ValidationReport};
pub use minor::MinorKind;
pub use moves::MoveKind;
pub use orient::{EdgeOrientation, DEFAULT_ORIENTATION_CAP};
pub use props::PropertyReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

fn parse_prefixed(s: &str, prefix: char, what: &str) -> Result<u32> {
    let digits = s.strip_prefix(prefix).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Invalid(format!("bad {what} id {s:?}")));
    }
    digits
        .parse()
        .map_err(|_| Error::Invalid(format!("{what} id {s:?} out of range")))
}

impl FromStr for VertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_prefixed(s, 'v', "vertex").map(VertexId)
    }
}

impl FromStr for EdgeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_prefixed(s, 'e', "edge").map(EdgeId)
    }
}

macro_rules! serialize_as_string {
    ($($t:ty),*) => {$(
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
    )*};
}

serialize_as_string!(VertexId, EdgeId, Dart);

/// One end of an edge. `end` is 0 or 1; for a loop both darts sit at the
/// same vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    pub end: u8,
}

impl Dart {
    pub fn new(edge: EdgeId, end: u8) -> Self {
        debug_assert!(end < 2);
        Dart { edge, end }
    }

    pub fn opposite(self) -> Self {
        Dart {
            edge: self.edge,
            end: 1 - self.end,
        }
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.edge, self.end)
    }
}

impl FromStr for Dart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (edge, end) = s
            .rsplit_once('.')
            .ok_or_else(|| Error::Invalid(format!("bad dart {s:?}, expected \"edgeId.end\"")))?;
        let end = match end {
            "0" => 0,
            "1" => 1,
            _ => return Err(Error::Invalid(format!("bad dart end in {s:?}"))),
        };
        Ok(Dart::new(edge.parse()?, end))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub ends: [VertexId; 2],
    pub weight: i64,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    /// The endpoint across from `v`. For a loop this is `v` itself.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }

    pub fn joins(&self, a: VertexId, b: VertexId) -> bool {
        (self.ends[0] == a && self.ends[1] == b) || (self.ends[0] == b && self.ends[1] == a)
    }
}

/// A chainmail graph `(G, ν, ε)` embedded in the sphere.
///
/// Invariant: every dart of every edge appears in exactly one rotation, at
/// the vertex it is attached to. The genus of the rotation system is not
/// constrained here; [`ChainmailGraph::validate`] reports it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ChainmailGraph {
    vertices: BTreeMap<VertexId, i64>,
    edges: BTreeMap<EdgeId, Edge>,
    rotations: BTreeMap<VertexId, Vec<Dart>>,
}

impl ChainmailGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assemble a graph from its parts. When `rotations` is `None` a sphere
    /// embedding is computed, failing with [`Error::Nonplanar`] if none
    /// exists.
    pub fn from_parts(
        vertices: BTreeMap<VertexId, i64>,
        edges: BTreeMap<EdgeId, Edge>,
        rotations: Option<BTreeMap<VertexId, Vec<Dart>>>,
    ) -> Result<Self> {
        for edge in edges.values() {
            for v in edge.ends {
                if !vertices.contains_key(&v) {
                    return Err(Error::UnknownVertex(v));
                }
            }
        }
        let mut rotations = match rotations {
            Some(r) => r,
            None => embed::planar_rotations(&vertices, &edges)?,
        };
        for &v in vertices.keys() {
            rotations.entry(v).or_default();
        }
        let graph = ChainmailGraph {
            vertices,
            edges,
            rotations,
        };
        graph.check_rotations()?;
        Ok(graph)
    }

    /// Convenience constructor from `(id, weight)` vertices and
    /// `(id, a, b, weight)` edges, with a computed planar embedding.
    pub fn from_lists(vertices: &[(u32, i64)], edges: &[(u32, u32, u32, i64)]) -> Result<Self> {
        let mut vmap = BTreeMap::new();
        for &(id, w) in vertices {
            if vmap.insert(VertexId(id), w).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex {}", VertexId(id))));
            }
        }
        let mut emap = BTreeMap::new();
        for &(id, a, b, w) in edges {
            let edge = Edge {
                ends: [VertexId(a), VertexId(b)],
                weight: w,
            };
            if emap.insert(EdgeId(id), edge).is_some() {
                return Err(Error::Invalid(format!("duplicate edge {}", EdgeId(id))));
            }
        }
        Self::from_parts(vmap, emap, None)
    }

    fn check_rotations(&self) -> Result<()> {
        for v in self.rotations.keys() {
            if !self.vertices.contains_key(v) {
                return Err(Error::Rotation {
                    vertex: *v,
                    reason: "rotation given for a vertex that does not exist".into(),
                });
            }
        }
        let mut seen: BTreeSet<Dart> = BTreeSet::new();
        for &v in self.vertices.keys() {
            for &d in self.rotation(v) {
                let edge = self.edges.get(&d.edge).ok_or_else(|| Error::Rotation {
                    vertex: v,
                    reason: format!("dart {d} refers to an unknown edge"),
                })?;
                if d.end > 1 {
                    return Err(Error::Rotation {
                        vertex: v,
                        reason: format!("dart {d} has an invalid end"),
                    });
                }
                if edge.ends[d.end as usize] != v {
                    return Err(Error::Rotation {
                        vertex: v,
                        reason: format!("dart {d} belongs to vertex {}", edge.ends[d.end as usize]),
                    });
                }
                if !seen.insert(d) {
                    return Err(Error::Rotation {
                        vertex: v,
                        reason: format!("dart {d} is duplicated"),
                    });
                }
            }
        }
        for (&id, edge) in &self.edges {
            for end in 0..2u8 {
                let d = Dart::new(id, end);
                if !seen.contains(&d) {
                    return Err(Error::Rotation {
                        vertex: edge.ends[end as usize],
                        reason: format!("dart {d} is missing"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, i64)> + '_ {
        self.vertices.iter().map(|(&v, &w)| (v, w))
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        self.edges.iter().map(|(&e, edge)| (e, edge))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn vertex_weight(&self, v: VertexId) -> Result<i64> {
        self.vertices.get(&v).copied().ok_or(Error::UnknownVertex(v))
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Edge> {
        self.edges.get(&e).ok_or(Error::UnknownEdge(e))
    }

    /// Counterclockwise rotation of darts at `v` (empty for isolated or
    /// unknown vertices).
    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        self.rotations.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dart_vertex(&self, d: Dart) -> VertexId {
        self.edges[&d.edge].ends[d.end as usize]
    }

    /// Number of darts at `v`; a loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation(v).len()
    }

    pub fn is_loop_free(&self) -> bool {
        self.edges.values().all(|e| !e.is_loop())
    }

    /// No loops and no two edges sharing both endpoints.
    pub fn is_simplicial(&self) -> bool {
        let mut pairs = BTreeSet::new();
        self.edges.values().all(|e| {
            let key = (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1]));
            !e.is_loop() && pairs.insert(key)
        })
    }

    pub fn next_vertex_id(&self) -> VertexId {
        VertexId(self.vertices.keys().next_back().map_or(0, |v| v.0 + 1))
    }

    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.edges.keys().next_back().map_or(0, |e| e.0 + 1))
    }

    /// Connected components as sorted vertex lists, ordered by lowest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut uf = UnionFind::new(self.vertices.keys().copied());
        for edge in self.edges.values() {
            uf.union(edge.ends[0], edge.ends[1]);
        }
        let mut groups: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &v in self.vertices.keys() {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        let mut comps: Vec<Vec<VertexId>> = groups.into_values().collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Darts at `v` in rotation order, with the position of `d` in it.
    fn position(&self, d: Dart) -> (VertexId, usize) {
        let v = self.dart_vertex(d);
        let pos = self
            .rotation(v)
            .iter()
            .position(|&x| x == d)
            .expect("dart present in its rotation");
        (v, pos)
    }

    /// The dart following `d` counterclockwise around its vertex.
    pub fn next_in_rotation(&self, d: Dart) -> Dart {
        let (v, pos) = self.position(d);
        let rot = self.rotation(v);
        rot[(pos + 1) % rot.len()]
    }

    /// The dart preceding `d` counterclockwise around its vertex.
    pub fn prev_in_rotation(&self, d: Dart) -> Dart {
        let (v, pos) = self.position(d);
        let rot = self.rotation(v);
        rot[(pos + rot.len() - 1) % rot.len()]
    }

    // Internal mutators. They keep the dart invariant but say nothing about
    // genus; callers are responsible for that.

    pub(crate) fn insert_vertex(&mut self, v: VertexId, weight: i64) {
        self.vertices.insert(v, weight);
        self.rotations.entry(v).or_default();
    }

    pub(crate) fn set_vertex_weight(&mut self, v: VertexId, weight: i64) {
        self.vertices.insert(v, weight);
    }

    pub(crate) fn set_edge_weight(&mut self, e: EdgeId, weight: i64) {
        if let Some(edge) = self.edges.get_mut(&e) {
            edge.weight = weight;
        }
    }

    /// Insert a new edge whose darts are placed right after `after[i]` in the
    /// rotation at `ends[i]` (or at the end of the rotation when `None`). For
    /// a loop with equal anchors the two darts become adjacent, end 0 first.
    pub(crate) fn insert_edge_after(&mut self, id: EdgeId, ends: [VertexId; 2], weight: i64, after: [Option<Dart>; 2]) {
        self.edges.insert(id, Edge { ends, weight });
        if ends[0] == ends[1] && after[0] == after[1] {
            let rot = self.rotations.entry(ends[0]).or_default();
            let at = after[0].map_or(rot.len(), |a| rot.iter().position(|&x| x == a).unwrap() + 1);
            rot.insert(at, Dart::new(id, 1));
            rot.insert(at, Dart::new(id, 0));
            return;
        }
        for end in 0..2 {
            let rot = self.rotations.entry(ends[end]).or_default();
            let at = after[end].map_or(rot.len(), |a| rot.iter().position(|&x| x == a).unwrap() + 1);
            rot.insert(at, Dart::new(id, end as u8));
        }
    }

    pub(crate) fn remove_edge_raw(&mut self, e: EdgeId) -> Option<Edge> {
        let edge = self.edges.remove(&e)?;
        for v in edge.ends {
            if let Some(rot) = self.rotations.get_mut(&v) {
                rot.retain(|d| d.edge != e);
            }
        }
        Some(edge)
    }

    pub(crate) fn remove_isolated_vertex(&mut self, v: VertexId) {
        debug_assert!(self.rotation(v).is_empty());
        self.vertices.remove(&v);
        self.rotations.remove(&v);
    }

    pub(crate) fn rotations_mut(&mut self) -> &mut BTreeMap<VertexId, Vec<Dart>> {
        &mut self.rotations
    }

    pub(crate) fn edges_mut(&mut self) -> &mut BTreeMap<EdgeId, Edge> {
        &mut self.edges
    }

    /// Copy of the graph with `v`'s weight replaced.
    pub fn with_vertex_weight(&self, v: VertexId, weight: i64) -> Result<Self> {
        self.vertex_weight(v)?;
        let mut g = self.clone();
        g.set_vertex_weight(v, weight);
        Ok(g)
    }

    /// Copy of the graph with `e`'s weight replaced.
    pub fn with_edge_weight(&self, e: EdgeId, weight: i64) -> Result<Self> {
        self.edge(e)?;
        let mut g = self.clone();
        g.set_edge_weight(e, weight);
        Ok(g)
    }

    /// Copy of the graph with every loop removed.
    pub fn without_loops(&self) -> Self {
        let mut g = self.clone();
        let loops: Vec<EdgeId> = g.edges().filter(|(_, e)| e.is_loop()).map(|(id, _)| id).collect();
        for e in loops {
            g.remove_edge_raw(e);
        }
        g
    }

    /// Copy with `v` and every edge at it removed.
    pub fn without_vertex(&self, v: VertexId) -> Result<Self> {
        self.vertex_weight(v)?;
        let mut g = self.clone();
        let incident: BTreeSet<EdgeId> = g.rotation(v).iter().map(|d| d.edge).collect();
        for e in incident {
            g.remove_edge_raw(e);
        }
        g.remove_isolated_vertex(v);
        Ok(g)
    }

    /// Replace every edge `e` selected by `split` with `|ε(e)|` parallel
    /// copies of weight `sgn ε(e)`, inserted next to each other so that
    /// consecutive copies bound a digon. Edges of weight zero disappear. The
    /// original id is kept for the first copy; the returned map sends every
    /// edge of the result to the edge it came from.
    pub(crate) fn split_parallel(&self, split: impl Fn(&Edge) -> bool) -> (Self, BTreeMap<EdgeId, EdgeId>) {
        let mut g = self.clone();
        let mut origin: BTreeMap<EdgeId, EdgeId> = self.edge_ids().map(|e| (e, e)).collect();
        let mut next = self.next_edge_id().0;
        let ids: Vec<EdgeId> = self.edge_ids().collect();
        for e in ids {
            let edge = self.edges[&e];
            if !split(&edge) || edge.weight.unsigned_abs() == 1 {
                continue;
            }
            if edge.weight == 0 {
                g.remove_edge_raw(e);
                origin.remove(&e);
                continue;
            }
            let sign = edge.weight.signum();
            g.set_edge_weight(e, sign);
            let copies = edge.weight.unsigned_abs() - 1;
            // Each copy sits right after the previous one at ends[0] and
            // right before it at ends[1], so consecutive copies bound digons
            // (nested, for loops).
            let mut prev = e;
            for _ in 0..copies {
                let id = EdgeId(next);
                next += 1;
                g.edges.insert(
                    id,
                    Edge {
                        ends: edge.ends,
                        weight: sign,
                    },
                );
                let rot = g.rotations.get_mut(&edge.ends[0]).unwrap();
                let at = rot.iter().position(|&x| x == Dart::new(prev, 0)).unwrap() + 1;
                rot.insert(at, Dart::new(id, 0));
                let rot = g.rotations.get_mut(&edge.ends[1]).unwrap();
                let at = rot.iter().position(|&x| x == Dart::new(prev, 1)).unwrap();
                rot.insert(at, Dart::new(id, 1));
                origin.insert(id, e);
                prev = id;
            }
        }
        (g, origin)
    }
}

/// Disjoint-set forest keyed by vertex id.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: BTreeMap<VertexId, VertexId>,
}

impl UnionFind {
    pub(crate) fn new(items: impl IntoIterator<Item = VertexId>) -> Self {
        UnionFind {
            parent: items.into_iter().map(|v| (v, v)).collect(),
        }
    }

    pub(crate) fn find(&mut self, v: VertexId) -> VertexId {
        let mut root = v;
        while self.parent[&root] != root {
            root = self.parent[&root];
        }
        let mut cur = v;
        while cur != root {
            let next = self.parent[&cur];
            self.parent.insert(cur, root);
            cur = next;
        }
        root
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: VertexId, b: VertexId) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent.insert(hi, lo);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse_and_print() {
        assert_eq!("v12".parse::<VertexId>().unwrap(), VertexId(12));
        assert_eq!("7".parse::<VertexId>().unwrap(), VertexId(7));
        assert_eq!("e3".parse::<EdgeId>().unwrap(), EdgeId(3));
        assert!("x3".parse::<EdgeId>().is_err());
        assert!("e".parse::<EdgeId>().is_err());
        let d: Dart = "e4.1".parse().unwrap();
        assert_eq!(d, Dart::new(EdgeId(4), 1));
        assert_eq!(d.to_string(), "e4.1");
        assert!("e4.2".parse::<Dart>().is_err());
    }

    #[test]
    fn rotation_errors_name_the_vertex() {
        let vertices: BTreeMap<_, _> = [(VertexId(0), 0), (VertexId(1), 0)].into();
        let edges: BTreeMap<_, _> = [(
            EdgeId(0),
            Edge {
                ends: [VertexId(0), VertexId(1)],
                weight: -1,
            },
        )]
        .into();
        let mut rot: BTreeMap<_, _> = BTreeMap::new();
        rot.insert(VertexId(0), vec![Dart::new(EdgeId(0), 0)]);
        rot.insert(VertexId(1), vec![]);
        let err = ChainmailGraph::from_parts(vertices.clone(), edges.clone(), Some(rot)).unwrap_err();
        assert_eq!(
            err,
            Error::Rotation {
                vertex: VertexId(1),
                reason: "dart e0.1 is missing".into()
            }
        );

        let mut rot: BTreeMap<_, _> = BTreeMap::new();
        rot.insert(VertexId(0), vec![Dart::new(EdgeId(0), 0), Dart::new(EdgeId(0), 0)]);
        rot.insert(VertexId(1), vec![Dart::new(EdgeId(0), 1)]);
        let err = ChainmailGraph::from_parts(vertices, edges, Some(rot)).unwrap_err();
        assert!(matches!(
            err,
            Error::Rotation {
                vertex: VertexId(0),
                ..
            }
        ));
    }

    #[test]
    fn split_parallel_keeps_sphere() {
        let g = ChainmailGraph::from_lists(
            &[(0, 1), (1, 2), (2, 0)],
            &[(0, 0, 1, -3), (1, 1, 2, -2), (2, 2, 0, -1)],
        )
        .unwrap();
        let (s, origin) = g.split_parallel(|_| true);
        assert_eq!(s.edge_count(), 6);
        assert!(s.validate().valid);
        assert_eq!(origin.values().filter(|&&o| o == EdgeId(0)).count(), 3);
        assert!(s.edges().all(|(_, e)| e.weight == -1));
    }

    #[test]
    fn split_parallel_on_loop() {
        let g = ChainmailGraph::from_lists(&[(0, 1)], &[(0, 0, 0, -3)]).unwrap();
        let (s, _) = g.split_parallel(|_| true);
        assert_eq!(s.edge_count(), 3);
        assert!(s.validate().valid);
    }
}
