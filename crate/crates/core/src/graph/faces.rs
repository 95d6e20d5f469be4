use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{ChainmailGraph, Dart, VertexId};

/// Euler data of one connected component under face tracing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentEuler {
    pub vertices: Vec<VertexId>,
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub euler: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub components: Vec<ComponentEuler>,
    pub valid: bool,
}

impl ChainmailGraph {
    /// Faces of the rotation system as dart orbits. Each face lists the
    /// darts along which it leaves successive vertices, starting from its
    /// smallest dart; faces are ordered by that dart.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut next: BTreeMap<Dart, Dart> = BTreeMap::new();
        for &v in self.vertices.keys() {
            let rot = self.rotation(v);
            for (i, &d) in rot.iter().enumerate() {
                next.insert(d, rot[(i + 1) % rot.len()]);
            }
        }
        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        for &start in next.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            loop {
                seen.insert(d);
                face.push(d);
                d = next[&d.opposite()];
                if d == start {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }

    /// Per-component Euler characteristic from face tracing. The graph is a
    /// sphere embedding iff every component has χ = 2.
    pub fn validate(&self) -> ValidationReport {
        let comps = self.components();
        let mut comp_of: BTreeMap<VertexId, usize> = BTreeMap::new();
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of.insert(v, i);
            }
        }
        let mut edge_count = vec![0usize; comps.len()];
        for (_, edge) in self.edges() {
            edge_count[comp_of[&edge.ends[0]]] += 1;
        }
        let mut face_count = vec![0usize; comps.len()];
        for face in self.faces() {
            face_count[comp_of[&self.dart_vertex(face[0])]] += 1;
        }
        let components: Vec<ComponentEuler> = comps
            .into_iter()
            .enumerate()
            .map(|(i, vertices)| {
                let v = vertices.len();
                let e = edge_count[i];
                // An isolated vertex has no darts but bounds one face.
                let f = if e == 0 { 1 } else { face_count[i] };
                ComponentEuler {
                    vertices,
                    v,
                    e,
                    f,
                    euler: v as i64 - e as i64 + f as i64,
                }
            })
            .collect();
        let valid = components.iter().all(|c| c.euler == 2);
        ValidationReport { components, valid }
    }

    pub fn is_sphere_embedding(&self) -> bool {
        self.validate().valid
    }
}
