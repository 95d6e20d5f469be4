use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{ChainmailGraph, EdgeId, VertexId};

/// Combinatorial predicates, including the screen for asymmetric
/// flat-augmented examples: simplicial, triangle-free, no vertex of degree
/// two, no separating edge, and a sphere embedding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub components: Vec<Vec<VertexId>>,
    pub bridges: Vec<EdgeId>,
    pub leaves: Vec<VertexId>,
    pub degrees: Vec<(VertexId, usize)>,
    pub simplicial: bool,
    pub triangle_free: bool,
    pub min_degree_at_least_3: bool,
    pub bridge_free: bool,
    pub sphere_embedding: bool,
    pub asymmetry_candidate: bool,
    pub violations: Vec<String>,
}

impl ChainmailGraph {
    /// Isthmi: non-loop edges whose removal disconnects their component.
    pub fn bridges(&self) -> BTreeSet<EdgeId> {
        // Lowpoint search over edge ids, so parallel edges are never bridges.
        struct State<'a> {
            g: &'a ChainmailGraph,
            disc: BTreeMap<VertexId, usize>,
            low: BTreeMap<VertexId, usize>,
            time: usize,
            bridges: BTreeSet<EdgeId>,
        }
        fn dfs(s: &mut State<'_>, u: VertexId, via: Option<EdgeId>) {
            s.disc.insert(u, s.time);
            s.low.insert(u, s.time);
            s.time += 1;
            for &d in s.g.rotation(u) {
                let edge = &s.g.edges[&d.edge];
                if edge.is_loop() || Some(d.edge) == via {
                    continue;
                }
                let w = edge.other(u);
                if let Some(&dw) = s.disc.get(&w) {
                    let lu = s.low[&u].min(dw);
                    s.low.insert(u, lu);
                } else {
                    dfs(s, w, Some(d.edge));
                    let lu = s.low[&u].min(s.low[&w]);
                    s.low.insert(u, lu);
                    if s.low[&w] > s.disc[&u] {
                        s.bridges.insert(d.edge);
                    }
                }
            }
        }
        let mut s = State {
            g: self,
            disc: BTreeMap::new(),
            low: BTreeMap::new(),
            time: 0,
            bridges: BTreeSet::new(),
        };
        for v in self.vertex_ids() {
            if !s.disc.contains_key(&v) {
                dfs(&mut s, v, None);
            }
        }
        s.bridges
    }

    pub fn is_triangle_free(&self) -> bool {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
        for (_, e) in self.edges() {
            if !e.is_loop() {
                adj.entry(e.ends[0]).or_default().insert(e.ends[1]);
                adj.entry(e.ends[1]).or_default().insert(e.ends[0]);
            }
        }
        for (&a, na) in &adj {
            for &b in na.range(a..) {
                if b == a {
                    continue;
                }
                if adj[&b].range(b..).any(|c| *c != b && na.contains(c)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn graph_properties(&self) -> PropertyReport {
        let components = self.components();
        let bridges: Vec<EdgeId> = self.bridges().into_iter().collect();
        let degrees: Vec<(VertexId, usize)> = self.vertex_ids().map(|v| (v, self.degree(v))).collect();
        let leaves: Vec<VertexId> = degrees.iter().filter(|(_, d)| *d == 1).map(|(v, _)| *v).collect();
        let simplicial = self.is_simplicial();
        let triangle_free = self.is_triangle_free();
        let min_degree_at_least_3 = degrees.iter().all(|(_, d)| *d >= 3);
        let bridge_free = bridges.is_empty();
        let sphere_embedding = self.is_sphere_embedding();

        let mut violations = Vec::new();
        if !simplicial {
            violations.push("not simplicial (loop or multiple edge)".to_string());
        }
        if !triangle_free {
            violations.push("contains a triangle".to_string());
        }
        let deg2: Vec<String> = degrees
            .iter()
            .filter(|(_, d)| *d == 2)
            .map(|(v, _)| v.to_string())
            .collect();
        if !deg2.is_empty() {
            violations.push(format!("degree-2 vertices: {}", deg2.join(", ")));
        }
        if !bridge_free {
            let list: Vec<String> = bridges.iter().map(|e| e.to_string()).collect();
            violations.push(format!("separating edges: {}", list.join(", ")));
        }
        if !sphere_embedding {
            violations.push("rotation system is not a sphere embedding".to_string());
        }
        PropertyReport {
            components,
            bridges,
            leaves,
            degrees,
            simplicial,
            triangle_free,
            min_degree_at_least_3,
            bridge_free,
            sphere_embedding,
            asymmetry_candidate: violations.is_empty(),
            violations,
        }
    }
}
