//! Seeded random chainmail graphs.
//!
//! The stream comes from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! so a seed names the same graph on every platform. Edges are inserted one
//! at a time into a common face of their endpoints, which keeps the rotation
//! system spherical; a candidate edge with no common face is skipped.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{AugmentedGraph, ChainmailGraph, CrossingCoefficient, Dart, EdgeId, VertexId};
use crate::io::GraphInput;
use crate::lspace::check_alternating_hypotheses;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    /// ν ≥ 0 with a positive vertex per component, ε < 0, simple graph.
    TheoremAlternating,
    /// ν ≡ 0, ε < 0, simple graph.
    Balanced,
    /// Simple base with ε ≡ −1, a random subset of edges carrying integer
    /// crossing loops, and a positive vertex in every component of the graph
    /// with those edges deleted.
    Augmented,
    /// Any weights in range; loops and multiple edges allowed.
    Arbitrary,
}

impl Profile {
    pub const ALL: [Profile; 4] = [
        Profile::TheoremAlternating,
        Profile::Balanced,
        Profile::Augmented,
        Profile::Arbitrary,
    ];

    fn simple(self) -> bool {
        self != Profile::Arbitrary
    }

    /// Whether `input` meets this profile's hypotheses.
    pub fn check(self, input: &GraphInput) -> Result<()> {
        let g = input.graph();
        if !g.is_sphere_embedding() {
            return Err(Error::Hypothesis("not a sphere embedding".into()));
        }
        let simple = || {
            if g.is_simplicial() {
                Ok(())
            } else {
                Err(Error::Hypothesis("not simplicial".into()))
            }
        };
        match (self, input) {
            (Profile::TheoremAlternating, GraphInput::Chainmail(g)) => {
                simple()?;
                check_alternating_hypotheses(g)
            }
            (Profile::Balanced, GraphInput::Chainmail(g)) => {
                simple()?;
                if let Some((v, _)) = g.vertices().find(|&(_, w)| w != 0) {
                    return Err(Error::Hypothesis(format!("{v} has nonzero weight")));
                }
                if let Some((e, _)) = g.edges().find(|(_, e)| e.weight >= 0) {
                    return Err(Error::Hypothesis(format!("{e} has weight >= 0")));
                }
                Ok(())
            }
            (Profile::Augmented, GraphInput::Augmented(ag)) => {
                simple()?;
                if let Some((e, _)) = g.edges().find(|(_, e)| e.weight != -1) {
                    return Err(Error::Hypothesis(format!("{e} has weight other than -1")));
                }
                if !ag.is_integral() {
                    return Err(Error::Hypothesis("non-integer coefficient".into()));
                }
                check_alternating_hypotheses(ag.base())?;
                check_alternating_hypotheses(&ag.unaugmented())
            }
            (Profile::Arbitrary, GraphInput::Chainmail(_)) => Ok(()),
            _ => Err(Error::Hypothesis(format!("wrong graph kind for profile {self}"))),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::TheoremAlternating => "theorem-alternating",
            Profile::Balanced => "balanced",
            Profile::Augmented => "augmented",
            Profile::Arbitrary => "arbitrary",
        })
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Profile::ALL
            .into_iter()
            .find(|p| p.to_string() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown profile {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorParams {
    pub seed: u64,
    pub vertices: (usize, usize),
    pub edges: (usize, usize),
    pub vertex_weights: (i64, i64),
    pub edge_weights: (i64, i64),
    /// Largest `c` for crossing-loop coefficients `−c`.
    pub max_coefficient: u64,
    pub profile: Profile,
}

impl GeneratorParams {
    pub fn new(seed: u64, profile: Profile) -> Self {
        GeneratorParams {
            seed,
            vertices: (1, 8),
            edges: (0, 14),
            vertex_weights: (0, 3),
            edge_weights: (-3, -1),
            max_coefficient: 4,
            profile,
        }
    }

    fn validate(&self) -> Result<()> {
        let nonempty = |name: &str, lo: i128, hi: i128| {
            if lo > hi {
                Err(Error::Invalid(format!("{name} range {lo}..={hi} is empty")))
            } else {
                Ok(())
            }
        };
        nonempty("vertex", self.vertices.0 as i128, self.vertices.1 as i128)?;
        nonempty("edge", self.edges.0 as i128, self.edges.1 as i128)?;
        nonempty(
            "vertex weight",
            self.vertex_weights.0 as i128,
            self.vertex_weights.1 as i128,
        )?;
        nonempty("edge weight", self.edge_weights.0 as i128, self.edge_weights.1 as i128)?;
        if self.vertices.0 == 0 {
            return Err(Error::Invalid("at least one vertex is required".into()));
        }
        if self.vertices.1 > 10_000 || self.edges.1 > 100_000 {
            return Err(Error::Invalid("graph size limit exceeded".into()));
        }
        match self.profile {
            Profile::TheoremAlternating | Profile::Augmented => {
                if self.vertex_weights.1 < 1 {
                    return Err(Error::Invalid("profile needs a positive vertex weight in range".into()));
                }
                if self.edge_weights.0 > -1 {
                    return Err(Error::Invalid("profile needs a negative edge weight in range".into()));
                }
            }
            Profile::Balanced => {
                if self.edge_weights.0 > -1 {
                    return Err(Error::Invalid("profile needs a negative edge weight in range".into()));
                }
            }
            Profile::Arbitrary => {}
        }
        if self.profile == Profile::Augmented && self.max_coefficient == 0 {
            return Err(Error::Invalid("max coefficient must be at least 1".into()));
        }
        if self.profile.simple() && self.edges.0 > simple_planar_bound(self.vertices.1) {
            return Err(Error::Invalid(format!(
                "at least {} edges requested but a simple planar graph on {} vertices has at most {}",
                self.edges.0,
                self.vertices.1,
                simple_planar_bound(self.vertices.1)
            )));
        }
        Ok(())
    }
}

/// Largest edge count of a simple planar graph on `v` vertices.
pub fn simple_planar_bound(v: usize) -> usize {
    match v {
        0 | 1 => 0,
        2 => 1,
        _ => 3 * v - 6,
    }
}

/// Places where a new dart may go: `(vertex, anchor, face)`; `anchor` is the
/// dart the new one follows, `None` at an isolated vertex.
fn corners(g: &ChainmailGraph) -> Vec<(VertexId, Option<Dart>, usize)> {
    let faces = g.faces();
    let mut out = Vec::new();
    for (fi, face) in faces.iter().enumerate() {
        for k in 0..face.len() {
            let prev = face[(k + face.len() - 1) % face.len()];
            out.push((g.dart_vertex(face[k]), Some(prev.opposite()), fi));
        }
    }
    for v in g.vertex_ids() {
        if g.degree(v) == 0 {
            out.push((v, None, faces.len() + v.0 as usize));
        }
    }
    out
}

fn adjacent(g: &ChainmailGraph, a: VertexId, b: VertexId) -> bool {
    g.rotation(a).iter().any(|d| g.edge(d.edge).unwrap().other(a) == b)
}

fn component_of(comps: &[Vec<VertexId>], v: VertexId) -> usize {
    comps.iter().position(|c| c.contains(&v)).unwrap()
}

fn try_insert(g: &mut ChainmailGraph, rng: &mut ChaCha8Rng, id: EdgeId, weight: i64, simple: bool) -> bool {
    let ids: Vec<VertexId> = g.vertex_ids().collect();
    let u = *ids.choose(rng).unwrap();
    let w = *ids.choose(rng).unwrap();
    if simple && (u == w || adjacent(g, u, w)) {
        return false;
    }
    let all = corners(g);
    let at =
        |v: VertexId| -> Vec<(Option<Dart>, usize)> { all.iter().filter(|c| c.0 == v).map(|c| (c.1, c.2)).collect() };
    let (cu, cw) = (at(u), at(w));
    let comps = g.components();
    let pair = if component_of(&comps, u) != component_of(&comps, w) {
        Some((*cu.choose(rng).unwrap(), *cw.choose(rng).unwrap()))
    } else {
        let shared: Vec<((Option<Dart>, usize), (Option<Dart>, usize))> = cu
            .iter()
            .flat_map(|a| cw.iter().filter(move |b| b.1 == a.1).map(move |b| (*a, *b)))
            .collect();
        shared.choose(rng).copied()
    };
    match pair {
        Some((a, b)) => {
            g.insert_edge_after(id, [u, w], weight, [a.0, b.0]);
            true
        }
        None => false,
    }
}

fn draw(params: &GeneratorParams, rng: &mut ChaCha8Rng) -> Option<GraphInput> {
    let profile = params.profile;
    let nv = rng.gen_range(params.vertices.0..=params.vertices.1);
    let mut ne = rng.gen_range(params.edges.0..=params.edges.1);
    if profile.simple() {
        ne = ne.min(simple_planar_bound(nv));
        if ne < params.edges.0 {
            return None;
        }
    }
    let vw = |rng: &mut ChaCha8Rng| match profile {
        Profile::Balanced => 0,
        Profile::Arbitrary => rng.gen_range(params.vertex_weights.0..=params.vertex_weights.1),
        _ => rng.gen_range(params.vertex_weights.0.max(0)..=params.vertex_weights.1),
    };
    let ew = |rng: &mut ChaCha8Rng| match profile {
        Profile::Augmented => -1,
        Profile::Arbitrary => rng.gen_range(params.edge_weights.0..=params.edge_weights.1),
        _ => rng.gen_range(params.edge_weights.0..=params.edge_weights.1.min(-1)),
    };
    let mut g = ChainmailGraph::new();
    for i in 0..nv {
        let w = vw(rng);
        g.insert_vertex(VertexId(i as u32), w);
    }
    let mut attempts = 0;
    while g.edge_count() < ne && attempts < 40 * (ne + 1) {
        attempts += 1;
        let weight = ew(rng);
        let id = EdgeId(g.edge_count() as u32);
        try_insert(&mut g, rng, id, weight, profile.simple());
    }
    if g.edge_count() < params.edges.0 {
        return None;
    }
    let coefficients = if profile == Profile::Augmented {
        let mut coeffs = BTreeMap::new();
        for e in g.edge_ids().collect::<Vec<_>>() {
            if rng.gen_bool(0.5) {
                coeffs.insert(
                    e,
                    CrossingCoefficient::Integer(rng.gen_range(1..=params.max_coefficient)),
                );
            }
        }
        Some(coeffs)
    } else {
        None
    };
    if matches!(profile, Profile::TheoremAlternating | Profile::Augmented) {
        // Every component (of G − A, for augmented graphs) gets a positive
        // vertex.
        let mut h = g.clone();
        for e in coefficients.iter().flat_map(|c| c.keys()) {
            h.remove_edge_raw(*e);
        }
        for comp in h.components() {
            if comp.iter().all(|&v| g.vertex_weight(v).unwrap() == 0) {
                let v = *comp.choose(rng).unwrap();
                let w = rng.gen_range(1.max(params.vertex_weights.0)..=params.vertex_weights.1);
                g.set_vertex_weight(v, w);
            }
        }
    }
    Some(match coefficients {
        Some(c) => GraphInput::Augmented(AugmentedGraph::new(g, c).expect("generator builds valid bases")),
        None => GraphInput::Chainmail(g),
    })
}

/// Deterministic random graph for `params`.
pub fn random_graph(params: &GeneratorParams) -> Result<GraphInput> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..64 {
        if let Some(out) = draw(params, &mut rng) {
            debug_assert!(params.profile.check(&out).is_ok());
            return Ok(out);
        }
    }
    Err(Error::Invalid(format!(
        "could not reach {} edges on at most {} vertices",
        params.edges.0, params.vertices.1
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::write_graph_file;

    #[test]
    fn deterministic() {
        for profile in Profile::ALL {
            let p = GeneratorParams::new(42, profile);
            let a = write_graph_file(&random_graph(&p).unwrap());
            let b = write_graph_file(&random_graph(&p).unwrap());
            assert_eq!(a, b);
        }
    }

    #[test]
    fn profiles_hold() {
        for profile in Profile::ALL {
            for seed in 0..200 {
                let g = random_graph(&GeneratorParams::new(seed, profile)).unwrap();
                profile.check(&g).unwrap();
            }
        }
    }

    #[test]
    fn unsatisfiable() {
        let mut p = GeneratorParams::new(0, Profile::Balanced);
        p.vertices = (4, 4);
        p.edges = (7, 9);
        assert!(random_graph(&p).is_err());
        p.edges = (6, 6);
        let g = random_graph(&p).unwrap();
        assert_eq!(g.graph().edge_count(), 6);
        let mut p = GeneratorParams::new(0, Profile::TheoremAlternating);
        p.vertex_weights = (0, 0);
        assert!(random_graph(&p).is_err());
        assert_eq!("balanced".parse::<Profile>().unwrap(), Profile::Balanced);
    }
}
