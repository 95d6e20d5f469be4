use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ChainmailGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientationWitness {
    pub sinks: Vec<VertexId>,
    pub sources: Vec<VertexId>,
    /// Lowest-id weight-0 vertex that is a sink or a source.
    pub witness: Option<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub orientation_count: usize,
    pub orientations: Vec<OrientationWitness>,
    pub verdict: bool,
}

/// Every acyclic orientation of a graph with −1 edges and at most one
/// positive vertex has a sink and a source, one of them of weight 0.
pub fn orderability_obstruction(g: &ChainmailGraph, cap: usize) -> Result<ObstructionReport> {
    if let Some((e, edge)) = g.edges().find(|(_, edge)| edge.weight != -1) {
        return Err(Error::Hypothesis(format!("{e} has weight {}, not -1", edge.weight)));
    }
    if let Some((v, w)) = g.vertices().find(|&(_, w)| w < 0) {
        return Err(Error::Hypothesis(format!("{v} has weight {w} < 0")));
    }
    let positive: Vec<VertexId> = g.vertices().filter(|&(_, w)| w > 0).map(|(v, _)| v).collect();
    if positive.len() > 1 {
        return Err(Error::Hypothesis(format!(
            "{} positive vertices ({} and {}); at most one allowed",
            positive.len(),
            positive[0],
            positive[1]
        )));
    }
    let orientations = g.enumerate_acyclic_orientations(cap)?;
    let has_edges = g.edge_count() > 0;
    let mut verdict = true;
    let mut out = Vec::with_capacity(orientations.len());
    for o in &orientations {
        let sinks = o.sinks(g);
        let sources = o.sources(g);
        let witness = g
            .vertex_ids()
            .filter(|v| sinks.contains(v) || sources.contains(v))
            .find(|&v| g.vertex_weight(v).unwrap() == 0);
        if has_edges && (sinks.is_empty() || sources.is_empty() || witness.is_none()) {
            verdict = false;
        }
        out.push(OrientationWitness {
            sinks,
            sources,
            witness,
        });
    }
    Ok(ObstructionReport {
        orientation_count: out.len(),
        orientations: out,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_triangle() {
        let g = ChainmailGraph::from_lists(
            &[(0, 0), (1, 0), (2, 0)],
            &[(0, 0, 1, -1), (1, 1, 2, -1), (2, 2, 0, -1)],
        )
        .unwrap();
        let r = orderability_obstruction(&g, 20).unwrap();
        assert_eq!(r.orientation_count, 6);
        assert!(r.verdict);
        assert!(r
            .orientations
            .iter()
            .all(|o| o.sinks.len() == 1 && o.sources.len() == 1));
    }

    #[test]
    fn single_edge() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 0)], &[(0, 0, 1, -1)]).unwrap();
        let r = orderability_obstruction(&g, 20).unwrap();
        assert_eq!(r.orientation_count, 2);
        assert!(r.orientations.iter().all(|o| o.witness == Some(VertexId(1))));
        assert!(r.verdict);
    }

    #[test]
    fn two_positive_vertices() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 1)], &[(0, 0, 1, -1)]).unwrap();
        assert!(matches!(orderability_obstruction(&g, 20), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn edgeless() {
        let g = ChainmailGraph::from_lists(&[(0, 3)], &[]).unwrap();
        let r = orderability_obstruction(&g, 20).unwrap();
        assert_eq!(r.orientation_count, 1);
        assert!(r.verdict);
    }
}
