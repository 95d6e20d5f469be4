use std::collections::BTreeMap;

use super::{ChainmailGraph, EdgeId, VertexId};
use crate::error::{Error, Result};

pub const DEFAULT_ORIENTATION_CAP: usize = 20;

/// Source vertex of every non-loop edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrientation {
    pub direction: BTreeMap<EdgeId, VertexId>,
}

impl EdgeOrientation {
    /// Vertices of positive degree with no outgoing edge.
    pub fn sinks(&self, g: &ChainmailGraph) -> Vec<VertexId> {
        self.extremes(g, false)
    }

    /// Vertices of positive degree with no incoming edge.
    pub fn sources(&self, g: &ChainmailGraph) -> Vec<VertexId> {
        self.extremes(g, true)
    }

    fn extremes(&self, g: &ChainmailGraph, source: bool) -> Vec<VertexId> {
        let mut out: BTreeMap<VertexId, (usize, usize)> = BTreeMap::new();
        for (&e, &src) in &self.direction {
            let dst = g.edges[&e].other(src);
            out.entry(src).or_default().0 += 1;
            out.entry(dst).or_default().1 += 1;
        }
        out.into_iter()
            .filter(|(_, (o, i))| if source { *i == 0 } else { *o == 0 })
            .map(|(v, _)| v)
            .collect()
    }
}

impl ChainmailGraph {
    /// Every acyclic orientation of the edges, in lexicographic order of
    /// choices: edges by id, each first directed from `ends[0]`.
    pub fn enumerate_acyclic_orientations(&self, cap: usize) -> Result<Vec<EdgeOrientation>> {
        if !self.is_loop_free() {
            return Err(Error::Precondition(
                "acyclic orientations need a loop-free graph".into(),
            ));
        }
        if self.edge_count() > cap {
            return Err(Error::CapExceeded {
                edges: self.edge_count(),
                cap,
            });
        }
        let edges: Vec<(EdgeId, [VertexId; 2])> = self.edges().map(|(e, edge)| (e, edge.ends)).collect();
        let mut out_adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        let mut chosen = Vec::with_capacity(edges.len());
        let mut result = Vec::new();
        extend(&edges, &mut out_adj, &mut chosen, &mut result);
        Ok(result)
    }
}

fn reaches(adj: &BTreeMap<VertexId, Vec<VertexId>>, from: VertexId, to: VertexId) -> bool {
    let mut stack = vec![from];
    let mut seen = std::collections::BTreeSet::from([from]);
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for &y in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    false
}

fn extend(
    edges: &[(EdgeId, [VertexId; 2])],
    adj: &mut BTreeMap<VertexId, Vec<VertexId>>,
    chosen: &mut Vec<VertexId>,
    out: &mut Vec<EdgeOrientation>,
) {
    let k = chosen.len();
    if k == edges.len() {
        let direction = edges.iter().zip(chosen.iter()).map(|((e, _), &s)| (*e, s)).collect();
        out.push(EdgeOrientation { direction });
        return;
    }
    let (_, ends) = edges[k];
    for (src, dst) in [(ends[0], ends[1]), (ends[1], ends[0])] {
        if reaches(adj, dst, src) {
            continue;
        }
        adj.entry(src).or_default().push(dst);
        chosen.push(src);
        extend(edges, adj, chosen, out);
        chosen.pop();
        adj.get_mut(&src).unwrap().pop();
    }
}
