use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ChainmailGraph, EdgeId, UnionFind, VertexId};
use crate::error::{Error, Result};

impl ChainmailGraph {
    /// Σ over spanning trees T of Π_{e ∈ T} |ε(e)|, by explicit
    /// enumeration of edge subsets. Loops never lie in a spanning tree.
    /// Intended for small graphs; the search is exponential in |E|.
    pub fn count_weighted_spanning_trees(&self) -> Result<BigInt> {
        if !self.is_connected() {
            return Err(Error::Precondition("spanning trees need a connected graph".into()));
        }
        let edges: Vec<(EdgeId, [VertexId; 2], BigInt)> = self
            .edges()
            .filter(|(_, e)| !e.is_loop())
            .map(|(id, e)| (id, e.ends, BigInt::from(e.weight.unsigned_abs())))
            .collect();
        let need = self.vertex_count().saturating_sub(1);
        let mut total = BigInt::zero();
        let mut chosen = Vec::new();
        search(self, &edges, 0, need, &mut chosen, &mut total);
        Ok(total)
    }
}

fn search(
    g: &ChainmailGraph,
    edges: &[(EdgeId, [VertexId; 2], BigInt)],
    next: usize,
    need: usize,
    chosen: &mut Vec<usize>,
    total: &mut BigInt,
) {
    if chosen.len() == need {
        let mut uf = UnionFind::new(g.vertex_ids());
        let mut product = BigInt::one();
        for &i in chosen.iter() {
            let (_, [a, b], w) = &edges[i];
            if !uf.union(*a, *b) {
                return;
            }
            product *= w;
        }
        *total += product;
        return;
    }
    if edges.len() - next < need - chosen.len() {
        return;
    }
    chosen.push(next);
    if acyclic(g, edges, chosen) {
        search(g, edges, next + 1, need, chosen, total);
    }
    chosen.pop();
    search(g, edges, next + 1, need, chosen, total);
}

fn acyclic(g: &ChainmailGraph, edges: &[(EdgeId, [VertexId; 2], BigInt)], chosen: &[usize]) -> bool {
    let mut uf = UnionFind::new(g.vertex_ids());
    chosen.iter().all(|&i| uf.union(edges[i].1[0], edges[i].1[1]))
}
