use super::{ChainmailGraph, EdgeId, VertexId};
use crate::error::{Error, Result};

/// Rewrites of a chainmail graph that leave the surgered 3-manifold unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveKind {
    /// Drop an edge of weight 0.
    EraseZeroEdge(EdgeId),
    /// Replace two edges with the same endpoints by the first one carrying
    /// the summed weight.
    MergeParallel(EdgeId, EdgeId),
    /// Drop a loop.
    EraseLoop(EdgeId),
    /// Drop a weight-0 leaf together with its ±1 edge.
    RemoveUnitLeaf(VertexId, EdgeId),
}

impl ChainmailGraph {
    pub fn apply_move(&self, m: MoveKind) -> Result<Self> {
        let fail = |msg: String| Err(Error::Precondition(msg));
        match m {
            MoveKind::EraseZeroEdge(e) => {
                let edge = self.edge(e)?;
                if edge.weight != 0 {
                    return fail(format!("EraseZeroEdge: {e} has weight {}, not 0", edge.weight));
                }
                let mut g = self.clone();
                g.remove_edge_raw(e);
                Ok(g)
            }
            MoveKind::MergeParallel(e1, e2) => {
                let a = *self.edge(e1)?;
                let b = *self.edge(e2)?;
                if e1 == e2 {
                    return fail(format!("MergeParallel: {e1} given twice"));
                }
                if a.is_loop() || b.is_loop() || !a.joins(b.ends[0], b.ends[1]) {
                    return fail(format!("MergeParallel: {e1} and {e2} do not share both endpoints"));
                }
                let weight = a
                    .weight
                    .checked_add(b.weight)
                    .ok_or_else(|| Error::Invalid("edge weight overflow in merge".into()))?;
                let mut g = self.clone();
                g.remove_edge_raw(e2);
                g.set_edge_weight(e1, weight);
                Ok(g)
            }
            MoveKind::EraseLoop(e) => {
                if !self.edge(e)?.is_loop() {
                    return fail(format!("EraseLoop: {e} is not a loop"));
                }
                let mut g = self.clone();
                g.remove_edge_raw(e);
                Ok(g)
            }
            MoveKind::RemoveUnitLeaf(v, e) => {
                let weight = self.vertex_weight(v)?;
                let edge = *self.edge(e)?;
                if weight != 0 {
                    return fail(format!("RemoveUnitLeaf: {v} has weight {weight}, not 0"));
                }
                if self.degree(v) != 1 {
                    return fail(format!("RemoveUnitLeaf: {v} has degree {}, not 1", self.degree(v)));
                }
                if !edge.ends.contains(&v) {
                    return fail(format!("RemoveUnitLeaf: {e} is not incident to {v}"));
                }
                if edge.weight.abs() != 1 {
                    return fail(format!("RemoveUnitLeaf: {e} has weight {}, not ±1", edge.weight));
                }
                let mut g = self.clone();
                g.remove_edge_raw(e);
                g.remove_isolated_vertex(v);
                Ok(g)
            }
        }
    }

    /// First applicable move, trying the four kinds in declaration order and
    /// lowest ids first within each kind.
    pub fn next_simplifying_move(&self) -> Option<MoveKind> {
        if let Some((e, _)) = self.edges().find(|(_, edge)| edge.weight == 0) {
            return Some(MoveKind::EraseZeroEdge(e));
        }
        let edges: Vec<_> = self.edges().filter(|(_, e)| !e.is_loop()).collect();
        for (i, (e1, a)) in edges.iter().enumerate() {
            for (e2, b) in &edges[i + 1..] {
                if a.joins(b.ends[0], b.ends[1]) {
                    return Some(MoveKind::MergeParallel(*e1, *e2));
                }
            }
        }
        if let Some((e, _)) = self.edges().find(|(_, edge)| edge.is_loop()) {
            return Some(MoveKind::EraseLoop(e));
        }
        for (v, w) in self.vertices() {
            if w == 0 && self.degree(v) == 1 {
                let e = self.rotation(v)[0].edge;
                if self.edges[&e].weight.abs() == 1 {
                    return Some(MoveKind::RemoveUnitLeaf(v, e));
                }
            }
        }
        None
    }

    /// Apply simplifying moves until none is left.
    pub fn simplify(&self) -> Self {
        let mut g = self.clone();
        while let Some(m) = g.next_simplifying_move() {
            g = g.apply_move(m).expect("selected move satisfies its precondition");
        }
        g
    }

    /// Split every edge of weight `-k` into `k` parallel `-1` edges and drop
    /// loops. The linking matrix is unchanged.
    pub fn normalize(&self) -> Result<Self> {
        if let Some((e, edge)) = self.edges().find(|(_, edge)| edge.weight >= 0) {
            return Err(Error::Precondition(format!(
                "normalize needs negative edge weights; {e} has weight {}",
                edge.weight
            )));
        }
        let (g, _) = self.without_loops().split_parallel(|_| true);
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_parallel_sums_weights() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 1)], &[(0, 0, 1, -1), (1, 0, 1, -2)]).unwrap();
        let h = g.apply_move(MoveKind::MergeParallel(EdgeId(0), EdgeId(1))).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.edge(EdgeId(0)).unwrap().weight, -3);
        assert!(h.validate().valid);
    }

    #[test]
    fn remove_unit_leaf_on_path() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 0), (2, 0)], &[(0, 0, 1, -1), (1, 1, 2, -1)]).unwrap();
        let h = g.apply_move(MoveKind::RemoveUnitLeaf(VertexId(2), EdgeId(1))).unwrap();
        let expected = ChainmailGraph::from_lists(&[(0, 1), (1, 0)], &[(0, 0, 1, -1)]).unwrap();
        assert_eq!(h, expected);
    }

    #[test]
    fn move_preconditions_are_named() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 0), (2, 0)], &[(0, 0, 1, -1), (1, 1, 2, -2)]).unwrap();
        let err = g
            .apply_move(MoveKind::RemoveUnitLeaf(VertexId(2), EdgeId(1)))
            .unwrap_err();
        assert!(err.to_string().contains("not ±1"), "{err}");
        let err = g
            .apply_move(MoveKind::RemoveUnitLeaf(VertexId(1), EdgeId(0)))
            .unwrap_err();
        assert!(err.to_string().contains("degree 2"), "{err}");
        let err = g.apply_move(MoveKind::EraseZeroEdge(EdgeId(0))).unwrap_err();
        assert!(err.to_string().contains("not 0"), "{err}");
        let err = g.apply_move(MoveKind::EraseLoop(EdgeId(0))).unwrap_err();
        assert!(err.to_string().contains("not a loop"), "{err}");
        let err = g.apply_move(MoveKind::MergeParallel(EdgeId(0), EdgeId(1))).unwrap_err();
        assert!(err.to_string().contains("share both endpoints"), "{err}");
    }

    #[test]
    fn erase_loop_keeps_the_rest() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 1)], &[(0, 0, 1, -1), (1, 0, 0, -4)]).unwrap();
        let h = g.apply_move(MoveKind::EraseLoop(EdgeId(1))).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert!(h.validate().valid);
    }

    #[test]
    fn simplify_examples() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 2)], &[(0, 0, 1, 0)]).unwrap();
        assert_eq!(g.simplify().edge_count(), 0);

        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 0), (2, 0)], &[(0, 0, 1, -1), (1, 1, 2, -1)]).unwrap();
        let s = g.simplify();
        assert_eq!(s.vertices().collect::<Vec<_>>(), vec![(VertexId(0), 1)]);
        assert_eq!(s.edge_count(), 0);

        let g = ChainmailGraph::from_lists(
            &[(0, 1), (1, 1), (2, 1)],
            &[(0, 0, 1, -1), (1, 1, 2, -1), (2, 2, 0, -1)],
        )
        .unwrap();
        assert_eq!(g.simplify(), g);
    }

    #[test]
    fn normalize_splits_and_drops_loops() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 1)], &[(0, 0, 1, -3)]).unwrap();
        let n = g.normalize().unwrap();
        assert_eq!(n.edge_count(), 3);
        assert!(n
            .edges()
            .all(|(_, e)| e.weight == -1 && e.joins(VertexId(0), VertexId(1))));
        assert!(n.validate().valid);

        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 1)], &[(0, 0, 1, -1), (1, 1, 0, -1)]).unwrap();
        assert_eq!(g.normalize().unwrap(), g);

        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 1)], &[(0, 0, 1, 0)]).unwrap();
        assert!(matches!(g.normalize(), Err(Error::Precondition(_))));

        let g = ChainmailGraph::from_lists(&[(0, 1)], &[(0, 0, 0, -2)]).unwrap();
        assert_eq!(g.normalize().unwrap().edge_count(), 0);
    }
}
