use super::{ChainmailGraph, Dart, EdgeId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinorKind {
    Delete,
    Contract,
}

impl ChainmailGraph {
    /// `G − e` or `G / e`.
    ///
    /// Contraction keeps the lower-id endpoint as the merged vertex, gives it
    /// the sum of both vertex weights, and splices the other endpoint's
    /// rotation (read from just after its dart of `e`) in place of the
    /// surviving dart of `e`. Edges parallel to `e` become loops and are kept.
    pub fn minor(&self, e: EdgeId, kind: MinorKind) -> Result<Self> {
        let edge = *self.edge(e)?;
        match kind {
            MinorKind::Delete => {
                let mut g = self.clone();
                g.remove_edge_raw(e);
                Ok(g)
            }
            MinorKind::Contract => {
                if edge.is_loop() {
                    return Err(Error::Precondition(format!("cannot contract loop {e}")));
                }
                let keep_end = if edge.ends[0] < edge.ends[1] { 0 } else { 1 };
                let keep = edge.ends[keep_end];
                let gone = edge.ends[1 - keep_end];
                let weight = self
                    .vertex_weight(keep)?
                    .checked_add(self.vertex_weight(gone)?)
                    .ok_or_else(|| Error::Invalid("vertex weight overflow in contraction".into()))?;

                let keep_dart = Dart::new(e, keep_end as u8);
                let gone_dart = keep_dart.opposite();
                let gone_rot = self.rotation(gone);
                let at = gone_rot.iter().position(|&d| d == gone_dart).unwrap();
                let spliced: Vec<Dart> = (1..gone_rot.len())
                    .map(|k| gone_rot[(at + k) % gone_rot.len()])
                    .collect();

                let mut g = self.clone();
                let rot = g.rotations_mut();
                rot.remove(&gone);
                let keep_rot = rot.get_mut(&keep).unwrap();
                let pos = keep_rot.iter().position(|&d| d == keep_dart).unwrap();
                keep_rot.splice(pos..=pos, spliced);

                for other in g.edges_mut().values_mut() {
                    for end in other.ends.iter_mut() {
                        if *end == gone {
                            *end = keep;
                        }
                    }
                }
                g.edges_mut().remove(&e);
                g.set_vertex_weight(keep, weight);
                g.remove_isolated_vertex(gone);
                Ok(g)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;

    #[test]
    fn contract_single_edge_adds_weights() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 2)], &[(0, 0, 1, -1)]).unwrap();
        let c = g.minor(EdgeId(0), MinorKind::Contract).unwrap();
        assert_eq!(c.vertices().collect::<Vec<_>>(), vec![(VertexId(0), 3)]);
        assert_eq!(c.edge_count(), 0);
    }

    #[test]
    fn contract_triangle_edge_gives_digon() {
        let g = ChainmailGraph::from_lists(
            &[(0, 0), (1, 0), (2, 0)],
            &[(0, 0, 1, -1), (1, 1, 2, -1), (2, 2, 0, -1)],
        )
        .unwrap();
        let c = g.minor(EdgeId(1), MinorKind::Contract).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edge_count(), 2);
        assert!(c
            .edges()
            .all(|(_, e)| e.joins(VertexId(0), VertexId(1)) && e.weight == -1));
        assert!(c.validate().valid);
    }

    #[test]
    fn contracting_a_loop_fails() {
        let g = ChainmailGraph::from_lists(&[(0, 1)], &[(0, 0, 0, -1)]).unwrap();
        assert!(matches!(
            g.minor(EdgeId(0), MinorKind::Contract),
            Err(Error::Precondition(_))
        ));
        assert_eq!(
            g.minor(EdgeId(9), MinorKind::Delete).unwrap_err(),
            Error::UnknownEdge(EdgeId(9))
        );
    }

    #[test]
    fn parallel_edge_becomes_loop() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 1)], &[(0, 0, 1, -1), (1, 0, 1, -1)]).unwrap();
        let c = g.minor(EdgeId(0), MinorKind::Contract).unwrap();
        assert!(c.edge(EdgeId(1)).unwrap().is_loop());
        assert!(c.validate().valid);
    }
}
