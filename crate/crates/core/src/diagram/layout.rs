use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{ChainmailGraph, VertexId};

pub type Point = (f64, f64);

/// Tutte barycentric placement: per component, the vertices of the face
/// with the most darts go on a unit circle in face order (counterclockwise)
/// and the rest sit at the average of their neighbours. Components are laid
/// out left to right, three units apart. Coordinates are y-up.
pub fn tutte_layout(g: &ChainmailGraph) -> BTreeMap<VertexId, Point> {
    let faces = g.faces();
    let mut pos = BTreeMap::new();
    for (ci, comp) in g.components().iter().enumerate() {
        let shift = 3.0 * ci as f64;
        let members: BTreeSet<VertexId> = comp.iter().copied().collect();
        let outer = faces
            .iter()
            .filter(|f| members.contains(&g.dart_vertex(f[0])))
            .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])));
        let mut fixed: Vec<VertexId> = Vec::new();
        if let Some(face) = outer {
            for d in face {
                let v = g.dart_vertex(*d);
                if !fixed.contains(&v) {
                    fixed.push(v);
                }
            }
        } else {
            fixed.push(comp[0]);
        }
        let k = fixed.len();
        for (i, &v) in fixed.iter().enumerate() {
            let p = if k == 1 {
                (0.0, 0.0)
            } else {
                let t = std::f64::consts::TAU * i as f64 / k as f64;
                (t.cos(), t.sin())
            };
            pos.insert(v, (p.0 + shift, p.1));
        }
        let free: Vec<VertexId> = comp.iter().copied().filter(|v| !fixed.contains(v)).collect();
        for &v in &free {
            pos.insert(v, (shift, 0.0));
        }
        let neighbours: BTreeMap<VertexId, Vec<VertexId>> = free
            .iter()
            .map(|&v| {
                let ns = g
                    .rotation(v)
                    .iter()
                    .map(|d| g.edge(d.edge).unwrap().other(v))
                    .filter(|&w| w != v)
                    .collect();
                (v, ns)
            })
            .collect();
        for _ in 0..2000 {
            let mut delta: f64 = 0.0;
            for &v in &free {
                let ns = &neighbours[&v];
                if ns.is_empty() {
                    continue;
                }
                let (sx, sy) = ns
                    .iter()
                    .fold((0.0, 0.0), |acc, w| (acc.0 + pos[w].0, acc.1 + pos[w].1));
                let p = (sx / ns.len() as f64, sy / ns.len() as f64);
                let old = pos.insert(v, p).unwrap();
                delta = delta.max((old.0 - p.0).abs() + (old.1 - p.1).abs());
            }
            if delta < 1e-9 {
                break;
            }
        }
    }
    pos
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wheel_hub_is_central() {
        let g = ChainmailGraph::from_lists(
            &[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)],
            &[
                (0, 0, 1, -1),
                (1, 1, 2, -1),
                (2, 2, 3, -1),
                (3, 3, 0, -1),
                (4, 4, 0, -1),
                (5, 4, 1, -1),
                (6, 4, 2, -1),
                (7, 4, 3, -1),
            ],
        )
        .unwrap();
        let pos = tutte_layout(&g);
        let hub = pos[&VertexId(4)];
        assert!(hub.0.abs() < 1e-6 && hub.1.abs() < 1e-6, "{hub:?}");
    }

    #[test]
    fn components_are_separated() {
        let g = ChainmailGraph::from_lists(&[(0, 0), (1, 0)], &[]).unwrap();
        let pos = tutte_layout(&g);
        assert_eq!(pos[&VertexId(1)].0 - pos[&VertexId(0)].0, 3.0);
    }
}
