use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::graph::{ChainmailGraph, EdgeId, MinorKind, MoveKind, VertexId};
use crate::surgery::linking_determinant;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertKind {
    /// Edgeless graph; `weights` are the vertex weights in id order.
    LensBase { weights: Vec<i64> },
    /// `−1`, `∞` and `0` surgery on the crossing loop at `edge` give the
    /// node, the deletion and the contraction.
    EdgeTriangle {
        edge: EdgeId,
        delete_child: usize,
        contract_child: usize,
    },
    LeafRemoval {
        vertex: VertexId,
        edge: EdgeId,
        child: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertNode {
    pub graph: ChainmailGraph,
    pub det: BigInt,
    pub kind: CertKind,
}

/// Nodes in preorder; `nodes[0]` is the root, built from `source` by
/// splitting heavy edges into parallel −1 edges and dropping loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub source: ChainmailGraph,
    pub nodes: Vec<CertNode>,
}

impl Certificate {
    pub fn root(&self) -> &CertNode {
        &self.nodes[0]
    }

    pub fn det(&self) -> &BigInt {
        &self.nodes[0].det
    }

    /// Σ over leaves of Π ν: the fully unrolled expansion.
    pub fn leaf_sum(&self) -> BigInt {
        self.nodes
            .iter()
            .filter_map(|n| match &n.kind {
                CertKind::LensBase { weights } => Some(weights.iter().map(|&w| BigInt::from(w)).product::<BigInt>()),
                _ => None,
            })
            .sum()
    }

    pub fn depth(&self) -> usize {
        fn go(c: &Certificate, i: usize) -> usize {
            match &c.nodes[i].kind {
                CertKind::LensBase { .. } => 1,
                CertKind::EdgeTriangle {
                    delete_child,
                    contract_child,
                    ..
                } => 1 + go(c, *delete_child).max(go(c, *contract_child)),
                CertKind::LeafRemoval { child, .. } => 1 + go(c, *child),
            }
        }
        go(self, 0)
    }
}

/// ν ≥ 0 everywhere, ε < 0 everywhere, and a positive vertex in every
/// component.
pub fn check_alternating_hypotheses(g: &ChainmailGraph) -> Result<()> {
    for (v, w) in g.vertices() {
        if w < 0 {
            return Err(Error::Hypothesis(format!("{v} has weight {w} < 0")));
        }
    }
    for (e, edge) in g.edges() {
        if edge.weight >= 0 {
            return Err(Error::Hypothesis(format!("{e} has weight {} >= 0", edge.weight)));
        }
    }
    for comp in g.components() {
        if comp.iter().all(|&v| g.vertex_weight(v).unwrap() == 0) {
            return Err(Error::Hypothesis(format!(
                "component of {} has no positive vertex",
                comp[0]
            )));
        }
    }
    Ok(())
}

fn det(g: &ChainmailGraph) -> BigInt {
    linking_determinant(g)
}

/// Edge whose deletion leaves a positive vertex on both sides.
fn separating_positive_edge(g: &ChainmailGraph) -> Option<EdgeId> {
    g.edge_ids().find(|&e| {
        let h = g.minor(e, MinorKind::Delete).unwrap();
        let edge = g.edge(e).unwrap();
        let sides = h.components();
        let side = |v: VertexId| sides.iter().find(|c| c.contains(&v)).unwrap();
        let (a, b) = (side(edge.ends[0]), side(edge.ends[1]));
        a != b
            && a.iter().any(|&v| g.vertex_weight(v).unwrap() > 0)
            && b.iter().any(|&v| g.vertex_weight(v).unwrap() > 0)
    })
}

fn build(g: ChainmailGraph, nodes: &mut Vec<CertNode>) -> Result<usize> {
    let at = nodes.len();
    let d = det(&g);
    nodes.push(CertNode {
        graph: g.clone(),
        det: d.clone(),
        kind: CertKind::LensBase { weights: Vec::new() },
    });
    let kind = if g.edge_count() == 0 {
        let weights: Vec<i64> = g.vertices().map(|(_, w)| w).collect();
        let product: BigInt = weights.iter().map(|&w| BigInt::from(w)).product();
        if product != d {
            return Err(Error::Internal(format!(
                "lens base product {product} differs from det {d}"
            )));
        }
        CertKind::LensBase { weights }
    } else {
        let bridges = g.bridges();
        let choice = g
            .edge_ids()
            .find(|e| !bridges.contains(e))
            .or_else(|| separating_positive_edge(&g));
        if let Some(e) = choice {
            let delete_child = build(g.minor(e, MinorKind::Delete)?, nodes)?;
            let contract_child = build(g.minor(e, MinorKind::Contract)?.without_loops(), nodes)?;
            let sum = &nodes[delete_child].det + &nodes[contract_child].det;
            if sum != d {
                return Err(Error::Internal(format!("det additivity fails at {e}: {d} != {sum}")));
            }
            CertKind::EdgeTriangle {
                edge: e,
                delete_child,
                contract_child,
            }
        } else {
            let (vertex, edge) = g
                .vertex_ids()
                .filter(|&v| g.degree(v) == 1 && g.vertex_weight(v).unwrap() == 0)
                .map(|v| (v, g.rotation(v)[0].edge))
                .next()
                .ok_or_else(|| Error::Internal("forest without a weight-0 leaf".into()))?;
            let child = build(g.apply_move(MoveKind::RemoveUnitLeaf(vertex, edge))?, nodes)?;
            if nodes[child].det != d {
                return Err(Error::Internal(format!("leaf removal at {vertex} changed det")));
            }
            CertKind::LeafRemoval { vertex, edge, child }
        }
    };
    if !nodes[at].det.is_positive() {
        return Err(Error::Internal(format!(
            "non-positive det {} under the hypotheses",
            nodes[at].det
        )));
    }
    nodes[at].kind = kind;
    Ok(at)
}

/// Certificate for a graph with ν ≥ 0, ε < 0 and a positive vertex in every
/// component. Edge choices: the lowest-id non-bridge, else the lowest-id
/// edge with positive vertices on both sides, else the lowest-id weight-0
/// leaf.
pub fn certify(g: &ChainmailGraph) -> Result<Certificate> {
    check_alternating_hypotheses(g)?;
    let root = g.normalize()?;
    let mut nodes = Vec::new();
    build(root, &mut nodes)?;
    Ok(Certificate {
        source: g.clone(),
        nodes,
    })
}

/// Result of checking a certificate; `failure` names the first bad node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub failure: Option<(usize, String)>,
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }

    pub(crate) fn ok() -> Self {
        Verification { failure: None }
    }

    pub(crate) fn fail(node: usize, reason: impl Into<String>) -> Self {
        Verification {
            failure: Some((node, reason.into())),
        }
    }
}

fn check_node(c: &Certificate, i: usize, seen: &mut [bool]) -> std::result::Result<(), (usize, String)> {
    let fail = |msg: String| Err((i, msg));
    let Some(node) = c.nodes.get(i) else {
        return Err((i, "child index out of range".into()));
    };
    if std::mem::replace(&mut seen[i], true) {
        return fail("node reached twice".into());
    }
    let g = &node.graph;
    if let Err(e) = check_alternating_hypotheses(g) {
        return fail(e.to_string());
    }
    if let Some((e, _)) = g.edges().find(|(_, edge)| edge.weight != -1 || edge.is_loop()) {
        return fail(format!("{e} is not a −1 non-loop edge"));
    }
    let d = det(g);
    if d != node.det {
        return fail(format!("claimed det {} but det Λ is {d}", node.det));
    }
    if !d.is_positive() {
        return fail(format!("det {d} is not positive"));
    }
    let child_graph = |j: usize| c.nodes.get(j).map(|n| &n.graph);
    match &node.kind {
        CertKind::LensBase { weights } => {
            if g.edge_count() != 0 {
                return fail("lens base has edges".into());
            }
            let actual: Vec<i64> = g.vertices().map(|(_, w)| w).collect();
            if &actual != weights {
                return fail("lens base weights differ from the graph".into());
            }
            if weights.iter().any(|&w| w <= 0) {
                return fail("lens base has a non-positive weight".into());
            }
            let product: BigInt = weights.iter().map(|&w| BigInt::from(w)).product();
            if product != node.det {
                return fail(format!("lens base product {product} differs from det {}", node.det));
            }
        }
        CertKind::EdgeTriangle {
            edge,
            delete_child,
            contract_child,
        } => {
            if *delete_child <= i || *contract_child <= i {
                return fail("children must follow their parent".into());
            }
            let Ok(del) = g.minor(*edge, MinorKind::Delete) else {
                return fail(format!("{edge} is not an edge"));
            };
            let Ok(con) = g.minor(*edge, MinorKind::Contract) else {
                return fail(format!("{edge} cannot be contracted"));
            };
            if child_graph(*delete_child) != Some(&del) {
                return fail(format!("delete child is not G − {edge}"));
            }
            if child_graph(*contract_child) != Some(&con.without_loops()) {
                return fail(format!("contract child is not G / {edge}"));
            }
            check_node(c, *delete_child, seen)?;
            check_node(c, *contract_child, seen)?;
            let sum = &c.nodes[*delete_child].det + &c.nodes[*contract_child].det;
            if sum != node.det {
                return fail(format!(
                    "{} != {} + {}",
                    node.det, c.nodes[*delete_child].det, c.nodes[*contract_child].det
                ));
            }
        }
        CertKind::LeafRemoval { vertex, edge, child } => {
            if *child <= i {
                return fail("children must follow their parent".into());
            }
            let Ok(after) = g.apply_move(MoveKind::RemoveUnitLeaf(*vertex, *edge)) else {
                return fail(format!("{vertex} is not a removable leaf"));
            };
            if child_graph(*child) != Some(&after) {
                return fail(format!("child is not G − {vertex}"));
            }
            check_node(c, *child, seen)?;
            if c.nodes[*child].det != node.det {
                return fail("leaf removal changed det".into());
            }
        }
    }
    Ok(())
}

/// Recompute every determinant and derivation in the certificate.
pub fn verify_certificate(c: &Certificate) -> Verification {
    if c.nodes.is_empty() {
        return Verification::fail(0, "empty certificate");
    }
    if let Err(e) = check_alternating_hypotheses(&c.source) {
        return Verification::fail(0, format!("source: {e}"));
    }
    match c.source.normalize() {
        Ok(root) if root == c.nodes[0].graph => {}
        _ => return Verification::fail(0, "root is not the normalized source"),
    }
    let mut seen = vec![false; c.nodes.len()];
    if let Err((i, reason)) = check_node(c, 0, &mut seen) {
        return Verification::fail(i, reason);
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Verification::fail(i, "unreachable node");
    }
    if c.leaf_sum() != c.nodes[0].det || c.nodes[0].det < BigInt::one() {
        return Verification::fail(0, "leaf expansion does not reproduce the root det");
    }
    Verification::ok()
}
