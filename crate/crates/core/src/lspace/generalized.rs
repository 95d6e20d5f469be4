use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::certificate::{certify, check_alternating_hypotheses, verify_certificate, Certificate, Verification};
use crate::error::{Error, Result};
use crate::graph::{AugmentedGraph, ChainmailGraph, CrossingCoefficient, EdgeId};
use crate::surgery::augmented_matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenKind {
    /// No crossing loops left; the graph itself is certified.
    ChainmailBase(Certificate),
    /// The loop at `edge` with coefficient `−c`, `c ≥ 2`, against `−(c−1)`
    /// and the loop erased.
    CoefficientTriangle {
        edge: EdgeId,
        shallower_child: usize,
        erased_child: usize,
    },
    /// The `−1` loop at `edge` blown down to a single clasp.
    UnitBlowDown { edge: EdgeId, child: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenNode {
    pub graph: AugmentedGraph,
    /// Signed determinant of the augmented framing matrix.
    pub det: BigInt,
    pub kind: GenKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedCertificate {
    pub nodes: Vec<GenNode>,
}

impl GeneralizedCertificate {
    pub fn root(&self) -> &GenNode {
        &self.nodes[0]
    }
}

fn sign_ok(det: &BigInt, loops: usize) -> bool {
    det.is_zero() || det.is_positive() == (loops % 2 == 0)
}

/// Integer coefficients, ν ≥ 0, ε < 0, and a positive vertex in every
/// component of the graph with the augmented edges deleted.
fn check_hypotheses(ag: &AugmentedGraph) -> Result<()> {
    for (&e, &c) in ag.coefficients() {
        if c.integer().is_none() {
            return Err(Error::Hypothesis(format!("{e} has non-integer coefficient {c}")));
        }
    }
    check_alternating_hypotheses(ag.base())?;
    check_alternating_hypotheses(&ag.unaugmented())
        .map_err(|e| Error::Hypothesis(format!("with augmented edges deleted: {e}")))
}

fn det(ag: &AugmentedGraph) -> Result<BigInt> {
    Ok(augmented_matrix(ag)?.determinant())
}

/// Base certificates are cached by graph: the same chainmail graph is
/// reached through many blow-down paths.
fn build(
    ag: AugmentedGraph,
    nodes: &mut Vec<GenNode>,
    bases: &mut HashMap<ChainmailGraph, Certificate>,
) -> Result<usize> {
    let at = nodes.len();
    let d = det(&ag)?;
    let loops = ag.crossing_loop_count();
    if !sign_ok(&d, loops) {
        return Err(Error::Internal(format!(
            "sign lemma fails: det {d} with {loops} crossing loops"
        )));
    }
    nodes.push(GenNode {
        graph: ag.clone(),
        det: d.clone(),
        kind: GenKind::UnitBlowDown {
            edge: EdgeId(0),
            child: 0,
        },
    });
    let deep = ag
        .coefficients()
        .iter()
        .find(|(_, c)| c.integer().is_some_and(|c| c >= 2))
        .map(|(&e, &c)| (e, c.integer().unwrap()));
    let kind = if let Some((edge, c)) = deep {
        let shallower = ag.with_coefficient(edge, CrossingCoefficient::Integer(c - 1))?;
        let shallower_child = build(shallower, nodes, bases)?;
        let erased_child = build(ag.release(edge, None)?, nodes, bases)?;
        let (s, r) = (&nodes[shallower_child].det, &nodes[erased_child].det);
        if d != s - r || d.abs() != s.abs() + r.abs() {
            return Err(Error::Internal(format!(
                "triangle fails at {edge}: |{d}| != |{s}| + |{r}|"
            )));
        }
        GenKind::CoefficientTriangle {
            edge,
            shallower_child,
            erased_child,
        }
    } else if let Some(edge) = ag.crossing_loops().next() {
        let child = build(ag.release(edge, Some(-1))?, nodes, bases)?;
        if nodes[child].det != -&d {
            return Err(Error::Internal(format!("blow-down at {edge} changed |det|")));
        }
        GenKind::UnitBlowDown { edge, child }
    } else {
        let cert = match bases.get(ag.base()) {
            Some(cert) => cert.clone(),
            None => {
                let cert = certify(ag.base())?;
                bases.insert(ag.base().clone(), cert.clone());
                cert
            }
        };
        if cert.det() != &d {
            return Err(Error::Internal("chainmail certificate det differs".into()));
        }
        GenKind::ChainmailBase(cert)
    };
    nodes[at].kind = kind;
    Ok(at)
}

/// Certificate for a partially augmented negative alternating chainmail
/// graph: peel coefficients down to −1 by triangles on the lowest-id deep
/// loop, blow down the −1 loops, then certify the chainmail graph.
pub fn certify_generalized(ag: &AugmentedGraph) -> Result<GeneralizedCertificate> {
    check_hypotheses(ag)?;
    let mut nodes = Vec::new();
    build(ag.clone(), &mut nodes, &mut HashMap::new())?;
    Ok(GeneralizedCertificate { nodes })
}

/// `verified` holds embedded certificates already checked; an identical one
/// needs no second pass.
fn check_node<'a>(
    c: &'a GeneralizedCertificate,
    i: usize,
    seen: &mut [bool],
    verified: &mut Vec<&'a Certificate>,
) -> std::result::Result<(), (usize, String)> {
    let fail = |msg: String| Err((i, msg));
    let Some(node) = c.nodes.get(i) else {
        return Err((i, "child index out of range".into()));
    };
    if std::mem::replace(&mut seen[i], true) {
        return fail("node reached twice".into());
    }
    let ag = &node.graph;
    if let Err(e) = check_hypotheses(ag) {
        return fail(e.to_string());
    }
    let d = match det(ag) {
        Ok(d) => d,
        Err(e) => return fail(e.to_string()),
    };
    if d != node.det {
        return fail(format!("claimed det {} but the augmented matrix has det {d}", node.det));
    }
    if !sign_ok(&d, ag.crossing_loop_count()) {
        return fail(format!(
            "sign lemma fails: det {d} with {} crossing loops",
            ag.crossing_loop_count()
        ));
    }
    let child_graph = |j: usize| c.nodes.get(j).map(|n| &n.graph);
    match &node.kind {
        GenKind::ChainmailBase(cert) => {
            if ag.crossing_loop_count() != 0 {
                return fail("base node still has crossing loops".into());
            }
            if &cert.source != ag.base() {
                return fail("embedded certificate is for another graph".into());
            }
            if !verified.contains(&cert) {
                if let Some((j, reason)) = verify_certificate(cert).failure {
                    return fail(format!("embedded certificate node {j}: {reason}"));
                }
                verified.push(cert);
            }
            if cert.det() != &d {
                return fail("embedded certificate det differs".into());
            }
        }
        GenKind::CoefficientTriangle {
            edge,
            shallower_child,
            erased_child,
        } => {
            if *shallower_child <= i || *erased_child <= i {
                return fail("children must follow their parent".into());
            }
            let Some(cv) = ag
                .coefficients()
                .get(edge)
                .and_then(|c| c.integer())
                .filter(|&c| c >= 2)
            else {
                return fail(format!("{edge} has no coefficient -c with c >= 2"));
            };
            let shallower = ag.with_coefficient(*edge, CrossingCoefficient::Integer(cv - 1)).ok();
            if child_graph(*shallower_child) != shallower.as_ref() {
                return fail(format!("shallower child does not lower the coefficient at {edge}"));
            }
            let erased = ag.release(*edge, None).ok();
            if child_graph(*erased_child) != erased.as_ref() {
                return fail(format!("erased child does not erase the loop at {edge}"));
            }
            check_node(c, *shallower_child, seen, verified)?;
            check_node(c, *erased_child, seen, verified)?;
            let (s, r) = (&c.nodes[*shallower_child].det, &c.nodes[*erased_child].det);
            if d.abs() != s.abs() + r.abs() {
                return fail(format!("|{d}| != |{s}| + |{r}|"));
            }
        }
        GenKind::UnitBlowDown { edge, child } => {
            if *child <= i {
                return fail("children must follow their parent".into());
            }
            if ag.coefficients().get(edge).and_then(|c| c.integer()) != Some(1) {
                return fail(format!("{edge} does not carry a -1 loop"));
            }
            let down = ag.release(*edge, Some(-1)).ok();
            if child_graph(*child) != down.as_ref() {
                return fail(format!("child is not the blow-down at {edge}"));
            }
            check_node(c, *child, seen, verified)?;
            if c.nodes[*child].det != -&d {
                return fail("blow-down must negate det".into());
            }
        }
    }
    Ok(())
}

pub fn verify_generalized(c: &GeneralizedCertificate) -> Verification {
    if c.nodes.is_empty() {
        return Verification::fail(0, "empty certificate");
    }
    let mut seen = vec![false; c.nodes.len()];
    if let Err((i, reason)) = check_node(c, 0, &mut seen, &mut Vec::new()) {
        return Verification::fail(i, reason);
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Verification::fail(i, "unreachable node");
    }
    Verification::ok()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::graph::ChainmailGraph;

    fn clasp(c: u64) -> AugmentedGraph {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 1)], &[(0, 0, 1, -1)]).unwrap();
        AugmentedGraph::new(g, BTreeMap::from([(EdgeId(0), CrossingCoefficient::Integer(c))])).unwrap()
    }

    #[test]
    fn unit_loop_blows_down() {
        let c = certify_generalized(&clasp(1)).unwrap();
        assert_eq!(c.root().det, BigInt::from(-3));
        let GenKind::UnitBlowDown { child, .. } = c.root().kind else {
            panic!()
        };
        assert!(matches!(c.nodes[child].kind, GenKind::ChainmailBase(_)));
        assert_eq!(c.nodes[child].det, BigInt::from(3));
        assert!(verify_generalized(&c).is_valid());
    }

    #[test]
    fn coefficient_triangles() {
        for k in 2..=4u64 {
            let c = certify_generalized(&clasp(k)).unwrap();
            let GenKind::CoefficientTriangle {
                shallower_child,
                erased_child,
                ..
            } = c.root().kind
            else {
                panic!()
            };
            let k = k as i64;
            assert_eq!(c.root().det, BigInt::from(-k - 2));
            assert_eq!(c.nodes[shallower_child].det, BigInt::from(-k - 1));
            assert_eq!(c.nodes[erased_child].det, BigInt::from(1));
            assert!(verify_generalized(&c).is_valid());
        }
    }

    #[test]
    fn hypotheses() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 0)], &[(0, 0, 1, -1)]).unwrap();
        let ag = AugmentedGraph::new(g, BTreeMap::from([(EdgeId(0), CrossingCoefficient::Integer(2))])).unwrap();
        assert!(matches!(certify_generalized(&ag), Err(Error::Hypothesis(_))));
        let mut ag = clasp(1);
        ag = ag
            .with_coefficient(EdgeId(0), CrossingCoefficient::Reciprocal(2))
            .unwrap();
        assert!(matches!(certify_generalized(&ag), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn tampering_is_detected() {
        let mut c = certify_generalized(&clasp(3)).unwrap();
        let last = c.nodes.len() - 1;
        c.nodes[last].det += 1;
        assert!(!verify_generalized(&c).is_valid());
    }
}
