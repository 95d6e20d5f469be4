//! Certificate JSON. Nodes are listed in preorder with the root first;
//! children are referenced by index and determinants are decimal strings.
//! Every node embeds its graph as a full graph document.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::certificate::{CertKind, CertNode, Certificate};
use super::generalized::{GenKind, GenNode, GeneralizedCertificate};
use crate::error::{Error, Result};
use crate::graph::{AugmentedGraph, ChainmailGraph, EdgeId, VertexId};
use crate::io::{json_error, GraphDoc, GraphInput};

pub const CERTIFICATE_FORMAT: &str = "chainmail-certificate";
pub const GENERALIZED_FORMAT: &str = "chainmail-generalized-certificate";
const VERSION: u32 = 1;

/// Slopes on the crossing loop of an edge triangle (informational).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Slopes {
    node: String,
    delete_child: String,
    contract_child: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
enum CertKindDoc {
    LensBase {
        weights: Vec<i64>,
    },
    EdgeTriangle {
        edge: String,
        delete_child: usize,
        contract_child: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        slopes: Option<Slopes>,
    },
    LeafRemoval {
        vertex: String,
        edge: String,
        child: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CertNodeDoc {
    det: String,
    #[serde(flatten)]
    kind: CertKindDoc,
    graph: GraphDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    format: String,
    version: u32,
    source: GraphDoc,
    nodes: Vec<CertNodeDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
enum GenKindDoc {
    ChainmailBase {
        certificate: CertificateDoc,
    },
    CoefficientTriangle {
        edge: String,
        shallower_child: usize,
        erased_child: usize,
    },
    UnitBlowDown {
        edge: String,
        child: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct GenNodeDoc {
    det: String,
    #[serde(flatten)]
    kind: GenKindDoc,
    graph: GraphDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneralizedDoc {
    format: String,
    version: u32,
    nodes: Vec<GenNodeDoc>,
}

fn cert_doc(c: &Certificate) -> CertificateDoc {
    let nodes = c
        .nodes
        .iter()
        .map(|n| CertNodeDoc {
            det: n.det.to_string(),
            graph: GraphDoc::from_graph(&n.graph, None),
            kind: match &n.kind {
                CertKind::LensBase { weights } => CertKindDoc::LensBase {
                    weights: weights.clone(),
                },
                CertKind::EdgeTriangle {
                    edge,
                    delete_child,
                    contract_child,
                } => CertKindDoc::EdgeTriangle {
                    edge: edge.to_string(),
                    delete_child: *delete_child,
                    contract_child: *contract_child,
                    slopes: Some(Slopes {
                        node: "-1".into(),
                        delete_child: "inf".into(),
                        contract_child: "0".into(),
                    }),
                },
                CertKind::LeafRemoval { vertex, edge, child } => CertKindDoc::LeafRemoval {
                    vertex: vertex.to_string(),
                    edge: edge.to_string(),
                    child: *child,
                },
            },
        })
        .collect();
    CertificateDoc {
        format: CERTIFICATE_FORMAT.into(),
        version: VERSION,
        source: GraphDoc::from_graph(&c.source, None),
        nodes,
    }
}

fn check_header(format: &str, version: u32, want: &str) -> Result<()> {
    if format != want {
        return Err(Error::Invalid(format!("format is {format:?}, expected {want:?}")));
    }
    if version != VERSION {
        return Err(Error::Invalid(format!("unsupported version {version}")));
    }
    Ok(())
}

fn parse_det(s: &str) -> Result<BigInt> {
    s.parse()
        .map_err(|_| Error::Invalid(format!("det {s:?} is not an integer")))
}

fn chainmail(doc: GraphDoc) -> Result<ChainmailGraph> {
    match doc.into_input()? {
        GraphInput::Chainmail(g) => Ok(g),
        GraphInput::Augmented(_) => Err(Error::Invalid("unexpected augmented graph in certificate".into())),
    }
}

fn augmented(doc: GraphDoc) -> Result<AugmentedGraph> {
    match doc.into_input()? {
        GraphInput::Augmented(ag) => Ok(ag),
        GraphInput::Chainmail(_) => Err(Error::Invalid(
            "generalized certificate node lacks \"augmented\"".into(),
        )),
    }
}

fn cert_from_doc(doc: CertificateDoc) -> Result<Certificate> {
    check_header(&doc.format, doc.version, CERTIFICATE_FORMAT)?;
    let source = chainmail(doc.source)?;
    let nodes = doc
        .nodes
        .into_iter()
        .map(|n| {
            Ok(CertNode {
                det: parse_det(&n.det)?,
                graph: chainmail(n.graph)?,
                kind: match n.kind {
                    CertKindDoc::LensBase { weights } => CertKind::LensBase { weights },
                    CertKindDoc::EdgeTriangle {
                        edge,
                        delete_child,
                        contract_child,
                        ..
                    } => CertKind::EdgeTriangle {
                        edge: edge.parse::<EdgeId>()?,
                        delete_child,
                        contract_child,
                    },
                    CertKindDoc::LeafRemoval { vertex, edge, child } => CertKind::LeafRemoval {
                        vertex: vertex.parse::<VertexId>()?,
                        edge: edge.parse::<EdgeId>()?,
                        child,
                    },
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate { source, nodes })
}

pub fn certificate_to_json(c: &Certificate) -> String {
    let mut s = serde_json::to_string_pretty(&cert_doc(c)).expect("certificates serialize");
    s.push('\n');
    s
}

/// Parse a certificate. The result is not checked; use
/// [`verify_certificate`](super::verify_certificate).
pub fn certificate_from_json(text: &str) -> Result<Certificate> {
    cert_from_doc(serde_json::from_str(text).map_err(json_error)?)
}

pub fn generalized_to_json(c: &GeneralizedCertificate) -> String {
    let nodes = c
        .nodes
        .iter()
        .map(|n| GenNodeDoc {
            det: n.det.to_string(),
            graph: GraphDoc::from_graph(n.graph.base(), Some(n.graph.coefficients())),
            kind: match &n.kind {
                GenKind::ChainmailBase(cert) => GenKindDoc::ChainmailBase {
                    certificate: cert_doc(cert),
                },
                GenKind::CoefficientTriangle {
                    edge,
                    shallower_child,
                    erased_child,
                } => GenKindDoc::CoefficientTriangle {
                    edge: edge.to_string(),
                    shallower_child: *shallower_child,
                    erased_child: *erased_child,
                },
                GenKind::UnitBlowDown { edge, child } => GenKindDoc::UnitBlowDown {
                    edge: edge.to_string(),
                    child: *child,
                },
            },
        })
        .collect();
    let doc = GeneralizedDoc {
        format: GENERALIZED_FORMAT.into(),
        version: VERSION,
        nodes,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("certificates serialize");
    s.push('\n');
    s
}

pub fn generalized_from_json(text: &str) -> Result<GeneralizedCertificate> {
    let doc: GeneralizedDoc = serde_json::from_str(text).map_err(json_error)?;
    check_header(&doc.format, doc.version, GENERALIZED_FORMAT)?;
    let nodes = doc
        .nodes
        .into_iter()
        .map(|n| {
            Ok(GenNode {
                det: parse_det(&n.det)?,
                graph: augmented(n.graph)?,
                kind: match n.kind {
                    GenKindDoc::ChainmailBase { certificate } => GenKind::ChainmailBase(cert_from_doc(certificate)?),
                    GenKindDoc::CoefficientTriangle {
                        edge,
                        shallower_child,
                        erased_child,
                    } => GenKind::CoefficientTriangle {
                        edge: edge.parse()?,
                        shallower_child,
                        erased_child,
                    },
                    GenKindDoc::UnitBlowDown { edge, child } => GenKind::UnitBlowDown {
                        edge: edge.parse()?,
                        child,
                    },
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneralizedCertificate { nodes })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::super::{certify, certify_generalized, verify_certificate, verify_generalized};
    use super::*;
    use crate::graph::CrossingCoefficient;

    #[test]
    fn certificate_round_trip() {
        let g = ChainmailGraph::from_lists(
            &[(0, 1), (1, 0), (2, 2)],
            &[(0, 0, 1, -2), (1, 1, 2, -1), (2, 2, 0, -1)],
        )
        .unwrap();
        let c = certify(&g).unwrap();
        let text = certificate_to_json(&c);
        let back = certificate_from_json(&text).unwrap();
        assert_eq!(back, c);
        assert!(verify_certificate(&back).is_valid());
        assert_eq!(certificate_to_json(&back), text);
        assert!(text.contains("\"kind\": \"EdgeTriangle\""));
    }

    #[test]
    fn generalized_round_trip() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 1), (2, 1)], &[(0, 0, 1, -1), (1, 1, 2, -1)]).unwrap();
        let ag = AugmentedGraph::new(
            g,
            BTreeMap::from([
                (EdgeId(0), CrossingCoefficient::Integer(3)),
                (EdgeId(1), CrossingCoefficient::Integer(1)),
            ]),
        )
        .unwrap();
        let c = certify_generalized(&ag).unwrap();
        let text = generalized_to_json(&c);
        let back = generalized_from_json(&text).unwrap();
        assert_eq!(back, c);
        assert!(verify_generalized(&back).is_valid());
    }

    #[test]
    fn malformed() {
        assert!(matches!(certificate_from_json("[1,"), Err(Error::Syntax { .. })));
        assert!(certificate_from_json(r#"{"format":"x","version":1,"source":{},"nodes":[]}"#).is_err());
    }
}
