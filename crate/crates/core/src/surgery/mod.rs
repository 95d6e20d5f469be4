//! Framing matrices of chainmail and augmented chainmail links, first
//! homology of the surgered manifold, and the determinant identities.

mod coefficient;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{AugmentedGraph, ChainmailGraph, EdgeId, MinorKind, VertexId};
use crate::linalg::{cokernel, determinant, determinant_of_rows, AbelianGroup, IntMatrix};

pub use coefficient::SurgeryCoefficient;

/// `Λ(G)`, indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkingMatrix {
    pub matrix: IntMatrix,
    pub vertices: Vec<VertexId>,
}

impl LinkingMatrix {
    pub fn determinant(&self) -> BigInt {
        determinant(&self.matrix).expect("linking matrices are square")
    }
}

/// Entries of `Λ(G)` as machine integers, before conversion.
fn linking_entries(g: &ChainmailGraph) -> (Vec<VertexId>, Vec<Vec<i128>>) {
    let vertices: Vec<VertexId> = g.vertex_ids().collect();
    let index: BTreeMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = vertices.len();
    let mut w = vec![vec![0i128; n]; n];
    for (_, e) in g.edges() {
        if e.is_loop() {
            continue;
        }
        let (a, b) = (index[&e.ends[0]], index[&e.ends[1]]);
        w[a][b] += e.weight as i128;
        w[b][a] += e.weight as i128;
    }
    for (i, &v) in vertices.iter().enumerate() {
        let off: i128 = (0..n).filter(|&k| k != i).map(|k| w[i][k]).sum();
        w[i][i] = g.vertex_weight(v).unwrap() as i128 - off;
    }
    (vertices, w)
}

pub fn linking_matrix(g: &ChainmailGraph) -> LinkingMatrix {
    let (vertices, w) = linking_entries(g);
    let labels = vertices.iter().map(ToString::to_string).collect();
    let matrix = IntMatrix::from_rows(&w)
        .and_then(|m| m.with_labels(labels))
        .and_then(IntMatrix::into_symmetric)
        .expect("linking matrix is square and symmetric");
    LinkingMatrix { matrix, vertices }
}

/// `det Λ(G)` without building the labelled matrix.
pub fn linking_determinant(g: &ChainmailGraph) -> BigInt {
    determinant_of_rows(&linking_entries(g).1)
}

/// `H_1(M_G; Z)` as the cokernel of `Λ(G)`.
pub fn first_homology(g: &ChainmailGraph) -> AbelianGroup {
    cokernel(&linking_matrix(g).matrix).expect("linking matrices are square")
}

/// Outcome of checking `det Λ(G) = det Λ(G−e) + det Λ(G/e)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DcReport {
    pub edge: EdgeId,
    #[serde(serialize_with = "ser_big")]
    pub det: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub det_delete: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub det_contract: BigInt,
    pub holds: bool,
}

impl fmt::Display for DcReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {} + {} {}",
            self.det,
            self.det_delete,
            self.det_contract,
            if self.holds { "OK" } else { "FAIL" }
        )
    }
}

pub(crate) fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Deletion–contraction check at a −1 edge. Loops created by the
/// contraction are deleted before `Λ(G/e)` is formed.
pub fn dc_check(g: &ChainmailGraph, e: EdgeId) -> Result<DcReport> {
    let edge = g.edge(e)?;
    if edge.is_loop() {
        return Err(Error::Precondition(format!("{e} is a loop")));
    }
    if edge.weight != -1 {
        return Err(Error::Precondition(format!("{e} has weight {}, not -1", edge.weight)));
    }
    let det = linking_matrix(g).determinant();
    let det_delete = linking_matrix(&g.minor(e, MinorKind::Delete)?).determinant();
    let det_contract = linking_matrix(&g.minor(e, MinorKind::Contract)?.without_loops()).determinant();
    let holds = det == &det_delete + &det_contract;
    Ok(DcReport {
        edge: e,
        det,
        det_delete,
        det_contract,
        holds,
    })
}

/// Framing matrix of an augmented chainmail link with integer crossing-loop
/// coefficients. Crossing loops come first, then vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AugmentedMatrix {
    pub matrix: IntMatrix,
    pub crossing_loops: Vec<EdgeId>,
    pub vertices: Vec<VertexId>,
}

impl AugmentedMatrix {
    pub fn determinant(&self) -> BigInt {
        determinant(&self.matrix).expect("augmented matrices are square")
    }
}

pub fn augmented_matrix(ag: &AugmentedGraph) -> Result<AugmentedMatrix> {
    let mut coeffs = Vec::new();
    for (&e, &c) in ag.coefficients() {
        let c = c
            .integer()
            .ok_or_else(|| Error::Precondition(format!("{e} has coefficient {c}; use the rational surgery matrix")))?;
        coeffs.push((e, c));
    }
    let (vertices, w) = linking_entries(&ag.unaugmented());
    let index: BTreeMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let k = coeffs.len();
    let n = k + vertices.len();
    let mut rows = vec![vec![0i128; n]; n];
    for (i, &(e, c)) in coeffs.iter().enumerate() {
        let edge = ag.base().edge(e)?;
        let lo = edge.ends[0].min(edge.ends[1]);
        let hi = edge.ends[0].max(edge.ends[1]);
        rows[i][i] = -(c as i128);
        for (v, s) in [(lo, 1i128), (hi, -1)] {
            let j = k + index[&v];
            rows[i][j] = s;
            rows[j][i] = s;
        }
    }
    for a in 0..vertices.len() {
        for b in 0..vertices.len() {
            rows[k + a][k + b] = w[a][b];
        }
    }
    let labels = coeffs
        .iter()
        .map(|(e, _)| format!("c{}", e.0))
        .chain(vertices.iter().map(ToString::to_string))
        .collect();
    let matrix = IntMatrix::from_rows(&rows)?.with_labels(labels)?.into_symmetric()?;
    Ok(AugmentedMatrix {
        matrix,
        crossing_loops: coeffs.into_iter().map(|(e, _)| e).collect(),
        vertices,
    })
}

/// Presentation matrix of rational surgery on a framed link: `M_ii = p_i`
/// and `M_ij = q_i · lk(L_i, L_j)`. Each row carries the slope of its
/// component and its linking numbers (the diagonal entry is ignored).
pub fn rational_surgery_matrix(components: &[(SurgeryCoefficient, Vec<i64>)]) -> Result<IntMatrix> {
    let n = components.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, (slope, lk)) in components.iter().enumerate() {
        if slope.is_infinite() {
            return Err(Error::Precondition(format!(
                "component {i} has slope inf; erase it first"
            )));
        }
        if lk.len() != n {
            return Err(Error::Invalid(format!(
                "component {i} has {} linking numbers, expected {n}",
                lk.len()
            )));
        }
        for j in 0..n {
            let v = if i == j {
                BigInt::from(slope.p())
            } else {
                BigInt::from(slope.q()) * BigInt::from(lk[j])
            };
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// Slopes and linking rows of the augmented link: vertex components first,
/// then crossing loops. Loops with slope `∞` are erased.
pub fn surgery_components(ag: &AugmentedGraph) -> Result<Vec<(SurgeryCoefficient, Vec<i64>)>> {
    let mut ag = ag.clone();
    let infinite: Vec<EdgeId> = ag
        .coefficients()
        .iter()
        .filter(|(_, c)| SurgeryCoefficient::from(**c).is_infinite())
        .map(|(e, _)| *e)
        .collect();
    for e in infinite {
        ag = ag.release(e, None)?;
    }
    let (vertices, w) = linking_entries(&ag.unaugmented());
    let index: BTreeMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let nv = vertices.len();
    let n = nv + ag.crossing_loop_count();
    let narrow = |x: i128| i64::try_from(x).map_err(|_| Error::Invalid("framing overflow".into()));
    let mut rows: Vec<(SurgeryCoefficient, Vec<i64>)> = Vec::with_capacity(n);
    for a in 0..nv {
        let mut lk = vec![0i64; n];
        for b in 0..nv {
            if a != b {
                lk[b] = narrow(w[a][b])?;
            }
        }
        rows.push((SurgeryCoefficient::integer(narrow(w[a][a])?), lk));
    }
    for (i, (&e, &c)) in ag.coefficients().iter().enumerate() {
        let edge = ag.base().edge(e)?;
        let lo = edge.ends[0].min(edge.ends[1]);
        let hi = edge.ends[0].max(edge.ends[1]);
        let mut lk = vec![0i64; n];
        lk[index[&lo]] = 1;
        lk[index[&hi]] = -1;
        rows[index[&lo]].1[nv + i] = 1;
        rows[index[&hi]].1[nv + i] = -1;
        rows.push((SurgeryCoefficient::from(c), lk));
    }
    Ok(rows)
}

/// Surgery on a crossing loop, turning it back into part of the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingLoopAction {
    /// `−1/n` surgery becomes `n` negative full twists: `ε(e) = −n`.
    RolfsenTwist,
    /// `−1` surgery blows down to a single clasp: `ε(e) = −1`.
    BlowDownUnit,
    /// `∞` surgery: the loop and the edge both disappear.
    Erase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformResult {
    Chainmail(ChainmailGraph),
    Augmented(AugmentedGraph),
}

impl TransformResult {
    /// The underlying chainmail graph (the base, if loops remain).
    pub fn graph(&self) -> &ChainmailGraph {
        match self {
            TransformResult::Chainmail(g) => g,
            TransformResult::Augmented(ag) => ag.base(),
        }
    }
}

pub fn crossing_loop_transform(ag: &AugmentedGraph, e: EdgeId, action: CrossingLoopAction) -> Result<TransformResult> {
    let c = ag.coefficient(e)?;
    let weight = match action {
        CrossingLoopAction::RolfsenTwist => {
            let n = c
                .reciprocal()
                .ok_or_else(|| Error::Precondition(format!("Rolfsen twist needs -1/n at {e}, found {c}")))?;
            let n = i64::try_from(n).map_err(|_| Error::Invalid("twist count overflow".into()))?;
            Some(-n)
        }
        CrossingLoopAction::BlowDownUnit => {
            if c.integer() != Some(1) {
                return Err(Error::Precondition(format!("blow-down needs -1 at {e}, found {c}")));
            }
            Some(-1)
        }
        CrossingLoopAction::Erase => None,
    };
    let out = ag.release(e, weight)?;
    Ok(if out.crossing_loop_count() == 0 {
        TransformResult::Chainmail(out.base().clone())
    } else {
        TransformResult::Augmented(out)
    })
}

/// Outcome of the sign lemma `sign det = (−1)^{|V_c|}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignReport {
    #[serde(serialize_with = "ser_big")]
    pub det: BigInt,
    pub crossing_loops: usize,
    pub expected_sign: i8,
    pub holds: bool,
}

impl fmt::Display for SignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "det {} with {} crossing loops, expected sign {:+} {}",
            self.det,
            self.crossing_loops,
            self.expected_sign,
            if self.holds { "OK" } else { "FAIL" }
        )
    }
}

pub fn sign_check(ag: &AugmentedGraph) -> Result<SignReport> {
    for (v, w) in ag.base().vertices() {
        if w < 0 {
            return Err(Error::Precondition(format!("{v} has weight {w} < 0")));
        }
    }
    let det = augmented_matrix(ag)?.determinant();
    let crossing_loops = ag.crossing_loop_count();
    let expected_sign: i8 = if crossing_loops % 2 == 0 { 1 } else { -1 };
    let holds = det.is_zero() || (det.is_positive() == (expected_sign > 0));
    Ok(SignReport {
        det,
        crossing_loops,
        expected_sign,
        holds,
    })
}
