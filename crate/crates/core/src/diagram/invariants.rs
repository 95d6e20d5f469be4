use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use super::pd::PdCode;
use crate::error::{Error, Result};
use crate::graph::UnionFind;
use crate::graph::VertexId;
use crate::linalg::{determinant, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramInvariants {
    pub crossing_count: usize,
    pub writhe: i64,
    /// Linking numbers between components, zero on the diagonal.
    pub lk: Vec<Vec<i64>>,
    pub alternating: bool,
    pub seifert_circles: usize,
    /// Euler characteristic of the Seifert surface: circles − crossings.
    pub seifert_euler: i64,
    #[serde(serialize_with = "ser_opt_big")]
    pub goeritz_det: Option<BigInt>,
}

fn ser_opt_big<S: Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

pub fn diagram_invariants(pd: &PdCode) -> Result<DiagramInvariants> {
    let ends = pd.arc_ends()?;
    let owner = pd.arc_components();
    let n = pd.components.len();

    let mut lk2 = vec![vec![0i64; n]; n];
    for c in &pd.crossings {
        let a = owner[&c.under().0];
        let b = owner[&c.over().0];
        if a != b {
            lk2[a][b] += c.sign as i64;
            lk2[b][a] += c.sign as i64;
        }
    }
    let lk = lk2.iter().map(|row| row.iter().map(|x| x / 2).collect()).collect();

    // An arc leaving over must arrive under and vice versa.
    let alternating = ends.tail.iter().all(|(arc, &(_, pout))| {
        let (_, pin) = ends.head[arc];
        (pout % 2 == 1) == (pin == 0)
    });

    // Smoothing: incoming under continues as outgoing over, incoming over as
    // outgoing under.
    let mut succ: BTreeMap<u32, u32> = BTreeMap::new();
    for c in &pd.crossings {
        succ.insert(c.under().0, c.over().1);
        succ.insert(c.over().0, c.under().1);
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut seifert_circles = pd.components.iter().filter(|c| !succ.contains_key(&c.arcs[0])).count();
    for &a in succ.keys() {
        if seen.insert(a) {
            seifert_circles += 1;
            let mut b = succ[&a];
            while seen.insert(b) {
                b = succ[&b];
            }
        }
    }

    Ok(DiagramInvariants {
        crossing_count: pd.crossings.len(),
        writhe: pd.crossings.iter().map(|c| c.sign as i64).sum(),
        lk,
        alternating,
        seifert_circles,
        seifert_euler: seifert_circles as i64 - pd.crossings.len() as i64,
        goeritz_det: goeritz_det(pd)?,
    })
}

/// `|det|` of the Goeritz matrix of the checkerboard colouring, with the
/// colour of the corner at position 0 of crossing 0 shaded and the last
/// shaded region deleted. Split diagrams give 0; `None` for the empty
/// diagram.
pub fn goeritz_det(pd: &PdCode) -> Result<Option<BigInt>> {
    let c = pd.crossings.len();
    if pd.components.is_empty() {
        return Ok(None);
    }
    if c == 0 {
        return Ok(Some(if pd.components.len() == 1 {
            BigInt::one()
        } else {
            BigInt::from(0)
        }));
    }
    // Half-edges of the 4-valent diagram graph are (crossing, position).
    let mut occurrences: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (x, cr) in pd.crossings.iter().enumerate() {
        for (k, &a) in cr.arcs.iter().enumerate() {
            occurrences.entry(a).or_default().push((x, k));
        }
    }
    let alpha = |x: usize, k: usize| -> (usize, usize) {
        let occ = &occurrences[&pd.crossings[x].arcs[k]];
        if occ[0] == (x, k) {
            occ[1]
        } else {
            occ[0]
        }
    };

    let mut pieces = UnionFind::new((0..c).map(|x| VertexId(x as u32)));
    for occ in occurrences.values() {
        pieces.union(VertexId(occ[0].0 as u32), VertexId(occ[1].0 as u32));
    }
    let roots: std::collections::BTreeSet<VertexId> = (0..c).map(|x| pieces.find(VertexId(x as u32))).collect();
    let crossingless = pd
        .components
        .iter()
        .filter(|comp| !occurrences.contains_key(&comp.arcs[0]))
        .count();
    if roots.len() + crossingless > 1 {
        return Ok(Some(BigInt::from(0)));
    }

    // Faces are orbits of σ∘α; corner (x, k) lies between positions k and
    // k+1 and belongs to the face of the half-edge (x, k+1).
    let mut face_of = vec![[usize::MAX; 4]; c];
    let mut faces = 0;
    for x in 0..c {
        for k in 0..4 {
            if face_of[x][(k + 3) % 4] != usize::MAX {
                continue;
            }
            let (mut y, mut j) = (x, k);
            loop {
                face_of[y][(j + 3) % 4] = faces;
                let (ay, aj) = alpha(y, j);
                (y, j) = (ay, (aj + 1) % 4);
                if (y, j) == (x, k) {
                    break;
                }
            }
            faces += 1;
        }
    }
    if faces != c + 2 {
        return Err(Error::Invalid(format!(
            "diagram is not planar: {c} crossings but {faces} regions"
        )));
    }

    let mut colour = vec![None::<bool>; faces];
    colour[face_of[0][0]] = Some(true);
    let mut stack = vec![face_of[0][0]];
    while let Some(f) = stack.pop() {
        for x in 0..c {
            for k in 0..4 {
                if face_of[x][k] != f {
                    continue;
                }
                let want = !colour[f].unwrap();
                for nb in [face_of[x][(k + 1) % 4], face_of[x][(k + 3) % 4]] {
                    match colour[nb] {
                        None => {
                            colour[nb] = Some(want);
                            stack.push(nb);
                        }
                        Some(col) if col != want => {
                            return Err(Error::Invalid("diagram has no checkerboard colouring".into()));
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    let shaded: Vec<usize> = (0..faces).filter(|&f| colour[f] == Some(true)).collect();
    let index: BTreeMap<usize, usize> = shaded.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let m = shaded.len();
    let mut g = vec![vec![0i64; m]; m];
    for x in 0..c {
        let odd_shaded = colour[face_of[x][1]] == Some(true);
        let eta = if odd_shaded { 1 } else { -1 };
        let (a, b) = if odd_shaded { (1, 3) } else { (0, 2) };
        let (i, j) = (index[&face_of[x][a]], index[&face_of[x][b]]);
        if i != j {
            g[i][j] -= eta;
            g[j][i] -= eta;
            g[i][i] += eta;
            g[j][j] += eta;
        }
    }
    let reduced = IntMatrix::from_rows(&g)?.minor_matrix(m - 1);
    Ok(Some(determinant(&reduced)?.abs()))
}

#[cfg(test)]
mod tests {
    use super::super::build::{build_chainmail_pd, medial_link_pd};
    use super::*;
    use crate::graph::ChainmailGraph;

    #[test]
    fn unknot() {
        let g = ChainmailGraph::from_lists(&[(0, 1)], &[]).unwrap();
        let inv = diagram_invariants(&build_chainmail_pd(&g).unwrap()).unwrap();
        assert_eq!((inv.crossing_count, inv.seifert_circles, inv.seifert_euler), (0, 1, 1));
        assert_eq!(inv.goeritz_det, Some(BigInt::one()));
    }

    #[test]
    fn negative_hopf() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 1)], &[(0, 0, 1, -1)]).unwrap();
        let inv = diagram_invariants(&build_chainmail_pd(&g).unwrap()).unwrap();
        assert_eq!(inv.crossing_count, 2);
        assert_eq!(inv.seifert_circles, 2);
        assert_eq!(inv.seifert_euler, 0);
        assert!(inv.alternating);
        assert_eq!(inv.lk, vec![vec![0, -1], vec![-1, 0]]);
        assert_eq!(inv.writhe, -2);
        assert_eq!(inv.goeritz_det, Some(BigInt::from(2)));
    }

    #[test]
    fn double_clasp() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 1)], &[(0, 0, 1, -2)]).unwrap();
        let inv = diagram_invariants(&build_chainmail_pd(&g).unwrap()).unwrap();
        assert_eq!(inv.crossing_count, 4);
        assert_eq!(inv.lk[0][1], -2);
        assert!(inv.alternating);
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 1), (2, 0)], &[(0, 0, 1, -1), (1, 1, 2, 1)]).unwrap();
        let inv = diagram_invariants(&build_chainmail_pd(&g).unwrap()).unwrap();
        assert!(!inv.alternating);
        assert_eq!(inv.lk[1][2], 1);
    }

    #[test]
    fn medial_goldens() {
        let cases: [(&[(u32, i64)], &[(u32, u32, u32, i64)], i64); 3] = [
            (&[(0, 0), (1, 0)], &[(0, 0, 1, -1)], 1),
            (&[(0, 0), (1, 0)], &[(0, 0, 1, -2)], 2),
            (
                &[(0, 0), (1, 0), (2, 0)],
                &[(0, 0, 1, -1), (1, 1, 2, -1), (2, 2, 0, -1)],
                3,
            ),
        ];
        for (v, e, det) in cases {
            let g = ChainmailGraph::from_lists(v, e).unwrap();
            let inv = diagram_invariants(&medial_link_pd(&g).unwrap()).unwrap();
            assert_eq!(inv.goeritz_det, Some(BigInt::from(det)));
            assert!(inv.alternating);
        }
    }

    #[test]
    fn split_diagram() {
        let g = ChainmailGraph::from_lists(&[(0, 1), (1, 1)], &[]).unwrap();
        let inv = diagram_invariants(&build_chainmail_pd(&g).unwrap()).unwrap();
        assert_eq!(inv.goeritz_det, Some(BigInt::from(0)));
    }
}
