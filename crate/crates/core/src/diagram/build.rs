use std::collections::BTreeMap;

use super::pd::{ComponentKind, Crossing, DiagramKind, Geometry, Passage, PdCode, PdComponent};
use crate::error::{Error, Result};
use crate::graph::{ChainmailGraph, Dart, EdgeId};

/// Number arcs along the traversal (arc `i` leaves passage `i`) and
/// assemble the crossings. `comps` holds each component's passages.
fn assemble(
    comps: Vec<(ComponentKind, Vec<Passage>)>,
    crossing_count: usize,
    signs: &[i8],
    mut geometry: Geometry,
) -> PdCode {
    let mut next_arc = 1u32;
    let mut components = Vec::new();
    // Per crossing: (under in, under out, over in, over out), plus medial
    // port arcs.
    let mut strands: Vec<[u32; 4]> = vec![[0; 4]; crossing_count];
    let mut ports: Vec<[u32; 4]> = vec![[0; 4]; crossing_count];
    let mut under_entry: Vec<usize> = vec![0; crossing_count];
    for (kind, passages) in comps {
        geometry.passages.push(passages.clone());
        if passages.is_empty() {
            components.push(PdComponent {
                kind,
                arcs: vec![next_arc],
            });
            next_arc += 1;
            continue;
        }
        let first = next_arc;
        let m = passages.len() as u32;
        for (j, p) in passages.iter().enumerate() {
            let out = first + j as u32;
            let inc = if j == 0 { first + m - 1 } else { out - 1 };
            let slot = if p.over { 2 } else { 0 };
            strands[p.crossing][slot] = inc;
            strands[p.crossing][slot + 1] = out;
            if let Some((pin, pout)) = p.ports {
                ports[p.crossing][pin] = inc;
                ports[p.crossing][pout] = out;
                if !p.over {
                    under_entry[p.crossing] = pin;
                }
            }
        }
        components.push(PdComponent {
            kind,
            arcs: (first..first + m).collect(),
        });
        next_arc += m;
    }
    let crossings = (0..crossing_count)
        .map(|x| {
            let arcs = match geometry.kind {
                DiagramKind::Chainmail => {
                    let [ui, uo, oi, oo] = strands[x];
                    if signs[x] > 0 {
                        [ui, oo, uo, oi]
                    } else {
                        [ui, oi, uo, oo]
                    }
                }
                DiagramKind::Medial => {
                    let s = under_entry[x];
                    [
                        ports[x][s],
                        ports[x][(s + 1) % 4],
                        ports[x][(s + 2) % 4],
                        ports[x][(s + 3) % 4],
                    ]
                }
            };
            Crossing { arcs, sign: signs[x] }
        })
        .collect();
    PdCode {
        crossings,
        components,
        geometry: Some(geometry),
    }
}

fn unit_split(g: &ChainmailGraph) -> Result<ChainmailGraph> {
    if !g.is_sphere_embedding() {
        return Err(Error::Invalid("rotation system is not a sphere embedding".into()));
    }
    Ok(g.split_parallel(|_| true).0)
}

/// Diagram of the chainmail link: a counterclockwise circle per vertex and,
/// per unit of edge weight, a clasp of two crossings of sign `sgn ε`.
///
/// Along the end-0 circle a clasp is met at crossing 0 then crossing 1;
/// the end-1 circle meets them in the opposite order. For a negative clasp
/// the end-0 circle is over at crossing 0 and the end-1 circle at crossing 1;
/// a positive clasp swaps the two.
pub fn build_chainmail_pd(g: &ChainmailGraph) -> Result<PdCode> {
    let h = unit_split(g)?;
    if let Some((e, _)) = h.edges().find(|(_, e)| e.is_loop()) {
        return Err(Error::Precondition(format!(
            "{e} is a loop; erase loops before drawing"
        )));
    }
    let mut index: BTreeMap<(EdgeId, u8), usize> = BTreeMap::new();
    let mut sites = Vec::new();
    let mut signs = Vec::new();
    let mut comps = Vec::new();
    for v in h.vertex_ids() {
        let mut passages = Vec::new();
        for &d in h.rotation(v) {
            let weight = h.edge(d.edge)?.weight;
            let order: [u8; 2] = if d.end == 0 { [0, 1] } else { [1, 0] };
            for k in order {
                let crossing = *index.entry((d.edge, k)).or_insert_with(|| {
                    sites.push((d.edge, k));
                    signs.push(weight.signum() as i8);
                    sites.len() - 1
                });
                let over = (d.end == k) != (weight > 0);
                passages.push(Passage {
                    crossing,
                    over,
                    ports: None,
                });
            }
        }
        comps.push((ComponentKind::Vertex(v), passages));
    }
    let geometry = Geometry {
        kind: DiagramKind::Chainmail,
        graph: h,
        sites,
        passages: Vec::new(),
    };
    Ok(assemble(comps, index.len(), &signs, geometry))
}

const CCW: u8 = 0;
const CW: u8 = 1;

/// Tuple position of a port: `[e0ccw, e0cw, e1ccw, e1cw]` is the
/// counterclockwise order around the crossing at the middle of an edge.
fn position(d: Dart, side: u8) -> usize {
    (d.end * 2 + side) as usize
}

fn port(edge: EdgeId, pos: usize) -> (Dart, u8) {
    (Dart::new(edge, (pos / 2) as u8), (pos % 2) as u8)
}

/// Diagram of the medial link: a crossing at the middle of every unit edge,
/// joined around each vertex corner. On a negative edge the strand
/// `e0cw–e1cw` is over, on a positive edge the strand `e0ccw–e1ccw`, so
/// an all-negative triangle gives the left-handed trefoil.
pub fn medial_link_pd(g: &ChainmailGraph) -> Result<PdCode> {
    let h = unit_split(g)?;
    if h.vertex_count() == 0 || !h.is_connected() {
        return Err(Error::Precondition(
            "medial link needs a connected graph (after erasing weight-0 edges)".into(),
        ));
    }
    let edges: Vec<EdgeId> = h.edge_ids().collect();
    let mut index: BTreeMap<EdgeId, usize> = BTreeMap::new();
    let mut sites = Vec::new();
    let mut signs = vec![0i8; edges.len()];
    let mut over_entry: Vec<usize> = vec![0; edges.len()];
    let mut under_entry: Vec<usize> = vec![0; edges.len()];
    let mut visited: BTreeMap<(EdgeId, usize), bool> = BTreeMap::new();
    let mut comps = Vec::new();
    let over_strand = |e: EdgeId| if h.edge(e).unwrap().weight < 0 { 1 } else { 0 };

    if edges.is_empty() {
        comps.push((ComponentKind::Strand, Vec::new()));
    }
    for v in h.vertex_ids() {
        for &d0 in h.rotation(v) {
            for side in [CW, CCW] {
                let start = (d0, side);
                if visited.contains_key(&(d0.edge, position(d0, side) % 2)) {
                    continue;
                }
                let mut passages = Vec::new();
                let mut entry = start;
                loop {
                    let (d, s) = entry;
                    let pin = position(d, s);
                    let pout = pin ^ 2;
                    let strand = pin % 2;
                    visited.insert((d.edge, strand), true);
                    let crossing = *index.entry(d.edge).or_insert_with(|| {
                        sites.push((d.edge, 0));
                        sites.len() - 1
                    });
                    let over = strand == over_strand(d.edge);
                    if over {
                        over_entry[crossing] = pin;
                    } else {
                        under_entry[crossing] = pin;
                    }
                    passages.push(Passage {
                        crossing,
                        over,
                        ports: Some((pin, pout)),
                    });
                    let (exit, exit_side) = port(d.edge, pout);
                    entry = if exit_side == CCW {
                        (h.next_in_rotation(exit), CW)
                    } else {
                        (h.prev_in_rotation(exit), CCW)
                    };
                    if entry == start {
                        break;
                    }
                }
                comps.push((ComponentKind::Strand, passages));
            }
        }
    }
    for x in 0..sites.len() {
        // Positive exactly when the over-strand enters at relative position 3.
        signs[x] = if (over_entry[x] + 4 - under_entry[x]) % 4 == 3 {
            1
        } else {
            -1
        };
    }
    let geometry = Geometry {
        kind: DiagramKind::Medial,
        graph: h,
        sites,
        passages: Vec::new(),
    };
    Ok(assemble(comps, index.len(), &signs, geometry))
}
