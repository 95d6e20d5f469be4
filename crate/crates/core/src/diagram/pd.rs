use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ChainmailGraph, EdgeId, VertexId};

/// One crossing: arcs in counterclockwise order starting from the incoming
/// under-strand, and the crossing sign. The crossing is positive exactly
/// when the over-strand runs from position 3 to position 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub sign: i8,
}

impl Crossing {
    /// (incoming, outgoing) arcs of the over-strand.
    pub fn over(&self) -> (u32, u32) {
        if self.sign > 0 {
            (self.arcs[3], self.arcs[1])
        } else {
            (self.arcs[1], self.arcs[3])
        }
    }

    /// (incoming, outgoing) arcs of the under-strand.
    pub fn under(&self) -> (u32, u32) {
        (self.arcs[0], self.arcs[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "snake_case")]
pub enum ComponentKind {
    /// The round unknot of a vertex.
    Vertex(VertexId),
    /// A crossing loop around the clasp of an edge.
    #[serde(rename = "loop")]
    CrossingLoop(EdgeId),
    /// A component of a medial link.
    Strand,
}

/// A link component: its arcs in traversal order. A component without
/// crossings has a single arc that occurs in no crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PdComponent {
    #[serde(flatten)]
    pub kind: ComponentKind,
    pub arcs: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramKind {
    Chainmail,
    Medial,
}

/// One pass of a component through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
    /// Tuple positions (in port order around the crossing) where the strand
    /// enters and leaves; medial diagrams only.
    pub ports: Option<(usize, usize)>,
}

/// Where each crossing sits in the graph the diagram was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geometry {
    pub kind: DiagramKind,
    /// The graph with every edge split into unit edges.
    pub graph: ChainmailGraph,
    /// Per crossing: the unit edge it belongs to and, for chainmail clasps,
    /// which of the two clasp crossings it is (0 or 1).
    pub sites: Vec<(EdgeId, u8)>,
    /// Passages of every component in traversal order.
    pub passages: Vec<Vec<Passage>>,
}

/// Planar diagram code of a link.
///
/// Text form, one item per line, `#` starts a comment:
///
/// ```text
/// X[1,4,2,3]-
/// X[3,2,4,1]-
/// C vertex v0: 1 2
/// C vertex v1: 3 4
/// ```
///
/// `X` lines are crossings with their sign; `C` lines list each
/// component's arcs in order, tagged `vertex vN`, `loop eN` or `strand`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PdCode {
    pub crossings: Vec<Crossing>,
    pub components: Vec<PdComponent>,
    #[serde(skip)]
    pub geometry: Option<Geometry>,
}

/// Where each arc starts and ends: `(crossing, position)` pairs.
pub(crate) struct ArcEnds {
    pub tail: BTreeMap<u32, (usize, usize)>,
    pub head: BTreeMap<u32, (usize, usize)>,
}

impl PdCode {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Component index of every arc.
    pub fn arc_components(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for (i, c) in self.components.iter().enumerate() {
            for &a in &c.arcs {
                out.insert(a, i);
            }
        }
        out
    }

    /// Check that the code is well formed: arcs occur twice, components
    /// partition the arcs and agree with the crossings, signs are ±1.
    pub fn validate(&self) -> Result<()> {
        self.arc_ends().map(|_| ())
    }

    pub(crate) fn arc_ends(&self) -> Result<ArcEnds> {
        let bad = |msg: String| Err(Error::Invalid(msg));
        let mut count: BTreeMap<u32, usize> = BTreeMap::new();
        for (x, c) in self.crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return bad(format!("crossing {x} has sign {}", c.sign));
            }
            for a in c.arcs {
                *count.entry(a).or_default() += 1;
            }
        }
        let mut owner: BTreeMap<u32, usize> = BTreeMap::new();
        for (i, comp) in self.components.iter().enumerate() {
            if comp.arcs.is_empty() {
                return bad(format!("component {i} has no arcs"));
            }
            for &a in &comp.arcs {
                if owner.insert(a, i).is_some() {
                    return bad(format!("arc {a} listed in two components"));
                }
            }
            let free = comp.arcs.iter().filter(|a| !count.contains_key(a)).count();
            if free > 0 && comp.arcs.len() != 1 {
                return bad(format!("component {i} mixes crossingless and crossing arcs"));
            }
        }
        for (&a, &n) in &count {
            if n != 2 {
                return bad(format!("arc {a} occurs {n} times"));
            }
            if !owner.contains_key(&a) {
                return bad(format!("arc {a} belongs to no component"));
            }
        }
        // The arc after `a` in its component must leave the crossing `a`
        // enters, on the same strand.
        let mut tail = BTreeMap::new();
        let mut head = BTreeMap::new();
        for (x, c) in self.crossings.iter().enumerate() {
            let (oi, oo) = c.over();
            let oi_pos = if c.sign > 0 { 3 } else { 1 };
            for (inc, out, pin, pout) in [(c.arcs[0], c.arcs[2], 0, 2), (oi, oo, oi_pos, 4 - oi_pos)] {
                if head.insert(inc, (x, pin)).is_some() || tail.insert(out, (x, pout)).is_some() {
                    return bad(format!("crossing {x} repeats an arc direction"));
                }
                let comp = &self.components[owner[&inc]].arcs;
                let at = comp.iter().position(|&y| y == inc).unwrap();
                if comp[(at + 1) % comp.len()] != out {
                    return bad(format!(
                        "crossing {x}: arc {out} does not follow arc {inc} in its component"
                    ));
                }
            }
        }
        Ok(ArcEnds { tail, head })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parse the text form. Geometry is not part of the text.
    pub fn parse(text: &str) -> Result<PdCode> {
        let mut crossings = Vec::new();
        let mut components = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let content = raw.split('#').next().unwrap();
            let indent = content.len() - content.trim_start().len();
            let line = content.trim();
            if line.is_empty() {
                continue;
            }
            let err = |col: usize, msg: &str| Error::Syntax {
                line: line_no,
                column: indent + col + 1,
                message: msg.to_string(),
            };
            if let Some(rest) = line.strip_prefix("X[") {
                let close = rest.find(']').ok_or_else(|| err(line.len(), "missing ']'"))?;
                let mut arcs = [0u32; 4];
                let parts: Vec<&str> = rest[..close].split(',').collect();
                if parts.len() != 4 {
                    return Err(err(2, "a crossing needs four arcs"));
                }
                let mut col = 2;
                for (k, p) in parts.iter().enumerate() {
                    arcs[k] = p
                        .trim()
                        .parse()
                        .map_err(|_| err(col, "arc labels are nonnegative integers"))?;
                    col += p.len() + 1;
                }
                let sign = match rest[close + 1..].trim() {
                    "+" => 1,
                    "-" => -1,
                    _ => return Err(err(close + 3, "expected '+' or '-' after the crossing")),
                };
                crossings.push(Crossing { arcs, sign });
            } else if let Some(rest) = line.strip_prefix("C ") {
                let colon = rest.find(':').ok_or_else(|| err(line.len(), "missing ':'"))?;
                let tag: Vec<&str> = rest[..colon].split_whitespace().collect();
                let kind = match tag.as_slice() {
                    ["vertex", v] => ComponentKind::Vertex(v.parse().map_err(|_| err(2, "bad vertex id"))?),
                    ["loop", e] => ComponentKind::CrossingLoop(e.parse().map_err(|_| err(2, "bad edge id"))?),
                    ["strand"] => ComponentKind::Strand,
                    _ => return Err(err(2, "component kind is 'vertex vN', 'loop eN' or 'strand'")),
                };
                let arcs = rest[colon + 1..]
                    .split_whitespace()
                    .map(|a| a.parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| err(colon + 3, "arc labels are nonnegative integers"))?;
                components.push(PdComponent { kind, arcs });
            } else {
                return Err(err(0, "expected a line starting with 'X[' or 'C '"));
            }
        }
        let pd = PdCode {
            crossings,
            components,
            geometry: None,
        };
        pd.validate()?;
        Ok(pd)
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::Vertex(v) => write!(f, "vertex {v}"),
            ComponentKind::CrossingLoop(e) => write!(f, "loop {e}"),
            ComponentKind::Strand => write!(f, "strand"),
        }
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.crossings {
            let [a, b, x, d] = c.arcs;
            writeln!(f, "X[{a},{b},{x},{d}]{}", if c.sign > 0 { '+' } else { '-' })?;
        }
        for comp in &self.components {
            let arcs: Vec<String> = comp.arcs.iter().map(ToString::to_string).collect();
            writeln!(f, "C {}: {}", comp.kind, arcs.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = "X[1,4,2,3]-\nX[3,2,4,1]-\nC vertex v0: 1 2\nC vertex v1: 3 4\n";

    #[test]
    fn text_round_trip() {
        let pd = PdCode::parse(HOPF).unwrap();
        assert_eq!(pd.crossings.len(), 2);
        assert_eq!(pd.to_string(), HOPF);
    }

    #[test]
    fn unknot() {
        let pd = PdCode::parse("# trivial\nC strand: 1\n").unwrap();
        assert_eq!(pd.crossing_count(), 0);
    }

    #[test]
    fn syntax_errors() {
        let err = PdCode::parse("X[1,2,3,4]-\n  X[1,2,3]+").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, column: 5, .. }), "{err:?}");
        assert!(matches!(
            PdCode::parse("Y"),
            Err(Error::Syntax { line: 1, column: 1, .. })
        ));
        assert!(matches!(PdCode::parse("X[1,2,3,4]?"), Err(Error::Syntax { .. })));
        assert!(matches!(PdCode::parse("C thing: 1"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn inconsistent_codes() {
        assert!(PdCode::parse("X[1,2,3,4]-\nC strand: 1 2 3 4\n").is_err());
        assert!(PdCode::parse("X[1,4,2,3]-\nX[3,2,4,1]-\nC vertex v0: 1 2\n").is_err());
        assert!(PdCode::parse("X[1,1,2,2]-\nC strand: 1 2\n").is_err());
        // A single kink.
        assert!(PdCode::parse("X[1,2,2,1]-\nC strand: 1 2\n").is_ok());
    }
}
