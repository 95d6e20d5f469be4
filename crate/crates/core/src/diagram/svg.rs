use std::collections::BTreeMap;
use std::fmt::Write;

use super::layout::{tutte_layout, Point};
use super::pd::{DiagramKind, Geometry, PdCode};
use crate::error::{Error, Result};
use crate::graph::{ChainmailGraph, Dart, EdgeId, VertexId};

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Pixels per layout unit.
    pub scale: f64,
    pub margin: f64,
    pub stroke_width: f64,
    /// Labels drawn in an ellipse around the clasp of an edge, e.g. the
    /// coefficients of crossing loops.
    pub annotations: Vec<(EdgeId, String)>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            scale: 200.0,
            margin: 40.0,
            stroke_width: 2.0,
            annotations: Vec::new(),
        }
    }
}

fn sub(a: Point, b: Point) -> Point {
    (a.0 - b.0, a.1 - b.1)
}

fn add(a: Point, b: Point) -> Point {
    (a.0 + b.0, a.1 + b.1)
}

fn mul(a: Point, k: f64) -> Point {
    (a.0 * k, a.1 * k)
}

fn norm(a: Point) -> f64 {
    a.0.hypot(a.1)
}

fn unit(a: Point) -> Point {
    let n = norm(a);
    if n < 1e-12 {
        (1.0, 0.0)
    } else {
        mul(a, 1.0 / n)
    }
}

fn polar(angle: f64) -> Point {
    (angle.cos(), angle.sin())
}

/// Angular offsets spreading runs of parallel darts at each vertex, in
/// rotation (counterclockwise) order.
fn spread(g: &ChainmailGraph) -> BTreeMap<Dart, f64> {
    let mut out = BTreeMap::new();
    for v in g.vertex_ids() {
        let rot = g.rotation(v);
        let n = rot.len();
        if n == 0 {
            continue;
        }
        let other = |d: &Dart| g.edge(d.edge).unwrap().other(v);
        let start = (0..n)
            .find(|&i| other(&rot[(i + n - 1) % n]) != other(&rot[i]))
            .unwrap_or(0);
        let mut i = 0;
        while i < n {
            let w = other(&rot[(start + i) % n]);
            let mut j = i;
            while j < n && other(&rot[(start + j) % n]) == w {
                j += 1;
            }
            let m = j - i;
            let step = (0.9 / m as f64).min(0.3);
            for k in 0..m {
                out.insert(rot[(start + i + k) % n], (k as f64 - (m - 1) as f64 / 2.0) * step);
            }
            i = j;
        }
    }
    out
}

/// Layout and scene for one diagram, in layout units (y up).
struct Scene {
    paths: Vec<Vec<Point>>,
    /// Per crossing: position, over-strand direction, over component.
    crossings: Vec<(Point, Point, usize)>,
    clasp_centres: BTreeMap<EdgeId, Point>,
    radius: f64,
}

fn min_edge_length(g: &ChainmailGraph, pos: &BTreeMap<VertexId, Point>) -> f64 {
    g.edges()
        .filter(|(_, e)| !e.is_loop())
        .map(|(_, e)| norm(sub(pos[&e.ends[0]], pos[&e.ends[1]])))
        .fold(f64::INFINITY, f64::min)
        .min(1.0)
        .max(1e-3)
}

/// First intersection of the ray `a + s·dir` (s ≥ 0) with a circle.
fn ray_circle(a: Point, dir: Point, centre: Point, r: f64) -> Option<Point> {
    let f = sub(a, centre);
    let b = f.0 * dir.0 + f.1 * dir.1;
    let c = f.0 * f.0 + f.1 * f.1 - r * r;
    let disc = b * b - c;
    if disc < 0.0 {
        return None;
    }
    let s = -b - disc.sqrt();
    let s = if s >= 0.0 { s } else { -b + disc.sqrt() };
    (s >= 0.0).then(|| add(a, mul(dir, s)))
}

fn chainmail_scene(geo: &Geometry, pd: &PdCode) -> Scene {
    let g = &geo.graph;
    let pos = tutte_layout(g);
    let len = min_edge_length(g, &pos);
    let r = 0.3 * len;
    let offsets = spread(g);
    let owner = pd.arc_components();
    let comp_of_vertex: BTreeMap<VertexId, usize> = pd
        .components
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match c.kind {
            super::pd::ComponentKind::Vertex(v) => Some((v, i)),
            _ => None,
        })
        .collect();
    let dart_angle = |d: Dart| -> f64 {
        let v = g.dart_vertex(d);
        let w = g.edge(d.edge).unwrap().other(v);
        let dir = sub(pos[&w], pos[&v]);
        dir.1.atan2(dir.0) + offsets.get(&d).copied().unwrap_or(0.0)
    };
    // Finger sides of every end-0 dart: (start on circle, direction).
    let mut crossings = vec![((0.0, 0.0), (1.0, 0.0), 0usize); pd.crossings.len()];
    let mut clasp_centres = BTreeMap::new();
    let mut paths = Vec::new();
    for (ci, comp) in pd.components.iter().enumerate() {
        let super::pd::ComponentKind::Vertex(v) = comp.kind else {
            continue;
        };
        let c = pos[&v];
        let mut fingers: Vec<(f64, Dart)> = g
            .rotation(v)
            .iter()
            .filter(|d| d.end == 0)
            .map(|&d| (dart_angle(d), d))
            .collect();
        fingers.sort_by(|a, b| {
            a.0.rem_euclid(std::f64::consts::TAU)
                .total_cmp(&b.0.rem_euclid(std::f64::consts::TAU))
        });
        let mut pts = Vec::new();
        let samples = 72;
        let mut next_finger = 0;
        for s in 0..=samples {
            let t = std::f64::consts::TAU * s as f64 / samples as f64;
            while next_finger < fingers.len() && fingers[next_finger].0.rem_euclid(std::f64::consts::TAU) <= t {
                let (phi, d) = fingers[next_finger];
                next_finger += 1;
                let w = g.edge(d.edge).unwrap().ends[1];
                let cw = pos[&w];
                let dir = polar(phi);
                let normal = (-dir.1, dir.0);
                let h = 0.25 * r;
                let reach = norm(sub(cw, c)) - 0.4 * r;
                let side_a = add(c, add(mul(dir, (r * r - h * h).sqrt()), mul(normal, -h)));
                let side_b = add(c, add(mul(dir, (r * r - h * h).sqrt()), mul(normal, h)));
                let tip_a = add(c, add(mul(dir, reach), mul(normal, -h)));
                let tip_b = add(c, add(mul(dir, reach), mul(normal, h)));
                pts.extend([side_a, tip_a, tip_b, side_b]);
                let wc = comp_of_vertex[&w];
                for (k, start, heading) in [(0u8, side_a, dir), (1u8, tip_b, mul(dir, -1.0))] {
                    let Some(x) = geo.sites.iter().position(|&s| s == (d.edge, k)) else {
                        continue;
                    };
                    let p = ray_circle(start, heading, cw, r).unwrap_or_else(|| add(c, mul(dir, norm(sub(cw, c)) - r)));
                    let cr = &pd.crossings[x];
                    let over_comp = owner[&cr.over().0];
                    let over_dir = if over_comp == ci {
                        heading
                    } else {
                        let radial = unit(sub(p, cw));
                        (-radial.1, radial.0)
                    };
                    crossings[x] = (p, over_dir, if over_comp == ci { ci } else { wc });
                }
                let centre = mul(
                    add(
                        crossings_point(&crossings, geo, d.edge, 0),
                        crossings_point(&crossings, geo, d.edge, 1),
                    ),
                    0.5,
                );
                clasp_centres.insert(d.edge, centre);
            }
            pts.push(add(c, mul(polar(t), r)));
        }
        paths.push(pts);
    }
    Scene {
        paths,
        crossings,
        clasp_centres,
        radius: r,
    }
}

fn crossings_point(crossings: &[(Point, Point, usize)], geo: &Geometry, e: EdgeId, k: u8) -> Point {
    geo.sites
        .iter()
        .position(|&s| s == (e, k))
        .map(|x| crossings[x].0)
        .unwrap_or((0.0, 0.0))
}

fn medial_scene(geo: &Geometry, pd: &PdCode) -> Scene {
    let g = &geo.graph;
    let pos = tutte_layout(g);
    let len = min_edge_length(g, &pos);
    let offsets = spread(g);
    let eps = 0.08 * len;
    // Crossing frame: centre, direction from end 0 to end 1, left normal.
    let frame = |e: EdgeId| -> (Point, Point, Point) {
        let edge = g.edge(e).unwrap();
        let (a, b) = (pos[&edge.ends[0]], pos[&edge.ends[1]]);
        let off = offsets.get(&Dart::new(e, 0)).copied().unwrap_or(0.0);
        if edge.is_loop() {
            let dir = polar(off * 4.0 + 0.5);
            let centre = add(a, mul(dir, 0.35 * len));
            let t = (-dir.1, dir.0);
            return (centre, t, mul(dir, -1.0));
        }
        let d = unit(sub(b, a));
        let n = (-d.1, d.0);
        let centre = add(mul(add(a, b), 0.5), mul(n, off * norm(sub(b, a)) * 0.5));
        (centre, d, n)
    };
    let port_point = |e: EdgeId, p: usize| -> Point {
        let (c, d, n) = frame(e);
        let (sd, sn) = match p {
            0 => (-1.0, 1.0),
            1 => (-1.0, -1.0),
            2 => (1.0, -1.0),
            _ => (1.0, 1.0),
        };
        add(c, add(mul(d, sd * eps), mul(n, sn * eps)))
    };
    let mut crossings = vec![((0.0, 0.0), (1.0, 0.0), 0usize); pd.crossings.len()];
    let mut paths = Vec::new();
    for (ci, passages) in geo.passages.iter().enumerate() {
        if passages.is_empty() {
            // A lone vertex: a circle around it.
            let v = g.vertex_ids().next().unwrap();
            let c = pos[&v];
            paths.push(
                (0..=48)
                    .map(|s| add(c, mul(polar(std::f64::consts::TAU * s as f64 / 48.0), 0.3)))
                    .collect(),
            );
            continue;
        }
        let mut pts = Vec::new();
        for (j, p) in passages.iter().enumerate() {
            let e = geo.sites[p.crossing].0;
            let (pin, pout) = p.ports.unwrap();
            let a = port_point(e, pin);
            let b = port_point(e, pout);
            pts.push(a);
            pts.push(b);
            if p.over {
                crossings[p.crossing] = (frame(e).0, unit(sub(b, a)), ci);
            }
            let next = &passages[(j + 1) % passages.len()];
            let ne = geo.sites[next.crossing].0;
            let c = port_point(ne, next.ports.unwrap().0);
            // Curve through the corner at the vertex of the exit dart.
            let v = g.dart_vertex(Dart::new(e, (pout / 2) as u8));
            let ctrl = add(mul(pos[&v], 0.45), mul(add(b, c), 0.275));
            for s in 1..12 {
                let t = s as f64 / 12.0;
                let q = add(
                    add(mul(b, (1.0 - t) * (1.0 - t)), mul(ctrl, 2.0 * t * (1.0 - t))),
                    mul(c, t * t),
                );
                pts.push(q);
            }
        }
        pts.push(pts[0]);
        paths.push(pts);
    }
    Scene {
        paths,
        crossings,
        clasp_centres: geo
            .sites
            .iter()
            .enumerate()
            .map(|(x, s)| (s.0, frame(geo.sites[x].0).0))
            .collect(),
        radius: 0.3 * len,
    }
}

/// Standalone SVG 1.1 drawing of a diagram built by this module. Each
/// component is one `path`; every crossing gets a `g class="crossing"`
/// that masks the under-strand and redraws the over-strand.
pub fn render_svg(pd: &PdCode, options: &RenderOptions) -> Result<String> {
    let geo = pd.geometry.as_ref().ok_or_else(|| {
        Error::Invalid("diagram has no embedding data; only constructed diagrams can be drawn".into())
    })?;
    let scene = match geo.kind {
        DiagramKind::Chainmail => chainmail_scene(geo, pd),
        DiagramKind::Medial => medial_scene(geo, pd),
    };
    let all: Vec<Point> = scene.paths.iter().flatten().copied().collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in &all {
        x0 = x0.min(p.0);
        x1 = x1.max(p.0);
        y0 = y0.min(p.1);
        y1 = y1.max(p.1);
    }
    if all.is_empty() {
        (x0, y0, x1, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    let s = options.scale;
    let m = options.margin;
    let width = (x1 - x0) * s + 2.0 * m;
    let height = (y1 - y0) * s + 2.0 * m;
    let map = |p: Point| -> (f64, f64) { ((p.0 - x0) * s + m, (y1 - p.1) * s + m) };
    let sw = options.stroke_width;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.2}\" height=\"{height:.2}\" viewBox=\"0 0 {width:.2} {height:.2}\">"
    )
    .unwrap();
    writeln!(
        out,
        "<rect width=\"{width:.2}\" height=\"{height:.2}\" fill=\"white\"/>"
    )
    .unwrap();
    out.push_str("<g class=\"components\" fill=\"none\" stroke-linejoin=\"round\">\n");
    for (i, path) in scene.paths.iter().enumerate() {
        let mut d = String::new();
        for (k, p) in path.iter().enumerate() {
            let (x, y) = map(*p);
            write!(d, "{}{x:.2},{y:.2}", if k == 0 { "M" } else { " L" }).unwrap();
        }
        d.push_str(" Z");
        writeln!(
            out,
            "<path class=\"component\" data-component=\"{i}\" stroke=\"{}\" stroke-width=\"{sw}\" d=\"{d}\"/>",
            PALETTE[i % PALETTE.len()]
        )
        .unwrap();
    }
    out.push_str("</g>\n<g class=\"crossings\">\n");
    let half = 3.0 * sw;
    for (x, (p, dir, comp)) in scene.crossings.iter().enumerate() {
        let (a, b) = (map(add(*p, mul(*dir, -half / s))), map(add(*p, mul(*dir, half / s))));
        writeln!(
            out,
            "<g class=\"crossing\" data-crossing=\"{x}\"><line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"white\" stroke-width=\"{}\"/><line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{}\" stroke-width=\"{sw}\"/></g>",
            a.0, a.1, b.0, b.1, 4.0 * sw, a.0, a.1, b.0, b.1, PALETTE[comp % PALETTE.len()]
        )
        .unwrap();
    }
    out.push_str("</g>\n");
    if !options.annotations.is_empty() {
        out.push_str("<g class=\"annotations\" font-family=\"sans-serif\" font-size=\"14\">\n");
        for (e, label) in &options.annotations {
            let Some(c) = scene.clasp_centres.get(e) else { continue };
            let (x, y) = map(*c);
            let rx = scene.radius * s * 0.6;
            writeln!(
                out,
                "<g class=\"annotation\" data-edge=\"{e}\"><ellipse cx=\"{x:.2}\" cy=\"{y:.2}\" rx=\"{rx:.2}\" ry=\"{:.2}\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"4 3\"/><text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text></g>",
                rx * 0.6,
                y - rx * 0.7,
                escape(label)
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
