//! Link diagrams of chainmail links and medial links, as PD codes, with
//! diagrammatic invariants and SVG output.

mod build;
mod invariants;
mod layout;
mod pd;
mod svg;

pub use build::{build_chainmail_pd, medial_link_pd};
pub use invariants::{diagram_invariants, goeritz_det, DiagramInvariants};
pub use layout::tutte_layout;
pub use pd::{ComponentKind, Crossing, DiagramKind, Geometry, Passage, PdCode, PdComponent};
pub use svg::{render_svg, RenderOptions};
