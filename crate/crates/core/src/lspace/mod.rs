//! Certificates for the deletion–contraction inductions showing that
//! surgeries on negative alternating chainmail links (and their partial
//! augmentations) are L-spaces, plus the acyclic-orientation lemma behind the
//! non-orderability argument.
//!
//! A certificate is a tree of graphs, each carrying `det Λ`. Leaves are
//! edgeless graphs (connected sums of lens spaces); interior nodes either
//! split at a −1 edge into deletion and contraction, whose determinants add,
//! or drop a weight-0 leaf. Certificates only record the arithmetic skeleton
//! of the exact-triangle argument; nothing here computes Floer homology.

mod certificate;
mod generalized;
mod json;
mod obstruction;

pub use certificate::{
    certify, check_alternating_hypotheses, verify_certificate, CertKind, CertNode, Certificate, Verification,
};
pub use generalized::{certify_generalized, verify_generalized, GenKind, GenNode, GeneralizedCertificate};
pub use json::{
    certificate_from_json, certificate_to_json, generalized_from_json, generalized_to_json, CERTIFICATE_FORMAT,
    GENERALIZED_FORMAT,
};
pub use obstruction::{orderability_obstruction, ObstructionReport, OrientationWitness};
