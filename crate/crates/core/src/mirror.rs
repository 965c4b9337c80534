//! Mirror verifications as diagram comparisons with generator-level certificates.
//!
//! A report lists, per diagram node, a generator dictionary and the comparison of Ext tables
//! computed on both sides, and per diagram edge, whether restriction commutes with the
//! dictionary on generators. Certificates are finite checks up to stated truncations; they
//! do not prove a dg equivalence.

use alloc::string::String;
use alloc::vec::Vec;

mod pants;
mod surface;

pub use pants::verify_pants_mirror;
pub use surface::verify_surface_mirror;

/// Truncation bounds echoed into every report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub poly_degree: usize,
    pub u_degree: usize,
    /// Accepted for completeness; the quiver Homs used here are finite, so nothing is cut.
    pub loop_length: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation { poly_degree: 6, u_degree: 3, loop_length: 6 }
    }
}

/// Replace the image of one generator along one edge by its shift `[1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Perturbation {
    /// Index into [`MirrorReport::edges`].
    pub edge: usize,
    /// Index into the source node's dictionary.
    pub generator: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MirrorOptions {
    pub truncation: Truncation,
    pub perturb: Option<Perturbation>,
    /// Skip the glued checks that only depend on the truncation (pants case).
    pub skip_glued: bool,
}

/// Ext dimensions of one ordered generator pair on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTable {
    pub source: String,
    pub target: String,
    /// Dimensions by degree (or parity, for two-periodic nodes).
    pub a_side: Vec<usize>,
    pub b_side: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeResult {
    pub name: String,
    pub model: String,
    /// `(A-side name, B-side name)`.
    pub dictionary: Vec<(String, String)>,
    pub tables: Vec<PairTable>,
    pub verdict: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeResult {
    pub name: String,
    pub source: String,
    pub target: String,
    /// Per source generator: whether its image commutes with the dictionary.
    pub generators: Vec<(String, bool)>,
    /// Source generators whose image along the edge is zero; a shift cannot perturb them.
    pub zero_images: Vec<String>,
    pub verdict: bool,
    pub detail: String,
}

/// A named auxiliary comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub verdict: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorReport {
    pub case: String,
    pub truncation: Truncation,
    pub nodes: Vec<NodeResult>,
    pub edges: Vec<EdgeResult>,
    pub checks: Vec<CheckResult>,
    pub overall: bool,
    /// First failing location, if any.
    pub failure: Option<String>,
}

impl MirrorReport {
    fn new(case: String, truncation: Truncation) -> Self {
        MirrorReport { case, truncation, nodes: Vec::new(), edges: Vec::new(), checks: Vec::new(), overall: false, failure: None }
    }

    fn finish(mut self) -> Self {
        let mut failure = None;
        for n in &self.nodes {
            if !n.verdict {
                failure = failure.or_else(|| Some(alloc::format!("node {}: {}", n.name, n.detail)));
            }
        }
        for e in &self.edges {
            if !e.verdict {
                failure = failure.or_else(|| Some(alloc::format!("edge {}: {}", e.name, e.detail)));
            }
        }
        for c in &self.checks {
            if !c.verdict {
                failure = failure.or_else(|| Some(alloc::format!("check {}: {}", c.name, c.detail)));
            }
        }
        self.overall = failure.is_none();
        self.failure = failure;
        self
    }
}

#[cfg(test)]
mod tests;
