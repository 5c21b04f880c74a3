//! Compilers from Orthogonal Vectors instances to pattern matching instances.
//!
//! Every artifact produced here has the same contract: some pattern of the
//! artifact occurs in its graph iff the source instance has an orthogonal pair.
//!
//! * [`assemble_undirected`]: undirected gadget graph over `{b, e, 0, 1}`.
//! * [`orient_to_dag`]: the same graph with every edge directed left to right.
//! * [`build_deterministic_dag`]: a deterministic DAG obtained by merging the
//!   upper jolly row into the vector gadget.
//! * [`assemble_zigzag`]: an undirected simple path over six symbols with two patterns.
//! * [`encode_binary`]: rewrites a four-symbol artifact over `{0, 1}`.

mod binary;
mod deterministic;
mod undirected;
mod zigzag;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Annotation, LabeledGraph, NodeId};
use crate::matcher::Pattern;

pub use binary::{alpha, encode_binary, encode_pattern};
pub use deterministic::build_deterministic_dag;
pub use undirected::{
    assemble_undirected, build_gu, build_gw, build_pattern, orient_to_dag, oriented_edges,
};
pub use zigzag::{
    assemble_zigzag, build_lgu, build_lgw, build_zigzag_patterns, sub_pattern, ZigzagPatterns,
    ENC_ONE, ENC_ZERO, JOLLY_CHAIN, ZERO_CHAIN,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Undirected,
    Dag,
    DetDag,
    Zigzag,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Undirected,
        Variant::Dag,
        Variant::DetDag,
        Variant::Zigzag,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Undirected => "undirected",
            Variant::Dag => "dag",
            Variant::DetDag => "det-dag",
            Variant::Zigzag => "zigzag",
        }
    }

    /// Whether [`encode_binary`] preserves the match equivalence for this variant.
    pub fn supports_binary(self) -> bool {
        matches!(self, Variant::Dag | Variant::DetDag)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "undirected" => Ok(Variant::Undirected),
            "dag" => Ok(Variant::Dag),
            "det-dag" => Ok(Variant::DetDag),
            "zigzag" => Ok(Variant::Zigzag),
            other => Err(format!("unknown variant '{other}'")),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("expected a {expected} artifact, got {found}")]
    WrongVariant {
        expected: &'static str,
        found: Variant,
    },
    #[error("expected alphabet {expected}, got {found}")]
    WrongAlphabet {
        expected: &'static str,
        found: crate::Alphabet,
    },
    #[error("trivially-orthogonal instance: y_{j} is all-zero")]
    TriviallyOrthogonal { j: usize },
    #[error("cannot orient edge ({u},{v}) from its annotations")]
    Unorientable { u: NodeId, v: NodeId },
    #[error("binary encoding is not supported for the {0} variant")]
    BinaryUnsupported(Variant),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArtifactMeta {
    pub n: usize,
    pub d: usize,
    pub binary_encoded: bool,
    pub padded: bool,
}

/// A compiled instance: graph, one or two patterns, and provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub variant: Variant,
    pub graph: LabeledGraph,
    pub patterns: Vec<Pattern>,
    pub meta: ArtifactMeta,
}

impl ReductionArtifact {
    /// `variant n d binary padded seed`; the seed is `-` when absent.
    pub fn meta_line(&self, seed: Option<u64>) -> String {
        let seed = seed.map_or_else(|| "-".to_string(), |s| s.to_string());
        format!(
            "{} {} {} {} {} {}",
            self.variant,
            self.meta.n,
            self.meta.d,
            self.meta.binary_encoded,
            self.meta.padded,
            seed
        )
    }
}

/// A graph piece with its begin and end ports, in group order.
#[derive(Debug, Clone)]
pub struct Fragment {
    pub graph: LabeledGraph,
    pub b_ports: Vec<NodeId>,
    pub e_ports: Vec<NodeId>,
}

/// Nodes of one gadget row: `b`, the 0/1 levels, `e`.
#[derive(Debug, Clone)]
struct Group {
    b: Option<NodeId>,
    /// `levels[h] = (zero-node, one-node)`, 0-based `h`
    levels: Vec<(NodeId, Option<NodeId>)>,
    e: NodeId,
}

fn level_nodes(level: (NodeId, Option<NodeId>)) -> impl Iterator<Item = NodeId> {
    std::iter::once(level.0).chain(level.1)
}

fn connect_all(g: &mut LabeledGraph, from: &[NodeId], to: &[NodeId]) {
    for &u in from {
        for &v in to {
            g.add_edge(u, v);
        }
    }
}

fn node(g: &mut LabeledGraph, label: &str, ann: Annotation) -> NodeId {
    g.add_annotated_node(label, ann)
}
