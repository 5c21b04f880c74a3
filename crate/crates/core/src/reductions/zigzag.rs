use crate::alphabet::Alphabet;
use crate::graph::{Annotation, Gadget, Kind, LabeledGraph};
use crate::matcher::Pattern;
use crate::ov::{BinaryVector, OvInstance};

use super::{ArtifactMeta, ReductionArtifact, Variant};

/// Pattern code of a 1-bit.
pub const ENC_ONE: &str = "ABA";
/// Pattern code of a 0-bit.
pub const ENC_ZERO: &str = "ABABA";
/// Graph chain crossed by both codes (coordinate where `y` is 0); the 0-code bounces once inside.
pub const JOLLY_CHAIN: &str = "ABA";
/// Graph chain crossed only by the 0-code (coordinate where `y` is 1).
pub const ZERO_CHAIN: &str = "ABABA";

/// The two patterns of the path reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagPatterns {
    pub first: Pattern,
    pub second: Pattern,
    /// Whether dummy all-ones sub-patterns were appended.
    pub padded: bool,
}

/// `x enc(x_1) x enc(x_2) x ... enc(x_d) x`.
pub fn sub_pattern(x: &BinaryVector) -> String {
    let mut s = String::from("x");
    for &bit in x.bits() {
        s.push_str(if bit { ENC_ONE } else { ENC_ZERO });
        s.push('x');
    }
    s
}

fn frame(subs: &[String]) -> Pattern {
    let text = format!("by{}ye", subs.join("y"));
    Pattern::new(Alphabet::Zigzag6, &text).expect("zigzag symbols")
}

/// Builds the two patterns. The sub-pattern list is padded with all-ones
/// vectors to an even length of at least 4; the second pattern swaps every
/// adjacent pair of sub-patterns.
pub fn build_zigzag_patterns(xs: &[BinaryVector]) -> ZigzagPatterns {
    let d = xs.first().map_or(1, BinaryVector::dim);
    let mut subs: Vec<String> = xs.iter().map(sub_pattern).collect();
    let mut padded = false;
    while subs.len() < 4 || subs.len() % 2 == 1 {
        subs.push(sub_pattern(&BinaryVector::ones(d)));
        padded = true;
    }
    let first = frame(&subs);
    for pair in subs.chunks_mut(2) {
        pair.swap(0, 1);
    }
    ZigzagPatterns {
        first,
        second: frame(&subs),
        padded,
    }
}

fn push(path: &mut Vec<(String, Annotation)>, label: &str, ann: Annotation) {
    path.push((label.to_string(), ann));
}

fn segment(path: &mut Vec<(String, Annotation)>, gadget: Gadget, j: usize, y: &BinaryVector) {
    push(path, "x", Annotation::new(gadget, j, 1, Kind::X));
    for (h, &bit) in y.bits().iter().enumerate() {
        let chain = if bit { ZERO_CHAIN } else { JOLLY_CHAIN };
        for c in chain.chars() {
            let kind = if c == 'A' { Kind::A } else { Kind::Bc };
            push(
                path,
                &c.to_string(),
                Annotation::new(gadget, j, h + 1, kind),
            );
        }
        push(path, "x", Annotation::new(gadget, j, h + 2, Kind::X));
    }
}

fn into_path(items: Vec<(String, Annotation)>) -> LabeledGraph {
    let mut g = LabeledGraph::new(Alphabet::Zigzag6, false);
    for (label, ann) in items {
        let id = g.add_annotated_node(label, ann);
        if id.0 > 0 {
            g.add_edge(crate::graph::NodeId(id.0 - 1), id);
        }
    }
    g
}

/// `y x chain x ... chain x y`, with a 1-code-only chain where `y` is 1.
pub fn build_lgw(y: &BinaryVector) -> LabeledGraph {
    into_path(lgw_items(1, y))
}

fn lgw_items(j: usize, y: &BinaryVector) -> Vec<(String, Annotation)> {
    let mut items = Vec::new();
    push(&mut items, "y", Annotation::new(Gadget::LGW, j, 0, Kind::Y));
    segment(&mut items, Gadget::LGW, j, y);
    push(&mut items, "y", Annotation::new(Gadget::LGW, j, 0, Kind::Y));
    items
}

/// `x chain x ... chain x` with a jolly chain at every coordinate.
pub fn build_lgu(d: usize) -> LabeledGraph {
    let mut items = Vec::new();
    segment(&mut items, Gadget::LGU, 1, &BinaryVector::zeros(d));
    into_path(items)
}

/// Simple undirected path: for every `y_j` the block
/// `b y LGU [y LGW^(j) y] LGU y e`, blocks joined end to begin.
pub fn assemble_zigzag(inst: &OvInstance) -> ReductionArtifact {
    let (n, d) = (inst.n(), inst.d());
    let mut items = Vec::new();
    for (idx, y) in inst.y().iter().enumerate() {
        let j = idx + 1;
        push(
            &mut items,
            "b",
            Annotation::new(Gadget::Pendant, j, 0, Kind::B),
        );
        push(&mut items, "y", Annotation::new(Gadget::LGU, j, 0, Kind::Y));
        segment(&mut items, Gadget::LGU, j, &BinaryVector::zeros(d));
        items.extend(lgw_items(j, y));
        segment(&mut items, Gadget::LGU, j, &BinaryVector::zeros(d));
        push(&mut items, "y", Annotation::new(Gadget::LGU, j, 0, Kind::Y));
        push(
            &mut items,
            "e",
            Annotation::new(Gadget::Pendant, j, 0, Kind::E),
        );
    }
    let pats = build_zigzag_patterns(inst.x());
    ReductionArtifact {
        variant: Variant::Zigzag,
        graph: into_path(items),
        patterns: vec![pats.first, pats.second],
        meta: ArtifactMeta {
            n,
            d,
            binary_encoded: false,
            padded: pats.padded,
        },
    }
}
