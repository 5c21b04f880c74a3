use crate::alphabet::Alphabet;
use crate::graph::{expand_with_edges, Annotation, Gadget, Kind, LabeledGraph, NodeId};
use crate::matcher::Pattern;

use super::{ReductionArtifact, ReductionError};

/// Binary code of a four-symbol letter.
pub fn alpha(c: u8) -> &'static str {
    match c {
        b'0' => "0000",
        b'1' => "1111",
        b'b' => "10",
        b'e' => "01",
        other => panic!("no binary code for {:?}", other as char),
    }
}

fn alpha_str(s: &str) -> String {
    s.bytes().map(alpha).collect()
}

/// `01 · α(P) · 10`: the extra frame is matched by the added pendant nodes.
pub fn encode_pattern(p: &Pattern) -> Pattern {
    let text = format!("01{}10", alpha_str(p.as_str()));
    Pattern::new(Alphabet::Binary, &text).expect("binary symbols")
}

/// Rewrites a four-symbol DAG artifact over `{0, 1}`. Deterministic DAGs come out
/// deterministic with in-degree plus out-degree at most 3.
///
/// A fresh `e` is attached in front of every pendant `b` and a fresh `b`
/// after every pendant `e`, labels are replaced by their codes and expanded
/// into chains, and nodes with more than two predecessors are split.
pub fn encode_binary(art: &ReductionArtifact) -> Result<ReductionArtifact, ReductionError> {
    if art.graph.alphabet() != Alphabet::Base4 {
        return Err(ReductionError::WrongAlphabet {
            expected: "base4",
            found: art.graph.alphabet(),
        });
    }
    // Chains read backwards in undirected graphs, which breaks the equivalence.
    if !art.variant.supports_binary() || !art.graph.is_directed() {
        return Err(ReductionError::BinaryUnsupported(art.variant));
    }
    let mut edges = art.graph.edges().to_vec();

    let mut g = LabeledGraph::new(Alphabet::Binary, true);
    for u in art.graph.nodes() {
        let id = g.add_node(alpha_str(art.graph.label(u)));
        g.set_annotation(id, art.graph.annotation(u));
    }
    for u in art.graph.nodes() {
        let Some(a) = art.graph.annotation(u) else {
            continue;
        };
        if a.gadget != Gadget::Pendant {
            continue;
        }
        match a.kind {
            Kind::B => {
                let extra = g.add_annotated_node(
                    alpha(b'e'),
                    Annotation::new(Gadget::Pendant, a.j, 0, Kind::E),
                );
                edges.push((extra, u));
            }
            Kind::E => {
                let extra = g.add_annotated_node(
                    alpha(b'b'),
                    Annotation::new(Gadget::Pendant, a.j, 0, Kind::B),
                );
                edges.push((u, extra));
            }
            _ => {}
        }
    }

    let graph = split_fan_in(&expand_with_edges(&g, true, &edges).graph);
    Ok(ReductionArtifact {
        variant: art.variant,
        graph,
        patterns: art.patterns.iter().map(encode_pattern).collect(),
        meta: super::ArtifactMeta {
            binary_encoded: true,
            ..art.meta
        },
    })
}

/// Splits every node with `k > 2` predecessors and a single successor into
/// `ceil(k/2)` copies of at most two predecessors each, repeating downstream.
fn split_fan_in(g: &LabeledGraph) -> LabeledGraph {
    let mut labels: Vec<String> = g.labels().to_vec();
    let mut anns: Vec<Option<Annotation>> = g.annotations().to_vec();
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (u.0, v.0)).collect();
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); labels.len()];
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); labels.len()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        outgoing[u].push(i);
        incoming[v].push(i);
    }

    let mut work: Vec<usize> = (0..labels.len()).rev().collect();
    while let Some(v) = work.pop() {
        if incoming[v].len() <= 2 || outgoing[v].len() != 1 {
            continue;
        }
        let succ = edges[outgoing[v][0]].1;
        let extra: Vec<usize> = incoming[v].split_off(2);
        for chunk in extra.chunks(2) {
            let c = labels.len();
            labels.push(labels[v].clone());
            anns.push(anns[v]);
            for &e in chunk {
                edges[e].1 = c;
            }
            incoming.push(chunk.to_vec());
            edges.push((c, succ));
            outgoing.push(vec![edges.len() - 1]);
            incoming[succ].push(edges.len() - 1);
        }
        work.push(succ);
    }

    let mut out = LabeledGraph::new(g.alphabet(), true);
    for (label, ann) in labels.into_iter().zip(anns) {
        let id = out.add_node(label);
        out.set_annotation(id, ann);
    }
    for (u, v) in edges {
        out.add_edge(NodeId(u), NodeId(v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{degree_stats, is_acyclic, is_deterministic, validate_graph};
    use crate::ov::OvInstance;
    use crate::reductions::{assemble_undirected, build_deterministic_dag, orient_to_dag};

    #[test]
    fn codes() {
        let p = Pattern::new(Alphabet::Base4, "b01e").unwrap();
        assert_eq!(encode_pattern(&p).as_str(), "0110000011110110");
    }

    #[test]
    fn encoded_structure() {
        let inst =
            OvInstance::from_strs(&["1010", "0111", "1100"], &["0110", "1011", "0101"]).unwrap();
        let dag = orient_to_dag(&assemble_undirected(&inst)).unwrap();
        let det = build_deterministic_dag(&inst).unwrap();
        for a in [dag, det] {
            let enc = encode_binary(&a).unwrap();
            assert!(validate_graph(&enc.graph).is_empty());
            assert!(enc.graph.labels().iter().all(|l| l.len() == 1));
            assert_eq!(is_acyclic(&enc.graph), Ok(true));
        }
        let enc = encode_binary(&build_deterministic_dag(&inst).unwrap()).unwrap();
        assert_eq!(is_deterministic(&enc.graph), Ok(true));
        assert!(degree_stats(&enc.graph).max_in_plus_out <= 3);
    }
}
