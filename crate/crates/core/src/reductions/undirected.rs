use crate::alphabet::Alphabet;
use crate::graph::{Annotation, Gadget, Kind, LabeledGraph, NodeId};
use crate::matcher::Pattern;
use crate::ov::{BinaryVector, OvInstance};

use super::{
    connect_all, level_nodes, node, ArtifactMeta, Fragment, Group, ReductionArtifact,
    ReductionError, Variant,
};

/// `bb P(x_1) e b P(x_2) e ... b P(x_n) ee`, where `P(x)` spells the bits of `x`.
pub fn build_pattern(xs: &[BinaryVector]) -> Pattern {
    let mut s = String::from("b");
    for x in xs {
        s.push('b');
        s.push_str(&x.to_string());
        s.push('e');
    }
    s.push('e');
    Pattern::new(Alphabet::Base4, &s).expect("pattern uses base4 symbols")
}

/// Adds one vector gadget: a zero-node at every level, a one-node where `y` is 0.
pub(super) fn add_gw_group(
    g: &mut LabeledGraph,
    gadget: Gadget,
    j: usize,
    y: &BinaryVector,
) -> Group {
    let b = node(g, "b", Annotation::new(gadget, j, 0, Kind::B));
    let levels: Vec<_> = (0..y.dim())
        .map(|h| {
            let zero = node(g, "0", Annotation::new(gadget, j, h + 1, Kind::Zero));
            let one =
                (!y.get(h)).then(|| node(g, "1", Annotation::new(gadget, j, h + 1, Kind::One)));
            (zero, one)
        })
        .collect();
    let e = node(g, "e", Annotation::new(gadget, j, 0, Kind::E));
    wire_levels(g, Some(b), &levels, e);
    Group {
        b: Some(b),
        levels,
        e,
    }
}

/// Adds one jolly gadget, which accepts every binary string of length `d`.
pub(super) fn add_gu_gadget(g: &mut LabeledGraph, gadget: Gadget, j: usize, d: usize) -> Group {
    add_gw_group(g, gadget, j, &BinaryVector::zeros(d))
}

pub(super) fn wire_levels(
    g: &mut LabeledGraph,
    b: Option<NodeId>,
    levels: &[(NodeId, Option<NodeId>)],
    e: NodeId,
) {
    if let (Some(b), Some(&first)) = (b, levels.first()) {
        connect_all(g, &[b], &level_nodes(first).collect::<Vec<_>>());
    }
    for w in levels.windows(2) {
        let from: Vec<_> = level_nodes(w[0]).collect();
        let to: Vec<_> = level_nodes(w[1]).collect();
        connect_all(g, &from, &to);
    }
    if let Some(&last) = levels.last() {
        connect_all(g, &level_nodes(last).collect::<Vec<_>>(), &[e]);
    }
}

fn pendant(g: &mut LabeledGraph, j: usize, kind: Kind) -> NodeId {
    let label = if kind == Kind::B { "b" } else { "e" };
    node(g, label, Annotation::new(Gadget::Pendant, j, 0, kind))
}

/// The chained vector gadgets `G_W^(1) ... G_W^(n)`, joined end to begin.
pub fn build_gw(ys: &[BinaryVector]) -> Fragment {
    let mut g = LabeledGraph::new(Alphabet::Base4, false);
    let groups: Vec<Group> = ys
        .iter()
        .enumerate()
        .map(|(j, y)| add_gw_group(&mut g, Gadget::GW, j + 1, y))
        .collect();
    chain_groups(&mut g, &groups);
    fragment(g, &groups)
}

/// `count` chained jolly gadgets of dimension `d`.
pub fn build_gu(count: usize, d: usize) -> Fragment {
    let mut g = LabeledGraph::new(Alphabet::Base4, false);
    let groups: Vec<Group> = (1..=count)
        .map(|j| add_gu_gadget(&mut g, Gadget::GU1, j, d))
        .collect();
    chain_groups(&mut g, &groups);
    fragment(g, &groups)
}

fn chain_groups(g: &mut LabeledGraph, groups: &[Group]) {
    for w in groups.windows(2) {
        g.add_edge(w[0].e, w[1].b.expect("gadget has a b-node"));
    }
}

fn fragment(graph: LabeledGraph, groups: &[Group]) -> Fragment {
    Fragment {
        graph,
        b_ports: groups.iter().filter_map(|gr| gr.b).collect(),
        e_ports: groups.iter().map(|gr| gr.e).collect(),
    }
}

/// Undirected graph `G` for `inst`: the jolly row `G_U1`, the vector row
/// `G_W` and the jolly row `G_U2`, with pendant markers on the ports.
pub fn assemble_undirected(inst: &OvInstance) -> ReductionArtifact {
    let (n, d) = (inst.n(), inst.d());
    let rows = 2 * n - 2;
    let mut g = LabeledGraph::new(Alphabet::Base4, false);

    let mut u1 = Vec::with_capacity(rows);
    for j in 1..=rows {
        let p = pendant(&mut g, j, Kind::B);
        let gr = add_gu_gadget(&mut g, Gadget::GU1, j, d);
        g.add_edge(p, gr.b.unwrap());
        if let Some(prev) = u1.last() {
            let prev: &Group = prev;
            g.add_edge(prev.e, gr.b.unwrap());
        }
        u1.push(gr);
    }

    let mut w: Vec<Group> = Vec::with_capacity(n);
    for (idx, y) in inst.y().iter().enumerate() {
        let j = idx + 1;
        let pb = pendant(&mut g, j, Kind::B);
        let gr = add_gw_group(&mut g, Gadget::GW, j, y);
        let pe = pendant(&mut g, j, Kind::E);
        let b = gr.b.unwrap();
        g.add_edge(pb, b);
        g.add_edge(gr.e, pe);
        if let Some(prev) = w.last() {
            g.add_edge(prev.e, b);
        }
        if n >= 2 {
            g.add_edge(u1[n - 2 + idx].e, b);
        }
        w.push(gr);
    }

    let mut u2: Vec<Group> = Vec::with_capacity(rows);
    for j in 1..=rows {
        let gr = add_gu_gadget(&mut g, Gadget::GU2, j, d);
        let pe = pendant(&mut g, j, Kind::E);
        g.add_edge(gr.e, pe);
        let b = gr.b.unwrap();
        if let Some(prev) = u2.last() {
            g.add_edge(prev.e, b);
        }
        if j <= n {
            g.add_edge(w[j - 1].e, b);
        }
        u2.push(gr);
    }

    assert!(
        g.edge_count() <= 24 * n * (d + 2),
        "edge bound exceeded: {}",
        g.edge_count()
    );
    ReductionArtifact {
        variant: Variant::Undirected,
        graph: g,
        patterns: vec![build_pattern(inst.x())],
        meta: ArtifactMeta {
            n,
            d,
            binary_encoded: false,
            padded: false,
        },
    }
}

/// Left-to-right rank of a node; `None` for begin ports, which are special-cased.
fn rank(a: Annotation) -> Option<usize> {
    match (a.gadget, a.kind) {
        (Gadget::Pendant, Kind::B) => Some(0),
        (Gadget::Pendant, Kind::E) => Some(usize::MAX),
        (_, Kind::B) => Some(1),
        (_, Kind::Zero | Kind::One) => Some(1 + a.h),
        (_, Kind::E) => Some(usize::MAX - 1),
        _ => None,
    }
}

fn is_port(a: Annotation, kind: Kind) -> bool {
    a.gadget != Gadget::Pendant && a.kind == kind
}

/// Orientation of every edge of an undirected four-symbol gadget graph,
/// derived from the node annotations.
pub fn oriented_edges(g: &LabeledGraph) -> Result<Vec<(NodeId, NodeId)>, ReductionError> {
    g.edges()
        .iter()
        .map(|&(u, v)| {
            let bad = ReductionError::Unorientable { u, v };
            let (Some(a), Some(b)) = (g.annotation(u), g.annotation(v)) else {
                return Err(bad);
            };
            if is_port(a, Kind::E) && is_port(b, Kind::B) {
                return Ok((u, v));
            }
            if is_port(a, Kind::B) && is_port(b, Kind::E) {
                return Ok((v, u));
            }
            match (rank(a), rank(b)) {
                (Some(ra), Some(rb)) if ra < rb => Ok((u, v)),
                (Some(ra), Some(rb)) if ra > rb => Ok((v, u)),
                _ => Err(bad),
            }
        })
        .collect()
}

/// The directed counterpart of [`assemble_undirected`]: same nodes, every edge oriented forward.
pub fn orient_to_dag(art: &ReductionArtifact) -> Result<ReductionArtifact, ReductionError> {
    if art.variant != Variant::Undirected {
        return Err(ReductionError::WrongVariant {
            expected: "undirected",
            found: art.variant,
        });
    }
    if art.meta.binary_encoded {
        return Err(ReductionError::WrongAlphabet {
            expected: "base4",
            found: art.graph.alphabet(),
        });
    }
    let edges = oriented_edges(&art.graph)?;
    Ok(ReductionArtifact {
        variant: Variant::Dag,
        graph: art.graph.with_direction(true, edges),
        patterns: art.patterns.clone(),
        meta: art.meta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_acyclic, validate_graph};

    fn inst(x: &[&str], y: &[&str]) -> OvInstance {
        OvInstance::from_strs(x, y).unwrap()
    }

    #[test]
    fn pattern_layout() {
        let p = build_pattern(inst(&["10", "01"], &["11", "11"]).x());
        assert_eq!(p.as_str(), "bb10eb01ee");
        assert_eq!(p.len(), 2 * (2 + 2) + 2);
    }

    #[test]
    fn gadget_sizes() {
        let y = BinaryVector::from_str01("0110").unwrap();
        let f = build_gw(std::slice::from_ref(&y));
        assert_eq!(f.graph.node_count(), 2 + 4 + 2);
        let u = build_gu(3, 4);
        assert_eq!(u.graph.node_count(), 3 * (2 * 4 + 2));
        assert_eq!(u.b_ports.len(), 3);
        assert!(validate_graph(&u.graph).is_empty());
    }

    #[test]
    fn jolly_row_size() {
        for n in 1..5 {
            for d in 1..5 {
                let f = build_gu(2 * n - 2, d);
                assert_eq!(f.graph.node_count(), (2 * n - 2) * (2 * d + 2));
            }
        }
    }

    #[test]
    fn orientation_is_acyclic_and_total() {
        let a = assemble_undirected(&inst(&["101", "010", "111"], &["011", "100", "000"]));
        assert!(validate_graph(&a.graph).is_empty());
        let dag = orient_to_dag(&a).unwrap();
        assert_eq!(dag.graph.edge_count(), a.graph.edge_count());
        assert_eq!(is_acyclic(&dag.graph), Ok(true));
        assert!(orient_to_dag(&dag).is_err());
    }
}
