use crate::alphabet::Alphabet;
use crate::graph::{Annotation, Gadget, Kind, LabeledGraph, NodeId};
use crate::ov::OvInstance;

use super::undirected::{add_gu_gadget, add_gw_group, build_pattern, wire_levels};
use super::{
    connect_all, level_nodes, node, ArtifactMeta, Group, ReductionArtifact, ReductionError, Variant,
};

/// Deterministic DAG `G'` for `inst`.
///
/// The second half of the upper jolly row is fused into the vector gadgets:
/// for `j < n`, the one-node of `G_W^(j)` at its first 1-coordinate `h` is
/// re-inserted, and a partial jolly copy covering levels `h+1..d` takes over
/// the transition to `G_W^(j+1)`. Every node then has distinct first symbols
/// among its successors.
///
/// Instances with an all-zero `y_j` are rejected, since they have no such `h`
/// and are trivially orthogonal anyway.
pub fn build_deterministic_dag(inst: &OvInstance) -> Result<ReductionArtifact, ReductionError> {
    if let Some(j) = inst.y().iter().position(|y| y.is_zero()) {
        return Err(ReductionError::TriviallyOrthogonal { j: j + 1 });
    }
    let (n, d) = (inst.n(), inst.d());
    let mut g = LabeledGraph::new(Alphabet::Base4, true);

    let mut u1: Vec<Group> = Vec::new();
    for j in 1..n {
        let p = node(&mut g, "b", Annotation::new(Gadget::Pendant, j, 0, Kind::B));
        let gr = add_gu_gadget(&mut g, Gadget::GU1, j, d);
        let b = gr.b.unwrap();
        g.add_edge(p, b);
        if let Some(prev) = u1.last() {
            g.add_edge(prev.e, b);
        }
        u1.push(gr);
    }

    let mut w: Vec<Group> = Vec::with_capacity(n);
    // end node of the partial copy that leads into the next vector gadget
    let mut bridge: Option<NodeId> = u1.last().map(|gr| gr.e);
    for (idx, y) in inst.y().iter().enumerate() {
        let j = idx + 1;
        let pb = node(&mut g, "b", Annotation::new(Gadget::Pendant, j, 0, Kind::B));
        let gr = add_gw_group(&mut g, Gadget::GW, j, y);
        let pe = node(&mut g, "e", Annotation::new(Gadget::Pendant, j, 0, Kind::E));
        let b = gr.b.unwrap();
        g.add_edge(pb, b);
        g.add_edge(gr.e, pe);
        if let Some(e) = bridge.take() {
            g.add_edge(e, b);
        }
        if j < n {
            bridge = Some(add_partial_copy(&mut g, j, &gr, y.bits()));
        }
        w.push(gr);
    }

    let rows = 2 * n - 2;
    let mut u2: Vec<Group> = Vec::with_capacity(rows);
    for j in 1..=rows {
        let gr = add_gu_gadget(&mut g, Gadget::GU2, j, d);
        let pe = node(&mut g, "e", Annotation::new(Gadget::Pendant, j, 0, Kind::E));
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

    Ok(ReductionArtifact {
        variant: Variant::DetDag,
        graph: g,
        patterns: vec![build_pattern(inst.x())],
        meta: ArtifactMeta {
            n,
            d,
            binary_encoded: false,
            padded: false,
        },
    })
}

/// Inserts the one-node at the first 1-coordinate of `y` and the partial jolly
/// copy hanging off it. Returns the copy's end node.
fn add_partial_copy(g: &mut LabeledGraph, j: usize, gw: &Group, y: &[bool]) -> NodeId {
    let d = y.len();
    let h = y.iter().position(|&bit| bit).expect("y_j is nonzero");
    let ann = |h: usize, kind| Annotation::new(Gadget::GWU, j, h, kind);

    let v1 = node(g, "1", ann(h + 1, Kind::One));
    let sources: Vec<NodeId> = match h {
        0 => vec![gw.b.unwrap()],
        _ => level_nodes(gw.levels[h - 1]).collect(),
    };
    connect_all(g, &sources, &[v1]);

    let levels: Vec<(NodeId, Option<NodeId>)> = (h + 1..d)
        .map(|k| {
            (
                node(g, "0", ann(k + 1, Kind::Zero)),
                Some(node(g, "1", ann(k + 1, Kind::One))),
            )
        })
        .collect();
    let e = node(g, "e", ann(0, Kind::E));
    match levels.first() {
        Some(&first) => connect_all(g, &[v1], &level_nodes(first).collect::<Vec<_>>()),
        None => g.add_edge(v1, e),
    }
    wire_levels(g, None, &levels, e);

    // Walks of G_W^(j) that hit a later missing one-node continue in the copy.
    for k in h + 1..d {
        if y[k] {
            let prev = gw.levels[k - 1];
            let target = levels[k - h - 1].1.unwrap();
            connect_all(g, &level_nodes(prev).collect::<Vec<_>>(), &[target]);
        }
    }
    e
}
