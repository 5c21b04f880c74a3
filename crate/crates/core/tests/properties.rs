use std::collections::BTreeSet;

use proptest::prelude::*;

use pmlg_core::{
    assemble_zigzag, degree_stats, expand_labels, match_exists, oracle_match_exists, read_graph,
    solve_ov_bruteforce, write_graph, Alphabet, BinaryVector, LabeledGraph, NodeId, OvInstance,
    Pattern,
};

fn graph_strategy(max_nodes: usize) -> impl Strategy<Value = LabeledGraph> {
    (
        any::<bool>(),
        prop::collection::vec("[be01]{1,3}", 1..=max_nodes),
    )
        .prop_flat_map(|(directed, labels)| {
            let n = labels.len();
            prop::collection::vec((0..n, 0..n), 0..=2 * n).prop_map(move |pairs| {
                let mut g = LabeledGraph::new(Alphabet::Base4, directed);
                for l in &labels {
                    g.add_node(l.clone());
                }
                let mut seen = BTreeSet::new();
                for (u, v) in pairs {
                    let key = if directed || u <= v { (u, v) } else { (v, u) };
                    if seen.insert(key) {
                        g.add_edge(NodeId(u), NodeId(v));
                    }
                }
                g
            })
        })
}

fn pattern_strategy() -> impl Strategy<Value = Pattern> {
    "[be01]{1,7}".prop_map(|s| Pattern::new(Alphabet::Base4, &s).unwrap())
}

fn directed(g: &LabeledGraph) -> LabeledGraph {
    let mut edges = g.edges().to_vec();
    if !g.is_directed() {
        edges.extend(
            g.edges()
                .iter()
                .filter(|(u, v)| u != v)
                .map(|&(u, v)| (v, u)),
        );
    }
    g.with_direction(true, edges)
}

/// Undirected simple path, checked by walking from a leaf.
fn walk_is_path(g: &LabeledGraph) -> bool {
    let n = g.node_count();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        if u == v {
            return false;
        }
        adj[u.0].push(v.0);
        adj[v.0].push(u.0);
    }
    if n == 1 {
        return g.edge_count() == 0;
    }
    let Some(start) = (0..n).find(|&u| adj[u].len() == 1) else {
        return false;
    };
    let (mut prev, mut cur, mut seen) = (usize::MAX, start, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
        match next.as_slice() {
            [] => return seen == n && g.edge_count() == n - 1,
            [w] => {
                prev = cur;
                cur = *w;
                seen += 1;
                if seen > n {
                    return false;
                }
            }
            _ => return false,
        }
    }
}

proptest! {
    #[test]
    fn engine_agrees_with_oracle(g in graph_strategy(5), p in pattern_strategy()) {
        prop_assert_eq!(match_exists(&g, &p).unwrap(), oracle_match_exists(&g, &p).unwrap());
    }

    #[test]
    fn prefixes_of_matches_match(g in graph_strategy(5), p in pattern_strategy()) {
        if match_exists(&g, &p).unwrap() {
            for k in 1..p.len() {
                prop_assert!(match_exists(&g, &p.prefix(k)).unwrap());
            }
        }
    }

    #[test]
    fn expansion_preserves_directed_matches(g in graph_strategy(5), p in pattern_strategy()) {
        let g = directed(&g);
        prop_assert_eq!(match_exists(&g, &p).unwrap(), match_exists(&expand_labels(&g).graph, &p).unwrap());
    }

    #[test]
    fn undirected_equals_both_orientations(g in graph_strategy(5), p in pattern_strategy()) {
        prop_assert_eq!(match_exists(&g, &p).unwrap(), match_exists(&directed(&g), &p).unwrap());
    }

    #[test]
    fn reversal(g in graph_strategy(5), p in pattern_strategy()) {
        let g = directed(&g);
        let mut r = LabeledGraph::new(Alphabet::Base4, true);
        for u in g.nodes() {
            r.add_node(g.label(u).chars().rev().collect::<String>());
        }
        for &(u, v) in g.edges() {
            r.add_edge(v, u);
        }
        prop_assert_eq!(match_exists(&g, &p).unwrap(), match_exists(&r, &p.reversed()).unwrap());
    }

    #[test]
    fn graph_file_round_trip(g in graph_strategy(6)) {
        let text = write_graph(&g);
        let back = read_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_graph(&back), text);
    }

    #[test]
    fn simple_path_characterization(g in graph_strategy(6)) {
        let mut u = LabeledGraph::new(Alphabet::Base4, false);
        for l in g.labels() {
            u.add_node(l.clone());
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in g.edges() {
            let key = (a.min(b), a.max(b));
            if seen.insert(key) {
                u.add_edge(key.0, key.1);
            }
        }
        prop_assert_eq!(degree_stats(&u).is_simple_path, walk_is_path(&u));
    }

    #[test]
    fn zigzag_with_dummies(bits in prop::collection::vec(prop::collection::vec(any::<bool>(), 3), 2..=6)) {
        let half = bits.len() / 2;
        let vecs: Vec<BinaryVector> = bits.into_iter().map(|b| BinaryVector::new(b).unwrap()).collect();
        let inst = OvInstance::new(vecs[..half].to_vec(), vecs[half..2 * half].to_vec()).unwrap();
        let art = assemble_zigzag(&inst);
        let found = art.patterns.iter().any(|p| match_exists(&art.graph, p).unwrap());
        prop_assert_eq!(found, solve_ov_bruteforce(&inst).is_some());
    }
}
