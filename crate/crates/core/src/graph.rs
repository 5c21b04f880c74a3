//! Node-labeled graphs, structural checks and label expansion.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::alphabet::Alphabet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which gadget a node was built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gadget {
    GW,
    GU1,
    GU2,
    GWU,
    LGW,
    LGU,
    Pendant,
}

impl Gadget {
    pub fn as_str(self) -> &'static str {
        match self {
            Gadget::GW => "GW",
            Gadget::GU1 => "GU1",
            Gadget::GU2 => "GU2",
            Gadget::GWU => "GWU",
            Gadget::LGW => "LGW",
            Gadget::LGU => "LGU",
            Gadget::Pendant => "pendant",
        }
    }
}

impl FromStr for Gadget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "GW" => Gadget::GW,
            "GU1" => Gadget::GU1,
            "GU2" => Gadget::GU2,
            "GWU" => Gadget::GWU,
            "LGW" => Gadget::LGW,
            "LGU" => Gadget::LGU,
            "pendant" => Gadget::Pendant,
            other => return Err(format!("unknown gadget '{other}'")),
        })
    }
}

/// Role of a node inside its gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    B,
    E,
    Zero,
    One,
    X,
    Y,
    A,
    /// The `B` symbol of the zig-zag alphabet (distinct from the begin marker).
    Bc,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::B => "B",
            Kind::E => "E",
            Kind::Zero => "zero-node",
            Kind::One => "one-node",
            Kind::X => "X",
            Kind::Y => "Y",
            Kind::A => "A",
            Kind::Bc => "Bc",
        }
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "B" => Kind::B,
            "E" => Kind::E,
            "zero-node" => Kind::Zero,
            "one-node" => Kind::One,
            "X" => Kind::X,
            "Y" => Kind::Y,
            "A" => Kind::A,
            "Bc" => Kind::Bc,
            other => return Err(format!("unknown node kind '{other}'")),
        })
    }
}

/// Gadget coordinates of a node. `j` and `h` are 1-based; 0 means "not applicable".
///
/// Annotations are metadata only. The matcher never reads them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Annotation {
    pub gadget: Gadget,
    pub j: usize,
    pub h: usize,
    pub kind: Kind,
}

impl Annotation {
    pub fn new(gadget: Gadget, j: usize, h: usize, kind: Kind) -> Self {
        Annotation { gadget, j, h, kind }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("{op} requires a directed graph")]
    NotDirected { op: &'static str },
}

/// A graph whose nodes carry nonempty strings over one [`Alphabet`].
///
/// Undirected edges are stored once, with the smaller endpoint first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    directed: bool,
    labels: Vec<String>,
    edges: Vec<(NodeId, NodeId)>,
    annotations: Vec<Option<Annotation>>,
}

impl LabeledGraph {
    pub fn new(alphabet: Alphabet, directed: bool) -> Self {
        LabeledGraph {
            alphabet,
            directed,
            labels: Vec::new(),
            edges: Vec::new(),
            annotations: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.labels.len()).map(NodeId)
    }

    pub fn label(&self, u: NodeId) -> &str {
        &self.labels[u.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn annotation(&self, u: NodeId) -> Option<Annotation> {
        self.annotations[u.0]
    }

    pub fn annotations(&self) -> &[Option<Annotation>] {
        &self.annotations
    }

    /// Sum of label lengths.
    pub fn total_label_length(&self) -> usize {
        self.labels.iter().map(String::len).sum()
    }

    pub fn add_node(&mut self, label: impl Into<String>) -> NodeId {
        self.labels.push(label.into());
        self.annotations.push(None);
        NodeId(self.labels.len() - 1)
    }

    pub fn add_annotated_node(&mut self, label: impl Into<String>, ann: Annotation) -> NodeId {
        let id = self.add_node(label);
        self.annotations[id.0] = Some(ann);
        id
    }

    pub fn set_annotation(&mut self, u: NodeId, ann: Option<Annotation>) {
        self.annotations[u.0] = ann;
    }

    /// Adds an edge. Undirected edges are canonicalized to `(min, max)`.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) {
        if self.directed || u <= v {
            self.edges.push((u, v));
        } else {
            self.edges.push((v, u));
        }
    }

    /// Appends an edge exactly as given; used by the reader so that
    /// non-canonical input is reported by [`validate_graph`] instead of being
    /// silently rewritten.
    pub(crate) fn push_edge_raw(&mut self, u: NodeId, v: NodeId) {
        self.edges.push((u, v));
    }

    /// Same nodes, labels and annotations, with every edge reinterpreted
    /// under the other direction semantics.
    pub fn with_direction(&self, directed: bool, edges: Vec<(NodeId, NodeId)>) -> LabeledGraph {
        let mut g = LabeledGraph {
            alphabet: self.alphabet,
            directed,
            labels: self.labels.clone(),
            edges: Vec::with_capacity(edges.len()),
            annotations: self.annotations.clone(),
        };
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Successor lists in CSR form. Undirected edges appear in both directions.
    pub fn out_adjacency(&self) -> Adjacency {
        let n = self.node_count();
        let mut degree = vec![0usize; n + 1];
        for &(u, v) in &self.edges {
            degree[u.0] += 1;
            if !self.directed && u != v {
                degree[v.0] += 1;
            }
        }
        Adjacency::build(
            n,
            degree,
            self.edges.iter().flat_map(|&(u, v)| {
                let back = (!self.directed && u != v).then_some((v, u));
                std::iter::once((u, v)).chain(back)
            }),
        )
    }

    /// Predecessor lists in CSR form. Equal to [`Self::out_adjacency`] for undirected graphs.
    pub fn in_adjacency(&self) -> Adjacency {
        if !self.directed {
            return self.out_adjacency();
        }
        let n = self.node_count();
        let mut degree = vec![0usize; n + 1];
        for &(_, v) in &self.edges {
            degree[v.0] += 1;
        }
        Adjacency::build(n, degree, self.edges.iter().map(|&(u, v)| (v, u)))
    }
}

/// Compressed adjacency lists; neighbors of each node keep edge insertion order.
#[derive(Debug, Clone)]
pub struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Adjacency {
    fn build(
        n: usize,
        mut degree: Vec<usize>,
        arcs: impl Iterator<Item = (NodeId, NodeId)>,
    ) -> Adjacency {
        // exclusive prefix sums
        let mut acc = 0;
        for d in degree.iter_mut() {
            let here = *d;
            *d = acc;
            acc += here;
        }
        let offsets = degree;
        let mut fill = offsets.clone();
        let mut targets = vec![NodeId(0); acc];
        for (u, v) in arcs {
            targets[fill[u.0]] = v;
            fill[u.0] += 1;
        }
        debug_assert_eq!(fill[..n], offsets[1..]);
        Adjacency { offsets, targets }
    }

    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[u.0]..self.offsets[u.0 + 1]]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.offsets[u.0 + 1] - self.offsets[u.0]
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }
}

/// A broken [`LabeledGraph`] invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyLabel { node: NodeId },
    ForeignSymbol { node: NodeId, symbol: char },
    EndpointOutOfRange { edge: usize, endpoint: usize },
    DuplicateEdge { edge: usize, u: NodeId, v: NodeId },
    NonCanonicalEdge { edge: usize, u: NodeId, v: NodeId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyLabel { node } => write!(f, "empty label at node {node}"),
            Violation::ForeignSymbol { node, symbol } => {
                write!(f, "symbol '{symbol}' at node {node} is not in the alphabet")
            }
            Violation::EndpointOutOfRange { edge, endpoint } => {
                write!(f, "edge {edge} endpoint {endpoint} out of range")
            }
            Violation::DuplicateEdge { edge, u, v } => write!(f, "duplicate edge {edge} ({u},{v})"),
            Violation::NonCanonicalEdge { edge, u, v } => {
                write!(
                    f,
                    "undirected edge {edge} ({u},{v}) not stored as (min,max)"
                )
            }
        }
    }
}

/// Every invariant violation of `g`; empty when `g` is valid.
pub fn validate_graph(g: &LabeledGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    for u in g.nodes() {
        let label = g.label(u);
        if label.is_empty() {
            out.push(Violation::EmptyLabel { node: u });
        } else if let Some(c) = g.alphabet().first_foreign(label.as_bytes()) {
            out.push(Violation::ForeignSymbol {
                node: u,
                symbol: c as char,
            });
        }
    }
    let n = g.node_count();
    let mut seen = HashSet::new();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let mut in_range = true;
        for w in [u, v] {
            if w.0 >= n {
                out.push(Violation::EndpointOutOfRange {
                    edge: i,
                    endpoint: w.0,
                });
                in_range = false;
            }
        }
        if !in_range {
            continue;
        }
        if !g.is_directed() && u > v {
            out.push(Violation::NonCanonicalEdge { edge: i, u, v });
        }
        let key = if g.is_directed() {
            (u, v)
        } else {
            (u.min(v), u.max(v))
        };
        if !seen.insert(key) {
            out.push(Violation::DuplicateEdge { edge: i, u, v });
        }
    }
    out
}

/// True iff the out-neighbors of every node start with pairwise distinct symbols.
pub fn is_deterministic(g: &LabeledGraph) -> Result<bool, GraphError> {
    if !g.is_directed() {
        return Err(GraphError::NotDirected {
            op: "is_deterministic",
        });
    }
    let adj = g.out_adjacency();
    let mut seen = [false; 256];
    for u in g.nodes() {
        let nbrs = adj.neighbors(u);
        for &v in nbrs {
            let c = g.label(v).as_bytes().first().copied().unwrap_or(0) as usize;
            if seen[c] {
                return Ok(false);
            }
            seen[c] = true;
        }
        for &v in nbrs {
            seen[g.label(v).as_bytes().first().copied().unwrap_or(0) as usize] = false;
        }
    }
    Ok(true)
}

/// True iff the directed graph has no cycle (Kahn's algorithm).
pub fn is_acyclic(g: &LabeledGraph) -> Result<bool, GraphError> {
    if !g.is_directed() {
        return Err(GraphError::NotDirected { op: "is_acyclic" });
    }
    let adj = g.out_adjacency();
    let mut indeg = vec![0usize; g.node_count()];
    for &(_, v) in g.edges() {
        indeg[v.0] += 1;
    }
    let mut queue: VecDeque<NodeId> = g.nodes().filter(|u| indeg[u.0] == 0).collect();
    let mut removed = 0;
    while let Some(u) = queue.pop_front() {
        removed += 1;
        for &v in adj.neighbors(u) {
            indeg[v.0] -= 1;
            if indeg[v.0] == 0 {
                queue.push_back(v);
            }
        }
    }
    Ok(removed == g.node_count())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeStats {
    /// Maximum degree in the underlying undirected simple graph (a self-loop counts twice).
    pub max_undirected_degree: usize,
    /// Maximum of indegree + outdegree; the plain degree for undirected graphs.
    pub max_in_plus_out: usize,
    pub is_simple_path: bool,
    pub node_count: usize,
    pub edge_count: usize,
}

pub fn degree_stats(g: &LabeledGraph) -> DegreeStats {
    let n = g.node_count();
    let mut in_plus_out = vec![0usize; n];
    for &(u, v) in g.edges() {
        in_plus_out[u.0] += 1;
        in_plus_out[v.0] += 1;
    }

    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    let mut has_loop = false;
    for &(u, v) in g.edges() {
        if u == v {
            has_loop = true;
        }
        pairs.insert((u.0.min(v.0), u.0.max(v.0)));
    }
    let mut simple_degree = vec![0usize; n];
    let mut simple_adj = vec![Vec::new(); n];
    for &(a, b) in &pairs {
        simple_degree[a] += 1;
        simple_degree[b] += 1;
        if a != b {
            simple_adj[a].push(b);
            simple_adj[b].push(a);
        }
    }

    let is_simple_path = if n == 0 || has_loop || pairs.len() != n - 1 {
        false
    } else if n == 1 {
        true
    } else {
        let leaves = simple_degree.iter().filter(|&&d| d == 1).count();
        let max = simple_degree.iter().copied().max().unwrap_or(0);
        leaves == 2 && max <= 2 && connected(&simple_adj)
    };

    DegreeStats {
        max_undirected_degree: simple_degree.into_iter().max().unwrap_or(0),
        max_in_plus_out: in_plus_out.into_iter().max().unwrap_or(0),
        is_simple_path,
        node_count: n,
        edge_count: g.edge_count(),
    }
}

fn connected(adj: &[Vec<usize>]) -> bool {
    if adj.is_empty() {
        return true;
    }
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == adj.len()
}

/// Result of [`expand_labels`].
#[derive(Debug, Clone)]
pub struct Expansion {
    pub graph: LabeledGraph,
    /// For each original node, its chain of single-symbol nodes, head first.
    pub node_map: Vec<Vec<NodeId>>,
}

/// Replaces every node by a chain of single-symbol nodes.
///
/// Each original edge `(u, v)` becomes `(tail(u), head(v))`. Annotations are
/// copied to every node of the chain.
///
/// Match existence is preserved for directed graphs. In an undirected graph a
/// walk may turn around inside a chain, which it cannot do inside a label.
pub fn expand_labels(g: &LabeledGraph) -> Expansion {
    expand_with_edges(g, g.is_directed(), g.edges())
}

pub(crate) fn expand_with_edges(
    g: &LabeledGraph,
    directed: bool,
    edges: &[(NodeId, NodeId)],
) -> Expansion {
    let mut out = LabeledGraph::new(g.alphabet(), directed);
    let mut node_map = Vec::with_capacity(g.node_count());
    for u in g.nodes() {
        let ann = g.annotation(u);
        let chain: Vec<NodeId> = g
            .label(u)
            .chars()
            .map(|c| {
                let id = out.add_node(c.to_string());
                out.set_annotation(id, ann);
                id
            })
            .collect();
        for w in chain.windows(2) {
            out.add_edge(w[0], w[1]);
        }
        node_map.push(chain);
    }
    for &(u, v) in edges {
        let tail = *node_map[u.0].last().expect("empty label");
        let head = node_map[v.0][0];
        out.add_edge(tail, head);
    }
    Expansion {
        graph: out,
        node_map,
    }
}
