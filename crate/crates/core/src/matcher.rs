//! Exact pattern matching in labeled graphs.
//!
//! A match is a walk `u1 … uj` (nodes may repeat, undirected edges may be
//! used in either direction) together with a start offset `l` in `L(u1)` and
//! an end offset `l'` in `L(uj)` such that `L(u1)[l:] · L(u2) ⋯ L(uj)[:l']`
//! spells the pattern. Labels are always read left to right.
//!
//! The engine works on the position graph: one vertex per label character,
//! an arc from each character to the next one in its label, and an arc from
//! the last character of `u` to the first character of every successor of
//! `u`. It sweeps the pattern once, keeping the set of positions that end a
//! walk spelling the current prefix, for `O(N + m·|E'|)` total work.

use std::fmt;

use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::graph::{Adjacency, LabeledGraph, NodeId};

/// Largest `total label length × pattern length` accepted by [`oracle_match_exists`].
pub const ORACLE_STATE_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchError {
    #[error("alphabet mismatch: graph uses {graph}, pattern uses {pattern}")]
    AlphabetMismatch { graph: Alphabet, pattern: Alphabet },
    #[error("pattern must be nonempty")]
    EmptyPattern,
    #[error("symbol '{symbol}' is not in alphabet {alphabet}")]
    ForeignSymbol { symbol: char, alphabet: Alphabet },
    #[error("oracle state budget exceeded: {states} > {budget}")]
    BudgetExceeded { states: usize, budget: usize },
    #[error("start anchor {node}:{offset} is not a position of the graph")]
    BadAnchor { node: NodeId, offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    alphabet: Alphabet,
    symbols: Vec<u8>,
}

impl Pattern {
    pub fn new(alphabet: Alphabet, text: &str) -> Result<Pattern, MatchError> {
        Pattern::from_bytes(alphabet, text.as_bytes().to_vec())
    }

    pub fn from_bytes(alphabet: Alphabet, symbols: Vec<u8>) -> Result<Pattern, MatchError> {
        if symbols.is_empty() {
            return Err(MatchError::EmptyPattern);
        }
        if let Some(c) = alphabet.first_foreign(&symbols) {
            return Err(MatchError::ForeignSymbol {
                symbol: c as char,
                alphabet,
            });
        }
        Ok(Pattern { alphabet, symbols })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.symbols).expect("alphabets are ASCII")
    }

    /// The first `k` symbols.
    pub fn prefix(&self, k: usize) -> Pattern {
        Pattern {
            alphabet: self.alphabet,
            symbols: self.symbols[..k].to_vec(),
        }
    }

    pub fn reversed(&self) -> Pattern {
        Pattern {
            alphabet: self.alphabet,
            symbols: self.symbols.iter().rev().copied().collect(),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One occurrence: anchors plus a witness walk. Offsets are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchOccurrence {
    pub start: NodeId,
    pub start_offset: usize,
    pub end: NodeId,
    pub end_offset: usize,
    pub witness: Vec<NodeId>,
}

impl fmt::Display for MatchOccurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "start={}:{} end={}:{} witness=",
            self.start, self.start_offset, self.end, self.end_offset
        )?;
        for (i, u) in self.witness.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}")?;
        }
        Ok(())
    }
}

struct PositionGraph {
    /// `first[u]..first[u+1]` are the positions of node `u`.
    first: Vec<u32>,
    owner: Vec<u32>,
    symbol: Vec<u8>,
    succ: Adjacency,
}

impl PositionGraph {
    fn new(g: &LabeledGraph) -> PositionGraph {
        let total = g.total_label_length();
        assert!(total < u32::MAX as usize, "graph too large");
        let mut first = Vec::with_capacity(g.node_count() + 1);
        let mut owner = Vec::with_capacity(total);
        let mut symbol = Vec::with_capacity(total);
        for u in g.nodes() {
            first.push(symbol.len() as u32);
            for &c in g.label(u).as_bytes() {
                owner.push(u.0 as u32);
                symbol.push(c);
            }
        }
        first.push(symbol.len() as u32);
        PositionGraph {
            first,
            owner,
            symbol,
            succ: g.out_adjacency(),
        }
    }

    fn len(&self) -> usize {
        self.symbol.len()
    }

    fn is_tail(&self, p: u32) -> bool {
        p + 1 == self.first[self.owner[p as usize] as usize + 1]
    }

    #[inline]
    fn for_each_successor(&self, p: u32, mut f: impl FnMut(u32)) {
        if self.is_tail(p) {
            for &v in self.succ.neighbors(NodeId(self.owner[p as usize] as usize)) {
                f(self.first[v.0]);
            }
        } else {
            f(p + 1);
        }
    }

    fn position(&self, node: NodeId, offset: usize) -> Option<u32> {
        let lo = *self.first.get(node.0)?;
        let hi = self.first[node.0 + 1];
        let p = lo + offset.checked_sub(1)? as u32;
        (p < hi).then_some(p)
    }

    fn offset(&self, p: u32) -> usize {
        (p - self.first[self.owner[p as usize] as usize]) as usize + 1
    }
}

fn check_alphabets(g: &LabeledGraph, p: &Pattern) -> Result<(), MatchError> {
    if g.alphabet() != p.alphabet() {
        return Err(MatchError::AlphabetMismatch {
            graph: g.alphabet(),
            pattern: p.alphabet(),
        });
    }
    Ok(())
}

/// Forward sweep. Returns the frontier after every pattern position when
/// `keep` is set, otherwise only whether the last frontier is nonempty.
fn sweep(
    pg: &PositionGraph,
    pat: &[u8],
    starts: Option<&[u32]>,
    keep: bool,
) -> (bool, Vec<Vec<u32>>) {
    let mut stamp = vec![u32::MAX; pg.len()];
    let mut cur: Vec<u32> = match starts {
        Some(s) => s
            .iter()
            .copied()
            .filter(|&p| pg.symbol[p as usize] == pat[0])
            .collect(),
        None => (0..pg.len() as u32)
            .filter(|&p| pg.symbol[p as usize] == pat[0])
            .collect(),
    };
    let mut kept = Vec::new();
    let mut next = Vec::new();
    for (k, &c) in pat.iter().enumerate().skip(1) {
        if cur.is_empty() {
            break;
        }
        let k = k as u32;
        next.clear();
        for &p in &cur {
            pg.for_each_successor(p, |q| {
                if pg.symbol[q as usize] == c && stamp[q as usize] != k {
                    stamp[q as usize] = k;
                    next.push(q);
                }
            });
        }
        if keep {
            kept.push(std::mem::replace(&mut cur, next.clone()));
        } else {
            std::mem::swap(&mut cur, &mut next);
        }
    }
    if !keep {
        return (!cur.is_empty(), kept);
    }
    kept.push(cur);
    let complete = kept.len() == pat.len() && !kept[pat.len() - 1].is_empty();
    (complete, kept)
}

/// Decides whether `p` occurs in `g`.
pub fn match_exists(g: &LabeledGraph, p: &Pattern) -> Result<bool, MatchError> {
    check_alphabets(g, p)?;
    let pg = PositionGraph::new(g);
    Ok(sweep(&pg, p.symbols(), None, false).0)
}

/// One canonical occurrence for each distinct end anchor, ordered by
/// end anchor, at most `limit` of them.
pub fn find_matches(
    g: &LabeledGraph,
    p: &Pattern,
    limit: usize,
) -> Result<Vec<MatchOccurrence>, MatchError> {
    check_alphabets(g, p)?;
    let pg = PositionGraph::new(g);
    Ok(collect(g, &pg, p, None, limit))
}

/// Like [`find_matches`], restricted to walks starting at `start` with
/// 1-based offset `start_offset`.
pub fn find_matches_from(
    g: &LabeledGraph,
    p: &Pattern,
    start: NodeId,
    start_offset: usize,
    limit: usize,
) -> Result<Vec<MatchOccurrence>, MatchError> {
    check_alphabets(g, p)?;
    let pg = PositionGraph::new(g);
    let anchor = pg
        .position(start, start_offset)
        .ok_or(MatchError::BadAnchor {
            node: start,
            offset: start_offset,
        })?;
    Ok(collect(g, &pg, p, Some(&[anchor]), limit))
}

fn collect(
    g: &LabeledGraph,
    pg: &PositionGraph,
    p: &Pattern,
    starts: Option<&[u32]>,
    limit: usize,
) -> Vec<MatchOccurrence> {
    let pat = p.symbols();
    let (found, mut frontiers) = sweep(pg, pat, starts, true);
    if !found || limit == 0 {
        return Vec::new();
    }
    for f in frontiers.iter_mut() {
        f.sort_unstable();
    }
    let pred = g.in_adjacency();
    let m = pat.len();
    let mut out = Vec::new();
    for &end in frontiers[m - 1].iter().take(limit) {
        let mut path = vec![end];
        let mut cur = end;
        for k in (0..m - 1).rev() {
            let prev_set = &frontiers[k];
            let p0 = cur - pg.first[pg.owner[cur as usize] as usize];
            let best = if p0 > 0 {
                // inside a label the only predecessor is the previous character
                Some(cur - 1).filter(|q| prev_set.binary_search(q).is_ok())
            } else {
                pred.neighbors(NodeId(pg.owner[cur as usize] as usize))
                    .iter()
                    .map(|u| pg.first[u.0 + 1] - 1)
                    .filter(|q| prev_set.binary_search(q).is_ok())
                    .min()
            };
            cur = best.expect("frontier sets are closed under predecessors");
            path.push(cur);
        }
        path.reverse();
        out.push(occurrence(pg, &path));
    }
    out
}

fn occurrence(pg: &PositionGraph, path: &[u32]) -> MatchOccurrence {
    let node = |p: u32| NodeId(pg.owner[p as usize] as usize);
    let mut witness = vec![node(path[0])];
    for w in path.windows(2) {
        let within_label = !pg.is_tail(w[0]) && w[1] == w[0] + 1;
        if !within_label {
            witness.push(node(w[1]));
        }
    }
    let first = path[0];
    let last = *path.last().unwrap();
    MatchOccurrence {
        start: node(first),
        start_offset: pg.offset(first),
        end: node(last),
        end_offset: pg.offset(last),
        witness,
    }
}

/// Reference decision procedure: memoized depth-first search over
/// `(node, label offset, pattern index)` states, built directly from the
/// edge list. Shares no traversal code with [`match_exists`].
pub fn oracle_match_exists(g: &LabeledGraph, p: &Pattern) -> Result<bool, MatchError> {
    check_alphabets(g, p)?;
    let pat = p.symbols();
    let m = pat.len();
    let labels: Vec<&[u8]> = g.labels().iter().map(|s| s.as_bytes()).collect();
    let states = labels.iter().map(|l| l.len()).sum::<usize>() * m;
    if states > ORACLE_STATE_BUDGET {
        return Err(MatchError::BudgetExceeded {
            states,
            budget: ORACLE_STATE_BUDGET,
        });
    }

    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); labels.len()];
    for &(u, v) in g.edges() {
        nbrs[u.0].push(v.0);
        if !g.is_directed() && u != v {
            nbrs[v.0].push(u.0);
        }
    }
    let mut base = Vec::with_capacity(labels.len());
    let mut acc = 0;
    for l in &labels {
        base.push(acc);
        acc += l.len();
    }
    let key = |u: usize, off: usize, k: usize| (base[u] + off) * m + k;

    // 0 = unknown, 1 = no, 2 = yes
    let mut memo = vec![0u8; states];
    let children = |u: usize, off: usize, k: usize| -> Vec<(usize, usize, usize)> {
        if k + 1 == m {
            return Vec::new();
        }
        let want = pat[k + 1];
        if off + 1 < labels[u].len() {
            if labels[u][off + 1] == want {
                vec![(u, off + 1, k + 1)]
            } else {
                Vec::new()
            }
        } else {
            nbrs[u]
                .iter()
                .filter(|&&v| labels[v][0] == want)
                .map(|&v| (v, 0, k + 1))
                .collect()
        }
    };

    for u in 0..labels.len() {
        for off in 0..labels[u].len() {
            if labels[u][off] != pat[0] {
                continue;
            }
            let mut stack = vec![((u, off, 0usize), false)];
            while let Some(((a, b, k), expanded)) = stack.pop() {
                let id = key(a, b, k);
                if memo[id] != 0 {
                    continue;
                }
                if k + 1 == m {
                    memo[id] = 2;
                    continue;
                }
                let kids = children(a, b, k);
                if expanded {
                    let ok = kids.iter().any(|&(x, y, z)| memo[key(x, y, z)] == 2);
                    memo[id] = if ok { 2 } else { 1 };
                } else {
                    stack.push(((a, b, k), true));
                    for kid in kids {
                        if memo[key(kid.0, kid.1, kid.2)] == 0 {
                            stack.push((kid, false));
                        }
                    }
                }
            }
            if memo[key(u, off, 0)] == 2 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Re-spells the witness of `occ` against `g` and checks edge validity.
/// Independent of the engine; used to validate reported occurrences.
pub fn witness_spells(g: &LabeledGraph, occ: &MatchOccurrence, p: &Pattern) -> bool {
    let w = &occ.witness;
    if w.is_empty() || w[0] != occ.start || *w.last().unwrap() != occ.end {
        return false;
    }
    for pair in w.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        let ok = g
            .edges()
            .iter()
            .any(|&(a, b)| (a, b) == (u, v) || (!g.is_directed() && (b, a) == (u, v)));
        if !ok {
            return false;
        }
    }
    let mut spelled: Vec<u8> = Vec::new();
    for (i, &u) in w.iter().enumerate() {
        let label = g.label(u).as_bytes();
        let lo = if i == 0 {
            occ.start_offset.wrapping_sub(1)
        } else {
            0
        };
        let hi = if i + 1 == w.len() {
            occ.end_offset
        } else {
            label.len()
        };
        if lo >= label.len() || hi > label.len() || hi == 0 || lo >= hi {
            return false;
        }
        spelled.extend_from_slice(&label[lo..hi]);
    }
    spelled == p.symbols()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(
        alphabet: Alphabet,
        directed: bool,
        labels: &[&str],
        edges: &[(usize, usize)],
    ) -> LabeledGraph {
        let mut g = LabeledGraph::new(alphabet, directed);
        for l in labels {
            g.add_node(*l);
        }
        for &(u, v) in edges {
            g.add_edge(NodeId(u), NodeId(v));
        }
        g
    }

    fn pat(a: Alphabet, s: &str) -> Pattern {
        Pattern::new(a, s).unwrap()
    }

    #[test]
    fn undirected_walk_may_revisit() {
        let g = graph(Alphabet::Binary, false, &["0", "1"], &[(0, 1)]);
        assert_eq!(match_exists(&g, &pat(Alphabet::Binary, "0101")), Ok(true));
        assert_eq!(
            oracle_match_exists(&g, &pat(Alphabet::Binary, "0101")),
            Ok(true)
        );
    }

    #[test]
    fn directed_chain_has_no_backward_step() {
        let g = graph(Alphabet::Binary, true, &["0", "1"], &[(0, 1)]);
        assert_eq!(match_exists(&g, &pat(Alphabet::Binary, "10")), Ok(false));
        assert_eq!(match_exists(&g, &pat(Alphabet::Binary, "01")), Ok(true));
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let g = graph(Alphabet::Binary, true, &["0"], &[]);
        let e = match_exists(&g, &pat(Alphabet::Base4, "0")).unwrap_err();
        assert!(matches!(e, MatchError::AlphabetMismatch { .. }));
        assert!(find_matches(&g, &pat(Alphabet::Base4, "0"), 5).is_err());
        assert!(oracle_match_exists(&g, &pat(Alphabet::Base4, "0")).is_err());
    }

    #[test]
    fn pattern_validation() {
        assert_eq!(
            Pattern::new(Alphabet::Binary, ""),
            Err(MatchError::EmptyPattern)
        );
        assert!(matches!(
            Pattern::new(Alphabet::Binary, "01b"),
            Err(MatchError::ForeignSymbol { symbol: 'b', .. })
        ));
    }

    #[test]
    fn labels_are_read_forward_only() {
        let g = graph(Alphabet::Base4, false, &["be"], &[]);
        assert_eq!(match_exists(&g, &pat(Alphabet::Base4, "eb")), Ok(false));
        assert_eq!(match_exists(&g, &pat(Alphabet::Base4, "be")), Ok(true));
        assert_eq!(match_exists(&g, &pat(Alphabet::Base4, "e")), Ok(true));
    }

    #[test]
    fn self_loop_allows_repeat() {
        let g = graph(Alphabet::Binary, true, &["0"], &[(0, 0)]);
        assert_eq!(match_exists(&g, &pat(Alphabet::Binary, "000")), Ok(true));
        let occ = find_matches(&g, &pat(Alphabet::Binary, "000"), 1).unwrap();
        assert_eq!(occ[0].witness, vec![NodeId(0); 3]);
        let g = graph(Alphabet::Binary, true, &["0"], &[]);
        assert_eq!(match_exists(&g, &pat(Alphabet::Binary, "00")), Ok(false));
    }

    #[test]
    fn unique_alignment_across_labels() {
        let g = graph(Alphabet::Base4, true, &["be", "eb"], &[(0, 1)]);
        let occ = find_matches(&g, &pat(Alphabet::Base4, "ee"), 10).unwrap();
        assert_eq!(occ.len(), 1);
        assert_eq!(
            occ[0],
            MatchOccurrence {
                start: NodeId(0),
                start_offset: 2,
                end: NodeId(1),
                end_offset: 1,
                witness: vec![NodeId(0), NodeId(1)],
            }
        );
        assert_eq!(occ[0].to_string(), "start=0:2 end=1:1 witness=0,1");
    }

    #[test]
    fn too_long_pattern_gives_no_occurrence() {
        let g = graph(Alphabet::Binary, true, &["01"], &[]);
        assert!(find_matches(&g, &pat(Alphabet::Binary, "010"), 10)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn pattern_inside_one_label() {
        let g = graph(Alphabet::Base4, true, &["b01e"], &[]);
        let occ = find_matches(&g, &pat(Alphabet::Base4, "01"), 10).unwrap();
        assert_eq!(occ.len(), 1);
        assert_eq!((occ[0].start_offset, occ[0].end_offset), (2, 3));
        assert_eq!(occ[0].witness, vec![NodeId(0)]);
        assert_eq!(
            oracle_match_exists(&g, &pat(Alphabet::Base4, "b01e")),
            Ok(true)
        );
    }

    #[test]
    fn oracle_trivial_cases() {
        let g = graph(Alphabet::Base4, true, &["01", "10"], &[(0, 1)]);
        assert_eq!(
            oracle_match_exists(&g, &pat(Alphabet::Base4, "be")),
            Ok(false)
        );
        assert_eq!(
            oracle_match_exists(&g, &pat(Alphabet::Base4, "10")),
            Ok(true)
        );
        assert_eq!(
            oracle_match_exists(&g, &pat(Alphabet::Base4, "0110")),
            Ok(true)
        );
    }

    #[test]
    fn oracle_budget() {
        let g = graph(Alphabet::Binary, true, &["0"; 2000], &[]);
        let p = Pattern::new(Alphabet::Binary, &"0".repeat(600)).unwrap();
        assert!(matches!(
            oracle_match_exists(&g, &p),
            Err(MatchError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn anchored_search() {
        let g = graph(Alphabet::Binary, false, &["0", "1", "0"], &[(0, 1), (1, 2)]);
        let p = pat(Alphabet::Binary, "010");
        let all = find_matches(&g, &p, 10).unwrap();
        assert_eq!(all.len(), 2);
        let from2 = find_matches_from(&g, &p, NodeId(2), 1, 10).unwrap();
        assert!(from2.iter().all(|o| o.start == NodeId(2)));
        assert_eq!(from2.len(), 2);
        assert!(find_matches_from(&g, &p, NodeId(2), 2, 10).is_err());
    }

    #[test]
    fn witness_checker_rejects_bad_walks() {
        let g = graph(Alphabet::Binary, true, &["0", "1"], &[(0, 1)]);
        let p = pat(Alphabet::Binary, "01");
        let good = MatchOccurrence {
            start: NodeId(0),
            start_offset: 1,
            end: NodeId(1),
            end_offset: 1,
            witness: vec![NodeId(0), NodeId(1)],
        };
        assert!(witness_spells(&g, &good, &p));
        let backwards = MatchOccurrence {
            start: NodeId(1),
            start_offset: 1,
            end: NodeId(0),
            end_offset: 1,
            witness: vec![NodeId(1), NodeId(0)],
        };
        assert!(!witness_spells(
            &g,
            &backwards,
            &pat(Alphabet::Binary, "10")
        ));
    }
}
