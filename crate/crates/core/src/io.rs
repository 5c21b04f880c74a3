//! Text formats for graphs, patterns and OV instances.
//!
//! Graph documents (`pmlg 1`):
//!
//! ```text
//! pmlg 1
//! alphabet base4
//! directed true
//! nodes 2
//! 0 b
//! 1 01
//! edges 1
//! 0 1
//! annotations
//! 0 GW 1 0 B
//! ```
//!
//! The `annotations` block is optional. Lines starting with `#` are ignored
//! by the readers; writers never emit them.

use std::fmt::Write as _;

use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::graph::{Annotation, LabeledGraph, NodeId};
use crate::matcher::Pattern;
use crate::ov::{BinaryVector, OvInstance};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{message}, line {line}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

/// Non-comment lines with their 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (i, l) in self.inner.by_ref() {
            self.last = i + 1;
            if !l.starts_with('#') {
                return Some((i + 1, l));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        self.next_line().ok_or_else(|| {
            err(
                self.last + 1,
                format!("unexpected end of input, expected {what}"),
            )
        })
    }
}

fn keyword<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str, FormatError> {
    text.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' '))
        .ok_or_else(|| err(line, format!("malformed header: expected '{key} …'")))
}

fn number(line: usize, tok: &str, what: &str) -> Result<usize, FormatError> {
    tok.parse::<usize>()
        .map_err(|_| err(line, format!("invalid {what} '{tok}'")))
}

fn read_alphabet(lines: &mut Lines<'_>) -> Result<Alphabet, FormatError> {
    let (ln, l) = lines.expect("alphabet line")?;
    keyword(ln, l, "alphabet")?
        .parse()
        .map_err(|e: String| err(ln, format!("malformed header: {e}")))
}

pub fn write_graph(g: &LabeledGraph) -> String {
    let mut s = String::new();
    writeln!(s, "pmlg 1").unwrap();
    writeln!(s, "alphabet {}", g.alphabet()).unwrap();
    writeln!(s, "directed {}", g.is_directed()).unwrap();
    writeln!(s, "nodes {}", g.node_count()).unwrap();
    for u in g.nodes() {
        writeln!(s, "{} {}", u, g.label(u)).unwrap();
    }
    writeln!(s, "edges {}", g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    if g.annotations().iter().any(Option::is_some) {
        writeln!(s, "annotations").unwrap();
        for u in g.nodes() {
            if let Some(a) = g.annotation(u) {
                writeln!(
                    s,
                    "{} {} {} {} {}",
                    u,
                    a.gadget.as_str(),
                    a.j,
                    a.h,
                    a.kind.as_str()
                )
                .unwrap();
            }
        }
    }
    s
}

pub fn read_graph(text: &str) -> Result<LabeledGraph, FormatError> {
    let mut lines = Lines::new(text);
    let (ln, l) = lines.expect("header")?;
    if l != "pmlg 1" {
        return Err(err(ln, "malformed header: expected 'pmlg 1'"));
    }
    let alphabet = read_alphabet(&mut lines)?;
    let (ln, l) = lines.expect("directed line")?;
    let directed = match keyword(ln, l, "directed")? {
        "true" => true,
        "false" => false,
        other => return Err(err(ln, format!("malformed header: directed '{other}'"))),
    };
    let (ln, l) = lines.expect("nodes line")?;
    let n = number(ln, keyword(ln, l, "nodes")?, "node count")?;

    let mut g = LabeledGraph::new(alphabet, directed);
    for i in 0..n {
        let (ln, l) = lines.expect("node line")?;
        let (id, label) = l
            .split_once(' ')
            .ok_or_else(|| err(ln, "malformed node line"))?;
        if number(ln, id, "node id")? != i {
            return Err(err(
                ln,
                format!("node ids must be listed in order, expected {i}"),
            ));
        }
        if label.is_empty() || label.contains(' ') {
            return Err(err(ln, "malformed node label"));
        }
        if let Some(c) = alphabet.first_foreign(label.as_bytes()) {
            return Err(err(ln, format!("unknown symbol '{}'", c as char)));
        }
        g.add_node(label);
    }

    let (ln, l) = lines.expect("edges line")?;
    let m = number(ln, keyword(ln, l, "edges")?, "edge count")?;
    for _ in 0..m {
        let (ln, l) = lines.expect("edge line")?;
        let mut toks = l.split(' ');
        let (u, v) = match (toks.next(), toks.next(), toks.next()) {
            (Some(u), Some(v), None) => (number(ln, u, "node id")?, number(ln, v, "node id")?),
            _ => return Err(err(ln, "malformed edge line")),
        };
        if u >= n || v >= n {
            return Err(err(ln, "edge endpoint out of range"));
        }
        g.push_edge_raw(NodeId(u), NodeId(v));
    }

    if let Some((ln, l)) = lines.next_line() {
        if l != "annotations" {
            return Err(err(ln, "unexpected content after edges"));
        }
        while let Some((ln, l)) = lines.next_line() {
            let toks: Vec<&str> = l.split(' ').collect();
            if toks.len() != 5 {
                return Err(err(ln, "malformed annotation line"));
            }
            let id = number(ln, toks[0], "node id")?;
            if id >= n {
                return Err(err(ln, "annotation node out of range"));
            }
            let gadget = toks[1].parse().map_err(|e: String| err(ln, e))?;
            let j = number(ln, toks[2], "group index")?;
            let h = number(ln, toks[3], "position index")?;
            let kind = toks[4].parse().map_err(|e: String| err(ln, e))?;
            g.set_annotation(NodeId(id), Some(Annotation { gadget, j, h, kind }));
        }
    }
    Ok(g)
}

pub fn write_pattern(p: &Pattern) -> String {
    format!("pmlgpat 1\nalphabet {}\n{}\n", p.alphabet(), p.as_str())
}

pub fn read_pattern(text: &str) -> Result<Pattern, FormatError> {
    let mut lines = Lines::new(text);
    let (ln, l) = lines.expect("header")?;
    if l != "pmlgpat 1" {
        return Err(err(ln, "malformed header: expected 'pmlgpat 1'"));
    }
    let alphabet = read_alphabet(&mut lines)?;
    let (ln, l) = lines.expect("pattern line")?;
    if l.is_empty() || l.contains(' ') {
        return Err(err(ln, "pattern must be one nonempty token"));
    }
    let p = Pattern::new(alphabet, l).map_err(|e| err(ln, e.to_string()))?;
    if let Some((ln, _)) = lines.next_line() {
        return Err(err(ln, "unexpected content after pattern"));
    }
    Ok(p)
}

pub fn write_ov(inst: &OvInstance) -> String {
    let mut s = format!("ov 1\n{} {}\n", inst.n(), inst.d());
    for v in inst.x().iter().chain(inst.y()) {
        let row: Vec<&str> = v
            .bits()
            .iter()
            .map(|&b| if b { "1" } else { "0" })
            .collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn read_ov(text: &str) -> Result<OvInstance, FormatError> {
    let mut lines = Lines::new(text);
    let (ln, l) = lines.expect("header")?;
    if l != "ov 1" {
        return Err(err(ln, "malformed header: expected 'ov 1'"));
    }
    let (ln, l) = lines.expect("size line")?;
    let (n, d) = match l.split_once(' ') {
        Some((n, d)) => (number(ln, n, "n")?, number(ln, d, "d")?),
        None => return Err(err(ln, "malformed size line, expected 'n d'")),
    };
    if n == 0 || d == 0 {
        return Err(err(ln, "n and d must be at least 1"));
    }
    let mut rows = Vec::with_capacity(2 * n);
    for _ in 0..2 * n {
        let (ln, l) = lines.expect("vector line")?;
        let bits = l
            .split(' ')
            .map(|t| match t {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(err(ln, format!("invalid bit '{other}'"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if bits.len() != d {
            return Err(err(ln, format!("expected {d} bits, found {}", bits.len())));
        }
        rows.push(BinaryVector::new(bits).map_err(|e| err(ln, e.to_string()))?);
    }
    if let Some((ln, _)) = lines.next_line() {
        return Err(err(ln, "unexpected content after vectors"));
    }
    let y = rows.split_off(n);
    OvInstance::new(rows, y).map_err(|e| err(1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Gadget, Kind};

    #[test]
    fn single_node_document() {
        let mut g = LabeledGraph::new(Alphabet::Base4, true);
        g.add_node("b");
        let text = write_graph(&g);
        assert_eq!(
            text,
            "pmlg 1\nalphabet base4\ndirected true\nnodes 1\n0 b\nedges 0\n"
        );
        assert_eq!(text.lines().count(), 6);
        assert_eq!(read_graph(&text).unwrap(), g);
    }

    #[test]
    fn annotations_round_trip() {
        let mut g = LabeledGraph::new(Alphabet::Base4, false);
        let a = g.add_annotated_node("b", Annotation::new(Gadget::GW, 1, 0, Kind::B));
        let b = g.add_node("0");
        g.add_annotated_node("e", Annotation::new(Gadget::Pendant, 2, 0, Kind::E));
        g.add_edge(b, a);
        let text = write_graph(&g);
        assert!(text.ends_with("annotations\n0 GW 1 0 B\n2 pendant 2 0 E\n"));
        assert_eq!(read_graph(&text).unwrap(), g);
        assert_eq!(write_graph(&read_graph(&text).unwrap()), text);
    }

    #[test]
    fn comments_are_skipped() {
        let text = "# hi\npmlg 1\nalphabet binary\n# mid\ndirected false\nnodes 1\n0 01\nedges 0\n";
        let g = read_graph(text).unwrap();
        assert_eq!(g.label(NodeId(0)), "01");
    }

    #[test]
    fn reader_errors_carry_line_numbers() {
        let bad_range = "pmlg 1\nalphabet base4\ndirected true\nnodes 5\n0 b\n1 b\n2 b\n3 b\n4 b\nedges 1\n0 99\n";
        assert_eq!(
            read_graph(bad_range).unwrap_err().to_string(),
            "edge endpoint out of range, line 11"
        );

        let bad_header = "pmlg 2\n";
        assert_eq!(read_graph(bad_header).unwrap_err().line, 1);

        let bad_symbol = "pmlg 1\nalphabet binary\ndirected true\nnodes 1\n0 0b\nedges 0\n";
        let e = read_graph(bad_symbol).unwrap_err();
        assert_eq!((e.line, e.message.as_str()), (5, "unknown symbol 'b'"));

        let truncated = "pmlg 1\nalphabet binary\ndirected true\nnodes 2\n0 0\n";
        assert!(read_graph(truncated).is_err());

        let bad_alphabet = "pmlg 1\nalphabet hex\n";
        assert_eq!(read_graph(bad_alphabet).unwrap_err().line, 2);
    }

    #[test]
    fn pattern_files() {
        let p = Pattern::new(Alphabet::Base4, "bb100eb101ee").unwrap();
        let text = write_pattern(&p);
        assert_eq!(text, "pmlgpat 1\nalphabet base4\nbb100eb101ee\n");
        assert_eq!(read_pattern(&text).unwrap(), p);
        assert!(read_pattern("pmlgpat 1\nalphabet binary\n01b\n").is_err());
        assert!(read_pattern("pmlgpat 1\nalphabet binary\n").is_err());
    }

    #[test]
    fn ov_files() {
        let inst = OvInstance::from_strs(&["100", "101"], &["010", "111"]).unwrap();
        let text = write_ov(&inst);
        assert_eq!(text, "ov 1\n2 3\n1 0 0\n1 0 1\n0 1 0\n1 1 1\n");
        assert_eq!(read_ov(&text).unwrap(), inst);
        assert_eq!(read_ov("ov 1\n1 2\n1 0\n1\n").unwrap_err().line, 4);
        assert!(read_ov("ov 1\n1 2\n1 0\n").is_err());
        assert!(read_ov("ov 1\n0 2\n").is_err());
    }
}
