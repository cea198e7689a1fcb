//! The line-oriented instance format.
//!
//! ```text
//! # comment
//! p <n> <m>
//! e <u> <v>        (exactly m lines, 1-based endpoints)
//! s <v> ...        (source tokens, may be empty)
//! t <v> ...        (target tokens, may be empty)
//! ```

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use blockslide_core::{Graph, TokenSet};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Source,
    Target,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::Source => "source",
            Which::Target => "target",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("{0} set is not independent: vertices {1} and {2} are adjacent")]
    NotIndependent(Which, usize, usize),
    #[error("missing `{0}` line")]
    MissingSection(char),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub source: TokenSet,
    pub target: TokenSet,
}

impl From<blockslide_core::generate::Instance> for Instance {
    fn from(i: blockslide_core::generate::Instance) -> Self {
        Instance {
            graph: i.graph,
            source: i.source,
            target: i.target,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn numbers(line: usize, fields: &[&str]) -> Result<Vec<usize>, ParseError> {
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| syntax(line, format!("expected a number, found `{f}`")))
        })
        .collect()
}

fn vertex(line: usize, v: usize, n: usize) -> Result<usize, ParseError> {
    if v == 0 || v > n {
        return Err(ParseError::VertexOutOfRange { line, vertex: v, n });
    }
    Ok(v - 1)
}

pub fn parse(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen_edges = BTreeSet::new();
    let mut sets: [Option<(usize, Vec<usize>)>; 2] = [None, None];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let (tag, rest) = (fields[0], &fields[1..]);
        match (tag, header) {
            ("p", None) => {
                let nums = numbers(line, rest)?;
                let [n, m] = nums[..] else {
                    return Err(syntax(line, "expected `p <vertices> <edges>`"));
                };
                header = Some((n, m, line));
            }
            ("p", Some(_)) => return Err(syntax(line, "repeated `p` line")),
            (_, None) => return Err(ParseError::MissingSection('p')),
            ("e", Some((n, m, _))) => {
                if sets.iter().any(Option::is_some) {
                    return Err(syntax(line, "edge after token sets"));
                }
                if edges.len() == m {
                    return Err(syntax(line, format!("more than the declared {m} edges")));
                }
                let nums = numbers(line, rest)?;
                let [u, v] = nums[..] else {
                    return Err(syntax(line, "expected `e <u> <v>`"));
                };
                let (u, v) = (vertex(line, u, n)?, vertex(line, v, n)?);
                if u == v {
                    return Err(syntax(line, "self-loop"));
                }
                if !seen_edges.insert((u.min(v), u.max(v))) {
                    return Err(syntax(line, "repeated edge"));
                }
                edges.push((u, v));
            }
            ("s" | "t", Some((n, _, _))) => {
                let slot = usize::from(tag == "t");
                if sets[slot].is_some() {
                    return Err(syntax(line, format!("repeated `{tag}` line")));
                }
                let mut vs = Vec::with_capacity(rest.len());
                for v in numbers(line, rest)? {
                    vs.push(vertex(line, v, n)?);
                }
                let unique: BTreeSet<usize> = vs.iter().copied().collect();
                if unique.len() != vs.len() {
                    return Err(syntax(line, "repeated vertex in token set"));
                }
                sets[slot] = Some((line, vs));
            }
            _ => return Err(syntax(line, format!("unknown line tag `{tag}`"))),
        }
    }
    let (n, m, header_line) = header.ok_or(ParseError::MissingSection('p'))?;
    if edges.len() != m {
        return Err(syntax(
            header_line,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    let graph = Graph::new(n, &edges).map_err(|e| syntax(header_line, e.to_string()))?;
    let [source, target] = sets;
    let (_, source) = source.ok_or(ParseError::MissingSection('s'))?;
    let (_, target) = target.ok_or(ParseError::MissingSection('t'))?;
    let build = |which, vs: Vec<usize>| {
        TokenSet::new(&graph, vs).map_err(|e| match e {
            blockslide_core::Error::NotIndependent(a, b) => {
                ParseError::NotIndependent(which, a + 1, b + 1)
            }
            other => syntax(header_line, other.to_string()),
        })
    };
    let source = build(Which::Source, source)?;
    let target = build(Which::Target, target)?;
    Ok(Instance {
        graph,
        source,
        target,
    })
}

fn token_line(out: &mut String, tag: char, set: &TokenSet) {
    out.push(tag);
    for v in set.iter() {
        let _ = write!(out, " {}", v + 1);
    }
    out.push('\n');
}

/// Renders `inst` in the instance format, with `comments` as leading `#`
/// lines.
pub fn render(inst: &Instance, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let g = &inst.graph;
    let _ = writeln!(out, "p {} {}", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    token_line(&mut out, 's', &inst.source);
    token_line(&mut out, 't', &inst.target);
    out
}
