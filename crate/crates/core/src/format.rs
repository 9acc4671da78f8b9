//! Canonical text formats.
//!
//! Network file:
//!
//! ```text
//! holonet v1
//! mode dual
//! unit 2
//! group u1 eps=0.1
//! vertices 3
//! coord 0 0 0
//! edge 0 1 phase 0
//! edge 0 1 dist +
//! edge 2 1 dist -
//! ```
//!
//! A general group block is `group dim=<k> d=<d> eps=<ε′>` followed by `d`
//! lines `gen <i> <re im …>` holding each generator row-major as `2·k²`
//! reals. Coordinates are all-or-nothing. Edges are written sorted by
//! `(u, v, kind)`. Blank lines and `#` comments are ignored on input.
//!
//! Weighted complex file: `complex v=<V>` then `wedge <u> <v> <l>` lines.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::compiler::EmbeddedNetwork;
use crate::group::{CMatrix, GroupError, GroupSpec, C64};
use crate::network::{EdgeKind, Mode, Network, NetworkError, Sign};
use crate::quantizer::WeightedComplex;

pub const MAGIC: &str = "holonet v1";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Network {
        line: usize,
        #[source]
        source: NetworkError,
    },
    #[error("group block: {0}")]
    Group(#[from] GroupError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Contents of a network file.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkDocument {
    pub group: GroupSpec,
    pub network: Network,
    pub coords: Option<Vec<(f64, f64)>>,
}

impl NetworkDocument {
    pub fn new(group: GroupSpec, network: Network) -> Self {
        NetworkDocument {
            group,
            network,
            coords: None,
        }
    }

    pub fn embedded(group: GroupSpec, emb: EmbeddedNetwork) -> Self {
        NetworkDocument {
            group,
            network: emb.network,
            coords: Some(emb.coords),
        }
    }

    /// The embedded view, if coordinates are present.
    pub fn as_embedded(&self) -> Option<EmbeddedNetwork> {
        self.coords.as_ref().map(|c| EmbeddedNetwork {
            network: self.network.clone(),
            coords: c.clone(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{MAGIC}").unwrap();
        writeln!(out, "mode {}", self.network.mode()).unwrap();
        writeln!(out, "unit {}", self.network.unit()).unwrap();
        out.push_str(&group_to_text(&self.group));
        writeln!(out, "vertices {}", self.network.vertex_count()).unwrap();
        if let Some(coords) = &self.coords {
            for (v, (x, y)) in coords.iter().enumerate() {
                writeln!(out, "coord {v} {x} {y}").unwrap();
            }
        }
        let mut edges = self.network.edges().to_vec();
        edges.sort_by_key(|e| (e.u, e.v, e.kind));
        for e in edges {
            let kind = match e.kind {
                EdgeKind::Phase(i) => format!("phase {i}"),
                EdgeKind::Distance(Sign::Positive) => "dist +".to_string(),
                EdgeKind::Distance(Sign::Negative) => "dist -".to_string(),
                EdgeKind::Combined(i) => format!("comb {i}"),
            };
            writeln!(out, "edge {} {} {kind}", e.u, e.v).unwrap();
        }
        out
    }

    /// Parses a network file. The resulting network is frozen, with edges in
    /// file order.
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut lines = significant_lines(text).peekable();
        match lines.next() {
            Some((_, l)) if l == MAGIC => {}
            Some((n, l)) => return Err(syntax(n, format!("expected {MAGIC:?}, found {l:?}"))),
            None => return Err(syntax(0, "empty file")),
        }

        let mut mode = None;
        let mut unit = None;
        let mut group = None;
        let mut vertices: Option<usize> = None;
        let mut coords: Vec<(usize, f64, f64)> = Vec::new();
        let mut edges: Vec<(usize, usize, usize, EdgeKind)> = Vec::new();

        while let Some((n, line)) = lines.next() {
            let mut words = line.split_whitespace();
            let key = words.next().expect("significant lines are non-empty");
            let rest: Vec<&str> = words.collect();
            match key {
                "mode" => {
                    once(n, &mode, "mode")?;
                    mode = Some(match rest.as_slice() {
                        ["dual"] => Mode::Dual,
                        ["combined"] => Mode::Combined,
                        _ => return Err(syntax(n, "mode must be dual or combined")),
                    });
                }
                "unit" => {
                    once(n, &unit, "unit")?;
                    unit = Some(single_value::<f64>(n, &rest, "unit")?);
                }
                "group" => {
                    once(n, &group, "group")?;
                    group = Some(parse_group_block(n, &rest, &mut lines)?);
                }
                "vertices" => {
                    once(n, &vertices, "vertices")?;
                    vertices = Some(single_value::<usize>(n, &rest, "vertices")?);
                }
                "coord" => {
                    let [v, x, y] = rest.as_slice() else {
                        return Err(syntax(n, "coord needs <v> <x> <y>"));
                    };
                    coords.push((
                        number(n, v, "vertex id")?,
                        number(n, x, "x")?,
                        number(n, y, "y")?,
                    ));
                }
                "edge" => {
                    let (u, v, kind) = match rest.as_slice() {
                        [u, v, "phase", i] => (u, v, EdgeKind::Phase(number(n, i, "generator")?)),
                        [u, v, "comb", i] => (u, v, EdgeKind::Combined(number(n, i, "generator")?)),
                        [u, v, "dist", "+"] => (u, v, EdgeKind::Distance(Sign::Positive)),
                        [u, v, "dist", "-"] => (u, v, EdgeKind::Distance(Sign::Negative)),
                        _ => {
                            return Err(syntax(
                                n,
                                "edge needs <u> <v> phase <i>|dist +|dist -|comb <i>",
                            ))
                        }
                    };
                    edges.push((
                        n,
                        number(n, u, "vertex id")?,
                        number(n, v, "vertex id")?,
                        kind,
                    ));
                }
                "gen" => return Err(syntax(n, "gen line outside a group block")),
                other => return Err(syntax(n, format!("unknown key {other:?}"))),
            }
        }

        let mode = mode.ok_or_else(|| syntax(0, "missing mode"))?;
        let unit = unit.ok_or_else(|| syntax(0, "missing unit"))?;
        let group = group.ok_or_else(|| syntax(0, "missing group"))?;
        let vertex_count = vertices.ok_or_else(|| syntax(0, "missing vertices"))?;

        let mut network =
            Network::new(mode, unit).map_err(|source| FormatError::Network { line: 0, source })?;
        network
            .add_vertices(vertex_count)
            .map_err(|source| FormatError::Network { line: 0, source })?;
        for (line, u, v, kind) in edges {
            network
                .add_edge(u, v, kind)
                .map_err(|source| FormatError::Network { line, source })?;
        }
        if mode == Mode::Combined && group.d() != 1 {
            return Err(syntax(0, "combined mode needs a one-generator group"));
        }
        for e in network.edges() {
            if let Some(i) = e.kind.generator() {
                if i >= group.d() {
                    return Err(GroupError::IndexOutOfRange {
                        index: i,
                        d: group.d(),
                    }
                    .into());
                }
            }
        }
        network.freeze();

        let coords = if coords.is_empty() {
            None
        } else {
            if coords.len() != vertex_count {
                return Err(syntax(
                    0,
                    format!("{} coord lines for {vertex_count} vertices", coords.len()),
                ));
            }
            let mut out = vec![None; vertex_count];
            for (v, x, y) in coords {
                let slot = out
                    .get_mut(v)
                    .ok_or_else(|| syntax(0, format!("coord for unknown vertex {v}")))?;
                if slot.replace((x, y)).is_some() {
                    return Err(syntax(0, format!("duplicate coord for vertex {v}")));
                }
            }
            Some(
                out.into_iter()
                    .map(|c| c.expect("every vertex seen"))
                    .collect(),
            )
        };

        Ok(NetworkDocument {
            group,
            network,
            coords,
        })
    }
}

fn once<T>(line: usize, slot: &Option<T>, key: &str) -> Result<(), FormatError> {
    if slot.is_some() {
        Err(syntax(line, format!("duplicate {key}")))
    } else {
        Ok(())
    }
}

fn number<T: FromStr>(line: usize, word: &str, what: &str) -> Result<T, FormatError> {
    word.parse()
        .map_err(|_| syntax(line, format!("bad {what} {word:?}")))
}

fn single_value<T: FromStr>(line: usize, rest: &[&str], what: &str) -> Result<T, FormatError> {
    match rest {
        [w] => number(line, w, what),
        _ => Err(syntax(line, format!("{what} takes one value"))),
    }
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// The group block, newline-terminated.
pub fn group_to_text(g: &GroupSpec) -> String {
    let mut out = String::new();
    if g.is_u1_shorthand() {
        writeln!(out, "group u1 eps={}", g.eps()).unwrap();
        return out;
    }
    writeln!(out, "group dim={} d={} eps={}", g.dim(), g.d(), g.eps()).unwrap();
    for (i, m) in g.generators().iter().enumerate() {
        write!(out, "gen {i}").unwrap();
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let z = m[(r, c)];
                write!(out, " {} {}", z.re, z.im).unwrap();
            }
        }
        out.push('\n');
    }
    out
}

fn key_values<'a>(line: usize, words: &[&'a str]) -> Result<Vec<(&'a str, &'a str)>, FormatError> {
    words
        .iter()
        .map(|w| {
            w.split_once('=')
                .ok_or_else(|| syntax(line, format!("expected key=value, found {w:?}")))
        })
        .collect()
}

fn parse_group_block<'a, I>(
    line: usize,
    words: &[&str],
    lines: &mut std::iter::Peekable<I>,
) -> Result<GroupSpec, FormatError>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    if words.first() == Some(&"u1") {
        let kv = key_values(line, &words[1..])?;
        let [("eps", eps)] = kv.as_slice() else {
            return Err(syntax(line, "u1 group takes exactly eps=<value>"));
        };
        return Ok(GroupSpec::u1(number(line, eps, "eps")?)?);
    }
    let mut dim = None;
    let mut d = None;
    let mut eps = None;
    for (k, v) in key_values(line, words)? {
        match k {
            "dim" => dim = Some(number::<usize>(line, v, "dim")?),
            "d" => d = Some(number::<usize>(line, v, "d")?),
            "eps" => eps = Some(number::<f64>(line, v, "eps")?),
            other => return Err(syntax(line, format!("unknown group key {other:?}"))),
        }
    }
    let (Some(dim), Some(d), Some(eps)) = (dim, d, eps) else {
        return Err(syntax(line, "group needs dim=, d= and eps="));
    };
    let mut generators = Vec::with_capacity(d);
    for i in 0..d {
        let (n, gen_line) = lines
            .next()
            .ok_or_else(|| syntax(line, format!("missing gen {i}")))?;
        let words: Vec<&str> = gen_line.split_whitespace().collect();
        if words.len() < 2 || words[0] != "gen" || words[1] != i.to_string() {
            return Err(syntax(n, format!("expected gen {i}")));
        }
        let values = words[2..]
            .iter()
            .map(|w| number::<f64>(n, w, "matrix entry"))
            .collect::<Result<Vec<f64>, _>>()?;
        if values.len() != 2 * dim * dim {
            return Err(syntax(
                n,
                format!(
                    "gen {i} has {} reals, expected {}",
                    values.len(),
                    2 * dim * dim
                ),
            ));
        }
        let entries: Vec<C64> = values.chunks(2).map(|p| C64::new(p[0], p[1])).collect();
        generators.push(CMatrix::from_row_slice(dim, dim, &entries));
    }
    Ok(GroupSpec::new(dim, generators, eps)?)
}

/// Parses a standalone group block.
pub fn parse_group(text: &str) -> Result<GroupSpec, FormatError> {
    let mut lines = significant_lines(text).peekable();
    let (n, first) = lines.next().ok_or_else(|| syntax(0, "empty group file"))?;
    let words: Vec<&str> = first.split_whitespace().collect();
    if words.first() != Some(&"group") {
        return Err(syntax(n, "expected a group line"));
    }
    let g = parse_group_block(n, &words[1..], &mut lines)?;
    if let Some((n, _)) = lines.next() {
        return Err(syntax(n, "trailing content after group block"));
    }
    Ok(g)
}

pub fn complex_to_text(c: &WeightedComplex) -> String {
    let mut out = format!("complex v={}\n", c.vertex_count);
    for e in &c.edges {
        writeln!(out, "wedge {} {} {}", e.u, e.v, e.length).unwrap();
    }
    out
}

pub fn parse_complex(text: &str) -> Result<WeightedComplex, FormatError> {
    let mut lines = significant_lines(text);
    let (n, header) = lines
        .next()
        .ok_or_else(|| syntax(0, "empty complex file"))?;
    let vertex_count = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["complex", kv] => match kv.split_once('=') {
            Some(("v", v)) => number::<usize>(n, v, "vertex count")?,
            _ => return Err(syntax(n, "expected complex v=<V>")),
        },
        _ => return Err(syntax(n, "expected complex v=<V>")),
    };
    let mut complex = WeightedComplex::new(vertex_count);
    for (n, line) in lines {
        match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["wedge", u, v, l] => {
                complex.add_edge(
                    number(n, u, "vertex id")?,
                    number(n, v, "vertex id")?,
                    number(n, l, "length")?,
                );
            }
            _ => return Err(syntax(n, "expected wedge <u> <v> <l>")),
        }
    }
    Ok(complex)
}
