//! Plain-text instance files (1-indexed vertices):
//!
//! ```text
//! p <problem> <n> <m>
//! c <vertex> <capacity>    cds only, one line per vertex in order
//! e <u> <v>                m lines, u < v, sorted
//! q <parts>                maxqcut only
//! ```
//!
//! Parsing is strict: every line must be one of the above, in this order,
//! with no padding or leading zeros. Valid files are therefore canonical and
//! survive a read/write cycle byte for byte.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    Cds,
    SumCol,
    MaxQCut,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Cds => "cds",
            Problem::SumCol => "sumcol",
            Problem::MaxQCut => "maxqcut",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cds" => Ok(Problem::Cds),
            "sumcol" => Ok(Problem::SumCol),
            "maxqcut" => Ok(Problem::MaxQCut),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown problem '{other}'"),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub problem: Problem,
    pub graph: Graph,
    /// Number of parts, for Max-q-Cut.
    pub q: Option<usize>,
}

impl Instance {
    pub fn new(problem: Problem, graph: Graph, q: Option<usize>) -> Result<Self> {
        let inst = Instance { problem, graph, q };
        inst.check()
            .map_err(|message| Error::Parse { line: 0, message })?;
        Ok(inst)
    }

    fn check(&self) -> std::result::Result<(), String> {
        match (self.problem, self.graph.capacities().is_some(), self.q) {
            (Problem::Cds, false, _) => Err("cds instances need capacities".into()),
            (Problem::Cds, true, None) | (Problem::SumCol, false, None) => Ok(()),
            (Problem::MaxQCut, false, Some(q)) if q >= 2 => Ok(()),
            (Problem::MaxQCut, false, _) => Err("maxqcut instances need q >= 2".into()),
            (_, true, _) => Err("only cds instances carry capacities".into()),
            (_, _, Some(_)) => Err("only maxqcut instances carry q".into()),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn fields<'a>(line: usize, text: &'a str, tag: &str, count: usize) -> Result<Vec<&'a str>> {
    let parts: Vec<&str> = text.split(' ').collect();
    if parts[0] != tag {
        return Err(err(line, format!("expected '{tag}' line, found '{text}'")));
    }
    if parts.len() != count + 1 {
        return Err(err(line, format!("'{tag}' line takes {count} fields")));
    }
    Ok(parts[1..].to_vec())
}

fn number<T: FromStr>(line: usize, s: &str) -> Result<T> {
    // reject signs, leading zeros and padding so the text stays canonical
    let canonical =
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'));
    if !canonical {
        return Err(err(line, format!("'{s}' is not a non-negative integer")));
    }
    s.parse()
        .map_err(|_| err(line, format!("'{s}' out of range")))
}

/// Parses instance text.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| err(0, "file must end with a newline"))?;
    let lines: Vec<&str> = if body.is_empty() {
        Vec::new()
    } else {
        body.split('\n').collect()
    };
    let mut it = lines.iter().enumerate().map(|(i, l)| (i + 1, *l));
    let (no, header) = it.next().ok_or_else(|| err(1, "missing header"))?;
    let h = fields(no, header, "p", 3)?;
    let problem: Problem = h[0]
        .parse()
        .map_err(|_| err(no, format!("unknown problem '{}'", h[0])))?;
    let n: usize = number(no, h[1])?;
    let m: usize = number(no, h[2])?;
    let mut capacities = None;
    if problem == Problem::Cds {
        let mut caps = Vec::with_capacity(n);
        for v in 1..=n {
            let (no, line) = it
                .next()
                .ok_or_else(|| err(lines.len() + 1, format!("missing capacity of vertex {v}")))?;
            let f = fields(no, line, "c", 2)?;
            if number::<usize>(no, f[0])? != v {
                return Err(err(no, format!("expected capacity of vertex {v}")));
            }
            caps.push(number::<u32>(no, f[1])?);
        }
        capacities = Some(caps);
    }
    let mut edges = Vec::with_capacity(m);
    let mut last = None;
    for _ in 0..m {
        let (no, line) = it
            .next()
            .ok_or_else(|| err(lines.len() + 1, format!("expected {m} edges")))?;
        let f = fields(no, line, "e", 2)?;
        let (u, v): (usize, usize) = (number(no, f[0])?, number(no, f[1])?);
        if u == 0 || v == 0 || u > n || v > n {
            return Err(err(no, format!("vertex out of range 1..={n}")));
        }
        if u == v {
            return Err(err(no, "self-loop"));
        }
        if u > v {
            return Err(err(no, format!("write edge {u} {v} as 'e {v} {u}'")));
        }
        match last {
            Some(prev) if prev == (u, v) => return Err(err(no, format!("duplicate edge {u} {v}"))),
            Some(prev) if prev > (u, v) => return Err(err(no, "edges must be sorted")),
            _ => last = Some((u, v)),
        }
        edges.push((u - 1, v - 1));
    }
    let mut q = None;
    if problem == Problem::MaxQCut {
        let (no, line) = it
            .next()
            .ok_or_else(|| err(lines.len() + 1, "missing 'q' line"))?;
        let f = fields(no, line, "q", 1)?;
        q = Some(number(no, f[0])?);
    }
    if let Some((no, line)) = it.next() {
        return Err(err(no, format!("unexpected line '{line}'")));
    }
    let mut graph = Graph::new(n, edges).map_err(|e| err(0, e.to_string()))?;
    if let Some(caps) = capacities {
        graph = graph.with_capacities(caps)?;
    }
    Instance::new(problem, graph, q)
}

/// Canonical text of `inst`.
pub fn format_instance(inst: &Instance) -> String {
    use std::fmt::Write as _;
    let g = &inst.graph;
    let mut out = String::new();
    let _ = writeln!(out, "p {} {} {}", inst.problem, g.n(), g.edge_count());
    if let Some(caps) = g.capacities() {
        for (v, c) in caps.iter().enumerate() {
            let _ = writeln!(out, "c {} {c}", v + 1);
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    if let Some(q) = inst.q {
        let _ = writeln!(out, "q {q}");
    }
    out
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    parse_instance(&fs::read_to_string(path)?)
}

pub fn write_instance(inst: &Instance, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_instance(inst))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const STAR: &str = "p cds 4 3\nc 1 3\nc 2 0\nc 3 0\nc 4 0\ne 1 2\ne 1 3\ne 1 4\n";

    #[test]
    fn round_trip_is_byte_exact() {
        let inst = parse_instance(STAR).unwrap();
        assert_eq!(inst.graph.capacities(), Some(&[3, 0, 0, 0][..]));
        assert_eq!(format_instance(&inst), STAR);
        let cut = "p maxqcut 3 2\ne 1 2\ne 2 3\nq 3\n";
        assert_eq!(format_instance(&parse_instance(cut).unwrap()), cut);
    }

    #[test]
    fn edgeless_instance() {
        let inst = parse_instance("p sumcol 3 0\n").unwrap();
        assert_eq!(inst.graph.edge_count(), 0);
        assert_eq!(inst.graph.n(), 3);
    }

    #[test]
    fn malformed_lines_report_their_number() {
        let cases = [
            ("p sumcol 3 2\ne 1 2\ne 1 2\n", 3),
            ("p sumcol 3 2\ne 2 3\ne 1 2\n", 3),
            ("p sumcol 3 1\ne 2 1\n", 2),
            ("p sumcol 3 1\ne 1 4\n", 2),
            ("p sumcol 3 1\ne 1 1\n", 2),
            ("p sumcol 3 1\nx 1 2\n", 2),
            ("p sumcol 3 0\ne 1 2\n", 2),
            ("p cds 2 0\nc 1 1\nc 3 1\n", 3),
            ("p sumcol 2 1\ne 01 2\n", 2),
            ("p graph 2 0\n", 1),
        ];
        for (text, line) in cases {
            match parse_instance(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(parse_instance("p maxqcut 2 0\n").is_err());
        assert!(parse_instance("p sumcol 2 0").is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("star.txt");
        let inst = parse_instance(STAR).unwrap();
        write_instance(&inst, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), STAR);
        assert_eq!(read_instance(&path).unwrap(), inst);
    }
}
