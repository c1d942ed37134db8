//! Text formats for instances (`CPPLC 1`) and solutions (`CPPLC-SOL 1`).
//!
//! Instance file:
//!
//! ```text
//! CPPLC 1
//! <n> <m> <W>
//! <u> <v> <d> <q>      (m lines, edge id = line order)
//! ```
//!
//! Solution file:
//!
//! ```text
//! CPPLC-SOL 1
//! cost <decimal>
//! <m>
//! <edge_id> <dir>      (m lines)
//! ```
//!
//! Both use LF line endings and single spaces on output.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::{Edge, EdgeId, Instance};
use crate::tour::{DirectedEdge, DirectedTour, Direction};

pub const INSTANCE_MAGIC: &str = "CPPLC";
pub const INSTANCE_VERSION: u32 = 1;
pub const SOLUTION_MAGIC: &str = "CPPLC-SOL";
pub const SOLUTION_VERSION: u32 = 1;

/// A parsed solution file. The tour is not checked against any instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub cost: f64,
    pub seq: Vec<DirectedEdge>,
}

impl From<&DirectedTour> for Solution {
    fn from(t: &DirectedTour) -> Self {
        Solution {
            cost: t.cost,
            seq: t.seq.clone(),
        }
    }
}

pub fn write_instance_string(inst: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "{INSTANCE_MAGIC} {INSTANCE_VERSION}").unwrap();
    writeln!(
        out,
        "{} {} {}",
        inst.num_nodes(),
        inst.num_edges(),
        inst.curb_weight()
    )
    .unwrap();
    for e in inst.edges() {
        writeln!(out, "{} {} {} {}", e.u, e.v, e.length, e.demand).unwrap();
    }
    out
}

/// Parses and validates an instance.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = Lines::new(text);
    lines.header(INSTANCE_MAGIC, INSTANCE_VERSION)?;

    let (line, fields) = lines.expect_fields("instance size line", 3)?;
    let n: usize = parse_field(line, fields[0], "node count")?;
    let m: usize = parse_field(line, fields[1], "edge count")?;
    let w: f64 = parse_field(line, fields[2], "curb weight")?;

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, f) = lines.expect_fields("edge line", 4)?;
        edges.push(Edge::new(
            parse_field(line, f[0], "node id")?,
            parse_field(line, f[1], "node id")?,
            parse_field(line, f[2], "length")?,
            parse_field(line, f[3], "demand")?,
        ));
    }
    lines.expect_end()?;
    Instance::checked(n, edges, w)
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    parse_instance(&read_to_string(path.as_ref())?)
}

pub fn write_instance(inst: &Instance, path: impl AsRef<Path>) -> Result<()> {
    write_string(path.as_ref(), &write_instance_string(inst))
}

/// Formats a cost with at most six fractional digits, trailing zeros removed.
pub fn format_cost(cost: f64) -> String {
    let s = format!("{cost:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

pub fn write_solution_string(sol: &Solution) -> String {
    let mut out = String::new();
    writeln!(out, "{SOLUTION_MAGIC} {SOLUTION_VERSION}").unwrap();
    writeln!(out, "cost {}", format_cost(sol.cost)).unwrap();
    writeln!(out, "{}", sol.seq.len()).unwrap();
    for d in &sol.seq {
        writeln!(out, "{} {}", d.edge.0, d.dir.code()).unwrap();
    }
    out
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    let mut lines = Lines::new(text);
    lines.header(SOLUTION_MAGIC, SOLUTION_VERSION)?;

    let (line, f) = lines.expect_fields("cost line", 2)?;
    if f[0] != "cost" {
        return Err(parse_err(
            line,
            format!("expected `cost <value>`, found `{}`", f[0]),
        ));
    }
    let cost: f64 = parse_field(line, f[1], "cost")?;

    let (line, f) = lines.expect_fields("edge count line", 1)?;
    let m: usize = parse_field(line, f[0], "edge count")?;

    let mut seq = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, f) = lines.expect_fields("solution edge line", 2)?;
        let id: usize = parse_field(line, f[0], "edge id")?;
        let code: u8 = parse_field(line, f[1], "direction")?;
        let dir = Direction::from_code(code)
            .ok_or_else(|| parse_err(line, format!("direction must be 1 or 2, found {code}")))?;
        seq.push(DirectedEdge::new(EdgeId(id), dir));
    }
    lines.expect_end()?;
    Ok(Solution { cost, seq })
}

pub fn read_solution(path: impl AsRef<Path>) -> Result<Solution> {
    parse_solution(&read_to_string(path.as_ref())?)
}

pub fn write_solution(sol: &Solution, path: impl AsRef<Path>) -> Result<()> {
    write_string(path.as_ref(), &write_solution_string(sol))
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_string(path: &Path, s: &str) -> Result<()> {
    fs::write(path, s).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_field<T: FromStr>(line: usize, raw: &str, what: &str) -> Result<T> {
    raw.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{raw}`")))
}

/// Line cursor that skips blank lines and reports 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    fn next_nonblank(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (idx, raw) in self.inner.by_ref() {
            let fields: Vec<&str> = raw.split_whitespace().collect();
            if !fields.is_empty() {
                return Some((idx + 1, fields));
            }
        }
        None
    }

    fn expect_fields(&mut self, what: &str, count: usize) -> Result<(usize, Vec<&'a str>)> {
        let (line, fields) = self
            .next_nonblank()
            .ok_or_else(|| parse_err(0, format!("unexpected end of input, expected {what}")))?;
        if fields.len() != count {
            return Err(parse_err(
                line,
                format!("{what}: expected {count} fields, found {}", fields.len()),
            ));
        }
        Ok((line, fields))
    }

    fn header(&mut self, magic: &str, version: u32) -> Result<()> {
        let (line, f) = self.expect_fields("header", 2)?;
        if f[0] != magic {
            return Err(parse_err(
                line,
                format!(
                    "bad header: expected `{magic} {version}`, found `{}`",
                    f.join(" ")
                ),
            ));
        }
        if f[1] != version.to_string() {
            return Err(Error::Version {
                line,
                found: f[1].to_string(),
                expected: version,
            });
        }
        Ok(())
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.next_nonblank() {
            None => Ok(()),
            Some((line, _)) => Err(parse_err(line, "trailing data after last record")),
        }
    }
}
