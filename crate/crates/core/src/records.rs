//! File formats: the line-delimited record stream, the flat scan table and
//! graph exports (plain edge list, DIMACS, graph6).
//!
//! A record stream starts with a header line
//! `{"schema":"knodel-records","version":1}` followed by one JSON object per
//! line, tagged by `"kind"`. The table starts with `# knodel-scan-table v1`
//! and a tab-separated column line.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::{Construction, ConstructionResult};
use crate::knodel::{GraphError, KnodelGraph, VertexSet};
use crate::scan::{OracleOutcome, ScanRecord, Summary};
use crate::verify::{certify, tight_set_check, BoundSource, Certificate, TightSetVerdict, VerifyError};

pub const STREAM_SCHEMA: &str = "knodel-records";
pub const STREAM_VERSION: u32 = 1;
pub const TABLE_SCHEMA: &str = "knodel-scan-table";
pub const TABLE_VERSION: u32 = 1;
pub const TABLE_COLUMNS: [&str; 11] = [
    "n", "degree", "witness", "lb_berge", "lb_prop2", "ub_best", "ub_src", "gamma", "conj1",
    "conj2", "slack",
];

#[derive(Debug, Error)]
pub enum RecordError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("stream has no schema header")]
    MissingHeader,
    #[error("schema {found:?} is not {expected:?}")]
    WrongSchema { found: String, expected: &'static str },
    #[error("schema version {found} is newer than supported version {supported}")]
    UnsupportedVersion { found: u32, supported: u32 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamHeader {
    pub schema: String,
    pub version: u32,
}

impl StreamHeader {
    pub fn current() -> Self {
        Self {
            schema: STREAM_SCHEMA.to_string(),
            version: STREAM_VERSION,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Certificate(CertificateRecord),
    Scan(Box<ScanRecord>),
    Summary(Box<Summary>),
}

/// Result of checking a certificate record's set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictBlock {
    #[serde(flatten)]
    pub certificate: Certificate,
    /// Present when the set has the tight size `n/(k+1)` and dominates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tight: Option<TightSetVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub n: u64,
    pub degree: u32,
    /// `None` for sets that did not come from a construction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    pub set: Vec<usize>,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictBlock>,
}

impl From<&ConstructionResult> for CertificateRecord {
    fn from(c: &ConstructionResult) -> Self {
        Self {
            n: c.n,
            degree: c.degree,
            construction: Some(c.construction),
            p: Some(c.witness.p),
            e: Some(c.witness.e),
            set: c.set.to_vec(),
            size: c.set.len(),
            verdict: None,
        }
    }
}

impl CertificateRecord {
    pub fn from_set(n: u64, degree: u32, set: &VertexSet) -> Self {
        Self {
            n,
            degree,
            construction: None,
            p: None,
            e: None,
            set: set.to_vec(),
            size: set.len(),
            verdict: None,
        }
    }

    pub fn vertex_set(&self) -> Result<VertexSet, GraphError> {
        VertexSet::from_vertices(self.n as usize, self.set.iter().copied())
    }

    /// Certifies the set against `KG(n, degree)` and attaches the verdict.
    pub fn verify(mut self) -> Result<Self, VerifyError> {
        let g = KnodelGraph::build(self.n as usize, Some(self.degree))?;
        let set = self.vertex_set()?;
        let certificate = certify(&g, &set)?;
        let tight = tight_set_check(&g, &set).ok();
        self.size = set.len();
        self.verdict = Some(VerdictBlock { certificate, tight });
        Ok(self)
    }
}

/// Writes the header, then one record per line.
pub struct RecordWriter<W: Write> {
    inner: W,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(mut inner: W) -> io::Result<Self> {
        serde_json::to_writer(&mut inner, &StreamHeader::current())?;
        inner.write_all(b"\n")?;
        Ok(Self { inner })
    }

    pub fn write(&mut self, record: &Record) -> io::Result<()> {
        serde_json::to_writer(&mut self.inner, record)?;
        self.inner.write_all(b"\n")
    }

    pub fn into_inner(self) -> W {
        self.inner
    }
}

/// Reads a record stream, checking the header. Blank lines are skipped.
pub fn read_records<R: BufRead>(reader: R) -> Result<Vec<Record>, RecordError> {
    let mut header = false;
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let json = |e| RecordError::Json { line: i + 1, source: e };
        if !header {
            let h: StreamHeader = serde_json::from_str(&line).map_err(json)?;
            if h.schema != STREAM_SCHEMA {
                return Err(RecordError::WrongSchema {
                    found: h.schema,
                    expected: STREAM_SCHEMA,
                });
            }
            if h.version > STREAM_VERSION {
                return Err(RecordError::UnsupportedVersion {
                    found: h.version,
                    supported: STREAM_VERSION,
                });
            }
            header = true;
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(json)?);
    }
    if !header {
        return Err(RecordError::MissingHeader);
    }
    Ok(out)
}

pub fn table_header() -> String {
    format!(
        "# {TABLE_SCHEMA} v{TABLE_VERSION}\n{}",
        TABLE_COLUMNS.join("\t")
    )
}

fn dash<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

/// One tab-separated row in [`TABLE_COLUMNS`] order.
pub fn table_row(r: &ScanRecord) -> String {
    let best = r.bounds.as_ref().and_then(|b| b.best());
    let witness = r
        .bounds
        .as_ref()
        .and_then(|b| b.uppers.iter().find(|u| u.witness.is_some()))
        .and_then(|u| u.witness.map(|w| (u.source, w)))
        .map(|(source, w)| match source {
            BoundSource::Prime => format!("p={}", w.p),
            _ => format!("{}^{}", w.p, w.e),
        });
    let gamma = match &r.oracle {
        OracleOutcome::Exact { gamma, .. } => gamma.to_string(),
        OracleOutcome::Inconclusive { lower, upper, .. } => format!("{lower}..{upper}"),
        _ => "-".to_string(),
    };
    let cols = [
        r.n.to_string(),
        r.degree.to_string(),
        dash(witness),
        dash(r.bounds.as_ref().map(|b| b.lower_berge)),
        dash(r.bounds.as_ref().and_then(|b| b.lower_prop2)),
        dash(best.map(|u| u.value)),
        dash(best.map(|u| u.source.label())),
        gamma,
        dash(r.conj1.as_ref().map(|c| c.verdict.label())),
        dash(r.conj2.as_ref().map(|c| c.verdict.label())),
        dash(r.conj3_slack),
    ];
    cols.join("\t")
}

/// `n m` on the first line, then `u v` per edge, 0-based.
pub fn edge_list(n: usize, edges: &[(usize, usize)]) -> String {
    let mut s = format!("{n} {}\n", edges.len());
    for (u, v) in edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// DIMACS `p edge` format, 1-based.
pub fn dimacs(n: usize, edges: &[(usize, usize)]) -> String {
    let mut s = format!("p edge {n} {}\n", edges.len());
    for (u, v) in edges {
        s.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    s
}

/// graph6 encoding (upper triangle, column by column, six bits per byte).
pub fn graph6(n: usize, edges: &[(usize, usize)]) -> String {
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut packed = vec![0u8; bits.div_ceil(6)];
    for &(a, b) in edges {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        if i == j {
            continue;
        }
        let k = j * (j - 1) / 2 + i;
        packed[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(packed.into_iter().map(|b| b + 63));
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

fn parse_err(line: usize, message: impl Into<String>) -> RecordError {
    RecordError::Parse {
        line,
        message: message.into(),
    }
}

/// Inverse of [`graph6`]; edges come out sorted with `u < v`.
pub fn parse_graph6(text: &str) -> Result<(usize, Vec<(usize, usize)>), RecordError> {
    let bytes = text.trim().as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, "graph6 bytes must lie in 63..=126"));
    }
    let take = |from: usize, count: usize| -> Result<usize, RecordError> {
        let chunk = bytes
            .get(from..from + count)
            .ok_or_else(|| parse_err(1, "truncated graph6 header"))?;
        Ok(chunk.iter().fold(0, |acc, &b| acc << 6 | (b - 63) as usize))
    };
    let (n, start) = match bytes {
        [126, 126, ..] => (take(2, 6)?, 8),
        [126, ..] => (take(1, 3)?, 4),
        [_, ..] => (take(0, 1)?, 1),
        [] => return Err(parse_err(1, "empty graph6 string")),
    };
    let body = &bytes[start..];
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(parse_err(1, format!("expected {} data bytes for n = {n}", bits.div_ceil(6))));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    Ok((n, edges))
}

/// Reads a graph as graph6 (a single token), DIMACS (`p edge n m` then
/// `e u v` lines, 1-based) or the plain list written by [`edge_list`].
/// Lines starting with `#` or `c` are comments.
pub fn parse_graph(text: &str) -> Result<(usize, Vec<(usize, usize)>), RecordError> {
    let data: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#') && !l.starts_with("c ") && *l != "c")
        .collect();
    let Some(&(first_line, first)) = data.first() else {
        return Err(parse_err(1, "no graph data"));
    };
    if data.len() == 1 && !first.contains(char::is_whitespace) {
        return parse_graph6(first);
    }
    let num = |line: usize, tok: Option<&str>| -> Result<usize, RecordError> {
        tok.ok_or_else(|| parse_err(line, "missing field"))?
            .parse()
            .map_err(|e| parse_err(line, format!("{e}")))
    };
    let dimacs = first.starts_with("p ");
    let mut head = first.split_whitespace();
    if dimacs {
        head.next();
        if head.next() != Some("edge") {
            return Err(parse_err(first_line, "expected `p edge n m`"));
        }
    }
    let n = num(first_line, head.next())?;
    let m = num(first_line, head.next())?;
    let mut edges = Vec::with_capacity(m);
    for &(line, l) in &data[1..] {
        let mut toks = l.split_whitespace();
        if dimacs && toks.next() != Some("e") {
            return Err(parse_err(line, "expected `e u v`"));
        }
        let (u, v) = (num(line, toks.next())?, num(line, toks.next())?);
        let (u, v) = if dimacs {
            if u == 0 || v == 0 {
                return Err(parse_err(line, "DIMACS vertices are 1-based"));
            }
            (u - 1, v - 1)
        } else {
            (u, v)
        };
        if u >= n || v >= n {
            return Err(parse_err(line, format!("vertex out of range for n = {n}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(
            first_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Ok((n, edges))
}
