//! `knodel` command-line tool.
//!
//! Exit codes: 0 success, 1 an invariant violation was detected (a bound
//! sandwich breach, or a set that fails to dominate), 2 usage or input error.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use knodel_core::construct::{
    check_prime_power_preconditions, check_prime_preconditions, construct_prime,
    construct_prime_power, witnesses,
};
use knodel_core::exact::{DomGraph, Method, Solve};
use knodel_core::numtheory::{heuristic_sum, primes_below};
use knodel_core::par::Execution;
use knodel_core::records::{
    dimacs, edge_list, graph6, parse_graph, read_records, table_header, table_row,
    CertificateRecord, Record, RecordWriter,
};
use knodel_core::scan::{merge_records, scan_range_with, summarize, ScanOptions, ScanRecord};
use knodel_core::{best_bound, Budget, KnodelGraph, SolveOptions, VertexSet};

#[derive(Parser)]
#[command(name = "knodel", version, about = "Domination in Knödel graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    /// `n m` header then `u v` lines, 0-based
    Edges,
    Dimacs,
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanFormat {
    /// Line-delimited JSON records with a schema header
    Jsonl,
    /// Tab-separated table with fixed columns
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Bb,
    Exhaustive,
}

#[derive(clap::Args)]
struct BudgetArgs {
    /// Search node limit
    #[arg(long, default_value_t = 100_000_000)]
    max_nodes: u64,
    /// Wall-clock limit in seconds
    #[arg(long, default_value_t = 60.0)]
    max_secs: f64,
}

impl BudgetArgs {
    fn budget(&self) -> Result<Budget> {
        if !(self.max_secs.is_finite() && self.max_secs >= 0.0) {
            bail!("--max-secs must be a non-negative number");
        }
        Ok(Budget {
            max_nodes: self.max_nodes,
            max_time: Duration::from_secs_f64(self.max_secs),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit KG(n, degree)
    Gen {
        n: usize,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
        format: GraphFormat,
    },
    /// Lower and upper bounds on γ(KG_n)
    Bound {
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Build and certify the stride dominating sets for n
    Construct {
        n: u64,
        /// Odd prime; alone it selects the prime stride set
        #[arg(long)]
        p: Option<u64>,
        /// Exponent of p; 2 or more selects the prime power stride set
        #[arg(long, requires = "p")]
        k: Option<u32>,
    },
    /// Certify a vertex set, or every certificate record in a stream
    Verify {
        /// Order of the graph; taken from the records when `--set` is a stream
        n: Option<u64>,
        /// Comma or space separated list, a file holding one, or a record stream
        #[arg(long)]
        set: String,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Exact domination number
    Exact {
        /// Order of the Knödel graph (omit with --edges)
        n: Option<usize>,
        #[arg(long)]
        degree: Option<u32>,
        /// Solve a graph read from a file (edge list, DIMACS or graph6)
        #[arg(long, conflicts_with_all = ["n", "degree"])]
        edges: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MethodArg::Bb)]
        method: MethodArg,
        /// Largest order accepted by the chosen method
        #[arg(long)]
        ceiling: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Scan even n in a range
    Scan {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Run the exact oracle up to this order
        #[arg(long, default_value_t = 128)]
        oracle_max: u64,
        /// Run the oracle past --oracle-max (up to the solver limit)
        #[arg(long)]
        force_oracle: bool,
        /// Test the prime and prime power stride conjectures
        #[arg(long)]
        conjectures: bool,
        #[arg(long, value_enum, default_value_t = ScanFormat::Jsonl)]
        format: ScanFormat,
        /// Write records here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Merge with an earlier record stream, keeping conclusive results
        #[arg(long)]
        merge: Option<PathBuf>,
        /// Print a summary to stderr
        #[arg(long)]
        summary: bool,
        /// Slack threshold factor c in c·log2(n)
        #[arg(long, default_value_t = 1.0)]
        slack_factor: f64,
        /// Disable the parallel scan
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Σ φ(p-1)/(p(p-1)) over primes p < X
    HeuristicSum {
        #[arg(long)]
        limit: u64,
    },
}

enum Outcome {
    Clean,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<Outcome> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let outcome = match cmd {
        Command::Gen { n, degree, format } => {
            let g = KnodelGraph::build(n, degree)?;
            let edges = g.edges();
            let text = match format {
                GraphFormat::Edges => edge_list(n, &edges),
                GraphFormat::Dimacs => dimacs(n, &edges),
                GraphFormat::Graph6 => graph6(n, &edges) + "\n",
            };
            out.write_all(text.as_bytes())?;
            Outcome::Clean
        }
        Command::Bound { n, json } => {
            let b = best_bound(n)?;
            if json {
                serde_json::to_writer(&mut out, &b)?;
                writeln!(out)?;
            } else {
                writeln!(out, "n {n} degree {}", b.degree)?;
                writeln!(out, "lower berge {}", b.lower_berge)?;
                match b.lower_prop2 {
                    Some(l) => writeln!(out, "lower remainder {l}")?,
                    None => writeln!(out, "lower remainder -")?,
                }
                for u in &b.uppers {
                    match u.witness {
                        Some(w) => writeln!(out, "upper {} {} q={}", u.value, u.source.label(), w.value)?,
                        None => writeln!(out, "upper {} {}", u.value, u.source.label())?,
                    }
                }
                if let Some(g) = b.known_exact {
                    writeln!(out, "exact {g}")?;
                }
            }
            Outcome::Clean
        }
        Command::Construct { n, p, k } => {
            let results = match (p, k) {
                (Some(p), None | Some(1)) => vec![construct_prime(n, &check_prime_preconditions(n, p)?)?],
                (Some(p), Some(k)) => {
                    vec![construct_prime_power(n, &check_prime_power_preconditions(n, p, k)?)?]
                }
                (None, _) => {
                    let (primes, powers) = witnesses(n)?;
                    let mut all = Vec::new();
                    for w in &primes {
                        all.push(construct_prime(n, w)?);
                    }
                    for w in &powers {
                        all.push(construct_prime_power(n, w)?);
                    }
                    if all.is_empty() {
                        bail!("no witness licenses a construction for n = {n}");
                    }
                    all
                }
            };
            let mut w = RecordWriter::new(&mut out)?;
            let mut bad = false;
            for c in &results {
                let rec = CertificateRecord::from(c).verify()?;
                bad |= !rec.verdict.as_ref().is_some_and(|v| v.certificate.dominating);
                w.write(&Record::Certificate(rec))?;
            }
            if bad {
                Outcome::Violation
            } else {
                Outcome::Clean
            }
        }
        Command::Verify { n, set, degree } => {
            let records = load_sets(n, &set, degree)?;
            let mut w = RecordWriter::new(&mut out)?;
            let mut bad = false;
            for rec in records {
                let rec = rec.verify()?;
                bad |= !rec.verdict.as_ref().is_some_and(|v| v.certificate.dominating);
                w.write(&Record::Certificate(rec))?;
            }
            if bad {
                Outcome::Violation
            } else {
                Outcome::Clean
            }
        }
        Command::Exact {
            n,
            degree,
            edges,
            method,
            ceiling,
            budget,
        } => {
            let graph = match (n, edges) {
                (_, Some(path)) => {
                    let text = read_text(&path)?;
                    let (n, edges) = parse_graph(&text)?;
                    DomGraph::from_edges(n, &edges)?
                }
                (Some(n), None) => DomGraph::from_knodel(&KnodelGraph::build(n, degree)?),
                (None, None) => bail!("give an order n or --edges FILE"),
            };
            let mut opts = SolveOptions {
                budget: budget.budget()?,
                method: match method {
                    MethodArg::Bb => Method::BranchBound,
                    MethodArg::Exhaustive => Method::Exhaustive,
                },
                ..Default::default()
            };
            if let Some(c) = ceiling {
                opts.bb_ceiling = c;
                opts.exhaustive_ceiling = c;
            }
            match graph.solve(&opts)? {
                Solve::Exact(r) => serde_json::to_writer(&mut out, &r)?,
                Solve::Inconclusive(i) => serde_json::to_writer(&mut out, &i)?,
            }
            writeln!(out)?;
            Outcome::Clean
        }
        Command::Scan {
            from,
            to,
            oracle_max,
            force_oracle,
            conjectures,
            format,
            output,
            merge,
            summary,
            slack_factor,
            sequential,
            budget,
        } => {
            let opts = ScanOptions {
                oracle_max,
                force_oracle,
                conjectures,
                solve: SolveOptions {
                    budget: budget.budget()?,
                    ..Default::default()
                },
                execution: if sequential {
                    Execution::Sequential
                } else {
                    Execution::Parallel
                },
                ..Default::default()
            };
            let earlier = match &merge {
                Some(path) => load_scan_records(path)?,
                None => Vec::new(),
            };
            let sink: Box<dyn Write + '_> = match &output {
                Some(path) => Box::new(BufWriter::new(
                    fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
                )),
                None => Box::new(&mut out),
            };
            let mut emitter = Emitter::new(sink, format)?;
            let mut records = Vec::new();
            let mut write_err = None;
            scan_range_with(from, to, &opts, |r: ScanRecord| {
                if merge.is_none() && write_err.is_none() {
                    write_err = emitter.emit(&r).err();
                }
                records.push(r);
            })?;
            if let Some(e) = write_err {
                return Err(e.into());
            }
            if merge.is_some() {
                records = merge_records(earlier, records);
                for r in &records {
                    emitter.emit(r)?;
                }
            }
            emitter.finish()?;
            let s = summarize(&records, slack_factor);
            if summary {
                eprintln!("{s}");
            }
            if s.sandwich_violations.is_empty() {
                Outcome::Clean
            } else {
                eprintln!("sandwich violated at n = {:?}", s.sandwich_violations);
                Outcome::Violation
            }
        }
        Command::HeuristicSum { limit } => {
            writeln!(out, "{:.12}", heuristic_sum(limit))?;
            writeln!(out, "primes below {limit}: {}", primes_below(limit).len())?;
            Outcome::Clean
        }
    };
    out.flush()?;
    Ok(outcome)
}

/// Scan output in either format; headers are written on creation.
enum Emitter<W: Write> {
    Jsonl(RecordWriter<W>),
    Table(W),
}

impl<W: Write> Emitter<W> {
    fn new(mut sink: W, format: ScanFormat) -> io::Result<Self> {
        Ok(match format {
            ScanFormat::Jsonl => Emitter::Jsonl(RecordWriter::new(sink)?),
            ScanFormat::Table => {
                writeln!(sink, "{}", table_header())?;
                Emitter::Table(sink)
            }
        })
    }

    fn emit(&mut self, r: &ScanRecord) -> io::Result<()> {
        match self {
            Emitter::Jsonl(w) => w.write(&Record::Scan(Box::new(r.clone()))),
            Emitter::Table(w) => writeln!(w, "{}", table_row(r)),
        }
    }

    fn finish(self) -> io::Result<()> {
        match self {
            Emitter::Jsonl(w) => w.into_inner().flush(),
            Emitter::Table(mut w) => w.flush(),
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_scan_records(path: &Path) -> Result<Vec<ScanRecord>> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(read_records(io::BufReader::new(file))?
        .into_iter()
        .filter_map(|r| match r {
            Record::Scan(s) => Some(*s),
            _ => None,
        })
        .collect())
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|e| anyhow!("bad vertex {t:?}: {e}")))
        .collect()
}

/// `--set` is a record stream, a file holding a list, or an inline list.
fn load_sets(n: Option<u64>, set: &str, degree: Option<u32>) -> Result<Vec<CertificateRecord>> {
    let path = Path::new(set);
    let text = if path.is_file() {
        read_text(path)?
    } else {
        set.to_string()
    };
    if text.trim_start().starts_with('{') {
        let records: Vec<CertificateRecord> = read_records(text.as_bytes())?
            .into_iter()
            .filter_map(|r| match r {
                Record::Certificate(c) => Some(c),
                _ => None,
            })
            .collect();
        if records.is_empty() {
            bail!("no certificate records in {set}");
        }
        if let Some(n) = n {
            if let Some(r) = records.iter().find(|r| r.n != n) {
                bail!("record for n = {} does not match n = {n}", r.n);
            }
        }
        return Ok(records);
    }
    let n = n.ok_or_else(|| anyhow!("give the order n for a plain vertex list"))?;
    let g = KnodelGraph::build(n as usize, degree)?;
    let set = VertexSet::from_vertices(n as usize, parse_list(&text)?)?;
    Ok(vec![CertificateRecord::from_set(n, g.degree(), &set)])
}
