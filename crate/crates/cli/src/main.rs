//! `kfe`: count, stream, verify, benchmark and profile independent-set
//! enumeration from the command line.
//!
//! Exit status is 0 on success, 1 when `verify` finds a disagreement and
//! 2 on any parse or configuration error.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use kfe_core::analysis::oracle::{BRUTE_FORCE_LIMIT, CLIQUE_LIMIT};
use kfe_core::analysis::{brute_force_independent_sets, clique_number, StatsReport};
use kfe_core::enumerator::stream::{BinarySink, TextSink};
use kfe_core::enumerator::{debug_checks_from_env, CountSink, DiffSink, Sink};
use kfe_core::{
    enumerate_linear_space, enumerate_reference, generate, parse_dimacs, parse_edge_list, replay_diffs, Family, Graph,
    LinearOptions, SolutionDiff, Vertex,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Dimacs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Count,
    Stream,
    Verify,
    Bench,
    Stats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Reference,
    Linear,
}

/// Enumerate every independent set of a graph.
#[derive(Debug, Parser)]
#[command(name = "kfe", version)]
struct Cli {
    /// Graph file, `-` for stdin.
    #[arg(long, conflicts_with = "gen")]
    input: Option<PathBuf>,
    /// Generator spec: empty:N complete:N path:N star:N grid:RxC gnp:N:P
    /// bipartite:L:R:P. Repeatable in bench mode, one row each.
    #[arg(long = "gen", value_parser = parse_family)]
    gen: Vec<Family>,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: Format,
    #[arg(long, value_enum, default_value = "count")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "linear")]
    engine: EngineArg,
    /// Stop after this many solutions.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    limit: Option<u64>,
    /// Write output here instead of stdout (stderr for reports).
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON instead of plain text or CSV.
    #[arg(long)]
    json: bool,
    /// Seed for random generators.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Binary diff stream (stream mode).
    #[arg(long)]
    binary: bool,
    /// One explicit solution per line instead of diffs (stream mode).
    /// Output may be as large as the number of solutions times n.
    #[arg(long, conflicts_with = "binary")]
    materialize: bool,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: kfe_core::error::GraphError| e.to_string())
}

enum Failure {
    Config(String),
    Mismatch(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(format!("i/o: {e}"))
    }
}

fn config(msg: impl Into<String>) -> Failure {
    Failure::Config(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("kfe: verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("kfe: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.mode == Mode::Bench {
        if cli.input.is_some() {
            return Err(config("bench mode takes --gen specs only"));
        }
        let mut out = open_out(cli, false)?;
        bench(cli, &mut out)?;
        out.flush()?;
        return Ok(());
    }
    let g = load_graph(cli)?;
    match cli.mode {
        Mode::Count => {
            let count = count(cli, &g)?;
            let mut out = open_out(cli, false)?;
            if cli.json {
                writeln!(out, "{}", serde_json::json!({ "solutions": count }))?;
            } else {
                writeln!(out, "{count}")?;
            }
            out.flush()?;
        }
        Mode::Stream => stream(cli, &g)?,
        Mode::Verify => verify(cli, &g)?,
        Mode::Stats => {
            if cli.engine == EngineArg::Reference {
                return Err(config("stats mode needs the linear engine"));
            }
            let report = stats(&g, cli.limit)?;
            let mut out = open_out(cli, true)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"))?;
            out.flush()?;
        }
        Mode::Bench => unreachable!(),
    }
    Ok(())
}

fn load_graph(cli: &Cli) -> Result<Graph, Failure> {
    match (&cli.input, cli.gen.as_slice()) {
        (Some(path), []) => {
            let mut text = String::new();
            if path.as_os_str() == "-" {
                io::stdin().read_to_string(&mut text)?;
            } else {
                text = std::fs::read_to_string(path)
                    .map_err(|e| config(format!("cannot read {}: {e}", path.display())))?;
            }
            match cli.format {
                Format::Edgelist => parse_edge_list(&text).map_err(|e| config(e.to_string())),
                Format::Dimacs => {
                    let d = parse_dimacs(&text).map_err(|e| config(e.to_string()))?;
                    for w in &d.warnings {
                        eprintln!("kfe: warning: {w}");
                    }
                    Ok(d.graph)
                }
            }
        }
        (None, [fam]) => generate(*fam, cli.seed).map_err(|e| config(e.to_string())),
        (None, []) => Err(config("one of --input or --gen is required")),
        _ => Err(config("exactly one input source is allowed outside bench mode")),
    }
}

/// Stdout, or stderr for reports, unless `--out` is given.
fn open_out(cli: &Cli, report: bool) -> Result<Box<dyn Write>, Failure> {
    Ok(match &cli.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| config(format!("cannot create {}: {e}", path.display())))?,
        )),
        None if report => Box::new(io::stderr().lock()),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn linear_options(collect_stats: bool) -> LinearOptions {
    LinearOptions { debug_checks: debug_checks_from_env(), collect_stats }
}

fn enumerate<S: Sink + ?Sized>(engine: EngineArg, g: &Graph, sink: &mut S) -> Result<(), Failure> {
    match engine {
        EngineArg::Reference => {
            enumerate_reference(g, sink);
        }
        EngineArg::Linear => {
            enumerate_linear_space(g, sink, &linear_options(false)).map_err(|e| Failure::Mismatch(e.to_string()))?;
        }
    }
    Ok(())
}

fn count(cli: &Cli, g: &Graph) -> Result<u64, Failure> {
    let mut sink = CountSink { count: 0, limit: cli.limit };
    enumerate(cli.engine, g, &mut sink)?;
    Ok(sink.count)
}

/// Prints each solution in push order, space separated; the empty set is
/// an empty line.
struct MaterializeSink<W: Write> {
    out: W,
    current: Vec<Vertex>,
    limit: Option<u64>,
    written: u64,
    error: Option<io::Error>,
}

impl<W: Write> Sink for MaterializeSink<W> {
    fn emit(&mut self, d: SolutionDiff) -> ControlFlow<()> {
        self.current.truncate(self.current.len().saturating_sub(d.pop));
        self.current.extend(d.push);
        let mut line = String::new();
        for (i, v) in self.current.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&v.to_string());
        }
        if let Err(e) = writeln!(self.out, "{line}") {
            self.error = Some(e);
            return ControlFlow::Break(());
        }
        self.written += 1;
        match self.limit {
            Some(l) if self.written >= l => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    }
}

fn stream(cli: &Cli, g: &Graph) -> Result<(), Failure> {
    let mut out = open_out(cli, false)?;
    let error = if cli.binary {
        let mut sink = BinarySink::new(&mut out, cli.limit);
        enumerate(cli.engine, g, &mut sink)?;
        sink.error
    } else if cli.materialize {
        let mut sink =
            MaterializeSink { out: &mut out, current: Vec::new(), limit: cli.limit, written: 0, error: None };
        enumerate(cli.engine, g, &mut sink)?;
        sink.error
    } else {
        let mut sink = TextSink::new(&mut out, cli.limit);
        enumerate(cli.engine, g, &mut sink)?;
        sink.error
    };
    if let Some(e) = error {
        return Err(e.into());
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport {
    n: usize,
    m: usize,
    solutions: u64,
    engines_agree: bool,
    /// Absent when the graph is too large for brute force.
    oracle_agrees: Option<bool>,
}

fn verify(cli: &Cli, g: &Graph) -> Result<(), Failure> {
    let limit = cli.limit.map(|l| l as usize);
    let mut reference = DiffSink { diffs: Vec::new(), limit };
    enumerate_reference(g, &mut reference);
    let mut linear = DiffSink { diffs: Vec::new(), limit };
    let opts = LinearOptions { debug_checks: true, collect_stats: false };
    let run = enumerate_linear_space(g, &mut linear, &opts).map_err(|e| Failure::Mismatch(e.to_string()))?;
    let engines_agree = reference.diffs == linear.diffs;

    let oracle_agrees = if g.n() <= BRUTE_FORCE_LIMIT && !run.aborted {
        let expected = brute_force_independent_sets(g).expect("within oracle limit");
        let sets = replay_diffs(linear.diffs.iter().copied()).map_err(|e| Failure::Mismatch(e.to_string()))?;
        let mut seen = std::collections::BTreeSet::new();
        let mut ok = true;
        for mut s in sets {
            s.sort_unstable();
            ok &= g.is_independent(&s) && seen.insert(s);
        }
        Some(ok && seen == expected)
    } else {
        None
    };

    let report =
        VerifyReport { n: g.n(), m: g.m(), solutions: linear.diffs.len() as u64, engines_agree, oracle_agrees };
    let mut out = open_out(cli, false)?;
    if cli.json {
        writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
    } else {
        let oracle = match oracle_agrees {
            Some(true) => "agree",
            Some(false) => "DISAGREE",
            None => "skipped",
        };
        let engines = if engines_agree { "agree" } else { "DISAGREE" };
        writeln!(out, "solutions {} engines {engines} oracle {oracle}", report.solutions)?;
    }
    out.flush()?;
    if !engines_agree {
        return Err(Failure::Mismatch("reference and linear streams differ".into()));
    }
    if oracle_agrees == Some(false) {
        return Err(Failure::Mismatch("solutions differ from brute force".into()));
    }
    Ok(())
}

fn omega_of(g: &Graph) -> Option<usize> {
    if g.n() > CLIQUE_LIMIT {
        return None;
    }
    clique_number(g).ok()
}

fn stats(g: &Graph, limit: Option<u64>) -> Result<StatsReport, Failure> {
    let mut sink = CountSink { count: 0, limit };
    let run =
        enumerate_linear_space(g, &mut sink, &linear_options(true)).map_err(|e| Failure::Mismatch(e.to_string()))?;
    Ok(StatsReport::build(&run.stats, g.n(), g.m(), omega_of(g), run.aborted))
}

#[derive(Debug, Serialize)]
struct BenchRow {
    family: String,
    n: usize,
    m: usize,
    #[serde(rename = "M")]
    solutions: u64,
    ops: u64,
    ops_per_solution: f64,
    peak_space: u64,
    omega: Option<usize>,
    q: Option<usize>,
}

const CSV_HEADER: &str = "family,n,m,M,ops,ops_per_solution,peak_space,omega,q";

fn bench(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    if cli.engine == EngineArg::Reference {
        return Err(config("bench mode measures the linear engine"));
    }
    let mut rows = Vec::new();
    for fam in &cli.gen {
        let g = generate(*fam, cli.seed).map_err(|e| config(e.to_string()))?;
        let mut sink = CountSink { count: 0, limit: cli.limit };
        match enumerate_linear_space(&g, &mut sink, &linear_options(false)) {
            Ok(run) => {
                let omega = omega_of(&g);
                rows.push(BenchRow {
                    family: fam.to_string(),
                    n: g.n(),
                    m: g.m(),
                    solutions: run.count,
                    ops: run.stats.ops,
                    ops_per_solution: run.stats.ops as f64 / run.count.max(1) as f64,
                    peak_space: run.stats.peak_space,
                    omega,
                    q: omega.map(|w| w + 1),
                });
            }
            // A failing row is reported and the suite goes on.
            Err(e) => eprintln!("kfe: {fam}: {e}"),
        }
    }
    if cli.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("rows serialize"))?;
        return Ok(());
    }
    writeln!(out, "{CSV_HEADER}")?;
    let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
    for r in &rows {
        writeln!(
            out,
            "{},{},{},{},{},{:.3},{},{},{}",
            r.family,
            r.n,
            r.m,
            r.solutions,
            r.ops,
            r.ops_per_solution,
            r.peak_space,
            opt(r.omega),
            opt(r.q)
        )?;
    }
    Ok(())
}
