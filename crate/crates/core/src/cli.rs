//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 parameter error,
//! 3 disconnected graph, 4 budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::counting::{
    count_orbits_l_with, count_orbits_lk, count_orbits_lk_unreduced, LengthCount, Method,
    OrbitCountReport,
};
use crate::error::Error;
use crate::graph::{CirculantGraph, StepList};
use crate::lattice::{basis, lattice_points, skipped_windings, LatticeBasis, OrbitClass, SkippedWinding};
use crate::oracle::{enumerate_orbits, verify_range};
use crate::words::{count_lyndon, list_lyndon};
use crate::{BUDGET_ENV, DEFAULT_BUDGET};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_PARAMETERS: u8 = 2;
pub const EXIT_DISCONNECTED: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Dot,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountMethod {
    Reduced,
    Unreduced,
}

#[derive(Debug, Parser)]
#[command(name = "circulant-orbits", version, about = "Count and enumerate primitive periodic orbits on circulant digraphs C_n(a,b)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Number of vertices
    #[arg(long)]
    n: u64,
    /// Smaller step size
    #[arg(long)]
    a: u64,
    /// Larger step size
    #[arg(long)]
    b: u64,
}

#[derive(Debug, Args)]
struct BudgetArg {
    /// Cap on brute-force candidates
    #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count primitive periodic orbits of a given length
    Count {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        length: u64,
        /// Restrict to one b-count
        #[arg(long)]
        bcount: Option<u64>,
        #[arg(long, value_enum, default_value = "reduced")]
        method: CountMethod,
        /// List winding numbers in range whose b-count is not an integer
        #[arg(long)]
        show_skipped: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Show the lattice basis and admissible (l, k, omega) classes
    Lattice {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        lmax: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Count or list Lyndon words with a fixed number of b letters
    Lyndon {
        #[arg(value_enum)]
        action: LyndonAction,
        #[arg(long)]
        length: u64,
        #[arg(long)]
        bcount: u64,
        /// Graph context n,a,b for step notation
        #[arg(long, value_delimiter = ',')]
        steps: Option<Vec<u64>>,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long, value_enum, default_value = "plain")]
        format: OutputFormat,
    },
    /// Enumerate periodic orbits by brute force, one JSON object per line
    Enumerate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        length: u64,
        #[arg(long)]
        bcount: Option<u64>,
        #[arg(long)]
        primitive_only: bool,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Compare every formula against brute force on all small graphs
    Verify {
        #[arg(long)]
        nmax: u64,
        #[arg(long)]
        lmax: u64,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Render C_n(s_1, ..., s_m) as a Graphviz digraph
    Graph {
        #[arg(long)]
        n: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        steps: Vec<u64>,
        #[arg(long, value_enum, default_value = "dot")]
        format: OutputFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LyndonAction {
    Count,
    List,
}

/// `count` output when no b-count is given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthCountOutput {
    #[serde(flatten)]
    pub counts: LengthCount,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<Vec<SkippedWinding>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeOutput {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub basis: LatticeBasis,
    pub matrix: [[i64; 2]; 2],
    pub points: Vec<OrbitClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LyndonCountOutput {
    pub l: u64,
    pub k: u64,
    pub count: crate::BigCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LyndonListOutput {
    pub l: u64,
    pub k: u64,
    pub words: Vec<String>,
}

enum Failure {
    Lib(Error),
    Format(&'static str, OutputFormat),
    Mismatch(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::DisconnectedGraph { .. } => EXIT_DISCONNECTED,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::NonIntegerResult(_) => EXIT_MISMATCH,
        _ => EXIT_PARAMETERS,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_PARAMETERS } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Format(cmd, f)) => {
            let _ = writeln!(err, "error: format {f:?} is not supported by `{cmd}`");
            EXIT_PARAMETERS
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_MISMATCH
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_MISMATCH
        }
    }
}

fn connected_graph(args: &GraphArgs) -> Result<CirculantGraph, Error> {
    let graph = CirculantGraph::new(args.n, args.a, args.b)?;
    graph.require_connected()?;
    Ok(graph)
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Count {
            graph,
            length,
            bcount,
            method,
            show_skipped,
            format,
        } => {
            let graph = connected_graph(&graph)?;
            let method = match method {
                CountMethod::Reduced => Method::Reduced,
                CountMethod::Unreduced => Method::Unreduced,
            };
            match bcount {
                Some(k) => {
                    let report = count_one_class(&graph, length, k, method)?;
                    match format {
                        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(&report)?)?,
                        OutputFormat::Plain => out.write_all(plain_report(&report).as_bytes())?,
                        f => return Err(Failure::Format("count", f)),
                    }
                }
                None => {
                    let counts = count_orbits_l_with(&graph, length, method)?;
                    let skipped = if show_skipped {
                        Some(skipped_windings(&graph, length)?)
                    } else {
                        None
                    };
                    let output = LengthCountOutput { counts, skipped };
                    match format {
                        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(&output)?)?,
                        OutputFormat::Plain => out.write_all(plain_length(&output).as_bytes())?,
                        f => return Err(Failure::Format("count", f)),
                    }
                }
            }
        }
        Command::Lattice { graph, lmax, format } => {
            let graph = connected_graph(&graph)?;
            let basis = basis(&graph)?;
            let points = lattice_points(&graph, lmax)?;
            let output = LatticeOutput {
                n: graph.n(),
                a: graph.a(),
                b: graph.b(),
                basis,
                matrix: basis.matrix_numerators(),
                points,
            };
            match format {
                OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(&output)?)?,
                OutputFormat::Csv => out.write_all(lattice_csv(&output).as_bytes())?,
                OutputFormat::Plain => out.write_all(lattice_plain(&output).as_bytes())?,
                f => return Err(Failure::Format("lattice", f)),
            }
        }
        Command::Lyndon {
            action,
            length,
            bcount,
            steps,
            budget,
            format,
        } => {
            let context = match steps.as_deref() {
                Some(&[n, a, b]) => Some(CirculantGraph::new(n, a, b)?),
                Some(other) => {
                    return Err(Error::RejectedParameters(format!(
                        "--steps needs n,a,b, got {other:?}"
                    ))
                    .into())
                }
                None => None,
            };
            match action {
                LyndonAction::Count => {
                    let count = count_lyndon(length, bcount)?;
                    match format {
                        OutputFormat::Plain => writeln!(out, "{count}")?,
                        OutputFormat::Json => writeln!(
                            out,
                            "{}",
                            serde_json::to_string(&LyndonCountOutput { l: length, k: bcount, count })?
                        )?,
                        f => return Err(Failure::Format("lyndon count", f)),
                    }
                }
                LyndonAction::List => {
                    let words: Vec<String> = list_lyndon(length, bcount, budget.budget)?
                        .iter()
                        .map(|w| match &context {
                            Some(g) => w.to_steps(g.a(), g.b()),
                            None => w.to_string(),
                        })
                        .collect();
                    match format {
                        OutputFormat::Plain => {
                            for w in &words {
                                writeln!(out, "{w}")?;
                            }
                        }
                        OutputFormat::Json => writeln!(
                            out,
                            "{}",
                            serde_json::to_string(&LyndonListOutput { l: length, k: bcount, words })?
                        )?,
                        f => return Err(Failure::Format("lyndon list", f)),
                    }
                }
            }
        }
        Command::Enumerate {
            graph,
            length,
            bcount,
            primitive_only,
            budget,
        } => {
            let graph = CirculantGraph::new(graph.n, graph.a, graph.b)?;
            if let Some(k) = bcount {
                if k > length {
                    return Err(Error::RejectedParameters(format!("b-count {k} exceeds length {length}")).into());
                }
            }
            let orbits = enumerate_orbits(&graph, length, bcount, budget.budget)?;
            let primitive = orbits.iter().filter(|o| o.is_primitive()).count();
            for orbit in orbits.iter().filter(|o| !primitive_only || o.is_primitive()) {
                writeln!(out, "{}", serde_json::to_string(&orbit.to_record(&graph))?)?;
            }
            writeln!(
                err,
                "{} orbits, {} primitive, {} nonprimitive",
                orbits.len(),
                primitive,
                orbits.len() - primitive
            )?;
        }
        Command::Verify { nmax, lmax, budget } => {
            let report = verify_range(nmax, lmax, budget.budget)?;
            writeln!(out, "{}", serde_json::to_string(&report)?)?;
            writeln!(
                err,
                "{} graphs, {} class cases, {} length cases, {} mismatches",
                report.graphs,
                report.class_cases.len(),
                report.length_cases.len(),
                report.mismatches
            )?;
            if !report.passed {
                return Err(Failure::Mismatch(report.first_counterexample.unwrap_or_default()));
            }
        }
        Command::Graph { n, steps, format } => {
            let steps = StepList::new(n, steps)?;
            match format {
                OutputFormat::Dot => out.write_all(to_dot(&steps).as_bytes())?,
                f => return Err(Failure::Format("graph", f)),
            }
        }
    }
    Ok(())
}

fn count_one_class(graph: &CirculantGraph, l: u64, k: u64, method: Method) -> Result<OrbitCountReport, Error> {
    let reduced = count_orbits_lk(graph, l, k)?;
    if method == Method::Unreduced && reduced.omega.is_some() {
        return count_orbits_lk_unreduced(graph, l, k);
    }
    Ok(OrbitCountReport { method, ..reduced })
}

fn plain_report(r: &OrbitCountReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "C_{}({},{})  l = {}  k = {}", r.n, r.a, r.b, r.l, r.k);
    match r.omega {
        None => {
            let _ = writeln!(s, "not a lattice point: no closed paths");
        }
        Some(omega) => {
            let _ = writeln!(s, "omega = {omega}");
            for t in &r.terms {
                let sign = if t.mu > 0 { '+' } else { '-' };
                match t.q {
                    Some(q) => {
                        let _ = writeln!(s, "  q = {q:<4} m = {:<4} {sign} {}", t.m, t.binomial);
                    }
                    None => {
                        let _ = writeln!(s, "  m = {:<4} {sign} {}", t.m, t.binomial);
                    }
                }
            }
        }
    }
    let _ = writeln!(s, "count = {}", r.count);
    s
}

fn plain_length(o: &LengthCountOutput) -> String {
    let c = &o.counts;
    let mut s = String::new();
    let _ = writeln!(s, "C_{}({},{})  l = {}", c.n, c.a, c.b, c.l);
    let _ = writeln!(s, "{:>8} {:>8}  count", "omega", "k");
    for r in &c.classes {
        let _ = writeln!(s, "{:>8} {:>8}  {}", r.omega.unwrap_or(0), r.k, r.count);
    }
    if let Some(skipped) = &o.skipped {
        for w in skipped {
            let _ = writeln!(
                s,
                "{:>8} {:>8}  skipped (non-integral b-count)",
                w.omega,
                format!("{}/{}", w.k_numerator, w.k_denominator)
            );
        }
    }
    let _ = writeln!(s, "total = {}", c.total);
    s
}

fn lattice_csv(o: &LatticeOutput) -> String {
    let b = &o.basis;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# C_{}({},{}) a'={} d'={} l0={} k0={} M=[[{},{}],[{},{}]]/{}",
        o.n, o.a, o.b, b.a_prime, b.d_prime, b.l0, b.k0,
        o.matrix[0][0], o.matrix[0][1], o.matrix[1][0], o.matrix[1][1], b.denominator
    );
    s.push_str("l,k,omega\n");
    for p in &o.points {
        let _ = writeln!(s, "{},{},{}", p.l, p.k, p.omega);
    }
    s
}

fn lattice_plain(o: &LatticeOutput) -> String {
    let b = &o.basis;
    let mut s = String::new();
    let _ = writeln!(s, "C_{}({},{})", o.n, o.a, o.b);
    let _ = writeln!(s, "basis (d',-a') = ({},{})  (l0,k0) = ({},{})", b.d_prime, -(b.a_prime as i64), b.l0, b.k0);
    let _ = writeln!(
        s,
        "M = 1/{} [[{}, {}], [{}, {}]]",
        b.denominator, o.matrix[0][0], o.matrix[0][1], o.matrix[1][0], o.matrix[1][1]
    );
    let _ = writeln!(s, "{:>6} {:>6} {:>6}", "l", "k", "omega");
    for p in &o.points {
        let _ = writeln!(s, "{:>6} {:>6} {:>6}", p.l, p.k, p.omega);
    }
    s
}

/// Graphviz text for `C_n(s_1, ..., s_m)`. Two-step graphs label bonds `a`
/// and `b`; larger step lists label bonds with the step size.
pub fn to_dot(steps: &StepList) -> String {
    let n = steps.n;
    let names: Vec<String> = steps
        .steps
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut dot = String::new();
    let _ = writeln!(dot, "digraph \"C_{}({})\" {{", n, names.join(","));
    if !steps.is_strongly_connected() {
        let _ = writeln!(dot, "  // not strongly connected");
    }
    let _ = writeln!(dot, "  layout=circo;");
    let _ = writeln!(dot, "  node [shape=circle];");
    for v in 0..n {
        let _ = writeln!(dot, "  {v} [label=\"{v}\"];");
    }
    for v in 0..n {
        for (i, &s) in steps.steps.iter().enumerate() {
            let label = match (steps.steps.len(), i) {
                (2, 0) => "a".to_string(),
                (2, _) => "b".to_string(),
                _ => s.to_string(),
            };
            let _ = writeln!(dot, "  {v} -> {} [label=\"{label}\"];", (v + s) % n);
        }
    }
    dot.push_str("}\n");
    dot
}
