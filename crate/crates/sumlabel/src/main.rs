use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context as _, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sumlabel_core::metrics::{self, SchemeId};
use sumlabel_core::search::{SearchConfig, SearchError, SearchResult};
use sumlabel_core::verify;
use sumlabel_core::{label_graph, GraphSpec};

use sumlabel::report::{BenchReport, DemoReport, LabelReport, SearchReport, VerifyReport};
use sumlabel::runner::{self, RunOptions};
use sumlabel::{document, fixtures};

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

/// Sum labellings of graphs with maximum degree two.
#[derive(Parser)]
#[command(name = "sumlabel", version)]
struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Label a graph such as "3C5+C4+2P3" with the optimal strategy.
    Label {
        spec: String,
        /// Print the construction steps.
        #[arg(long)]
        trace: bool,
    },
    /// Check a labelling document (from a file or stdin).
    Verify { file: Option<PathBuf> },
    /// Bounded search for the fewest isolates.
    Sigma {
        spec: String,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Bounded search for the smallest range, with the isolate count fixed
    /// to the bounded sum number or, with `--any-isolates`, left free.
    Spum {
        spec: String,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long)]
        any_isolates: bool,
    },
    /// Growth tables for the labelling schemes.
    Bench {
        /// One of kc4, c4-linexp, matching-exp, matching-arith, fib-path,
        /// fib-cycle, triangles; all when omitted.
        scheme: Option<String>,
        #[arg(long, default_value_t = 10)]
        up_to: usize,
    },
    /// Verify every published fixture and compare against its expected status.
    Demo,
}

#[derive(Args)]
struct Bounds {
    /// Largest label considered.
    #[arg(long, env = "SUMLABEL_MAX_LABEL", default_value_t = 45)]
    max_label: u32,
    /// Largest isolate count considered.
    #[arg(long, env = "SUMLABEL_MAX_ISOLATES", default_value_t = 3)]
    max_isolates: usize,
    /// Abort after this many search nodes.
    #[arg(long, env = "SUMLABEL_NODE_LIMIT")]
    node_limit: Option<u64>,
    /// Abort after this many seconds.
    #[arg(long, env = "SUMLABEL_TIME_LIMIT")]
    time_limit: Option<f64>,
    /// Include wall-clock time in the report (output is then not reproducible).
    #[arg(long)]
    timing: bool,
    /// Search on a single thread.
    #[arg(long)]
    sequential: bool,
}

impl Bounds {
    fn config(&self) -> SearchConfig {
        let mut cfg = SearchConfig::new(self.max_label, self.max_isolates);
        cfg.node_limit = self.node_limit;
        cfg
    }

    fn options(&self) -> Result<RunOptions> {
        let time_limit = match self.time_limit {
            Some(t) => Some(Duration::try_from_secs_f64(t).context("--time-limit must be a non-negative number of seconds")?),
            None => None,
        };
        Ok(RunOptions { time_limit, parallel: !self.sequential })
    }
}

fn emit<T: Serialize>(json: bool, report: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("reports serialize"));
    } else {
        print!("{}", text());
    }
}

fn parse_spec(spec: &str) -> Result<GraphSpec> {
    spec.parse().with_context(|| format!("cannot parse graph `{spec}`"))
}

fn search_exit(json: bool, command: &'static str, spec: &str, bounds: &Bounds, r: Result<SearchResult, SearchError>) -> Result<u8> {
    let r = match r {
        Ok(r) => r,
        Err(e @ (SearchError::BudgetExceeded { .. } | SearchError::Cancelled { .. })) => {
            eprintln!("sumlabel: {e}");
            return Ok(BUDGET);
        }
        Err(e) => return Err(e.into()),
    };
    let report = SearchReport::new(command, spec, bounds.max_label, bounds.max_isolates, &r, bounds.timing);
    emit(json, &report, || report.text());
    Ok(if report.found() { OK } else { NEGATIVE })
}

fn run(cli: Cli) -> Result<u8> {
    let json = cli.json;
    match cli.command {
        Command::Label { spec, trace } => {
            let parsed = parse_spec(&spec)?;
            let out = label_graph(&parsed)?;
            let report = LabelReport::new(&parsed.to_string(), &out);
            emit(json, &report, || report.text(trace));
            Ok(OK)
        }
        Command::Verify { file } => {
            let text = match &file {
                Some(path) => std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?,
                None => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let doc = document::parse(&text)?;
            let labelling = doc.labelling();
            let graph = doc.graph();
            let cert = verify::verify(&labelling, &graph);
            let c4 = if cert.is_valid() { verify::c4_structural_checks(&labelling, &graph) } else { Default::default() };
            let report = VerifyReport::new(labelling.vertices.len(), labelling.isolates.len(), &cert, &c4);
            emit(json, &report, || report.text());
            Ok(if report.valid && report.c4_checks.is_empty() { OK } else { NEGATIVE })
        }
        Command::Sigma { spec, bounds } => {
            let graph = parse_spec(&spec)?.realize();
            let r = runner::min_isolates(&graph, &bounds.config(), bounds.options()?);
            search_exit(json, "sigma", &spec, &bounds, r)
        }
        Command::Spum { spec, bounds, any_isolates } => {
            let parsed = parse_spec(&spec)?;
            let graph = parsed.realize();
            let floor = Some(metrics::range_lower_bound(&parsed) as u32);
            let (cfg, opts) = (bounds.config(), bounds.options()?);
            let r = if any_isolates {
                runner::min_range(&graph, &cfg, floor, opts)
            } else {
                match runner::min_isolates(&graph, &cfg, opts) {
                    Ok(s) => match s.found_isolates() {
                        Some(sigma) => runner::min_range_fixed_isolates(&graph, &cfg, sigma, floor, opts),
                        None => Ok(s),
                    },
                    Err(e) => Err(e),
                }
            };
            search_exit(json, "spum", &spec, &bounds, r)
        }
        Command::Bench { scheme, up_to } => {
            let ids = match scheme {
                Some(name) => vec![name.parse::<SchemeId>()?],
                None => SchemeId::ALL.to_vec(),
            };
            let reports = ids
                .into_iter()
                .map(|id| Ok(BenchReport::new(id.name(), &metrics::growth_table(id, id.min_param()..=up_to.max(id.min_param()))?)))
                .collect::<Result<Vec<_>>>()?;
            emit(json, &reports, || reports.iter().map(|r| r.text()).collect::<Vec<_>>().join("\n"));
            Ok(OK)
        }
        Command::Demo => {
            let report = DemoReport::new(&fixtures::all());
            emit(json, &report, || report.text());
            Ok(if report.ok { OK } else { NEGATIVE })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("sumlabel: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
