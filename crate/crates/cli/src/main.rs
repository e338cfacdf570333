//! `upo`: check, search and generate upward planar edge orders.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use upward_order::{
    count_upos, diff_definitions, enumerate_upos, find_upo, fixture, gen_random_dag,
    gen_upward_planar, parse_graph, parse_order, serialize_graph, serialize_order, to_dot,
    Checker, Definition, DiffMode, GenParams, Graph, SearchConfig, SearchError,
};

#[derive(Parser)]
#[command(name = "upo", version, about = "Upward planar edge orders on DAGs")]
struct Cli {
    /// Declare undeclared edge endpoints instead of rejecting the graph file.
    #[arg(long, global = true)]
    lax: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DefArg {
    U,
    Q,
    Both,
}

impl From<DefArg> for Definition {
    fn from(d: DefArg) -> Self {
        match d {
            DefArg::U => Definition::Hull,
            DefArg::Q => Definition::Betweenness,
            DefArg::Both => Definition::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchDef {
    U,
    Q,
}

#[derive(Subcommand)]
enum Command {
    /// Check an order against a graph.
    Check {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        #[arg(short = 'o', long = "order")]
        order: PathBuf,
        #[arg(long = "def", value_enum, default_value = "both")]
        def: DefArg,
        #[arg(long = "max-violations", default_value_t = upward_order::validate::DEFAULT_MAX_VIOLATIONS)]
        max_violations: usize,
    },
    /// Find the lexicographically least upward planar order.
    Solve {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        #[arg(long = "def", value_enum, default_value = "u")]
        def: SearchDef,
        #[arg(long = "budget", value_parser = clap::value_parser!(u64).range(1..))]
        budget: Option<u64>,
    },
    /// List upward planar orders in lexicographic order.
    Enum {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        #[arg(long = "limit")]
        limit: Option<usize>,
    },
    /// Count upward planar orders.
    Count {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
    },
    /// Compare the two characterisations over permutations of the edges.
    Diff {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        /// Test every permutation (the default).
        #[arg(long, conflicts_with_all = ["samples", "seed"])]
        exhaustive: bool,
        #[arg(long, requires = "seed")]
        samples: Option<u64>,
        #[arg(long, requires = "samples")]
        seed: Option<u64>,
        /// Largest edge count accepted in exhaustive mode.
        #[arg(long = "max-edges", default_value_t = upward_order::search::DEFAULT_EXHAUSTIVE_CAP)]
        max_edges: usize,
    },
    /// Generate a graph.
    Gen(GenArgs),
    /// Export a graph, optionally labelled with an order.
    Export {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        #[arg(short = 'o', long = "order")]
        order: Option<PathBuf>,
        #[arg(long, required = true)]
        dot: bool,
    },
    /// Print a named fixture graph with its reference orders as comments.
    Fixture {
        name: String,
        /// Print only the named reference order, as an order file.
        #[arg(long = "order")]
        order: Option<String>,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, conflicts_with = "upward")]
    random: bool,
    #[arg(short = 'n')]
    n: Option<usize>,
    #[arg(short = 'm')]
    m: Option<usize>,
    #[arg(long)]
    upward: bool,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long = "max-in")]
    max_in: Option<usize>,
    #[arg(long = "max-out")]
    max_out: Option<usize>,
    #[arg(long)]
    seed: u64,
    #[arg(long = "parallel-edges")]
    parallel_edges: bool,
}

const EXIT_INPUT: u8 = 2;

/// Output and exit status of a command that ran to a verdict.
struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path, lax: bool) -> Result<Graph, String> {
    let g = parse_graph(&read(path)?, lax).map_err(|e| format!("{}: {e}", path.display()))?;
    if !g.is_acyclic() {
        return Err(format!("{}: graph has a directed cycle", path.display()));
    }
    Ok(g)
}

fn search_err(e: SearchError) -> String {
    e.to_string()
}

fn run(cli: Cli) -> Result<Outcome, String> {
    let lax = cli.lax;
    match cli.command {
        Command::Check {
            graph,
            order,
            def,
            max_violations,
        } => {
            let g = load_graph(&graph, lax)?;
            let ord = parse_order(&read(&order)?, &g)
                .map_err(|e| format!("{}: {e}", order.display()))?;
            let verdict = Checker::new()
                .max_violations(max_violations)
                .validate(&ord, def.into())
                .map_err(|e| e.to_string())?;
            let mut out = String::from(if verdict.valid { "valid\n" } else { "invalid\n" });
            for v in &verdict.violations {
                writeln!(out, "{v}").unwrap();
            }
            if let Some(m) = verdict.mismatch {
                writeln!(
                    out,
                    "definition-mismatch hull={} betweenness={}",
                    m.hull_valid, m.betweenness_valid
                )
                .unwrap();
            }
            Ok(Outcome {
                stdout: out,
                code: if verdict.valid { 0 } else { 1 },
            })
        }
        Command::Solve { graph, def, budget } => {
            let g = load_graph(&graph, lax)?;
            let def = match def {
                SearchDef::U => Definition::Hull,
                SearchDef::Q => Definition::Betweenness,
            };
            let mut cfg = SearchConfig::new(def);
            cfg.node_budget = budget;
            match find_upo(&g, &cfg) {
                Ok(Some(ord)) => Ok(Outcome::ok(serialize_order(&ord))),
                Ok(None) => Ok(Outcome {
                    stdout: "none\n".into(),
                    code: 1,
                }),
                Err(SearchError::BudgetExhausted(_)) => Ok(Outcome {
                    stdout: "budget-exhausted\n".into(),
                    code: 3,
                }),
                Err(e) => Err(search_err(e)),
            }
        }
        Command::Enum { graph, limit } => {
            let g = load_graph(&graph, lax)?;
            let mut cfg = SearchConfig::default();
            cfg.limit = limit;
            let orders = enumerate_upos(&g, &cfg).map_err(search_err)?;
            Ok(Outcome::ok(orders.iter().map(serialize_order).collect()))
        }
        Command::Count { graph } => {
            let g = load_graph(&graph, lax)?;
            let n = count_upos(&g).map_err(search_err)?;
            Ok(Outcome::ok(format!("{n}\n")))
        }
        Command::Diff {
            graph,
            exhaustive: _,
            samples,
            seed,
            max_edges,
        } => {
            let g = load_graph(&graph, lax)?;
            let mode = match (samples, seed) {
                (Some(n), Some(seed)) => DiffMode::Sampled { n, seed },
                _ => DiffMode::Exhaustive { max_edges },
            };
            let report = diff_definitions(&g, mode).map_err(search_err)?;
            let mut out = format!(
                "{} orders, {} disagreements\n",
                report.orders_tested,
                report.disagreements.len()
            );
            for d in &report.disagreements {
                let ids: Vec<&str> = d.order.iter().map(|e| e.as_str()).collect();
                writeln!(
                    out,
                    "order {} hull={} betweenness={}",
                    ids.join(" "),
                    d.hull.valid,
                    d.betweenness.valid
                )
                .unwrap();
            }
            Ok(Outcome {
                stdout: out,
                code: if report.agreed() { 0 } else { 1 },
            })
        }
        Command::Gen(a) => {
            let missing = |flag: &str| format!("gen: {flag} is required");
            let g = match (a.random, a.upward) {
                (true, _) => gen_random_dag(
                    a.n.ok_or_else(|| missing("-n"))?,
                    a.m.ok_or_else(|| missing("-m"))?,
                    a.seed,
                    a.parallel_edges,
                ),
                (false, true) => gen_upward_planar(GenParams {
                    steps: a.steps.ok_or_else(|| missing("--steps"))?,
                    max_in: a.max_in.ok_or_else(|| missing("--max-in"))?,
                    max_out: a.max_out.ok_or_else(|| missing("--max-out"))?,
                    seed: a.seed,
                    allow_parallel: a.parallel_edges,
                }),
                (false, false) => return Err("gen needs --random or --upward".into()),
            }
            .map_err(|e| e.to_string())?;
            Ok(Outcome::ok(serialize_graph(&g)))
        }
        Command::Export { graph, order, dot: _ } => {
            let g = load_graph(&graph, lax)?;
            let ord = match &order {
                Some(p) => Some(parse_order(&read(p)?, &g).map_err(|e| format!("{}: {e}", p.display()))?),
                None => None,
            };
            Ok(Outcome::ok(to_dot(&g, ord.as_ref())))
        }
        Command::Fixture { name, order } => {
            let fx = fixture(&name).map_err(|e| e.to_string())?;
            let orders = fx.reference_orders(&fx.graph).map_err(|e| e.to_string())?;
            if let Some(want) = order {
                let (_, ord) = orders
                    .iter()
                    .find(|(n, _)| n.eq_ignore_ascii_case(&want))
                    .ok_or_else(|| format!("fixture {} has no order `{want}`", fx.name))?;
                return Ok(Outcome::ok(serialize_order(ord)));
            }
            let mut out = format!("# {}\n", fx.name);
            out.push_str(&serialize_graph(&fx.graph));
            for (n, ord) in &orders {
                write!(out, "# {n}: {}", serialize_order(ord)).unwrap();
            }
            Ok(Outcome::ok(out))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(msg) => {
            eprintln!("upo: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
