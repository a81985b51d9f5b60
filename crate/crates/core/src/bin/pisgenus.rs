use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pisgenus::certcheck::check_files;
use pisgenus::classify::{summary_table, verify_instance};
use pisgenus::error::Result;
use pisgenus::genus::{genus_bounds, Budget, DEFAULT_NODES, DEFAULT_TIME_MS};
use pisgenus::graph::{export_graph, GraphFormat, LabeledGraph};
use pisgenus::pis::PisInstance;
use pisgenus::ring::{build_ring, enumerate_ideals, parse_ring_spec};
use pisgenus::suite::{load_manifest, run_suite, suite_failed, suite_summary};

/// Prime ideal sum graphs of finite commutative rings and their genus.
#[derive(Parser, Debug)]
#[command(name = "pisgenus", version)]
struct Cli {
    #[command(flatten)]
    budget: BudgetArgs,

    /// Re-check a certificate against a graph and exit.
    #[arg(long, num_args = 2, value_names = ["GRAPH", "CERT"])]
    verify_certificate: Option<Vec<PathBuf>>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Wall-clock limit per search stage, in milliseconds.
    #[arg(long, global = true, default_value_t = DEFAULT_TIME_MS)]
    budget_ms: u64,
    /// Node limit per search stage.
    #[arg(long, global = true, default_value_t = DEFAULT_NODES)]
    budget_nodes: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Suite cases run at once.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget { time_ms: Some(self.budget_ms), nodes: self.budget_nodes, seed: self.seed, ..Budget::default() }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ideal lattice of a ring, as JSON.
    Ideals { spec: String },
    /// The PIS graph of a ring.
    Graph {
        spec: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Certified genus bounds of a ring's PIS graph or of a graph file.
    Genus {
        #[arg(required_unless_present = "graph", conflicts_with = "graph")]
        spec: Option<String>,
        /// Graph file: JSON document or edge list.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Also write the certificate here.
        #[arg(long)]
        cert_out: Option<PathBuf>,
        /// Write the graph the bounds refer to.
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Compare the predicted genus class with certified bounds.
    Verify {
        spec: String,
        /// Write the full report here.
        #[arg(long)]
        cert_out: Option<PathBuf>,
        #[arg(long)]
        graph_out: Option<PathBuf>,
        /// Print the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Verify every case of a JSON manifest.
    Suite {
        manifest: PathBuf,
        /// Write all outcomes here as a JSON array.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Re-check a certificate against a graph.
    VerifyCertificate { graph: PathBuf, cert: PathBuf },
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialisable") + "\n"
}

fn check_certificate(graph: &Path, cert: &Path) -> Result<bool> {
    match check_files(graph, cert) {
        Ok(r) => {
            for s in &r.steps {
                eprintln!("{s}");
            }
            let upper = r.upper.map_or("unknown".to_string(), |u| u.to_string());
            println!("certificate ok: genus in [{}, {upper}], {} supporting certificate(s) ok", r.lower, r.supporting.len());
            Ok(true)
        }
        Err(e @ pisgenus::error::Error::Certificate(_)) => {
            println!("{e}");
            Ok(false)
        }
        Err(e) => Err(e),
    }
}

fn run(cli: Cli) -> Result<bool> {
    let budget = cli.budget.budget();
    if let Some(paths) = &cli.verify_certificate {
        return check_certificate(&paths[0], &paths[1]);
    }
    let Some(command) = cli.command else {
        eprintln!("nothing to do; see --help");
        return Ok(false);
    };
    match command {
        Command::Ideals { spec } => {
            let r = build_ring(&parse_ring_spec(&spec)?)?;
            let l = enumerate_ideals(&r);
            print!("{}", to_json(&l.to_document(&r)));
        }
        Command::Graph { spec, format } => {
            let inst = PisInstance::from_spec(&spec)?;
            let f = match format {
                Format::Dot => GraphFormat::Dot,
                Format::Json => GraphFormat::Json,
            };
            let mut out = export_graph(&inst.graph, f);
            if !out.ends_with('\n') {
                out.push('\n');
            }
            print!("{out}");
        }
        Command::Genus { spec, graph, cert_out, graph_out } => {
            let g = match (spec, graph) {
                (Some(s), _) => PisInstance::from_spec(&s)?.graph,
                (None, Some(p)) => LabeledGraph::parse_any(&std::fs::read_to_string(p)?)?,
                (None, None) => unreachable!("clap requires one"),
            };
            let bounds = genus_bounds(&g, &budget)?;
            let text = to_json(&bounds);
            if let Some(p) = cert_out {
                write(&p, &text)?;
            }
            if let Some(p) = graph_out {
                write(&p, &g.to_json())?;
            }
            print!("{text}");
        }
        Command::Verify { spec, cert_out, graph_out, json } => {
            let inst = PisInstance::from_spec(&spec)?;
            let report = verify_instance(&spec, &inst, &budget)?;
            if let Some(p) = cert_out {
                write(&p, &to_json(&report))?;
            }
            if let Some(p) = graph_out {
                write(&p, &inst.graph.to_json())?;
            }
            if json {
                print!("{}", to_json(&report));
            } else {
                print!("{}", summary_table(std::slice::from_ref(&report)));
                for n in &report.notes {
                    println!("  {n}");
                }
            }
            return Ok(!report.is_failure());
        }
        Command::Suite { manifest, cert_out } => {
            let cases = load_manifest(&manifest)?;
            let outcomes = run_suite(&cases, &budget, cli.budget.jobs)?;
            if let Some(p) = cert_out {
                write(&p, &to_json(&outcomes))?;
            }
            print!("{}", suite_summary(&outcomes));
            return Ok(!suite_failed(&outcomes));
        }
        Command::VerifyCertificate { graph, cert } => return check_certificate(&graph, &cert),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
