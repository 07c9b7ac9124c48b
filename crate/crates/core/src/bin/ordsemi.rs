use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ordsemi::cli;
use ordsemi::decision::{all_ranges, sample, CrossOptions, Family};
use ordsemi::transform::{CAP_ENV, DEFAULT_CAP};
use ordsemi::{ChainPair, Error, SearchOptions, SemigroupIso, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "ordsemi", version, about = "Order-preserving transformation semigroups with restricted range")]
struct Args {
    /// Enumeration cap on semigroup order.
    #[arg(long, global = true, env = CAP_ENV, default_value_t = DEFAULT_CAP)]
    cap: usize,

    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List T_OP(X, X') in canonical order.
    Enumerate {
        instance: String,
        #[arg(long)]
        count_only: bool,
    },
    /// Render the adjusted chain.
    Adjusted { instance: String },
    /// Emit the partial graph of a map as DOT.
    Graph {
        instance: String,
        /// Image array, comma separated.
        #[arg(long)]
        image: String,
        /// Accept any map into the range, not only order-preserving ones.
        #[arg(long)]
        full: bool,
        /// Write DOT here instead of stdout.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// List K-classes, with λ tags for two-point ranges.
    Kclasses { instance: String },
    /// Decide isomorphism from the chain pairs.
    Decide { a: String, b: String },
    /// Search the Cayley tables for an isomorphism.
    Oracle {
        a: String,
        b: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Disable invariant coloring.
        #[arg(long)]
        no_pruning: bool,
    },
    /// Export the Cayley table as JSON.
    Cayley { instance: String },
    /// Cross-validate the decision procedure against the oracle, or check a
    /// stored isomorphism with --iso.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        #[arg(long, default_value_t = 2)]
        min_rank: usize,
        /// Add every k-th instance of size max_size + 1.
        #[arg(long)]
        sample_next: Option<usize>,
        /// JSON file with a list of instances, replacing the generated family.
        #[arg(long)]
        instances: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Include agreeing pairs in the report.
        #[arg(long)]
        all: bool,
        /// SemigroupIso JSON to check between the two given instances.
        #[arg(long, requires_all = ["a", "b"])]
        iso: Option<PathBuf>,
        a: Option<String>,
        b: Option<String>,
    },
}

fn run(args: Args) -> Result<(String, i32), Error> {
    let cap = args.cap;
    let json = args.json;
    match args.command {
        Command::Enumerate { instance, count_only } => {
            Ok((cli::enumerate(&cli::parse_instance(&instance)?, cap, count_only, json)?, 0))
        }
        Command::Adjusted { instance } => Ok((cli::adjusted(&cli::parse_instance(&instance)?, json), 0)),
        Command::Graph { instance, image, full, dot } => {
            let pair = cli::parse_instance(&instance)?;
            let g = cli::graph(&pair, cli::parse_list(&image)?, full)?;
            let text = g.to_dot();
            match dot {
                Some(path) => {
                    std::fs::write(&path, text)
                        .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
                    Ok((format!("{} components\n", g.component_count()), 0))
                }
                None => Ok((text, 0)),
            }
        }
        Command::Kclasses { instance } => Ok((cli::kclasses(&cli::parse_instance(&instance)?, cap, json)?, 0)),
        Command::Decide { a, b } => Ok((cli::decide(&cli::parse_instance(&a)?, &cli::parse_instance(&b)?), 0)),
        Command::Oracle { a, b, budget, no_pruning } => {
            let search = SearchOptions { budget, pruning: !no_pruning };
            Ok((cli::oracle(&cli::parse_instance(&a)?, &cli::parse_instance(&b)?, cap, search)?, 0))
        }
        Command::Cayley { instance } => Ok((cli::cayley(&cli::parse_instance(&instance)?, cap)?, 0)),
        Command::Verify { max_size, min_size, min_rank, sample_next, instances, budget, all, iso, a, b } => {
            if let Some(path) = iso {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
                let m: SemigroupIso = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                let a = cli::parse_instance(a.as_deref().unwrap())?;
                let b = cli::parse_instance(b.as_deref().unwrap())?;
                return cli::verify_mapping(&a, &b, &m, cap);
            }
            let family = match instances {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
                    let list: Vec<ChainPair> =
                        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                    Family::Explicit(list)
                }
                None => {
                    let mut list = Family::All { min_size, max_size, min_rank }.expand();
                    if let Some(step) = sample_next {
                        list.extend(sample(&all_ranges(max_size + 1, min_rank), step, 0));
                    }
                    Family::Explicit(list)
                }
            };
            let opts = CrossOptions { cap, search: SearchOptions { budget, pruning: true }, keep_all: all };
            cli::verify_family(&family, opts, json)
        }
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
