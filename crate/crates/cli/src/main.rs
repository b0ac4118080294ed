//! `giv`: compare graphs by their minor-matrix invariants, print
//! certificates, generate benchmark instances and time them.
//!
//! Exit status: 0 presumed isomorphic, 1 non-isomorphic, 2 usage or input
//! error.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use giv_core::generators::{
    desarguesian_plane, dual_plane, miyazaki, random_graph, twisted_miyazaki,
};
use giv_core::oracle::is_isomorphic_bruteforce;
use giv_core::parallel::with_threads;
use giv_core::{certificate, certificate_verbose, compare_detailed, EngineConfig};

use giv_cli::bench;
use giv_cli::input::{read_graph, InputFormat};
use giv_cli::report::RunReport;

#[derive(Parser, Debug)]
#[command(
    name = "giv",
    version,
    about = "Minor-matrix graph invariants over prime fields"
)]
struct Cli {
    /// Worker threads for the per-prime fan-out (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct EngineArgs {
    /// Diagonal of the connection matrix (1 unless noted otherwise).
    #[arg(long)]
    diagonal: Option<i64>,
    /// Number of primes, counted up from 43969.
    #[arg(long, default_value_t = 72)]
    primes: usize,
    /// Rounds of the iterated comparison.
    #[arg(long, default_value_t = 2)]
    iterations: usize,
    /// Try a single-prime pass before the full run (default).
    #[arg(long, overrides_with = "no_quick")]
    quick: bool,
    /// Skip the single-prime pass.
    #[arg(long = "no-quick")]
    no_quick: bool,
}

impl EngineArgs {
    fn config(&self, default_diagonal: i64) -> EngineConfig {
        EngineConfig {
            diagonal: self.diagonal.unwrap_or(default_diagonal),
            prime_count: self.primes,
            iterations: self.iterations,
            quick_reject: !self.no_quick,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare two graphs.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, value_enum, default_value = "auto")]
        format: InputFormat,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the invariant certificate of one graph.
    Invariant {
        file: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, value_enum, default_value = "auto")]
        format: InputFormat,
        /// Include the sorted minor multisets.
        #[arg(long)]
        verbose: bool,
    },
    /// Write a generated instance (edge list, or incidence file for planes).
    Generate {
        #[command(subcommand)]
        family: Family,
        /// Output file (default: standard output).
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Time comparisons over a family of instances.
    Bench {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Exhaustive isomorphism search for graphs of at most 16 vertices.
    Oracle {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        format: InputFormat,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// CFI ladder with K rungs (20K vertices).
    Miyazaki { k: usize },
    /// The same ladder with rung T twisted.
    TwistedMiyazaki { k: usize, t: usize },
    /// Desarguesian plane PG(2,Q), Q a prime power up to 32.
    Pg { q: usize },
    /// Dual of PG(2,Q).
    PgDual { q: usize },
    /// G(N, P) random graph.
    Random {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// Ladders against their twists for K = 2, 4, ..., --max-n (diagonal 3 unless given).
    Miyazaki {
        #[arg(long = "max-n", default_value_t = 10)]
        max_n: usize,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long)]
        json: bool,
    },
    /// Desarguesian planes against their duals.
    Planes {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        orders: Vec<usize>,
        /// Largest order to run.
        #[arg(long = "max-n", default_value_t = 32)]
        max_n: usize,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long)]
        json: bool,
    },
    /// Random graphs against relabelled copies.
    Random {
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap on the vertex count.
        #[arg(long = "max-n")]
        max_n: Option<usize>,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long)]
        json: bool,
    },
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => Ok(print_out(text)?),
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Compare {
            a,
            b,
            engine,
            format,
            json,
        } => {
            let cfg = engine.config(1);
            let (g, h) = (read_graph(&a, format)?, read_graph(&b, format)?);
            let start = Instant::now();
            let comparison = compare_detailed(&g, &h, &cfg)?;
            let report = RunReport::new(&comparison, &cfg, start.elapsed().as_secs_f64() * 1e3);
            if json {
                print_out(&format!("{}\n", serde_json::to_string_pretty(&report)?))?;
            } else {
                print_out(&report.to_text())?;
            }
            Ok(report.exit_code())
        }
        Command::Invariant {
            file,
            engine,
            format,
            verbose,
        } => {
            let cfg = engine.config(1);
            let g = read_graph(&file, format)?;
            let text = if verbose {
                certificate_verbose(&g, &cfg)?
            } else {
                certificate(&g, &cfg)?
            };
            print_out(&text)?;
            Ok(0)
        }
        Command::Generate { family, output } => {
            let text = match family {
                Family::Miyazaki { k } => miyazaki(k)?.to_edge_list_text(),
                Family::TwistedMiyazaki { k, t } => twisted_miyazaki(k, t)?.to_edge_list_text(),
                Family::Pg { q } => desarguesian_plane(q)?.to_text(),
                Family::PgDual { q } => dual_plane(&desarguesian_plane(q)?)?.to_text(),
                Family::Random { n, p, seed } => random_graph(n, p, seed)?.to_edge_list_text(),
            };
            emit(output.as_deref(), &text)?;
            Ok(0)
        }
        Command::Bench { suite } => {
            let (rows, json) = match suite {
                Suite::Miyazaki {
                    max_n,
                    engine,
                    json,
                } => (bench::ladders(max_n, &engine.config(3))?, json),
                Suite::Planes {
                    orders,
                    max_n,
                    engine,
                    json,
                } => (bench::planes(&orders, max_n, &engine.config(1))?, json),
                Suite::Random {
                    n,
                    pairs,
                    seed,
                    max_n,
                    engine,
                    json,
                } => {
                    let n = max_n.map_or(n, |cap| n.min(cap));
                    (
                        bench::random_pairs(n, pairs, seed, &engine.config(1))?,
                        json,
                    )
                }
            };
            if json {
                print_out(&format!("{}\n", serde_json::to_string_pretty(&rows)?))?;
            } else {
                print_out(&bench::to_table(&rows))?;
            }
            Ok(0)
        }
        Command::Oracle { a, b, format } => {
            let (g, h) = (read_graph(&a, format)?, read_graph(&b, format)?);
            match is_isomorphic_bruteforce(&g, &h)? {
                Some(map) => {
                    let pairs: Vec<String> = map
                        .as_slice()
                        .iter()
                        .enumerate()
                        .map(|(u, v)| format!("{u}->{v}"))
                        .collect();
                    print_out(&format!("isomorphic: {}\n", pairs.join(" ")))?;
                    Ok(0)
                }
                None => {
                    print_out("not isomorphic\n")?;
                    Ok(1)
                }
            }
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `giv ... | head`) is not an error.
fn print_out(text: &str) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let threads = cli.threads.unwrap_or(0);
    if cli.threads == Some(0) {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    let result = with_threads(threads, || run(cli.command));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn quick_flags() {
        let cli = Cli::try_parse_from(["giv", "compare", "a", "b", "--no-quick"]).unwrap();
        let Command::Compare { engine, .. } = cli.command else {
            panic!()
        };
        assert!(!engine.config(1).quick_reject);
        let cli = Cli::try_parse_from(["giv", "compare", "a", "b"]).unwrap();
        let Command::Compare { engine, .. } = cli.command else {
            panic!()
        };
        assert!(engine.config(1).quick_reject);
        assert_eq!(engine.config(3).diagonal, 3);
    }
}
