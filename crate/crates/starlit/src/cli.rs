//! Command-line surface for the `starlit` binary.
//!
//! Exit codes: 0 success, 1 semantic failure (an invalid coloring or a
//! failing fuzz run), 2 bad input, 3 internal invariant failure.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::colorer::{self, ListAssignment};
use crate::error::{Error, Result};
use crate::format;
use crate::fuzz::{self, FuzzConfig};
use crate::gen;
use crate::multigraph::Multigraph;
use crate::oracle;
use crate::verifier;

#[derive(Parser)]
#[command(
    name = "starlit",
    version,
    about = "Star edge-coloring of subcubic multigraphs from 7-color lists"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color a graph from per-edge lists and write the coloring.
    Color {
        /// Graph file.
        graph: PathBuf,
        /// Output coloring file; stdout when omitted.
        out: Option<PathBuf>,
        /// List assignment file.
        #[arg(long, conflicts_with = "uniform_k")]
        lists: Option<PathBuf>,
        /// Give every edge the palette {1..k} instead of a lists file.
        #[arg(long, value_name = "K")]
        uniform_k: Option<u32>,
        /// Dump the decomposition stages (cycles, connectors, leftover
        /// matching) to stderr.
        #[arg(long)]
        dump_cactus: bool,
    },
    /// Check a coloring file against a graph and optional lists.
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long)]
        lists: Option<PathBuf>,
    },
    /// Write a named or random graph to stdout.
    Gen {
        /// One of: named, random_cubic, random_subcubic.
        kind: String,
        /// Fixture name when kind is "named".
        name: Option<String>,
        /// Vertex count for the random kinds.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep parallel edges instead of rejecting them.
        #[arg(long)]
        allow_parallel: bool,
    },
    /// Compute the least uniform palette size that admits a coloring.
    ChiStar {
        graph: PathBuf,
        #[arg(long, default_value_t = 7)]
        max_k: u32,
    },
    /// Run randomized end-to-end instances and report the outcome.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
        #[arg(long, default_value_t = 21)]
        palette: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        allow_parallel: bool,
    },
}

/// Parses `std::env::args`, runs the command, and returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("{err}");
            match &err {
                Error::Input(_) | Error::Parse { .. } | Error::Io(_) => 2,
                Error::Internal { bundle, .. } => {
                    if let Some(bundle) = bundle {
                        match bundle.persist(&fuzz::diagnostics_dir()) {
                            Ok(path) => eprintln!("diagnostics bundle: {}", path.display()),
                            Err(e) => eprintln!("could not persist diagnostics: {e}"),
                        }
                    }
                    3
                }
            }
        }
    }
}

fn read_graph(path: &PathBuf) -> Result<Multigraph> {
    format::parse_graph(&fs::read_to_string(path)?)
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Color {
            graph,
            out,
            lists,
            uniform_k,
            dump_cactus,
        } => {
            let g = read_graph(&graph)?;
            let assignment = match (lists, uniform_k) {
                (Some(path), None) => format::parse_lists(&fs::read_to_string(&path)?, g.edge_count())?,
                (None, Some(k)) => ListAssignment::uniform_range(g.edge_count(), k),
                (None, None) => {
                    return Err(Error::Input(
                        "need either --lists <path> or --uniform-k <k>".into(),
                    ))
                }
                (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
            };
            let outcome = colorer::star_edge_color_list_traced(&g, &assignment)?;
            if dump_cactus {
                for line in &outcome.trace {
                    eprintln!("{line}");
                }
            }
            let text = format::coloring_to_string(&outcome.coloring);
            match out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Verify {
            graph,
            coloring,
            lists,
        } => {
            let g = read_graph(&graph)?;
            let c = format::parse_coloring(&fs::read_to_string(&coloring)?, g.edge_count())?;
            if let Some(path) = lists {
                let assignment = format::parse_lists(&fs::read_to_string(&path)?, g.edge_count())?;
                if !verifier::respects_lists(&c, &assignment)? {
                    println!("coloring leaves its lists");
                    return Ok(1);
                }
            }
            match verifier::find_violation(&g, &c)? {
                None => {
                    println!("valid");
                    Ok(0)
                }
                Some(v) => {
                    println!("{v}");
                    Ok(1)
                }
            }
        }
        Command::Gen {
            kind,
            name,
            n,
            seed,
            allow_parallel,
        } => {
            let g = match kind.as_str() {
                "named" => {
                    let name = name.ok_or_else(|| {
                        Error::Input("kind 'named' needs a graph name".into())
                    })?;
                    oracle::named(&name)
                        .ok_or_else(|| Error::Input(format!("unknown graph name '{name}'")))?
                }
                "random_cubic" | "random_subcubic" => {
                    let n = n.ok_or_else(|| {
                        Error::Input(format!("kind '{kind}' needs --n <vertices>"))
                    })?;
                    if kind == "random_cubic" {
                        gen::random_cubic(n, seed, allow_parallel)?
                    } else {
                        gen::random_subcubic(n, seed, allow_parallel)?
                    }
                }
                other => {
                    return Err(Error::Input(format!(
                        "unknown kind '{other}', expected named, random_cubic, or random_subcubic"
                    )))
                }
            };
            print!("{}", format::graph_to_string(&g));
            Ok(0)
        }
        Command::ChiStar { graph, max_k } => {
            let g = read_graph(&graph)?;
            match oracle::star_chromatic_index(&g, max_k)? {
                Some(k) => println!("{k}"),
                None => println!(">{max_k}"),
            }
            Ok(0)
        }
        Command::Fuzz {
            count,
            max_n,
            palette,
            seed,
            allow_parallel,
        } => {
            let config = FuzzConfig {
                instance_count: count,
                max_vertices: max_n,
                palette_size: palette,
                seed,
                allow_parallel,
            };
            let report = fuzz::run_fuzz(&config)?;
            print!("{report}");
            Ok(if report.failures() > 0 { 1 } else { 0 })
        }
    }
}
