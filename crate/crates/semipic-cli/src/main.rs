//! Command-line interface for exact wall-and-chamber computations.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 mathematical-invariant violation.

use clap::{Parser, Subcommand};
use semipic::Error;
use semipic_cli::{document, suites, svg};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "semipic",
    version,
    about = "Exact wall-and-chamber structures of self-injective Nakayama algebras and tame hereditary quivers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Standard picture of the self-injective Nakayama algebra of rank r.
    Nakayama {
        /// Rank r, between 1 and 6.
        r: usize,
        /// Write the JSON document to a file instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Regular picture of a Euclidean quiver `n; i>j, i>j, ...`.
    Regular {
        quiver: String,
        /// Tube-table file for non-A-tilde quivers.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Render an SVG of the picture (sphere dimension at most 2).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Transport the regular picture along a mutation sequence.
    Mutate {
        quiver: String,
        /// Comma-separated vertex sequence, e.g. `2,4,2`.
        #[arg(long = "at")]
        at: String,
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        /// Suite name: counts, vectors, a2picture, thmA, thmB, thmC, fan,
        /// walls, figures, nulltransport, dualenum, props, all.
        #[arg(long)]
        suite: String,
        /// Quiver for quiver-specific suites.
        quiver: Option<String>,
        /// Nakayama rank for rank-specific suites.
        #[arg(long)]
        rank: Option<usize>,
        /// Seed for the randomized sampling suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::QuiverParse(_)
            | Error::TubeTableParse(_)
            | Error::MissingTubeTable
            | Error::NotEuclidean(_)
            | Error::Precondition(_)
            | Error::DimensionMismatch { .. }
            | Error::NotBrick
            | Error::NotRigid
            | Error::NotSrr(_)
            | Error::NotCluster
            | Error::NotExchangePair
            | Error::Infeasible
    )
}

fn exit_for(e: &Error) -> ExitCode {
    if usage_error(e) {
        ExitCode::from(2)
    } else {
        ExitCode::from(3)
    }
}

fn emit(doc: &document::PictureDocument, json: Option<PathBuf>) -> std::io::Result<()> {
    let text = document::to_json(doc);
    match json {
        Some(path) => std::fs::write(path, text),
        None => {
            println!("{}", text);
            Ok(())
        }
    }
}

fn read_table(path: &Option<PathBuf>) -> Result<Option<String>, ExitCode> {
    match path {
        None => Ok(None),
        Some(p) => std::fs::read_to_string(p).map(Some).map_err(|e| {
            eprintln!("error: cannot read tube table: {}", e);
            ExitCode::from(2)
        }),
    }
}

fn run() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Nakayama { r, json } => match document::nakayama_document(r) {
            Ok(doc) => {
                if emit(&doc, json).is_err() {
                    return ExitCode::from(2);
                }
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {}", e);
                exit_for(&e)
            }
        },
        Command::Regular {
            quiver,
            table,
            json,
            svg: svg_path,
        } => {
            let table = match read_table(&table) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let doc = match document::regular_document(&quiver, table.as_deref()) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return exit_for(&e);
                }
            };
            if let Some(path) = svg_path {
                match render_regular_svg(&quiver, table.as_deref()) {
                    Ok(text) => {
                        if std::fs::write(path, text).is_err() {
                            return ExitCode::from(2);
                        }
                    }
                    Err(e) => {
                        eprintln!("error: {}", e);
                        return exit_for(&e);
                    }
                }
            }
            if emit(&doc, json).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Command::Mutate {
            quiver,
            at,
            table,
            json,
        } => {
            let table = match read_table(&table) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let sequence: Result<Vec<usize>, _> = at
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<usize>())
                .collect();
            let Ok(sequence) = sequence else {
                eprintln!("error: bad mutation sequence {:?}", at);
                return ExitCode::from(2);
            };
            match document::mutate_document(&quiver, &sequence, table.as_deref()) {
                Ok(doc) => {
                    if emit(&doc, json).is_err() {
                        return ExitCode::from(2);
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {}", e);
                    exit_for(&e)
                }
            }
        }
        Command::Verify {
            suite,
            quiver,
            rank,
            seed,
        } => match suites::run_suite(&suite, seed, rank, quiver.as_deref()) {
            Ok(report) => {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
                if report.passed {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => {
                eprintln!("error: {}", e);
                exit_for(&e)
            }
        },
    }
}

fn render_regular_svg(quiver: &str, table: Option<&str>) -> semipic::Result<String> {
    let (model, td) = document::load_regular_model(quiver, table)?;
    let walls = semipic::tame::regular_walls(&model, &td);
    let clusters = semipic::srr::enumerate_clusters(&model, &td)?;
    let mut corners: Vec<(String, semipic::exactgeom::RatVec)> = Vec::new();
    for c in &clusters {
        for x in &c.modules {
            corners.push((
                format!("g0({})", x.name()),
                semipic::tame::g0(&model, &td.module_dim(*x)),
            ));
        }
        for p in &c.pplus {
            corners.push((format!("p{:?}", p.choice), p.vec.clone()));
        }
        for p in &c.pminus {
            corners.push((format!("-p{:?}", p.choice), -&p.vec));
        }
    }
    corners.sort();
    corners.dedup();
    svg::render_picture(&walls, &corners, &model.eta, Some(&model.g_eta))
}

fn main() -> ExitCode {
    run()
}
