use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use erection_core::format::{
    format_family, format_matroid, is_graph_text, parse_graph_text, parse_inline_sets,
    parse_matroid_text, parse_set_list,
};
use erection_core::{
    check_free_lc, check_log_concavity, erect_with, free_erection, minimize_bound, random_matroid,
    BetaOptions, BipartiteIncidence, ConcavityVariant, ErectionResult, Error, Matroid, SearchMode,
    SearchOptions,
};

/// Erections of simple matroids: free erections, Whitney-number checks,
/// coline bounds and point-line incidence graphs.
#[derive(Debug, Parser)]
#[command(name = "erection", version)]
struct Cli {
    /// Worker threads for the exhaustive searches (results do not depend on it).
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a copoint file describes a simple matroid.
    Validate { file: PathBuf },
    /// Print every flat, grouped by rank.
    Lattice { file: PathBuf },
    /// Print the Whitney numbers W_0..W_r.
    Whitney { file: PathBuf },
    /// Print the copoints of the free erection.
    Free { file: PathBuf },
    /// Erect relative to extra sets read from a file.
    Erect {
        file: PathBuf,
        #[arg(long = "add")]
        add: PathBuf,
    },
    /// Generate a random simple matroid by iterated random erection.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        intensity: f64,
    },
    /// Check a log-concavity inequality on the Whitney numbers.
    CheckLc {
        file: PathBuf,
        #[arg(long, default_value = "i")]
        variant: ConcavityVariant,
    },
    /// Check W_{r-1}^2 >= W_{r-2} * W_r(free erection).
    CheckFreeLc { file: PathBuf },
    /// Minimize the coline-count bound over relabelings.
    Bound {
        file: PathBuf,
        /// Defaults to exact for n <= 9, heuristic otherwise.
        #[arg(long)]
        mode: Option<SearchMode>,
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
    /// Count line subsets with property beta, or test one restriction.
    Beta {
        file: PathBuf,
        /// Lines to keep, e.g. "24,258,27" or "2 4; 2 5 8".
        #[arg(long)]
        restrict: Option<String>,
    },
    /// Compare beta with the points-lines-planes bound.
    PlpCheck { file: PathBuf },
    /// Emit the incidence graph in Graphviz format.
    Dot {
        file: PathBuf,
        #[arg(long)]
        restrict: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse_error() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn warn(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn load_matroid(path: &Path) -> Result<Matroid, Failure> {
    let text = read(path)?;
    if is_graph_text(&text) {
        return Ok(load_graph_text(&text)?.to_matroid()?);
    }
    let parsed = parse_matroid_text(&text)?;
    warn(&parsed.warnings);
    Ok(parsed.build()?)
}

fn load_graph_text(text: &str) -> Result<BipartiteIncidence, Failure> {
    let parsed = parse_graph_text(text)?;
    warn(&parsed.warnings);
    Ok(BipartiteIncidence::new(parsed.points, parsed.lines))
}

fn load_graph(path: &Path) -> Result<BipartiteIncidence, Failure> {
    let text = read(path)?;
    if is_graph_text(&text) {
        return load_graph_text(&text);
    }
    let parsed = parse_matroid_text(&text)?;
    warn(&parsed.warnings);
    Ok(BipartiteIncidence::from_rank3(&parsed.build()?)?)
}

fn restricted(
    g: BipartiteIncidence,
    restrict: Option<&str>,
) -> Result<BipartiteIncidence, Failure> {
    match restrict {
        None => Ok(g),
        Some(text) => {
            let n = g.points.max_element().unwrap_or(0).max(1);
            let lines = parse_inline_sets(text, n)?;
            Ok(g.restrict(&lines)?)
        }
    }
}

fn print_erection(r: &ErectionResult) -> String {
    format!(
        "trivial={}\ncount={}\n{}",
        r.trivial,
        r.copoint_count(),
        format_family(&r.new_copoints)
    )
}

fn run(cli: Cli) -> Outcome {
    let workers = cli.workers.max(1);
    match cli.command {
        Command::Validate { file } => {
            let m = load_matroid(&file)?;
            Ok(format!(
                "valid n={} rank={} copoints={}\n",
                m.n(),
                m.rank(),
                m.copoints().len()
            ))
        }
        Command::Lattice { file } => {
            let m = load_matroid(&file)?;
            let mut out = String::new();
            for (i, flats) in m.flats_by_rank().iter().enumerate() {
                let _ = writeln!(out, "rank {i}: {}", flats.len());
                out.push_str(&format_family(flats));
            }
            Ok(out)
        }
        Command::Whitney { file } => {
            let m = load_matroid(&file)?;
            let w: Vec<String> = m.whitney().iter().map(|x| x.to_string()).collect();
            Ok(format!("{}\n", w.join(" ")))
        }
        Command::Free { file } => Ok(print_erection(&free_erection(&load_matroid(&file)?))),
        Command::Erect { file, add } => {
            let m = load_matroid(&file)?;
            let (clutter, warnings) = parse_set_list(&read(&add)?, m.n())?;
            warn(&warnings);
            Ok(print_erection(&erect_with(&m, &clutter)?))
        }
        Command::Random { n, intensity } => {
            Ok(format_matroid(&random_matroid(n, cli.seed, intensity)?))
        }
        Command::CheckLc { file, variant } => {
            Ok(check_log_concavity(&load_matroid(&file)?, variant).to_string())
        }
        Command::CheckFreeLc { file } => Ok(check_free_lc(&load_matroid(&file)?)?.to_string()),
        Command::Bound { file, mode, budget } => {
            let m = load_matroid(&file)?;
            let mode = mode.unwrap_or(if m.n() <= 9 {
                SearchMode::Exact
            } else {
                SearchMode::Heuristic
            });
            let opts = SearchOptions {
                budget,
                seed: cli.seed,
                workers,
                ..SearchOptions::default()
            };
            Ok(minimize_bound(&m, mode, &opts)?.to_string())
        }
        Command::Beta { file, restrict } => {
            let g = load_graph(&file)?;
            match restrict {
                Some(text) => {
                    let sub = restricted(g, Some(&text))?;
                    let pts: Vec<String> = sub.points.iter().map(|p| p.to_string()).collect();
                    Ok(format!(
                        "points={}\n{}",
                        pts.join(" "),
                        sub.check_property_beta()
                    ))
                }
                None => {
                    let opts = BetaOptions {
                        workers,
                        ..BetaOptions::default()
                    };
                    Ok(format!("beta={}\n", g.beta_count(&opts)?))
                }
            }
        }
        Command::PlpCheck { file } => {
            let opts = BetaOptions {
                workers,
                ..BetaOptions::default()
            };
            Ok(load_graph(&file)?.plp_check(&opts)?.to_string())
        }
        Command::Dot { file, restrict } => {
            Ok(restricted(load_graph(&file)?, restrict.as_deref())?.to_dot())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
