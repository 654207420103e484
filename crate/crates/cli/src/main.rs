use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use cli::{
    asymptotics_report, cohomology_report, euler_table_report, growth_bound_report,
    growth_chart_report, growth_degrees_report, run_suite, CliError, CohomologyRequest,
    ComplexFamily, Format, ResultCache, Suite,
};

/// Cohomology of moduli spaces of curves in weights 13 and 15.
#[derive(Parser)]
#[command(name = "mgn", version)]
struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Emit JSON progress events on stderr.
    #[arg(long, global = true)]
    progress: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Equivariant Euler characteristics of the weight-15 part.
    Euler15 {
        #[command(subcommand)]
        command: EulerCommand,
    },
    /// Cohomology of one of the graph complexes.
    Cohomology(CohomologyArgs),
    /// Degrees where the cohomology of M_g grows exponentially.
    Growth {
        #[command(subcommand)]
        command: GrowthCommand,
    },
    /// Run consistency checks; exits with status 0 iff all pass.
    Check {
        /// Suites to run; all of them when omitted.
        #[arg(long = "suite", value_enum)]
        suites: Vec<Suite>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 18)]
    gmax: usize,
    #[arg(long, default_value_t = 6)]
    nmax: usize,
    /// First genus printed.
    #[arg(long)]
    gmin: Option<usize>,
    /// Print a single cell `G N` instead of the table.
    #[arg(long, num_args = 2, value_names = ["G", "N"])]
    cell: Option<Vec<usize>>,
    /// Allow tables beyond the soft size cap.
    #[arg(long)]
    force: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum EulerCommand {
    /// The table of Schur expansions for g <= gmax, n <= nmax.
    Table(TableArgs),
    /// A single cell.
    Cell { g: usize, n: usize },
    /// The constants of the large-genus asymptotics.
    Asymptotics {
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
        /// Genera at which to evaluate the main term.
        #[arg(long = "genus")]
        genera: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct CohomologyArgs {
    #[arg(long, value_enum)]
    family: ComplexFamily,
    /// Genus, or loop order for gc0.
    #[arg(long)]
    genus: usize,
    #[arg(long, default_value_t = 0)]
    markings: usize,
    /// Decompose into irreducible representations of the symmetric group.
    #[arg(long)]
    equivariant: bool,
    /// Marked half-edge truncation (b15 and c15).
    #[arg(long)]
    truncation: Option<usize>,
    /// Random parameter evaluations per rank (wt13).
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum GrowthCommand {
    Degrees {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    Chart {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Lower bound for dim H^{2g+k}(M_g).
    Bound {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn progress(enabled: bool, event: serde_json::Value) {
    if enabled {
        eprintln!("{event}");
    }
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let cache = ResultCache::from_env();
    let out = match cli.command {
        Command::Euler15 { command } => match command {
            EulerCommand::Table(a) => {
                let report = euler_table_report(a.gmax, a.nmax, a.force, &cache)?;
                match a.cell.as_deref() {
                    Some(&[g, n]) if g > a.gmax || n > a.nmax => {
                        return Err(CliError::Usage(format!(
                            "cell ({g}, {n}) lies outside gmax={}, nmax={}",
                            a.gmax, a.nmax
                        )))
                    }
                    Some(&[g, n]) => format!("{}\n", report.cell(g, n)),
                    _ => report.render(a.format, a.gmin)?,
                }
            }
            EulerCommand::Cell { g, n } => {
                let report = euler_table_report(g, n, true, &cache)?;
                format!("{}\n", report.cell(g, n))
            }
            EulerCommand::Asymptotics {
                tolerance,
                genera,
                format,
            } => asymptotics_report(tolerance, &genera)?.render(format)?,
        },
        Command::Cohomology(a) => {
            let req = CohomologyRequest {
                family: a.family,
                genus: a.genus,
                markings: a.markings,
                equivariant: a.equivariant,
                truncation: a.truncation,
                trials: a.trials,
            };
            cohomology_report(&req, &cache)?.render(a.format)?
        }
        Command::Growth { command } => match command {
            GrowthCommand::Degrees { format } => growth_degrees_report().render(format)?,
            GrowthCommand::Chart { format } => growth_chart_report().render(format)?,
            GrowthCommand::Bound {
                genus,
                degree,
                format,
            } => growth_bound_report(genus, degree).render(format)?,
        },
        Command::Check { suites, format } => {
            let suites = if suites.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suites
            };
            let mut lines = Vec::new();
            for s in suites {
                let start = Instant::now();
                progress(cli.progress, serde_json::json!({"event": "suite-start", "suite": s.name()}));
                lines.extend(run_suite(s));
                progress(
                    cli.progress,
                    serde_json::json!({
                        "event": "suite-done",
                        "suite": s.name(),
                        "seconds": start.elapsed().as_secs_f64(),
                    }),
                );
            }
            let ok = lines.iter().all(|l| l.passed);
            let out = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&serde_json::json!({
                        "schema_version": cli::SCHEMA_VERSION,
                        "kind": "check",
                        "passed": ok,
                        "checks": lines,
                    }))?;
                    s.push('\n');
                    s
                }
                Format::Text => {
                    let mut s: String = lines.iter().map(|l| l.render() + "\n").collect();
                    let failed = lines.iter().filter(|l| !l.passed).count();
                    s.push_str(&format!("{} checks, {failed} failed\n", lines.len()));
                    s
                }
                f => return Err(CliError::Usage(format!("check does not support --format {f:?}"))),
            };
            return Ok((out, ok));
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
