mod commands;
mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pbent::suite::Level;
use serde::Serialize;

use commands::{AnalyzeFlags, Budget};
use error::{CliError, CliResult, EXIT_CHECK_FAILED, EXIT_USAGE};

/// Default spectrum budget: p^n up to 3^12.
const DEFAULT_BUDGET: u64 = 531_441;
/// Pairwise scans are quadratic in p^n.
const DEFAULT_PAIR_BUDGET: u64 = 6_561;

#[derive(Parser)]
#[command(
    name = "pbent",
    version,
    about = "Exact Walsh analysis of p-ary functions"
)]
struct Cli {
    /// Largest field size p^n accepted for spectrum work.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a function given as "p=.. n=.. f=Tr(...) + ...".
    Analyze {
        spec: String,
        /// Use the O(q^2) transform.
        #[arg(long)]
        naive: bool,
        /// Add derivative certificates (cubic-like, weak-regularity identities).
        #[arg(long)]
        certify: bool,
        /// Print the dual as a relative trace form.
        #[arg(long)]
        dual_form: bool,
        /// Include wall-clock timings (output is then not reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build one of the supported constructions.
    Construct {
        #[command(subcommand)]
        which: Construct,
    },
    /// Re-derive the class of every built-in catalog function.
    VerifyTable1 {
        #[arg(long)]
        json: bool,
    },
    /// Run seeded invariant checks; exits 1 if any fails.
    PropertySuite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "quick")]
        level: Level,
    },
    /// Print the Walsh spectrum as CSV, coordinates in the power basis of Z[w].
    Spectrum {
        spec: String,
        #[arg(long)]
        naive: bool,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Tr(x^{3^k+2} - x^{2*3^k+1} + b x^{3^j+1}) on F_{3^{4k}}.
    Trinomial {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
        #[arg(long, default_value_t = 1)]
        t: u64,
        #[arg(long)]
        analyze: bool,
    },
    /// Concatenate p^m bent slices, or with --pi build the special form.
    Concat {
        /// One function per line; line i is slice i.
        #[arg(long)]
        slices: PathBuf,
        /// Whitespace separated permutation of 0..p^d.
        #[arg(long)]
        pi: Option<PathBuf>,
        /// Field prefix for slice lines that omit one, e.g. "p=3 n=2".
        #[arg(long)]
        field: Option<String>,
        /// Include the truth table.
        #[arg(long)]
        values: bool,
    },
    /// Add q(x) = Tr(sum a_j x^{p^j+1}) to a weakly regular bent f.
    AddQuadratic {
        #[arg(long)]
        f: String,
        /// Comma separated a_0,a_1,..; entries are integers or g^e.
        #[arg(long)]
        a: Option<String>,
    },
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn run(cli: Cli) -> CliResult<i32> {
    let budget = Budget {
        spectrum: cli.budget,
        pairs: cli.budget.min(DEFAULT_PAIR_BUDGET),
    };
    let mut status = 0;
    let out = match cli.command {
        Command::Analyze {
            spec,
            naive,
            certify,
            dual_form,
            timings,
            seed,
        } => {
            let flags = AnalyzeFlags {
                naive,
                certify,
                dual_form,
                timings,
                seed,
            };
            json(&commands::analyze(&spec, flags, budget)?)
        }
        Command::Spectrum { spec, naive } => commands::spectrum_csv(&spec, naive, budget)?,
        Command::Construct { which } => match which {
            Construct::Trinomial { k, j, t, analyze } => json(&commands::construct_trinomial(
                k,
                j,
                t,
                analyze,
                AnalyzeFlags::default(),
                budget,
            )?),
            Construct::Concat {
                slices,
                pi,
                field,
                values,
            } => json(&commands::construct_concat(
                &slices,
                pi.as_deref(),
                field.as_deref(),
                values,
                budget,
            )?),
            Construct::AddQuadratic { f, a } => json(&commands::construct_add_quadratic(
                &f,
                a.as_deref(),
                budget,
            )?),
        },
        Command::VerifyTable1 { json: as_json } => {
            let rows = commands::verify_table1()?;
            if rows
                .iter()
                .any(|(_, r)| r.status == pbent::VerifyStatus::Mismatch)
            {
                status = EXIT_CHECK_FAILED;
            }
            if as_json {
                json(&rows.iter().map(|(_, r)| r).collect::<Vec<_>>())
            } else {
                commands::verify_table1_text(&rows)
            }
        }
        Command::PropertySuite { seed, level } => {
            let r = commands::property_suite(seed, level)?;
            if !r.passed {
                status = EXIT_CHECK_FAILED;
            }
            json(&r)
        }
    };
    let mut stdout = std::io::stdout().lock();
    let written = stdout.write_all(out.as_bytes()).and_then(|()| {
        if out.ends_with('\n') {
            Ok(())
        } else {
            stdout.write_all(b"\n")
        }
    });
    match written {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io {
            path: PathBuf::from("<stdout>"),
            source: e,
        }),
        _ => Ok(status),
    }
}

fn init_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("PBENT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .map_err(|_| CliError::Usage(format!("PBENT_THREADS must be a number, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let detail = e.render().to_string();
            let first = detail
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            let err = CliError::Usage(first.to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let result = init_threads().and_then(|()| run(cli));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
