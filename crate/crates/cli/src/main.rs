use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use f1_core::blueprint::Budget;

use f1_cli::commands::{self, Outcome, QCountArgs};

/// Exact computations with pointed monoids, blueprints, q-analog counts and
/// tropical curves.
#[derive(Parser)]
#[command(name = "f1", version, about)]
struct Cli {
    /// Maximum derivation-chain length for congruence searches.
    #[arg(long, global = true)]
    budget_steps: Option<usize>,
    /// Maximum number of terms in intermediate sums.
    #[arg(long, global = true)]
    budget_terms: Option<u64>,
    /// Maximum monomial degree in intermediate sums.
    #[arg(long, global = true)]
    budget_degree: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prime spectrum of a monoid or blueprint definition as a poset.
    Spec {
        file: PathBuf,
        /// Definition to use (defaults to the first one).
        #[arg(long)]
        name: Option<String>,
        /// json, dot or text.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Point ranks and the rank space with torus classification.
    Rank {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Component group of the rank space under the recognized group law.
    Weyl {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Base extension to N, Z or Q as a presented algebra.
    Basechange {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
        /// n, z or q.
        #[arg(long, default_value = "z")]
        target: String,
    },
    /// Gauss binomials, GL orders, subspace enumeration and geometries.
    Qcount {
        /// n and k of the Gauss binomial.
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        gauss: Option<Vec<u32>>,
        /// Order of GL(n, F_q) as a polynomial in q.
        #[arg(long)]
        gl: Option<u32>,
        /// Limit at q = 1 of #GL(n)/(q-1)^n.
        #[arg(long)]
        limit_gl: Option<u32>,
        /// n, k and a prime p for subspace enumeration.
        #[arg(long, num_args = 3, value_names = ["N", "K", "P"])]
        grassmannian: Option<Vec<u64>>,
        /// n and a prime p for the subspace incidence geometry.
        #[arg(long, num_args = 2, value_names = ["N", "P"])]
        geometry: Option<Vec<u64>>,
        /// n for the k-subset limit geometry.
        #[arg(long)]
        limit_geometry: Option<usize>,
        /// Evaluate polynomials at this q.
        #[arg(long)]
        q: Option<u64>,
        /// text, tsv or dot (for geometries).
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// The zeta rational function of F_q(T), its series and place counts.
    Zeta {
        #[arg(long)]
        q: u64,
        /// Print series coefficients (closed form and Euler product) up to this degree.
        #[arg(long)]
        series: Option<u32>,
        /// Print place counts up to this degree.
        #[arg(long)]
        places: Option<u32>,
    },
    /// Balancing check for a curve definition.
    Balance {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Render a spectrum poset (same as spec with a dot default).
    Render {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value = "dot")]
        format: String,
    },
    /// Run the built-in verification battery.
    Selftest,
}

fn read(file: &PathBuf) -> Result<String, Outcome> {
    std::fs::read_to_string(file).map_err(|e| Outcome {
        code: commands::EXIT_INPUT,
        output: format!("error: cannot read {}: {}\n", file.display(), e),
    })
}

enum Source {
    Builtin(String),
    Text(String),
}

/// Nonexistent paths that name a built-in object (A<n>, P<n>, Gm<r>) select
/// that object; everything else is read as a DSL file.
fn builtin_or_read(file: &PathBuf) -> Result<Source, Outcome> {
    if !file.exists() {
        if let Some(s) = file.to_str() {
            if commands::builtin_scheme(s).is_some() {
                return Ok(Source::Builtin(s.to_string()));
            }
        }
    }
    read(file).map(Source::Text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut budget = Budget::default();
    if let Some(s) = cli.budget_steps {
        budget.max_chain = s;
    }
    if let Some(t) = cli.budget_terms {
        budget.max_terms = t;
    }
    if let Some(d) = cli.budget_degree {
        budget.max_degree = d;
    }

    let outcome = match &cli.command {
        Command::Spec { file, name, format } => match builtin_or_read(file) {
            Ok(Source::Builtin(obj)) => commands::cmd_spec_builtin(&obj, format),
            Ok(Source::Text(text)) => commands::cmd_spec(&text, name.as_deref(), format),
            Err(o) => o,
        },
        Command::Rank { file, name } => match read(file) {
            Ok(text) => commands::cmd_rank(&text, name.as_deref()),
            Err(o) => o,
        },
        Command::Weyl { file, name } => match read(file) {
            Ok(text) => commands::cmd_weyl(&text, name.as_deref(), &budget),
            Err(o) => o,
        },
        Command::Basechange { file, name, target } => match read(file) {
            Ok(text) => commands::cmd_basechange(&text, name.as_deref(), target),
            Err(o) => o,
        },
        Command::Qcount {
            gauss,
            gl,
            limit_gl,
            grassmannian,
            geometry,
            limit_geometry,
            q,
            format,
        } => {
            let args = QCountArgs {
                gauss: gauss.as_ref().map(|v| (v[0], v[1])),
                gl: *gl,
                limit_gl: *limit_gl,
                grassmannian: grassmannian
                    .as_ref()
                    .map(|v| (v[0] as usize, v[1] as usize, v[2])),
                geometry: geometry.as_ref().map(|v| (v[0] as usize, v[1])),
                limit_geometry: *limit_geometry,
                q: *q,
                format: format.clone(),
            };
            commands::cmd_qcount(&args)
        }
        Command::Zeta { q, series, places } => commands::cmd_zeta(*q, *series, *places),
        Command::Balance { file, name } => match read(file) {
            Ok(text) => commands::cmd_balance(&text, name.as_deref()),
            Err(o) => o,
        },
        Command::Render { file, name, format } => match builtin_or_read(file) {
            Ok(Source::Builtin(obj)) => commands::cmd_spec_builtin(&obj, format),
            Ok(Source::Text(text)) => commands::cmd_render(&text, name.as_deref(), format),
            Err(o) => o,
        },
        Command::Selftest => commands::cmd_selftest(),
    };
    print!("{}", outcome.output);
    ExitCode::from(outcome.code)
}
