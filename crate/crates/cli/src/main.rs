use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bolkit::commands::{self, CommandOutput};
use bolkit::config::{Config, Settings};
use bolkit::{CliError, Outcome};

/// Finite loops, Bol loops and twisted subgroups.
///
/// Exit status: 0 when everything checked holds, 1 when a theorem check
/// fails on an instance, 2 on operational errors.
#[derive(Parser)]
#[command(name = "bolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of elements enumerated for any group.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Maximum loop order for subloop-lattice scans.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Timeout in seconds for exhaustive searches.
    #[arg(long, global = true)]
    timeout: Option<u64>,
    /// Config file (TOML); defaults to ./bolkit.toml when present.
    #[arg(long, global = true)]
    config: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a loop and print its property flags.
    Check { target: String },
    /// Full structural analysis of a loop.
    Analyze { target: String },
    /// Print the Cayley table of 𝓛(1/2) for a 2-divisible Bol loop.
    Bloop {
        target: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Print the loop induced by a group specification.
    Induced {
        spec: String,
        #[arg(short, long)]
        output: Option<String>,
        /// Print the table even when it is only a left loop.
        #[arg(long)]
        left_loop: bool,
    },
    /// List and export catalog entries.
    Catalog {
        #[command(subcommand)]
        action: Option<CatalogAction>,
    },
    /// Run a theorem-verification suite on catalog targets.
    Verify {
        /// lagrange, cauchy, hall, odd, rigidity, extension, transversal,
        /// bol, simple-obstruction or all.
        suite: String,
        /// Catalog ids, twisted fixture ids or Cayley files; all catalog
        /// entries when omitted.
        targets: Vec<String>,
        #[arg(long, default_value_t = 4)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List loop entries.
    List,
    /// Print the Cayley table of an entry.
    Show { id: String },
    /// List the elements of a group with their indices.
    Group { id: String },
    /// List twisted-subgroup fixtures.
    Twisted,
    /// Write every loop entry to a directory.
    Export { dir: String },
}

fn run(cli: Cli) -> Result<(CommandOutput, Outcome), CliError> {
    let flags = Settings { cap: cli.cap, subloop_bound: cli.bound, timeout: cli.timeout };
    let config = Config::load(flags, cli.config.as_deref())?;
    match cli.command {
        Command::Check { target } => commands::check(&target, cli.json, &config),
        Command::Analyze { target } => commands::analyze(&target, cli.json, &config),
        Command::Bloop { target, output } => commands::bloop(&target, output.as_deref(), &config),
        Command::Induced { spec, output, left_loop } => {
            commands::induced(&spec, output.as_deref(), left_loop, &config)
        }
        Command::Catalog { action } => match action.unwrap_or(CatalogAction::List) {
            CatalogAction::List => commands::catalog_list(cli.json, &config),
            CatalogAction::Show { id } => commands::catalog_show(&id, &config),
            CatalogAction::Group { id } => commands::catalog_group(&id, &config),
            CatalogAction::Twisted => commands::catalog_twisted(&config),
            CatalogAction::Export { dir } => commands::catalog_export(&dir, &config),
        },
        Command::Verify { suite, targets, jobs } => {
            commands::verify(&suite, &targets, jobs, cli.json, &config)
        }
    }
}

fn main() -> ExitCode {
    let outcome = match run(Cli::parse()) {
        Ok((out, outcome)) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            let _ = std::io::stderr().write_all(out.stderr.as_bytes());
            outcome
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_finding() {
                eprintln!("FINDING: this is a theorem violation, not an operational failure.");
            }
            Outcome::of_error(&e)
        }
    };
    ExitCode::from(outcome.code() as u8)
}
