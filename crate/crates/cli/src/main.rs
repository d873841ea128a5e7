use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use momentshell::commands::{cmd_criteria, cmd_jet, cmd_repvar, cmd_shell, cmd_torus, RepVarArgs};
use momentshell::corpus::cmd_corpus;
use momentshell::pipeline::TorusQuery;
use momentshell::report::Timer;
use momentshell::specfile::{load_criteria_input, load_module_spec, DEFAULT_SEED};
use momentshell::{CliError, Report};

#[derive(Parser)]
#[command(
    name = "momentshell",
    version,
    about = "Checks moment-map shells of reductive group modules"
)]
struct Cli {
    /// Add wall-clock runtimes to report records.
    #[arg(long, global = true)]
    timings: bool,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shell dimension, complete intersection, rank strata and 1-modularity.
    Shell {
        spec: PathBuf,
        /// Write the moment-map generators as plain-text polynomials.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Mustață inequality and fibre over the origin at jet levels.
    Jet {
        spec: PathBuf,
        /// Jet level; repeat for several. Defaults to `jet_levels` in the module file.
        #[arg(long = "level", short = 'm')]
        levels: Vec<usize>,
        /// Write the jet-scheme equations of the highest level as plain-text polynomials.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Torus computations on the weights of a maximal torus.
    Torus {
        spec: PathBuf,
        #[arg(value_enum)]
        query: Query,
    },
    /// Slice criteria from a module spec or a slice-quantity file.
    Criteria { input: PathBuf },
    /// Numerical dimension of the representation variety of a surface group.
    Repvar(RepvarCli),
    /// Runs corpus entries and compares them with their expected outcomes.
    Corpus(CorpusCli),
}

#[derive(Clone, Copy, ValueEnum)]
enum Query {
    M0,
    Modularity,
    Stability,
    Slices,
}

#[derive(Args)]
struct RepvarCli {
    #[arg(long, default_value_t = 2)]
    genus: usize,
    #[arg(long, default_value = "sl2")]
    group: String,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CorpusCli {
    /// Run every entry.
    #[arg(long)]
    all: bool,
    /// Run the entries with these ids.
    #[arg(long = "id")]
    ids: Vec<String>,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let timer = Timer { enabled: cli.timings };
    match &cli.command {
        Command::Shell { spec, export } => cmd_shell(&load_module_spec(spec)?, timer, export.as_deref()),
        Command::Jet { spec, levels, export } => {
            let spec = load_module_spec(spec)?;
            let levels = if levels.is_empty() {
                spec.options.jet_levels.clone()
            } else {
                levels.clone()
            };
            cmd_jet(&spec, &levels, timer, export.as_deref())
        }
        Command::Torus { spec, query } => {
            let query = match query {
                Query::M0 => TorusQuery::M0,
                Query::Modularity => TorusQuery::Modularity,
                Query::Stability => TorusQuery::Stability,
                Query::Slices => TorusQuery::Slices,
            };
            cmd_torus(&load_module_spec(spec)?, query, timer)
        }
        Command::Criteria { input } => cmd_criteria(&load_criteria_input(input)?, timer),
        Command::Repvar(a) => cmd_repvar(
            &RepVarArgs {
                genus: a.genus,
                group: a.group.clone(),
                samples: a.samples,
                seed: a.seed,
            },
            timer,
        ),
        Command::Corpus(c) => cmd_corpus(if c.all { &[] } else { &c.ids }, timer),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|report| {
        let json = report.to_json();
        match &cli.output {
            Some(path) => std::fs::write(path, json)?,
            None => print!("{json}"),
        }
        Ok(report.exit_code())
    });
    let code = match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
