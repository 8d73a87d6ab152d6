use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use epicox_cli::acceptance::run_acceptance;
use epicox_cli::commands;
use epicox_cli::theorem::{check_theorem, require_pass};
use epicox_cli::{CliError, ExitStatus, OutputFormat, RunConfig};

/// Graph epimorphisms and Coxeter groups: constructions, reconstruction and
/// exhaustive checks on small graphs.
#[derive(Parser, Debug)]
#[command(name = "epicox", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// Largest group enumerated before giving up (at least 240).
    #[arg(long, env = "EPICOX_ENUM_CAP", default_value_t = epicox::coxeter::DEFAULT_ENUM_CAP, global = true)]
    enum_cap: usize,
    /// Word-length radius for centralizer and conjugator searches.
    #[arg(long, default_value_t = epicox::reconstruction::DEFAULT_RADIUS, global = true)]
    radius: usize,
    /// Write output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply F: complement plus dominating base vertex.
    ReduceF { input: PathBuf },
    /// List generators and relators of G(C_Gamma).
    EmitPresentation { input: PathBuf },
    /// Print the Coxeter matrix of C_Gamma.
    BuildCoxeter { input: PathBuf },
    /// Conjugacy classes of S5 special subgroups of G(C_Gamma).
    KsClasses { input: PathBuf },
    /// Reconstruct K(G(C_Gamma)) with commuting-involution witnesses.
    KGraph { input: PathBuf },
    /// Check that G(L4) has the shape of S5.
    VerifyL4,
    /// Exhaustive functor check over pairs of small pointed graphs.
    CheckTheorem {
        #[arg(long, default_value_t = 3)]
        max_vertices: usize,
        /// Weaken the source relators to confirm the check notices.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Run the acceptance criteria.
    Acceptance,
}

impl Command {
    fn input(&self) -> Option<&Path> {
        match self {
            Command::ReduceF { input }
            | Command::EmitPresentation { input }
            | Command::BuildCoxeter { input }
            | Command::KsClasses { input }
            | Command::KGraph { input } => Some(input),
            _ => None,
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        return Ok(buf);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = cli.global;
    let mut config = RunConfig { radius: g.radius, enum_cap: g.enum_cap, format: g.format, ..RunConfig::default() };
    config.validate()?;
    if let Some(input) = cli.command.input() {
        config.inputs.push(input.to_path_buf());
    }
    let input = || read_input(&config.inputs[0]);
    let (output, verdict) = match &cli.command {
        Command::ReduceF { .. } => (commands::reduce_f(&input()?, config.format)?, Ok(())),
        Command::EmitPresentation { .. } => (commands::emit_presentation(&input()?, config.format)?, Ok(())),
        Command::BuildCoxeter { .. } => (commands::build_coxeter(&input()?, config.format)?, Ok(())),
        Command::KsClasses { .. } => (commands::ks_classes(&input()?, &config)?, Ok(())),
        Command::KGraph { .. } => (commands::k_graph(&input()?, &config)?, Ok(())),
        Command::VerifyL4 => (commands::verify_l4(&config)?, Ok(())),
        Command::CheckTheorem { max_vertices, inject_fault } => {
            let config = RunConfig { max_vertices: *max_vertices, ..config.clone() };
            let report = check_theorem(&config, *inject_fault)?;
            (report.render(config.format)?, require_pass(&report))
        }
        Command::Acceptance => {
            let report = run_acceptance(&config)?;
            let verdict = if report.passed() { Ok(()) } else { Err(CliError::falsified("acceptance criteria failed")) };
            (report.render(config.format)?, verdict)
        }
    };
    emit(&g.output, &output)?;
    verdict
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::internal(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::from(ExitStatus::Pass.code()),
        Err(err) => {
            let label = match err.status {
                ExitStatus::Falsified => "falsified",
                ExitStatus::Input => "input error",
                _ => "error",
            };
            eprintln!("epicox: {label}: {err}");
            ExitCode::from(err.status.code())
        }
    }
}
