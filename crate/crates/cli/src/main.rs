//! `circlequot`: block certificates, network builds, exports and degeneration sweeps.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 input error, 3 non-convergence.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{
    BuildArgs, CliError, DegenerateArgs, DumpBlockArgs, DumpNetworkArgs, GammaEArgs, Outcome, VerifyBlockArgs,
};

#[derive(Parser)]
#[command(name = "circlequot", version, about = "Exact PL limit sets of modular circle quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, serde::Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Exact certificates for the model block of size k.
    VerifyBlock(VerifyBlockArgs),
    /// Build a (weighted) network; optionally audit it or export its vertex cloud.
    #[command(visible_alias = "export")]
    Build(BuildArgs),
    /// Sweep ε = 2⁻¹…2⁻ᴺ degenerating a pattern onto a sub-pattern.
    Degenerate(DegenerateArgs),
    /// List Γ_e for one Farey edge.
    GammaE(GammaEArgs),
    /// Vertex table, terminals and core sets of the model block.
    DumpBlock(DumpBlockArgs),
    /// Blocks, placements and Ψ of a network.
    DumpNetwork(DumpNetworkArgs),
    /// Run one command described by a JSON config file.
    #[serde(skip)]
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn emit(o: &Outcome) -> Result<(), CliError> {
    match &o.out {
        Some(path) => std::fs::write(path, &o.text).map_err(|e| CliError::input(format!("{}: {e}", path.display()))),
        None => {
            let mut s = std::io::stdout().lock();
            s.write_all(o.text.as_bytes())
                .and_then(|_| s.flush())
                .map_err(|e| CliError::input(format!("stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::dispatch(cli.command).and_then(|o| {
        emit(&o)?;
        for note in &o.notes {
            eprintln!("{note}");
        }
        Ok(o.status)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
