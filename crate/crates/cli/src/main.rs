//! `suq2`: verification tables and CSV/JSON artifacts for harmonic analysis
//! on the quantum group `SU_q(2)`.
//!
//! Exit status: 0 when every exact identity held, 1 when one failed, 2 on a
//! usage or evaluation error.

mod commands;
mod config;
mod table;

use std::io::Write;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use suq2::calculus::CalculusKind;
use suq2::fourier::InequalityKind;

use config::{GlobalOpts, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "suq2", version, about = "Exact harmonic analysis on SU_q(2)")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum Check {
    Leibniz,
    Growth,
    Admissible,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Peter-Weyl orthogonality of matrix coefficients, exactly.
    Orthogonality,
    /// Hopf axioms and confluence of the rewriting system on random elements.
    Hopf {
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Fourier round trip and Plancherel on random polynomials.
    Fourier {
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Ratio of the two sides of a Fourier inequality on random polynomials.
    Inequality {
        /// One of hy, paley, hy-paley, hl, cor58.
        #[arg(long, value_parser = parse_kind)]
        kind: InequalityKind,
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Multiplier symbols: extraction and adjoints, or L^p bounds and seminorms.
    #[command(group(ArgGroup::new("mode").required(true).args(["bound", "extract"])))]
    Multiplier {
        #[arg(long)]
        bound: bool,
        #[arg(long)]
        extract: bool,
    },
    /// Eigenvalues of the Dirac operator and its spectral dimension.
    Spectrum {
        #[arg(long)]
        classify: bool,
    },
    /// Commutator norms of matrix coefficients with |D|.
    Commutator {
        /// Also write the full ratio table.
        #[arg(long)]
        scan: bool,
    },
    /// Three- and four-dimensional differential calculi.
    Calculus {
        #[arg(long, value_parser = parse_calculus)]
        kind: CalculusKind,
        #[arg(long, value_enum)]
        check: Check,
    },
    /// Spectrum of the spinor Dirac operator of the four-dimensional calculus.
    DiracGeometric {
        #[arg(long, required = true)]
        eigenvalues: bool,
    },
    /// Eigenvalues of the q-Laplacian by the θ route and the metric route.
    Laplacian {
        #[arg(long, required = true)]
        eigenvalues: bool,
    },
}

fn parse_kind(s: &str) -> Result<InequalityKind, String> {
    s.parse().map_err(|e: suq2::error::Error| e.to_string())
}

fn parse_calculus(s: &str) -> Result<CalculusKind, String> {
    s.parse().map_err(|e: suq2::error::Error| e.to_string())
}

fn run(cli: &Cli) -> Result<commands::Outcome, String> {
    let cfg = RunConfig::resolve(&cli.opts)?;
    match &cli.command {
        Command::Orthogonality => commands::orthogonality(&cfg),
        Command::Hopf { degree } => commands::hopf(&cfg, *degree),
        Command::Fourier { degree } => commands::fourier(&cfg, *degree),
        Command::Inequality { kind, degree } => commands::inequality(&cfg, *kind, *degree),
        Command::Multiplier { extract: true, .. } => commands::multiplier_extract(&cfg),
        Command::Multiplier { .. } => commands::multiplier_bound(&cfg),
        Command::Spectrum { classify } => commands::spectrum(&cfg, *classify),
        Command::Commutator { scan } => commands::commutator(&cfg, *scan),
        Command::Calculus { kind, check: Check::Leibniz } => commands::calculus_leibniz(&cfg, *kind),
        Command::Calculus { kind, check: Check::Growth } => commands::calculus_growth(&cfg, *kind),
        Command::Calculus { kind, check: Check::Admissible } => commands::calculus_admissible(&cfg, *kind),
        Command::DiracGeometric { .. } => commands::dirac_geometric(&cfg),
        Command::Laplacian { .. } => commands::laplacian(&cfg),
    }
    .map(|o| {
        let mut out = std::io::stdout().lock();
        for t in &o.tables {
            // a closed pipe only truncates the report
            let _ = out.write_all(t.render(cfg.format).as_bytes());
        }
        o
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) if o.exact_ok => ExitCode::SUCCESS,
        Ok(_) => {
            eprintln!("error: an exact identity failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
