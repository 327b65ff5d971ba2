use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use enriques::commands::{self, CliError, Outcome, PipelineConfig};
use enriques_core::seeker::Tolerances;

/// Rational curves on Enriques surfaces via double covers of P1 x P1.
///
/// Exit codes: 0 success, 1 domain failure (inadmissible input, failed
/// check, nothing found), 2 input error. Worker threads are set by
/// ENRIQUES_THREADS.
#[derive(Parser, Debug)]
#[command(name = "enriques", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a (4,4) branch curve is invariant, avoids the fixed points and is smooth.
    Check { branch: PathBuf },
    /// Contact profile of a curve against a branch curve, and the genus of its preimage.
    Tangency { branch: PathBuf, curve: PathBuf },
    /// Expected dimension of a logarithmic Severi variety on the quadric.
    SeveriDim {
        #[arg(long = "K", default_value = "-2,-2", allow_hyphen_values = true)]
        k: String,
        #[arg(long = "T", default_value = "4,4")]
        t: String,
        #[arg(long = "L")]
        l: String,
        #[arg(long, default_value_t = 0)]
        gamma: i64,
        /// alpha_1,alpha_2,...: number of contact points of each order.
        #[arg(long)]
        alpha: String,
    },
    /// Search for curves of class (1, m-1) with two simple contacts and 2m-1 tangencies.
    Seek {
        branch: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 500)]
        seeds: usize,
        /// Cap on the total number of Newton iterations.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        master_seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol_res: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol_jac: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol_cluster: f64,
        /// Draw starts on curves fixed by the involution.
        #[arg(long)]
        symmetric: bool,
        /// Directory for certificate and summary files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate file from scratch.
    Verify { certificate: PathBuf },
    /// phi-invariant of a class in U + E8(-1), given by 10 coordinates.
    Phi {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, default_value_t = 10)]
        radius: i64,
    },
    /// Lattice utilities.
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// The genus ladder k = 4m - 3 with its Severi data.
    Table {
        #[arg(long, default_value_t = 10)]
        m_max: u32,
    },
}

#[derive(Subcommand, Debug)]
enum LatticeCommand {
    /// Gram matrix of the lattice of an m-special surface.
    Hs {
        #[arg(long)]
        m: u32,
    },
    /// Exhaustive parity and congruence check over a coordinate box.
    Scan {
        #[arg(long, default_value_t = 3)]
        radius: i64,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Check { branch } => commands::cmd_check(&branch),
        Command::Tangency { branch, curve } => commands::cmd_tangency(&branch, &curve),
        Command::SeveriDim { k, t, l, gamma, alpha } => commands::cmd_severi_dim(&k, &t, &l, gamma, &alpha),
        Command::Seek { branch, m, seeds, budget, master_seed, tol_res, tol_jac, tol_cluster, symmetric, out } => {
            commands::cmd_seek(&PipelineConfig {
                branch,
                m,
                seeds,
                budget,
                master_seed,
                tolerances: Tolerances { residual: tol_res, jacobian: tol_jac, cluster: tol_cluster },
                symmetric_starts: symmetric,
                out,
            })
        }
        Command::Verify { certificate } => commands::cmd_verify(&certificate),
        Command::Phi { class, radius } => commands::cmd_phi(&class, radius),
        Command::Lattice { command: LatticeCommand::Hs { m } } => commands::cmd_lattice_hs(m),
        Command::Lattice { command: LatticeCommand::Scan { radius } } => commands::cmd_lattice_scan(radius),
        Command::Table { m_max } => commands::cmd_table(m_max),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
