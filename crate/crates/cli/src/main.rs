use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qsync_cli::{ChainTable, CliResult, Format, Output, SimulateArgs, DEFAULT_CAP};

#[derive(Parser, Debug)]
#[command(name = "qsync", version, about = "Quantum synchronizable codes from binary QR codes")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The four quadratic residue codes of prime length p.
    Qr {
        #[arg(long)]
        p: u64,
        /// Check dual relations and dual containment (p = -1 mod 8 only).
        #[arg(long, alias = "verify-lemma2")]
        verify_duality: bool,
        /// Report minimum distances; falls back to the square-root bound above --cap.
        #[arg(long)]
        min_distance: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Factor chain of g_R for the Mersenne prime 2^l - 1.
    Chain {
        #[arg(long)]
        l: u32,
        /// Table emitted in CSV mode.
        #[arg(long, value_enum, default_value = "factors")]
        table: ChainTable,
        #[arg(long)]
        z_max: Option<usize>,
    },
    /// Parameters of the code built from a chain pair.
    Params {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        z: usize,
        #[arg(long, default_value_t = 1)]
        y: usize,
        #[arg(long)]
        cl: usize,
        #[arg(long)]
        cr: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Monte Carlo synchronization recovery.
    Simulate {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        z: usize,
        #[arg(long, default_value_t = 1)]
        y: usize,
        #[arg(long)]
        cl: usize,
        #[arg(long)]
        cr: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Defaults to the decoder's correction radius.
        #[arg(long)]
        max_errors: Option<usize>,
        /// Errors anywhere in the frame, beyond the guarantee.
        #[arg(long)]
        stress: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Exact minimum distance of a cyclic code.
    Mindist {
        #[arg(long)]
        n: usize,
        /// Generator, textual ("x^3+x+1") or hex ("0xb").
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

fn run(cli: Cli) -> CliResult<Output> {
    let fmt = cli.format;
    let out = match cli.command {
        Command::Qr {
            p,
            verify_duality,
            min_distance,
            cap,
        } => qsync_cli::cmd_qr(p, verify_duality, min_distance, cap, fmt)?,
        Command::Chain { l, table, z_max } => qsync_cli::cmd_chain(l, table, z_max, fmt)?,
        Command::Params { p, z, y, cl, cr, cap } => qsync_cli::cmd_params(p, z, y, cl, cr, cap, fmt)?,
        Command::Simulate {
            p,
            z,
            y,
            cl,
            cr,
            trials,
            max_errors,
            stress,
            cap,
        } => qsync_cli::cmd_simulate(
            SimulateArgs {
                p,
                z,
                y,
                c_l: cl,
                c_r: cr,
                trials,
                max_errors,
                seed: cli.seed,
                stress,
                cap,
            },
            fmt,
        )?,
        Command::Mindist { n, g, cap } => qsync_cli::cmd_mindist(n, &g, cap, fmt)?,
    };
    match &cli.output {
        Some(path) => std::fs::write(path, &out.body)?,
        None => print!("{}", out.body),
    }
    Ok(out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => ExitCode::from(out.exit_code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

