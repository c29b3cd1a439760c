// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qubit_qi::channel::choi_of;
use qubit_qi::fidelity::MC_MIN_SAMPLES;
use qubit_qi::quasi_inverse::MIN_SEARCH_SAMPLES;
use qubit_qi_cli::report::build_report;
use qubit_qi_cli::spec::read_channel_spec;
use qubit_qi_cli::sweep::{sweep, to_csv, Family, SweepGrid};
use qubit_qi_cli::verify::{verify, VerifyOptions, DEFAULT_BF_SAMPLES, DEFAULT_MC_SAMPLES};
use qubit_qi_cli::{CliError, CliResult};

/// Average fidelity and optimal unitary quasi-inverses of qubit channels.
#[derive(Parser)]
#[command(name = "qubit-qi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Affine map, fidelity and optimal correction of a channel
    Report {
        spec: PathBuf,
        /// Print JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Phase diagram of a channel family as CSV
    Sweep {
        /// mixed_rotation or tetrahedron
        #[arg(long)]
        family: String,
        /// e.g. "p=0:1/3:101,theta=0:2pi:101"; omitted parameters use their default range
        #[arg(long, default_value = "")]
        grid: String,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the closed forms against Monte Carlo and brute-force search
    Verify {
        spec: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Monte Carlo samples
        #[arg(long, default_value_t = DEFAULT_MC_SAMPLES)]
        mc: usize,
        /// Brute-force samples
        #[arg(long, default_value_t = DEFAULT_BF_SAMPLES)]
        bf: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check that a specification describes a valid channel
    Validate { spec: PathBuf },
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Report { spec, json: as_json } => {
            let (spec, ch) = read_channel_spec(&spec)?;
            let report = build_report(&spec, &ch)?;
            Ok(if as_json { json(&report) } else { report.to_text() })
        }
        Command::Sweep { family, grid, out } => {
            let family: Family = family.parse()?;
            let grid = SweepGrid::parse(family, &grid)?;
            let csv = to_csv(&grid, &sweep(&grid)?);
            match out {
                Some(path) => {
                    std::fs::write(&path, csv)
                        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(csv),
            }
        }
        Command::Verify { spec, seed, mc, bf, json: as_json } => {
            if bf < MIN_SEARCH_SAMPLES || mc < MC_MIN_SAMPLES {
                return Err(CliError::Usage(format!(
                    "need --mc ≥ {MC_MIN_SAMPLES} and --bf ≥ {MIN_SEARCH_SAMPLES}, got {mc} and {bf}"
                )));
            }
            let (_, ch) = read_channel_spec(&spec)?;
            let result = verify(&ch, &VerifyOptions { seed, mc_samples: mc, bf_samples: bf })?;
            let text = if as_json { json(&result) } else { result.to_text() };
            if result.passed() {
                Ok(text)
            } else {
                print!("{text}");
                Err(CliError::Verification(result.failures().join(", ")))
            }
        }
        Command::Validate { spec } => {
            let (_, ch) = read_channel_spec(&spec)?;
            let choi = choi_of(&ch)?.report();
            if !choi.completely_positive {
                return Err(qubit_qi::Error::NotCompletelyPositive(format!(
                    "minimum Choi eigenvalue {:.3e}",
                    choi.min_eigenvalue
                ))
                .into());
            }
            Ok(format!(
                "valid channel: {} Kraus operators, trace-preservation residual {:.3e}, min Choi eigenvalue {:.3e}\n",
                ch.kraus().len(),
                ch.tp_residual(),
                choi.min_eigenvalue
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
