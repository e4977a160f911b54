//! `census`: enumerate, verify and report the genus-6 census over F_2.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use g6census::census::{load_jsonl, report, save_jsonl, sort_records, summarize, verify};
use g6census::strata::bielliptic::{mass_closed_form, mass_integral};
use g6census::strata::{self, Shard, Stratum};
use g6census::weilzeta::load_isogeny_list;

#[derive(Parser)]
#[command(name = "census", about = "Isomorphism classes of genus-6 curves over F_2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate one stratum (or a shard of it) into a JSONL file.
    Run {
        #[arg(long)]
        stratum: Stratum,
        /// Shard i/n with 0 <= i < n.
        #[arg(long, default_value = "0/1")]
        shard: Shard,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a census file against the expected counts and invariants.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// One L-polynomial per line, coefficients a_0..a_12.
        #[arg(long)]
        isogeny_list: Option<PathBuf>,
    },
    /// Print per-stratum counts and global statistics.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Closed-form mass of the bielliptic locus in genus g over F_q.
    MassFormula {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        q: i64,
        /// Also evaluate the defining integral curve by curve (odd prime q).
        #[arg(long)]
        oracle: bool,
    },
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run { stratum, shard, out } => {
            let records = strata::run(stratum, shard)?;
            save_jsonl(&out, &records).with_context(|| format!("writing {}", out.display()))?;
            let s = summarize(&records);
            eprintln!(
                "{stratum} shard {}/{}: {} classes, weighted {}",
                shard.index, shard.count, s.total.classes, s.total.mass
            );
            Ok(true)
        }
        Command::Verify { input, isogeny_list } => {
            let mut records = load_jsonl(&input).with_context(|| format!("reading {}", input.display()))?;
            sort_records(&mut records);
            let iso = isogeny_list.map(|p| load_isogeny_list(&p)).transpose()?;
            let checks = verify(&records, iso.as_ref());
            for c in &checks {
                println!("{c}");
            }
            Ok(checks.iter().all(|c| c.pass))
        }
        Command::Report { input } => {
            let records = load_jsonl(&input).with_context(|| format!("reading {}", input.display()))?;
            print!("{}", report(&records));
            Ok(true)
        }
        Command::MassFormula { g, q, oracle } => {
            let closed = mass_closed_form(g, q)?;
            println!("closed form: {closed}");
            if !oracle {
                return Ok(true);
            }
            if q % 2 == 0 {
                bail!("the oracle needs an odd prime q");
            }
            let direct = mass_integral(g, q)?;
            println!("integral: {direct}");
            Ok(direct == closed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
