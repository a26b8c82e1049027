//! Command-line front end: runs the verification suites and emits reports.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
//! usage errors (including malformed flags and invalid parameter values).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use frob1::report::{self, Report};
use frob1::Error;

#[derive(Parser)]
#[command(
    name = "frob1",
    about = "Verifies the homotopy Frobenius structure on cochains of the \
             circle and its -1/12 genus-two obstruction",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit one structured JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the report to a file.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CellsArg {
    /// Number of circle cells N (the complex has 2N basis cells).
    #[arg(long, default_value_t = 8)]
    cells: u32,
}

#[derive(Args)]
struct DerhamArgs {
    /// Support radius of the bump profile.
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Grid resolution: the step is epsilon / step-div.
    #[arg(long, default_value_t = 200)]
    step_div: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Homotopy equations, quasilocality ledger, and the obstruction.
    VerifyDiscrete {
        #[command(flatten)]
        cells: CellsArg,
        /// Seed for the randomized subadditivity sweep.
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// The cohomology-model multiplication/comultiplication tables.
    VerifyHomologyModel,
    /// Abstract component composition signs and associativity.
    VerifyFrob1,
    /// Cohomology dimensions of the quasilocal operation complex.
    QlocDims {
        #[command(flatten)]
        cells: CellsArg,
        /// Input arity.
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Output arity.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Quasilocality radius.
        #[arg(long, default_value_t = 1)]
        ell: u32,
    },
    /// The smooth-model integrals.
    VerifyDerham {
        #[command(flatten)]
        derham: DerhamArgs,
    },
    /// Just the genus-two obstruction certificate.
    Obstruction {
        #[command(flatten)]
        cells: CellsArg,
    },
    /// Every suite with the given parameters.
    All {
        #[command(flatten)]
        cells: CellsArg,
        #[command(flatten)]
        derham: DerhamArgs,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Quasilocality radius for the dimension counts.
        #[arg(long, default_value_t = 1)]
        ell: u32,
        /// Stop at the first failing suite.
        #[arg(long)]
        fail_fast: bool,
    },
}

#[derive(Serialize)]
struct Bundle {
    reports: Vec<Report>,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let reports = match run(&cli.command) {
        Ok(reports) => reports,
        Err(Error::Argument(message)) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
        Err(error) => {
            eprintln!("error: {error}");
            return ExitCode::from(1);
        }
    };
    let pass = reports.iter().all(|r| r.pass);
    let bundle = Bundle { reports, pass };

    let rendered = if cli.json {
        serde_json::to_string_pretty(&bundle).expect("reports serialize")
    } else {
        let mut text = String::new();
        for report in &bundle.reports {
            text.push_str(&report.render_text());
        }
        text.push_str(if pass { "overall: PASS\n" } else { "overall: FAIL\n" });
        text
    };
    print!("{rendered}");
    if let Some(path) = &cli.out {
        if let Err(error) = std::fs::File::create(path)
            .and_then(|mut file| file.write_all(rendered.as_bytes()))
        {
            eprintln!("error: cannot write {}: {error}", path.display());
            return ExitCode::from(2);
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(command: &Command) -> frob1::Result<Vec<Report>> {
    match command {
        Command::VerifyDiscrete { cells, seed } => {
            Ok(vec![report::verify_discrete(cells.cells, *seed)?])
        }
        Command::VerifyHomologyModel => Ok(vec![report::verify_homology_model()?]),
        Command::VerifyFrob1 => Ok(vec![report::verify_frob1()?]),
        Command::QlocDims { cells, m, n, ell } => {
            Ok(vec![report::qloc_dims(cells.cells, *m, *n, *ell)?])
        }
        Command::VerifyDerham { derham } => {
            Ok(vec![report::verify_derham(derham.epsilon, derham.step_div)?])
        }
        Command::Obstruction { cells } => Ok(vec![report::obstruction(cells.cells)?]),
        Command::All {
            cells,
            derham,
            seed,
            ell,
            fail_fast,
        } => {
            let mut reports = Vec::new();
            let suites: Vec<Box<dyn Fn() -> frob1::Result<Report>>> = vec![
                Box::new(report::verify_homology_model),
                Box::new(report::verify_frob1),
                Box::new(move || report::verify_discrete(cells.cells, *seed)),
                Box::new(move || report::qloc_dims(cells.cells, 1, 1, *ell)),
                Box::new(move || report::qloc_dims(cells.cells, 2, 1, *ell)),
                Box::new(move || report::qloc_dims(cells.cells, 1, 2, *ell)),
                Box::new(move || report::qloc_dims(cells.cells, 2, 2, *ell)),
                Box::new(move || report::verify_derham(derham.epsilon, derham.step_div)),
                Box::new(move || report::obstruction(cells.cells)),
            ];
            for suite in suites {
                let report = suite()?;
                let failed = !report.pass;
                reports.push(report);
                if failed && *fail_fast {
                    break;
                }
            }
            Ok(reports)
        }
    }
}
