//! `realizer`: check proof scripts, extract their programs, and run them.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use realizer_core::extract::extract;
use realizer_core::harness::{pi2_shape, run_witness, verify_pi2, Stuck, VerifyReport, Witness};
use realizer_core::kernel::{check, CheckedProof};
use realizer_core::reduce::DEFAULT_FUEL;
use realizer_core::script::parse_script;

#[derive(Parser, Debug)]
#[command(
    name = "realizer",
    version,
    about = "Check natural-deduction proofs and run the programs they contain"
)]
struct Cli {
    /// Maximum number of reduction steps per evaluation.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL, value_parser = clap::value_parser!(u64).range(1..))]
    fuel: u64,

    /// Largest input tried for each universally quantified variable.
    #[arg(long, global = true, default_value_t = 15)]
    bound: u64,

    /// Write results here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a proof script and print its conclusion and open assumptions.
    Check { file: PathBuf },
    /// Print the program extracted from a proof script.
    Extract { file: PathBuf },
    /// Apply the extracted program to numbers and print the witness.
    Run {
        file: PathBuf,
        #[arg(required = true)]
        args: Vec<u64>,
    },
    /// Run the extracted program on every input up to the bound and check
    /// each witness against the proven formula.
    Verify { file: PathBuf },
}

/// Outcome of a command: the text to emit and whether it counts as success.
struct Outcome {
    text: String,
    success: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            success: true,
        }
    }
}

fn load(file: &Path) -> Result<CheckedProof> {
    let src =
        fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    let script =
        parse_script(&src).map_err(|e| anyhow!("{}:{}: {}", file.display(), e.pos, e.message))?;
    check(&script.proof).map_err(|e| match script.span(e.node()) {
        Some(pos) => anyhow!("{}:{}: {e}", file.display(), pos),
        None => anyhow!("{}: {e}", file.display()),
    })
}

fn closed(cp: CheckedProof, file: &Path) -> Result<CheckedProof> {
    if !cp.is_closed() {
        let labels: Vec<_> = cp.open_assumptions().keys().cloned().collect();
        bail!(
            "{}: proof has open assumptions: {}",
            file.display(),
            labels.join(", ")
        );
    }
    Ok(cp)
}

fn cmd_check(file: &Path) -> Result<Outcome> {
    let cp = load(file)?;
    let mut text = format!("{}\n", cp.conclusion());
    if cp.is_closed() {
        text.push_str("open assumptions: none\n");
    } else {
        text.push_str("open assumptions:\n");
        for (label, formula) in cp.open_assumptions() {
            text.push_str(&format!("  {label}: {formula}\n"));
        }
    }
    Ok(Outcome::ok(text))
}

fn cmd_extract(file: &Path) -> Result<Outcome> {
    let cp = load(file)?;
    Ok(Outcome::ok(format!("{}\n", extract(&cp))))
}

fn cmd_run(file: &Path, args: &[u64], fuel: u64) -> Result<Outcome> {
    let cp = closed(load(file)?, file)?;
    let (universals, _, _) = pi2_shape(cp.conclusion()).ok_or_else(|| {
        anyhow!(
            "{}: not a forall ... exists statement: {}",
            file.display(),
            cp.conclusion()
        )
    })?;
    if universals.len() != args.len() {
        bail!(
            "arity mismatch: {} proves a statement over {} variable(s) ({}), got {} argument(s)",
            file.display(),
            universals.len(),
            universals.join(", "),
            args.len()
        );
    }
    let run = run_witness(&extract(&cp), args, fuel);
    match run.witness {
        Witness::Value(v) => Ok(Outcome::ok(format!("{v}\n"))),
        Witness::Stuck(Stuck::FuelExhausted { steps }) => {
            bail!("stuck: fuel exhausted after {steps} steps (raise --fuel)")
        }
        Witness::Stuck(Stuck::NotNumeral(t)) => bail!("stuck: normal form `{t}` is not a number"),
    }
}

fn describe(witness: &Witness) -> String {
    match witness {
        Witness::Value(v) => format!("witness {v} does not satisfy the formula"),
        Witness::Stuck(s) => format!("stuck: {s}"),
    }
}

fn render_report(report: &VerifyReport) -> String {
    let mut text = format!("{}/{} pass\n", report.passed(), report.results.len());
    for e in report.failures() {
        let inputs: Vec<String> = e.inputs.iter().map(u64::to_string).collect();
        text.push_str(&format!(
            "fail ({}): {}\n",
            inputs.join(", "),
            describe(&e.witness)
        ));
    }
    text.push_str(&format!("max steps: {}\n", report.max_steps()));
    text
}

fn cmd_verify(file: &Path, bound: u64, fuel: u64) -> Result<Outcome> {
    let cp = load(file)?;
    let report = verify_pi2(&cp, bound, fuel).map_err(|e| anyhow!("{}: {e}", file.display()))?;
    Ok(Outcome {
        text: render_report(&report),
        success: report.all_pass,
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { file } => cmd_check(file),
        Command::Extract { file } => cmd_extract(file),
        Command::Run { file, args } => cmd_run(file, args, cli.fuel),
        Command::Verify { file } => cmd_verify(file, cli.bound, cli.fuel),
    };
    let result = outcome.and_then(|o| emit(&o.text, cli.out.as_deref()).map(|_| o.success));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
