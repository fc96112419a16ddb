use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zf_cli::report::Report;
use zf_cli::run::{self, certificate_holds, default_commands, Failure, Options, BUILTINS};
use zf_cli::scenario::parse_scenario;

/// Contact conics to plane quartics and the invariants that tell their
/// arrangements apart.
#[derive(Parser)]
#[command(name = "zf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Singular fibers, Gram matrix and determinant of the line basis.
    VerifyGram(Common),
    /// Build every conic and expand the declared families.
    ConstructConics(Common),
    /// Contact certificates, pairwise transversality and triple points.
    VerifyContact(Common),
    /// Lift vectors, Phi1 bits and pairwise splitting types.
    ClassifySplitting(Common),
    /// Invariant table of the declared arrangements.
    NpletReport(Common),
    /// Lift coordinates at a second base point.
    Invariance(Common),
    /// Search a family's parameter grid for compatible contact conics.
    Sweep(Common),
    /// The scenario's own `check` list.
    Run(Common),
    /// Re-verify a JSON report and compare verdicts.
    Recheck {
        certificate: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print a builtin scenario, or list them.
    Show { name: Option<String> },
}

#[derive(Args)]
struct Common {
    /// Scenario file (.zfs).
    #[arg(long, value_name = "FILE", conflicts_with = "builtin", required_unless_present = "builtin")]
    scenario: Option<PathBuf>,
    /// Builtin scenario name.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    /// Write the JSON report to OUT, or to stdout when OUT is omitted or `-`.
    #[arg(long, value_name = "OUT", num_args = 0..=1, default_missing_value = "-")]
    json: Option<String>,
    /// Worker threads (default: ZF_JOBS, then the number of CPUs).
    #[arg(long)]
    jobs: Option<usize>,
    /// Sweep grid: `a, b, c`, `START..END` or `START..END:STEP`.
    #[arg(long, value_name = "SPEC", allow_hyphen_values = true)]
    param_grid: Option<String>,
    /// Family to sweep.
    #[arg(long)]
    family: Option<String>,
}

fn jobs(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("ZF_JOBS") {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| Failure::Input(format!("ZF_JOBS must be a number, got '{v}'"))),
        Err(_) => Ok(None),
    }
}

fn execute(command: &str, c: Common) -> Result<bool, Failure> {
    let scenario = match (&c.scenario, &c.builtin) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            parse_scenario(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        }
        (None, Some(name)) => run::builtin(name)?,
        (None, None) => return Err(Failure::Input("pass --scenario FILE or --builtin NAME".into())),
    };
    let commands = if command == "run" { default_commands(&scenario) } else { vec![command.to_string()] };
    let opts = Options { jobs: jobs(c.jobs)?, param_grid: c.param_grid, family: c.family };
    let report = run::run_checks(&scenario, &commands, &opts)?;
    emit(&report, c.json.as_deref())?;
    Ok(report.passed)
}

fn emit(report: &Report, json: Option<&str>) -> Result<(), Failure> {
    match json {
        Some("-") => print!("{}", report.to_json()),
        Some(path) => {
            std::fs::write(path, report.to_json()).map_err(|e| Failure::Input(format!("cannot write {path}: {e}")))?;
            print!("{}", report.render());
        }
        None => print!("{}", report.render()),
    }
    Ok(())
}

fn recheck(path: &PathBuf, jobs_flag: Option<usize>) -> Result<bool, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let stored = Report::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut ok = true;
    let certificates = stored
        .conics
        .iter()
        .filter_map(|c| c.contact.as_ref()?.certificate.as_ref().map(|d| (c.name.clone(), d)))
        .chain(stored.sweeps.iter().flat_map(|s| {
            s.entries.iter().filter_map(move |e| e.certificate.as_ref().map(|d| (format!("{}@{}", s.family, e.value), d)))
        }));
    for (name, d) in certificates {
        match certificate_holds(d) {
            Ok(true) => {}
            Ok(false) => {
                println!("certificate {name}: does not hold");
                ok = false;
            }
            Err(m) => return Err(Failure::Input(format!("certificate {name}: {m}"))),
        }
    }
    let fresh = run::recheck(&stored, jobs(jobs_flag)?)?;
    if fresh.without_timestamp() != stored.without_timestamp() {
        for (old, new) in stored.checks.iter().zip(&fresh.checks) {
            if old != new {
                println!("{}: stored {} / fresh {}", old.name, verdict(old.passed), verdict(new.passed));
            }
        }
        println!("report differs from a fresh run");
        ok = false;
    }
    if ok {
        println!("certificate reproduced: {} checks, verdict {}", fresh.checks.len(), verdict(fresh.passed));
    }
    Ok(ok && fresh.passed == stored.passed)
}

fn verdict(p: bool) -> &'static str {
    if p {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::VerifyGram(c) => execute("verify-gram", c),
        Command::ConstructConics(c) => execute("construct-conics", c),
        Command::VerifyContact(c) => execute("verify-contact", c),
        Command::ClassifySplitting(c) => execute("classify-splitting", c),
        Command::NpletReport(c) => execute("nplet-report", c),
        Command::Invariance(c) => execute("invariance", c),
        Command::Sweep(c) => execute("sweep", c),
        Command::Run(c) => execute("run", c),
        Command::Recheck { certificate, jobs } => recheck(&certificate, jobs),
        Command::Show { name: None } => {
            for b in BUILTINS {
                println!("{b}");
            }
            Ok(true)
        }
        Command::Show { name: Some(n) } => run::builtin(&n).map(|s| {
            print!("{s}");
            true
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("zf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
