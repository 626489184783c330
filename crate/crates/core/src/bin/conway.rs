use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use conway_groupoids::design::{
    boolean_design, orthogonal_design, projective_plane_3, read_design, symplectic_design, write_design, Sign,
};
use conway_groupoids::group::DEFAULT_CAP;
use conway_groupoids::report::{run, RunOptions, RunReport, Stage, SCHEMA};
use conway_groupoids::Design;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "conway",
    version,
    about = "Conway groupoids of supersimple 2-(n,4,λ) designs"
)]
struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true, env = "CONWAY_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one of the built-in designs as JSON.
    Generate {
        family: FamilyArg,
        #[arg(long)]
        m: Option<u32>,
        /// Type of the quadratic form for `orthogonal`: + or -.
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<Sign>,
        /// Output file (default: standard output).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Design statistics, two-graph, triangle property and move identities.
    Check(RunArgs),
    /// Hole-stabilizer, groupoid, group analysis and classification.
    Groupoid(RunArgs),
    /// Classification and its consistency checks only.
    Classify(RunArgs),
    /// The elementary-move identities only.
    VerifyLemmas(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Boolean,
    Symplectic,
    Orthogonal,
    Pg23,
}

#[derive(Args)]
struct RunArgs {
    file: PathBuf,
    /// The point playing the role of ∞.
    #[arg(long, default_value_t = 0)]
    base: usize,
    /// Largest group or groupoid enumerated element by element.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Compare hole-stabilizer orders over every base point.
    #[arg(long)]
    all_bases: bool,
    /// Add per-phase milliseconds to the report.
    #[arg(long)]
    timings: bool,
    /// Expected outcome of a named check, e.g. `regular_two_graph=fail`.
    #[arg(long = "expect", value_name = "CHECK=pass|fail")]
    expect: Vec<String>,
}

enum Failure {
    Input(String),
    Checks(Vec<String>),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot set up {t} threads: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    let result = match cli.command {
        Command::Generate {
            family,
            m,
            sign,
            output,
        } => generate(family, m, sign, output.as_deref()),
        Command::Check(args) => report_command(&args, Stage::Check, false),
        Command::Groupoid(args) => report_command(&args, Stage::Full, false),
        Command::Classify(args) => report_command(&args, Stage::Full, true),
        Command::VerifyLemmas(args) => report_command(&args, Stage::Lemmas, false),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Checks(failed)) => {
            eprintln!("failed checks: {}", failed.join(", "));
            ExitCode::from(EXIT_CHECK_FAILED)
        }
    }
}

fn generate(family: FamilyArg, m: Option<u32>, sign: Option<Sign>, output: Option<&Path>) -> Result<(), Failure> {
    let need_m = || m.ok_or_else(|| Failure::Input("--m is required for this family".into()));
    let design = match family {
        FamilyArg::Boolean => boolean_design(need_m()?),
        FamilyArg::Symplectic => symplectic_design(need_m()?),
        FamilyArg::Orthogonal => {
            let sign = sign.ok_or_else(|| Failure::Input("--sign is required for orthogonal".into()))?;
            orthogonal_design(need_m()?, sign)
        }
        FamilyArg::Pg23 => Ok(projective_plane_3()),
    }
    .map_err(|e| Failure::Input(e.to_string()))?;
    match output {
        Some(path) => write_design(&design, path).map_err(|e| Failure::Input(e.to_string())),
        None => print(&design.to_json()),
    }
}

fn print(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Input(format!("cannot write output: {e}")))
}

fn parse_expectations(raw: &[String]) -> Result<BTreeMap<String, bool>, Failure> {
    raw.iter()
        .map(|s| {
            let (name, want) = s
                .split_once('=')
                .ok_or_else(|| Failure::Input(format!("bad --expect {s:?}: use CHECK=pass|fail")))?;
            let want = match want {
                "pass" => true,
                "fail" => false,
                _ => {
                    return Err(Failure::Input(format!(
                        "bad --expect {s:?}: outcome must be pass or fail"
                    )))
                }
            };
            Ok((name.to_string(), want))
        })
        .collect()
}

fn load(path: &Path) -> Result<Design, Failure> {
    read_design(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    schema: u32,
    design: &'a conway_groupoids::report::DesignSummary,
    classification: &'a Option<conway_groupoids::report::ClassificationSection>,
    checks: Vec<&'a conway_groupoids::report::CheckResult>,
}

fn report_command(args: &RunArgs, stage: Stage, classification_only: bool) -> Result<(), Failure> {
    let expectations = parse_expectations(&args.expect)?;
    let design = load(&args.file)?;
    let opts = RunOptions {
        base: args.base,
        cap: args.cap,
        all_bases: args.all_bases,
        timings: args.timings,
        stage,
    };
    let report = run(&design, &opts).map_err(|e| Failure::Input(e.to_string()))?;
    if let Some(unknown) = expectations.keys().find(|k| report.check(k).is_none()) {
        return Err(Failure::Input(format!("--expect names unknown check {unknown:?}")));
    }
    let text = if classification_only {
        let out = ClassifyOutput {
            schema: SCHEMA,
            design: &report.design,
            classification: &report.classification,
            checks: report
                .checks
                .iter()
                .filter(|c| ["classification_consistent", "theorem_a", "theorem_c"].contains(&c.name.as_str()))
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&out).expect("report serializes");
        s.push('\n');
        s
    } else {
        report.to_json()
    };
    print(&text)?;
    let failed = failed_checks(&report, &expectations, classification_only);
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(failed))
    }
}

fn failed_checks(report: &RunReport, expectations: &BTreeMap<String, bool>, classification_only: bool) -> Vec<String> {
    report
        .checks
        .iter()
        .filter(|c| {
            !classification_only || ["classification_consistent", "theorem_a", "theorem_c"].contains(&c.name.as_str())
        })
        .filter(|c| match expectations.get(&c.name) {
            Some(&want) => c.pass != want,
            None => c.applicable && !c.pass,
        })
        .map(|c| c.name.clone())
        .collect()
}
