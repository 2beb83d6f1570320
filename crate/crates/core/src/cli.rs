//! The `omtope` command line.
//!
//! Every subcommand reads and writes the JSON file formats of the library:
//! instance files `{ "n", "source", "topes" }`, cycle files
//! `{ "instance_digest", "vertices" }`, and experiment reports. Output goes
//! to stdout unless `-o/--out` names a file.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::complexes::{lambda_complex, long_f_vector};
use crate::cycles::{
    distinguished_cycle, find_symmetric_cycle, validate_cycle, SymmetricCycle, DEFAULT_BUDGET,
};
use crate::decomp::{brute_force_decompose, decompose, decompose_in_window, BRUTE_FORCE_CAP};
use crate::error::Error;
use crate::instances::{
    generic_arrangement, hypercube_instance_capped, OMInstance, DEFAULT_CAP, DEFAULT_COORD_BOUND,
};
use crate::signvec::SignVector;
use crate::verify::{evaluate_pair, pairs_to_csv, run_experiment, ExperimentPlan, PlanSide};

const FILE_FORMATS: &str = "\
File formats:
  instance  {\"n\": 3, \"source\": \"hypercube\", \"topes\": [\"+++\", \"++-\", ...]}
            topes sorted with '+' before '-'
  cycle     {\"instance_digest\": \"<sha256>\", \"vertices\": [\"+++\", \"-++\", ...]}
            2n vertices, R^(k+n) = -R^k, consecutive vertices differ in one element
  report    JSON object with counts and one entry per tested pair, or CSV
            with one row per pair (chosen by --format or the report extension)

Exit codes: 0 success, 1 error or violations found, 2 usage error.";

#[derive(Debug, Parser)]
#[command(name = "omtope", version, about = "Tope decompositions and orthogonality of long h-vectors", after_help = FILE_FORMATS)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Largest ground set that may be enumerated exhaustively.
    #[arg(long = "cap-n", global = true, default_value_t = DEFAULT_CAP)]
    pub cap_n: usize,

    /// Node budget for the symmetric cycle search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    /// Output format for decompose, complex, verify pair and sweep.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the main output here instead of stdout.
    #[arg(short = 'o', long = "out", global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Find, construct or check symmetric cycles.
    #[command(subcommand)]
    Cycle(CycleCommand),
    /// Decompose a tope along a cycle: members, lambda and |Q|.
    Decompose(DecomposeArgs),
    /// The complex Lambda(T, R): facets and long f-vector.
    Complex(ComplexArgs),
    /// Check one pair of topes.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Check every pair of topes from two instances.
    Sweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// All 2^n sign vectors.
    Hypercube {
        #[arg(long)]
        n: usize,
    },
    /// Topes of a seeded random generic central arrangement.
    Arrangement {
        #[arg(long = "dim", visible_alias = "d")]
        dim: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "coord-bound", default_value_t = DEFAULT_COORD_BOUND)]
        coord_bound: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CycleCommand {
    /// Backtracking search for a symmetric cycle through a tope.
    Find {
        instance: PathBuf,
        /// Start tope; defaults to the first tope of the instance.
        #[arg(long)]
        start: Option<String>,
    },
    /// The cycle that flips elements of a hypercube in a given order.
    Distinguished {
        instance: PathBuf,
        /// Defaults to all '+'.
        #[arg(long)]
        base: Option<String>,
        /// Comma-separated permutation of 1..n; defaults to 1,2,...,n.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
    },
    /// Check a cycle file against its instance.
    Validate { instance: PathBuf, cycle: PathBuf },
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub instance: PathBuf,
    pub cycle: PathBuf,
    #[arg(long)]
    pub tope: String,
    /// First vertex of the solving window.
    #[arg(long, default_value_t = 0)]
    pub window: usize,
    /// Cross-check against subset enumeration (n <= 10).
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct ComplexArgs {
    pub instance: PathBuf,
    pub cycle: PathBuf,
    #[arg(long)]
    pub tope: String,
    /// Pad the f-vector to length t + 1; defaults to n.
    #[arg(long = "t")]
    pub pad: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Full report for one pair `INST,CYCLE,TOPE` x `INST,CYCLE,TOPE`.
    Pair {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// `INST,CYCLE` with ground size s.
    #[arg(long)]
    pub first: String,
    /// `INST,CYCLE` with ground size t.
    #[arg(long)]
    pub second: String,
    #[arg(long = "min-q", default_value_t = crate::verify::DEFAULT_MIN_Q)]
    pub min_q: usize,
    /// Drop the s < t, opposite-parity requirement.
    #[arg(long)]
    pub allow_equal_parity: bool,
    /// Full report; CSV if the name ends in .csv, JSON otherwise.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `argv` (program name first) and runs the command, writing to the
/// process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        Err(Failure::Error(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Gen(g) => gen(cli, g, out),
        Command::Cycle(c) => cycle(cli, c, out, err),
        Command::Decompose(a) => decompose_cmd(cli, a, out),
        Command::Complex(a) => complex_cmd(cli, a, out),
        Command::Verify(VerifyCommand::Pair { first, second }) => {
            verify_pair(cli, first, second, out)
        }
        Command::Sweep(a) => sweep(cli, a, out),
    }
}

fn emit(cli: &Cli, text: &str, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| {
            Error::Io {
                path: path.clone(),
                source,
            }
            .into()
        }),
        None => out.write_all(text.as_bytes()).map_err(|source| {
            Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }
            .into()
        }),
    }
}

fn json_only(cli: &Cli, what: &str) -> std::result::Result<(), Failure> {
    if cli.format == Format::Csv {
        return Err(Failure::Usage(format!("{what} output is JSON only")));
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(value).map_err(Error::from)?)
}

fn parse_tope(text: &str) -> std::result::Result<SignVector, Failure> {
    text.parse()
        .map_err(|e| Failure::Usage(format!("bad tope {text:?}: {e}")))
}

fn gen(cli: &Cli, g: &GenCommand, out: &mut dyn Write) -> Outcome {
    json_only(cli, "gen")?;
    let inst = match g {
        GenCommand::Hypercube { n } => hypercube_instance_capped(*n, cli.cap_n)?,
        GenCommand::Arrangement {
            dim,
            n,
            coord_bound,
        } => generic_arrangement(*dim, *n, cli.seed, *coord_bound, cli.cap_n)?.1,
    };
    emit(cli, &inst.to_json()?, out)?;
    Ok(0)
}

fn cycle(cli: &Cli, c: &CycleCommand, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    json_only(cli, "cycle")?;
    match c {
        CycleCommand::Find { instance, start } => {
            let inst = OMInstance::load(instance)?;
            let start = match start {
                Some(s) => parse_tope(s)?,
                None => inst.topes()[0],
            };
            match find_symmetric_cycle(&inst, &start, cli.budget)? {
                Some(cycle) => {
                    emit(cli, &cycle.to_json()?, out)?;
                    Ok(0)
                }
                None => {
                    let _ = writeln!(
                        err,
                        "no symmetric cycle through {start} within {} nodes (inconclusive)",
                        cli.budget
                    );
                    Ok(1)
                }
            }
        }
        CycleCommand::Distinguished {
            instance,
            base,
            order,
        } => {
            let inst = OMInstance::load(instance)?;
            let n = inst.n();
            let base = match base {
                Some(b) => parse_tope(b)?,
                None => SignVector::all_plus(n)?,
            };
            let order = order.clone().unwrap_or_else(|| (1..=n).collect());
            let cycle = distinguished_cycle(&inst, &base, &order)?;
            emit(cli, &cycle.to_json()?, out)?;
            Ok(0)
        }
        CycleCommand::Validate { instance, cycle } => {
            let inst = OMInstance::load(instance)?;
            let cycle = load_cycle_unchecked(cycle)?;
            let mut report = validate_cycle(&inst, &cycle);
            report.push(
                "instance_digest",
                cycle.instance_digest() == inst.digest(),
                "",
            );
            emit(cli, &report.to_string(), out)?;
            Ok(if report.is_ok() { 0 } else { 1 })
        }
    }
}

fn load_cycle_unchecked(path: &Path) -> Result<SymmetricCycle, Error> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Malformed {
        path: path.to_path_buf(),
        line: e.line(),
        reason: e.to_string(),
    })
}

fn load_pair(inst: &Path, cycle: &Path) -> Result<(OMInstance, SymmetricCycle), Error> {
    let inst = OMInstance::load(inst)?;
    let cycle = SymmetricCycle::load(cycle, &inst)?;
    Ok((inst, cycle))
}

#[derive(Serialize)]
struct DecomposeOutput {
    tope: SignVector,
    q_size: usize,
    window: usize,
    lambda: Vec<i8>,
    members: Vec<SignVector>,
}

fn decompose_cmd(cli: &Cli, a: &DecomposeArgs, out: &mut dyn Write) -> Outcome {
    let (inst, cycle) = load_pair(&a.instance, &a.cycle)?;
    let tope = parse_tope(&a.tope)?;
    let d = if a.window == 0 {
        decompose(&inst, &cycle, &tope)?
    } else {
        if !inst.contains(&tope) {
            return Err(Error::NotATope(tope.to_string()).into());
        }
        decompose_in_window(&cycle, &tope, a.window)?
    };
    if a.oracle {
        if inst.n() > BRUTE_FORCE_CAP {
            return Err(Failure::Usage(format!(
                "--oracle needs n <= {BRUTE_FORCE_CAP}, got {}",
                inst.n()
            )));
        }
        let o = brute_force_decompose(&cycle, &tope)?;
        if o.member_set() != d.member_set() {
            return Err(Error::InternalInconsistency(format!(
                "oracle disagrees on {tope}: {:?} vs {:?}",
                o.members(),
                d.members()
            ))
            .into());
        }
    }
    let output = DecomposeOutput {
        tope,
        q_size: d.size(),
        window: d.window(),
        lambda: d.coefficients().to_vec(),
        members: d.members().to_vec(),
    };
    let text = match cli.format {
        Format::Json => to_json(&output)?,
        Format::Csv => {
            let lambda: Vec<String> = output.lambda.iter().map(ToString::to_string).collect();
            let members: Vec<String> = output.members.iter().map(ToString::to_string).collect();
            csv_text(
                &["tope", "q_size", "window", "lambda", "members"],
                &[vec![
                    tope.to_string(),
                    output.q_size.to_string(),
                    output.window.to_string(),
                    lambda.join(";"),
                    members.join(";"),
                ]],
            )?
        }
    };
    emit(cli, &text, out)?;
    Ok(0)
}

#[derive(Serialize)]
struct ComplexOutput {
    tope: SignVector,
    n: usize,
    facets: Vec<Vec<usize>>,
    t: usize,
    f: crate::arith::IntVector,
}

fn complex_cmd(cli: &Cli, a: &ComplexArgs, out: &mut dyn Write) -> Outcome {
    let (inst, cycle) = load_pair(&a.instance, &a.cycle)?;
    let tope = parse_tope(&a.tope)?;
    let d = decompose(&inst, &cycle, &tope)?;
    let k = lambda_complex(&tope, &d)?;
    let t = a.pad.unwrap_or(inst.n());
    let f = long_f_vector(&k, t)?;
    let output = ComplexOutput {
        tope,
        n: k.n(),
        facets: k.facets().iter().map(|s| s.members()).collect(),
        t,
        f: f.entries().clone(),
    };
    let text = match cli.format {
        Format::Json => to_json(&output)?,
        Format::Csv => {
            let facets: Vec<String> = k.facets().iter().map(ToString::to_string).collect();
            csv_text(
                &["tope", "n", "facets", "t", "f"],
                &[vec![
                    tope.to_string(),
                    output.n.to_string(),
                    facets.join(";"),
                    t.to_string(),
                    output.f.to_string(),
                ]],
            )?
        }
    };
    emit(cli, &text, out)?;
    Ok(0)
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(Error::from)?;
    for r in rows {
        w.write_record(r).map_err(Error::from)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InternalInconsistency(format!("csv buffer: {e}")))?;
    Ok(String::from_utf8(bytes).map_err(|e| Error::InternalInconsistency(e.to_string()))?)
}

fn split_arg(arg: &str, parts: usize) -> std::result::Result<Vec<&str>, Failure> {
    let fields: Vec<&str> = arg.split(',').collect();
    if fields.len() != parts || fields.iter().any(|f| f.is_empty()) {
        let shape = if parts == 3 {
            "INST,CYCLE,TOPE"
        } else {
            "INST,CYCLE"
        };
        return Err(Failure::Usage(format!("expected {shape}, got {arg:?}")));
    }
    Ok(fields)
}

fn plan_side(inst: &str, cycle: &str) -> Result<PlanSide, Error> {
    let (inst, cycle) = load_pair(Path::new(inst), Path::new(cycle))?;
    Ok(PlanSide::new(inst, cycle))
}

fn verify_pair(cli: &Cli, first: &str, second: &str, out: &mut dyn Write) -> Outcome {
    let a = split_arg(first, 3)?;
    let b = split_arg(second, 3)?;
    let (t1, t2) = (parse_tope(a[2])?, parse_tope(b[2])?);
    let side1 = plan_side(a[0], a[1])?;
    let side2 = plan_side(b[0], b[1])?;
    let report = evaluate_pair(&side1, &t1, &side2, &t2)?;
    let text = match cli.format {
        Format::Json => to_json(&report)?,
        Format::Csv => pairs_to_csv(std::slice::from_ref(&report))?,
    };
    emit(cli, &text, out)?;
    let violated = report.meets_hypotheses() && !report.anomalies.is_empty();
    Ok(if violated { 1 } else { 0 })
}

fn sweep(cli: &Cli, a: &SweepArgs, out: &mut dyn Write) -> Outcome {
    let f = split_arg(&a.first, 2)?;
    let s = split_arg(&a.second, 2)?;
    let mut plan =
        ExperimentPlan::new(plan_side(f[0], f[1])?, plan_side(s[0], s[1])?).with_min_q(a.min_q);
    if a.allow_equal_parity {
        plan = plan.allow_equal_parity();
    }
    let result = run_experiment(&plan)?;
    if let Some(path) = &a.report {
        result.save(path)?;
    }
    let text = match (&cli.out, cli.format) {
        (None, _) => result.summary(),
        (Some(_), Format::Json) => result.to_json()?,
        (Some(_), Format::Csv) => result.to_csv()?,
    };
    emit(cli, &text, out)?;
    Ok(if result.passed() { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["omtope"];
        argv.extend_from_slice(args);
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&[]).0, 2);
        assert_eq!(run_capture(&["gen", "hypercube"]).0, 2);
        assert_eq!(
            run_capture(&["gen", "hypercube", "--n", "3", "--bogus"]).0,
            2
        );
        assert_eq!(
            run_capture(&["gen", "hypercube", "--n", "3", "--format", "csv"]).0,
            2
        );
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("instance_digest"));
        let (code, out, _) = run_capture(&["sweep", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("--min-q"));
    }

    #[test]
    fn gen_to_stdout() {
        let (code, out, _) = run_capture(&["gen", "hypercube", "--n", "2"]);
        assert_eq!(code, 0);
        assert!(out.ends_with('\n'));
        let inst = OMInstance::from_json(&out, Path::new("<stdout>")).unwrap();
        assert_eq!(inst.topes().len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let (code, _, err) = run_capture(&["gen", "hypercube", "--n", "9", "--cap-n", "8"]);
        assert_eq!(code, 1);
        assert!(err.contains("cap"));
    }

    #[test]
    fn bad_spec_is_usage_error() {
        let (code, _, err) =
            run_capture(&["verify", "pair", "--first", "a,b", "--second", "c,d,e"]);
        assert_eq!(code, 2);
        assert!(err.contains("INST,CYCLE,TOPE"));
    }
}
