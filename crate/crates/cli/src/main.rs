//! `twuality` command-line front end.
//!
//! Exit codes: 0 success, 1 failed check or other error, 2 unreadable or
//! malformed input, 3 size cap exceeded, 4 singular pivot or inverse.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twuality::generate::DEFAULT_SEED;
use twuality::graft::{kn_closed_form, kn_graft};
use twuality::twuality::{exponent, parse_operator_list, PolynomialRecord};
use twuality::verify::{self, Suite, SuiteConfig};
use twuality::{Bouquet, Error, Field, Graft, Matrix, Operator, Subset, SweepConfig};

#[derive(Parser)]
#[command(name = "twuality", version, about = "Partial-twuality polynomials of matrices, grafts and bouquets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the polynomials of a matrix, graft or bouquet.
    Compute(ComputeArgs),
    /// Pivot or invert a matrix and print the result.
    Transform(TransformArgs),
    /// Run a property suite.
    Check(CheckArgs),
    /// Compare the K_n closed forms with brute force.
    Kn(KnArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Matrix,
    Graft,
    Bouquet,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    /// Largest index set a subset sweep may enumerate.
    #[arg(long, default_value_t = twuality::twuality::DEFAULT_SIZE_CAP)]
    max_n: usize,
    /// Worker threads for sweeps.
    #[arg(long)]
    threads: Option<usize>,
}

impl SweepArgs {
    fn config(&self) -> SweepConfig {
        SweepConfig {
            max_n: self.max_n,
            threads: self.threads,
        }
    }
}

#[derive(Args)]
struct ComputeArgs {
    /// Input file, `-` for stdin.
    input: String,
    #[arg(long, value_enum, default_value = "matrix")]
    format: Format,
    /// Comma-separated operators; all five by default.
    #[arg(long)]
    ops: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    out: Output,
    /// Print the exponents of this one subset (comma-separated labels,
    /// `-` for the empty set) instead of the polynomials.
    #[arg(long, allow_hyphen_values = true)]
    set: Option<String>,
    /// Read matrix entries over this field (gf2, gfp<p>, q) instead of the
    /// one named in the file.
    #[arg(long)]
    field: Option<String>,
    #[command(flatten)]
    sweep: SweepArgs,
}

#[derive(Args)]
struct TransformArgs {
    /// Matrix file, `-` for stdin.
    input: String,
    /// Pivot set, comma-separated labels or `-` for the empty set.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "invert", required_unless_present = "invert")]
    pivot: Option<String>,
    #[arg(long)]
    invert: bool,
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    sweep: SweepArgs,
}

#[derive(Args)]
struct KnArgs {
    #[arg(long)]
    n: usize,
    /// Defaults to the three operators with closed forms.
    #[arg(long)]
    ops: Option<String>,
    #[command(flatten)]
    sweep: SweepArgs,
}

enum Failure {
    Lib(Error),
    Io(String, io::Error),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Invalid(_)
        | Error::UnknownLabel(_)
        | Error::NotPrime(_)
        | Error::FieldMismatch(..)
        | Error::UniverseMismatch => 2,
        Error::SizeCapExceeded { .. } => 3,
        Error::SingularPrincipalMinor | Error::SingularMatrix => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = match cli.command {
        Command::Compute(a) => compute(&a, &mut out),
        Command::Transform(a) => transform(&a, &mut out),
        Command::Check(a) => check(&a, &mut out),
        Command::Kn(a) => kn(&a, &mut out),
    };
    let _ = io::stdout().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Io(path, e)) => {
            eprintln!("error: cannot read {path}: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io("stdin".into(), e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(path.into(), e))
    }
}

fn parse_field(s: &str) -> Result<Field, Error> {
    match s {
        "gf2" => Ok(Field::Gf2),
        "q" | "Q" => Ok(Field::Rational),
        _ => {
            let p = s
                .strip_prefix("gfp")
                .or_else(|| s.strip_prefix("gf"))
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| Error::Invalid(format!("unknown field `{s}` (use gf2, gfp<p> or q)")))?;
            Field::gfp(p)
        }
    }
}

fn parse_set(m: &Matrix, s: &str) -> Result<Subset, Error> {
    let s = s.trim();
    if s == "-" || s.is_empty() {
        return Ok(m.empty_subset());
    }
    let labels: Vec<&str> = s.split(',').map(str::trim).collect();
    Subset::from_labels(m.labels().clone(), &labels)
}

fn load_matrix(text: &str, format: Format, field: Option<&str>) -> Result<Matrix, Error> {
    let field = field.map(parse_field).transpose()?;
    match format {
        Format::Matrix => Matrix::parse(text, field),
        Format::Graft | Format::Bouquet if field.is_some() => {
            Err(Error::Invalid("--field applies to matrix input only".into()))
        }
        Format::Graft => Ok(Graft::parse(text)?.adjacency_matrix()),
        Format::Bouquet => Ok(Bouquet::parse(text)?.intersection_graft().adjacency_matrix()),
    }
}

fn compute(a: &ComputeArgs, out: &mut String) -> Result<(), Failure> {
    let text = read_input(&a.input)?;
    let ops = match &a.ops {
        Some(s) => parse_operator_list(s)?,
        None => Operator::ALL.to_vec(),
    };
    let m = load_matrix(&text, a.format, a.field.as_deref())?;
    let cfg = a.sweep.config();
    if let Some(set) = &a.set {
        let subset = parse_set(&m, set)?;
        for op in &ops {
            let e = exponent(*op, &m, &subset)?;
            match a.out {
                Output::Text if ops.len() == 1 => out.push_str(&format!("{e}\n")),
                Output::Text => out.push_str(&format!("{op}: {e}\n")),
                Output::Json => out.push_str(&format!(
                    "{{\"operator\":\"{op}\",\"set\":\"{subset}\",\"exponent\":{e}}}\n"
                )),
            }
        }
        return Ok(());
    }
    for op in &ops {
        let p = twuality::twuality::polynomial(*op, &m, &cfg)?;
        match a.out {
            Output::Text if ops.len() == 1 => out.push_str(&format!("{}\n", p.to_text())),
            Output::Text => out.push_str(&format!("{op}: {}\n", p.to_text())),
            Output::Json => {
                out.push_str(&PolynomialRecord::new(*op, m.field(), m.n(), &p).to_json());
                out.push('\n');
            }
        }
    }
    Ok(())
}

fn transform(a: &TransformArgs, out: &mut String) -> Result<(), Failure> {
    let text = read_input(&a.input)?;
    let m = load_matrix(&text, Format::Matrix, a.field.as_deref())?;
    let t = match &a.pivot {
        Some(set) => m.pivot(&parse_set(&m, set)?)?,
        None => m.inverse()?,
    };
    out.push_str(&t.to_text());
    Ok(())
}

fn check(a: &CheckArgs, out: &mut String) -> Result<(), Failure> {
    let suite: Suite = a.suite.parse()?;
    let cfg = SuiteConfig {
        seed: a.seed,
        sweep: a.sweep.config(),
    };
    let mut all_passed = true;
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in suites {
        for r in verify::run(s, &cfg)? {
            all_passed &= r.passed;
            out.push_str(&format!("[{s}] {r}\n"));
        }
    }
    if all_passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn kn(a: &KnArgs, out: &mut String) -> Result<(), Failure> {
    let ops = match &a.ops {
        Some(s) => parse_operator_list(s)?,
        None => vec![Operator::TauDeltaTau, Operator::DeltaTau, Operator::TauDelta],
    };
    let cfg = a.sweep.config();
    let g = kn_graft(a.n);
    let mut all_match = true;
    for op in ops {
        let closed = kn_closed_form(op, a.n)?;
        let brute = g.polynomial(op, &cfg)?;
        let same = closed == brute;
        all_match &= same;
        out.push_str(&format!(
            "{op} K_{n}\n  closed form: {}\n  brute force: {}\n  {}\n",
            closed.to_text(),
            brute.to_text(),
            if same { "match" } else { "MISMATCH" },
            n = a.n,
        ));
    }
    if all_match {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
