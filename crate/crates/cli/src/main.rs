use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use filiform_core::algebra::{build_second_class, is_filiform, is_lie, leibniz_check, lower_central_dims, ParamVector, StructureTable};
use filiform_core::classify::{canonical_form, family, iso_decide, representatives, verify_classification, Answer, Family};
use filiform_core::exec::Execution;
use filiform_core::invariants::{closed_form_corrected, closed_form_invariant, closed_forms_for_dim, invariant_report};
use filiform_core::transform::{psi_generate, rho_apply, TransformParams};
use filiform_core::{Error, QiScalar};
use serde_json::{json, Value};

/// Exact tools for second-class filiform Leibniz algebras L(β_3, …, β_n, γ).
///
/// Parameter files hold `{"n": N, "beta": ["β_3", …, "β_n"], "gamma": "γ"}`
/// with exact scalars such as "3/4" or "1/2+1*i". FILE may be `-` for stdin.
///
/// Exit codes: 0 ok, 1 check failed or not isomorphic, 2 undecided outside
/// the open set, 3 malformed input, 4 dimension mismatch, 5 outside the open
/// set, 6 I/O or JSON error, 7 anything else.
#[derive(Parser)]
#[command(name = "filiform", version, verbatim_doc_comment)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the transition polynomials ψ_3, …, ψ_{n+1}.
    Psi {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Render as LaTeX (text format only).
        #[arg(long)]
        latex: bool,
    },
    /// Leibniz, filiform and Lie checks for a table or a parameter file.
    Check {
        file: String,
        /// Table indices start at 1.
        #[arg(long)]
        one_based: bool,
    },
    /// Apply the base change (A, B, D) to a parameter file.
    Transform {
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        #[arg(long = "D", allow_hyphen_values = true)]
        d: String,
        file: String,
    },
    /// Cell, open-set status and invariant vector.
    Invariants {
        file: String,
        /// Use the printed defining polynomial for the U/F split.
        #[arg(long)]
        literal: bool,
        /// Also evaluate the printed closed forms (dimensions 6 to 8).
        #[arg(long)]
        closed: bool,
    },
    /// Decide whether two parameter files give isomorphic algebras.
    Iso { left: String, right: String },
    /// Published representative with a verified witness (dimensions 5 and 6).
    Classify { file: String },
    /// Representative families with their structure tables.
    Reps {
        #[arg(long)]
        dim: usize,
        /// Parameter value for the parametric families (default 0).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Only the family at this 1-based position.
        #[arg(long)]
        family: Option<usize>,
        #[arg(long)]
        one_based: bool,
    },
    /// Audit the published classification in dimension 5 or 6.
    Audit {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
}

enum Failure {
    Core(Error),
    Io(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(e) => match e {
                Error::UndecidedOutsideU { .. } => 2,
                Error::ParseScalar(_) | Error::InvalidParams(_) | Error::InvalidTransform(_) => 3,
                Error::DimensionMismatch(_) | Error::LengthMismatch { .. } | Error::UnsupportedDimension { .. } => 4,
                Error::OutsideOpenSet { .. } => 5,
                Error::Format(_) => 6,
                _ => 7,
            },
            Failure::Io(_) => 6,
            Failure::Internal(_) => 7,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) | Failure::Internal(m) => m.clone(),
        }
    }
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn read_params(path: &str) -> Result<ParamVector, Failure> {
    Ok(ParamVector::from_json(&read_input(path)?)?)
}

fn scalar(s: &str) -> Result<QiScalar, Failure> {
    Ok(s.parse::<QiScalar>()?)
}

fn to_value(s: String) -> Value {
    serde_json::from_str(&s).expect("library JSON is valid")
}

/// A table document, a parameter file, or a `reps` entry holding a table.
fn load_table(text: &str, one_based: bool) -> Result<StructureTable, Failure> {
    let v: Value = serde_json::from_str(text).map_err(Error::from)?;
    if let Some(t) = v.get("table") {
        return load_table(&t.to_string(), one_based);
    }
    if v.get("beta").is_some() {
        return Ok(build_second_class(&ParamVector::from_json(text)?));
    }
    Ok(StructureTable::from_json(text, one_based)?)
}

fn run_psi(n: usize, format: Format, latex: bool) -> Result<Output, Failure> {
    let sys = psi_generate(n)?;
    Ok(Output::ok(match (format, latex) {
        (Format::Json, _) => sys.to_json(),
        (Format::Text, true) => sys.to_latex(),
        (Format::Text, false) => sys.to_text(),
    }))
}

fn run_check(file: &str, one_based: bool) -> Result<Output, Failure> {
    let t = load_table(&read_input(file)?, one_based)?;
    let shift = usize::from(one_based);
    let violations = leibniz_check(&t).err().unwrap_or_default();
    let first = violations.first().map(|v| {
        let (x, y, z) = v.triple;
        let defect: serde_json::Map<String, Value> =
            v.defect.iter().map(|(k, c)| ((k + shift).to_string(), Value::String(c.to_string()))).collect();
        json!({ "triple": [x + shift, y + shift, z + shift], "defect": defect })
    });
    let lcs = lower_central_dims(&t);
    let doc = json!({
        "dim": t.dim(),
        "leibniz": violations.is_empty(),
        "violations": violations.len(),
        "first_violation": first,
        "nilpotent": lcs.nilpotent,
        "lower_central_series": lcs.dims,
        "filiform": is_filiform(&t),
        "lie": is_lie(&t),
    });
    Ok(Output { text: doc.to_string(), code: if violations.is_empty() { 0 } else { 1 } })
}

fn run_transform(a: &str, b: &str, d: &str, file: &str) -> Result<Output, Failure> {
    let tp = TransformParams::new(scalar(a)?, scalar(b)?, scalar(d)?)?;
    let p = read_params(file)?;
    Ok(Output::ok(rho_apply(&tp, &p).to_json()))
}

fn run_invariants(file: &str, literal: bool, closed: bool) -> Result<Output, Failure> {
    let p = read_params(file)?;
    let mut doc = to_value(invariant_report(&p, literal)?.to_json());
    if closed {
        let forms = closed_forms_for_dim(p.dim());
        if forms.is_empty() {
            return Err(Error::UnsupportedDimension { op: "closed forms", dim: p.dim() }.into());
        }
        let mut entries = Vec::new();
        for f in forms {
            entries.push(json!({
                "name": f.to_string(),
                "slot": f.slot(),
                "factor": f.factor().to_string(),
                "printed": closed_form_invariant(&p, f)?.to_string(),
                "corrected": closed_form_corrected(&p, f)?.to_string(),
            }));
        }
        doc["closed_forms"] = Value::Array(entries);
    }
    Ok(Output::ok(doc.to_string()))
}

fn run_iso(left: &str, right: &str) -> Result<Output, Failure> {
    let (p, q) = (read_params(left)?, read_params(right)?);
    let verdict = iso_decide(&p, &q)?;
    if !verdict.reverify(&p, &q) {
        return Err(Failure::Internal("verdict failed to re-verify".into()));
    }
    let code = if verdict.answer == Answer::Isomorphic { 0 } else { 1 };
    Ok(Output { text: verdict.to_json(), code })
}

fn run_classify(file: &str) -> Result<Output, Failure> {
    let p = read_params(file)?;
    let c = canonical_form(&p)?;
    if !c.reverify(&p) {
        return Err(Failure::Internal("classification failed to re-verify".into()));
    }
    Ok(Output::ok(c.to_json()))
}

fn rep_entry(f: &Family, lambda: &QiScalar, one_based: bool) -> Result<Value, Failure> {
    let lambda = f.is_parametric().then_some(lambda);
    let p = f.member(lambda)?;
    let mut entry = json!({
        "family": f.index(),
        "label": f.label(),
        "params": to_value(p.to_json()),
        "table": to_value(build_second_class(&p).to_json(one_based)),
    });
    if let Some(l) = lambda {
        entry["lambda"] = Value::String(l.to_string());
    }
    Ok(entry)
}

fn run_reps(dim: usize, lambda: Option<&str>, index: Option<usize>, one_based: bool) -> Result<Output, Failure> {
    let lambda = lambda.map(scalar).transpose()?.unwrap_or_else(|| QiScalar::from_int(0));
    let doc = match index {
        Some(k) => rep_entry(&family(dim, k)?, &lambda, one_based)?,
        None => Value::Array(
            representatives(dim)?
                .iter()
                .map(|f| rep_entry(f, &lambda, one_based))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    Ok(Output::ok(doc.to_string()))
}

fn run_audit(dim: usize, samples: usize, seed: u64, sequential: bool) -> Result<Output, Failure> {
    let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
    let report = verify_classification(dim, samples, seed, exec)?;
    if !report.summary.certificates_verified {
        return Err(Failure::Internal("audit certificates failed to re-verify".into()));
    }
    Ok(Output::ok(report.to_json()))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Psi { n, format, latex } => run_psi(n, format, latex),
        Command::Check { file, one_based } => run_check(&file, one_based),
        Command::Transform { a, b, d, file } => run_transform(&a, &b, &d, &file),
        Command::Invariants { file, literal, closed } => run_invariants(&file, literal, closed),
        Command::Iso { left, right } => run_iso(&left, &right),
        Command::Classify { file } => run_classify(&file),
        Command::Reps { dim, lambda, family, one_based } => run_reps(dim, lambda.as_deref(), family, one_based),
        Command::Audit { dim, samples, seed, sequential } => run_audit(dim, samples, seed, sequential),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 7 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let text = if out.text.ends_with('\n') { out.text } else { out.text + "\n" };
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(6);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
