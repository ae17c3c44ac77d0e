//! Command-line surface: `certify`, `local`, `sstest` and `group-audit`.

mod file;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

pub use file::{parse_curve_file, parse_curve_str, Coeff, CurveFile, CurveInput, FieldSpec, ParsedCurve, QuadCoeff};

use crate::certify::{
    certify, certify_external, curve_json, external_local_analysis, find_semistabilizing_twist,
    local_modularity_analysis, Certificate, CertifyOptions, LocalAnalysis, Verdict,
};
use crate::exact::slots_above;
use crate::galois::{irreducibility_status, AssumeFlag, Assumptions, DEFAULT_L_BOUND};
use crate::grouptheory::audit_borel;
use crate::localred::{is_semistable, tate};

pub const LBOUND_ENV: &str = "MODCERT_LBOUND";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("io: {0}")]
    Io(String),
    #[error("{0}")]
    Engine(String),
}

fn engine<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Engine(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "modcert", about = "Certifying modularity decisions for elliptic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify one curve file, or every *.json file of a corpus directory.
    Certify {
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        file: Option<PathBuf>,
        /// Output path for the certificate (a directory with --corpus).
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, value_parser = parse_flag)]
        assume: Vec<AssumeFlag>,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Local analysis at every additive prime above 5 or 7.
    Local {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["5", "7"]))]
        prime: String,
        file: PathBuf,
        #[arg(long, value_parser = parse_flag)]
        assume: Vec<AssumeFlag>,
    },
    /// Tate's algorithm at every prime above 3, then the twist search.
    Sstest { file: PathBuf },
    /// Borel subgroup audit and exceptional thresholds.
    GroupAudit,
}

fn parse_flag(s: &str) -> Result<AssumeFlag, String> {
    s.parse().map_err(|e: crate::galois::GaloisError| e.to_string())
}

/// Frobenius bound from the environment, defaulting to 1000.
pub fn l_bound_from_env() -> Result<u64, CliError> {
    match std::env::var(LBOUND_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{LBOUND_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_L_BOUND),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serialises");
    s.push('\n');
    s
}

fn merged(file: &Assumptions, cli: &[AssumeFlag]) -> Assumptions {
    Assumptions::new(file.flags.iter().copied().chain(cli.iter().copied()))
}

/// Certificate for one parsed curve, with its name echoed.
pub fn certify_parsed(p: &ParsedCurve, extra: &[AssumeFlag], opts: &CertifyOptions) -> Result<Certificate, CliError> {
    let a = merged(&p.assumptions, extra);
    for q in [5, 7] {
        a.for_prime(q).map_err(engine)?;
    }
    let mut cert = match &p.curve {
        CurveInput::Computable(c) => certify(c, &a, opts),
        CurveInput::External(e) => certify_external(e, &a),
    }
    .map_err(engine)?;
    if let (Some(name), Value::Object(m)) = (&p.name, &mut cert.curve) {
        m.insert("name".into(), json!(name));
    }
    Ok(cert)
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRow {
    pub file: String,
    pub outcome: Result<(Verdict, usize), String>,
}

/// Certifies every `*.json` file of `dir` independently, sorted by name.
pub fn run_corpus(dir: &Path, out_dir: Option<&Path>, extra: &[AssumeFlag], opts: &CertifyOptions) -> Result<Vec<CorpusRow>, CliError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if let Some(o) = out_dir {
        std::fs::create_dir_all(o).map_err(|e| CliError::Io(format!("{}: {e}", o.display())))?;
    }
    let results: Vec<Result<Certificate, CliError>> = std::thread::scope(|s| {
        let handles: Vec<_> = files
            .iter()
            .map(|f| s.spawn(move || parse_curve_file(f).and_then(|p| certify_parsed(&p, extra, opts))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(CliError::Engine("worker panicked".into()))))
            .collect()
    });
    let mut rows = Vec::new();
    for (f, r) in files.iter().zip(results) {
        let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let outcome = match r {
            Ok(cert) => {
                if let Some(o) = out_dir {
                    let stem = f.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    write_file(&o.join(format!("{stem}.cert.json")), &cert.to_json_string())?;
                }
                Ok((cert.verdict.clone(), cert.steps.len()))
            }
            Err(e) => Err(e.to_string()),
        };
        rows.push(CorpusRow { file: name, outcome });
    }
    Ok(rows)
}

fn corpus_exit(rows: &[CorpusRow]) -> i32 {
    if rows.iter().any(|r| r.outcome.is_err()) {
        1
    } else if rows.iter().any(|r| matches!(r.outcome, Ok((Verdict::Inconclusive(_), _)))) {
        2
    } else {
        0
    }
}

fn summary_table(rows: &[CorpusRow]) -> String {
    let width = rows.iter().map(|r| r.file.len()).max().unwrap_or(4).max(4);
    let mut s = format!("{:<width$}  {:>5}  verdict\n", "file", "steps");
    for r in rows {
        match &r.outcome {
            Ok((v, n)) => s.push_str(&format!("{:<width$}  {:>5}  {v}\n", r.file, n)),
            Err(e) => s.push_str(&format!("{:<width$}  {:>5}  error: {e}\n", r.file, "-")),
        }
    }
    let ok = rows.iter().filter(|r| matches!(r.outcome, Ok((Verdict::Modular, _)))).count();
    s.push_str(&format!("{ok}/{} modular\n", rows.len()));
    s
}

/// Local analysis at `p` for a parsed curve; computes the residual status
/// unless a flag supplies it.
pub fn local_report(p: &ParsedCurve, prime: u64, extra: &[AssumeFlag], opts: &CertifyOptions) -> Result<Value, CliError> {
    let a = merged(&p.assumptions, extra);
    let (analyses, status, semistable): (Vec<LocalAnalysis>, Value, Vec<String>) = match &p.curve {
        CurveInput::Computable(c) => {
            let st = irreducibility_status(c, prime, &a, opts.l_bound).map_err(engine)?;
            if !st.is_irreducible() {
                return Err(CliError::Engine(format!(
                    "irreducibility mod {prime} not established ({}); pass --assume irreducible-{prime} to override",
                    st.to_json()
                )));
            }
            let mut out = Vec::new();
            let mut semi = Vec::new();
            for slot in slots_above(c.radicand(), prime).map_err(engine)? {
                let tr = tate(c, &slot).map_err(engine)?;
                if tr.local.kodaira.is_additive() {
                    out.push(local_modularity_analysis(c, &slot, &st).map_err(engine)?);
                } else {
                    semi.push(slot.label());
                }
            }
            (out, st.to_json(), semi)
        }
        CurveInput::External(e) => {
            let out = external_local_analysis(e, prime, &a).map_err(engine)?;
            let semi = e
                .local
                .iter()
                .filter(|l| l.slot.p == prime && !l.kodaira.is_additive())
                .map(|l| l.slot.label.clone())
                .collect();
            (out, json!({ "status": "irreducible", "assumed": true }), semi)
        }
    };
    Ok(json!({
        "prime": prime,
        "irreducibility": status,
        "semistable_slots": semistable,
        "additive_slots": analyses.iter().map(LocalAnalysis::report_json).collect::<Vec<_>>(),
    }))
}

/// Tate output at every prime above 3 and the semistabilising twist.
pub fn sstest_report(p: &ParsedCurve) -> Result<Value, CliError> {
    let CurveInput::Computable(c) = &p.curve else {
        return Err(CliError::Input("sstest needs a curve over Q or a real quadratic field".into()));
    };
    let mut slots = Vec::new();
    for slot in slots_above(c.radicand(), 3).map_err(engine)? {
        let tr = tate(c, &slot).map_err(engine)?;
        slots.push(json!({ "local": tr.local.to_json(), "semistable": is_semistable(&tr.local) }));
    }
    let twist = match find_semistabilizing_twist(c) {
        Ok(t) => t.to_json(),
        Err(e) => json!({ "error": e.to_string() }),
    };
    Ok(json!({ "curve": curve_json(c), "slots_above_3": slots, "twist": twist }))
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let opts = CertifyOptions { l_bound: l_bound_from_env()? };
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match cli.command {
        Command::Certify { file, json, assume, corpus } => {
            if let Some(dir) = corpus {
                let rows = run_corpus(&dir, json.as_deref(), &assume, &opts)?;
                out.write_all(summary_table(&rows).as_bytes()).map_err(io)?;
                return Ok(corpus_exit(&rows));
            }
            let path = file.expect("clap enforces file or --corpus");
            let cert = certify_parsed(&parse_curve_file(&path)?, &assume, &opts)?;
            let body = cert.to_json_string();
            match json {
                Some(o) => {
                    write_file(&o, &body)?;
                    writeln!(out, "{}: {}", path.display(), cert.verdict).map_err(io)?;
                }
                None => out.write_all(body.as_bytes()).map_err(io)?,
            }
            Ok(cert.verdict.exit_code())
        }
        Command::Local { prime, file, assume } => {
            let p: u64 = prime.parse().expect("restricted to 5 or 7");
            let report = local_report(&parse_curve_file(&file)?, p, &assume, &opts)?;
            out.write_all(pretty(&report).as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Sstest { file } => {
            let report = sstest_report(&parse_curve_file(&file)?)?;
            out.write_all(pretty(&report).as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::GroupAudit => {
            let r = audit_borel().map_err(engine)?;
            out.write_all(pretty(&serde_json::to_value(&r).expect("serialises")).as_bytes()).map_err(io)?;
            Ok(0)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status: 0 on Modular or a report, 2 on Inconclusive, 1 on any error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
