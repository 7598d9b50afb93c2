//! Command-line front end.
//!
//! Exit codes: 0 success (property holds, bisimilar, isomorphic), 1 negative
//! verdict, 2 usage, parse or format error, 3 state limit exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{check_bpa_property, check_pa_property, oc_measure, scc_decompose};
use crate::encoding::{encode_fa, verify_encoding, EncodingError};
use crate::equivalence::{bisimilar, minimize};
use crate::semantics::{derive_automaton, Automaton, SemanticsError, DEFAULT_MAX_STATES};
use crate::syntax::{classify_theory, parse_expression, CommFn, Expression, Theory};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_STATE_LIMIT: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "regproc",
    version,
    about = "Derive, compare and analyse automata of regular process expressions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derive the automaton of an expression.
    Lts {
        #[command(flatten)]
        expr: ExprSource,
        /// Communication function file (`a b -> c` per line); empty if omitted.
        #[arg(long, value_name = "FILE")]
        gamma: Option<PathBuf>,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Decide strong bisimilarity of two automata.
    Bisim {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the bisimulation quotient of an automaton.
    Minimize {
        a: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the strongly connected components of an automaton.
    Scc {
        a: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check a necessary condition for expressibility.
    Check {
        #[arg(long, value_enum)]
        property: PropertyArg,
        a: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the OC measure of an expression without encapsulation.
    Oc {
        #[command(flatten)]
        expr: ExprSource,
        #[arg(long)]
        json: bool,
    },
    /// Print the smallest theory containing an expression.
    Classify {
        #[command(flatten)]
        expr: ExprSource,
        #[arg(long)]
        json: bool,
    },
    /// Encode a finite automaton as an expression and communication function.
    Encode {
        f: PathBuf,
        #[arg(short = 'o', long = "out", value_name = "DIR")]
        out: PathBuf,
    },
    /// Encode a finite automaton and check the encoding derives an
    /// isomorphic automaton.
    VerifyEncoding {
        f: PathBuf,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ExprSource {
    /// Expression text.
    #[arg(short = 'e', long = "expr", value_name = "EXPR")]
    expr: Option<String>,
    /// File holding the expression.
    #[arg(long, value_name = "FILE")]
    file: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PropertyArg {
    Bpa,
    Pa,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<SemanticsError> for Failure {
    fn from(e: SemanticsError) -> Self {
        Failure {
            code: EXIT_STATE_LIMIT,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type CliResult = Result<u8, Failure>;

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_expression(src: &ExprSource) -> Result<Expression, Failure> {
    let text = match (&src.expr, &src.file) {
        (Some(e), _) => e.clone(),
        (None, Some(p)) => read(p)?,
        (None, None) => return Err(Failure::usage("an expression is required")),
    };
    parse_expression(text.trim()).map_err(|e| Failure::usage(e.to_string()))
}

fn load_automaton(path: &Path) -> Result<Automaton, Failure> {
    Automaton::from_json(&read(path)?)
        .map_err(|e| Failure::usage(format!("{}: invalid automaton: {e}", path.display())))
}

fn load_gamma(path: Option<&Path>) -> Result<CommFn, Failure> {
    match path {
        None => Ok(CommFn::empty()),
        Some(p) => {
            CommFn::parse(&read(p)?).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serialises");
    s.push('\n');
    s
}

fn emit_automaton(a: &Automaton, format: Format, out: &mut dyn Write) -> CliResult {
    match format {
        Format::Json => out.write_all(a.to_json().as_bytes())?,
        Format::Dot => out.write_all(a.to_dot().as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn verdict(ok: bool) -> u8 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn execute(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Lts {
            expr,
            gamma,
            max_states,
            format,
        } => {
            if max_states == 0 {
                return Err(Failure::usage("--max-states must be positive"));
            }
            let e = load_expression(&expr)?;
            let g = load_gamma(gamma.as_deref())?;
            let a = derive_automaton(&e, &g, max_states)?;
            emit_automaton(&a, format, out)
        }
        Command::Bisim { a, b, json } => {
            let (a, b) = (load_automaton(&a)?, load_automaton(&b)?);
            let r = bisimilar(&a, &b);
            if json {
                out.write_all(json_line(&r).as_bytes())?;
            } else if r.bisimilar {
                writeln!(out, "bisimilar")?;
            } else {
                writeln!(out, "not bisimilar")?;
            }
            Ok(verdict(r.bisimilar))
        }
        Command::Minimize { a, format } => {
            emit_automaton(&minimize(&load_automaton(&a)?), format, out)
        }
        Command::Scc { a, json } => {
            let a = load_automaton(&a)?;
            let d = scc_decompose(&a);
            if json {
                out.write_all(json_line(&d).as_bytes())?;
            } else {
                for c in d.components() {
                    let kind = if d.is_trivial(c) {
                        "trivial"
                    } else {
                        "non-trivial"
                    };
                    let labels: Vec<String> =
                        d.members(c).iter().map(|&s| a.display_label(s)).collect();
                    writeln!(out, "scc {c} ({kind}): {}", labels.join(", "))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Check { property, a, json } => {
            let a = load_automaton(&a)?;
            let report = match property {
                PropertyArg::Bpa => check_bpa_property(&a),
                PropertyArg::Pa => check_pa_property(&a),
            };
            if json {
                out.write_all(report.to_json().as_bytes())?;
            } else {
                write!(out, "{report}")?;
            }
            Ok(verdict(report.passed()))
        }
        Command::Oc { expr, json } => {
            let e = load_expression(&expr)?;
            let n = oc_measure(&e).map_err(|e| Failure::usage(e.to_string()))?;
            if json {
                out.write_all(json_line(&serde_json::json!({ "oc": n })).as_bytes())?;
            } else {
                writeln!(out, "{n}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Classify { expr, json } => {
            let theory: Theory = classify_theory(&load_expression(&expr)?);
            if json {
                out.write_all(json_line(&serde_json::json!({ "theory": theory })).as_bytes())?;
            } else {
                writeln!(out, "{theory}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Encode { f, out: dir } => {
            let fa = load_automaton(&f)?;
            let enc = encode_fa(&fa).map_err(encoding_failure)?;
            fs::create_dir_all(&dir)?;
            fs::write(dir.join("expression.txt"), format!("{}\n", enc.expression))?;
            fs::write(dir.join("gamma.txt"), enc.gamma.to_string())?;
            fs::write(dir.join("manifest.json"), json_line(&enc.manifest()))?;
            writeln!(
                out,
                "encoded {} states, {} control actions, {} communication rules into {}",
                fa.num_states(),
                enc.control.all().len(),
                enc.gamma.len(),
                dir.display()
            )?;
            Ok(EXIT_OK)
        }
        Command::VerifyEncoding {
            f,
            max_states,
            json,
        } => {
            if max_states == 0 {
                return Err(Failure::usage("--max-states must be positive"));
            }
            let fa = load_automaton(&f)?;
            let r = verify_encoding(&fa, max_states).map_err(encoding_failure)?;
            if json {
                out.write_all(json_line(&r).as_bytes())?;
            } else if r.isomorphic {
                writeln!(out, "isomorphic ({} states)", fa.num_states())?;
            } else {
                writeln!(out, "not isomorphic")?;
            }
            Ok(verdict(r.isomorphic))
        }
    }
}

fn encoding_failure(e: EncodingError) -> Failure {
    match e {
        EncodingError::Semantics(s) => s.into(),
        other => Failure::usage(other.to_string()),
    }
}
