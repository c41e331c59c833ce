//! The `waring` command-line tool.

pub mod format;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{HomoPoly, Rational};
use crate::deborder::{deborder, rank_bound, rank_bound_f64, DeborderConfig, DeborderReport};
use crate::decomposition::{verify_border, waring_mismatch, BorderDecomposition, BorderVerdict};
use crate::error::Error;
use crate::oracle::{catalecticant_bound, gen_family, sylvester_rank, BinaryForm, Family, FamilySpec};

pub use format::{Document, FormatError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_LEMMA: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "waring", version, about = "Exact debordering of border Waring decompositions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DecompKind {
    Waring,
    Border,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Tangent,
    Osculating,
    Multibase,
    Random,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Tangent => Family::Tangent,
            FamilyArg::Osculating => Family::Osculating,
            FamilyArg::Multibase => Family::Multibase,
            FamilyArg::Random => Family::Random,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Turn a border decomposition of a target into a verified Waring decomposition
    Deborder {
        /// Border decomposition document
        #[arg(long)]
        border: PathBuf,
        /// Target polynomial document
        #[arg(long)]
        target: PathBuf,
        /// Where to write the Waring decomposition
        #[arg(long)]
        out: PathBuf,
        /// Where to write the report (printed to stdout otherwise)
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Parts with at most this many summands are solved directly
        #[arg(long, default_value_t = 4)]
        base_threshold: usize,
        /// Normalize and re-diagonalize after each single derivative
        #[arg(long)]
        strengthened: bool,
        /// Size of the Y block (default floor(10 sqrt r))
        #[arg(long)]
        y_size: Option<usize>,
    },
    /// Check a decomposition against a target exactly
    Verify {
        #[arg(long = "type", value_enum)]
        kind: DecompKind,
        #[arg(long)]
        decomp: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Write a border decomposition from a known family and its limit
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        j: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        nvars: usize,
        /// Number of summands (random family)
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value = "border.json")]
        out_border: PathBuf,
        #[arg(long, default_value = "target.json")]
        out_target: PathBuf,
    },
    /// Rank certificates for a target: catalecticant ranks, and Sylvester's ranks for binary forms
    Oracle {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        binary: bool,
    },
    /// Print ceil(d r^(10 sqrt r))
    Bound {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
    },
}

/// Failure of a command: exit code plus one diagnostics line.
#[derive(Debug)]
struct Failure {
    code: i32,
    lemma: Option<String>,
    message: String,
    witness: Option<String>,
}

impl Failure {
    fn malformed(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_MALFORMED,
            lemma: None,
            message: message.into(),
            witness: None,
        }
    }

    fn verify(message: impl Into<String>, witness: Option<String>) -> Self {
        Failure {
            code: EXIT_VERIFY,
            lemma: None,
            message: message.into(),
            witness,
        }
    }

    fn diagnostic(&self) -> Value {
        json!({ "lemma": self.lemma, "message": self.message, "witness": self.witness })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LemmaCheckFailed {
                lemma,
                message,
                witness,
            } => Failure {
                code: EXIT_LEMMA,
                lemma: Some(lemma.tag().to_string()),
                message,
                witness,
            },
            Error::InvalidArgument(_) | Error::DimensionMismatch { .. } | Error::DegreeMismatch { .. } => {
                Failure::malformed(e.to_string())
            }
            Error::PoleAtZero { ref monomial, order } => {
                Failure::verify(e.to_string(), Some(format!("pole of order {order} at {monomial}")))
            }
            e => Failure::verify(e.to_string(), None),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read_document(path: &Path) -> std::result::Result<Document, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))?;
    Document::parse(&text).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
}

fn read_polynomial(path: &Path) -> std::result::Result<HomoPoly<Rational>, Failure> {
    match read_document(path)? {
        Document::Polynomial(p) => Ok(p),
        d => Err(Failure::malformed(format!("{}: expected a polynomial, found {}", path.display(), d.kind()))),
    }
}

fn read_border(path: &Path) -> std::result::Result<BorderDecomposition, Failure> {
    match read_document(path)? {
        Document::Border(b) => Ok(b),
        d => Err(Failure::malformed(format!("{}: expected a border decomposition, found {}", path.display(), d.kind()))),
    }
}

fn write_document(path: &Path, doc: &Document) -> Outcome {
    fs::write(path, doc.to_json_string()).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
}

fn check_shape(f: &HomoPoly<Rational>, nvars: usize, degree: u32) -> Outcome {
    if f.nvars() != nvars || f.degree() != degree {
        return Err(Failure::malformed(format!(
            "target has {} variables and degree {}, decomposition has {nvars} and {degree}",
            f.nvars(),
            f.degree()
        )));
    }
    Ok(())
}

fn border_failure(verdict: &BorderVerdict) -> Failure {
    match verdict {
        BorderVerdict::Pole { monomial, order } => Failure::verify(
            "border sum has a pole at eps = 0",
            Some(format!("pole of order {order} at {monomial}")),
        ),
        BorderVerdict::Mismatch { monomial } => {
            Failure::verify("limit differs from the target", Some(monomial.to_string()))
        }
        _ => Failure::verify("border verification failed", None),
    }
}

pub fn report_value(report: &DeborderReport, flags: Value) -> Value {
    let trace: Vec<Value> = report
        .trace
        .iter()
        .map(|t| json!({ "case": t.case.tag(), "r": t.r, "d": t.d, "i": t.i, "k": t.k, "depth": t.depth }))
        .collect();
    json!({
        "input_rank": report.input_rank,
        "achieved_rank": report.achieved_rank,
        "paper_bound": report.rank_bound.to_string(),
        "verified": report.verified,
        "trace": trace,
        "flags": flags,
    })
}

fn run_command(cmd: &Command, out: &mut dyn Write) -> Outcome {
    let mut emit = |v: Value| -> Outcome {
        writeln!(out, "{v}").map_err(|e| Failure::malformed(e.to_string()))
    };
    match cmd {
        Command::Deborder {
            border,
            target,
            out: out_path,
            report,
            seed,
            base_threshold,
            strengthened,
            y_size,
        } => {
            let b = read_border(border)?;
            let f = read_polynomial(target)?;
            check_shape(&f, b.nvars(), b.degree())?;
            let verdict = verify_border(&b, &f)?;
            if !verdict.is_verified() {
                return Err(border_failure(&verdict));
            }
            let config = DeborderConfig {
                seed: *seed,
                base_threshold: *base_threshold,
                strengthened: *strengthened,
                y_size: *y_size,
            };
            let (w, rep) = deborder(&f, &b, &config)?;
            write_document(out_path, &Document::Waring(w))?;
            let flags = json!({
                "border": border.display().to_string(),
                "target": target.display().to_string(),
                "out": out_path.display().to_string(),
                "report": report.as_ref().map(|p| p.display().to_string()),
                "seed": seed,
                "base_threshold": base_threshold,
                "strengthened": strengthened,
                "y_size": y_size,
            });
            let doc = Document::Report(report_value(&rep, flags));
            match report {
                Some(p) => write_document(p, &doc),
                None => emit(doc.to_value()),
            }
        }
        Command::Verify { kind, decomp, target } => {
            let f = read_polynomial(target)?;
            match kind {
                DecompKind::Waring => {
                    let w = match read_document(decomp)? {
                        Document::Waring(w) => w,
                        d => return Err(Failure::malformed(format!("expected a waring decomposition, found {}", d.kind()))),
                    };
                    check_shape(&f, w.nvars(), w.degree())?;
                    match waring_mismatch(&w, &f)? {
                        None => emit(json!({ "verified": true, "rank": w.rank() })),
                        Some(m) => Err(Failure::verify("expansion differs from the target", Some(m.to_string()))),
                    }
                }
                DecompKind::Border => {
                    let b = read_border(decomp)?;
                    check_shape(&f, b.nvars(), b.degree())?;
                    let verdict = verify_border(&b, &f)?;
                    if verdict.is_verified() {
                        emit(json!({ "verified": true, "rank": b.rank(), "q": verdict.q() }))
                    } else {
                        Err(border_failure(&verdict))
                    }
                }
            }
        }
        Command::Gen {
            family,
            d,
            j,
            seed,
            nvars,
            rank,
            out_border,
            out_target,
        } => {
            let spec = FamilySpec {
                family: (*family).into(),
                d: *d,
                j: *j,
                seed: *seed,
                nvars: *nvars,
                rank: *rank,
            };
            let (f, b) = gen_family(&spec)?;
            write_document(out_border, &Document::Border(b))?;
            write_document(out_target, &Document::Polynomial(f))
        }
        Command::Oracle { target, binary } => {
            let f = read_polynomial(target)?;
            if f.is_zero() {
                return Err(Failure::malformed("target is zero"));
            }
            let cat: Vec<usize> = (0..=f.degree()).map(|s| catalecticant_bound(&f, s)).collect();
            let lower = cat.iter().copied().max().unwrap_or(0);
            let mut v = json!({ "catalecticant": cat, "lower_bound": lower });
            if *binary {
                if f.nvars() != 2 {
                    return Err(Failure::malformed(format!("--binary needs 2 variables, target has {}", f.nvars())));
                }
                let (wr, bwr) = sylvester_rank(&BinaryForm::from_poly(&f)?);
                v["wr"] = json!(wr);
                v["bwr"] = json!(bwr);
            }
            emit(v)
        }
        Command::Bound { d, r } => emit(json!({
            "d": d,
            "r": r,
            "paper_bound": rank_bound(*d, *r).to_string(),
            "approx": rank_bound_f64(*d, *r),
        })),
    }
}

/// Runs a parsed command. Diagnostics go to `err` as JSON lines.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match run_command(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "{}", f.diagnostic());
            f.code
        }
    }
}

/// Parses arguments and runs; argument errors exit with the malformed-input code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(&cli, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Lemma;

    #[test]
    fn exit_codes_follow_error_kinds() {
        let f = Failure::from(Error::LemmaCheckFailed {
            lemma: Lemma::LocalPartition,
            message: "diverges".into(),
            witness: Some("x1^2".into()),
        });
        assert_eq!(f.code, EXIT_LEMMA);
        assert_eq!(f.diagnostic()["lemma"], json!("local-partition"));
        assert_eq!(f.diagnostic()["witness"], json!("x1^2"));
        assert_eq!(Failure::from(Error::InvalidArgument("x".into())).code, EXIT_MALFORMED);
        assert_eq!(Failure::from(Error::VerificationFailed("x".into())).code, EXIT_VERIFY);
        let pole = Failure::from(Error::PoleAtZero {
            monomial: "x1".into(),
            order: 2,
        });
        assert_eq!(pole.code, EXIT_VERIFY);
        assert!(pole.witness.unwrap().contains("order 2"));
    }

    #[test]
    fn bad_arguments_are_malformed_input() {
        assert_eq!(main_with(["waring", "gen", "--family", "cubic", "--d", "3"]), EXIT_MALFORMED);
        assert_eq!(main_with(["waring", "frobnicate"]), EXIT_MALFORMED);
    }
}
