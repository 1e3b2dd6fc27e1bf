mod format;
mod grid;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fracsum_core::essence::DEFAULT_H_MIN;
use fracsum_core::fracsum::{DEFAULT_MAX_TERMS, DEFAULT_TOL};
use fracsum_core::parser::{parse, parse_catalog, ExprError};
use fracsum_core::verify::{run_suite, Suite};
use fracsum_core::{
    essence, essence_numeric, frac_sum, frac_sum_series, frac_sum_taylor, hash_sum, Complex64, Error,
    Method, Provenance, SumResult,
};
use serde::Serialize;

use crate::format::{fmt_complex, fmt_real};
use crate::grid::Axis;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_NUMERIC: u8 = 4;
const EXIT_IO: u8 = 5;

/// Fractional finite sums, essences and #-sums of catalog functions of k.
#[derive(Parser)]
#[command(name = "fracsum", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Σ_{k=from}^{to} f(k) for complex bounds.
    Sum {
        /// Expression in k, e.g. "1/k" or "exp(pi*i*k)*k".
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Lower bound (a constant expression such as "1", "-0.5" or "1+2i").
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        from: String,
        /// Upper bound.
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, value_enum, default_value_t = MethodArg::ClosedForm)]
        method: MethodArg,
        /// Tolerance for the series engine.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Term limit for the series engine.
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        max_terms: usize,
        /// Number of terms for the Taylor engine.
        #[arg(long, default_value_t = 40)]
        terms: usize,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the essence ess(f).
    Essence {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Use the numeric limit definition instead of closed forms.
        #[arg(long)]
        numeric: bool,
        /// Smallest step of the numeric limit schedule.
        #[arg(long, default_value_t = DEFAULT_H_MIN)]
        h_min: f64,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the #-sum #Σ_{k≥1} f(k) = −ess(F) with F′ = f.
    Regularize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Write Σ_{k=1}^{z} f(k) over a rectangle of the complex plane as CSV.
    Grid {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Real range lo:hi.
        #[arg(long, default_value = "-4.5:1.5", allow_hyphen_values = true)]
        re: String,
        /// Imaginary range lo:hi.
        #[arg(long, default_value = "-3:3", allow_hyphen_values = true)]
        im: String,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded property suite, or `all` of them.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Random cases per property.
        #[arg(long, default_value_t = 300)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    ClosedForm,
    Series,
    Taylor,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<ExprError> for Failure {
    fn from(err: ExprError) -> Self {
        let code = match err {
            ExprError::Parse(_) => EXIT_PARSE,
            ExprError::Unsupported(_) => EXIT_UNSUPPORTED,
        };
        Failure::new(code, err.to_string())
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::NotInCatalog(_)
            | Error::NoPrimitiveInCatalog(_)
            | Error::NonDecaying(_)
            | Error::UnsupportedForTaylor(_)
            | Error::NonPolynomial(_)
            | Error::DegreeCap { .. } => EXIT_UNSUPPORTED,
            Error::BernoulliBound { .. }
            | Error::Pole { .. }
            | Error::NonSummable(_)
            | Error::PoleAtBound { .. }
            | Error::MaxTermsExceeded { .. } => EXIT_NUMERIC,
        };
        Failure::new(code, err.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure::new(EXIT_IO, err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Sum {
            expr,
            from,
            to,
            method,
            tol,
            max_terms,
            terms,
            json,
        } => {
            let e = parse_catalog(&expr)?;
            let (x, y) = (complex_literal(&from)?, complex_literal(&to)?);
            let r = match method {
                MethodArg::ClosedForm => frac_sum(&e, x, y)?,
                MethodArg::Series => from_one(x, y, |t| frac_sum_series(&e, t, tol, max_terms))?,
                MethodArg::Taylor => from_one(x, y, |t| frac_sum_taylor(&e, t, terms))?,
            };
            print_sum(&r, json)
        }
        Command::Essence {
            expr,
            numeric,
            h_min,
            json,
        } => {
            let e = parse_catalog(&expr)?;
            if h_min.is_nan() || h_min <= 0.0 {
                return Err(Failure::new(EXIT_PARSE, "--h-min must be positive"));
            }
            let r = if numeric { essence_numeric(&e, h_min)? } else { essence(&e)? };
            let provenance = match r.provenance {
                Provenance::ClosedForm => "closed_form",
                Provenance::NumericLimit => "numeric_limit",
            };
            if json {
                emit_json(&ValueJson {
                    value_re: r.value.re,
                    value_im: r.value.im,
                    method: provenance,
                    err: r.err_estimate,
                    terms: None,
                    classically_convergent: None,
                })
            } else {
                println!("{}", fmt_complex(r.value));
                println!("provenance: {provenance}");
                println!("err: {}", fmt_real(r.err_estimate));
                Ok(())
            }
        }
        Command::Regularize { expr, json } => {
            let e = parse_catalog(&expr)?;
            let r = hash_sum(&e)?;
            if json {
                emit_json(&ValueJson {
                    value_re: r.value.re,
                    value_im: r.value.im,
                    method: "hash_sum",
                    err: 0.0,
                    terms: None,
                    classically_convergent: Some(r.classically_convergent),
                })
            } else {
                println!("{}", fmt_complex(r.value));
                println!("classically convergent: {}", if r.classically_convergent { "yes" } else { "no" });
                Ok(())
            }
        }
        Command::Grid {
            expr,
            re,
            im,
            step,
            out,
        } => {
            let e = parse_catalog(&expr)?;
            if !(step > 0.0 && step.is_finite()) {
                return Err(Failure::new(EXIT_PARSE, "--step must be positive"));
            }
            let (re_lo, re_hi) = range(&re)?;
            let (im_lo, im_hi) = range(&im)?;
            let csv = grid::render(&e, Axis::new(re_lo, re_hi, step), Axis::new(im_lo, im_hi, step), step);
            match out {
                Some(path) => std::fs::write(&path, csv)
                    .map_err(|err| Failure::new(EXIT_IO, format!("{}: {err}", path.display()))),
                None => Ok(std::io::stdout().lock().write_all(csv.as_bytes())?),
            }
        }
        Command::Verify { suite, seed, count } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>().map_err(|m| Failure::new(EXIT_PARSE, m))?]
            };
            let mut all_passed = true;
            for s in suites {
                let report = run_suite(s, seed, count);
                println!("{report}");
                all_passed &= report.passed();
            }
            if all_passed {
                Ok(())
            } else {
                Err(Failure::new(EXIT_VERIFY_FAILED, "verification failed"))
            }
        }
    }
}

/// Σ_{k=x}^{y} from an engine that evaluates Σ_{k=1}^{t}.
fn from_one(
    x: Complex64,
    y: Complex64,
    engine: impl Fn(Complex64) -> fracsum_core::Result<SumResult>,
) -> fracsum_core::Result<SumResult> {
    let upper = engine(y)?;
    if x == Complex64::new(1.0, 0.0) {
        return Ok(upper);
    }
    let lower = engine(x - 1.0)?;
    Ok(SumResult {
        value: upper.value - lower.value,
        method: upper.method,
        err_estimate: upper.err_estimate + lower.err_estimate,
        terms_used: upper.terms_used.max(lower.terms_used),
    })
}

fn complex_literal(src: &str) -> Result<Complex64, Failure> {
    let tree = parse(src).map_err(|e| Failure::new(EXIT_PARSE, format!("bound `{src}`: {e}")))?;
    let value = tree
        .evaluate_constant()
        .ok_or_else(|| Failure::new(EXIT_PARSE, format!("bound `{src}` must not depend on k")))?;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Failure::new(EXIT_PARSE, format!("bound `{src}` is not finite")));
    }
    Ok(value)
}

fn range(src: &str) -> Result<(f64, f64), Failure> {
    let bad = || Failure::new(EXIT_PARSE, format!("range `{src}` must look like lo:hi with lo ≤ hi"));
    let (lo, hi) = src.split_once(':').ok_or_else(bad)?;
    let (lo, hi) = (complex_literal(lo)?, complex_literal(hi)?);
    if lo.im != 0.0 || hi.im != 0.0 || lo.re > hi.re {
        return Err(bad());
    }
    Ok((lo.re, hi.re))
}

#[derive(Clone, Copy, Serialize)]
struct ValueJson {
    value_re: f64,
    value_im: f64,
    method: &'static str,
    err: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classically_convergent: Option<bool>,
}

fn emit_json(v: &ValueJson) -> Result<(), Failure> {
    let v = &ValueJson {
        value_re: v.value_re + 0.0,
        value_im: v.value_im + 0.0,
        ..*v
    };
    let text = serde_json::to_string(v).map_err(|e| Failure::new(EXIT_IO, e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn print_sum(r: &SumResult, json: bool) -> Result<(), Failure> {
    if json {
        return emit_json(&ValueJson {
            value_re: r.value.re,
            value_im: r.value.im,
            method: r.method.as_str(),
            err: r.err_estimate,
            terms: Some(r.terms_used),
            classically_convergent: None,
        });
    }
    println!("{}", fmt_complex(r.value));
    println!("method: {}", r.method);
    println!("err: {}", fmt_real(r.err_estimate));
    if r.method != Method::ClosedForm {
        println!("terms: {}", r.terms_used);
    }
    Ok(())
}
