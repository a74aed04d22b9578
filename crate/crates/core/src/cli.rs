//! The `bnharm` command line. [`run`] takes the argument vector and two sinks
//! and returns the process exit code: 0 on success, 1 on a domain error such
//! as a pole of `κ` or a partition that does not fit, 2 on a usage error.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::evaluation::{h_at_first_unit, EvalReport, Method};
use crate::harmonic::{gram_det_closed, gram_matrix, h_expansion};
use crate::matrix::RatMatrix;
use crate::partition::{enumerate, Partition};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::symfunc::{e1_coeff, matrix_a, matrix_b_by_inversion, matrix_b_closed};
use crate::verify::run_all;

#[derive(Parser, Debug)]
#[command(name = "bnharm", version, about = "Exact B_N-invariant spherical harmonics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Residue,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List P_n^(N) in canonical order.
    Partitions {
        #[arg(long)]
        n: u32,
        #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
        nvars: u32,
        /// Only partitions with λ_1 = λ_2.
        #[arg(long)]
        tilde: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The e_1-expansion coefficient ⟨λ|ν⟩.
    Acoeff {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        nu: String,
    },
    /// Transition matrix A or B over P_n^(N).
    Transition {
        #[arg(long, value_enum, ignore_case = true)]
        which: Which,
        #[arg(long)]
        n: u32,
        #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
        nvars: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// One entry B(μ,λ) from the closed formula.
    Bcoeff {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        lambda: String,
    },
    /// Monomial expansion of h_μ in m_λ(x²).
    Harmonic {
        #[arg(long)]
        mu: String,
        #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
        nvars: u32,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        kappa: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Gram matrix ⟨h_λ, h_μ⟩_h.
    Gram {
        #[arg(long)]
        n: u32,
        #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
        nvars: u32,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        kappa: String,
        /// Restrict to the harmonic labels λ_1 = λ_2.
        #[arg(long)]
        tilde: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Determinant of the harmonic Gram matrix.
    Gramdet {
        #[arg(long)]
        n: u32,
        #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
        nvars: u32,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        kappa: String,
        /// Use the closed product formula instead of elimination.
        #[arg(long)]
        closed: bool,
    },
    /// h_λ(1^N) by the direct sum and/or the residue transformation.
    EvalOnes {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        kappa: String,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
    },
    /// h_λ(1,0,...,0).
    EvalE1 {
        #[arg(long)]
        lambda: String,
        #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
        nvars: u32,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        kappa: String,
    },
    /// Run the self-check suites.
    Verify {
        #[arg(long = "max-n", default_value_t = 4)]
        max_n: u32,
    },
}

pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
                return 0;
            }
            let _ = write!(err, "{text}");
            return 2;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn partition(text: &str) -> Result<Partition> {
    text.parse()
}

fn kappa(text: &str) -> Result<Rational> {
    parse_rational(text)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Malformed(format!("write failed: {e}")))
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    emit(out, &text)
}

fn emit_value(out: &mut dyn Write, value: &Rational) -> Result<()> {
    emit_json(out, &json!(format_rational(value)))
}

fn emit_matrix(out: &mut dyn Write, m: &RatMatrix, format: Format) -> Result<()> {
    match format {
        Format::Json => emit_json(out, &m.to_json()),
        Format::Csv => emit(out, &m.to_csv()),
        Format::Text => emit(out, &matrix_text(m)),
    }
}

fn matrix_text(m: &RatMatrix) -> String {
    let row_names: Vec<String> = m.row_labels().iter().map(|l| l.to_string()).collect();
    let header: Vec<String> = m.col_labels().iter().map(|l| l.to_string()).collect();
    let cells: Vec<Vec<String>> = m
        .rows()
        .iter()
        .map(|row| row.iter().map(format_rational).collect())
        .collect();
    let first = row_names.iter().map(String::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..header.len())
        .map(|j| cells.iter().map(|r| r[j].len()).chain([header[j].len()]).max().unwrap_or(0))
        .collect();
    let mut text = format!("{:first$}", "");
    for (h, w) in header.iter().zip(&widths) {
        text.push_str(&format!("  {h:>w$}"));
    }
    text.push('\n');
    for (name, row) in row_names.iter().zip(&cells) {
        text.push_str(&format!("{name:first$}"));
        for (c, w) in row.iter().zip(&widths) {
            text.push_str(&format!("  {c:>w$}"));
        }
        text.push('\n');
    }
    text
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Partitions { n, nvars, tilde, format } => {
            let nvars = nvars as usize;
            let list = enumerate(n, nvars, tilde);
            match format {
                Format::Json => {
                    let labels: Vec<String> = list.iter().map(|l| l.to_string()).collect();
                    emit_json(out, &json!(labels))?;
                }
                Format::Csv | Format::Text => {
                    let text: String = list.iter().map(|l| format!("{l}\n")).collect();
                    emit(out, &text)?;
                }
            }
        }
        Command::Acoeff { lambda, nu } => {
            emit_value(out, &e1_coeff(&partition(&lambda)?, &partition(&nu)?)?)?;
        }
        Command::Transition { which, n, nvars, format } => {
            let nvars = nvars as usize;
            let m = match which {
                Which::A => matrix_a(n, nvars),
                Which::B => matrix_b_by_inversion(n, nvars),
            };
            emit_matrix(out, &m, format)?;
        }
        Command::Bcoeff { mu, lambda } => {
            emit_value(out, &matrix_b_closed(&partition(&mu)?, &partition(&lambda)?)?)?;
        }
        Command::Harmonic { mu, nvars, kappa: k, format } => {
            let nvars = nvars as usize;
            let h = h_expansion(&partition(&mu)?, nvars, &kappa(&k)?)?;
            let mut terms: Vec<(&Partition, &Rational)> = h.coeffs.iter().collect();
            terms.sort_by(|a, b| a.0.canonical_cmp(b.0));
            match format {
                Format::Json => {
                    let list: Vec<Value> = terms
                        .iter()
                        .map(|(l, c)| json!({ "lambda": l.to_string(), "coef": format_rational(c) }))
                        .collect();
                    emit_json(
                        out,
                        &json!({
                            "mu": h.mu.to_string(),
                            "N": nvars,
                            "kappa": format_rational(&h.kappa),
                            "terms": list,
                        }),
                    )?;
                }
                Format::Csv => {
                    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
                    w.write_record(["lambda", "coef"]).expect("in-memory write");
                    for (l, c) in &terms {
                        w.write_record([l.to_string(), format_rational(c)]).expect("in-memory write");
                    }
                    let bytes = w.into_inner().expect("in-memory write");
                    emit(out, &String::from_utf8(bytes).expect("utf-8"))?;
                }
                Format::Text => {
                    let text: String = terms
                        .iter()
                        .map(|(l, c)| format!("{} * m[{l}]\n", format_rational(c)))
                        .collect();
                    emit(out, &text)?;
                }
            }
        }
        Command::Gram { n, nvars, kappa: k, tilde, format } => {
            let nvars = nvars as usize;
            emit_matrix(out, &gram_matrix(n, nvars, &kappa(&k)?, tilde)?, format)?;
        }
        Command::Gramdet { n, nvars, kappa: k, closed } => {
            let nvars = nvars as usize;
            let k = kappa(&k)?;
            let det = if closed {
                gram_det_closed(n, nvars, &k)?
            } else {
                gram_matrix(n, nvars, &k, true)?.determinant()?
            };
            emit_value(out, &det)?;
        }
        Command::EvalOnes { lambda, kappa: k, method } => {
            let method = match method {
                MethodArg::Direct => Method::Direct,
                MethodArg::Residue => Method::Residue,
                MethodArg::Both => Method::Both,
            };
            let report = EvalReport::compute(&partition(&lambda)?, &kappa(&k)?, method)?;
            emit_json(out, &report.to_json())?;
        }
        Command::EvalE1 { lambda, nvars, kappa: k } => {
            let nvars = nvars as usize;
            emit_value(out, &h_at_first_unit(&partition(&lambda)?, nvars, &kappa(&k)?)?)?;
        }
        Command::Verify { max_n } => {
            let results = run_all(max_n);
            let mut text = String::new();
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("{status} {} ({} checks, {} ms)\n", r.name, r.checks, r.millis));
            }
            emit(out, &text)?;
            if results.iter().any(|r| !r.passed) {
                return Ok(1);
            }
        }
    }
    Ok(0)
}
