use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use idemrank::error::Error;
use idemrank::io::{parse_generating_set, parse_matrix, parse_operator, serialize_matrix};
use idemrank::matrix::Matrix;
use idemrank::operator::{classify, separating_witness, ClassificationResult, UvForm};
use idemrank::rank::{factor_rank, factor_rank_bounded, rank_one_factor};
use idemrank::semimodule::{extract_basis, in_span, GeneratingSet};
use idemrank::semiring::{check_axioms, default_sample, SemiringId};
use idemrank::verify::{run_all, run_suite, SuiteReport, SUITE_NAMES};

/// Exact semiring linear algebra: factor rank, bases, and rank-preserver
/// classification.
#[derive(Parser)]
#[command(name = "idemrank", version, about)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Exact factor rank of a matrix, with a B * C certificate
    Rank {
        file: PathBuf,
        /// Give up beyond this many rank-1 factors
        #[arg(long = "max-k")]
        max_k: Option<usize>,
    },
    /// Outer-product factorization of a rank-1 matrix
    Rank1 { file: PathBuf },
    /// Decide whether a target matrix lies in the span of generators
    Span {
        target: PathBuf,
        #[arg(required = true)]
        gens: Vec<PathBuf>,
    },
    /// Extract a basis from a generating set and report its dimension
    Basis { gens: PathBuf },
    /// Classify an operator as a rank preserver or exhibit a violation
    Classify { op: PathBuf },
    /// A matrix C separating two rank-1 matrices: {r(A+C), r(B+C)} = {1, 2}
    Witness { a: PathBuf, b: PathBuf },
    /// Apply an operator to a matrix
    Apply { op: PathBuf, matrix: PathBuf },
    /// Run verification suites
    #[command(group(clap::ArgGroup::new("selection").required(true).args(["suite", "all"])))]
    Verify {
        /// One suite by name
        #[arg(long, value_parser = SUITE_NAMES)]
        suite: Option<String>,
        /// Every suite
        #[arg(long)]
        all: bool,
        /// Seed for the randomized cases
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Check the semiring axioms on the default sample of an instance
    Axioms {
        #[arg(long, value_parser = ["b2", "maxplus", "maxtimes-q", "maxtimes-n"])]
        semiring: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse { .. } => 2,
                Error::OutOfScope(_) | Error::ResourceLimit(_) | Error::UnsupportedDomain(_) => 3,
                _ => 2,
            })
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        col: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })
}

fn matrix_json(a: &Matrix) -> Json {
    let entries: Vec<Vec<String>> = (1..=a.rows())
        .map(|i| (1..=a.cols()).map(|j| a.entry(i, j).to_string()).collect())
        .collect();
    json!({
        "semiring": a.id().token(),
        "rows": a.rows(),
        "cols": a.cols(),
        "entries": entries,
    })
}

fn uv_json(form: &UvForm) -> Json {
    json!({
        "transposed": form.transposed,
        "u": matrix_json(&form.u),
        "c": matrix_json(&form.c),
        "d": matrix_json(&form.d),
        "v": matrix_json(&form.v),
    })
}

fn emit(format: Format, text: String, value: Json) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Rank { file, max_k } => {
            let a = parse_matrix(&read(file)?)?;
            let cert = match max_k {
                None => factor_rank(&a)?,
                Some(k) => factor_rank_bounded(&a, *k)?.ok_or_else(|| {
                    Error::ResourceLimit(format!("no factorization with at most {k} factors"))
                })?,
            };
            let mut text = format!("rank {}\n", cert.k());
            if let (Some(l), Some(r)) = (cert.left(), cert.right()) {
                text.push_str(&format!("left:\n{}", serialize_matrix(l)));
                text.push_str(&format!("right:\n{}", serialize_matrix(r)));
            }
            emit(
                cli.format,
                text,
                json!({
                    "rank": cert.k(),
                    "left": cert.left().map(matrix_json),
                    "right": cert.right().map(matrix_json),
                }),
            );
            Ok(0)
        }
        Command::Rank1 { file } => {
            let a = parse_matrix(&read(file)?)?;
            match rank_one_factor(&a)? {
                Some((b, c)) => {
                    let col = Matrix::from_fn(a.id(), a.rows(), 1, |i, _| b[i - 1].clone())?;
                    let row = Matrix::from_fn(a.id(), 1, a.cols(), |_, j| c[j - 1].clone())?;
                    emit(
                        cli.format,
                        format!(
                            "rank-1\nleft:\n{}right:\n{}",
                            serialize_matrix(&col),
                            serialize_matrix(&row)
                        ),
                        json!({
                            "rank1": true,
                            "left": matrix_json(&col),
                            "right": matrix_json(&row),
                        }),
                    );
                    Ok(0)
                }
                None => {
                    emit(
                        cli.format,
                        "not rank-1\n".to_string(),
                        json!({ "rank1": false }),
                    );
                    Ok(1)
                }
            }
        }
        Command::Span { target, gens } => {
            let x = parse_matrix(&read(target)?)?;
            let mut members = Vec::new();
            for path in gens {
                members.extend(parse_generating_set(&read(path)?)?.members().to_vec());
            }
            let set = GeneratingSet::new(members)?;
            let result = in_span(&x, &set)?;
            let coeffs: Vec<String> = result.coefficients.iter().map(|v| v.to_string()).collect();
            emit(
                cli.format,
                if result.is_member {
                    format!("member\ncoefficients: {}\n", coeffs.join(" "))
                } else {
                    "not a member\n".to_string()
                },
                json!({ "member": result.is_member, "coefficients": coeffs }),
            );
            Ok(if result.is_member { 0 } else { 1 })
        }
        Command::Basis { gens } => {
            let set = parse_generating_set(&read(gens)?)?;
            let basis = extract_basis(&set)?;
            let mut text = format!("dimension {}\n", basis.len());
            for member in basis.members() {
                text.push('\n');
                text.push_str(&serialize_matrix(member));
            }
            emit(
                cli.format,
                text,
                json!({
                    "dimension": basis.len(),
                    "basis": basis.members().iter().map(matrix_json).collect::<Vec<_>>(),
                }),
            );
            Ok(0)
        }
        Command::Classify { op } => {
            let t = parse_operator(&read(op)?)?;
            match classify(&t)? {
                ClassificationResult::RankPreserver(form) => {
                    let text = format!(
                        "rank preserver\ntransposed: {}\nU:\n{}C:\n{}D:\n{}V:\n{}",
                        form.transposed,
                        serialize_matrix(&form.u),
                        serialize_matrix(&form.c),
                        serialize_matrix(&form.d),
                        serialize_matrix(&form.v),
                    );
                    emit(
                        cli.format,
                        text,
                        json!({ "verdict": "rank-preserver", "uv": uv_json(&form) }),
                    );
                    Ok(0)
                }
                ClassificationResult::Violation(v) => {
                    emit(
                        cli.format,
                        format!(
                            "violation\nrank before: {}\nrank after: {}\nwitness:\n{}",
                            v.rank_before,
                            v.rank_after,
                            serialize_matrix(&v.witness)
                        ),
                        json!({
                            "verdict": "violation",
                            "rank_before": v.rank_before,
                            "rank_after": v.rank_after,
                            "witness": matrix_json(&v.witness),
                        }),
                    );
                    Ok(1)
                }
            }
        }
        Command::Witness { a, b } => {
            let ma = parse_matrix(&read(a)?)?;
            let mb = parse_matrix(&read(b)?)?;
            let c = separating_witness(&ma, &mb)?;
            let ra = factor_rank(&ma.add(&c)?)?.k();
            let rb = factor_rank(&mb.add(&c)?)?.k();
            emit(
                cli.format,
                format!(
                    "witness:\n{}rank(a + witness) = {ra}\nrank(b + witness) = {rb}\n",
                    serialize_matrix(&c)
                ),
                json!({
                    "witness": matrix_json(&c),
                    "rank_a_plus_witness": ra,
                    "rank_b_plus_witness": rb,
                }),
            );
            Ok(0)
        }
        Command::Apply { op, matrix } => {
            let t = parse_operator(&read(op)?)?;
            let a = parse_matrix(&read(matrix)?)?;
            let image = t.apply(&a)?;
            emit(
                cli.format,
                serialize_matrix(&image),
                json!({ "image": matrix_json(&image) }),
            );
            Ok(0)
        }
        Command::Verify { suite, all, seed } => {
            let reports: Vec<SuiteReport> = if *all {
                run_all(*seed)?
            } else if let Some(name) = suite {
                vec![run_suite(name, *seed)?]
            } else {
                return Err(Error::UnsupportedDomain(
                    "pass --all or --suite <name>".into(),
                ));
            };
            let failed = reports.iter().any(|r| !r.passed());
            let text = reports.iter().map(ToString::to_string).collect::<String>();
            emit(cli.format, text, json!({ "suites": reports }));
            Ok(if failed { 1 } else { 0 })
        }
        Command::Axioms { semiring } => {
            let id = SemiringId::from_token(semiring).expect("validated by clap");
            let report = check_axioms(id, &default_sample(id))?;
            let passed = report.all_passed();
            emit(
                cli.format,
                report.to_string(),
                serde_json::to_value(&report).unwrap(),
            );
            Ok(if passed { 0 } else { 1 })
        }
    }
}
