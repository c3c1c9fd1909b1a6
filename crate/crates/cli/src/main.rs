use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tropfrac_core::certify::{check_optimality, check_unboundedness, Verdict};
use tropfrac_core::game::game_value;
use tropfrac_core::io::{
    format_report, format_spectral, parse_certificate, parse_instance, sample_points, serialize_certificate,
    CertificateDocument, InstanceDocument,
};
use tropfrac_core::solver::{solve, solve_homogeneous, Method, Outcome, SolveOptions};
use tropfrac_core::spectral::{game_at, reconstruct, DEFAULT_GRID_CAP};
use tropfrac_core::tropical::{parse_rational, Rational};
use tropfrac_core::TropError;

const EXIT_USAGE: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_UNBOUNDED: u8 = 3;
const EXIT_REJECT: u8 = 4;

#[derive(Parser)]
#[command(name = "tropfrac", version, about = "Exact tropical linear-fractional programming")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize (or maximize) the ratio and print λ*, a witness and the trace
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "newton")]
        method: Method,
        /// Feasible starting value for Newton iterations
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational_arg)]
        lambda0: Option<Rational>,
        /// Write a certificate for the result here
        #[arg(long)]
        cert_out: Option<PathBuf>,
        /// Also print φ at every iterate
        #[arg(long)]
        phi: bool,
    },
    /// Tabulate the affine pieces of the spectral function
    Spectral {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 41)]
        samples: usize,
    },
    /// Check an optimality or unboundedness certificate
    Check { instance: PathBuf, certificate: PathBuf },
    /// Exact value of the parametric game at a Min node
    GameValue {
        instance: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational_arg, default_value = "0")]
        lambda: Rational,
        /// 1-based Min node; the homogenizing node by default
        #[arg(long)]
        node: Option<usize>,
    },
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

struct Failure(u8, String);

impl From<TropError> for Failure {
    fn from(e: TropError) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_USAGE, format!("{}: {}", path.display(), e)))
}

fn load(path: &Path) -> Result<InstanceDocument, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure(EXIT_USAGE, format!("{}: {}", path.display(), e)))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(EXIT_USAGE, format!("{}: {}", path.display(), e)))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve { instance, method, lambda0, cert_out, phi } => {
            let doc = load(&instance)?;
            let opts = SolveOptions { method, lambda0, record_phi: phi };
            let out = match doc.minimization() {
                Some(inst) => solve(&inst, &opts)?,
                None => solve_homogeneous(&doc.homogeneous()?, &opts)?,
            };
            print!("{}", format_report(&out, method, doc.maximize));
            let cert = match &out.outcome {
                Outcome::Optimal { certificate, .. } => Some(CertificateDocument::Optimality(certificate.clone())),
                Outcome::Unbounded { certificate: Some(c) } => Some(CertificateDocument::Unboundedness(c.clone())),
                _ => None,
            };
            if let Some(path) = cert_out {
                match cert {
                    Some(c) => write(&path, &serialize_certificate(&c))?,
                    None => eprintln!("no certificate for this outcome; {} not written", path.display()),
                }
            }
            Ok(match out.outcome {
                Outcome::Optimal { .. } => 0,
                Outcome::Infeasible { .. } => EXIT_INFEASIBLE,
                Outcome::Unbounded { .. } => EXIT_UNBOUNDED,
            })
        }
        Command::Spectral { instance, out, samples } => {
            let h = load(&instance)?.homogeneous()?;
            let pieces = reconstruct(&h).map_err(|e| match e {
                TropError::GridTooLarge(size, cap) => Failure(
                    EXIT_USAGE,
                    format!(
                        "the spectral grid has {} points, above the cap of {}; shrink the coefficients or the dimensions (default cap {})",
                        size, cap, DEFAULT_GRID_CAP
                    ),
                ),
                other => other.into(),
            })?;
            let table: Vec<(Rational, Rational)> = sample_points(&pieces, samples)
                .into_iter()
                .map(|l| {
                    let v = pieces.iter().find(|p| p.contains(&l)).expect("pieces cover the line").eval(&l);
                    (l, v)
                })
                .collect();
            let text = format_spectral(&pieces, &table);
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{}", text),
            }
            Ok(0)
        }
        Command::Check { instance, certificate } => {
            let h = load(&instance)?.homogeneous()?;
            let cert = parse_certificate(&read(&certificate)?, &h)
                .map_err(|e| Failure(EXIT_USAGE, format!("{}: {}", certificate.display(), e)))?;
            let verdict = match &cert {
                CertificateDocument::Optimality(c) => check_optimality(&h, c)?,
                CertificateDocument::Unboundedness(c) => check_unboundedness(&h, c)?,
            };
            match verdict {
                Verdict::Accept => {
                    println!("accept");
                    Ok(0)
                }
                Verdict::Reject(r) => {
                    println!("reject {}", r);
                    Ok(EXIT_REJECT)
                }
            }
        }
        Command::GameValue { instance, lambda, node } => {
            let h = load(&instance)?.homogeneous()?;
            let n = h.n() + 1;
            let j = node.unwrap_or(n);
            if j == 0 || j > n {
                return Err(Failure(EXIT_USAGE, format!("node {} is outside 1..={}", j, n)));
            }
            let scaled = game_value(&game_at(&h, &h.to_scaled(&lambda))?, j - 1)?;
            println!("{}", h.from_scaled(&scaled));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(code)
        }
    }
}
