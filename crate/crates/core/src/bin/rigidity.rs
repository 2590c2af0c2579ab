//! `rigidity` command-line front end.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict,
//! 2 input error, 3 refused because the search space is too large.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use rigidity_core::classifier::{self, Pruning, SearchConfig, DEFAULT_CEILING};
use rigidity_core::serial::{self, ElementDoc, FactorizationDoc, MatrixDoc, ReportDoc};
use rigidity_core::{
    as_signed_permutation, factor_isomorphism, parse_element, selftest, verify_nonvanishing_powers,
    Error, LinearSubstitution, RingSpec,
};

#[derive(Parser)]
#[command(name = "rigidity", version, about = "Graded automorphisms of Z[x_1..x_m]/(x_i^{n_i+1})")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Truncation exponents, e.g. `1,2,2`.
    #[arg(long, value_parser = parse_spec)]
    spec: RingSpec,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression over x1..xm with +, -, *, ^.
    RingEval {
        #[command(flatten)]
        common: Common,
        expr: String,
        /// Print the element document instead of the expression form.
        #[arg(long)]
        json: bool,
    },
    /// Check that a matrix respects every relation x_i^{n_i+1} = 0.
    CheckEndo {
        #[command(flatten)]
        common: Common,
        /// Matrix file, or `-` for stdin.
        #[arg(long)]
        matrix: String,
    },
    /// Signed-permutation normal form of a matrix, if it has one.
    NormalForm {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matrix: String,
    },
    /// Exhaustively compare the automorphism test with the normal form.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        bound: u32,
        #[arg(long, value_enum, default_value = "off")]
        pruning: OnOff,
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: u128,
    },
    /// List all automorphisms with entries in [-bound, bound].
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        bound: u32,
        #[arg(long, value_enum, default_value = "on")]
        pruning: OnOff,
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: u128,
    },
    /// Factor phi through h_star and realize the resulting self-map.
    Factor {
        #[command(flatten)]
        common: Common,
        /// Matrix file for phi, or `-` for stdin.
        #[arg(long)]
        matrix: String,
        /// Matrix file for h_star; identity when omitted.
        #[arg(long)]
        h_star: Option<String>,
    },
    /// Powers and nilpotency order of y = sum a_j x_j.
    Powers {
        #[command(flatten)]
        common: Common,
        /// Coefficients a_1,...,a_m.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Seeded randomized property checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_spec(s: &str) -> Result<RingSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Outcome of a command: text to emit and the exit status.
struct Outcome {
    text: String,
    status: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, status: 0 }
    }

    fn negative(text: String) -> Self {
        Self { text, status: 1 }
    }
}

fn read_source(path: &str) -> Result<String, Error> {
    let read = if path == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf).map(|_| buf)
    } else {
        fs::read_to_string(path)
    };
    read.map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
}

fn read_matrix(path: &str, spec: &RingSpec) -> Result<LinearSubstitution, Error> {
    serial::parse_matrix_text(&read_source(path)?, spec)
}

fn pruning(p: OnOff) -> Pruning {
    match p {
        OnOff::On => Pruning::On,
        OnOff::Off => Pruning::Off,
    }
}

fn run(command: Command) -> Result<(Outcome, Option<PathBuf>), Error> {
    Ok(match command {
        Command::RingEval { common, expr, json } => {
            let value = parse_element(&expr, &common.spec)?;
            let text = if json {
                serial::to_json(&ElementDoc::from(&value))
            } else {
                format!("{value}\n")
            };
            (Outcome::ok(text), common.out)
        }
        Command::CheckEndo { common, matrix } => {
            let psi = read_matrix(&matrix, &common.spec)?;
            let outcome = match psi.check_endomorphism().witness() {
                None => Outcome::ok("well-defined endomorphism\n".into()),
                Some(w) => Outcome::negative(format!("not well-defined: {w}\n")),
            };
            (outcome, common.out)
        }
        Command::NormalForm { common, matrix } => {
            let psi = read_matrix(&matrix, &common.spec)?;
            let outcome = match as_signed_permutation(&psi) {
                Ok(p) => Outcome::ok(format!("{p}\n")),
                Err(why) => Outcome::negative(format!("absent: {why}\n")),
            };
            (outcome, common.out)
        }
        Command::Classify {
            common,
            bound,
            pruning: p,
            ceiling,
        } => {
            let config = SearchConfig {
                bound,
                pruning: pruning(p),
                ceiling,
            };
            let report = classifier::verify_structure_theorem(&common.spec, &config)?;
            let text = serial::to_json(&ReportDoc::from(&report));
            let outcome = if report.biconditional_holds {
                Outcome::ok(text)
            } else {
                Outcome::negative(text)
            };
            (outcome, common.out)
        }
        Command::Enumerate {
            common,
            bound,
            pruning: p,
            ceiling,
        } => {
            let config = SearchConfig {
                bound,
                pruning: pruning(p),
                ceiling,
            };
            let found = classifier::enumerate_automorphisms(&common.spec, &config)?;
            let docs: Vec<MatrixDoc> = found.iter().map(MatrixDoc::from).collect();
            (Outcome::ok(serial::to_json(&docs)), common.out)
        }
        Command::Factor {
            common,
            matrix,
            h_star,
        } => {
            if matrix == "-" && h_star.as_deref() == Some("-") {
                return Err(Error::Parse("phi and h_star cannot both come from stdin".into()));
            }
            let phi = read_matrix(&matrix, &common.spec)?;
            let h_star = match h_star {
                Some(path) => read_matrix(&path, &common.spec)?,
                None => LinearSubstitution::identity(&common.spec),
            };
            let outcome = match factor_isomorphism(&phi, &h_star) {
                Ok(f) => Outcome::ok(serial::to_json(&FactorizationDoc::new(&phi, &h_star, &f))),
                Err(e @ Error::NotAutomorphism(_)) => Outcome::negative(format!("{e}\n")),
                Err(e) => return Err(e),
            };
            (outcome, common.out)
        }
        Command::Powers { common, coeffs } => {
            let coeffs = coeffs
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let spec = &common.spec;
            let y = rigidity_core::degree_one_element(coeffs.clone(), spec)?;
            let checks = verify_nonvanishing_powers(coeffs, spec)?;
            let mut text = format!("y = {y}\n");
            for c in &checks {
                let verdict = if c.nonzero { "!=" } else { "==" };
                text.push_str(&format!("a{} != 0: y^{} {verdict} 0\n", c.index + 1, c.exponent));
            }
            if !y.is_zero() {
                text.push_str(&format!("nilpotency order: {}\n", y.nilpotency_order()?));
            }
            let outcome = if checks.iter().all(|c| c.nonzero) {
                Outcome::ok(text)
            } else {
                Outcome::negative(text)
            };
            (outcome, common.out)
        }
        Command::Selftest { seed, trials, out } => {
            let results = selftest::run(seed, trials);
            let mut text = String::new();
            for r in &results {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                text.push_str(&format!(
                    "{verdict} {} ({} trials, {} failures)\n",
                    r.name, r.trials, r.failures
                ));
            }
            let outcome = if results.iter().all(|r| r.passed()) {
                Outcome::ok(text)
            } else {
                Outcome::negative(text)
            };
            (outcome, out)
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SearchSpaceTooLarge { .. } => 3,
        Error::NotAutomorphism(_) | Error::InternalInconsistency(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((outcome, out)) => {
            let written = match out {
                Some(path) => fs::write(&path, &outcome.text),
                None => io::stdout().write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
