//! `frobhoch` — exact computations in graded Frobenius algebras and on
//! their Hochschild cochains.

mod expr;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use frobhoch_core::builtins;
use frobhoch_core::correlator::{
    annulus_sweep, bracket, surface_correlator, torus_sweep, CyclicWord, SurfaceDecoration,
};
use frobhoch_core::frobenius::{AlgebraSpec, FrobeniusAlgebra};
use frobhoch_core::hochschild::{
    self, boundary, coproduct, coproduct_correlator, cup, differential, Cochain,
};
use frobhoch_core::selftest;
use frobhoch_core::tensor::TensorElement;
use frobhoch_core::Error;

use expr::{parse_element, render, tensor_to_json};

#[derive(Parser)]
#[command(
    name = "frobhoch",
    about = "Exact engine for graded Frobenius algebras, surface correlators and Hochschild cochain operations",
    version
)]
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
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and report its derived structure
    Validate {
        #[arg(long)]
        algebra: String,
    },
    /// Print the Casimir element
    Casimir {
        #[arg(long)]
        algebra: String,
    },
    /// Print the Euler class and its counit
    Euler {
        #[arg(long)]
        algebra: String,
    },
    /// Integrate a product of elements: ∫(a₁ ⋯ a_n)
    Integral {
        #[arg(long)]
        algebra: String,
        /// Element expressions, multiplied left to right
        #[arg(required = true)]
        letters: Vec<String>,
    },
    /// Degree-1 coproduct of a cochain (body expression)
    Coproduct {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        cochain: String,
    },
    /// Boundary operation of the coproduct cell
    Boundary {
        #[arg(long)]
        algebra: String,
        /// 0 or 1
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        side: u8,
        #[arg(long)]
        cochain: String,
    },
    /// Cup product of two cochains
    Cup {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Hochschild coboundary of a cochain
    Differential {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        cochain: String,
    },
    /// Coproduct correlation function Y(u ⊗ v ⊗ w)
    Correlator {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
    },
    /// Closed-form correlator of a decorated surface
    Surface {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        /// Boundary word: comma-separated element expressions. Repeat the
        /// flag for several boundaries; an empty string is the unit word.
        #[arg(long = "boundary", required = true)]
        boundaries: Vec<String>,
    },
    /// Exhaustive annulus/torus cut-invariance sweeps
    VerifyOtft {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 4)]
        max_word_len: usize,
    },
    /// Run the full identity suite on the built-in algebras
    Selftest {
        /// Bound the cut-invariance word length (default: gate depth 4)
        #[arg(long)]
        max_word_len: Option<usize>,
        /// Cap the cochain arity of the sweeps (default: gate depths)
        #[arg(long)]
        arity: Option<usize>,
    },
}

enum CliError {
    /// Bad input: exit 2.
    Usage(String),
    /// A computation or verification failed: exit 1.
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ParseError { .. } | Error::UnknownBasisName { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failure(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Resolves `--algebra`: a built-in name, or a path to an AlgebraSpec file.
fn load_algebra(source: &str) -> Result<FrobeniusAlgebra, CliError> {
    if let Ok(alg) = builtins::by_name(source) {
        return Ok(alg);
    }
    let text = std::fs::read_to_string(source).map_err(|e| {
        CliError::Usage(format!(
            "`{source}` is neither a built-in algebra ({}) nor a readable file: {e}",
            builtins::builtin_names().join(", ")
        ))
    })?;
    let spec = AlgebraSpec::from_json(&text).map_err(|e| CliError::Usage(e.to_string()))?;
    FrobeniusAlgebra::build(&spec).map_err(|e| CliError::Failure(format!("validation: {e}")))
}

fn parse_cochain(alg: &FrobeniusAlgebra, text: &str) -> Result<Cochain, CliError> {
    let body = parse_element(text, alg)?;
    Cochain::new(body).map_err(CliError::from)
}

/// The built-ins have unimodular pairings, so integral inputs keep every
/// derived quantity integral; surface a warning when that breaks.
fn warn_if_nonintegral(alg: &FrobeniusAlgebra, t: &TensorElement) {
    if alg.has_integral_pairing() && t.terms().any(|(_, c)| !c.is_integer()) {
        eprintln!(
            "warning: non-integral coefficients over `{}`, whose pairing is unimodular",
            alg.name()
        );
    }
}

fn emit_tensor(format: Format, alg: &FrobeniusAlgebra, t: &TensorElement) {
    warn_if_nonintegral(alg, t);
    match format {
        Format::Text => println!("{}", render(t)),
        Format::Machine => println!("{}", tensor_to_json(t)),
    }
}

fn emit_scalar(format: Format, v: &frobhoch_core::Scalar) {
    match format {
        Format::Text => println!("{v}"),
        Format::Machine => println!("{}", serde_json::json!(v.to_string())),
    }
}

fn bicochain_to_json(b: &hochschild::BiCochain) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = b
        .terms()
        .map(|((k1, k2), c)| {
            let names = |key: &[u32]| -> Vec<String> {
                key.iter().map(|&i| b.basis().name(i).to_string()).collect()
            };
            serde_json::json!([c.to_string(), names(k1), names(k2)])
        })
        .collect();
    serde_json::Value::Array(terms)
}

fn emit_bicochain(format: Format, b: &hochschild::BiCochain) {
    match format {
        Format::Text => {
            println!("{b}");
            if !b.is_zero() {
                let bids: Vec<String> = b
                    .bidegrees()
                    .iter()
                    .map(|(p, q)| format!("({p},{q})"))
                    .collect();
                println!("bidegrees: {}", bids.join(" "));
            }
        }
        Format::Machine => println!("{}", bicochain_to_json(b)),
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Validate { algebra } => {
            let alg = load_algebra(algebra)?;
            match cli.format {
                Format::Text => {
                    println!("algebra: {} (dim {})", alg.name(), alg.dim());
                    println!("commutative: {}", alg.is_commutative());
                    println!("connected graded: {}", alg.is_connected_graded());
                    match alg.socle() {
                        Some((d, idx)) => println!(
                            "socle: degree {d}, class {}",
                            alg.basis().name(idx)
                        ),
                        None => println!("socle: none"),
                    }
                    println!("integral pairing: {}", alg.has_integral_pairing());
                    println!("casimir: {}", render(alg.casimir()));
                    println!(
                        "euler class: {} (counit: {})",
                        render(alg.euler_class()),
                        alg.euler_characteristic()
                    );
                }
                Format::Machine => {
                    let value = serde_json::json!({
                        "name": alg.name(),
                        "dim": alg.dim(),
                        "commutative": alg.is_commutative(),
                        "connected_graded": alg.is_connected_graded(),
                        "socle_degree": alg.socle().map(|(d, _)| d),
                        "integral_pairing": alg.has_integral_pairing(),
                        "casimir": tensor_to_json(alg.casimir()),
                        "euler": tensor_to_json(alg.euler_class()),
                        "euler_characteristic": alg.euler_characteristic().to_string(),
                    });
                    println!("{value}");
                }
            }
            Ok(())
        }
        Command::Casimir { algebra } => {
            let alg = load_algebra(algebra)?;
            emit_tensor(cli.format, &alg, alg.casimir());
            Ok(())
        }
        Command::Euler { algebra } => {
            let alg = load_algebra(algebra)?;
            match cli.format {
                Format::Text => println!(
                    "{} (counit: {})",
                    render(alg.euler_class()),
                    alg.euler_characteristic()
                ),
                Format::Machine => {
                    let value = serde_json::json!({
                        "element": tensor_to_json(alg.euler_class()),
                        "counit": alg.euler_characteristic().to_string(),
                    });
                    println!("{value}");
                }
            }
            Ok(())
        }
        Command::Integral { algebra, letters } => {
            let alg = load_algebra(algebra)?;
            let word = letters
                .iter()
                .map(|text| parse_element(text, &alg).map_err(CliError::from))
                .collect::<Result<Vec<_>, _>>()?;
            let w = CyclicWord::new(word)?;
            let value = bracket(&alg, &w)?;
            emit_scalar(cli.format, &value);
            Ok(())
        }
        Command::Coproduct { algebra, cochain } => {
            let alg = load_algebra(algebra)?;
            let f = parse_cochain(&alg, cochain)?;
            let out = coproduct(&alg, &f)?;
            emit_bicochain(cli.format, &out);
            Ok(())
        }
        Command::Boundary {
            algebra,
            side,
            cochain,
        } => {
            let alg = load_algebra(algebra)?;
            let f = parse_cochain(&alg, cochain)?;
            let out = boundary(&alg, *side, &f)?;
            emit_bicochain(cli.format, &out);
            Ok(())
        }
        Command::Cup {
            algebra,
            left,
            right,
        } => {
            let alg = load_algebra(algebra)?;
            let f = parse_cochain(&alg, left)?;
            let g = parse_cochain(&alg, right)?;
            let out = cup(&alg, &f, &g)?;
            emit_tensor(cli.format, &alg, out.body());
            Ok(())
        }
        Command::Differential { algebra, cochain } => {
            let alg = load_algebra(algebra)?;
            let f = parse_cochain(&alg, cochain)?;
            let out = differential(&alg, &f)?;
            emit_tensor(cli.format, &alg, out.body());
            Ok(())
        }
        Command::Correlator { algebra, u, v, w } => {
            let alg = load_algebra(algebra)?;
            let u = parse_cochain(&alg, u)?;
            let v = parse_cochain(&alg, v)?;
            let w = parse_cochain(&alg, w)?;
            let value = coproduct_correlator(&alg, &u, &v, &w)?;
            emit_scalar(cli.format, &value);
            Ok(())
        }
        Command::Surface {
            algebra,
            genus,
            boundaries,
        } => {
            let alg = load_algebra(algebra)?;
            let mut words = Vec::with_capacity(boundaries.len());
            for spec in boundaries {
                let mut letters = Vec::new();
                for piece in spec.split(',') {
                    let piece = piece.trim();
                    if piece.is_empty() {
                        continue;
                    }
                    letters.push(parse_element(piece, &alg).map_err(CliError::from)?);
                }
                words.push(CyclicWord::new(letters)?);
            }
            let value = surface_correlator(&alg, &SurfaceDecoration::new(*genus, words))?;
            emit_scalar(cli.format, &value);
            Ok(())
        }
        Command::VerifyOtft {
            algebra,
            max_word_len,
        } => {
            let alg = load_algebra(algebra)?;
            let annulus = annulus_sweep(&alg, *max_word_len)?;
            let torus = torus_sweep(&alg, *max_word_len)?;
            let failures: Vec<String> = annulus
                .failures
                .iter()
                .chain(torus.failures.iter())
                .cloned()
                .collect();
            match cli.format {
                Format::Text => {
                    println!(
                        "annulus: {} checks, {} failures",
                        annulus.checked,
                        annulus.failures.len()
                    );
                    println!(
                        "torus: {} checks, {} failures",
                        torus.checked,
                        torus.failures.len()
                    );
                    for f in &failures {
                        println!("MISMATCH {f}");
                    }
                }
                Format::Machine => {
                    let value = serde_json::json!({
                        "annulus_checked": annulus.checked,
                        "torus_checked": torus.checked,
                        "failures": failures,
                    });
                    println!("{value}");
                }
            }
            if failures.is_empty() {
                Ok(())
            } else {
                Err(CliError::Failure(format!(
                    "{} cut-invariance failures",
                    failures.len()
                )))
            }
        }
        Command::Selftest { max_word_len, arity } => {
            let mut cfg = selftest::Config::default();
            if let Some(len) = max_word_len {
                cfg.otft_max_len = *len;
            }
            cfg.arity_cap = *arity;
            let results = selftest::run_all_with(&cfg);
            let failed = results.iter().filter(|r| !r.passed).count();
            match cli.format {
                Format::Text => {
                    for r in &results {
                        let status = if r.passed { "PASS" } else { "FAIL" };
                        println!("[{status}] {}", r.name);
                        if !r.passed {
                            println!("       {}", r.detail);
                        }
                    }
                    println!(
                        "{} checks, {} failed",
                        results.len(),
                        failed
                    );
                }
                Format::Machine => {
                    let value: Vec<serde_json::Value> = results
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "name": r.name,
                                "passed": r.passed,
                                "detail": r.detail,
                            })
                        })
                        .collect();
                    println!("{}", serde_json::Value::Array(value));
                }
            }
            if failed == 0 {
                Ok(())
            } else {
                Err(CliError::Failure(format!("{failed} checks failed")))
            }
        }
    }
}
