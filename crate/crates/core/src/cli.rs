//! Command-line surface. Every subcommand is a thin adapter over one
//! library operation; text output is human-oriented and unstable, JSON and
//! CSV are the stable machine contracts.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 when a
//! uniqueness verification contradicts a certified hypothesis (a bug
//! signal, not a user error).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::derivatives::{apolar_pair, catalecticant, derivative, e_space};
use crate::error::{Error, Result};
use crate::exactla::Subspace;
use crate::experiment::{run_experiment, ExperimentConfig, ExperimentKind, ExperimentReport};
use crate::genericity::{certify_generic, fingerprint, profile, sample};
use crate::multiindex::{dim_space, MultiIndex};
use crate::polyring::{parse, HomPoly};
use crate::reconstruct::{descent_report, solve_from_span, verify_theorem};

#[derive(Parser)]
#[command(
    name = "derivspace",
    about = "Exact derivative spaces of homogeneous polynomials: catalecticants, genericity certificates, reconstruction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

/// Polynomial source: inline text or a file holding the same text format.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct PolyInput {
    /// Polynomial text, e.g. "x0^4 + x0*x1^3"
    #[arg(short = 'p', long = "poly", allow_hyphen_values = true)]
    poly: Option<String>,
    /// Path to a file containing the polynomial text
    #[arg(short = 'f', long = "poly-file")]
    file: Option<PathBuf>,
}

impl PolyInput {
    fn read(&self, n: usize) -> Result<HomPoly> {
        let text = match (&self.poly, &self.file) {
            (Some(t), _) => t.clone(),
            (_, Some(path)) => fs::read_to_string(path)?,
            _ => unreachable!("clap enforces the group"),
        };
        parse(text.trim(), n)
    }
}

#[derive(Args)]
struct SamplingArgs {
    /// Number of trials
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Coefficients are drawn uniformly from [-bound, bound]
    #[arg(long, default_value_t = 1000)]
    bound: u64,
    /// Base seed; every trial derives its own substream
    #[arg(long, env = "DERIVSPACE_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the space of degree-d forms in n+1 variables
    Dims {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Iterated partial derivative D_I f
    Diff {
        #[command(flatten)]
        input: PolyInput,
        #[arg(short)]
        n: usize,
        /// Multi-index, comma separated: i0,i1,...,in
        #[arg(short = 'I', long = "index")]
        index: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Apolar pairing <P, f> = P(d/dx0,...,d/dxn) f
    Apolar {
        /// Dual polynomial P (same text format, read in dual variables)
        #[arg(short = 'P', long = "dual", allow_hyphen_values = true)]
        dual: String,
        #[command(flatten)]
        input: PolyInput,
        #[arg(short)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Order-k catalecticant matrix of f
    CatMatrix {
        #[command(flatten)]
        input: PolyInput,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// dim E_k(f)
    EkDim {
        #[command(flatten)]
        input: PolyInput,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dimension profile dim E_k(f) for k = 0..d with maximality flags
    Profile {
        #[command(flatten)]
        input: PolyInput,
        #[arg(short)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Certify that the order-k derivatives of f are maximally independent
    Certify {
        #[command(flatten)]
        input: PolyInput,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reconstruct all g with E_k(g) inside a given span (subspace JSON)
    Reconstruct {
        /// Path to a subspace JSON file
        #[arg(short = 'V', long = "span")]
        span: PathBuf,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify uniqueness of reconstruction from E_k(f); exit 3 on violation
    VerifyTheorem {
        #[command(flatten)]
        input: PolyInput,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Extract relations between derivatives of f and g, check their
    /// symmetry, and descend one order
    VerifyProp1 {
        #[command(flatten)]
        input: PolyInput,
        /// Second polynomial g (inline text)
        #[arg(short = 'g', long = "second", allow_hyphen_values = true)]
        second: String,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Canonical fingerprint (SHA-256) of the span E_k(f)
    Fingerprint {
        #[command(flatten)]
        input: PolyInput,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fingerprint collision search over certified random samples
    Collide {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Deterministic random polynomial with integer coefficients
    Sample {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        /// Coefficients are drawn uniformly from [-bound, bound]
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        #[arg(long, env = "DERIVSPACE_SEED", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Seeded experiment harness with CSV/JSON reports
    Experiment {
        /// Experiment kind
        #[arg(long)]
        kind: String,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(short, default_value_t = 0)]
        k: usize,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Record real per-trial timings (breaks byte-reproducibility)
        #[arg(long, default_value_t = false)]
        timings: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => {
            let written = match &outcome.out {
                Some(path) => fs::write(path, &outcome.text).map_err(Error::from),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("{e}");
                return 1;
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("{e}");
            1
        }
    }
}

struct Outcome {
    text: String,
    out: Option<PathBuf>,
    code: i32,
}

impl Outcome {
    fn ok(text: String, output: OutputArgs) -> Self {
        Outcome {
            text,
            out: output.out,
            code: 0,
        }
    }
}

fn line(s: impl Into<String>) -> String {
    let mut t = s.into();
    t.push('\n');
    t
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Dims { n, d, output } => {
            let dim = dim_space(n, d);
            let text = match output.format {
                Format::Json => line(format!("{{\"n\":{n},\"d\":{d},\"dim\":{dim}}}")),
                _ => line(dim.to_string()),
            };
            Ok(Outcome::ok(text, output))
        }
        Command::Diff {
            input,
            n,
            index,
            output,
        } => {
            let f = input.read(n)?;
            let i: MultiIndex = index.parse()?;
            let df = derivative(&f, &i)?;
            let text = match output.format {
                Format::Json => line(serde_json::json!({ "poly": df.to_string() }).to_string()),
                _ => line(df.to_string()),
            };
            Ok(Outcome::ok(text, output))
        }
        Command::Apolar {
            dual,
            input,
            n,
            output,
        } => {
            let f = input.read(n)?;
            let p = parse(dual.trim(), n)?;
            let result = apolar_pair(&p, &f)?;
            let text = match output.format {
                Format::Json => line(serde_json::json!({ "poly": result.to_string() }).to_string()),
                _ => line(result.to_string()),
            };
            Ok(Outcome::ok(text, output))
        }
        Command::CatMatrix {
            input,
            n,
            k,
            output,
        } => {
            let f = input.read(n)?;
            let cat = catalecticant(&f, k)?;
            let text = match output.format {
                Format::Json => line(cat.to_json()),
                _ => format!("{}", cat.matrix()),
            };
            Ok(Outcome::ok(text, output))
        }
        Command::EkDim {
            input,
            n,
            k,
            output,
        } => {
            let f = input.read(n)?;
            let dim = e_space(&f, k).dim();
            let text = match output.format {
                Format::Json => line(format!("{{\"k\":{k},\"dim\":{dim}}}")),
                _ => line(dim.to_string()),
            };
            Ok(Outcome::ok(text, output))
        }
        Command::Profile { input, n, output } => {
            let f = input.read(n)?;
            let prof = profile(&f)?;
            let text = match output.format {
                Format::Json => line(prof.to_json()),
                _ => {
                    let mut t = String::new();
                    for (k, dim) in prof.dims.iter().enumerate() {
                        let _ = writeln!(
                            t,
                            "k={k} dim={dim} max={} member={}",
                            dim_space(prof.n, k),
                            prof.member[k]
                        );
                    }
                    t
                }
            };
            Ok(Outcome::ok(text, output))
        }
        Command::Certify {
            input,
            n,
            k,
            output,
        } => {
            let f = input.read(n)?;
            let certified = certify_generic(&f, k);
            let text = match output.format {
                Format::Json => line(format!("{{\"k\":{k},\"certified\":{certified}}}")),
                _ => line(certified.to_string()),
            };
            Ok(Outcome::ok(text, output))
        }
        Command::Reconstruct {
            span,
            n,
            d,
            k,
            output,
        } => {
            let text = fs::read_to_string(&span)?;
            let v = Subspace::from_json(&text)?;
            let result = solve_from_span(&v, n, d, k)?;
            let text = match output.format {
                Format::Json => line(result.to_json()),
                _ => {
                    let mut t = String::new();
                    let _ = writeln!(t, "verdict {}", result.verdict);
                    let _ = writeln!(t, "solution_dim {}", result.solution_dim);
                    for b in &result.basis {
                        let _ = writeln!(t, "basis {b}");
                    }
                    t
                }
            };
            Ok(Outcome::ok(text, output))
        }
        Command::VerifyTheorem {
            input,
            n,
            k,
            output,
        } => {
            let f = input.read(n)?;
            let report = verify_theorem(&f, k)?;
            let text = match output.format {
                Format::Json => line(report.to_json()),
                _ => {
                    let mut t = String::new();
                    let _ = writeln!(t, "k_within_bound {}", report.k_within_bound);
                    let _ = writeln!(t, "hypothesis_certified {}", report.hypothesis_certified);
                    for c in &report.chain {
                        let _ = writeln!(t, "dim E_{}(f) = {} (max {})", c.r, c.dim, c.expected);
                    }
                    let _ = writeln!(t, "verdict {}", report.verdict);
                    let _ = writeln!(t, "solution_dim {}", report.solution_dim);
                    if let Some(w) = &report.witness {
                        let _ = writeln!(t, "witness {w}");
                    }
                    if report.theorem_violated {
                        let _ = writeln!(t, "THEOREM VIOLATED");
                    }
                    t
                }
            };
            let code = if report.theorem_violated { 3 } else { 0 };
            Ok(Outcome {
                text,
                out: output.out,
                code,
            })
        }
        Command::VerifyProp1 {
            input,
            second,
            n,
            k,
            output,
        } => {
            let f = input.read(n)?;
            let g = parse(second.trim(), n)?;
            let report = descent_report(&f, &g, k)?;
            let text = match output.format {
                Format::Json => line(report.to_json()),
                _ => {
                    let mut t = String::new();
                    let _ = writeln!(t, "symmetry_ok {}", report.symmetry.ok);
                    let _ = writeln!(t, "violations {}", report.symmetry.violations.len());
                    let _ = writeln!(t, "descent_matches {}", report.matches);
                    t
                }
            };
            Ok(Outcome::ok(text, output))
        }
        Command::Fingerprint {
            input,
            n,
            k,
            output,
        } => {
            let f = input.read(n)?;
            let fp = fingerprint(&f, k)?;
            let text = match output.format {
                Format::Json => line(fp.to_json()),
                _ => line(fp.digest.clone()),
            };
            Ok(Outcome::ok(text, output))
        }
        Command::Collide {
            n,
            d,
            k,
            sampling,
            output,
        } => {
            let config = ExperimentConfig {
                kind: ExperimentKind::Collision,
                n,
                d,
                k,
                trials: sampling.trials,
                bound: sampling.bound,
                seed: sampling.seed,
                timings: false,
            };
            let report = run_experiment(&config)?;
            Ok(Outcome::ok(render_report(&report, output.format), output))
        }
        Command::Sample {
            n,
            d,
            bound,
            seed,
            output,
        } => {
            if bound == 0 {
                return Err(Error::ConfigInvalid("bound must be positive".into()));
            }
            let f = sample(n, d, bound, seed);
            let text = match output.format {
                Format::Json => line(
                    serde_json::json!({
                        "n": n, "d": d, "bound": bound, "seed": seed,
                        "poly": f.to_string(),
                    })
                    .to_string(),
                ),
                _ => line(f.to_string()),
            };
            Ok(Outcome::ok(text, output))
        }
        Command::Experiment {
            kind,
            n,
            d,
            k,
            sampling,
            timings,
            output,
        } => {
            let config = ExperimentConfig {
                kind: kind.parse()?,
                n,
                d,
                k,
                trials: sampling.trials,
                bound: sampling.bound,
                seed: sampling.seed,
                timings,
            };
            let report = run_experiment(&config)?;
            let code = match report.summary.theorem_violations {
                Some(v) if v > 0 => 3,
                _ => 0,
            };
            Ok(Outcome {
                text: render_report(&report, output.format),
                out: output.out,
                code,
            })
        }
    }
}

fn render_report(report: &ExperimentReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => {
            let s = &report.summary;
            let mut t = String::new();
            let _ = writeln!(
                t,
                "trials {} certified {} resample_failures {}",
                s.trials, s.certified_count, s.resample_failures
            );
            if let Some(u) = s.unique_verdicts {
                let _ = writeln!(t, "unique_verdicts {u}");
            }
            if let Some(v) = s.theorem_violations {
                let _ = writeln!(t, "theorem_violations {v}");
            }
            if let Some(c) = s.digest_collisions {
                let _ = writeln!(t, "digest_collisions {c}");
            }
            if let Some(c) = s.verified_collisions {
                let _ = writeln!(t, "verified_collisions {c}");
            }
            if let Some(c) = s.chain_violations {
                let _ = writeln!(t, "chain_violations {c}");
            }
            t
        }
    }
}
