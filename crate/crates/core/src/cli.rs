//! Command-line front end. [`run`] does all the work and returns the text
//! and exit code, so the binary is a thin wrapper and tests can drive every
//! command in-process.
//!
//! Exit codes: 0 success or equivalent, 1 semantic negative
//! (counterexample, infeasible), 2 parse or I/O failure, 3 dimension or
//! precondition failure, 4 unsynthesizable scheme, 5 size cap.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::feasibility::Solver;
use crate::polyhedra::{Mode, PresentedPolyhedron};
use crate::sampling::DEFAULT_SEED;
use crate::text::{self, format_bundle, format_network, format_point};
use crate::transform::{
    build_network, check_equivalence_with, extract_scheme, normalize_three_layers_with, prune_empty_cells,
    ConstantPolicy, EquivalenceMode, EquivalenceOptions, ExtractOptions, Normalized, Verdict, DEFAULT_WIDTH_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_UNSYNTHESIZABLE: i32 = 4;
pub const EXIT_SIZE_CAP: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "polynet", version, about = "Exact polyhedra and perceptron network tools")]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Dnf,
    Cnf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EquivArg {
    Sampled,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraOp {
    Union,
    Intersect,
    Complement,
    ToDnf,
    ToCnf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Forward pass of a network at each point.
    Eval { network: PathBuf, points: PathBuf },
    /// Membership of each point in a polyhedron bundle.
    Member { bundle: PathBuf, points: PathBuf },
    /// Build the three-layer network of a scheme over half-spaces.
    Synth {
        halfspaces: PathBuf,
        scheme: PathBuf,
        #[arg(long, value_enum, default_value = "dnf")]
        mode: FormArg,
    },
    /// Extract the DNF polyhedron computed by a single-output network.
    Extract {
        network: PathBuf,
        /// Drop cells with no realizing point.
        #[arg(long)]
        prune: bool,
        /// Maximum first-layer width.
        #[arg(long, default_value_t = DEFAULT_WIDTH_CAP)]
        cap: usize,
        /// Accept networks that never fire.
        #[arg(long)]
        permissive_constants: bool,
    },
    /// Rewrite a single-output network as an equivalent three-layer network.
    Normalize {
        network: PathBuf,
        #[arg(long)]
        prune: bool,
        #[arg(long, default_value_t = DEFAULT_WIDTH_CAP)]
        cap: usize,
        #[arg(long)]
        permissive_constants: bool,
    },
    /// Boolean operations and normal-form conversions on bundles.
    Algebra {
        #[arg(value_enum)]
        op: AlgebraOp,
        bundles: Vec<PathBuf>,
    },
    /// Compare two single-output networks.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: EquivArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_WIDTH_CAP)]
        cap: usize,
    },
    /// Remove empty selected cells from a DNF bundle.
    Prune { bundle: PathBuf },
    /// Decide a system of inequality lines and print a witness.
    Feasible { system: PathBuf },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, message: String) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::InconsistentPair(_) | Error::EmptyPair | Error::EmptySelector | Error::EmptyScheme => {
            EXIT_UNSYNTHESIZABLE
        }
        Error::SizeCap { .. } => EXIT_SIZE_CAP,
        _ => EXIT_PRECONDITION,
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}: {e}", path.display()),
    })
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> crate::Result<T>) -> Result<T, Failure> {
    let text = read(path)?;
    parse(&text).map_err(|e| Failure {
        code: exit_code(&e),
        message: format!("{}: {e}", path.display()),
    })
}

fn bits_output(bits: impl IntoIterator<Item = bool>) -> String {
    bits.into_iter().map(|b| if b { "1\n" } else { "0\n" }).collect()
}

fn extract_options(prune: bool, cap: usize, permissive: bool) -> ExtractOptions {
    ExtractOptions {
        prune,
        width_cap: cap,
        constants: if permissive {
            ConstantPolicy::Permissive
        } else {
            ConstantPolicy::Strict
        },
        solver: Solver::default(),
    }
}

fn as_dnf(k: PresentedPolyhedron) -> crate::Result<PresentedPolyhedron> {
    k.to_mode(Mode::Dnf)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(rendered)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code,
                }
            };
        }
    };
    let output = cli.output.clone();
    let outcome = match execute(cli.command) {
        Ok(o) => o,
        Err(f) => Outcome::fail(f.code, f.message),
    };
    match output {
        Some(path) if !outcome.stdout.is_empty() || outcome.code == EXIT_OK => {
            match std::fs::write(&path, &outcome.stdout) {
                Ok(()) => Outcome {
                    stdout: String::new(),
                    ..outcome
                },
                Err(e) => Outcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())),
            }
        }
        _ => outcome,
    }
}

fn execute(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Eval { network, points } => {
            let p = load(&network, text::parse_network)?;
            let pts = load(&points, text::parse_points)?;
            let mut out = String::new();
            for x in &pts {
                let v = p.forward(x)?;
                let bits: Vec<&str> = v.iter().map(|&b| if b { "1" } else { "0" }).collect();
                out.push_str(&bits.join(" "));
                out.push('\n');
            }
            Ok(Outcome::ok(out))
        }
        Command::Member { bundle, points } => {
            let k = load(&bundle, text::parse_bundle)?;
            let pts = load(&points, text::parse_points)?;
            let bits = pts.iter().map(|x| k.member(x)).collect::<crate::Result<Vec<_>>>()?;
            Ok(Outcome::ok(bits_output(bits)))
        }
        Command::Synth {
            halfspaces,
            scheme,
            mode,
        } => {
            let hs = load(&halfspaces, text::parse_halfspaces)?;
            let d = load(&scheme, text::parse_scheme)?;
            let mode = match mode {
                FormArg::Dnf => Mode::Dnf,
                FormArg::Cnf => Mode::Cnf,
            };
            let p = build_network(&hs, &d, mode)?;
            Ok(Outcome::ok(format_network(&p)))
        }
        Command::Extract {
            network,
            prune,
            cap,
            permissive_constants,
        } => {
            let p = load(&network, text::parse_network)?;
            let report = extract_scheme(&p, &extract_options(prune, cap, permissive_constants))?;
            let k = report.polyhedron(&p)?;
            Ok(Outcome {
                stdout: format_bundle(&k),
                stderr: format!(
                    "enumerated={} accepted={} pruned={}\n",
                    report.enumerated_count, report.accepted_count, report.pruned_count
                ),
                code: EXIT_OK,
            })
        }
        Command::Normalize {
            network,
            prune,
            cap,
            permissive_constants,
        } => {
            let p = load(&network, text::parse_network)?;
            match normalize_three_layers_with(&p, &extract_options(prune, cap, permissive_constants))? {
                Normalized::Network(p3) => Ok(Outcome::ok(format_network(&p3))),
                Normalized::Constant { value, .. } => Ok(Outcome::ok(format!("CONSTANT {}\n", value as u8))),
            }
        }
        Command::Algebra { op, bundles } => {
            let arity = match op {
                AlgebraOp::Union | AlgebraOp::Intersect => 2,
                _ => 1,
            };
            if bundles.len() != arity {
                return Err(Failure {
                    code: EXIT_PRECONDITION,
                    message: format!("{op:?} takes {arity} bundle(s), got {}", bundles.len()),
                });
            }
            let ks = bundles
                .iter()
                .map(|b| load(b, text::parse_bundle))
                .collect::<Result<Vec<_>, _>>()?;
            let result = match op {
                AlgebraOp::Union => as_dnf(ks[0].clone())?.union(&as_dnf(ks[1].clone())?)?,
                AlgebraOp::Intersect => as_dnf(ks[0].clone())?.intersection(&as_dnf(ks[1].clone())?)?,
                AlgebraOp::Complement => match ks[0].mode() {
                    Mode::Dnf => ks[0].complement()?,
                    Mode::Cnf => ks[0].complement_cnf()?,
                },
                AlgebraOp::ToDnf => ks[0].to_mode(Mode::Dnf)?,
                AlgebraOp::ToCnf => ks[0].to_mode(Mode::Cnf)?,
            };
            Ok(Outcome::ok(format_bundle(&result)))
        }
        Command::Equiv {
            first,
            second,
            mode,
            seed,
            samples,
            cap,
        } => {
            let a = load(&first, text::parse_network)?;
            let b = load(&second, text::parse_network)?;
            let mode = match mode {
                EquivArg::Exact => EquivalenceMode::Exact,
                EquivArg::Sampled => EquivalenceMode::Sampled { seed, samples },
            };
            let opts = EquivalenceOptions {
                width_cap: cap,
                ..Default::default()
            };
            let verdict = check_equivalence_with(&a, &b, mode, &opts)?;
            let mut out = String::new();
            let code = match verdict {
                Verdict::Equivalent => {
                    out.push_str("EQUIVALENT\n");
                    EXIT_OK
                }
                Verdict::CounterexampleBits { bits, witness } => {
                    writeln!(out, "COUNTEREXAMPLE b={bits}").unwrap();
                    if let Some(w) = witness {
                        writeln!(out, "WITNESS {}", format_point(&w)).unwrap();
                    }
                    EXIT_NEGATIVE
                }
                Verdict::CounterexamplePoint { point, bits } => {
                    writeln!(out, "COUNTEREXAMPLE b={bits}").unwrap();
                    writeln!(out, "WITNESS {}", format_point(&point)).unwrap();
                    EXIT_NEGATIVE
                }
            };
            Ok(Outcome {
                stdout: out,
                stderr: String::new(),
                code,
            })
        }
        Command::Prune { bundle } => {
            let k = load(&bundle, text::parse_bundle)?;
            if k.mode() != Mode::Dnf {
                return Err(Error::ModeMismatch { expected: "DNF" }.into());
            }
            let scheme = prune_empty_cells(k.halfspaces(), k.dim(), k.scheme(), &Solver::default())?;
            let pruned = PresentedPolyhedron::new(k.dim(), k.halfspaces().to_vec(), scheme, Mode::Dnf)?;
            Ok(Outcome::ok(format_bundle(&pruned)))
        }
        Command::Feasible { system } => {
            let s = load(&system, text::parse_system)?;
            Ok(match Solver::default().witness(&s)? {
                Some(w) => Outcome::ok(format!("FEASIBLE\nWITNESS {}\n", format_point(&w))),
                None => Outcome {
                    stdout: "INFEASIBLE\n".into(),
                    stderr: String::new(),
                    code: EXIT_NEGATIVE,
                },
            })
        }
    }
}
