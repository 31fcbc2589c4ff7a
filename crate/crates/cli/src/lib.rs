//! Command-line front end. `run` is the whole program minus process I/O so
//! that tests can drive it in-process.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lievec::conjecture::{lie_witness, Verdict};
use lievec::grading::{random_solvable, Mode, RandomParams};
use lievec::liealg::SeriesReport;
use lievec::nilrad::{nilradical, nilradical_series};
use lievec::pipeline::{normalize, transform_exact, NormalizeOptions, PathChoice, Strategy};
use lievec::text::{format_field, parse_weights, AlgebraFile};
use lievec::{Dilation, Error, LieAlgebraVF, SeriesKind, VarContext, DEFAULT_MAX_DIM};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_CERTIFICATE: i32 = 4;

/// Name of the environment variable overriding the closure cap.
pub const MAX_DIM_ENV: &str = "LIEVEC_MAX_DIM";

#[derive(Parser, Debug)]
#[command(name = "lievec", version, about = "Exact analysis and normalization of solvable Lie algebras of vector fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Echo the file in canonical form.
    Parse { file: String },
    /// Bracket closure with solvable / nilpotent / transitive report.
    Analyze {
        file: String,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Derived, lower central or nilradical series as JSON.
    Series {
        file: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Basis of the nilradical, one field per line.
    Nilradical {
        file: String,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Degree membership of the listed generators.
    Grade {
        file: String,
        /// Comma-separated weights; defaults to the file's `weights:` line.
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Nonpos)]
        mode: ModeArg,
    },
    /// Generators of the homogeneous fields of a negative degree.
    Enum {
        #[arg(long)]
        vars: String,
        #[arg(long)]
        weights: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// Normalization certificate as JSON; exit 0 iff certified.
    Normalize {
        file: String,
        #[arg(long)]
        jet_order: Option<u32>,
        #[arg(long, value_enum)]
        path: Option<PathArg>,
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Normalize, rewrite exactly and witness the coefficient generators.
    Witness {
        file: String,
        #[arg(long)]
        jet_order: Option<u32>,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Emit a random transitive solvable algebra file.
    Gen {
        #[arg(long)]
        vars: String,
        #[arg(long)]
        weights: String,
        #[arg(long)]
        seed: u64,
        /// Keep probability of optional generators, `p/q`.
        #[arg(long)]
        density: Option<String>,
        #[arg(long)]
        max_dim: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Derived,
    Lcs,
    Nilradical,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Nonpos,
    Strictneg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PathArg {
    Auto,
    Nilpotent,
    Solvable,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Forms,
    Flows,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::NotCertified(_)
        | Error::InternalCertificateFailure(_)
        | Error::SingularJetMap
        | Error::NotClosedForm(_)
        | Error::BoundExceeded(_) => EXIT_CERTIFICATE,
        e if e.is_precondition() => EXIT_PRECONDITION,
        _ => EXIT_CERTIFICATE,
    }
}

fn fail(e: Error) -> Outcome {
    Outcome {
        code: exit_code(&e),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

/// Runs with the process environment.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_env(args, std::env::var(MAX_DIM_ENV).ok())
}

/// Runs with an explicit value for the closure-cap variable.
pub fn run_with_env<I, T>(args: I, max_dim_env: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_PARSE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let env_cap = match max_dim_env.as_deref().map(str::parse::<usize>) {
        None => None,
        Some(Ok(v)) => Some(v),
        Some(Err(_)) => {
            return fail(Error::InvalidArgument(format!("{MAX_DIM_ENV} must be a positive integer")));
        }
    };
    match dispatch(cli.command, env_cap) {
        Ok(o) => o,
        Err(e) => fail(e),
    }
}

fn cap(flag: Option<usize>, env: Option<usize>) -> usize {
    flag.or(env).unwrap_or(DEFAULT_MAX_DIM)
}

fn load(path: &str) -> lievec::Result<AlgebraFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse {
            line: 0,
            column: 0,
            message: format!("cannot read {path}: {e}"),
        })?;
    AlgebraFile::parse(&text)
}

fn closure(f: &AlgebraFile, cap: usize) -> lievec::Result<LieAlgebraVF> {
    LieAlgebraVF::closure(f.ctx.clone(), &f.generators, cap)
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnalyzeReport {
    variables: Vec<String>,
    dim: usize,
    basis: Vec<String>,
    solvable: bool,
    nilpotent: bool,
    transitive: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SeriesJson {
    kind: SeriesKind,
    start_index: usize,
    dims: Vec<usize>,
    dims_at_origin: Vec<usize>,
    height: Option<usize>,
    members: Vec<Vec<String>>,
}

fn series_json(l: &LieAlgebraVF, s: &SeriesReport) -> SeriesJson {
    SeriesJson {
        kind: s.kind,
        start_index: s.start_index,
        dims: s.dims.clone(),
        dims_at_origin: s.dims_at_origin.clone(),
        height: s.height,
        members: s.chain.iter().map(|m| l.fields_of(m).iter().map(format_field).collect()).collect(),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GradeReport {
    weights: Vec<u32>,
    mode: Mode,
    holds: bool,
    fields: Vec<GradeEntry>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GradeEntry {
    field: String,
    degrees: Vec<i64>,
}

fn split_names(s: &str) -> Vec<String> {
    s.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect()
}

fn parse_density(s: &str) -> lievec::Result<(u32, u32)> {
    let bad = || Error::InvalidArgument(format!("density must be p/q with 0 <= p <= q, q > 0: {s}"));
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: u32 = p.trim().parse().map_err(|_| bad())?;
    let q: u32 = q.trim().parse().map_err(|_| bad())?;
    if q == 0 || p > q {
        return Err(bad());
    }
    Ok((p, q))
}

fn normalize_options(
    f: &AlgebraFile,
    jet_order: Option<u32>,
    path: Option<PathArg>,
    strategy: Option<StrategyArg>,
) -> lievec::Result<NormalizeOptions> {
    let opt = |k: &str| f.options.get(k).map(String::as_str);
    let bad = |k: &str, v: &str| Error::InvalidArgument(format!("invalid option {k} = {v}"));
    let jet_order = match (jet_order, opt("jet_order")) {
        (Some(n), _) => Some(n),
        (None, Some(v)) => Some(v.parse().map_err(|_| bad("jet_order", v))?),
        (None, None) => None,
    };
    let path = match (path, opt("path")) {
        (Some(PathArg::Auto), _) => PathChoice::Auto,
        (Some(PathArg::Nilpotent), _) => PathChoice::Nilpotent,
        (Some(PathArg::Solvable), _) => PathChoice::Solvable,
        (None, None | Some("auto")) => PathChoice::Auto,
        (None, Some("nilpotent")) => PathChoice::Nilpotent,
        (None, Some("solvable")) => PathChoice::Solvable,
        (None, Some(v)) => return Err(bad("path", v)),
    };
    let strategy = match (strategy, opt("strategy")) {
        (Some(StrategyArg::Forms), _) => Strategy::Forms,
        (Some(StrategyArg::Flows), _) => Strategy::Flows,
        (None, None | Some("forms")) => Strategy::Forms,
        (None, Some("flows")) => Strategy::Flows,
        (None, Some(v)) => return Err(bad("strategy", v)),
    };
    Ok(NormalizeOptions {
        jet_order,
        path,
        strategy,
    })
}

fn dispatch(cmd: Command, env_cap: Option<usize>) -> lievec::Result<Outcome> {
    match cmd {
        Command::Parse { file } => Ok(Outcome::ok(load(&file)?.to_text())),
        Command::Analyze { file, max_dim } => {
            let f = load(&file)?;
            let l = closure(&f, cap(max_dim, env_cap))?;
            Ok(Outcome::ok(json(&AnalyzeReport {
                variables: f.ctx.names().to_vec(),
                dim: l.dim(),
                basis: l.basis().iter().map(format_field).collect(),
                solvable: l.is_solvable(),
                nilpotent: l.is_nilpotent(),
                transitive: l.is_transitive_at_origin(),
            })))
        }
        Command::Series { file, kind, max_dim } => {
            let f = load(&file)?;
            let l = closure(&f, cap(max_dim, env_cap))?;
            let s = match kind {
                KindArg::Derived => l.derived_series(),
                KindArg::Lcs => l.lower_central_series(),
                KindArg::Nilradical => nilradical_series(&l)?,
            };
            Ok(Outcome::ok(json(&series_json(&l, &s))))
        }
        Command::Nilradical { file, max_dim } => {
            let f = load(&file)?;
            let l = closure(&f, cap(max_dim, env_cap))?;
            let nr = nilradical(&l)?;
            let mut out = String::new();
            for x in l.fields_of(&nr) {
                writeln!(out, "{}", format_field(&x)).unwrap();
            }
            Ok(Outcome::ok(out))
        }
        Command::Grade { file, weights, mode } => {
            let f = load(&file)?;
            let w = match (weights, &f.weights) {
                (Some(s), _) => parse_weights(&s, 1)?,
                (None, Some(w)) => w.clone(),
                (None, None) => return Err(Error::InvalidArgument("no weights given".into())),
            };
            let h = Dilation::new(f.ctx.clone(), w.clone())?;
            let mode = match mode {
                ModeArg::Nonpos => Mode::NonPos,
                ModeArg::Strictneg => Mode::StrictNeg,
            };
            let r = h.membership(&f.generators, mode)?;
            Ok(Outcome::ok(json(&GradeReport {
                weights: w,
                mode,
                holds: r.holds,
                fields: f
                    .generators
                    .iter()
                    .zip(r.degrees)
                    .map(|(g, d)| GradeEntry {
                        field: format_field(g),
                        degrees: d,
                    })
                    .collect(),
            })))
        }
        Command::Enum { vars, weights, degree } => {
            let ctx = VarContext::new(&split_names(&vars))?;
            let h = Dilation::new(ctx, parse_weights(&weights, 1)?)?;
            let g = h.enumerate_graded(degree)?;
            let mut out = String::new();
            if g.module_over_zero_weight {
                out.push_str("# module over functions of the zero-weight variables\n");
            }
            for x in &g.fields {
                writeln!(out, "{}", format_field(x)).unwrap();
            }
            Ok(Outcome::ok(out))
        }
        Command::Normalize {
            file,
            jet_order,
            path,
            strategy,
            max_dim,
        } => {
            let f = load(&file)?;
            let opts = normalize_options(&f, jet_order, path, strategy)?;
            let l = closure(&f, cap(max_dim, env_cap))?;
            let c = normalize(&l, &opts)?;
            Ok(Outcome {
                code: if c.is_certified() { EXIT_OK } else { EXIT_CERTIFICATE },
                stdout: json(&c),
                stderr: String::new(),
            })
        }
        Command::Witness {
            file,
            jet_order,
            max_dim,
        } => {
            let f = load(&file)?;
            let opts = normalize_options(&f, jet_order, None, None)?;
            let l = closure(&f, cap(max_dim, env_cap))?;
            let c = normalize(&l, &opts)?;
            if let lievec::pipeline::Status::Failed(r) = &c.status {
                return Err(Error::NotCertified(r.clone()));
            }
            let t = transform_exact(&l, &c)?;
            let w = lie_witness(&c, &t)?;
            let code = if matches!(w.verdict, Verdict::Failed(_)) { EXIT_CERTIFICATE } else { EXIT_OK };
            Ok(Outcome {
                code,
                stdout: json(&w),
                stderr: String::new(),
            })
        }
        Command::Gen {
            vars,
            weights,
            seed,
            density,
            max_dim,
        } => {
            let ctx = VarContext::new(&split_names(&vars))?;
            let w = parse_weights(&weights, 1)?;
            let h = Dilation::new(ctx.clone(), w.clone())?;
            let mut params = RandomParams {
                cap: cap(max_dim, env_cap),
                ..RandomParams::default()
            };
            if let Some(d) = density {
                params.density = parse_density(&d)?;
            }
            let l = random_solvable(&h, seed, &params)?;
            let file = AlgebraFile {
                ctx,
                generators: l.basis().to_vec(),
                weights: Some(w),
                options: Default::default(),
            };
            Ok(Outcome::ok(format!("# seed {seed}\n{}", file.to_text())))
        }
    }
}
