//! Command-line front end.
//!
//! Exit codes: `0` the analysed property holds, `1` it does not (not tight,
//! not a dual, ...), `2` the input or invocation is invalid. Errors are
//! written to standard error as `{"error": {"kind": ..., "message": ...}}`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::correlation::{correlation_profile, walnut_upper_bound, wh_identity_terms};
use crate::duality::{decompose_dual, dual_space, wexler_raz_check};
use crate::frame::{frame_bounds, norm_audit};
use crate::io::{parse_signal_file, InputError, JobInput, WindowFile};
use crate::lattice::GaborLattice;
use crate::oracle::oracle_coefficient_energy;
use crate::synth::{
    phases_from_tight_generator, random_tight_generator, tight_generator_from_phases,
};
use crate::tightness::{classify, density_diagnostics, fourier_dual_check, DEFAULT_TOL};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Tightness, bounds, norm audit and density diagnostics.
    Analyze,
    /// Decide normalized tightness.
    CheckTight,
    /// Emit a normalized tight window, from "phases" or at random.
    MakeTight,
    /// Canonical dual and the space of alternate duals.
    Dual,
    /// Split "h" into canonical and free parts and decide duality.
    VerifyDual,
    /// Biorthogonality residual of "h" against the adjoint atoms of "g".
    WexlerRaz,
    /// Compare tightness of g with that of its DFT on the swapped lattice.
    FourierDual,
    /// Correlation-form coefficient energy of "f" against enumeration.
    WhIdentity,
    /// Frame bounds and the correlation upper bound.
    Bounds,
    /// Correlation table G_k(x).
    Profile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum CommandArg {
    #[command(about = "Tightness, bounds, norm audit and density diagnostics")]
    Analyze,
    #[command(about = "Decide normalized tightness (exit 0 if tight)")]
    CheckTight,
    #[command(about = "Emit a normalized tight window from phases or at random")]
    MakeTight,
    #[command(about = "Canonical dual window and the space of alternate duals")]
    Dual,
    #[command(about = "Decide whether h is a dual window of g")]
    VerifyDual,
    #[command(about = "Biorthogonality residual of h against the adjoint atoms of g")]
    WexlerRaz,
    #[command(about = "Compare tightness of g with its DFT on the swapped lattice")]
    FourierDual,
    #[command(about = "Correlation-form coefficient energy of f")]
    WhIdentity,
    #[command(about = "Frame bounds and the correlation upper bound")]
    Bounds,
    #[command(about = "Correlation table G_k(x) as CSV (k,x,re,im,abs)")]
    Profile,
}

impl From<&CommandArg> for Command {
    fn from(c: &CommandArg) -> Self {
        match c {
            CommandArg::Analyze => Command::Analyze,
            CommandArg::CheckTight => Command::CheckTight,
            CommandArg::MakeTight => Command::MakeTight,
            CommandArg::Dual => Command::Dual,
            CommandArg::VerifyDual => Command::VerifyDual,
            CommandArg::WexlerRaz => Command::WexlerRaz,
            CommandArg::FourierDual => Command::FourierDual,
            CommandArg::WhIdentity => Command::WhIdentity,
            CommandArg::Bounds => Command::Bounds,
            CommandArg::Profile => Command::Profile,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "whframe",
    version,
    about = "Finite Weyl-Heisenberg frame analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArg,

    /// Job file (JSON).
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Destination; standard output when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Absolute tolerance for all verdicts.
    #[arg(long, global = true, env = "WHFRAME_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format; `profile` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

/// One CLI invocation.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub command: Command,
    pub input_path: PathBuf,
    pub output_path: Option<PathBuf>,
    pub tol: f64,
    pub seed: u64,
    pub format: Format,
}

#[derive(Debug)]
struct Failure {
    kind: &'static str,
    message: String,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        kind: "usage",
        message: message.into(),
    }
}

/// Parses arguments (including the program name) and runs the job.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match config_from_cli(cli) {
        Ok(config) => run(&config),
        Err(f) => report_failure(&f),
    }
}

fn config_from_cli(cli: Cli) -> Result<JobConfig, Failure> {
    let command = Command::from(&cli.command);
    let input_path = cli.input.ok_or_else(|| usage("--input is required"))?;
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(usage(format!(
            "tolerance must be positive, got {}",
            cli.tol
        )));
    }
    let format = cli.format.unwrap_or(match command {
        Command::Profile => Format::Csv,
        _ => Format::Json,
    });
    if format == Format::Csv && command != Command::Profile {
        return Err(usage("csv output is only available for `profile`"));
    }
    Ok(JobConfig {
        command,
        input_path,
        output_path: cli.output,
        tol: cli.tol,
        seed: cli.seed,
        format,
    })
}

fn report_failure(f: &Failure) -> i32 {
    let obj = json!({ "error": { "kind": f.kind, "message": f.message } });
    eprintln!("{obj}");
    EXIT_USAGE
}

/// Runs a job and returns its exit code.
pub fn run(config: &JobConfig) -> i32 {
    let result = parse_signal_file(&config.input_path)
        .map_err(Failure::from)
        .and_then(|job| execute(config, &job))
        .and_then(|(body, holds)| {
            emit(config.output_path.as_deref(), &body)?;
            Ok(holds)
        });
    match result {
        Ok(true) => EXIT_HOLDS,
        Ok(false) => EXIT_FAILS,
        Err(f) => report_failure(&f),
    }
}

fn emit(path: Option<&Path>, body: &str) -> Result<(), Failure> {
    let io_failure = |e: std::io::Error| Failure {
        kind: "io",
        message: e.to_string(),
    };
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(io_failure)?;
            out.flush().map_err(io_failure)
        }
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".tmp");
            let tmp = PathBuf::from(tmp);
            fs::write(&tmp, body).map_err(io_failure)?;
            fs::rename(&tmp, path).map_err(io_failure)
        }
    }
}

fn dictionary(lat: &GaborLattice) -> Value {
    json!({
        "b_over_L": lat.tight_profile_level(),
        "ab_over_L": lat.tight_norm_sq(),
        "atoms": lat.atom_count(),
        "adjoint_atoms": lat.adjoint_count(),
    })
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn execute(config: &JobConfig, job: &JobInput) -> Result<(String, bool), Failure> {
    let lat = &job.lattice;
    let tol = config.tol;
    let header = |name: &str| {
        json!({
            "command": name,
            "lattice": lat,
            "dictionary": dictionary(lat),
            "tol": tol,
        })
    };
    let with = |mut base: Value, extra: Value| {
        if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
            b.extend(e);
        }
        base
    };

    match config.command {
        Command::Analyze => {
            let g = job.require_g()?;
            let report = classify(lat, g, tol)?;
            let audit = norm_audit(lat, g, tol)?;
            let upper = walnut_upper_bound(lat, g)?;
            let diagnostics = if report.is_frame {
                Some(density_diagnostics(lat, g, tol)?)
            } else {
                None
            };
            let holds = report.is_frame;
            let body = with(
                header("analyze"),
                json!({
                    "tightness": report,
                    "walnut_upper_bound": upper,
                    "norm_audit": audit,
                    "density_diagnostics": diagnostics,
                }),
            );
            Ok((to_json(&body), holds))
        }
        Command::CheckTight => {
            let report = classify(lat, job.require_g()?, tol)?;
            let holds = report.normalized_tight;
            Ok((
                to_json(&with(header("check-tight"), json!({ "report": report }))),
                holds,
            ))
        }
        Command::MakeTight => {
            let (g, phases) = match &job.phases {
                Some(spec) => (
                    tight_generator_from_phases(spec)?,
                    Some(spec.phases().to_vec()),
                ),
                None => {
                    let g = random_tight_generator(lat, config.seed)?;
                    let phases = if lat.is_critical() {
                        Some(
                            phases_from_tight_generator(lat, &g, tol.max(1e-9))?
                                .phases()
                                .to_vec(),
                        )
                    } else {
                        None
                    };
                    (g, phases)
                }
            };
            let file = WindowFile::new(lat, g, phases);
            let body = serde_json::to_value(&file).expect("window serializes");
            Ok((to_json(&body), true))
        }
        Command::Dual => {
            let space = dual_space(lat, job.require_g()?)?;
            let body = with(
                header("dual"),
                json!({
                    "canonical_dual": space.canonical_dual(),
                    "dual_space": {
                        "orbit_rank": space.orbit_rank(),
                        "dimension": space.dimension(),
                        "complement_basis": space.complement_basis(),
                    },
                }),
            );
            Ok((to_json(&body), true))
        }
        Command::VerifyDual => {
            let report = decompose_dual(lat, job.require_g()?, job.require_h()?, tol)?;
            let holds = report.is_dual;
            Ok((
                to_json(&with(header("verify-dual"), json!({ "report": report }))),
                holds,
            ))
        }
        Command::WexlerRaz => {
            let residual = wexler_raz_check(lat, job.require_g()?, job.require_h()?)?;
            let holds = residual <= tol;
            let body = with(
                header("wexler-raz"),
                json!({ "residual": residual, "is_dual": holds }),
            );
            Ok((to_json(&body), holds))
        }
        Command::FourierDual => {
            let report = fourier_dual_check(lat, job.require_g()?, tol)?;
            let body = with(
                header("fourier-dual"),
                json!({ "swapped_lattice": lat.swapped(), "report": report }),
            );
            Ok((to_json(&body), report.agree))
        }
        Command::WhIdentity => {
            let g = job.require_g()?;
            let f = job.require_f()?;
            let terms = wh_identity_terms(lat, g, f)?;
            let energy = oracle_coefficient_energy(lat, g, f);
            let error = (terms.total() - energy).abs();
            let bound = tol * (1.0 + f.norm_sq() * g.norm_sq());
            let holds = error <= bound && terms.f2_imag.abs() <= bound;
            let body = with(
                header("wh-identity"),
                json!({
                    "F1": terms.f1,
                    "F2": terms.f2,
                    "F2_imag": terms.f2_imag,
                    "total": terms.total(),
                    "coefficient_energy": energy,
                    "error": error,
                    "allowed_error": bound,
                }),
            );
            Ok((to_json(&body), holds))
        }
        Command::Bounds => {
            let g = job.require_g()?;
            let bounds = frame_bounds(lat, g)?;
            let upper = walnut_upper_bound(lat, g)?;
            let body = with(
                header("bounds"),
                json!({
                    "bounds": bounds,
                    "is_frame": bounds.is_frame(),
                    "walnut_upper_bound": upper,
                }),
            );
            Ok((to_json(&body), bounds.is_frame()))
        }
        Command::Profile => {
            let profile = correlation_profile(lat, job.require_g()?)?;
            let body = match config.format {
                Format::Csv => profile.to_csv(),
                Format::Json => {
                    let rows: Vec<Value> = (0..lat.b())
                        .flat_map(|k| (0..lat.len()).map(move |x| (k, x)))
                        .map(|(k, x)| {
                            let z = profile.get(k, x);
                            json!({ "k": k, "x": x, "re": z.re, "im": z.im, "abs": z.norm() })
                        })
                        .collect();
                    to_json(&with(header("profile"), json!({ "rows": rows })))
                }
            };
            Ok((body, true))
        }
    }
}
