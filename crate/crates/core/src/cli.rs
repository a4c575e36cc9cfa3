//! Command-line front end. Every report is a JSON envelope carrying the tool
//! version, the seed, and a SHA-256 digest of the resolved config and inputs.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::catalog::{build_catalog, verify_algebra, VerifyTolerances};
use crate::error::{Error, Result};
use crate::group::{IrrepProvider, SemidirectGroup};
use crate::mackey::{partial_fourier, GroupFunction};
use crate::netconv::motion::MotionFunction;
use crate::netconv::scenario::{
    build_cube, build_motion, run_scenario, NetTolerances, ScenarioConfig, ScenarioOverrides,
};
use crate::netconv::vanish::{cube_vanishing, finite_vanishing, motion_vanishing};
use crate::CMatrix;

pub const TOOL: &str = "mackey-fields";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = TOOL, version, about = "Fourier transforms and operator-field checks for K ⋉ A")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Subcommand)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Catalogue of the dual: one entry per orbit and stabilizer irrep.
    Dual,
    /// Fourier transform of a group function on every catalogue entry.
    Fourier,
    /// Seeded checks of the transform: homomorphism, adjoint, bounds, Plancherel.
    Verify,
    /// Condition-(3) decay table of a convergence scenario.
    Net,
    /// Vanishing-at-infinity report of a scenario.
    Vanish,
}

#[derive(Clone, Debug, Default, Args)]
pub struct Options {
    /// Group spec file or builtin name (e.g. dihedral:4).
    #[arg(long, global = true)]
    pub spec: Option<String>,
    /// Group function JSON file, or a payload name for `net`/`vanish`.
    #[arg(long, global = true)]
    pub function: Option<String>,
    /// Scenario config file or builtin name (motion, cube, finite).
    #[arg(long, global = true)]
    pub scenario: Option<String>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output prefix; `net` writes `<out>.json` and `<out>.csv`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub tol_op: Option<f64>,
    #[arg(long, global = true)]
    pub tol_proj: Option<f64>,
    #[arg(long, global = true)]
    pub quadrature: Option<usize>,
    #[arg(long, global = true)]
    pub modes: Option<usize>,
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Tail-supremum threshold for `vanish`.
    #[arg(long, global = true)]
    pub threshold: Option<f64>,
}

pub const DEFAULT_TRIALS: usize = 20;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TOL_OP: f64 = 1e-9;
pub const DEFAULT_TOL_PROJ: f64 = 1e-12;
pub const DEFAULT_THRESHOLD: f64 = 1e-12;

/// Resolved run parameters. Scenario knobs stay optional so a config file
/// can supply them when no flag does.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub spec: Option<String>,
    pub function: Option<String>,
    pub scenario: Option<String>,
    pub trials: usize,
    pub seed: u64,
    pub tol_op: f64,
    pub tol_proj: f64,
    pub quadrature: Option<usize>,
    pub modes: Option<usize>,
    pub depth: Option<usize>,
    pub threshold: f64,
}

impl RunConfig {
    pub fn resolve(command: Command, o: &Options) -> Result<Self> {
        let cfg = Self {
            command,
            spec: o.spec.clone(),
            function: o.function.clone(),
            scenario: o.scenario.clone(),
            trials: o.trials.unwrap_or(DEFAULT_TRIALS),
            seed: o.seed.unwrap_or(DEFAULT_SEED),
            tol_op: o.tol_op.unwrap_or(DEFAULT_TOL_OP),
            tol_proj: o.tol_proj.unwrap_or(DEFAULT_TOL_PROJ),
            quadrature: o.quadrature,
            modes: o.modes,
            depth: o.depth,
            threshold: o.threshold.unwrap_or(DEFAULT_THRESHOLD),
        };
        for (name, v) in [
            ("tol-op", cfg.tol_op),
            ("tol-proj", cfg.tol_proj),
            ("threshold", cfg.threshold),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Input(format!("--{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [
            ("quadrature", cfg.quadrature),
            ("modes", cfg.modes),
            ("trials", Some(cfg.trials)),
        ] {
            if v == Some(0) {
                return Err(Error::Input(format!("--{name} must be positive")));
            }
        }
        Ok(cfg)
    }

    fn overrides(&self) -> ScenarioOverrides {
        ScenarioOverrides {
            function: self.function.clone(),
            modes: self.modes,
            quadrature: self.quadrature,
            depth: self.depth,
            seed: Some(self.seed),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Command,
    pub config_digest: String,
    pub seed: u64,
    pub config: RunConfig,
    pub pass: bool,
    pub result: T,
}

/// SHA-256 over the resolved config and the bytes of every input file.
fn digest(config: &RunConfig) -> Result<String> {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(config)?);
    for arg in [&config.spec, &config.function, &config.scenario]
        .into_iter()
        .flatten()
    {
        if Path::new(arg).is_file() {
            h.update(std::fs::read(arg)?);
        }
    }
    Ok(h.finalize().iter().map(|b| format!("{b:02x}")).collect())
}

fn required<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| Error::Input(format!("--{flag} is required for this command")))
}

#[derive(Debug, Serialize)]
struct FourierEntry {
    orbit_representative: Vec<i64>,
    irrep_index: usize,
    dim: usize,
    matrix: CMatrix,
}

/// Serialized result and verdict of one command, plus an optional CSV body.
struct Outcome {
    result: serde_json::Value,
    pass: bool,
    csv: Option<String>,
}

fn load_function(g: &SemidirectGroup, cfg: &RunConfig) -> Result<GroupFunction> {
    match &cfg.function {
        Some(path) => GroupFunction::from_json(g, &std::fs::read_to_string(path)?),
        None => Ok(GroupFunction::random(
            g,
            &mut ChaCha8Rng::seed_from_u64(cfg.seed),
        )),
    }
}

fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let provider = IrrepProvider::default();
    match cfg.command {
        Command::Dual => {
            let g = SemidirectGroup::load(required(&cfg.spec, "spec")?)?;
            let summary = build_catalog(&g, &provider)?.summary(&g);
            Ok(Outcome {
                pass: summary.complete,
                result: serde_json::to_value(summary)?,
                csv: None,
            })
        }
        Command::Fourier => {
            let g = SemidirectGroup::load(required(&cfg.spec, "spec")?)?;
            let catalog = build_catalog(&g, &provider)?;
            let f = load_function(&g, cfg)?;
            let blocks = catalog.fourier(&g, &partial_fourier(&g, &f));
            let entries: Vec<FourierEntry> = catalog
                .entries
                .iter()
                .zip(blocks)
                .map(|(e, matrix)| FourierEntry {
                    orbit_representative: g.dual()[e.triple.chi()].freq.clone(),
                    irrep_index: e.triple.irrep_index(),
                    dim: e.triple.dim(),
                    matrix,
                })
                .collect();
            Ok(Outcome {
                pass: true,
                result: serde_json::to_value(entries)?,
                csv: None,
            })
        }
        Command::Verify => {
            let g = SemidirectGroup::load(required(&cfg.spec, "spec")?)?;
            let catalog = build_catalog(&g, &provider)?;
            let tol = VerifyTolerances {
                op: cfg.tol_op,
                exact: cfg.tol_proj,
                plancherel_rel: cfg.tol_op,
            };
            let report = verify_algebra(&g, &catalog, cfg.trials, cfg.seed, tol)?;
            Ok(Outcome {
                pass: report.pass,
                result: serde_json::to_value(report)?,
                csv: None,
            })
        }
        Command::Net => {
            let scenario = ScenarioConfig::load(required(&cfg.scenario, "scenario")?)?;
            let tol = NetTolerances {
                op: cfg.tol_op,
                exact: cfg.tol_proj,
            };
            let out = run_scenario(&scenario, &cfg.overrides(), tol)?;
            Ok(Outcome {
                pass: out.pass,
                csv: Some(out.table.to_csv()),
                result: serde_json::to_value(out)?,
            })
        }
        Command::Vanish => {
            let scenario = ScenarioConfig::load(required(&cfg.scenario, "scenario")?)?;
            let ov = cfg.overrides();
            let report = match &scenario {
                ScenarioConfig::Motion(m) => {
                    let sc = build_motion(m, &ov)?;
                    let radii = vanish_radii(&sc.payload, &sc.radii);
                    motion_vanishing(&sc.payload, &radii, sc.modes, sc.quadrature, cfg.threshold)?
                }
                ScenarioConfig::Cube(c) => cube_vanishing(&build_cube(c, &ov)?, cfg.threshold),
                ScenarioConfig::Finite(f) => finite_vanishing(&f.spec, cfg.threshold),
            };
            Ok(Outcome {
                pass: report.pass,
                result: serde_json::to_value(report)?,
                csv: None,
            })
        }
    }
}

/// Multiples of the support radius straddling it, or the scenario radii for
/// payloads without compact support.
fn vanish_radii(f: &dyn MotionFunction, fallback: &[f64]) -> Vec<f64> {
    match f.support_radius() {
        Some(r) => [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 4.0]
            .iter()
            .map(|t| t * r)
            .collect(),
        None => fallback.to_vec(),
    }
}

/// Runs one command, writing the report to `stdout` and diagnostics to
/// `stderr`; returns the exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match try_run(cli, stdout) {
        Ok(pass) => {
            if pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn try_run(cli: &Cli, stdout: &mut dyn Write) -> Result<bool> {
    let config = RunConfig::resolve(cli.command, &cli.options)?;
    let outcome = execute(&config)?;
    let report = Report {
        tool: TOOL,
        version: VERSION,
        command: config.command,
        config_digest: digest(&config)?,
        seed: config.seed,
        pass: outcome.pass,
        result: outcome.result,
        config,
    };
    let json = serde_json::to_string_pretty(&report)? + "\n";
    stdout.write_all(json.as_bytes())?;
    if let Some(prefix) = &cli.options.out {
        std::fs::write(with_suffix(prefix, "json"), &json)?;
        if let Some(csv) = &outcome.csv {
            std::fs::write(with_suffix(prefix, "csv"), csv)?;
        }
    }
    Ok(report.pass)
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let cli = Cli::parse();
    run(
        &cli,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
