//! JSON scenario configs and their runner.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cube::{CubePayload, CubeScenario};
use super::finite::{condition3_defect, FiniteNet};
use super::limit::{limit_set, FourierField};
use super::motion::{default_radii, MotionPayload, MotionScenario};
use super::{decay_checks, DecayTable, Perturbation};
use crate::catalog::Check;
use crate::error::{Error, Result};
use crate::group::{irreps, IrrepProvider, SemidirectGroup, Subgroup};
use crate::mackey::{partial_fourier, tau, CataloguingTriple, GroupFunction};

pub const SCENARIO_NAMES: &str = "motion, cube, finite";
pub const DEFAULT_MOTION_FUNCTION: &str = "radial:1:2";
pub const DEFAULT_CUBE_PAYLOAD: &str = "product:3:0";
pub const DEFAULT_MODES: usize = 32;
pub const DEFAULT_QUADRATURE: usize = 256;
pub const DEFAULT_DEPTH: usize = 8;
pub const DEFAULT_FINITE_ROWS: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scenario", rename_all = "snake_case")]
pub enum ScenarioConfig {
    Motion(MotionConfig),
    Cube(CubeConfig),
    Finite(FiniteConfig),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotionConfig {
    /// `radial:R:p`, `mode1:R:p`, `bessel:R:p` or `zero`.
    pub function: Option<String>,
    pub modes: Option<usize>,
    pub quadrature: Option<usize>,
    pub radii: Option<Vec<f64>>,
    pub perturbation: Option<Perturbation>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeConfig {
    pub depth: Option<usize>,
    /// `product:depth:beta`.
    pub payload: Option<String>,
    pub perturbation: Option<Perturbation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetEntrySpec {
    pub character: Vec<i64>,
    /// Index into the irreps of the character's stabilizer.
    pub irrep: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteConfig {
    /// Builtin name or path of a group spec.
    pub spec: String,
    pub limit_character: Vec<i64>,
    /// Generators of `K′`; defaults to the stabilizer of the limit character.
    pub k_prime: Option<Vec<usize>>,
    #[serde(default)]
    pub limit_irrep: usize,
    /// Net entries; defaults to the stationary net at the limit entry.
    pub net: Option<Vec<NetEntrySpec>>,
    pub rows: Option<usize>,
    /// Path of a group function file; a seeded random function otherwise.
    pub function: Option<String>,
    pub seed: Option<u64>,
    pub perturbation: Option<Perturbation>,
}

impl ScenarioConfig {
    /// A JSON file, or one of the names `motion`, `cube`, `finite`.
    pub fn load(arg: &str) -> Result<Self> {
        let path = std::path::Path::new(arg);
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            return serde_json::from_str(&text)
                .map_err(|e| Error::Input(format!("scenario config: {e}")));
        }
        match arg {
            "motion" => Ok(Self::Motion(MotionConfig::default())),
            "cube" => Ok(Self::Cube(CubeConfig::default())),
            "finite" => Ok(Self::Finite(FiniteConfig {
                spec: "dihedral:4".into(),
                limit_character: vec![1],
                k_prime: None,
                limit_irrep: 0,
                net: None,
                rows: None,
                function: None,
                seed: None,
                perturbation: None,
            })),
            _ => Err(Error::UnknownBuiltin {
                name: arg.to_string(),
                valid: SCENARIO_NAMES.into(),
            }),
        }
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ScenarioOverrides {
    pub function: Option<String>,
    pub modes: Option<usize>,
    pub quadrature: Option<usize>,
    pub depth: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioOutcome {
    pub table: DecayTable,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub details: serde_json::Value,
}

fn outcome(table: DecayTable, checks: Vec<Check>, details: serde_json::Value) -> ScenarioOutcome {
    let pass = checks.iter().all(|c| c.pass);
    ScenarioOutcome {
        table,
        checks,
        pass,
        details,
    }
}

pub fn build_motion(cfg: &MotionConfig, ov: &ScenarioOverrides) -> Result<MotionScenario> {
    let name = ov
        .function
        .clone()
        .or_else(|| cfg.function.clone())
        .unwrap_or_else(|| DEFAULT_MOTION_FUNCTION.into());
    Ok(MotionScenario {
        payload: MotionPayload::parse(&name)?,
        modes: ov.modes.or(cfg.modes).unwrap_or(DEFAULT_MODES),
        quadrature: ov
            .quadrature
            .or(cfg.quadrature)
            .unwrap_or(DEFAULT_QUADRATURE),
        radii: cfg.radii.clone().unwrap_or_else(default_radii),
    })
}

pub fn build_cube(cfg: &CubeConfig, ov: &ScenarioOverrides) -> Result<CubeScenario> {
    let name = ov
        .function
        .clone()
        .or_else(|| cfg.payload.clone())
        .unwrap_or_else(|| DEFAULT_CUBE_PAYLOAD.into());
    CubeScenario::new(
        ov.depth.or(cfg.depth).unwrap_or(DEFAULT_DEPTH),
        CubePayload::parse(&name)?,
    )
}

/// Group, net, and the group function of a finite scenario.
pub struct FiniteSetup {
    pub group: SemidirectGroup,
    pub net: FiniteNet,
    pub function: GroupFunction,
}

fn character_index(g: &SemidirectGroup, freq: &[i64]) -> Result<usize> {
    if freq.len() != g.a().rank() {
        return Err(Error::Input(format!(
            "character {freq:?} needs {} coordinates",
            g.a().rank()
        )));
    }
    Ok(g.a().index(freq))
}

pub fn build_finite(cfg: &FiniteConfig, ov: &ScenarioOverrides) -> Result<FiniteSetup> {
    let g = SemidirectGroup::load(&cfg.spec)?;
    let provider = IrrepProvider::default();
    let chi = character_index(&g, &cfg.limit_character)?;
    let k_prime = match &cfg.k_prime {
        Some(gens) => {
            if let Some(bad) = gens.iter().find(|&&x| x >= g.k_order()) {
                return Err(Error::Input(format!(
                    "k_prime generator {bad} is not an element of K"
                )));
            }
            Subgroup::generated(g.k(), gens)
        }
        None => g.stabilizer(chi),
    };
    let mut kp_irreps = provider.irreps(g.k(), &k_prime)?;
    if cfg.limit_irrep >= kp_irreps.len() {
        return Err(Error::Input(format!(
            "limit_irrep {} out of range: K′ has {} irreps",
            cfg.limit_irrep,
            kp_irreps.len()
        )));
    }
    let mu_inf = kp_irreps.swap_remove(cfg.limit_irrep);
    let limit = limit_set(&g, chi, &mu_inf, &provider)?;
    let entries = match &cfg.net {
        Some(list) => list
            .iter()
            .map(|e| {
                let c = character_index(&g, &e.character)?;
                let stab = g.stabilizer(c);
                let mut reps = irreps(g.k(), &stab)?;
                if e.irrep >= reps.len() {
                    return Err(Error::Input(format!("net irrep {} out of range", e.irrep)));
                }
                CataloguingTriple::new(&g, c, reps.swap_remove(e.irrep), e.irrep)
            })
            .collect::<Result<Vec<_>>>()?,
        None => {
            if k_prime.elements() != g.stabilizer(chi).elements() {
                return Err(Error::Input(
                    "a stationary net needs K′ equal to the stabilizer; list net entries explicitly".into(),
                ));
            }
            let triple = CataloguingTriple::new(&g, chi, mu_inf.clone(), cfg.limit_irrep)?;
            vec![triple; cfg.rows.unwrap_or(DEFAULT_FINITE_ROWS)]
        }
    };
    let net = FiniteNet::new(entries, limit)?;
    let function = match &cfg.function {
        Some(path) => GroupFunction::from_json(&g, &std::fs::read_to_string(path)?)?,
        None => GroupFunction::random(
            &g,
            &mut ChaCha8Rng::seed_from_u64(ov.seed.or(cfg.seed).unwrap_or(0)),
        ),
    };
    Ok(FiniteSetup {
        group: g,
        net,
        function,
    })
}

/// Tolerances for scenario verdicts.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct NetTolerances {
    pub op: f64,
    pub exact: f64,
}

impl Default for NetTolerances {
    fn default() -> Self {
        Self {
            op: 1e-9,
            exact: 1e-12,
        }
    }
}

pub fn run_scenario(
    config: &ScenarioConfig,
    ov: &ScenarioOverrides,
    tol: NetTolerances,
) -> Result<ScenarioOutcome> {
    match config {
        ScenarioConfig::Motion(cfg) => {
            let sc = build_motion(cfg, ov)?;
            let out = sc.run(cfg.perturbation.as_ref())?;
            let details = serde_json::json!({ "per_character": out.per_character });
            Ok(outcome(out.table, out.checks, details))
        }
        ScenarioConfig::Cube(cfg) => {
            let sc = build_cube(cfg, ov)?;
            let table = sc.decay_table(cfg.perturbation.as_ref());
            let mut checks = decay_checks(&table, tol.exact, 1.0, tol.exact);
            if sc.payload.beta == 0.0 && cfg.perturbation.is_none() {
                let m0 = sc.payload.depth.max(3);
                let tail = table
                    .rows
                    .iter()
                    .skip(m0 - 1)
                    .map(|r| r.defect)
                    .fold(0.0, f64::max);
                checks.push(Check::new("exact_beyond_payload_depth", tail, tol.exact));
            }
            Ok(outcome(table, checks, serde_json::Value::Null))
        }
        ScenarioConfig::Finite(cfg) => {
            let setup = build_finite(cfg, ov)?;
            let g = &setup.group;
            let pf = partial_fourier(g, &setup.function);
            let field = FourierField {
                group: g,
                transform: pf.clone(),
            };
            let table = condition3_defect(g, &setup.net, &field, cfg.perturbation.as_ref())?;
            let mut checks = decay_checks(&table, tol.op, 0.0, tol.op);
            let lim = &setup.net.limit;
            let expected = tau(g, lim.k_prime(), &lim.mu_inf, lim.chi, &pf)?;
            let sigma = setup.net.limit_operator(g, &field)?;
            checks.push(Check::new(
                "sigma_equals_tau",
                sigma.distance(&expected)?,
                tol.op,
            ));
            let details = serde_json::json!({
                "limit_set": lim.entries.iter().map(|e| serde_json::json!({
                    "irrep_index": e.triple.irrep_index(),
                    "dim": e.triple.dim(),
                    "multiplicity": e.multiplicity,
                })).collect::<Vec<_>>(),
            });
            Ok(outcome(table, checks, details))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tagged_config_parses_and_rejects_unknown_fields() {
        let cfg: ScenarioConfig =
            serde_json::from_str(r#"{"scenario":"cube","depth":4,"payload":"product:2:0"}"#)
                .unwrap();
        assert!(matches!(
            cfg,
            ScenarioConfig::Cube(CubeConfig { depth: Some(4), .. })
        ));
        let err =
            serde_json::from_str::<ScenarioConfig>(r#"{"scenario":"cube","dpeth":4}"#).unwrap_err();
        assert!(err.to_string().contains("dpeth"), "{err}");
        let err = serde_json::from_str::<ScenarioConfig>(r#"{"scenario":"torus"}"#).unwrap_err();
        assert!(err.to_string().contains("torus"), "{err}");
    }

    #[test]
    fn unknown_builtin_scenario_lists_names() {
        let err = ScenarioConfig::load("sphere").unwrap_err();
        assert!(err.to_string().contains(SCENARIO_NAMES));
    }

    #[test]
    fn flags_override_config() {
        let cfg = MotionConfig {
            modes: Some(4),
            quadrature: Some(64),
            ..MotionConfig::default()
        };
        let ov = ScenarioOverrides {
            modes: Some(2),
            ..ScenarioOverrides::default()
        };
        let sc = build_motion(&cfg, &ov).unwrap();
        assert_eq!((sc.modes, sc.quadrature), (2, 64));
    }

    #[test]
    fn default_finite_scenario_is_stationary() {
        let cfg = ScenarioConfig::load("finite").unwrap();
        let out = run_scenario(
            &cfg,
            &ScenarioOverrides::default(),
            NetTolerances::default(),
        )
        .unwrap();
        assert!(out.pass, "{:?}", out.checks);
        assert_eq!(out.table.rows.len(), DEFAULT_FINITE_ROWS);
    }
}
