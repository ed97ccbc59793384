//! Scenario configuration: TOML sources merged in order (builtin, file,
//! `--set` overrides), then validated against the model preconditions.

use std::f64::consts::FRAC_1_SQRT_2;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;

use zitter::evolve::Limit;
use zitter::grid::{make_k_grid, KGrid};
use zitter::params::{reduce_params, DimensionlessParams, PhysicalParams, RB87_MASS};
use zitter::spinor::GaussianSpec;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitChoice {
    Full,
    Dirac,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    DensityX,
    DensityK,
    Com,
    Populations,
    AnalyticOverlay,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateConfig {
    #[serde(default)]
    pub k0: f64,
    pub delta: f64,
    /// Internal amplitudes as [re, im] pairs; must be normalized.
    pub c1: Option<[f64; 2]>,
    pub c2: Option<[f64; 2]>,
    /// Alternative to c1/c2: (1, e^{iφ})/√2.
    pub relative_phase: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub v_z: f64,
    #[serde(default = "one")]
    pub c_theta: f64,
}

/// Laboratory parameters; `v1` and `v3` are in units of the recoil energy.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalConfig {
    #[serde(default = "rb87")]
    pub mass: f64,
    pub kappa: f64,
    pub theta: f64,
    #[serde(default)]
    pub v1: f64,
    #[serde(default)]
    pub v3: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    #[serde(default = "default_tau_max")]
    pub tau_max: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

impl Default for TimeConfig {
    fn default() -> Self {
        Self {
            tau_max: default_tau_max(),
            samples: default_samples(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_k_min")]
    pub k_min: f64,
    #[serde(default = "default_k_max")]
    pub k_max: f64,
    #[serde(default = "default_n")]
    pub n: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            k_min: default_k_min(),
            k_max: default_k_max(),
            n: default_n(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
    /// Position-density rows keep |x| ≤ x_range.
    #[serde(default = "default_x_range")]
    pub x_range: f64,
    /// Keep every `stride`-th coordinate node in density files.
    #[serde(default = "one_usize")]
    pub stride: usize,
    /// Keep every `tau_stride`-th time sample in density files.
    #[serde(default = "default_tau_stride")]
    pub tau_stride: usize,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: None,
            x_range: default_x_range(),
            stride: 1,
            tau_stride: default_tau_stride(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Variant {
    pub name: String,
    pub relative_phase: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareConfig {
    #[serde(default = "default_ladder")]
    pub deltas: Vec<f64>,
}

impl Default for CompareConfig {
    fn default() -> Self {
        Self { deltas: default_ladder() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default = "default_limit")]
    pub limit: LimitChoice,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
    pub state: StateConfig,
    pub model: Option<ModelConfig>,
    pub physical: Option<PhysicalConfig>,
    #[serde(default)]
    pub time: TimeConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub variants: Vec<Variant>,
    #[serde(default)]
    pub compare: CompareConfig,
}

fn one() -> f64 {
    1.0
}
fn one_usize() -> usize {
    1
}
fn rb87() -> f64 {
    RB87_MASS
}
fn default_tau_max() -> f64 {
    50.0
}
fn default_samples() -> usize {
    1001
}
fn default_k_min() -> f64 {
    -8.0
}
fn default_k_max() -> f64 {
    8.0
}
fn default_n() -> usize {
    4096
}
fn default_x_range() -> f64 {
    150.0
}
fn default_tau_stride() -> usize {
    10
}
fn default_limit() -> LimitChoice {
    LimitChoice::Full
}
fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Com, OutputKind::Populations]
}
fn default_ladder() -> Vec<f64> {
    vec![0.4, 0.2, 0.1, 0.05]
}

/// Where the configuration comes from.
#[derive(Debug, Default, Clone)]
pub struct Sources<'a> {
    pub scenario: Option<&'a str>,
    pub file: Option<&'a Path>,
    pub overrides: &'a [String],
    pub grid_n: Option<usize>,
}

fn parse_table(text: &str, origin: &str) -> Result<toml::Table, CliError> {
    toml::from_str(text).map_err(|e| CliError::Config(format!("{origin}: {e}")))
}

// recursive merge; tables merge key by key, anything else replaces
fn merge(base: &mut toml::Table, top: toml::Table) {
    for (k, v) in top {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(t)) => merge(b, t),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

fn parse_override_value(raw: &str) -> toml::Value {
    let doc = format!("v = {raw}");
    match toml::from_str::<toml::Table>(&doc) {
        Ok(mut t) => t.remove("v").unwrap_or_else(|| toml::Value::String(raw.to_string())),
        Err(_) => toml::Value::String(raw.to_string()),
    }
}

fn apply_override(table: &mut toml::Table, spec: &str) -> Result<(), CliError> {
    let (path, raw) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("--set {spec}: expected key=value")))?;
    let keys: Vec<&str> = path.trim().split('.').collect();
    if keys.iter().any(|k| k.is_empty()) {
        return Err(CliError::Config(format!("--set {spec}: empty key segment")));
    }
    let mut cur = table;
    for k in &keys[..keys.len() - 1] {
        let entry = cur
            .entry(k.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        cur = match entry {
            toml::Value::Table(t) => t,
            _ => return Err(CliError::Config(format!("--set {spec}: `{k}` is not a table"))),
        };
    }
    cur.insert(keys[keys.len() - 1].to_string(), parse_override_value(raw.trim()));
    Ok(())
}

pub fn load(sources: &Sources) -> Result<ScenarioConfig, CliError> {
    let mut table = toml::Table::new();
    if let Some(name) = sources.scenario {
        let text = crate::builtin::lookup(name).ok_or_else(|| {
            CliError::Config(format!(
                "unknown scenario `{name}`; available: {}",
                crate::builtin::names().join(", ")
            ))
        })?;
        merge(&mut table, parse_table(text, &format!("builtin {name}"))?);
    }
    if let Some(path) = sources.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        merge(&mut table, parse_table(&text, &path.display().to_string())?);
    }
    if sources.scenario.is_none() && sources.file.is_none() {
        return Err(CliError::Config("give --scenario NAME or --config PATH".into()));
    }
    for spec in sources.overrides {
        apply_override(&mut table, spec)?;
    }
    if let Some(n) = sources.grid_n {
        apply_override(&mut table, &format!("grid.n={n}"))?;
    }
    serde_path_to_error::deserialize(toml::Value::Table(table)).map_err(|e| {
        let path = e.path().to_string();
        CliError::Config(format!("config key `{path}`: {}", e.into_inner()))
    })
}

/// One fully validated run: a single initial state and a single limit set.
#[derive(Debug, Clone)]
pub struct Run {
    pub label: Option<String>,
    pub spec: GaussianSpec,
}

/// Configuration checked against the model preconditions.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub name: String,
    pub limits: Vec<Limit>,
    pub outputs: Vec<OutputKind>,
    pub runs: Vec<Run>,
    pub params: DimensionlessParams,
    pub physical: Option<PhysicalParams>,
    pub grid: KGrid,
    pub tau: Vec<f64>,
    pub output: OutputConfig,
    pub deltas: Vec<f64>,
}

fn model_err(module: &str, e: zitter::Error) -> CliError {
    CliError::Config(format!("{module}: {e}"))
}

fn from_phase(phi: f64) -> (Complex64, Complex64) {
    (Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::from_polar(FRAC_1_SQRT_2, phi))
}

// a variant phase replaces whatever the [state] block says about c1/c2
fn amplitudes(state: &StateConfig, variant_phase: Option<f64>) -> Result<(Complex64, Complex64), CliError> {
    if let Some(phi) = variant_phase {
        return Ok(from_phase(phi));
    }
    match (state.relative_phase, state.c1, state.c2) {
        (Some(phi), None, None) => Ok(from_phase(phi)),
        (None, Some(a), Some(b)) => Ok((Complex64::new(a[0], a[1]), Complex64::new(b[0], b[1]))),
        (None, None, None) => Ok(from_phase(0.0)),
        (Some(_), _, _) => Err(CliError::Config("state: give either relative_phase or c1/c2, not both".into())),
        _ => Err(CliError::Config("state: c1 and c2 must be given together".into())),
    }
}

impl ScenarioConfig {
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let params = match (&self.model, &self.physical) {
            (Some(m), None) => DimensionlessParams::new(m.v_z, m.c_theta).map_err(|e| model_err("model", e))?,
            (None, Some(_)) => {
                let phys = self.physical_params()?.expect("physical block present");
                reduce_params(&phys).map_err(|e| model_err("physical", e))?
            }
            (Some(_), Some(_)) => return Err(CliError::Config("give either [model] or [physical], not both".into())),
            (None, None) => return Err(CliError::Config("missing [model] or [physical] section".into())),
        };
        let grid = make_k_grid(self.grid.k_min, self.grid.k_max, self.grid.n).map_err(|e| model_err("grid", e))?;
        if !(self.time.tau_max >= 0.0) || !self.time.tau_max.is_finite() {
            return Err(CliError::Config(format!("time.tau_max: must be finite and non-negative, got {}", self.time.tau_max)));
        }
        if self.time.samples < 2 {
            return Err(CliError::Config("time.samples: need at least 2".into()));
        }
        if self.output.stride == 0 || self.output.tau_stride == 0 {
            return Err(CliError::Config("output.stride and output.tau_stride must be positive".into()));
        }
        if !(self.output.x_range > 0.0) {
            return Err(CliError::Config("output.x_range: must be positive".into()));
        }
        let n = self.time.samples;
        let tau = (0..n).map(|i| self.time.tau_max * i as f64 / (n - 1) as f64).collect();
        let mut runs = Vec::new();
        if self.variants.is_empty() {
            runs.push(self.run(None, None)?);
        } else {
            let mut seen = std::collections::BTreeSet::new();
            for v in &self.variants {
                if v.name.is_empty() || v.name.contains(['/', '\\']) || !seen.insert(v.name.clone()) {
                    return Err(CliError::Config(format!("variants: invalid or duplicate name `{}`", v.name)));
                }
                runs.push(self.run(Some(v.name.clone()), Some(v.relative_phase))?);
            }
        }
        let limits = match self.limit {
            LimitChoice::Full => vec![Limit::Full],
            LimitChoice::Dirac => vec![Limit::Dirac],
            LimitChoice::Both => vec![Limit::Full, Limit::Dirac],
        };
        if self.compare.deltas.iter().any(|d| !(*d > 0.0)) {
            return Err(CliError::Config("compare.deltas: widths must be positive".into()));
        }
        Ok(Resolved {
            name: self.name.clone(),
            limits,
            outputs: self.outputs.clone(),
            runs,
            params,
            physical: self.physical_params()?,
            grid,
            tau,
            output: self.output.clone(),
            deltas: self.compare.deltas.clone(),
        })
    }

    fn run(&self, label: Option<String>, phase: Option<f64>) -> Result<Run, CliError> {
        let (c1, c2) = amplitudes(&self.state, phase)?;
        let spec = GaussianSpec::new(self.state.k0, self.state.delta, c1, c2).map_err(|e| model_err("state", e))?;
        Ok(Run { label, spec })
    }

    fn physical_params(&self) -> Result<Option<PhysicalParams>, CliError> {
        self.physical
            .as_ref()
            .map(|p| {
                let er = zitter::params::HBAR.powi(2) * p.kappa * p.kappa / (2.0 * p.mass);
                PhysicalParams::new(p.mass, p.kappa, p.theta, p.v1 * er, p.v3 * er).map_err(|e| model_err("physical", e))
            })
            .transpose()
    }
}
