use hb_core::audits::{jump_profile, AuditConfig, ClassicalTheorem, FactorizedRegion, PhragmenVariant};
use hb_core::boundary::{geometric_gaps, geometric_radii, Approach, BoundaryPoint, FitKind, Levels};
use hb_core::exemplars::{named_field, wolf_assemble, CatalogName, WolfParams, FIELD_NAMES};
use hb_core::semigroup::{basis, LambdaRule, Mode, OperatorModel, TrajectoryModel};
use hb_core::{Complex64, HarmonicField, Region, Regularity};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub const SCHEMA: &str = "hb-lab/1";

/// Field names resolved by the runner on top of the core exemplar names.
pub const RUNNER_FIELD_NAMES: &[&str] = &["strip_one", "strip_height", "wolf", "wolf:<epsilon>", "abs:<field>", "jump:<field>", "scaled:<c>:<field>"];

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("config serialization error: {0}")]
    Serialize(#[from] toml::ser::Error),
    #[error("unsupported schema '{0}', expected '{SCHEMA}'")]
    Schema(String),
    #[error("task {index} ({kind}): {message}")]
    Resolution { index: usize, kind: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

/// One experiment: a list of analyzer, audit and probe tasks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema: String,
    pub id: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub audit: AuditConfig,
    #[serde(default, rename = "task")]
    pub tasks: Vec<Task>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: ExperimentConfig = toml::from_str(text)?;
        if cfg.schema != SCHEMA {
            return Err(ConfigError::Schema(cfg.schema));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text)
    }

    pub fn emit(&self) -> Result<String, ConfigError> {
        Ok(toml::to_string(self)?)
    }

    /// Resolves every name and checks every parameter without running anything.
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (index, task) in self.tasks.iter().enumerate() {
            task.validate().map_err(|message| ConfigError::Resolution { index, kind: task.kind().into(), message })?;
        }
        Ok(())
    }
}

fn default_samples() -> usize {
    512
}

fn default_terms() -> usize {
    200
}

fn default_limit_tol() -> f64 {
    1e-4
}

fn default_p() -> f64 {
    2.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LevelsSpec {
    /// Circles `|z| = r` with radii geometric from `r_lo` to `r_hi`.
    Circles { r_lo: f64, r_hi: f64, count: usize },
    /// Lines `Im z = β` over `[x_lo, x_hi]` with heights geometric from `beta_hi` down to `beta_lo`.
    Lines { beta_hi: f64, beta_lo: f64, count: usize, x_lo: f64, x_hi: f64 },
}

impl Default for LevelsSpec {
    fn default() -> Self {
        LevelsSpec::Circles { r_lo: 0.9, r_hi: 0.999, count: 10 }
    }
}

impl LevelsSpec {
    pub fn levels(&self) -> Result<Levels, String> {
        match *self {
            LevelsSpec::Circles { r_lo, r_hi, count } => {
                if !(0.0 < r_lo && r_lo < r_hi && r_hi < 1.0) || count < 2 {
                    return Err(format!("need 0 < r_lo < r_hi < 1 and count >= 2, got {r_lo}, {r_hi}, {count}"));
                }
                Ok(Levels::circles(geometric_radii(r_lo, r_hi, count)))
            }
            LevelsSpec::Lines { beta_hi, beta_lo, count, x_lo, x_hi } => {
                if !(0.0 < beta_lo && beta_lo < beta_hi) || count < 2 || !(x_lo < x_hi) {
                    return Err(format!("need 0 < beta_lo < beta_hi, x_lo < x_hi and count >= 2, got {beta_lo}, {beta_hi}, {count}"));
                }
                Ok(Levels::hlines(geometric_gaps(beta_hi, beta_lo, count), x_lo, x_hi))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorSpec {
    /// `λ_k` from a rule in `k`, for `k = 1..=n`.
    Rule {
        rule: String,
        #[serde(default = "default_terms")]
        n: usize,
        #[serde(default = "default_mode")]
        mode: Mode,
    },
    /// Explicit diagonal entries given as `[re, im]` pairs.
    Diagonal {
        values: Vec<Complex64>,
        #[serde(default = "default_mode")]
        mode: Mode,
    },
    /// Dense matrix given row by row as `[re, im]` pairs.
    Matrix {
        rows: Vec<Vec<Complex64>>,
        #[serde(default = "default_mode")]
        mode: Mode,
    },
}

fn default_mode() -> Mode {
    Mode::ContinuousGenerator
}

impl OperatorSpec {
    pub fn build(&self) -> Result<OperatorModel, String> {
        match self {
            OperatorSpec::Rule { rule, n, mode } => {
                let r = LambdaRule::parse(rule).map_err(|e| e.to_string())?;
                OperatorModel::from_rule(&r, *n, *mode).map_err(|e| e.to_string())
            }
            OperatorSpec::Diagonal { values, mode } => OperatorModel::diagonal(values.clone(), *mode).map_err(|e| e.to_string()),
            OperatorSpec::Matrix { rows, mode } => {
                let n = rows.len();
                if n == 0 || rows.iter().any(|r| r.len() != n) {
                    return Err(format!("matrix must be square and nonempty, got {n} rows"));
                }
                let a = hb_core::semigroup::DMatrix::from_fn(n, n, |i, j| rows[i][j]);
                OperatorModel::matrix(a, *mode).map_err(|e| e.to_string())
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            OperatorSpec::Rule { rule, n, .. } => format!("rule '{rule}' n={n}"),
            OperatorSpec::Diagonal { values, .. } => format!("diagonal n={}", values.len()),
            OperatorSpec::Matrix { rows, .. } => format!("matrix {0}x{0}", rows.len()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum VectorSpec {
    /// `e_index` (1-based).
    Basis { index: usize },
    /// `x_k = k^{−exponent}`.
    Power { exponent: f64 },
    /// Explicit `[re, im]` entries.
    Values { values: Vec<Complex64> },
    /// Seeded random vector with independent entries uniform in the unit square, scaled by `1/k`.
    Random,
}

impl VectorSpec {
    pub fn build(&self, dim: usize, seed: u64) -> Result<Vec<Complex64>, String> {
        match self {
            VectorSpec::Basis { index } => {
                if *index == 0 || *index > dim {
                    return Err(format!("basis index {index} outside 1..={dim}"));
                }
                Ok(basis(dim, *index))
            }
            VectorSpec::Power { exponent } => Ok((1..=dim).map(|k| Complex64::new((k as f64).powf(-exponent), 0.0)).collect()),
            VectorSpec::Values { values } => {
                if values.len() != dim {
                    return Err(format!("vector has {} entries, operator dimension is {dim}", values.len()));
                }
                Ok(values.clone())
            }
            VectorSpec::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok((1..=dim)
                    .map(|k| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) / k as f64)
                    .collect())
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            VectorSpec::Basis { index } => format!("e{index}"),
            VectorSpec::Power { exponent } => format!("k^-{exponent}"),
            VectorSpec::Values { .. } => "explicit".into(),
            VectorSpec::Random => "random".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TrajectorySpec {
    /// `F(t) = a·e^{iωt}`; its generator is multiplication by `iω`.
    ScalarWave {
        omega: f64,
        #[serde(default = "unit")]
        amplitude: Complex64,
    },
    /// `F(t) = e^{tA}x` for a diagonal generator on the imaginary axis.
    GroupOrbit { operator: OperatorSpec, vector: VectorSpec },
}

fn unit() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

impl TrajectorySpec {
    /// The trajectory and the generator it is an orbit of.
    pub fn build(&self, seed: u64) -> Result<(TrajectoryModel, OperatorModel), String> {
        match self {
            TrajectorySpec::ScalarWave { omega, amplitude } => {
                let op = OperatorModel::diagonal(vec![Complex64::new(0.0, *omega)], Mode::ContinuousGenerator).map_err(|e| e.to_string())?;
                Ok((TrajectoryModel::scalar_wave(*amplitude, *omega), op))
            }
            TrajectorySpec::GroupOrbit { operator, vector } => {
                let op = operator.build()?;
                let x = vector.build(op.dim(), seed)?;
                let f = TrajectoryModel::group_orbit(&op, &x).map_err(|e| e.to_string())?;
                Ok((f, op))
            }
        }
    }

    /// Closed form `a/(λ − iω)` for scalar waves.
    pub fn closed_form(&self, lambda: Complex64) -> Option<Complex64> {
        match self {
            TrajectorySpec::ScalarWave { omega, amplitude } => Some(amplitude / (lambda - Complex64::new(0.0, *omega))),
            TrajectorySpec::GroupOrbit { .. } => None,
        }
    }
}

fn default_strip_one() -> String {
    "strip_one".into()
}

/// One unit of work. Fields are resolved by name; see [`resolve_field`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Task {
    GrowthFit {
        field: String,
        #[serde(default)]
        levels: LevelsSpec,
        #[serde(default = "power_fit")]
        fit: FitKind,
        #[serde(default = "default_samples")]
        samples: usize,
    },
    DirectionalLimit {
        field: String,
        base: BoundaryPoint,
        #[serde(default = "radial")]
        approach: Approach,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        schedule: Option<Vec<f64>>,
        #[serde(default = "default_limit_tol")]
        tol: f64,
    },
    DomarTransfer {
        field: String,
        m: f64,
        c: f64,
        #[serde(default = "domar_radii")]
        radii: usize,
        #[serde(default = "domar_angles")]
        angles: usize,
        #[serde(default = "domar_r_min")]
        r_min: f64,
    },
    AuditClassical {
        field: String,
        theorem: ClassicalTheorem,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        theta: Option<f64>,
    },
    AuditFactorized {
        u: String,
        f: String,
        g: String,
        region: FactorizedRegion,
        theta: f64,
        m: f64,
    },
    AuditEdgeOfWedge {
        catalog: CatalogName,
        theta: f64,
        m: f64,
        #[serde(default = "default_strip_one")]
        g: String,
    },
    AuditPhragmen {
        field: String,
        l: f64,
        m: f64,
        variant: PhragmenVariant,
    },
    BoundedCheck {
        operator: OperatorSpec,
        schedule: Vec<f64>,
    },
    StabilityProbe {
        operator: OperatorSpec,
        vector: VectorSpec,
        schedule: Vec<f64>,
        #[serde(default)]
        override_bound: bool,
    },
    CriterionProbe {
        operator: OperatorSpec,
        vector: VectorSpec,
        #[serde(default = "default_p")]
        p: f64,
        frequencies: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        approach: Option<Vec<f64>>,
    },
    FractionalResolve {
        operator: OperatorSpec,
        vector: VectorSpec,
        frequency: f64,
        gamma: f64,
    },
    CarlemanTransform {
        trajectory: TrajectorySpec,
        lambdas: Vec<Complex64>,
    },
    CarlemanIdentity {
        trajectory: TrajectorySpec,
        lambda: Complex64,
        mu: Complex64,
    },
    CarlemanScan {
        trajectory: TrajectorySpec,
        taus: Vec<f64>,
        sigma: f64,
    },
}

fn power_fit() -> FitKind {
    FitKind::Power
}

fn radial() -> Approach {
    Approach::Radial
}

fn domar_radii() -> usize {
    48
}

fn domar_angles() -> usize {
    128
}

fn domar_r_min() -> f64 {
    1e-3
}

/// Task kinds accepted in `[[task]]` tables.
pub const TASK_KINDS: &[&str] = &[
    "growth_fit",
    "directional_limit",
    "domar_transfer",
    "audit_classical",
    "audit_factorized",
    "audit_edge_of_wedge",
    "audit_phragmen",
    "bounded_check",
    "stability_probe",
    "criterion_probe",
    "fractional_resolve",
    "carleman_transform",
    "carleman_identity",
    "carleman_scan",
];

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::GrowthFit { .. } => "growth_fit",
            Task::DirectionalLimit { .. } => "directional_limit",
            Task::DomarTransfer { .. } => "domar_transfer",
            Task::AuditClassical { .. } => "audit_classical",
            Task::AuditFactorized { .. } => "audit_factorized",
            Task::AuditEdgeOfWedge { .. } => "audit_edge_of_wedge",
            Task::AuditPhragmen { .. } => "audit_phragmen",
            Task::BoundedCheck { .. } => "bounded_check",
            Task::StabilityProbe { .. } => "stability_probe",
            Task::CriterionProbe { .. } => "criterion_probe",
            Task::FractionalResolve { .. } => "fractional_resolve",
            Task::CarlemanTransform { .. } => "carleman_transform",
            Task::CarlemanIdentity { .. } => "carleman_identity",
            Task::CarlemanScan { .. } => "carleman_scan",
        }
    }

    /// Short human-readable subject.
    pub fn label(&self) -> String {
        match self {
            Task::GrowthFit { field, .. }
            | Task::DirectionalLimit { field, .. }
            | Task::DomarTransfer { field, .. }
            | Task::AuditPhragmen { field, .. } => field.clone(),
            Task::AuditClassical { field, theorem, .. } => format!("{field} {theorem:?}").to_lowercase(),
            Task::AuditFactorized { u, .. } => u.clone(),
            Task::AuditEdgeOfWedge { catalog, .. } => catalog.as_str().into(),
            Task::BoundedCheck { operator, .. } => operator.label(),
            Task::StabilityProbe { operator, vector, .. }
            | Task::CriterionProbe { operator, vector, .. }
            | Task::FractionalResolve { operator, vector, .. } => format!("{} x={}", operator.label(), vector.label()),
            Task::CarlemanTransform { trajectory, .. } | Task::CarlemanIdentity { trajectory, .. } | Task::CarlemanScan { trajectory, .. } => {
                match trajectory {
                    TrajectorySpec::ScalarWave { omega, .. } => format!("scalar wave omega={omega}"),
                    TrajectorySpec::GroupOrbit { operator, .. } => format!("orbit of {}", operator.label()),
                }
            }
        }
    }

    fn validate(&self) -> Result<(), String> {
        let check_name = |name: &str| validate_field_name(name);
        match self {
            Task::GrowthFit { field, levels, samples, .. } => {
                check_name(field)?;
                levels.levels()?;
                if *samples < 64 {
                    return Err(format!("samples must be >= 64, got {samples}"));
                }
            }
            Task::DirectionalLimit { field, schedule, tol, .. } => {
                check_name(field)?;
                if let Some(s) = schedule {
                    if s.len() < 3 || !s.windows(2).all(|w| w[1] < w[0]) || s.iter().any(|d| *d <= 0.0) {
                        return Err("schedule needs >= 3 positive distances decreasing strictly".into());
                    }
                }
                if !(*tol > 0.0) {
                    return Err(format!("tol must be positive, got {tol}"));
                }
            }
            Task::DomarTransfer { field, m, c, .. } => {
                check_name(field)?;
                if !(*m > 0.0 && *c > 0.0) {
                    return Err(format!("need m > 0 and C > 0, got m={m}, C={c}"));
                }
            }
            Task::AuditClassical { field, .. } | Task::AuditPhragmen { field, .. } => check_name(field)?,
            Task::AuditFactorized { u, f, g, .. } => {
                check_name(u)?;
                check_name(f)?;
                check_name(g)?;
            }
            Task::AuditEdgeOfWedge { g, .. } => check_name(g)?,
            Task::BoundedCheck { operator, schedule } => {
                operator.build()?;
                check_schedule(schedule)?;
            }
            Task::StabilityProbe { operator, vector, schedule, .. } => {
                let op = operator.build()?;
                vector.build(op.dim(), 0)?;
                check_schedule(schedule)?;
            }
            Task::CriterionProbe { operator, vector, p, frequencies, approach } => {
                let op = operator.build()?;
                vector.build(op.dim(), 0)?;
                hb_core::semigroup::FourierType::new(*p).map_err(|e| e.to_string())?;
                if frequencies.is_empty() {
                    return Err("criterion probe needs at least one frequency".into());
                }
                if let Some(a) = approach {
                    if a.len() < 2 || !a.windows(2).all(|w| w[1] < w[0]) || a.iter().any(|s| *s <= 0.0) {
                        return Err("approach schedule must decrease strictly to 0".into());
                    }
                }
            }
            Task::FractionalResolve { operator, vector, gamma, .. } => {
                let op = operator.build()?;
                vector.build(op.dim(), 0)?;
                if !(*gamma > 0.0) {
                    return Err(format!("gamma must be positive, got {gamma}"));
                }
            }
            Task::CarlemanTransform { trajectory, lambdas } => {
                trajectory.build(0)?;
                if lambdas.iter().any(|l| l.re == 0.0) {
                    return Err("transform points must lie off the imaginary axis".into());
                }
            }
            Task::CarlemanIdentity { trajectory, lambda, mu } => {
                trajectory.build(0)?;
                if !(lambda.re > 0.0) || mu.re == 0.0 {
                    return Err("identity check needs Re lambda > 0 and Re mu != 0".into());
                }
            }
            Task::CarlemanScan { trajectory, taus, sigma } => {
                trajectory.build(0)?;
                if taus.is_empty() || !(*sigma > 0.0) {
                    return Err("scan needs frequencies and a positive offset".into());
                }
            }
        }
        Ok(())
    }
}

fn check_schedule(s: &[f64]) -> Result<(), String> {
    if s.is_empty() || s.iter().any(|t| !(*t >= 0.0 && t.is_finite())) {
        return Err("schedule needs finite nonnegative times".into());
    }
    Ok(())
}

fn wolf_params(name: &str) -> Option<Result<WolfParams, String>> {
    let rest = name.strip_prefix("wolf")?;
    let params = if rest.is_empty() {
        Ok(WolfParams::default())
    } else {
        match rest.strip_prefix(':').map(str::parse::<f64>) {
            Some(Ok(eps)) => Ok(WolfParams::default().with_epsilon(eps)),
            _ => Err(format!("bad wolf field name '{name}'")),
        }
    };
    Some(params.and_then(|p| p.validate().map(|_| p).map_err(|e| e.to_string())))
}

/// Checks a field name without building expensive constructions.
pub fn validate_field_name(name: &str) -> Result<(), String> {
    if let Some(p) = wolf_params(name) {
        return p.map(|_| ());
    }
    if let Some(inner) = name.strip_prefix("abs:").or_else(|| name.strip_prefix("jump:")) {
        return validate_field_name(inner);
    }
    if let Some(rest) = name.strip_prefix("scaled:") {
        let (c, inner) = rest.split_once(':').ok_or_else(|| format!("bad scaled field name '{name}'"))?;
        c.parse::<f64>().map_err(|_| format!("bad scale in '{name}'"))?;
        return validate_field_name(inner);
    }
    match name {
        "strip_one" | "strip_height" => Ok(()),
        _ => named_field(name).map(|_| ()).map_err(|e| e.to_string()),
    }
}

/// Resolves a field name: core exemplar names, the runner additions in
/// [`RUNNER_FIELD_NAMES`], and the `abs:`, `jump:` and `scaled:` wrappers.
pub fn resolve_field(name: &str) -> Result<HarmonicField, String> {
    if let Some(p) = wolf_params(name) {
        let w = wolf_assemble(&p?).map_err(|e| e.to_string())?;
        return Ok(Arc::new(w).w_field());
    }
    if let Some(inner) = name.strip_prefix("abs:") {
        return Ok(resolve_field(inner)?.abs());
    }
    if let Some(inner) = name.strip_prefix("jump:") {
        return Ok(jump_profile(&resolve_field(inner)?));
    }
    if let Some(rest) = name.strip_prefix("scaled:") {
        let (c, inner) = rest.split_once(':').ok_or_else(|| format!("bad scaled field name '{name}'"))?;
        let c: f64 = c.parse().map_err(|_| format!("bad scale in '{name}'"))?;
        return Ok(resolve_field(inner)?.scaled(c));
    }
    match name {
        "strip_one" => Ok(HarmonicField::constant(Region::STRIP_BOX, 1.0)),
        "strip_height" => Ok(HarmonicField::real("strip_height", Region::STRIP_BOX, Regularity::Harmonic, |z: Complex64| z.im)),
        _ => named_field(name).map_err(|e| e.to_string()),
    }
}

/// Every field name the runner accepts, for `--list`.
pub fn field_names() -> Vec<&'static str> {
    FIELD_NAMES.iter().chain(RUNNER_FIELD_NAMES).copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
schema = "hb-lab/1"
id = "sample"
seed = 3

[[task]]
kind = "growth_fit"
field = "u0"

[[task]]
kind = "criterion_probe"
operator = { kind = "rule", rule = "-1/k + ik", n = 50 }
vector = { kind = "basis", index = 5 }
frequencies = [5.0]

[[task]]
kind = "directional_limit"
field = "u0"
base = { kind = "circle", phi = 1.0 }
approach = { sector = { kind = "stolz", phi = 1.0, theta = 0.7 } }

[[task]]
kind = "carleman_identity"
trajectory = { kind = "scalar_wave", omega = 1 }
lambda = [1.0, 0.0]
mu = [2.0, 0.0]
"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = ExperimentConfig::parse(SAMPLE).unwrap();
        assert_eq!(cfg.tasks.len(), 4);
        assert_eq!(cfg.audit, AuditConfig::default());
        cfg.validate().unwrap();
        let again = ExperimentConfig::parse(&cfg.emit().unwrap()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(ExperimentConfig::parse("schema = \"hb-lab/2\"\nid = \"x\""), Err(ConfigError::Schema(_))));
        let unknown = SAMPLE.replace("field = \"u0\"\n\n[[task]]\nkind = \"criterion", "field = \"u9\"\n\n[[task]]\nkind = \"criterion");
        let cfg = ExperimentConfig::parse(&unknown).unwrap();
        assert!(matches!(cfg.validate(), Err(ConfigError::Resolution { index: 0, .. })));
        assert!(ExperimentConfig::parse(&SAMPLE.replace("seed = 3", "seed = 3\nextra = 1")).is_err());
        let bad_p = SAMPLE.replace("frequencies = [5.0]", "frequencies = [5.0]\np = 1.0");
        assert!(ExperimentConfig::parse(&bad_p).unwrap().validate().is_err());
    }

    #[test]
    fn field_names_resolve() {
        for name in ["u0", "abs:u0", "jump:catalog:rational_pole", "scaled:2:re_inv", "strip_height", "power:1.5"] {
            resolve_field(name).unwrap();
        }
        assert!(validate_field_name("wolf:2").is_ok());
        assert!(validate_field_name("wolf:x").is_err());
        assert!(validate_field_name("scaled:2").is_err());
    }

    #[test]
    fn random_vectors_follow_the_seed() {
        let a = VectorSpec::Random.build(8, 11).unwrap();
        assert_eq!(a, VectorSpec::Random.build(8, 11).unwrap());
        assert_ne!(a, VectorSpec::Random.build(8, 12).unwrap());
    }
}
