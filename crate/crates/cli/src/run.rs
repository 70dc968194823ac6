use crate::config::{resolve_field, ConfigError, ExperimentConfig, Task, SCHEMA};
use hb_core::audits::{
    audit_classical, audit_edge_of_wedge, audit_factorized, audit_phragmen, jump_profile, AuditConfig, AuditVerdict, Consistency,
    EdgeOfWedgeReport,
};
use hb_core::boundary::{directional_limit, domar_transfer_check, growth_fit, DomarGrid, DomarReport, GrowthFit, LimitEstimate};
use hb_core::exemplars::catalog_field;
use hb_core::semigroup::{
    bounded_check, carleman_identity_check, carleman_singular_scan, carleman_transform, criterion_probe, default_approach,
    fractional_resolve, stability_probe, BoundedReport, CarlemanConfig, CarlemanValue, CriterionReport, FourierType,
    IdentityResidual, SingularScan, StabilityReport,
};
use hb_core::Complex64;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarlemanRow {
    #[serde(flatten)]
    pub value: CarlemanValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<f64>,
}

/// Result payload of one task.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TaskOutput {
    Growth(GrowthFit),
    Limit(LimitEstimate),
    Domar(DomarReport),
    Audit(AuditVerdict),
    EdgeOfWedge(EdgeOfWedgeReport),
    Bounded(BoundedReport),
    Stability(StabilityReport),
    Criterion(CriterionReport),
    /// A preimage on the truncated model only; `scope` says so in every report.
    Fractional { values: Vec<Complex64>, norm: f64, scope: String },
    Carleman { rows: Vec<CarlemanRow> },
    Identity(IdentityResidual),
    Scan(SingularScan),
    Error { message: String },
}

impl TaskOutput {
    pub fn verdict(&self) -> Option<&AuditVerdict> {
        match self {
            TaskOutput::Audit(v) => Some(v),
            TaskOutput::EdgeOfWedge(r) => Some(&r.verdict),
            _ => None,
        }
    }

    /// One-word status for summaries.
    pub fn status(&self) -> String {
        if let Some(v) = self.verdict() {
            return match v.consistency {
                Consistency::Consistent => "consistent",
                Consistency::SharpnessWitness => "sharpness_witness",
                Consistency::Contradiction => "CONTRADICTION",
            }
            .into();
        }
        match self {
            TaskOutput::Error { .. } => "error".into(),
            TaskOutput::Limit(e) => if e.converged { "converged" } else { "not_converged" }.into(),
            TaskOutput::Domar(d) => if d.pass { "pass" } else { "fail" }.into(),
            TaskOutput::Bounded(b) => if b.bounded { "bounded" } else { "unbounded" }.into(),
            TaskOutput::Stability(s) => format!("{:?}", s.trend).to_lowercase(),
            TaskOutput::Criterion(c) => if c.member { "member" } else { "blow_up" }.into(),
            TaskOutput::Fractional { .. } => "range_witness_truncated".into(),
            TaskOutput::Identity(r) => if r.within { "within_tolerance" } else { "residual_too_large" }.into(),
            _ => "ok".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskRecord {
    pub index: usize,
    pub kind: String,
    pub label: String,
    pub status: String,
    pub output: TaskOutput,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OverallStatus {
    Ok,
    /// At least one task failed to run; the configuration asked for something invalid.
    Error,
    /// At least one audit found its hypotheses satisfied and its conclusion violated.
    Contradiction,
}

impl OverallStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            OverallStatus::Ok => 0,
            OverallStatus::Contradiction => 1,
            OverallStatus::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub schema: String,
    pub tool_version: String,
    pub config: ExperimentConfig,
    pub duration_seconds: f64,
    pub records: Vec<TaskRecord>,
    pub status: OverallStatus,
}

impl ReportEnvelope {
    /// The part of the report fixed by the configuration: everything except timing.
    pub fn numeric_payload(&self) -> serde_json::Value {
        serde_json::json!({ "records": self.records, "status": self.status })
    }

    pub fn contradictions(&self) -> Vec<&TaskRecord> {
        self.records
            .iter()
            .filter(|r| r.output.verdict().is_some_and(|v| v.consistency == Consistency::Contradiction))
            .collect()
    }
}

fn task_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn run_task(task: &Task, audit: &AuditConfig, seed: u64) -> Result<TaskOutput, String> {
    let e = |err: hb_core::LabError| err.to_string();
    let carleman = CarlemanConfig::default();
    Ok(match task {
        Task::GrowthFit { field, levels, fit, samples } => {
            let u = resolve_field(field)?;
            TaskOutput::Growth(growth_fit(&u, &levels.levels()?, *fit, *samples).map_err(e)?)
        }
        Task::DirectionalLimit { field, base, approach, schedule, tol } => {
            let u = resolve_field(field)?;
            let sched = schedule.clone().unwrap_or_else(|| audit.limit_schedule.clone());
            TaskOutput::Limit(directional_limit(&u, *base, *approach, &sched, *tol).map_err(e)?)
        }
        Task::DomarTransfer { field, m, c, radii, angles, r_min } => {
            let u = resolve_field(field)?;
            let grid = DomarGrid { radii: *radii, angles: *angles, r_min: *r_min };
            TaskOutput::Domar(domar_transfer_check(&u, *m, *c, &grid).map_err(e)?)
        }
        Task::AuditClassical { field, theorem, theta } => {
            let u = resolve_field(field)?;
            TaskOutput::Audit(audit_classical(&u, *theorem, *theta, audit).map_err(e)?)
        }
        Task::AuditFactorized { u, f, g, region, theta, m } => {
            let (u, f, g) = (resolve_field(u)?, resolve_field(f)?, resolve_field(g)?);
            TaskOutput::Audit(audit_factorized(&u, &f, &g, *region, *theta, *m, audit).map_err(e)?)
        }
        Task::AuditEdgeOfWedge { catalog, theta, m, g } => {
            let u = catalog_field(*catalog);
            let f = jump_profile(&u);
            let g = resolve_field(g)?;
            let name = *catalog;
            let exact = move |x: f64| name.continuation(x).unwrap_or_default();
            let closed: Option<&(dyn Fn(f64) -> Complex64 + Sync)> = if name.continuation(0.0).is_some() { Some(&exact) } else { None };
            TaskOutput::EdgeOfWedge(audit_edge_of_wedge(&u, &f, &g, *theta, *m, closed, audit).map_err(e)?)
        }
        Task::AuditPhragmen { field, l, m, variant } => {
            let u = resolve_field(field)?;
            TaskOutput::Audit(audit_phragmen(&u, *l, *m, *variant, audit).map_err(e)?)
        }
        Task::BoundedCheck { operator, schedule } => TaskOutput::Bounded(bounded_check(&operator.build()?, schedule).map_err(e)?),
        Task::StabilityProbe { operator, vector, schedule, override_bound } => {
            let op = operator.build()?;
            let x = vector.build(op.dim(), seed)?;
            TaskOutput::Stability(stability_probe(&op, &x, schedule, *override_bound).map_err(e)?)
        }
        Task::CriterionProbe { operator, vector, p, frequencies, approach } => {
            let op = operator.build()?;
            let x = vector.build(op.dim(), seed)?;
            let ft = FourierType::new(*p).map_err(e)?;
            let approach = approach.clone().unwrap_or_else(default_approach);
            TaskOutput::Criterion(criterion_probe(&op, &x, ft, frequencies, &approach).map_err(e)?)
        }
        Task::FractionalResolve { operator, vector, frequency, gamma } => {
            let op = operator.build()?;
            let x = vector.build(op.dim(), seed)?;
            let values = fractional_resolve(&op, *frequency, *gamma, &x).map_err(e)?;
            let norm = hb_core::semigroup::norm(&values);
            TaskOutput::Fractional { values, norm, scope: "range witness (truncated)".into() }
        }
        Task::CarlemanTransform { trajectory, lambdas } => {
            let (f, _) = trajectory.build(seed)?;
            let rows = lambdas
                .iter()
                .map(|&lambda| {
                    let value = carleman_transform(&f, lambda, &carleman).map_err(e)?;
                    let closed_form = trajectory.closed_form(lambda);
                    let mismatch = closed_form.map(|c| (value.value[0] - c).norm());
                    Ok(CarlemanRow { value, closed_form, mismatch })
                })
                .collect::<Result<Vec<_>, String>>()?;
            TaskOutput::Carleman { rows }
        }
        Task::CarlemanIdentity { trajectory, lambda, mu } => {
            let (f, op) = trajectory.build(seed)?;
            TaskOutput::Identity(carleman_identity_check(&op, &f, *lambda, *mu, &carleman).map_err(e)?)
        }
        Task::CarlemanScan { trajectory, taus, sigma } => {
            let (f, _) = trajectory.build(seed)?;
            TaskOutput::Scan(carleman_singular_scan(&f, taus, *sigma, &carleman).map_err(e)?)
        }
    })
}

/// Validates the configuration, runs every task in order and assembles the
/// envelope. Resolution failures abort before any task runs; failures while
/// running a task are recorded in that task's record.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ReportEnvelope, ConfigError> {
    config.validate()?;
    let start = Instant::now();
    let records: Vec<TaskRecord> = config
        .tasks
        .iter()
        .enumerate()
        .map(|(index, task)| {
            let output = run_task(task, &config.audit, task_seed(config.seed, index)).unwrap_or_else(|message| TaskOutput::Error { message });
            TaskRecord { index, kind: task.kind().into(), label: task.label(), status: output.status(), output }
        })
        .collect();
    let contradiction = records.iter().any(|r| r.output.verdict().is_some_and(|v| v.consistency == Consistency::Contradiction));
    let failed = records.iter().any(|r| matches!(r.output, TaskOutput::Error { .. }));
    let status = if contradiction {
        OverallStatus::Contradiction
    } else if failed {
        OverallStatus::Error
    } else {
        OverallStatus::Ok
    };
    Ok(ReportEnvelope {
        schema: SCHEMA.into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        config: config.clone(),
        duration_seconds: start.elapsed().as_secs_f64(),
        records,
        status,
    })
}
