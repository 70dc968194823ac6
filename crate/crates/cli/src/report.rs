use crate::config::{Format, LevelsSpec, Task};
use crate::run::{ReportEnvelope, TaskOutput};
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("I/O error at {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

struct Table {
    name: &'static str,
    header: &'static [&'static str],
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(name: &'static str, header: &'static [&'static str]) -> Self {
        Table { name, header, rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn tables(env: &ReportEnvelope) -> Vec<Table> {
    let mut summary = Table::new("summary", &["task", "kind", "label", "status"]);
    // `r` holds the radius for circles and the height `β` for lines
    let mut growth = Table::new("growth", &["r", "M_r", "log_inv_gap", "log_M_r", "task"]);
    let mut limits = Table::new("limits", &["distance", "value", "task", "limit", "converged"]);
    let mut audits = Table::new("audits", &["task", "theorem", "item", "status", "note", "consistency"]);
    let mut criterion = Table::new("criterion", &["beta", "alpha", "value", "slope", "task"]);
    let mut evolution = Table::new("evolution", &["t", "norm", "task", "probe"]);
    let mut carleman = Table::new("carleman", &["lambda_re", "lambda_im", "norm", "error", "mismatch", "task"]);
    for r in &env.records {
        let task = r.index.to_string();
        summary.push(vec![task.clone(), r.kind.clone(), r.label.clone(), r.status.clone()]);
        if let Some(v) = r.output.verdict() {
            let theorem = format!("{:?}", v.theorem);
            let consistency = format!("{:?}", v.consistency);
            for h in &v.hypotheses {
                audits.push(vec![task.clone(), theorem.clone(), h.name.clone(), h.status.to_string(), h.note.clone().unwrap_or_default(), consistency.clone()]);
            }
            audits.push(vec![task.clone(), theorem, "conclusion".into(), v.conclusion.status.to_string(), String::new(), consistency]);
        }
        match &r.output {
            TaskOutput::Growth(fit) => {
                let on_lines = matches!(env.config.tasks.get(r.index), Some(Task::GrowthFit { levels: LevelsSpec::Lines { .. }, .. }));
                for (gap, log_sup) in fit.gaps.iter().zip(&fit.log_sups) {
                    let coord = if on_lines { *gap } else { 1.0 - gap };
                    growth.push(vec![num(coord), num(log_sup.exp()), num(-gap.ln()), num(*log_sup), task.clone()]);
                }
            }
            TaskOutput::Limit(e) => {
                for (d, v) in e.distances.iter().zip(&e.values) {
                    limits.push(vec![num(*d), num(*v), task.clone(), num(e.limit), e.converged.to_string()]);
                }
            }
            TaskOutput::Criterion(c) => {
                for row in &c.rows {
                    for (a, v) in row.approach.iter().zip(&row.values) {
                        criterion.push(vec![num(row.frequency), num(*a), num(*v), opt(row.slope), task.clone()]);
                    }
                }
            }
            TaskOutput::Stability(s) => {
                for (t, n) in s.schedule.iter().zip(&s.norms) {
                    evolution.push(vec![num(*t), num(*n), task.clone(), "orbit".into()]);
                }
            }
            TaskOutput::Bounded(b) => {
                for (t, n) in b.schedule.iter().zip(&b.norms) {
                    evolution.push(vec![num(*t), num(*n), task.clone(), "operator_norm".into()]);
                }
            }
            TaskOutput::Carleman { rows } => {
                for row in rows {
                    let v = &row.value;
                    carleman.push(vec![num(v.lambda.re), num(v.lambda.im), num(hb_core::semigroup::norm(&v.value)), num(v.error), opt(row.mismatch), task.clone()]);
                }
            }
            _ => {}
        }
    }
    vec![summary, growth, limits, audits, criterion, evolution, carleman]
}

/// Writes `report.json`, or one CSV table per analyzer family, into `dir`.
/// Tables are always written, header-only when no task produced rows.
pub fn emit_report(env: &ReportEnvelope, format: Format, dir: &Path) -> Result<Vec<PathBuf>, ReportError> {
    std::fs::create_dir_all(dir).map_err(|source| ReportError::Io { path: dir.to_path_buf(), source })?;
    match format {
        Format::Json => {
            let path = dir.join("report.json");
            let text = serde_json::to_string_pretty(env)?;
            std::fs::write(&path, text).map_err(|source| ReportError::Io { path: path.clone(), source })?;
            Ok(vec![path])
        }
        Format::Csv => {
            let mut written = Vec::new();
            for t in tables(env) {
                let path = dir.join(format!("{}.csv", t.name));
                let mut w = csv::Writer::from_path(&path)?;
                w.write_record(t.header)?;
                for row in &t.rows {
                    w.write_record(row)?;
                }
                w.flush().map_err(|source| ReportError::Io { path: path.clone(), source })?;
                written.push(path);
            }
            Ok(written)
        }
    }
}
