//! Schema-versioned suite reports, the CSV summary and convergence tables.

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogSurface;
use crate::error::{Error, Result};
use crate::geometry::FdSteps;
use crate::harness::{run_case, HarnessConfig, ResidualReport};
use crate::registry::{self, CaseKind};
use crate::surface::DerivativeMode;

pub const SCHEMA_VERSION: &str = "beltrami-report/1";

/// Residuals below this carry no convergence order in a table.
pub const ROUNDING_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: String,
    pub config_echo: serde_json::Value,
    pub reports: Vec<ResidualReport>,
}

/// One row of `summary.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub id: String,
    pub surface: String,
    pub mode: DerivativeMode,
    pub max_residual: Option<f64>,
    pub order: Option<f64>,
    pub verdict: String,
}

impl SummaryRow {
    pub fn of(r: &ResidualReport) -> Self {
        Self {
            id: r.case_id.clone(),
            surface: r.surface.clone(),
            mode: r.mode,
            max_residual: r.finest_max(),
            order: r.order,
            verdict: r.verdict.to_string(),
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

impl SuiteReport {
    pub fn new(config_echo: serde_json::Value, reports: Vec<ResidualReport>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            config_echo,
            reports,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: Self = serde_json::from_str(s).map_err(|e| Error::ConfigParse(format!("report: {e}")))?;
        if r.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaMismatch {
                expected: SCHEMA_VERSION.into(),
                found: r.schema_version,
            });
        }
        Ok(r)
    }

    pub fn rows(&self) -> Vec<SummaryRow> {
        self.reports.iter().map(SummaryRow::of).collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in self.rows() {
            w.serialize(row).map_err(csv_err)?;
        }
        if self.reports.is_empty() {
            w.write_record(["id", "surface", "mode", "max_residual", "order", "verdict"])
                .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    pub fn rows_from_csv(s: &str) -> Result<Vec<SummaryRow>> {
        csv::Reader::from_reader(s.as_bytes())
            .deserialize()
            .collect::<std::result::Result<_, _>>()
            .map_err(csv_err)
    }

    /// Concatenates two reports of the same schema, ordered by case id.
    pub fn merge(self, other: SuiteReport) -> Result<SuiteReport> {
        for v in [&self.schema_version, &other.schema_version] {
            if v != SCHEMA_VERSION {
                return Err(Error::SchemaMismatch {
                    expected: SCHEMA_VERSION.into(),
                    found: v.clone(),
                });
            }
        }
        let config_echo = if self.config_echo == other.config_echo {
            self.config_echo
        } else {
            serde_json::Value::Array(vec![self.config_echo, other.config_echo])
        };
        let mut reports = self.reports;
        reports.extend(other.reports);
        reports.sort_by(|a, b| a.case_id.cmp(&b.case_id));
        Ok(SuiteReport::new(config_echo, reports))
    }

    pub fn has_unexpected(&self) -> bool {
        self.reports.iter().any(ResidualReport::is_unexpected)
    }

    /// Fixed-width verdict table for the terminal.
    pub fn table(&self) -> String {
        let id_w = self.reports.iter().map(|r| r.case_id.len()).max().unwrap_or(4).max(4);
        let sf_w = self.reports.iter().map(|r| r.surface.len()).max().unwrap_or(7).max(7);
        let mut out = format!(
            "{:id_w$}  {:sf_w$}  {:>12}  {:>6}  verdict\n",
            "case", "surface", "max_residual", "order"
        );
        for r in &self.reports {
            let max = r.finest_max().map_or("-".into(), |m| format!("{m:.3e}"));
            let p = r.order.map_or("-".into(), |p| format!("{p:.2}"));
            let flag = if r.is_unexpected() { "  (unexpected)" } else { "" };
            out.push_str(&format!(
                "{:id_w$}  {:sf_w$}  {max:>12}  {p:>6}  {}{flag}\n",
                r.case_id, r.surface, r.verdict
            ));
        }
        out
    }
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub grid: String,
    pub h: f64,
    pub max_residual: f64,
    /// `None` on the first row, for exact derivative modes and at rounding.
    pub order: Option<f64>,
}

/// Residual against step size for one pointwise case.
pub fn convergence(case_id: &str, surface: &CatalogSurface, config: &HarnessConfig) -> Result<Vec<ConvergenceRow>> {
    if config.ladder.len() < 3 {
        return Err(Error::ConfigParse(format!(
            "a convergence study needs at least 3 rungs, got {}",
            config.ladder.len()
        )));
    }
    let case = registry::find(case_id)?;
    if case.kind() != CaseKind::Pointwise {
        return Err(Error::ConfigParse(format!("{case_id} is not a pointwise case")));
    }
    if let Some(r) = case.unmet(surface.kind) {
        return Err(Error::RequirementUnmet(r.reason().into()));
    }
    let report = run_case(case_id, surface, config)?;
    if report.max_residual.len() != config.ladder.len() {
        return Err(Error::RequirementUnmet(
            report.note.clone().unwrap_or_else(|| report.verdict.to_string()),
        ));
    }
    let hs: Vec<f64> = config
        .ladder
        .iter()
        .map(|&(a, b)| FdSteps::for_surface(&surface.patch, a.max(b)).outer)
        .collect();
    let fd = config.mode == DerivativeMode::FiniteDifference;
    Ok((0..hs.len())
        .map(|i| {
            let r = report.max_residual[i];
            let order = (fd && i > 0 && r >= ROUNDING_FLOOR)
                .then(|| (report.max_residual[i - 1] / r).ln() / (hs[i - 1] / hs[i]).ln())
                .filter(|p| p.is_finite());
            ConvergenceRow {
                grid: format!("{}x{}", config.ladder[i].0, config.ladder[i].1),
                h: hs[i],
                max_residual: r,
                order,
            }
        })
        .collect())
}

/// CSV with `order` written as `n/a` where it is undefined.
pub fn convergence_csv(rows: &[ConvergenceRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["grid", "h", "max_residual", "order"])
        .map_err(csv_err)?;
    for r in rows {
        let order = r.order.map_or("n/a".to_string(), |p| p.to_string());
        w.write_record([r.grid.clone(), r.h.to_string(), r.max_residual.to_string(), order])
            .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_mismatch_refuses_merge() {
        let a = SuiteReport::new(serde_json::Value::Null, vec![]);
        let mut b = a.clone();
        b.schema_version = "beltrami-report/0".into();
        assert!(matches!(a.clone().merge(b.clone()), Err(Error::SchemaMismatch { .. })));
        assert!(matches!(
            SuiteReport::from_json(&b.to_json()),
            Err(Error::SchemaMismatch { .. })
        ));
        assert_eq!(a.clone().merge(a).unwrap().reports.len(), 0);
    }
}
