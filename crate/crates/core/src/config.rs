//! Run configuration shared by the command line and the acceptance suite.
//!
//! A config file is one JSON document with the fields of [`RunConfig`];
//! missing fields take their defaults and command-line flags override
//! whatever the file sets.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::catalog::{self, default_surfaces, CatalogSurface};
use crate::error::{Error, Result};
use crate::geometry::FrameOptions;
use crate::harness::{run_suite, HarnessConfig};
use crate::integrals::QuadratureSettings;
use crate::registry::{self, IdentityCase};
use crate::report::{convergence, convergence_csv, SuiteReport};
use crate::surface::DerivativeMode;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CaseSelection {
    pub include: Vec<String>,
    pub exclude: Vec<String>,
}

impl Default for CaseSelection {
    fn default() -> Self {
        Self {
            include: vec!["*".into()],
            exclude: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputPaths {
    pub dir: PathBuf,
    pub report: String,
    pub summary: String,
    pub convergence: String,
}

impl Default for OutputPaths {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("."),
            report: "report.json".into(),
            summary: "summary.csv".into(),
            convergence: "convergence.csv".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Catalog specs such as `sphere:R=1`.
    pub surfaces: Vec<String>,
    pub cases: CaseSelection,
    pub ladder: Vec<(usize, usize)>,
    pub mode: DerivativeMode,
    /// Overrides the per-mode residual tolerance.
    pub tolerance: Option<f64>,
    pub seed: u64,
    pub random_fields: usize,
    pub quadrature: QuadratureSettings,
    pub gauge_angle: f64,
    pub output: OutputPaths,
}

impl Default for RunConfig {
    fn default() -> Self {
        let h = HarnessConfig::default();
        Self {
            surfaces: default_surfaces().iter().map(|k| k.canonical_name()).collect(),
            cases: CaseSelection::default(),
            ladder: h.ladder,
            mode: h.mode,
            tolerance: None,
            seed: h.seed,
            random_fields: h.random_fields,
            quadrature: h.quadrature,
            gauge_angle: 0.0,
            output: OutputPaths::default(),
        }
    }
}

/// Parses `32x32` or a ladder `8x8,16x16,32x32`; a bare `16` means `16x16`.
pub fn parse_grid(s: &str) -> Result<Vec<(usize, usize)>> {
    let bad = || Error::ConfigParse(format!("bad grid `{s}`; expected <nu>x<nv>[,...]"));
    s.split(',')
        .map(|rung| {
            let rung = rung.trim();
            match rung.split_once('x') {
                Some((a, b)) => Ok((
                    a.trim().parse().map_err(|_| bad())?,
                    b.trim().parse().map_err(|_| bad())?,
                )),
                None => {
                    let n = rung.parse().map_err(|_| bad())?;
                    Ok((n, n))
                }
            }
        })
        .collect()
}

impl RunConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(s).map_err(|e| Error::ConfigParse(e.to_string()))?;
        c.harness()?;
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let s =
            fs::read_to_string(path).map_err(|e| Error::ConfigParse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&s)
    }

    pub fn harness(&self) -> Result<HarnessConfig> {
        if let Some(t) = self.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::ConfigParse(format!("tolerance must be positive, got {t}")));
            }
        }
        let h = HarnessConfig {
            ladder: self.ladder.clone(),
            mode: self.mode,
            seed: self.seed,
            random_fields: self.random_fields,
            tolerance: self.tolerance,
            quadrature: self.quadrature,
            frame: FrameOptions::rotated(self.gauge_angle),
        };
        h.validate()?;
        Ok(h)
    }

    pub fn catalog_surfaces(&self) -> Result<Vec<CatalogSurface>> {
        self.surfaces.iter().map(|s| catalog::surface(s)).collect()
    }

    pub fn selected_cases(&self) -> Result<Vec<&'static IdentityCase>> {
        registry::select(&self.cases.include, &self.cases.exclude)
    }

    /// The part of the configuration that determines the results; output
    /// paths are left out so runs into different directories compare equal.
    pub fn echo(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("config serializes");
        if let Some(o) = v.as_object_mut() {
            o.remove("output");
        }
        v
    }

    pub fn report_path(&self) -> PathBuf {
        self.output.dir.join(&self.output.report)
    }

    pub fn summary_path(&self) -> PathBuf {
        self.output.dir.join(&self.output.summary)
    }

    pub fn convergence_path(&self) -> PathBuf {
        self.output.dir.join(&self.output.convergence)
    }
}

fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Runs the selected suite and writes `report.json` and `summary.csv`.
pub fn verify(config: &RunConfig) -> Result<SuiteReport> {
    let harness = config.harness()?;
    let surfaces = config.catalog_surfaces()?;
    let cases = config.selected_cases()?;
    let reports = run_suite(&surfaces, &cases, &harness)?;
    let suite = SuiteReport::new(config.echo(), reports);
    write(&config.report_path(), &suite.to_json())?;
    write(&config.summary_path(), &suite.to_csv()?)?;
    Ok(suite)
}

/// Writes the convergence table of one pointwise case on the first
/// configured surface and returns the CSV text.
pub fn convergence_study(config: &RunConfig, case_id: &str) -> Result<String> {
    let harness = config.harness()?;
    let surfaces = config.catalog_surfaces()?;
    let surface = surfaces
        .first()
        .ok_or_else(|| Error::ConfigParse("no surface configured".into()))?;
    let rows = convergence(case_id, surface, &harness)?;
    let csv = convergence_csv(&rows)?;
    write(&config.convergence_path(), &csv)?;
    Ok(csv)
}
