//! Runs registered cases over a refinement ladder and assigns verdicts.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::cases::{CaseContext, Sample};
use crate::catalog::CatalogSurface;
use crate::error::{Error, Result};
use crate::exec;
use crate::field::{random_fields, ScalarField};
use crate::geometry::{FrameOptions, GeometrySettings, LocalGeometry};
use crate::integrals::{Integrator, QuadratureSettings};
use crate::operators::{beltrami_form_ratio, k_form, k_intrinsic};
use crate::quadrature::pairwise_sum;
use crate::registry::{self, Convention, Evaluator, Expectation, IdentityCase};
use crate::surface::DerivativeMode;
use crate::taylor::Taylor;
use crate::tolerances::{self, P_MIN, QUADRATURE_GATE};

/// Jet degree of every pointwise geometry.
pub const POINT_DEGREE: usize = 2;

/// Upper end of the accepted finite-difference order band.
pub const P_MAX: f64 = 4.5;

/// A finest residual below `tol` times this exempts a case from the order
/// requirement; no order is reported for it.
pub const ORDER_EXEMPT_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarnessConfig {
    /// Sample grids, coarse to fine. The rung `n` also sets the
    /// finite-difference step to `h ∝ 1/max(nu, nv)`.
    pub ladder: Vec<(usize, usize)>,
    pub mode: DerivativeMode,
    pub seed: u64,
    pub random_fields: usize,
    /// Overrides the per-mode residual tolerance.
    pub tolerance: Option<f64>,
    pub quadrature: QuadratureSettings,
    pub frame: FrameOptions,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            ladder: vec![(8, 8), (16, 16), (32, 32)],
            mode: DerivativeMode::Analytic,
            seed: 42,
            random_fields: 30,
            tolerance: None,
            quadrature: QuadratureSettings::default(),
            frame: FrameOptions::canonical(),
        }
    }
}

impl HarnessConfig {
    pub fn with_mode(mode: DerivativeMode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or_else(|| tolerances::for_mode(self.mode))
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            residual: self.tolerance(),
            p_min: P_MIN,
            p_max: P_MAX,
            quadrature_gate: self.quadrature.gate,
            quadrature_gate_factor: QUADRATURE_GATE,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ladder.is_empty() {
            return Err(Error::ConfigParse("grid ladder is empty".into()));
        }
        if self.ladder.iter().any(|&(a, b)| a == 0 || b == 0) {
            return Err(Error::ConfigParse("grid sizes must be positive".into()));
        }
        if self.ladder.windows(2).any(|w| w[1].0 <= w[0].0 || w[1].1 <= w[0].1) {
            return Err(Error::ConfigParse("grid ladder must be strictly increasing".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct Tolerances {
    pub residual: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub quadrature_gate: f64,
    pub quadrature_gate_factor: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Confirmed,
    ConfirmedWithConvention,
    Discrepant,
    Skipped(String),
}

impl Verdict {
    pub fn is_skipped(&self) -> bool {
        matches!(self, Verdict::Skipped(_))
    }

    pub fn is_confirmed(&self) -> bool {
        matches!(self, Verdict::Confirmed | Verdict::ConfirmedWithConvention)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Confirmed => write!(f, "CONFIRMED"),
            Verdict::ConfirmedWithConvention => write!(f, "CONFIRMED-WITH-CONVENTION"),
            Verdict::Discrepant => write!(f, "DISCREPANT"),
            Verdict::Skipped(r) => write!(f, "SKIPPED({r})"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "CONFIRMED" => Verdict::Confirmed,
            "CONFIRMED-WITH-CONVENTION" => Verdict::ConfirmedWithConvention,
            "DISCREPANT" => Verdict::Discrepant,
            _ => match s.strip_prefix("SKIPPED(").and_then(|r| r.strip_suffix(')')) {
                Some(r) => Verdict::Skipped(r.to_string()),
                None => return Err(Error::ConfigParse(format!("unknown verdict `{s}`"))),
            },
        })
    }
}

impl<'de> serde::Deserialize<'de> for Verdict {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct ResidualReport {
    pub case_id: String,
    pub surface: String,
    pub grid: Vec<(usize, usize)>,
    pub max_residual: Vec<f64>,
    pub mean_residual: Vec<f64>,
    pub order: Option<f64>,
    pub verdict: Verdict,
    pub mode: DerivativeMode,
    pub tolerances: Tolerances,
    pub expected: String,
    pub measurements: BTreeMap<String, f64>,
    pub note: Option<String>,
}

impl ResidualReport {
    pub fn finest_max(&self) -> Option<f64> {
        self.max_residual.last().copied()
    }

    /// DISCREPANT on a case expected to confirm.
    pub fn is_unexpected(&self) -> bool {
        self.verdict == Verdict::Discrepant && self.expected == expectation_label(Expectation::Confirmed)
    }
}

pub fn expectation_label(e: Expectation) -> &'static str {
    match e {
        Expectation::Confirmed => "confirmed",
        Expectation::ReportOnly => "report-only",
    }
}

/// Skip reason for errors that mean "not applicable here".
pub fn skip_reason(e: &Error) -> Option<String> {
    Some(match e {
        Error::RequirementUnmet(r) => r.clone(),
        Error::FlatPointForImage { .. } => "flat-point-for-image".into(),
        Error::DegenerateTheta { .. } => "degenerate-theta".into(),
        Error::DegenerateMu { .. } => "degenerate-mu".into(),
        Error::AngleFieldUndefined(_) => "angle-field-undefined".into(),
        Error::ConstraintUnsatisfiable { .. } => "constraint-unsatisfiable".into(),
        _ => return None,
    })
}

/// Geometry and field jets at every sample point of one rung.
pub struct PointCache {
    pub rung: (usize, usize),
    pub frame: FrameOptions,
    pub points: Vec<Result<(LocalGeometry, Vec<Taylor>)>>,
}

impl PointCache {
    pub fn build(
        surface: &CatalogSurface,
        settings: &GeometrySettings,
        fields: &[ScalarField],
        rung: (usize, usize),
    ) -> Self {
        let pts = surface.kind.sample_rect().grid(rung.0, rung.1);
        let points = exec::map(&pts, |&p| {
            let g = settings.build(&surface.patch, p, POINT_DEGREE)?;
            let jets = fields.iter().map(|f| f.eval(&g)).collect();
            Ok((g, jets))
        });
        Self {
            rung,
            frame: settings.frame,
            points,
        }
    }
}

fn resolution(rung: (usize, usize)) -> usize {
    rung.0.max(rung.1)
}

/// Per-rung outcome before a verdict.
struct Rung {
    max: f64,
    mean: f64,
    measures: BTreeMap<String, f64>,
}

fn nan_safe_abs(r: f64) -> f64 {
    if r.is_nan() {
        f64::INFINITY
    } else {
        r.abs()
    }
}

fn pointwise_rung(case: &IdentityCase, ctx: &CaseContext, cache: &PointCache) -> Result<Rung> {
    let Evaluator::Pointwise(f) = case.evaluator else {
        unreachable!()
    };
    let samples = exec::try_map(&cache.points, |pt| match pt {
        Ok((g, jets)) => f(ctx, g, jets),
        Err(e) => Err(e.clone()),
    })?;
    let per_point: Vec<f64> = samples.iter().map(Sample::max_abs).collect();
    let mut sums: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for s in &samples {
        for (k, v) in &s.measures {
            sums.entry(k.clone()).or_default().push(*v);
        }
    }
    Ok(Rung {
        max: per_point.iter().copied().fold(0.0, f64::max),
        mean: pairwise_sum(&per_point) / per_point.len().max(1) as f64,
        measures: sums
            .into_iter()
            .map(|(k, v)| (k, pairwise_sum(&v) / v.len() as f64))
            .collect(),
    })
}

fn integral_rung(case: &IdentityCase, ctx: &CaseContext, ig: &Integrator) -> Result<Rung> {
    let Evaluator::Integral(f) = case.evaluator else {
        unreachable!()
    };
    let s = f(ctx, ig)?;
    let abs: Vec<f64> = s.residuals.iter().map(|&r| nan_safe_abs(r)).collect();
    Ok(Rung {
        max: abs.iter().copied().fold(0.0, f64::max),
        mean: pairwise_sum(&abs) / abs.len().max(1) as f64,
        measures: s.measures.into_iter().collect(),
    })
}

/// Order from the last two rungs of a ladder.
pub fn estimate_order(ladder: &[(usize, usize)], max: &[f64]) -> Option<f64> {
    let n = max.len();
    if n < 2 || ladder.len() < n {
        return None;
    }
    let (r0, r1) = (max[n - 2], max[n - 1]);
    let (h0, h1) = (resolution(ladder[n - 2]) as f64, resolution(ladder[n - 1]) as f64);
    if !(r0 > 0.0 && r1 > 0.0 && r0.is_finite() && r1.is_finite()) {
        return None;
    }
    Some((r0 / r1).ln() / (h1 / h0).ln())
}

/// Grids evaluated and their per-rung results.
type Evaluated = (Vec<(usize, usize)>, Vec<Rung>);

/// Everything shared by the cases of one surface.
pub struct SurfaceRun<'a> {
    pub surface: &'a CatalogSurface,
    pub config: &'a HarnessConfig,
    pub fields: Vec<ScalarField>,
    caches: Vec<Option<PointCache>>,
    integrators: Vec<Option<Integrator<'a>>>,
}

impl<'a> SurfaceRun<'a> {
    pub fn new(surface: &'a CatalogSurface, config: &'a HarnessConfig) -> Self {
        Self {
            surface,
            config,
            fields: random_fields(config.seed, config.random_fields),
            caches: (0..config.ladder.len()).map(|_| None).collect(),
            integrators: (0..config.ladder.len()).map(|_| None).collect(),
        }
    }

    fn settings(&self, rung: (usize, usize), frame: FrameOptions) -> GeometrySettings {
        GeometrySettings::new(&self.surface.patch, self.config.mode, resolution(rung)).with_frame(frame)
    }

    fn rungs(&self, case: &IdentityCase) -> Vec<usize> {
        let n = self.config.ladder.len();
        match (case.evaluator, self.config.mode) {
            // exact-derivative integrals do not depend on the rung
            (Evaluator::Integral(_), m) if m != DerivativeMode::FiniteDifference => vec![n - 1],
            _ => (0..n).collect(),
        }
    }

    fn evaluate(&mut self, case: &IdentityCase, frame: FrameOptions) -> Result<Evaluated> {
        let mut grid = Vec::new();
        let mut out = Vec::new();
        for i in self.rungs(case) {
            let rung = self.config.ladder[i];
            let settings = self.settings(rung, frame);
            let shared = frame == self.config.frame;
            let r = match case.evaluator {
                Evaluator::Pointwise(_) => {
                    let local;
                    let cache = if shared {
                        if self.caches[i].is_none() {
                            self.caches[i] = Some(PointCache::build(self.surface, &settings, &self.fields, rung));
                        }
                        self.caches[i].as_ref().unwrap()
                    } else {
                        local = PointCache::build(self.surface, &settings, &self.fields, rung);
                        &local
                    };
                    let ctx = self.ctx(settings);
                    pointwise_rung(case, &ctx, cache)?
                }
                Evaluator::Integral(_) => {
                    let local;
                    let ig = if shared {
                        let patch = &self.surface.patch;
                        let quad = self.config.quadrature;
                        self.integrators[i].get_or_insert_with(|| Integrator::new(patch, settings, quad))
                    } else {
                        local = Integrator::new(&self.surface.patch, settings, self.config.quadrature);
                        &local
                    };
                    let ctx = CaseContext {
                        surface: self.surface,
                        settings,
                        quad: self.config.quadrature,
                        fields: &self.fields,
                    };
                    integral_rung(case, &ctx, ig)?
                }
            };
            grid.push(rung);
            out.push(r);
        }
        Ok((grid, out))
    }

    fn ctx(&self, settings: GeometrySettings) -> CaseContext<'_> {
        CaseContext {
            surface: self.surface,
            settings,
            quad: self.config.quadrature,
            fields: &self.fields,
        }
    }

    fn passes(&self, grid: &[(usize, usize)], rungs: &[Rung]) -> (bool, Option<f64>) {
        let tol = self.config.tolerance();
        let max: Vec<f64> = rungs.iter().map(|r| r.max).collect();
        let fd = self.config.mode == DerivativeMode::FiniteDifference;
        let fin = *max.last().unwrap();
        let exempt = fin < tol * ORDER_EXEMPT_FRACTION;
        let order = if fd && !exempt {
            estimate_order(grid, &max)
        } else {
            None
        };
        let order_ok = !fd || exempt || order.is_some_and(|p| p >= P_MIN);
        (fin < tol && order_ok, order)
    }

    pub fn run(&mut self, case: &IdentityCase) -> ResidualReport {
        let mut report = ResidualReport {
            case_id: case.id.to_string(),
            surface: self.surface.name().to_string(),
            grid: Vec::new(),
            max_residual: Vec::new(),
            mean_residual: Vec::new(),
            order: None,
            verdict: Verdict::Discrepant,
            mode: self.config.mode,
            tolerances: self.config.tolerances(),
            expected: expectation_label(case.expect).to_string(),
            measurements: BTreeMap::new(),
            note: None,
        };
        if let Some(r) = case.unmet(self.surface.kind) {
            report.verdict = Verdict::Skipped(r.reason().to_string());
            return report;
        }
        let (grid, rungs) = match self.evaluate(case, self.config.frame) {
            Ok(x) => x,
            Err(e) => {
                match skip_reason(&e) {
                    Some(r) => report.verdict = Verdict::Skipped(r),
                    None => report.note = Some(e.to_string()),
                }
                return report;
            }
        };
        let (ok, order) = self.passes(&grid, &rungs);
        report.grid = grid;
        report.max_residual = rungs.iter().map(|r| r.max).collect();
        report.mean_residual = rungs.iter().map(|r| r.mean).collect();
        report.order = order;
        report.measurements = rungs.last().map(|r| r.measures.clone()).unwrap_or_default();
        if ok {
            report.verdict = Verdict::Confirmed;
            return report;
        }
        if case.convention == Some(Convention::NormalOrientation) {
            let flipped = self.config.frame.flipped();
            if let Ok((g, r)) = self.evaluate(case, flipped) {
                let (ok, p) = self.passes(&g, &r);
                if ok {
                    report.verdict = Verdict::ConfirmedWithConvention;
                    report.note = Some(format!(
                        "confirmed after flipping the normal; flipped finest max {:e}",
                        r.last().unwrap().max
                    ));
                    report.order = p;
                    return report;
                }
            }
        }
        report
    }
}

/// Runs one case on one surface.
pub fn run_case(case_id: &str, surface: &CatalogSurface, config: &HarnessConfig) -> Result<ResidualReport> {
    config.validate()?;
    let case = registry::find(case_id)?;
    Ok(SurfaceRun::new(surface, config).run(case))
}

/// Same as [`run_case`], with an unmet requirement as an error.
pub fn run_case_strict(case_id: &str, surface: &CatalogSurface, config: &HarnessConfig) -> Result<ResidualReport> {
    let case = registry::find(case_id)?;
    if let Some(r) = case.unmet(surface.kind) {
        return Err(Error::RequirementUnmet(r.reason().into()));
    }
    run_case(case_id, surface, config)
}

/// Runs every case on every surface; reports sorted by case id, then by
/// surface order.
pub fn run_suite(
    surfaces: &[CatalogSurface],
    cases: &[&IdentityCase],
    config: &HarnessConfig,
) -> Result<Vec<ResidualReport>> {
    config.validate()?;
    let mut by_case: Vec<Vec<ResidualReport>> = vec![Vec::new(); cases.len()];
    for s in surfaces {
        let mut run = SurfaceRun::new(s, config);
        for (i, c) in cases.iter().enumerate() {
            by_case[i].push(run.run(c));
        }
    }
    let mut order: Vec<usize> = (0..cases.len()).collect();
    order.sort_by_key(|&i| cases[i].id);
    Ok(order
        .into_iter()
        .flat_map(|i| std::mem::take(&mut by_case[i]))
        .collect())
}

/// One gauge probe: the largest change of a quantity under rotation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugeProbe {
    pub quantity: String,
    pub max_change: f64,
    pub invariant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugeAudit {
    pub angle: f64,
    pub base: ResidualReport,
    pub rotated: ResidualReport,
    pub probes: Vec<GaugeProbe>,
}

impl GaugeAudit {
    pub fn probe(&self, name: &str) -> Option<&GaugeProbe> {
        self.probes.iter().find(|p| p.quantity == name)
    }
}

/// Threshold under which a probed quantity counts as gauge invariant.
pub const GAUGE_INVARIANCE_TOL: f64 = 1e-9;

/// Re-runs a pointwise case with the frame rotated by `angle` and probes
/// which frame quantities moved.
pub fn gauge_rotation_audit(
    case_id: &str,
    surface: &CatalogSurface,
    angle: f64,
    config: &HarnessConfig,
) -> Result<GaugeAudit> {
    let case = registry::find(case_id)?;
    if case.kind() != registry::CaseKind::Pointwise {
        return Err(Error::RequirementUnmet(format!("{case_id} is not pointwise")));
    }
    let base = run_case(case_id, surface, config)?;
    let rot_cfg = HarnessConfig {
        frame: FrameOptions {
            gauge_angle: config.frame.gauge_angle + angle,
            ..config.frame
        },
        ..config.clone()
    };
    let rotated = run_case(case_id, surface, &rot_cfg)?;

    let rung = *config.ladder.last().unwrap();
    let fields = random_fields(config.seed, config.random_fields.min(4));
    let probe = |frame: FrameOptions| -> Result<Vec<Vec<f64>>> {
        let settings = GeometrySettings::new(&surface.patch, config.mode, resolution(rung)).with_frame(frame);
        let cache = PointCache::build(surface, &settings, &fields, rung);
        cache
            .points
            .into_iter()
            .map(|pt| {
                let (g, jets) = pt?;
                let mut v = vec![
                    (g.a * g.c - g.b * g.b).value(),
                    k_intrinsic(&g).value(),
                    k_form(&g).value(),
                ];
                v.extend(jets.iter().map(|f| beltrami_form_ratio(&g, f).value()));
                v.extend([g.q1.value(), g.q2.value(), g.a.value(), g.c.value()]);
                Ok(v)
            })
            .collect()
    };
    let before = probe(config.frame)?;
    let after = probe(rot_cfg.frame)?;
    let mut names = vec!["K_extrinsic".to_string(), "K_intrinsic".into(), "K_form".into()];
    names.extend((0..fields.len()).map(|i| format!("laplacian_f{i}")));
    names.extend(["q1", "q2", "a", "c"].map(String::from));
    let probes = names
        .into_iter()
        .enumerate()
        .map(|(j, quantity)| {
            let max_change = before
                .iter()
                .zip(&after)
                .map(|(b, a)| nan_safe_abs(a[j] - b[j]))
                .fold(0.0, f64::max);
            GaugeProbe {
                quantity,
                max_change,
                invariant: max_change < GAUGE_INVARIANCE_TOL,
            }
        })
        .collect();
    Ok(GaugeAudit {
        angle,
        base,
        rotated,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_strings_round_trip() {
        for v in [
            Verdict::Confirmed,
            Verdict::ConfirmedWithConvention,
            Verdict::Discrepant,
            Verdict::Skipped("nonflat-required".into()),
        ] {
            assert_eq!(v.to_string().parse::<Verdict>().unwrap(), v);
        }
    }

    #[test]
    fn order_from_last_two_rungs() {
        let p = estimate_order(&[(8, 8), (16, 16), (32, 32)], &[1.0, 0.25, 0.0625]).unwrap();
        assert!((p - 2.0).abs() < 1e-12);
        assert_eq!(estimate_order(&[(8, 8)], &[1.0]), None);
    }

    #[test]
    fn ladder_validation() {
        let mut c = HarnessConfig::default();
        assert!(c.validate().is_ok());
        c.ladder = vec![(16, 16), (8, 8)];
        assert!(matches!(c.validate(), Err(Error::ConfigParse(_))));
    }
}
