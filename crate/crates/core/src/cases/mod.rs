//! Evaluators behind the registered identity cases.
//!
//! A pointwise evaluator sees one sampled geometry together with the jets
//! of the seeded random fields there; an integral evaluator sees the
//! integrator and walks the standard regions of the surface.

pub mod integral;
pub mod pointwise;

use crate::catalog::CatalogSurface;
use crate::field::ScalarField;
use crate::geometry::{GeometrySettings, LocalGeometry};
use crate::integrals::QuadratureSettings;
use crate::taylor::Taylor;

pub use integral::standard_regions;

pub struct CaseContext<'a> {
    pub surface: &'a CatalogSurface,
    pub settings: GeometrySettings,
    pub quad: QuadratureSettings,
    pub fields: &'a [ScalarField],
}

/// Residual components and named measurements from one evaluation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Sample {
    pub residuals: Vec<f64>,
    pub measures: Vec<(String, f64)>,
}

impl Sample {
    pub fn new(residuals: Vec<f64>) -> Self {
        Self {
            residuals,
            measures: Vec::new(),
        }
    }

    pub fn of(ts: impl IntoIterator<Item = Taylor>) -> Self {
        Self::new(ts.into_iter().map(|t| t.value()).collect())
    }

    pub fn push(&mut self, r: f64) {
        self.residuals.push(r);
    }

    pub fn push_t(&mut self, t: Taylor) {
        self.residuals.push(t.value());
    }

    pub fn measure(&mut self, name: impl Into<String>, v: f64) {
        self.measures.push((name.into(), v));
    }

    pub fn max_abs(&self) -> f64 {
        self.residuals
            .iter()
            .map(|r| if r.is_nan() { f64::INFINITY } else { r.abs() })
            .fold(0.0, f64::max)
    }
}

pub type PointFn = fn(&CaseContext, &LocalGeometry, &[Taylor]) -> crate::Result<Sample>;
pub type IntegralFn = fn(&CaseContext, &crate::integrals::Integrator) -> crate::Result<Sample>;

/// Field jets in consecutive pairs, wrapping around.
pub(crate) fn pairs(f: &[Taylor]) -> impl Iterator<Item = (&Taylor, &Taylor)> {
    (0..f.len()).map(move |i| (&f[i], &f[(i + 1) % f.len()]))
}

/// Field jets grouped `k` at a time, wrapping around.
pub(crate) fn groups<const K: usize>(f: &[Taylor]) -> impl Iterator<Item = [Taylor; K]> + '_ {
    let n = f.len();
    (0..n.div_ceil(K)).map(move |c| std::array::from_fn(|i| f[(c * K + i) % n]))
}
