//! Parametric charts, their derivative jets and the three derivative modes.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fd;
use crate::taylor::{cross3, du3, dv3, value3, TVec3, Taylor};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub u: f64,
    pub v: f64,
}

impl ParamPoint {
    pub const fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }
}

/// Axis-aligned parameter rectangle `[u0, u1] × [v0, v1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

impl Rect {
    pub const fn new(u0: f64, u1: f64, v0: f64, v1: f64) -> Self {
        Self { u0, u1, v0, v1 }
    }

    pub fn contains(&self, p: ParamPoint, margin: f64) -> bool {
        p.u >= self.u0 + margin && p.u <= self.u1 - margin && p.v >= self.v0 + margin && p.v <= self.v1 - margin
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        other.u0 >= self.u0 && other.u1 <= self.u1 && other.v0 >= self.v0 && other.v1 <= self.v1
    }

    pub fn width(&self) -> f64 {
        self.u1 - self.u0
    }

    pub fn height(&self) -> f64 {
        self.v1 - self.v0
    }

    pub fn center(&self) -> ParamPoint {
        ParamPoint::new(0.5 * (self.u0 + self.u1), 0.5 * (self.v0 + self.v1))
    }

    /// Cell-centred `nu × nv` lattice, row-major in `u`.
    pub fn grid(&self, nu: usize, nv: usize) -> Vec<ParamPoint> {
        let mut pts = Vec::with_capacity(nu * nv);
        for i in 0..nu {
            for j in 0..nv {
                let u = self.u0 + (i as f64 + 0.5) * self.width() / nu as f64;
                let v = self.v0 + (j as f64 + 0.5) * self.height() / nv as f64;
                pts.push(ParamPoint::new(u, v));
            }
        }
        pts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DerivativeMode {
    /// Closed-form partials of the chart.
    Analytic,
    /// Taylor-series (generalised dual number) propagation.
    #[default]
    Dual,
    /// Nested central finite differences.
    #[serde(rename = "fd")]
    FiniteDifference,
}

impl DerivativeMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            DerivativeMode::Analytic => "analytic",
            DerivativeMode::Dual => "dual",
            DerivativeMode::FiniteDifference => "fd",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "analytic" => Some(Self::Analytic),
            "dual" => Some(Self::Dual),
            "fd" | "finite-difference" => Some(Self::FiniteDifference),
            _ => None,
        }
    }
}

impl fmt::Display for DerivativeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One-variable factor of a separable chart term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Elem {
    One,
    Pow(u32),
    /// `sin(freq·x + phase)`.
    Sin {
        freq: f64,
        phase: f64,
    },
}

impl Elem {
    pub fn sin(freq: f64) -> Self {
        Elem::Sin { freq, phase: 0.0 }
    }

    pub fn cos(freq: f64) -> Self {
        Elem::Sin {
            freq,
            phase: std::f64::consts::FRAC_PI_2,
        }
    }

    /// `n`-th derivative at `x`.
    pub fn derivative(&self, x: f64, n: usize) -> f64 {
        match *self {
            Elem::One => {
                if n == 0 {
                    1.0
                } else {
                    0.0
                }
            }
            Elem::Pow(k) => {
                let k = k as usize;
                if n > k {
                    0.0
                } else {
                    let falling: f64 = (0..n).map(|j| (k - j) as f64).product();
                    falling * x.powi((k - n) as i32)
                }
            }
            Elem::Sin { freq, phase } => {
                freq.powi(n as i32) * (freq * x + phase + n as f64 * std::f64::consts::FRAC_PI_2).sin()
            }
        }
    }

    pub fn taylor(&self, x: &Taylor) -> Taylor {
        match *self {
            Elem::One => Taylor::constant(1.0, x.deg()),
            Elem::Pow(k) => x.powi(k as i32),
            Elem::Sin { freq, phase } => (*x * freq + phase).sin(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coef: f64,
    pub fu: Elem,
    pub fv: Elem,
}

impl Term {
    pub const fn new(coef: f64, fu: Elem, fv: Elem) -> Self {
        Self { coef, fu, fv }
    }
}

/// A chart whose components are sums of `c · g(u) · h(v)`; every partial
/// derivative is available in closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableChart {
    pub components: [Vec<Term>; 3],
}

impl SeparableChart {
    pub fn partial(&self, comp: usize, u: f64, v: f64, i: usize, j: usize) -> f64 {
        self.components[comp]
            .iter()
            .map(|t| t.coef * t.fu.derivative(u, i) * t.fv.derivative(v, j))
            .sum()
    }
}

/// A map from the parameter rectangle into 3-space.
pub trait Chart: Send + Sync {
    fn position(&self, u: &Taylor, v: &Taylor) -> TVec3;

    /// Closed-form partials, when the chart has them.
    fn closed_form(&self) -> Option<&SeparableChart> {
        None
    }
}

impl Chart for SeparableChart {
    fn position(&self, u: &Taylor, v: &Taylor) -> TVec3 {
        std::array::from_fn(|k| {
            self.components[k]
                .iter()
                .fold(Taylor::constant(0.0, u.deg().min(v.deg())), |acc, t| {
                    acc + t.fu.taylor(u) * t.fv.taylor(v) * t.coef
                })
        })
    }

    fn closed_form(&self) -> Option<&SeparableChart> {
        Some(self)
    }
}

/// Adapter for charts written as generic closures over series.
pub struct FnChart<F>(pub F);

impl<F> Chart for FnChart<F>
where
    F: Fn(&Taylor, &Taylor) -> TVec3 + Send + Sync,
{
    fn position(&self, u: &Taylor, v: &Taylor) -> TVec3 {
        (self.0)(u, v)
    }
}

pub const DEFAULT_REGULARITY_MARGIN: f64 = 1e-8;

#[derive(Clone)]
pub struct SurfacePatch {
    pub name: String,
    pub chart: Arc<dyn Chart>,
    pub domain: Rect,
    pub derivative_mode: DerivativeMode,
    pub regularity_margin: f64,
}

impl fmt::Debug for SurfacePatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfacePatch")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("derivative_mode", &self.derivative_mode)
            .finish()
    }
}

impl SurfacePatch {
    pub fn new(name: impl Into<String>, chart: Arc<dyn Chart>, domain: Rect) -> Self {
        Self {
            name: name.into(),
            chart,
            domain,
            derivative_mode: DerivativeMode::default(),
            regularity_margin: DEFAULT_REGULARITY_MARGIN,
        }
    }

    pub fn with_mode(mut self, mode: DerivativeMode) -> Self {
        self.derivative_mode = mode;
        self
    }

    pub fn has_closed_form(&self) -> bool {
        self.chart.closed_form().is_some()
    }

    /// Mode actually used for the chart: analytic requests fall back to
    /// dual propagation on charts without closed-form partials.
    pub fn effective_mode(&self, mode: DerivativeMode) -> DerivativeMode {
        match mode {
            DerivativeMode::Analytic if !self.has_closed_form() => DerivativeMode::Dual,
            m => m,
        }
    }

    pub fn position(&self, p: ParamPoint) -> [f64; 3] {
        value3(&self.chart.position(&Taylor::from(p.u), &Taylor::from(p.v)))
    }

    /// Length used to scale finite-difference steps.
    pub fn length_scale(&self) -> f64 {
        0.5 * self.domain.width().min(self.domain.height())
    }

    /// Default step `ε^(1/(order+2))` scaled by the domain size.
    pub fn fd_step(&self, order: usize) -> f64 {
        f64::EPSILON.powf(1.0 / (order as f64 + 2.0)) * self.length_scale()
    }

    pub fn check_domain(&self, p: ParamPoint) -> Result<()> {
        if self.domain.contains(p, 0.0) {
            Ok(())
        } else {
            Err(Error::PointOutsideDomain { u: p.u, v: p.v })
        }
    }

    /// Chart series of degree `deg` at `p` in the given mode, with an
    /// explicit step for the finite-difference mode.
    pub fn chart_series(&self, p: ParamPoint, deg: usize, mode: DerivativeMode, fd_step: f64) -> Result<TVec3> {
        let series = match self.effective_mode(mode) {
            DerivativeMode::Analytic => {
                let sep = self.chart.closed_form().expect("checked by effective_mode");
                std::array::from_fn(|k| Taylor::from_partials(deg, |i, j| sep.partial(k, p.u, p.v, i, j)))
            }
            DerivativeMode::Dual => self.chart.position(&Taylor::var_u(p.u, deg), &Taylor::var_v(p.v, deg)),
            DerivativeMode::FiniteDifference => fd::jets_from_samples::<3>(deg, fd_step, |du, dv| {
                self.position(ParamPoint::new(p.u + du, p.v + dv))
            }),
        };
        if series.iter().all(Taylor::is_finite) {
            Ok(series)
        } else {
            Err(Error::DifferentiationFailure(format!(
                "non-finite chart derivatives at ({}, {})",
                p.u, p.v
            )))
        }
    }

    pub fn check_regular(&self, p: ParamPoint, xu: [f64; 3], xv: [f64; 3]) -> Result<()> {
        let n = [
            xu[1] * xv[2] - xu[2] * xv[1],
            xu[2] * xv[0] - xu[0] * xv[2],
            xu[0] * xv[1] - xu[1] * xv[0],
        ];
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if norm >= self.regularity_margin {
            Ok(())
        } else {
            Err(Error::RegularityViolation { u: p.u, v: p.v, norm })
        }
    }
}

/// Position and chart partials at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Jet2 {
    pub x: [f64; 3],
    pub x_u: [f64; 3],
    pub x_v: [f64; 3],
    pub x_uu: [f64; 3],
    pub x_uv: [f64; 3],
    pub x_vv: [f64; 3],
    /// `x_uuu, x_uuv, x_uvv, x_vvv` when order 3 was requested.
    pub third: Option<[[f64; 3]; 4]>,
}

/// Chart partials through `order` (1 to 3) in the patch's derivative mode.
pub fn eval_jet(surface: &SurfacePatch, p: ParamPoint, order: usize) -> Result<Jet2> {
    if !(1..=3).contains(&order) {
        return Err(Error::DifferentiationFailure(format!(
            "jet order {order} is not in 1..=3"
        )));
    }
    surface.check_domain(p)?;
    let s = surface.chart_series(p, order, surface.derivative_mode, surface.fd_step(order))?;
    let part = |i: usize, j: usize| -> [f64; 3] {
        if i + j > order {
            [0.0; 3]
        } else {
            [s[0].partial(i, j), s[1].partial(i, j), s[2].partial(i, j)]
        }
    };
    let jet = Jet2 {
        x: value3(&s),
        x_u: part(1, 0),
        x_v: part(0, 1),
        x_uu: part(2, 0),
        x_uv: part(1, 1),
        x_vv: part(0, 2),
        third: (order >= 3).then(|| [part(3, 0), part(2, 1), part(1, 2), part(0, 3)]),
    };
    surface.check_regular(p, jet.x_u, jet.x_v)?;
    Ok(jet)
}

/// Unit normal of the chart orientation, `x_u × x_v / |x_u × x_v|`.
pub fn unit_normal(s: &TVec3) -> TVec3 {
    let n = cross3(&du3(s), &dv3(s));
    let len = crate::taylor::dot3(&n, &n).sqrt();
    [n[0] / len, n[1] / len, n[2] / len]
}
