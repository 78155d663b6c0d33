//! Surface curves, tangent angles and geodesic curvature.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::geometry::{GeometrySettings, LocalGeometry};
use crate::quadrature::{composite, pairwise_sum};
use crate::surface::{ParamPoint, SurfacePatch};

/// A smooth piece of a curve in the parameter plane, `t ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Piece {
    Line {
        a: ParamPoint,
        b: ParamPoint,
    },
    /// `center + radius (cos θ, sin θ)` for `θ = start + t·sweep`.
    Arc {
        center: ParamPoint,
        radius: f64,
        start: f64,
        sweep: f64,
    },
}

impl Piece {
    /// Position, velocity and acceleration in `(u, v)`.
    pub fn eval(&self, t: f64) -> (ParamPoint, [f64; 2], [f64; 2]) {
        match *self {
            Piece::Line { a, b } => (
                ParamPoint::new(a.u + t * (b.u - a.u), a.v + t * (b.v - a.v)),
                [b.u - a.u, b.v - a.v],
                [0.0, 0.0],
            ),
            Piece::Arc {
                center,
                radius,
                start,
                sweep,
            } => {
                let th = start + t * sweep;
                let (s, c) = th.sin_cos();
                (
                    ParamPoint::new(center.u + radius * c, center.v + radius * s),
                    [-radius * sweep * s, radius * sweep * c],
                    [-radius * sweep * sweep * c, -radius * sweep * sweep * s],
                )
            }
        }
    }
}

/// A chain of pieces; a closed curve with positive orientation keeps the
/// enclosed region on its left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCurve {
    pub pieces: Vec<Piece>,
    pub closed: bool,
}

impl SurfaceCurve {
    pub fn closed(pieces: Vec<Piece>) -> Self {
        Self { pieces, closed: true }
    }

    pub fn open(pieces: Vec<Piece>) -> Self {
        Self { pieces, closed: false }
    }

    pub fn circle(center: ParamPoint, radius: f64) -> Self {
        Self::closed(vec![Piece::Arc {
            center,
            radius,
            start: 0.0,
            sweep: std::f64::consts::TAU,
        }])
    }

    /// Evaluation at the global parameter `t ∈ [0, 1]`, each piece taking
    /// an equal share.
    pub fn eval(&self, t: f64) -> (ParamPoint, [f64; 2], [f64; 2]) {
        let n = self.pieces.len() as f64;
        let s = (t.clamp(0.0, 1.0) * n).min(n - 1e-12);
        let i = s.floor() as usize;
        let (p, v, a) = self.pieces[i].eval(s - i as f64);
        (p, [v[0] * n, v[1] * n], [a[0] * n * n, a[1] * n * n])
    }
}

fn wrap_angle(a: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let r = (a + std::f64::consts::PI).rem_euclid(tau) - std::f64::consts::PI;
    if r <= -std::f64::consts::PI {
        r + tau
    } else {
        r
    }
}

/// Data at one quadrature node of a curve piece.
#[derive(Debug, Clone)]
pub struct CurveNode {
    pub t: f64,
    pub weight: f64,
    pub p: ParamPoint,
    pub vel: [f64; 2],
    pub acc: [f64; 2],
    /// Degree-1 geometry at the node.
    pub geo: LocalGeometry,
    /// Chart partials `x_u, x_v, x_uu, x_uv, x_vv` in the node's mode.
    pub chart: [[f64; 3]; 5],
}

fn apply_t(f: &crate::forms::Form1<crate::taylor::Taylor>, vel: [f64; 2]) -> f64 {
    f.du.value() * vel[0] + f.dv.value() * vel[1]
}

fn along(h: &crate::taylor::Taylor, vel: [f64; 2]) -> f64 {
    h.partial(1, 0) * vel[0] + h.partial(0, 1) * vel[1]
}

impl CurveNode {
    pub fn new(
        surface: &SurfacePatch,
        settings: &GeometrySettings,
        piece: &Piece,
        t: f64,
        weight: f64,
    ) -> Result<Self> {
        let (p, vel, acc) = piece.eval(t);
        if vel[0].hypot(vel[1]) == 0.0 {
            return Err(Error::SingularCurvePoint { t });
        }
        let geo = settings.build(surface, p, 1)?;
        let s = surface.chart_series(p, 2, settings.mode, surface.fd_step(2))?;
        let part = |i, j| [s[0].partial(i, j), s[1].partial(i, j), s[2].partial(i, j)];
        Ok(Self {
            t,
            weight,
            p,
            vel,
            acc,
            geo,
            chart: [part(1, 0), part(0, 1), part(2, 0), part(1, 1), part(0, 2)],
        })
    }

    /// Tangent components `(ω₁(ṗ), ω₂(ṗ))` in the frame.
    pub fn frame_tangent(&self) -> [f64; 2] {
        [apply_t(&self.geo.w1, self.vel), apply_t(&self.geo.w2, self.vel)]
    }

    /// `|dx̄/dt|`.
    pub fn speed(&self) -> f64 {
        let [t1, t2] = self.frame_tangent();
        t1.hypot(t2)
    }

    /// Angle of the tangent against `ε₁`, in `(−π, π]`.
    pub fn phi(&self) -> f64 {
        let [t1, t2] = self.frame_tangent();
        t2.atan2(t1)
    }

    pub fn dphi_dt(&self) -> f64 {
        let g = &self.geo;
        let [t1, t2] = self.frame_tangent();
        let d = |w: &crate::forms::Form1<crate::taylor::Taylor>| {
            along(&w.du, self.vel) * self.vel[0] + along(&w.dv, self.vel) * self.vel[1] + apply_t(w, self.acc)
        };
        let (d1, d2) = (d(&g.w1), d(&g.w2));
        (t1 * d2 - t2 * d1) / (t1 * t1 + t2 * t2)
    }

    /// `η(ṗ)` for a chart 1-form `η`.
    pub fn rate(&self, eta: &crate::forms::Form1<crate::taylor::Taylor>) -> f64 {
        apply_t(eta, self.vel)
    }

    /// `ω(ṗ)` for `ω = a₁ω₁ + a₂ω₂`.
    pub fn frame_rate(&self, a1: f64, a2: f64) -> f64 {
        let [t1, t2] = self.frame_tangent();
        a1 * t1 + a2 * t2
    }

    /// `ω₁₂(ṗ)`.
    pub fn w12_rate(&self) -> f64 {
        apply_t(&self.geo.w12, self.vel)
    }

    /// Liouville: `1/ρ_g = dφ/ds + ω₁₂/ds`.
    pub fn kg_liouville(&self) -> f64 {
        (self.dphi_dt() + self.w12_rate()) / self.speed()
    }

    /// `(∇₁φ + q₁) cos φ + (∇₂φ + q₂) sin φ` using the tangential
    /// derivative of `φ`.
    pub fn kg_theta(&self) -> f64 {
        let phi = self.phi();
        let (s, c) = phi.sin_cos();
        let dphi_ds = self.dphi_dt() / self.speed();
        dphi_ds + self.geo.q1.value() * c + self.geo.q2.value() * s
    }

    /// `⟨T′, n × T⟩ / |T|³` from chart partials.
    pub fn kg_ambient(&self) -> f64 {
        let [xu, xv, xuu, xuv, xvv] = self.chart;
        let [ud, vd] = self.vel;
        let [ua, va] = self.acc;
        let tv: [f64; 3] = std::array::from_fn(|i| xu[i] * ud + xv[i] * vd);
        let ta: [f64; 3] = std::array::from_fn(|i| {
            xuu[i] * ud * ud + 2.0 * xuv[i] * ud * vd + xvv[i] * vd * vd + xu[i] * ua + xv[i] * va
        });
        let n = cross(xu, xv);
        let nn = norm(n);
        let n = n.map(|c| c / nn);
        let nt = cross(n, tv);
        let sp = norm(tv);
        dot(ta, nt) / (sp * sp * sp)
    }

    /// Field value at the node.
    pub fn field(&self, f: &ScalarField) -> f64 {
        f.eval(&self.geo).value()
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// Turning angle of the tangent at a joint between consecutive pieces.
#[derive(Debug, Clone)]
pub struct Corner {
    pub p: ParamPoint,
    pub angle: f64,
    pub geo: LocalGeometry,
}

/// Quadrature nodes and corners of a set of curves at one panel count.
#[derive(Debug, Clone)]
pub struct BoundaryNodes {
    pub nodes: Vec<CurveNode>,
    pub corners: Vec<Corner>,
}

impl BoundaryNodes {
    pub fn build(
        surface: &SurfacePatch,
        curves: &[SurfaceCurve],
        settings: &GeometrySettings,
        panels: usize,
    ) -> Result<Self> {
        let mut specs = Vec::new();
        for curve in curves {
            for piece in &curve.pieces {
                for (t, w) in composite(0.0, 1.0, panels) {
                    specs.push((*piece, t, w));
                }
            }
        }
        let nodes = crate::exec::try_map(&specs, |(piece, t, w)| CurveNode::new(surface, settings, piece, *t, *w))?;
        let mut corners = Vec::new();
        for curve in curves {
            let n = curve.pieces.len();
            let joints = if curve.closed { n } else { n.saturating_sub(1) };
            for i in 0..joints {
                let (p_end, v_end, _) = curve.pieces[i].eval(1.0);
                let (p_next, v_next, _) = curve.pieces[(i + 1) % n].eval(0.0);
                let g_end = settings.build(surface, p_end, 0)?;
                let g_next = settings.build(surface, p_next, 0)?;
                let ang = |g: &LocalGeometry, v: [f64; 2]| {
                    let t1 = apply_t(&g.w1, v);
                    let t2 = apply_t(&g.w2, v);
                    t2.atan2(t1)
                };
                let angle = wrap_angle(ang(&g_next, v_next) - ang(&g_end, v_end));
                if angle.abs() > 1e-14 {
                    corners.push(Corner {
                        p: p_end,
                        angle,
                        geo: g_end,
                    });
                }
            }
        }
        Ok(Self { nodes, corners })
    }

    /// `Σ w · density(node)` in a fixed order.
    pub fn integrate(&self, density: impl Fn(&CurveNode) -> f64 + Sync) -> f64 {
        let terms = crate::exec::map(&self.nodes, |n| n.weight * density(n));
        pairwise_sum(&terms)
    }

    /// `Σ weight(corner) · angle`.
    pub fn corner_sum(&self, weight: impl Fn(&Corner) -> f64) -> f64 {
        pairwise_sum(&self.corners.iter().map(|c| weight(c) * c.angle).collect::<Vec<_>>())
    }
}

/// Point data of a curve at parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveFrameData {
    /// Arclength from `t = 0`.
    pub s: f64,
    pub phi: f64,
    /// Liouville geodesic curvature.
    pub kg: f64,
    /// Same quantity through `Θ(cos φ, sin φ)`.
    pub kg_theta: f64,
    /// Independent value from the ambient acceleration.
    pub kg_ambient: f64,
    /// `(r, θ)` from `∇φ + q = r(cos θ, sin θ)` when an angle field is given.
    pub r: Option<f64>,
    pub theta: Option<f64>,
}

/// Frame data of `curve` at `t`; `φ` is unwrapped continuously from
/// `t = 0`, and `(r, θ)` use the optional angle field.
pub fn curve_frame(
    curve: &SurfaceCurve,
    surface: &SurfacePatch,
    settings: &GeometrySettings,
    t: f64,
    phi_field: Option<&ScalarField>,
) -> Result<CurveFrameData> {
    let n = curve.pieces.len();
    let global = |tt: f64| -> Result<CurveNode> {
        let sn = (tt.clamp(0.0, 1.0) * n as f64).min(n as f64 - 1e-12);
        let i = sn.floor() as usize;
        CurveNode::new(surface, settings, &curve.pieces[i], sn - i as f64, 0.0)
    };
    let node = global(t)?;
    let mut phi = global(0.0)?.phi();
    let mut prev = phi;
    let mut s = 0.0;
    for (tt, w) in composite(0.0, t, 8 * n) {
        let nd = global(tt)?;
        s += w * nd.speed() * n as f64;
        let raw = nd.phi();
        phi += wrap_angle(raw - prev);
        prev = raw;
    }
    phi += wrap_angle(node.phi() - prev);
    let (r, theta) = match phi_field {
        Some(f) => {
            let pj = f.eval(&node.geo);
            let [g1, g2] = node.geo.grad(&pj);
            let x = g1.value() + node.geo.q1.value();
            let y = g2.value() + node.geo.q2.value();
            (Some(x.hypot(y)), Some(y.atan2(x)))
        }
        None => (None, None),
    };
    Ok(CurveFrameData {
        s: if t == 0.0 { 0.0 } else { s },
        phi,
        kg: node.kg_liouville(),
        kg_theta: node.kg_theta(),
        kg_ambient: node.kg_ambient(),
        r,
        theta,
    })
}

/// Integrand kinds for [`line_integral`].
pub enum LineIntegrand<'a> {
    /// `∮ f ds`.
    Ds(&'a ScalarField),
    /// `∮ f dφ`, including corner turning angles.
    Dphi(&'a ScalarField),
    /// `∮ η` for a 1-form built from the node geometry.
    Form(&'a (dyn Fn(&LocalGeometry) -> crate::forms::Form1<crate::taylor::Taylor> + Sync)),
    /// `∮ f η`.
    ScaledForm(
        &'a ScalarField,
        &'a (dyn Fn(&LocalGeometry) -> crate::forms::Form1<crate::taylor::Taylor> + Sync),
    ),
}

impl LineIntegrand<'_> {
    pub fn of(&self, b: &BoundaryNodes) -> f64 {
        match self {
            LineIntegrand::Ds(f) => b.integrate(|n| n.field(f) * n.speed()),
            LineIntegrand::Dphi(f) => {
                b.integrate(|n| n.field(f) * n.dphi_dt()) + b.corner_sum(|c| f.eval(&c.geo).value())
            }
            LineIntegrand::Form(eta) => b.integrate(|n| apply_t(&eta(&n.geo), n.vel)),
            LineIntegrand::ScaledForm(f, eta) => b.integrate(|n| n.field(f) * apply_t(&eta(&n.geo), n.vel)),
        }
    }
}

/// Composite Gauss-Legendre line integral, accepted once doubling the
/// panel count changes it by less than `gate`.
pub fn line_integral(
    integrand: &LineIntegrand,
    curves: &[SurfaceCurve],
    surface: &SurfacePatch,
    settings: &GeometrySettings,
    panels: usize,
    gate: f64,
) -> Result<f64> {
    let coarse = integrand.of(&BoundaryNodes::build(surface, curves, settings, panels)?);
    let fine = integrand.of(&BoundaryNodes::build(surface, curves, settings, 2 * panels)?);
    if (coarse - fine).abs() > gate * fine.abs().max(1.0) {
        return Err(Error::QuadratureNonConvergence { coarse, fine });
    }
    Ok(fine)
}
