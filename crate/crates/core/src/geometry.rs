//! Moving frame, coframe, connection and second-form jets at a point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fd;
use crate::forms::Form1;
use crate::surface::{DerivativeMode, ParamPoint, SurfacePatch};
use crate::taylor::{cross3, dot3, du3, dv3, scale3, sub3, truncate3, value3, TVec3, Taylor};

/// Frame gauge options: a constant rotation of `(ε₁, ε₂)` and an optional
/// flip of the normal.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct FrameOptions {
    pub gauge_angle: f64,
    pub flip_normal: bool,
}

impl FrameOptions {
    pub fn canonical() -> Self {
        Self::default()
    }

    pub fn rotated(angle: f64) -> Self {
        Self {
            gauge_angle: angle,
            flip_normal: false,
        }
    }

    pub fn flipped(self) -> Self {
        Self {
            flip_normal: !self.flip_normal,
            ..self
        }
    }
}

/// Step controls for the nested finite-difference build.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdSteps {
    /// Step of the chart stencil that yields point values.
    pub inner: f64,
    /// Step of the stencil applied to those point values.
    pub outer: f64,
}

/// Outer step at grid resolution `n`, as a multiple of the length scale.
pub const FD_OUTER_FACTOR: f64 = 0.125;

impl FdSteps {
    pub fn for_surface(surface: &SurfacePatch, resolution: usize) -> Self {
        Self {
            inner: surface.fd_step(4),
            outer: FD_OUTER_FACTOR * surface.length_scale() / resolution.max(1) as f64,
        }
    }
}

/// Everything that selects how a geometry is computed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometrySettings {
    pub mode: DerivativeMode,
    pub frame: FrameOptions,
    pub steps: FdSteps,
}

impl GeometrySettings {
    pub fn new(surface: &SurfacePatch, mode: DerivativeMode, resolution: usize) -> Self {
        Self {
            mode,
            frame: FrameOptions::canonical(),
            steps: FdSteps::for_surface(surface, resolution),
        }
    }

    pub fn with_frame(self, frame: FrameOptions) -> Self {
        Self { frame, ..self }
    }

    pub fn build(&self, surface: &SurfacePatch, p: ParamPoint, deg: usize) -> Result<LocalGeometry> {
        LocalGeometry::build(surface, p, deg, self.mode, self.frame, self.steps)
    }
}

/// All frame quantities as Taylor jets of a common degree about `p`.
#[derive(Debug, Clone)]
pub struct LocalGeometry {
    pub p: ParamPoint,
    pub x: TVec3,
    pub e: [TVec3; 3],
    pub w1: Form1<Taylor>,
    pub w2: Form1<Taylor>,
    /// Coefficient of `ω₁∧ω₂` on `du∧dv`.
    pub area: Taylor,
    pub q1: Taylor,
    pub q2: Taylor,
    pub a: Taylor,
    pub b: Taylor,
    pub c: Taylor,
    /// `b` as read from `ω₃₂`; equals `b` on a symmetric second form.
    pub b_alt: Taylor,
    pub k: Taylor,
    pub w12: Form1<Taylor>,
    pub w31: Form1<Taylor>,
    pub w32: Form1<Taylor>,
}

const PACKED: usize = 30;

fn unit(v: &TVec3) -> TVec3 {
    let n = dot3(v, v).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

impl LocalGeometry {
    pub fn deg(&self) -> usize {
        self.k.deg()
    }

    /// Builds the frame algebraically from a chart series of degree
    /// `deg + 2` centred at `p`.
    pub fn from_chart(surface: &SurfacePatch, p: ParamPoint, s: &TVec3, opts: FrameOptions) -> Result<Self> {
        let n = s[0].deg();
        if n < 2 {
            return Err(Error::DifferentiationFailure(
                "frame needs a chart series of degree at least 2".into(),
            ));
        }
        let g = n - 2;
        let xu = du3(s);
        let xv = dv3(s);
        surface.check_regular(p, value3(&xu), value3(&xv))?;
        let f1 = unit(&xu);
        let f2 = unit(&sub3(&xv, &scale3(&f1, dot3(&f1, &xv))));
        let (e1, e2): (TVec3, TVec3) = if opts.gauge_angle == 0.0 {
            (f1, f2)
        } else {
            let (sn, cs) = opts.gauge_angle.sin_cos();
            (
                std::array::from_fn(|i| f1[i] * cs + f2[i] * sn),
                std::array::from_fn(|i| f2[i] * cs - f1[i] * sn),
            )
        };
        let mut e3 = cross3(&e1, &e2);
        if opts.flip_normal {
            e3 = e3.map(|t| -t);
        }
        let w1 = Form1::new(dot3(&xu, &e1), dot3(&xv, &e1));
        let w2 = Form1::new(dot3(&xu, &e2), dot3(&xv, &e2));
        let area = w1.du * w2.dv - w1.dv * w2.du;
        if area.value() <= 0.0 {
            return Err(Error::DegenerateCoframe { det: area.value() });
        }
        let q1 = w1.ext_d() / area;
        let q2 = w2.ext_d() / area;
        let e1u = du3(&e1);
        let e1v = dv3(&e1);
        let e3u = du3(&e3);
        let e3v = dv3(&e3);
        let w12 = Form1::new(dot3(&e1u, &e2), dot3(&e1v, &e2));
        let w31 = Form1::new(dot3(&e3u, &e1), dot3(&e3v, &e1));
        let w32 = Form1::new(dot3(&e3u, &e2), dot3(&e3v, &e2));
        let solve = |f: &Form1<Taylor>| {
            (
                (f.du * w2.dv - f.dv * w2.du) / area,
                (f.dv * w1.du - f.du * w1.dv) / area,
            )
        };
        let (ma, mb) = solve(&w31);
        let (mb_alt, mc) = solve(&w32);
        let (a, b, c, b_alt) = (-ma, -mb, -mc, -mb_alt);
        let k = a * c - b * b;
        let t = |x: Taylor| x.truncate(g);
        let tf = |f: Form1<Taylor>| Form1::new(t(f.du), t(f.dv));
        Ok(Self {
            p,
            x: truncate3(s, g),
            e: [truncate3(&e1, g), truncate3(&e2, g), truncate3(&e3, g)],
            w1: tf(w1),
            w2: tf(w2),
            area: t(area),
            q1: t(q1),
            q2: t(q2),
            a: t(a),
            b: t(b),
            c: t(c),
            b_alt: t(b_alt),
            k: t(k),
            w12: tf(w12),
            w31: tf(w31),
            w32: tf(w32),
        })
    }

    /// Geometry of degree `deg` at `p` in the given derivative mode. The
    /// finite-difference mode differentiates point values that were
    /// themselves obtained by a chart stencil.
    pub fn build(
        surface: &SurfacePatch,
        p: ParamPoint,
        deg: usize,
        mode: DerivativeMode,
        opts: FrameOptions,
        steps: FdSteps,
    ) -> Result<Self> {
        surface.check_domain(p)?;
        match surface.effective_mode(mode) {
            DerivativeMode::FiniteDifference if deg > 0 => Self::build_nested(surface, p, deg, opts, steps),
            m => {
                let s = surface.chart_series(p, deg + 2, m, steps.inner)?;
                Self::from_chart(surface, p, &s, opts)
            }
        }
    }

    fn build_nested(
        surface: &SurfacePatch,
        p: ParamPoint,
        deg: usize,
        opts: FrameOptions,
        steps: FdSteps,
    ) -> Result<Self> {
        let mut failure = None;
        let jets = fd::jets_from_samples::<PACKED>(deg, steps.outer, |du, dv| {
            let q = ParamPoint::new(p.u + du, p.v + dv);
            let point = surface
                .chart_series(q, 2, DerivativeMode::FiniteDifference, steps.inner)
                .and_then(|s| Self::from_chart(surface, q, &s, opts));
            match point {
                Ok(g) => g.pack(),
                Err(e) => {
                    failure.get_or_insert(e);
                    [f64::NAN; PACKED]
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(Self::unpack(p, &jets))
    }

    fn pack(&self) -> [f64; PACKED] {
        let mut out = [0.0; PACKED];
        let vals = self.x.iter().chain(self.e.iter().flatten()).chain([
            &self.w1.du,
            &self.w1.dv,
            &self.w2.du,
            &self.w2.dv,
            &self.w12.du,
            &self.w12.dv,
            &self.w31.du,
            &self.w31.dv,
            &self.w32.du,
            &self.w32.dv,
            &self.q1,
            &self.q2,
            &self.a,
            &self.b,
            &self.c,
            &self.b_alt,
            &self.area,
            &self.k,
        ]);
        for (o, t) in out.iter_mut().zip(vals) {
            *o = t.value();
        }
        out
    }

    fn unpack(p: ParamPoint, j: &[Taylor; PACKED]) -> Self {
        let v3 = |i: usize| [j[i], j[i + 1], j[i + 2]];
        let f = |i: usize| Form1::new(j[i], j[i + 1]);
        Self {
            p,
            x: v3(0),
            e: [v3(3), v3(6), v3(9)],
            w1: f(12),
            w2: f(14),
            w12: f(16),
            w31: f(18),
            w32: f(20),
            q1: j[22],
            q2: j[23],
            a: j[24],
            b: j[25],
            c: j[26],
            b_alt: j[27],
            area: j[28],
            k: j[29],
        }
    }

    /// Chart coordinate variables matching this geometry, one degree
    /// higher so that exact fields lose nothing against the frame.
    pub fn coords(&self) -> (Taylor, Taylor) {
        let d = (self.deg() + 1).min(crate::taylor::MAX_DEGREE);
        (Taylor::var_u(self.p.u, d), Taylor::var_v(self.p.v, d))
    }

    /// `(a₁, a₂)` with `ω = a₁ω₁ + a₂ω₂`.
    pub fn to_frame(&self, f: &Form1<Taylor>) -> [Taylor; 2] {
        [
            (f.du * self.w2.dv - f.dv * self.w2.du) / self.area,
            (f.dv * self.w1.du - f.du * self.w1.dv) / self.area,
        ]
    }

    /// `a₁ω₁ + a₂ω₂` in chart coefficients.
    pub fn from_frame(&self, a1: &Taylor, a2: &Taylor) -> Form1<Taylor> {
        Form1::new(*a1 * self.w1.du + *a2 * self.w2.du, *a1 * self.w1.dv + *a2 * self.w2.dv)
    }

    /// Pfaff gradient `(∇₁f, ∇₂f)`.
    pub fn grad(&self, f: &Taylor) -> [Taylor; 2] {
        self.to_frame(&Form1::new(f.du(), f.dv()))
    }

    /// `dη / (ω₁∧ω₂)` for a chart 1-form `η`.
    pub fn d_ratio(&self, f: &Form1<Taylor>) -> Taylor {
        f.ext_d() / self.area
    }

    /// `ω₁∧ω₂`-ratio of the wedge of two chart 1-forms.
    pub fn wedge_ratio(&self, f: &Form1<Taylor>, g: &Form1<Taylor>) -> Taylor {
        f.wedge(g) / self.area
    }

    /// Frame coefficients `(q₁, q₂)` of `ω₁₂` read off the connection form.
    pub fn w12_frame(&self) -> [Taylor; 2] {
        self.to_frame(&self.w12)
    }
}

/// Point values of the moving frame and its scalars.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameData {
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    pub e3: [f64; 3],
    pub omega1: Form1<f64>,
    pub omega2: Form1<f64>,
    pub q1: f64,
    pub q2: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    #[serde(rename = "K")]
    pub k: f64,
}

impl FrameData {
    pub fn from_geometry(g: &LocalGeometry) -> Self {
        Self {
            e1: value3(&g.e[0]),
            e2: value3(&g.e[1]),
            e3: value3(&g.e[2]),
            omega1: g.w1.value(),
            omega2: g.w2.value(),
            q1: g.q1.value(),
            q2: g.q2.value(),
            a: g.a.value(),
            b: g.b.value(),
            c: g.c.value(),
            k: g.k.value(),
        }
    }

    /// Determinant of the coframe matrix, the `ω₁∧ω₂` coefficient.
    pub fn coframe_det(&self) -> f64 {
        self.omega1.du * self.omega2.dv - self.omega1.dv * self.omega2.du
    }
}

/// Canonical frame at `p` in the patch's derivative mode.
pub fn frame_at(surface: &SurfacePatch, p: ParamPoint) -> Result<FrameData> {
    let g = LocalGeometry::build(
        surface,
        p,
        0,
        surface.derivative_mode,
        FrameOptions::canonical(),
        FdSteps::for_surface(surface, 1),
    )?;
    Ok(FrameData::from_geometry(&g))
}
