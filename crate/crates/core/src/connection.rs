//! Curvature by three routes, structure equations and Mainardi-Codazzi.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::LocalGeometry;
use crate::operators::{self, geometry_at, q_tilde, theta};
use crate::surface::{ParamPoint, SurfacePatch};
use crate::taylor::Taylor;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureBundle {
    #[serde(rename = "K_extrinsic")]
    pub k_extrinsic: f64,
    #[serde(rename = "K_intrinsic")]
    pub k_intrinsic: f64,
    #[serde(rename = "K_form")]
    pub k_form: f64,
    pub q1: f64,
    pub q2: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `None` at points where `|K|` is below the floor.
    pub qt1: Option<f64>,
    pub qt2: Option<f64>,
}

impl CurvatureBundle {
    pub fn from_geometry(g: &LocalGeometry) -> Self {
        let qt = q_tilde(g).ok();
        Self {
            k_extrinsic: g.k.value(),
            k_intrinsic: operators::k_intrinsic(g).value(),
            k_form: operators::k_form(g).value(),
            q1: g.q1.value(),
            q2: g.q2.value(),
            a: g.a.value(),
            b: g.b.value(),
            c: g.c.value(),
            qt1: qt.map(|q| q[0].value()),
            qt2: qt.map(|q| q[1].value()),
        }
    }

    pub fn q_tilde(&self) -> Result<(f64, f64)> {
        match (self.qt1, self.qt2) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::FlatPointForImage { k: self.k_extrinsic }),
        }
    }

    pub fn max_route_gap(&self) -> f64 {
        (self.k_extrinsic - self.k_intrinsic)
            .abs()
            .max((self.k_extrinsic - self.k_form).abs())
    }
}

pub fn curvature_bundle(surface: &SurfacePatch, p: ParamPoint) -> Result<CurvatureBundle> {
    Ok(CurvatureBundle::from_geometry(&geometry_at(surface, p)?))
}

/// The six structure equations as `ω₁∧ω₂` ratios, in the order
/// `dω₁`, `dω₂`, symmetry, Gauss, and the two Codazzi forms.
pub fn structure_residuals(g: &LocalGeometry) -> [Taylor; 6] {
    [
        g.d_ratio(&g.w1) - g.wedge_ratio(&g.w12, &g.w2),
        g.d_ratio(&g.w2) + g.wedge_ratio(&g.w12, &g.w1),
        g.wedge_ratio(&g.w1, &g.w31) + g.wedge_ratio(&g.w2, &g.w32),
        g.d_ratio(&g.w12) + g.wedge_ratio(&g.w31, &g.w32),
        g.d_ratio(&g.w31) - g.wedge_ratio(&g.w12, &g.w32),
        g.d_ratio(&g.w32) + g.wedge_ratio(&g.w12, &g.w31),
    ]
}

pub fn mainardi_codazzi(g: &LocalGeometry) -> [Taylor; 2] {
    let ga = g.grad(&g.a);
    let gb = g.grad(&g.b);
    let gc = g.grad(&g.c);
    let amc = g.a - g.c;
    [
        gb[0] - ga[1] + g.b * g.q2 * 2.0 + g.q1 * amc,
        gc[0] - gb[1] + g.b * g.q1 * 2.0 - g.q2 * amc,
    ]
}

/// `Θ(a, b) + q̃₁K` and `Θ(b, c) + q̃₂K`.
pub fn theta_mc(g: &LocalGeometry) -> Result<[Taylor; 2]> {
    let [qt1, qt2] = q_tilde(g)?;
    Ok([theta(g, &g.a, &g.b) + qt1 * g.k, theta(g, &g.b, &g.c) + qt2 * g.k])
}

/// `ω₁₂ − (q̃₁ω₃₁ + q̃₂ω₃₂)` on chart coefficients.
pub fn lemma2_residual(g: &LocalGeometry) -> Result<[Taylor; 2]> {
    let [qt1, qt2] = q_tilde(g)?;
    let tilde = g.w31.scale(&qt1) + g.w32.scale(&qt2);
    let d = g.w12 - tilde;
    Ok([d.du, d.dv])
}

pub fn mainardi_codazzi_residuals(surface: &SurfacePatch, p: ParamPoint) -> Result<(f64, f64)> {
    let [r1, r2] = mainardi_codazzi(&geometry_at(surface, p)?);
    Ok((r1.value(), r2.value()))
}

pub fn theta_mc_residuals(surface: &SurfacePatch, p: ParamPoint) -> Result<(f64, f64)> {
    let [r1, r2] = theta_mc(&geometry_at(surface, p)?)?;
    Ok((r1.value(), r2.value()))
}
