//! Scalar operators: Pfaff derivatives, Δ₂, Π₂, Θ, D_ω and the spherical
//! image family.
//!
//! The functions on [`LocalGeometry`] act on jets and return jets, so they
//! compose; every derivative costs one degree. The point-level wrappers at
//! the bottom build a degree-2 geometry and return values.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::forms::Form1;
use crate::geometry::{FdSteps, FrameOptions, LocalGeometry};
use crate::surface::{ParamPoint, Rect, SurfacePatch};
use crate::taylor::{dot3, du3, dv3, Taylor};
use crate::tolerances::K_FLOOR;

/// Frame coefficients of `ω₃₁ = −aω₁ − bω₂`.
pub fn w31_coeffs(g: &LocalGeometry) -> [Taylor; 2] {
    [-g.a, -g.b]
}

/// Frame coefficients of `ω₃₂ = −bω₁ − cω₂`.
pub fn w32_coeffs(g: &LocalGeometry) -> [Taylor; 2] {
    [-g.b, -g.c]
}

pub fn theta(g: &LocalGeometry, a: &Taylor, b: &Taylor) -> Taylor {
    let ga = g.grad(a);
    let gb = g.grad(b);
    gb[0] - ga[1] + g.q1 * *a + g.q2 * *b
}

/// `D_ω f = Θ(a₁f, a₂f)`.
pub fn d_omega(g: &LocalGeometry, f: &Taylor, a1: &Taylor, a2: &Taylor) -> Taylor {
    theta(g, &(*a1 * *f), &(*a2 * *f))
}

/// `|∇₁f ∇₂f; a₁ a₂| + Θ(a₁, a₂) f`.
pub fn d_omega_det(g: &LocalGeometry, f: &Taylor, a1: &Taylor, a2: &Taylor) -> Taylor {
    let gf = g.grad(f);
    gf[0] * *a2 - gf[1] * *a1 + theta(g, a1, a2) * *f
}

/// `d(fω)/(ω₁∧ω₂)` computed on chart coefficients.
pub fn d_f_omega(g: &LocalGeometry, f: &Taylor, a1: &Taylor, a2: &Taylor) -> Taylor {
    g.d_ratio(&g.from_frame(a1, a2).scale(f))
}

pub fn commutation(g: &LocalGeometry, f: &Taylor) -> Taylor {
    let [g1, g2] = g.grad(f);
    let d1 = g.grad(&g1);
    let d2 = g.grad(&g2);
    d2[0] - d1[1] + g.q1 * g1 + g.q2 * g2
}

pub fn beltrami_expansion(g: &LocalGeometry, f: &Taylor) -> Taylor {
    let [g1, g2] = g.grad(f);
    g.grad(&g1)[0] + g.grad(&g2)[1] + g.q2 * g1 - g.q1 * g2
}

/// `d⟨(df∧dx̄)/(ω₁∧ω₂), dx̄⟩/(ω₁∧ω₂)` in ambient coordinates.
pub fn beltrami_form_ratio(g: &LocalGeometry, f: &Taylor) -> Taylor {
    let xu = du3(&g.x);
    let xv = dv3(&g.x);
    let (fu, fv) = (f.du(), f.dv());
    let vec: [Taylor; 3] = std::array::from_fn(|i| (fu * xv[i] - fv * xu[i]) / g.area);
    g.d_ratio(&Form1::new(dot3(&vec, &xu), dot3(&vec, &xv)))
}

/// `Θ(−∇₂f, ∇₁f)`.
pub fn beltrami_theta(g: &LocalGeometry, f: &Taylor) -> Taylor {
    let [g1, g2] = g.grad(f);
    theta(g, &(-g2), &g1)
}

pub fn pi2(g: &LocalGeometry, f: &Taylor) -> Taylor {
    let [g1, g2] = g.grad(f);
    g.q2 * g1 - g.q1 * g2 - g.k * *f
}

/// `(∇₁Φ + ∇₂Φ*, ∇₂Φ − ∇₁Φ*)`.
pub fn analytic_pair(g: &LocalGeometry, phi: &Taylor, phi_star: &Taylor) -> [Taylor; 2] {
    let a = g.grad(phi);
    let b = g.grad(phi_star);
    [a[0] + b[1], a[1] - b[0]]
}

pub fn check_k(g: &LocalGeometry) -> Result<()> {
    let k = g.k.value();
    if k.abs() < K_FLOOR {
        Err(Error::FlatPointForImage { k })
    } else {
        Ok(())
    }
}

/// `(q̃₁, q̃₂) = ((q₂b − q₁c)/K, (q₁b − q₂a)/K)`.
pub fn q_tilde(g: &LocalGeometry) -> Result<[Taylor; 2]> {
    check_k(g)?;
    Ok([(g.q2 * g.b - g.q1 * g.c) / g.k, (g.q1 * g.b - g.q2 * g.a) / g.k])
}

/// `(dω₃₁, dω₃₂)/(ω₃₁∧ω₃₂)` read directly from the forms.
pub fn q_tilde_forms(g: &LocalGeometry) -> Result<[Taylor; 2]> {
    check_k(g)?;
    let den = g.w31.wedge(&g.w32);
    Ok([g.w31.ext_d() / den, g.w32.ext_d() / den])
}

/// Coefficients on `(ω₃₁, ω₃₂)` of the form with frame coefficients
/// `(a₁, a₂)`.
pub fn tilde_coeffs(g: &LocalGeometry, a1: &Taylor, a2: &Taylor) -> Result<[Taylor; 2]> {
    check_k(g)?;
    Ok([-(*a1 * g.c - *a2 * g.b) / g.k, (*a1 * g.b - *a2 * g.a) / g.k])
}

/// Gradient with respect to the `(ω₃₁, ω₃₂)` coframe.
pub fn tilde_grad(g: &LocalGeometry, f: &Taylor) -> Result<[Taylor; 2]> {
    let [g1, g2] = g.grad(f);
    tilde_coeffs(g, &g1, &g2)
}

/// `∇̃₁A₂ − ∇̃₂A₁ + q̃₁A₁ + q̃₂A₂`.
pub fn theta_iii(g: &LocalGeometry, a1: &Taylor, a2: &Taylor) -> Result<Taylor> {
    let t1 = tilde_grad(g, a1)?;
    let t2 = tilde_grad(g, a2)?;
    let [qt1, qt2] = q_tilde(g)?;
    Ok(t2[0] - t1[1] + qt1 * *a1 + qt2 * *a2)
}

/// `(D_{ω₃₁}A₁ + D_{ω₃₂}A₂)/K`.
pub fn theta_iii_via_d(g: &LocalGeometry, a1: &Taylor, a2: &Taylor) -> Result<Taylor> {
    check_k(g)?;
    let [p1, p2] = w31_coeffs(g);
    let [r1, r2] = w32_coeffs(g);
    Ok((d_omega(g, a1, &p1, &p2) + d_omega(g, a2, &r1, &r2)) / g.k)
}

/// `d(A₁ω₃₁ + A₂ω₃₂)/(ω₃₁∧ω₃₂)` on chart coefficients.
pub fn theta_iii_forms(g: &LocalGeometry, a1: &Taylor, a2: &Taylor) -> Result<Taylor> {
    check_k(g)?;
    let form = g.w31.scale(a1) + g.w32.scale(a2);
    Ok(form.ext_d() / g.w31.wedge(&g.w32))
}

pub fn d_iii(g: &LocalGeometry, f: &Taylor, a1: &Taylor, a2: &Taylor) -> Result<Taylor> {
    theta_iii(g, &(*a1 * *f), &(*a2 * *f))
}

/// Determinant form of `D^III`.
pub fn d_iii_det(g: &LocalGeometry, f: &Taylor, a1: &Taylor, a2: &Taylor) -> Result<Taylor> {
    let [t1, t2] = tilde_grad(g, f)?;
    Ok(t1 * *a2 - t2 * *a1 + theta_iii(g, a1, a2)? * *f)
}

/// Expanded form of `D^III` in the `(ω₁, ω₂)` gradient.
pub fn d_iii_expanded(g: &LocalGeometry, f: &Taylor, a1: &Taylor, a2: &Taylor) -> Result<Taylor> {
    check_k(g)?;
    let [g1, g2] = g.grad(f);
    let m1 = g1 * (-g.b) - g2 * (-g.a);
    let m2 = g1 * (-g.c) - g2 * (-g.b);
    Ok(*a1 / g.k * m1 + *a2 / g.k * m2 + theta_iii(g, a1, a2)? * *f)
}

/// Intrinsic curvature `∇₂q₁ − ∇₁q₂ − q₁² − q₂²`.
pub fn k_intrinsic(g: &LocalGeometry) -> Taylor {
    g.grad(&g.q1)[1] - g.grad(&g.q2)[0] - g.q1 * g.q1 - g.q2 * g.q2
}

/// `−dω₁₂/(ω₁∧ω₂)`.
pub fn k_form(g: &LocalGeometry) -> Taylor {
    -g.d_ratio(&g.w12)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PfaffGradient {
    pub g1: f64,
    pub g2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BeltramiRoute {
    Expansion,
    FormRatio,
}

/// Resolution used to pick the outer finite-difference step for the
/// point-level wrappers.
pub const POINT_RESOLUTION: usize = 64;

/// Degree-2 geometry at `p` in the patch's own mode.
pub fn geometry_at(surface: &SurfacePatch, p: ParamPoint) -> Result<LocalGeometry> {
    LocalGeometry::build(
        surface,
        p,
        2,
        surface.derivative_mode,
        FrameOptions::canonical(),
        FdSteps::for_surface(surface, POINT_RESOLUTION),
    )
}

pub fn pfaff_grad(f: &ScalarField, surface: &SurfacePatch, p: ParamPoint) -> Result<PfaffGradient> {
    let g = geometry_at(surface, p)?;
    let [g1, g2] = g.grad(&f.eval(&g));
    Ok(PfaffGradient {
        g1: g1.value(),
        g2: g2.value(),
    })
}

pub fn commutation_residual(f: &ScalarField, surface: &SurfacePatch, p: ParamPoint) -> Result<f64> {
    let g = geometry_at(surface, p)?;
    Ok(commutation(&g, &f.eval(&g)).value().abs())
}

pub fn beltrami(f: &ScalarField, surface: &SurfacePatch, p: ParamPoint, route: BeltramiRoute) -> Result<f64> {
    let g = geometry_at(surface, p)?;
    let fj = f.eval(&g);
    Ok(match route {
        BeltramiRoute::Expansion => beltrami_expansion(&g, &fj),
        BeltramiRoute::FormRatio => beltrami_form_ratio(&g, &fj),
    }
    .value())
}

/// `max |Δ₂f| < tol` over an `n × n` grid of `rect`.
pub fn is_harmonic(f: &ScalarField, surface: &SurfacePatch, rect: &Rect, n: usize, tol: f64) -> Result<bool> {
    for p in rect.grid(n, n) {
        if beltrami(f, surface, p, BeltramiRoute::Expansion)?.abs() >= tol {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn analytic_pair_residual(
    phi: &ScalarField,
    phi_star: &ScalarField,
    surface: &SurfacePatch,
    p: ParamPoint,
) -> Result<(f64, f64)> {
    let g = geometry_at(surface, p)?;
    let [r1, r2] = analytic_pair(&g, &phi.eval(&g), &phi_star.eval(&g));
    Ok((r1.value(), r2.value()))
}

pub fn pi2_at(f: &ScalarField, surface: &SurfacePatch, p: ParamPoint) -> Result<f64> {
    let g = geometry_at(surface, p)?;
    Ok(pi2(&g, &f.eval(&g)).value())
}

pub fn theta_at(a: &ScalarField, b: &ScalarField, surface: &SurfacePatch, p: ParamPoint) -> Result<f64> {
    let g = geometry_at(surface, p)?;
    Ok(theta(&g, &a.eval(&g), &b.eval(&g)).value())
}

/// `D_ω f` for `ω = a₁ω₁ + a₂ω₂` with coefficient fields.
pub fn d_omega_at(
    f: &ScalarField,
    a1: &ScalarField,
    a2: &ScalarField,
    surface: &SurfacePatch,
    p: ParamPoint,
) -> Result<f64> {
    let g = geometry_at(surface, p)?;
    Ok(d_omega(&g, &f.eval(&g), &a1.eval(&g), &a2.eval(&g)).value())
}

pub fn tilde_pfaff_grad(f: &ScalarField, surface: &SurfacePatch, p: ParamPoint) -> Result<PfaffGradient> {
    let g = geometry_at(surface, p)?;
    let [t1, t2] = tilde_grad(&g, &f.eval(&g))?;
    Ok(PfaffGradient {
        g1: t1.value(),
        g2: t2.value(),
    })
}

pub fn theta_iii_at(a1: &ScalarField, a2: &ScalarField, surface: &SurfacePatch, p: ParamPoint) -> Result<f64> {
    let g = geometry_at(surface, p)?;
    Ok(theta_iii(&g, &a1.eval(&g), &a2.eval(&g))?.value())
}

pub fn d_omega_iii_at(
    f: &ScalarField,
    a1: &ScalarField,
    a2: &ScalarField,
    surface: &SurfacePatch,
    p: ParamPoint,
) -> Result<f64> {
    let g = geometry_at(surface, p)?;
    Ok(d_iii(&g, &f.eval(&g), &a1.eval(&g), &a2.eval(&g))?.value())
}
