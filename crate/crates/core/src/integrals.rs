//! Boundary and area quadrature and the integral identities built on
//! them: the Gauss-Bonnet family, Green's identity, the area formulas and
//! the `ω₃₁`, `ω₃₂` and angle-field integrals.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::curves::{BoundaryNodes, CurveNode};
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::forms::Form1;
use crate::geometry::{GeometrySettings, LocalGeometry};
use crate::operators::{self, d_f_omega, pi2, q_tilde, theta};
use crate::quadrature::{composite, pairwise_sum};
use crate::region::DomainRegion;
use crate::surface::{ParamPoint, SurfacePatch};
use crate::taylor::Taylor;
use crate::tolerances::THETA_FLOOR;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSettings {
    /// Panels per boundary piece on the fine rule; the gate rule uses half.
    pub boundary_panels: usize,
    /// Panels per side on the fine area rule; the gate rule uses half.
    pub area_panels: usize,
    /// Largest accepted change between the two rules, relative to
    /// `max(1, |fine|)`.
    pub gate: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            boundary_panels: 8,
            area_panels: 2,
            gate: 1e-6,
        }
    }
}

/// Left and right sides of an integral identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Balance {
    pub lhs: f64,
    pub rhs: f64,
}

impl Balance {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        Self { lhs, rhs }
    }

    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// Boundary nodes on the fine rule and on the gate rule.
pub struct Boundary {
    pub fine: BoundaryNodes,
    pub coarse: BoundaryNodes,
    gate: f64,
}

impl Boundary {
    pub fn integral(&self, f: impl Fn(&BoundaryNodes) -> f64) -> Result<f64> {
        gated(f(&self.coarse), f(&self.fine), self.gate)
    }

    /// `∮ f k_g ds` including corner turning angles.
    pub fn f_kg_ds(&self, f: &ScalarField) -> Result<f64> {
        self.integral(|b| {
            b.integrate(|n| n.field(f) * n.kg_liouville() * n.speed()) + b.corner_sum(|c| f.eval(&c.geo).value())
        })
    }

    /// `∮ f dφ` of the tangent angle, including corners.
    pub fn f_dphi(&self, f: &ScalarField) -> Result<f64> {
        self.integral(|b| b.integrate(|n| n.field(f) * n.dphi_dt()) + b.corner_sum(|c| f.eval(&c.geo).value()))
    }

    /// `∮ η` for a 1-form built from the node geometry.
    pub fn form(&self, eta: impl Fn(&CurveNode) -> f64 + Sync) -> Result<f64> {
        self.integral(|b| b.integrate(&eta))
    }
}

fn gated(coarse: f64, fine: f64, gate: f64) -> Result<f64> {
    if !fine.is_finite() || (coarse - fine).abs() > gate * fine.abs().max(1.0) {
        Err(Error::QuadratureNonConvergence { coarse, fine })
    } else {
        Ok(fine)
    }
}

type AreaNodes = Arc<Vec<(LocalGeometry, f64)>>;

/// Quadrature over regions of one surface with fixed geometry settings.
/// Node geometries are built once per region and reused across calls.
pub struct Integrator<'a> {
    pub surface: &'a SurfacePatch,
    pub settings: GeometrySettings,
    pub quad: QuadratureSettings,
    areas: Mutex<HashMap<(String, usize, usize), AreaNodes>>,
    boundaries: Mutex<HashMap<String, Arc<Boundary>>>,
}

impl<'a> Integrator<'a> {
    pub fn new(surface: &'a SurfacePatch, settings: GeometrySettings, quad: QuadratureSettings) -> Self {
        Self {
            surface,
            settings,
            quad,
            areas: Mutex::new(HashMap::new()),
            boundaries: Mutex::new(HashMap::new()),
        }
    }

    pub fn boundary(&self, region: &DomainRegion) -> Result<Arc<Boundary>> {
        let key = format!("{region:?}");
        if let Some(b) = self.boundaries.lock().unwrap().get(&key) {
            return Ok(b.clone());
        }
        region.check_within(self.surface)?;
        let curves = region.boundary();
        let n = self.quad.boundary_panels.max(2);
        let b = Arc::new(Boundary {
            fine: BoundaryNodes::build(self.surface, &curves, &self.settings, n)?,
            coarse: BoundaryNodes::build(self.surface, &curves, &self.settings, n / 2)?,
            gate: self.quad.gate,
        });
        self.boundaries.lock().unwrap().insert(key, b.clone());
        Ok(b)
    }

    /// Degree 0 requests share the degree 1 nodes.
    fn area_nodes(&self, region: &DomainRegion, panels: usize, deg: usize) -> Result<AreaNodes> {
        let deg = deg.max(1);
        let key = (format!("{region:?}"), panels, deg);
        if let Some(n) = self.areas.lock().unwrap().get(&key) {
            return Ok(n.clone());
        }
        let nodes = region.area_nodes(panels);
        let built = Arc::new(crate::exec::try_map(&nodes, |(p, w)| {
            Ok((self.settings.build(self.surface, *p, deg)?, *w))
        })?);
        self.areas.lock().unwrap().insert(key, built.clone());
        Ok(built)
    }

    /// `∫∫ density · ω₁∧ω₂` for `N` densities at once, each node carrying
    /// a geometry of degree `deg`.
    pub fn area<const N: usize>(
        &self,
        region: &DomainRegion,
        deg: usize,
        density: impl Fn(&LocalGeometry) -> Result<[f64; N]> + Sync,
    ) -> Result<[f64; N]> {
        region.check_within(self.surface)?;
        let n = self.quad.area_panels.max(2);
        let rule = |panels: usize| -> Result<[f64; N]> {
            let nodes = self.area_nodes(region, panels, deg)?;
            let vals = crate::exec::try_map(&nodes, |(g, w)| {
                let dens = density(g)?;
                let wa = w * g.area.value();
                Ok(dens.map(|d| d * wa))
            })?;
            Ok(std::array::from_fn(|k| {
                pairwise_sum(&vals.iter().map(|v| v[k]).collect::<Vec<_>>())
            }))
        };
        let fine = rule(n)?;
        let coarse = rule(n / 2)?;
        let mut out = [0.0; N];
        for k in 0..N {
            out[k] = gated(coarse[k], fine[k], self.quad.gate)?;
        }
        Ok(out)
    }

    pub fn area_of(&self, region: &DomainRegion) -> Result<f64> {
        Ok(self.area(region, 0, |_| Ok([1.0]))?[0])
    }

    pub fn area_integral(&self, f: &ScalarField, region: &DomainRegion) -> Result<f64> {
        Ok(self.area(region, 0, |g| Ok([f.eval(g).value()]))?[0])
    }
}

/// `∮ k_g ds + ∫∫ K ω₁∧ω₂` against `2πχ`.
pub fn gauss_bonnet(ig: &Integrator, region: &DomainRegion) -> Result<Balance> {
    let one = ScalarField::constant(1.0);
    let b = ig.boundary(region)?;
    let kg = b.f_kg_ds(&one)?;
    let [k] = ig.area(region, 0, |g| Ok([g.k.value()]))?;
    Ok(Balance::new(kg + k, TAU * region.euler_characteristic() as f64))
}

/// `∮ f k_g ds + ∫∫ K f` against `∫∫ (q₂∇₁f − q₁∇₂f) + ∮ f dφ`.
pub fn theorem2(ig: &Integrator, f: &ScalarField, region: &DomainRegion) -> Result<Balance> {
    let b = ig.boundary(region)?;
    let [kf, mixed] = ig.area(region, 1, |g| {
        let fj = f.eval(g);
        let [g1, g2] = g.grad(&fj);
        Ok([(g.k * fj).value(), (g.q2 * g1 - g.q1 * g2).value()])
    })?;
    Ok(Balance::new(b.f_kg_ds(f)? + kf, mixed + b.f_dphi(f)?))
}

/// Harmonic form: `∮ f k_g ds + ∫∫ (∇₁²f + ∇₂²f + Kf)` against `∮ f dφ`.
pub fn theorem2_harmonic(ig: &Integrator, f: &ScalarField, region: &DomainRegion) -> Result<Balance> {
    let b = ig.boundary(region)?;
    let [s] = ig.area(region, 1, |g| {
        let fj = f.eval(g);
        let [g1, g2] = g.grad(&fj);
        Ok([(g.grad(&g1)[0] + g.grad(&g2)[1] + g.k * fj).value()])
    })?;
    Ok(Balance::new(b.f_kg_ds(f)? + s, b.f_dphi(f)?))
}

/// `∮ f k_g ds` against `∫∫ Π₂f + ∮ f dφ`.
pub fn theorem3(ig: &Integrator, f: &ScalarField, region: &DomainRegion) -> Result<Balance> {
    let b = ig.boundary(region)?;
    let [p] = ig.area(region, 1, |g| Ok([pi2(g, &f.eval(g)).value()]))?;
    Ok(Balance::new(b.f_kg_ds(f)?, p + b.f_dphi(f)?))
}

/// `∮ k_g ds` on a closed curve of a flat surface; the `lhs` is the
/// integral and the `rhs` the bound `2π`.
pub fn corollary1_bound(ig: &Integrator, region: &DomainRegion) -> Result<Balance> {
    let b = ig.boundary(region)?;
    Ok(Balance::new(b.f_kg_ds(&ScalarField::constant(1.0))?, TAU))
}

/// `A_D` against `∮ dφ/K + ∫∫ (q₂∇₁(1/K) − q₁∇₂(1/K))`, for a geodesic
/// boundary.
pub fn corollary2(ig: &Integrator, region: &DomainRegion) -> Result<Balance> {
    let b = ig.boundary(region)?;
    let dphi_k = b.integral(|nodes| {
        nodes.integrate(|n| n.dphi_dt() / n.geo.k.value()) + nodes.corner_sum(|c| 1.0 / c.geo.k.value())
    })?;
    let [area, mixed] = ig.area(region, 1, |g| {
        operators::check_k(g)?;
        let inv = g.k.recip();
        let [g1, g2] = g.grad(&inv);
        Ok([1.0, (g.q2 * g1 - g.q1 * g2).value()])
    })?;
    Ok(Balance::new(area, dphi_k + mixed))
}

/// `A_D` against `2π/K` for constant `K` and a geodesic boundary.
pub fn note_i_area(ig: &Integrator, region: &DomainRegion, k: f64) -> Result<Balance> {
    Ok(Balance::new(ig.area_of(region)?, TAU / k))
}

fn theta_sign_check(values: &[f64]) -> Result<()> {
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let small = values.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    if small < THETA_FLOOR || (min < 0.0 && max > 0.0) {
        Err(Error::DegenerateTheta { value: small })
    } else {
        Ok(())
    }
}

/// Frame coefficients `(a₁, a₂)` of a 1-form built from the geometry.
pub type FrameForm<'a> = &'a (dyn Fn(&LocalGeometry) -> [Taylor; 2] + Sync);

/// `∮ ω/Θ − ∫∫ |∇₁(1/Θ) ∇₂(1/Θ); a₁ a₂|` against `A_D`.
pub fn theorem9(ig: &Integrator, omega: FrameForm, region: &DomainRegion) -> Result<Balance> {
    let grid = region.area_nodes(1);
    let thetas = crate::exec::try_map(&grid, |(p, _)| {
        let g = ig.settings.build(ig.surface, *p, 1)?;
        let [a1, a2] = omega(&g);
        Ok(theta(&g, &a1, &a2).value())
    })?;
    let b = ig.boundary(region)?;
    let mut thetas = thetas;
    thetas.extend(b.fine.nodes.iter().map(|n| {
        let [a1, a2] = omega(&n.geo);
        theta(&n.geo, &a1, &a2).value()
    }));
    theta_sign_check(&thetas)?;
    let line = b.form(|n| {
        let [a1, a2] = omega(&n.geo);
        let th = theta(&n.geo, &a1, &a2).value();
        n.frame_rate(a1.value(), a2.value()) / th
    })?;
    let [det, area] = ig.area(region, 2, |g| {
        let [a1, a2] = omega(g);
        let th = theta(g, &a1, &a2);
        let [i1, i2] = g.grad(&th.recip());
        Ok([(i1 * a2 - i2 * a1).value(), 1.0])
    })?;
    Ok(Balance::new(line - det, area))
}

/// `ω₁ + ω₂`, whose `Θ` is `q₁ + q₂`.
pub fn corollary3(ig: &Integrator, region: &DomainRegion) -> Result<Balance> {
    theorem9(
        ig,
        &|g: &LocalGeometry| {
            let one = Taylor::constant(1.0, g.deg());
            [one, one]
        },
        region,
    )
}

/// Both identities of the `ω₃₁`, `ω₃₂` pair:
/// `∮ f ω₃₁ = ∫∫ (−b∇₁f + a∇₂f + q̃₁Kf)` and
/// `∮ f ω₃₂ = ∫∫ (−c∇₁f + b∇₂f + q̃₂Kf)`.
pub fn theorem10(ig: &Integrator, f: &ScalarField, region: &DomainRegion) -> Result<[Balance; 2]> {
    let b = ig.boundary(region)?;
    let l31 = b.form(|n| n.field(f) * n.rate(&n.geo.w31))?;
    let l32 = b.form(|n| n.field(f) * n.rate(&n.geo.w32))?;
    let [r31, r32] = ig.area(region, 1, |g| {
        let fj = f.eval(g);
        let [g1, g2] = g.grad(&fj);
        let [qt1, qt2] = q_tilde(g)?;
        Ok([
            (-g.b * g1 + g.a * g2 + qt1 * g.k * fj).value(),
            (-g.c * g1 + g.b * g2 + qt2 * g.k * fj).value(),
        ])
    })?;
    Ok([Balance::new(l31, r31), Balance::new(l32, r32)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    /// `df = q̃₁ f ω₃₂`, paired with `∮ f ω₃₁`.
    Omega31,
    /// `df = −q̃₂ f ω₃₁`, paired with `∮ f ω₃₂`.
    Omega32,
}

fn constraint_form(g: &LocalGeometry, kind: ConstraintKind) -> Result<Form1<Taylor>> {
    let [qt1, qt2] = q_tilde(g)?;
    Ok(match kind {
        ConstraintKind::Omega31 => g.w32.scale(&qt1),
        ConstraintKind::Omega32 => g.w31.scale(&(-qt2)),
    })
}

/// `log f(p)` for `d log f = η`, integrated on the segment from `base`.
fn log_f_along(ig: &Integrator, kind: ConstraintKind, base: ParamPoint, p: ParamPoint) -> Result<f64> {
    let d = [p.u - base.u, p.v - base.v];
    if d[0] == 0.0 && d[1] == 0.0 {
        return Ok(0.0);
    }
    let mut acc = Vec::new();
    for (t, w) in composite(0.0, 1.0, 2) {
        let q = ParamPoint::new(base.u + t * d[0], base.v + t * d[1]);
        let g = ig.settings.build(ig.surface, q, 0)?;
        let eta = constraint_form(&g, kind)?;
        acc.push(w * (eta.du.value() * d[0] + eta.dv.value() * d[1]));
    }
    Ok(pairwise_sum(&acc))
}

/// `∮ f ω₃₁` (or `∮ f ω₃₂`) for the `f` solving the constraint, with
/// `f = 1` at the region centre. Fails unless `η` is closed on the region
/// and `∮ η` over the boundary vanishes.
pub fn corollary4(ig: &Integrator, region: &DomainRegion, kind: ConstraintKind) -> Result<Balance> {
    let b = ig.boundary(region)?;
    let grid = region.area_nodes(1);
    let curls = crate::exec::try_map(&grid, |(p, _)| {
        let g = ig.settings.build(ig.surface, *p, 1)?;
        Ok(g.d_ratio(&constraint_form(&g, kind)?).value().abs())
    })?;
    let curl = curls.iter().cloned().fold(0.0, f64::max);
    let holonomy = b.form(|n| match constraint_form(&n.geo, kind) {
        Ok(eta) => n.rate(&eta),
        Err(_) => f64::NAN,
    })?;
    let tol = ig.quad.gate.max(1e-9);
    if curl > tol || holonomy.abs() > tol {
        return Err(Error::ConstraintUnsatisfiable {
            holonomy: if holonomy.abs() > tol { holonomy } else { curl },
        });
    }
    let base = region.bounding_rect().center();
    let line = |nodes: &BoundaryNodes| -> Result<f64> {
        let vals = crate::exec::try_map(&nodes.nodes, |n| {
            let f = log_f_along(ig, kind, base, n.p)?.exp();
            let w = match kind {
                ConstraintKind::Omega31 => &n.geo.w31,
                ConstraintKind::Omega32 => &n.geo.w32,
            };
            Ok(n.weight * f * n.rate(w))
        })?;
        Ok(pairwise_sum(&vals))
    };
    let fine = line(&b.fine)?;
    let coarse = line(&b.coarse)?;
    Ok(Balance::new(gated(coarse, fine, ig.quad.gate)?, 0.0))
}

/// `∮ f dg` against `∫∫ (∇₁f∇₂g − ∇₂f∇₁g)`.
pub fn green(ig: &Integrator, f: &ScalarField, gf: &ScalarField, region: &DomainRegion) -> Result<Balance> {
    let b = ig.boundary(region)?;
    let lhs = b.form(|n| n.field(f) * n.rate(&Form1::exact(&gf.eval(&n.geo))))?;
    let [rhs] = ig.area(region, 1, |g| {
        let a = g.grad(&f.eval(g));
        let c = g.grad(&gf.eval(g));
        Ok([(a[0] * c[1] - a[1] * c[0]).value()])
    })?;
    Ok(Balance::new(lhs, rhs))
}

/// `r⟨grad f, ξ*⟩` for the angle field `φ`, with `r` from
/// `∇φ + q = r(cos θ, sin θ)`; `unit_r` keeps `θ` and sets `r = 1`.
fn r_grad_xi_star(g: &LocalGeometry, f: &Taylor, phi: &Taylor, unit_r: bool) -> f64 {
    let [f1, f2] = g.grad(f);
    let [p1, p2] = g.grad(phi);
    let x = p1.value() + g.q1.value();
    let y = p2.value() + g.q2.value();
    let (f1, f2) = (f1.value(), f2.value());
    if unit_r {
        let th = y.atan2(x);
        -f1 * th.sin() + f2 * th.cos()
    } else {
        -f1 * y + f2 * x
    }
}

/// `∮ f dφ` of the angle field against
/// `−∫∫ (r⟨grad f, ξ*⟩ + Π₂f + Kf)`.
pub fn theorem14_eq94(
    ig: &Integrator,
    f: &ScalarField,
    phi: &ScalarField,
    region: &DomainRegion,
    unit_r: bool,
) -> Result<Balance> {
    let b = ig.boundary(region)?;
    let lhs = b.form(|n| n.field(f) * n.rate(&Form1::exact(&phi.eval(&n.geo))))?;
    let [rhs] = ig.area(region, 1, |g| {
        let fj = f.eval(g);
        let pj = phi.eval(g);
        let s = r_grad_xi_star(g, &fj, &pj, unit_r) + pi2(g, &fj).value() + (g.k * fj).value();
        Ok([-s])
    })?;
    Ok(Balance::new(lhs, rhs))
}

/// Largest gap between the angle field and the boundary tangent angle,
/// up to a constant per boundary curve.
fn angle_field_gap(b: &BoundaryNodes, phi: &ScalarField) -> f64 {
    let mut gap: f64 = 0.0;
    for n in &b.nodes {
        let [p1, p2] = [phi.eval(&n.geo).partial(1, 0), phi.eval(&n.geo).partial(0, 1)];
        let dfield = p1 * n.vel[0] + p2 * n.vel[1];
        gap = gap.max((dfield - n.dphi_dt()).abs());
    }
    gap.max(if b.corners.is_empty() { 0.0 } else { f64::INFINITY })
}

/// `∮ f k_g ds` against `−∫∫ (r⟨grad f, ξ*⟩ + Kf)`, where the angle field
/// restricts to the boundary tangent angle.
pub fn theorem14_eq95(
    ig: &Integrator,
    f: &ScalarField,
    phi: &ScalarField,
    region: &DomainRegion,
    unit_r: bool,
) -> Result<Balance> {
    let b = ig.boundary(region)?;
    let gap = angle_field_gap(&b.fine, phi);
    if !matches!(region, DomainRegion::Band { .. }) || gap > 1e-6 {
        return Err(Error::AngleFieldUndefined(format!(
            "the field does not follow the tangent of {} (gap {gap:e})",
            region.label()
        )));
    }
    let lhs = b.f_kg_ds(f)?;
    let [rhs] = ig.area(region, 1, |g| {
        let fj = f.eval(g);
        let pj = phi.eval(g);
        Ok([-(r_grad_xi_star(g, &fj, &pj, unit_r) + (g.k * fj).value())])
    })?;
    Ok(Balance::new(lhs, rhs))
}

/// `A_D` against `−∫∫ r⟨grad(1/K), ξ*⟩` for a geodesic boundary with an
/// angle field following its tangent.
pub fn corollary6(ig: &Integrator, phi: &ScalarField, region: &DomainRegion) -> Result<Balance> {
    let b = ig.boundary(region)?;
    if !matches!(region, DomainRegion::Band { .. }) || angle_field_gap(&b.fine, phi) > 1e-6 {
        return Err(Error::AngleFieldUndefined(format!(
            "the tangent angle of {} does not extend over the region",
            region.label()
        )));
    }
    let kg = b.fine.nodes.iter().map(|n| n.kg_liouville().abs()).fold(0.0, f64::max);
    if kg > 1e-6 {
        return Err(Error::RequirementUnmet(format!(
            "boundary is not geodesic (max |k_g| = {kg:e})"
        )));
    }
    let [area, rhs] = ig.area(region, 1, |g| {
        operators::check_k(g)?;
        let inv = g.k.recip();
        Ok([1.0, -r_grad_xi_star(g, &inv, &phi.eval(g), false)])
    })?;
    Ok(Balance::new(area, rhs))
}

/// `∮ f ω` against `∫∫ d(fω)` for `ω = a₁ω₁ + a₂ω₂` built from fields.
pub fn stokes(
    ig: &Integrator,
    f: &ScalarField,
    a1: &ScalarField,
    a2: &ScalarField,
    region: &DomainRegion,
) -> Result<Balance> {
    let b = ig.boundary(region)?;
    let lhs = b.form(|n| n.field(f) * n.frame_rate(n.field(a1), n.field(a2)))?;
    let [rhs] = ig.area(region, 1, |g| {
        Ok([d_f_omega(g, &f.eval(g), &a1.eval(g), &a2.eval(g)).value()])
    })?;
    Ok(Balance::new(lhs, rhs))
}

/// `(∮ dφ)/2π` over each closed boundary curve.
pub fn turning_numbers(ig: &Integrator, region: &DomainRegion) -> Result<Vec<f64>> {
    let one = ScalarField::constant(1.0);
    let mut out = Vec::new();
    for curve in region.boundary().into_iter().filter(|c| c.closed) {
        let nodes = BoundaryNodes::build(
            ig.surface,
            std::slice::from_ref(&curve),
            &ig.settings,
            ig.quad.boundary_panels.max(2),
        )?;
        let total = nodes.integrate(|n| n.field(&one) * n.dphi_dt()) + nodes.corner_sum(|_| 1.0);
        out.push(total / TAU);
    }
    Ok(out)
}
