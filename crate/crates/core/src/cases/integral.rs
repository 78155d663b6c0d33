//! Integral evaluators and the standard regions they run on.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

use crate::catalog::SurfaceKind;
use crate::error::{Error, Result};
use crate::field::{FieldArgs, ScalarField};
use crate::geometry::LocalGeometry;
use crate::integrals::{self as ii, Balance, ConstraintKind, Integrator};
use crate::lambda_mu;
use crate::region::{Axis, DomainRegion};
use crate::surface::{ParamPoint, Rect};

use super::{CaseContext, Sample};

type Ctx<'a> = CaseContext<'a>;

/// Random fields used by the integral cases, on top of `1` and `z`.
pub const INTEGRAL_FIELDS: usize = 10;
/// Random `(f, a₁, a₂)` triples for the Stokes check.
pub const STOKES_TRIPLES: usize = 6;

fn disk(u: f64, v: f64, r: f64) -> DomainRegion {
    DomainRegion::Disk {
        center: ParamPoint::new(u, v),
        radius: r,
    }
}

fn band(u0: f64, u1: f64, v0: f64, v1: f64, periodic: Axis) -> DomainRegion {
    DomainRegion::Band {
        rect: Rect::new(u0, u1, v0, v1),
        periodic,
    }
}

/// Stereographic disk of the polar cap of angle `u₀`.
fn cap(u0: f64) -> DomainRegion {
    disk(0.0, 0.0, (0.5 * u0).tan())
}

pub fn standard_regions(kind: SurfaceKind) -> Vec<DomainRegion> {
    match kind {
        SurfaceKind::Plane => vec![disk(0.0, 0.0, 1.0), DomainRegion::Rect(Rect::new(-0.6, 0.7, -0.5, 0.8))],
        SurfaceKind::Cylinder { .. } => vec![
            DomainRegion::Rect(Rect::new(-1.0, 1.0, -0.5, 0.5)),
            band(-PI, PI, -0.5, 0.5, Axis::U),
        ],
        SurfaceKind::Sphere { .. } => vec![
            band(FRAC_PI_6, FRAC_PI_3, -PI, PI, Axis::V),
            band(FRAC_PI_4, FRAC_PI_2, -PI, PI, Axis::V),
        ],
        SurfaceKind::SphereStereo { .. } => vec![cap(FRAC_PI_6), cap(FRAC_PI_3), cap(FRAC_PI_2)],
        SurfaceKind::Torus { .. } => vec![
            band(-1.0, 1.0, -PI, PI, Axis::V),
            band(0.3, 1.2, -PI, PI, Axis::V),
            DomainRegion::Rect(Rect::new(-0.8, 0.9, -1.0, 1.2)),
        ],
        SurfaceKind::Graph { .. } => vec![disk(0.0, 0.0, 0.5), DomainRegion::Rect(Rect::new(-0.5, 0.5, -0.5, 0.5))],
    }
}

/// The region bounded by a closed geodesic, where the catalog has one.
fn geodesic_region(kind: SurfaceKind) -> Result<(DomainRegion, f64)> {
    match kind {
        SurfaceKind::SphereStereo { radius } => Ok((cap(FRAC_PI_2), 1.0 / (radius * radius))),
        _ => Err(Error::RequirementUnmet("closed-geodesic-required".into())),
    }
}

/// Errors that rule out one region without condemning the case.
fn region_inapplicable(e: &Error) -> bool {
    matches!(
        e,
        Error::AngleFieldUndefined(_)
            | Error::DegenerateTheta { .. }
            | Error::DegenerateMu { .. }
            | Error::ConstraintUnsatisfiable { .. }
            | Error::FlatPointForImage { .. }
            | Error::RequirementUnmet(_)
    )
}

fn over_regions(ctx: &Ctx, f: impl FnMut(&DomainRegion) -> Result<Sample>) -> Result<Sample> {
    over(standard_regions(ctx.surface.kind), f)
}

/// Rectangles of the rotational charts, where `λ = v` is single valued.
pub fn lambda_regions(kind: SurfaceKind) -> Vec<DomainRegion> {
    match kind {
        SurfaceKind::Sphere { .. } => vec![
            DomainRegion::Rect(Rect::new(FRAC_PI_6, FRAC_PI_3, -1.0, 1.2)),
            DomainRegion::Rect(Rect::new(FRAC_PI_4, 1.3, -2.0, 0.5)),
        ],
        SurfaceKind::Torus { .. } => vec![
            DomainRegion::Rect(Rect::new(-0.8, 0.9, -1.0, 1.2)),
            DomainRegion::Rect(Rect::new(0.3, 1.2, -2.0, 0.5)),
        ],
        _ => Vec::new(),
    }
}

fn over(regions: Vec<DomainRegion>, mut f: impl FnMut(&DomainRegion) -> Result<Sample>) -> Result<Sample> {
    let mut out = Sample::default();
    let mut first = None;
    let mut skipped = 0;
    for r in regions {
        match f(&r) {
            Ok(s) => {
                out.residuals.extend(s.residuals);
                for (n, v) in s.measures {
                    out.measure(format!("{}.{n}", r.label()), v);
                }
            }
            Err(e) if region_inapplicable(&e) => {
                skipped += 1;
                first.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    if out.residuals.is_empty() {
        return Err(first.unwrap_or_else(|| Error::RequirementUnmet("no region applies".into())));
    }
    if skipped > 0 {
        out.measure("skipped_regions", skipped as f64);
    }
    Ok(out)
}

fn push(s: &mut Sample, b: Balance) {
    s.push(b.lhs - b.rhs);
}

fn height() -> ScalarField {
    ScalarField::new("z", |a: &FieldArgs| a.x[2])
}

/// `1`, `z` and the first random fields.
fn test_fields(ctx: &Ctx) -> Vec<ScalarField> {
    let mut v = vec![ScalarField::constant(1.0), height()];
    v.extend(ctx.fields.iter().take(INTEGRAL_FIELDS).cloned());
    v
}

pub fn gauss_bonnet(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    over_regions(ctx, |r| {
        let b = ii::gauss_bonnet(ig, r)?;
        let mut s = Sample::default();
        push(&mut s, b);
        s.measure("lhs", b.lhs);
        Ok(s)
    })
}

pub fn note_i_geodesic_area(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    let (r, k) = geodesic_region(ctx.surface.kind)?;
    let b = ii::note_i_area(ig, &r, k)?;
    let gb = ii::gauss_bonnet(ig, &r)?;
    let mut s = Sample::default();
    push(&mut s, b);
    push(&mut s, gb);
    s.measure("area", b.lhs);
    Ok(s)
}

pub fn theorem2_eq7(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    let fields = test_fields(ctx);
    over_regions(ctx, |r| {
        let mut s = Sample::default();
        for f in &fields {
            push(&mut s, ii::theorem2(ig, f, r)?);
        }
        Ok(s)
    })
}

fn harmonic_field(kind: SurfaceKind) -> Result<ScalarField> {
    Ok(match kind {
        SurfaceKind::Plane | SurfaceKind::Cylinder { .. } => ScalarField::uv("uv", |u, v| *u * *v),
        SurfaceKind::SphereStereo { .. } => ScalarField::uv("u²−v²", |u, v| *u * *u - *v * *v),
        SurfaceKind::Sphere { .. } => {
            ScalarField::uv("log tan(u/2)", |u, _| (*u * 0.5).sin().ln() - (*u * 0.5).cos().ln())
        }
        _ => {
            return Err(Error::RequirementUnmet(
                "no closed-form harmonic field on this chart".into(),
            ))
        }
    })
}

pub fn theorem2_eq8_harmonic(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    let f = harmonic_field(ctx.surface.kind)?;
    over_regions(ctx, |r| {
        let mut s = Sample::default();
        push(&mut s, ii::theorem2_harmonic(ig, &f, r)?);
        Ok(s)
    })
}

pub fn theorem3_eq16(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    let fields = test_fields(ctx);
    over_regions(ctx, |r| {
        let mut s = Sample::default();
        for f in &fields {
            push(&mut s, ii::theorem3(ig, f, r)?);
        }
        Ok(s)
    })
}

/// `∮ f δψ + ∫∫ (Δ₂f − ∇₁²f − ∇₂²f − Kf) = 0` with `δψ = −ω₁₂`, the same
/// with `(k_g − dφ/ds) ds` in place of `ω₁₂`, and `∮ δψ = ∫∫ K`.
pub fn note_ii_eq22_25(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    let fields = test_fields(ctx);
    over_regions(ctx, |r| {
        let b = ig.boundary(r)?;
        let mut s = Sample::default();
        for f in &fields {
            let dpsi = b.form(|n| -n.field(f) * n.w12_rate())?;
            let via_kg = b.form(|n| n.field(f) * (n.kg_ambient() * n.speed() - n.dphi_dt()))?;
            let [area] = ig.area(r, 1, |g| {
                let fj = f.eval(g);
                let [g1, g2] = g.grad(&fj);
                Ok([(g.q2 * g1 - g.q1 * g2 - g.k * fj).value()])
            })?;
            s.push(dpsi + area);
            s.push(via_kg - area);
        }
        let dpsi = b.form(|n| -n.w12_rate())?;
        let [k] = ig.area(r, 0, |g| Ok([g.k.value()]))?;
        s.push(dpsi - k);
        Ok(s)
    })
}

/// `∮ k_g ds = 2π` on contractible closed curves of a flat surface.
pub fn corollary1_flat_bound(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    over_regions(ctx, |r| {
        if r.euler_characteristic() != 1 {
            return Err(Error::RequirementUnmet(format!(
                "{} is not bounded by a contractible curve",
                r.label()
            )));
        }
        let b = ii::corollary1_bound(ig, r)?;
        let mut s = Sample::default();
        push(&mut s, b);
        s.measure("kg_total", b.lhs);
        Ok(s)
    })
}

pub fn corollary2_area(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    let (r, _) = geodesic_region(ctx.surface.kind)?;
    let b = ii::corollary2(ig, &r)?;
    let mut s = Sample::default();
    push(&mut s, b);
    s.measure("area", b.lhs);
    Ok(s)
}

pub fn theorem9_eq56(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    let w12 = |g: &LocalGeometry| [g.q1, g.q2];
    over_regions(ctx, |r| {
        let mut s = Sample::default();
        push(&mut s, ii::theorem9(ig, &w12, r)?);
        Ok(s)
    })
}

pub fn corollary3_eq57(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    over_regions(ctx, |r| {
        let mut s = Sample::default();
        push(&mut s, ii::corollary3(ig, r)?);
        Ok(s)
    })
}

pub fn theorem10_eq58_59(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    let fields = test_fields(ctx);
    over_regions(ctx, |r| {
        let mut s = Sample::default();
        for f in &fields {
            for b in ii::theorem10(ig, f, r)? {
                push(&mut s, b);
            }
        }
        Ok(s)
    })
}

pub fn corollary4_eq64_65(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    over_regions(ctx, |r| {
        let mut s = Sample::default();
        for kind in [ConstraintKind::Omega31, ConstraintKind::Omega32] {
            push(&mut s, ii::corollary4(ig, r, kind)?);
        }
        Ok(s)
    })
}

pub fn green_theorem13(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    let u = ScalarField::uv("u", |u, _| *u);
    let v = ScalarField::uv("v", |_, v| *v);
    let x = ScalarField::new("x", |a: &FieldArgs| a.x[0]);
    let mut pairs = vec![(height(), x)];
    let rnd = &ctx.fields[..ctx.fields.len().min(INTEGRAL_FIELDS)];
    for i in 0..rnd.len() / 2 {
        pairs.push((rnd[2 * i].clone(), rnd[2 * i + 1].clone()));
    }
    over_regions(ctx, |r| {
        let mut s = Sample::default();
        // the multiplier must be single valued on the region
        let (name, f, g) = match r {
            DomainRegion::Band { periodic: Axis::U, .. } => ("v_du", &v, &u),
            _ => ("u_dv", &u, &v),
        };
        let b = ii::green(ig, f, g, r)?;
        push(&mut s, b);
        s.measure(name, b.lhs);
        for (f, g) in &pairs {
            push(&mut s, ii::green(ig, f, g, r)?);
        }
        Ok(s)
    })
}

pub fn stokes_consistency(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    let n = ctx.fields.len();
    if n == 0 {
        return Err(Error::RequirementUnmet("no random fields configured".into()));
    }
    over_regions(ctx, |r| {
        let mut s = Sample::default();
        for t in 0..STOKES_TRIPLES {
            let f = |k: usize| &ctx.fields[(3 * t + k) % n];
            push(&mut s, ii::stokes(ig, f(0), f(1), f(2), r)?);
        }
        Ok(s)
    })
}

pub fn turning_number(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    over_regions(ctx, |r| {
        let t = ii::turning_numbers(ig, r)?;
        if t.is_empty() {
            return Err(Error::RequirementUnmet(format!(
                "{} has no closed boundary curve in the chart",
                r.label()
            )));
        }
        let mut s = Sample::new(t.iter().map(|x| x - x.round()).collect());
        s.measure("turning", t[0]);
        Ok(s)
    })
}

/// `k_g` along every boundary by Liouville and the `Θ` form, each
/// against the ambient acceleration.
pub fn liouville_kg_routes(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    over_regions(ctx, |r| {
        let b = ig.boundary(r)?;
        let mut s = Sample::default();
        for n in &b.fine.nodes {
            let amb = n.kg_ambient();
            s.push(n.kg_liouville() - amb);
            s.push(n.kg_theta() - amb);
        }
        Ok(s)
    })
}

/// Single valued on every standard region, bands included.
fn angle_phi() -> ScalarField {
    ScalarField::uv("phi", |u, v| u.sin() * 0.7 + (*u + *v).cos() * 0.3)
}

fn theorem14_94(ctx: &Ctx, ig: &Integrator, unit_r: bool) -> Result<Sample> {
    let fields = test_fields(ctx);
    let phis = [angle_phi(), ctx.fields.first().cloned().unwrap_or_else(angle_phi)];
    over_regions(ctx, |r| {
        let mut s = Sample::default();
        for f in fields.iter().take(4) {
            for phi in &phis {
                push(&mut s, ii::theorem14_eq94(ig, f, phi, r, unit_r)?);
            }
        }
        Ok(s)
    })
}

/// Constant angle field matching the tangent of the band boundaries.
fn band_phi(r: &DomainRegion) -> ScalarField {
    match r {
        DomainRegion::Band { periodic: Axis::U, .. } => ScalarField::constant(0.0),
        _ => ScalarField::constant(FRAC_PI_2),
    }
}

fn theorem14_95(ctx: &Ctx, ig: &Integrator, unit_r: bool) -> Result<Sample> {
    let fields = test_fields(ctx);
    over_regions(ctx, |r| {
        let phi = band_phi(r);
        let mut s = Sample::default();
        for f in fields.iter().take(4) {
            push(&mut s, ii::theorem14_eq95(ig, f, &phi, r, unit_r)?);
        }
        Ok(s)
    })
}

pub fn theorem14_eq94(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    theorem14_94(ctx, ig, false)
}

pub fn theorem14_eq94_unit_r(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    theorem14_94(ctx, ig, true)
}

pub fn theorem14_eq95(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    theorem14_95(ctx, ig, false)
}

pub fn theorem14_eq95_unit_r(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    theorem14_95(ctx, ig, true)
}

pub fn corollary6(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    over_regions(ctx, |r| {
        let b = ii::corollary6(ig, &band_phi(r), r)?;
        let mut s = Sample::default();
        push(&mut s, b);
        s.measure("area", b.lhs);
        Ok(s)
    })
}

pub fn eq84(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    over(lambda_regions(ctx.surface.kind), |r| {
        let [l_dm, m_dl, k, dpsi] = lambda_mu::eq84(ig, r)?;
        let mut s = Sample::new(vec![l_dm - k, m_dl - k, dpsi - k]);
        s.measure("lambda_dmu", l_dm);
        s.measure("minus_mu_dlambda", m_dl);
        s.measure("total_curvature", k);
        s.measure("delta_psi", dpsi);
        Ok(s)
    })
}

pub fn eq88(ctx: &Ctx, ig: &Integrator) -> Result<Sample> {
    over(lambda_regions(ctx.surface.kind), |r| {
        let b = lambda_mu::eq88(ig, r)?;
        let mut s = Sample::default();
        push(&mut s, b);
        s.measure("mu_omega12", b.lhs);
        Ok(s)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regions_fit_their_charts() {
        for kind in crate::catalog::default_surfaces() {
            let patch = kind.patch();
            for r in standard_regions(kind).into_iter().chain(lambda_regions(kind)) {
                r.check_within(&patch).unwrap();
            }
        }
    }
}
