//! Pointwise evaluators.

use crate::catalog::SurfaceKind;
use crate::connection::{lemma2_residual, mainardi_codazzi, structure_residuals, theta_mc};
use crate::error::{Error, Result};
use crate::forms::Form1;
use crate::geometry::LocalGeometry;
use crate::lambda_mu::{LambdaMu, Measured};
use crate::operators::{
    analytic_pair, beltrami_expansion, beltrami_form_ratio, beltrami_theta, commutation, d_f_omega, d_iii, d_iii_det,
    d_iii_expanded, d_omega, d_omega_det, k_form, k_intrinsic, pi2, q_tilde, q_tilde_forms, theta, theta_iii,
    theta_iii_forms, theta_iii_via_d, tilde_coeffs, tilde_grad,
};
use crate::taylor::{cross3, dot3, du3, dv3, Taylor};
use crate::vector::{
    corollary7, corollary9, cross_defect, d_vector, d_vector_ambient, inner_product_rule, normal_part, omega_bracket,
    omega_bracket_ambient, pi2_vector, proposition1, proposition3, proposition5, theta_e1_e2, Frame3, FrameOmega,
};

use super::{groups, pairs, CaseContext, Sample};

type Ctx<'a> = CaseContext<'a>;

fn need(fields: &[Taylor]) -> Result<()> {
    if fields.is_empty() {
        Err(Error::RequirementUnmet("no random fields configured".into()))
    } else {
        Ok(())
    }
}

pub fn frame_orthonormality(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    let mut s = Sample::default();
    for i in 0..3 {
        for j in i..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            s.push(dot3(&g.e[i], &g.e[j]).value() - delta);
        }
    }
    let n = cross3(&g.e[0], &g.e[1]);
    for (nk, ek) in n.iter().zip(&g.e[2]) {
        s.push((*nk - *ek).value());
    }
    let (xu, xv) = (du3(&g.x), dv3(&g.x));
    s.push(dot3(&g.e[0], &xu).value() - g.w1.du.value());
    s.push(dot3(&g.e[0], &xv).value() - g.w1.dv.value());
    s.push(dot3(&g.e[1], &xu).value() - g.w2.du.value());
    s.push(dot3(&g.e[1], &xv).value() - g.w2.dv.value());
    if g.area.value() <= 0.0 {
        return Err(Error::DegenerateCoframe { det: g.area.value() });
    }
    Ok(s)
}

pub fn frame_closed_form(ctx: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    let kind = ctx.surface.kind;
    let abc = kind
        .outward_abc(g.p)
        .ok_or_else(|| Error::RequirementUnmet("closed-form-required".into()))?;
    Ok(Sample::new(vec![
        g.a.value() - abc[0],
        g.b.value() - abc[1],
        g.c.value() - abc[2],
    ]))
}

pub fn k_closed_form(ctx: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    Ok(Sample::new(vec![g.k.value() - ctx.surface.kind.exact_k(g.p)]))
}

pub fn b_symmetry(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    Ok(Sample::of([g.b - g.b_alt]))
}

macro_rules! structure_case {
    ($($name:ident = $i:expr),*) => {$(
        pub fn $name(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
            Ok(Sample::of([structure_residuals(g)[$i]]))
        }
    )*};
}

structure_case!(
    structure_domega1 = 0,
    structure_domega2 = 1,
    structure_symmetry = 2,
    structure_domega12 = 3,
    structure_domega31 = 4,
    structure_domega32 = 5
);

pub fn k_three_routes(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    let mut s = Sample::of([g.k - k_intrinsic(g), g.k - k_form(g)]);
    s.measure("K", g.k.value());
    Ok(s)
}

pub fn mainardi_codazzi_case(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    Ok(Sample::of(mainardi_codazzi(g)))
}

pub fn theta_mc_case(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    Ok(Sample::of(theta_mc(g)?))
}

pub fn lemma2(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    let mut s = Sample::of(lemma2_residual(g)?);
    let a = q_tilde(g)?;
    let b = q_tilde_forms(g)?;
    s.push_t(a[0] - b[0]);
    s.push_t(a[1] - b[1]);
    Ok(s)
}

pub fn ddf_zero(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for fj in f {
        let [g1, g2] = g.grad(fj);
        s.push_t(g.d_ratio(&g.from_frame(&g1, &g2)));
        s.push_t(Form1::exact(fj).ext_d());
    }
    Ok(s)
}

pub fn commutation_identity(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    Ok(Sample::of(f.iter().map(|fj| commutation(g, fj))))
}

pub fn beltrami_routes(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::of(
        f.iter()
            .map(|fj| beltrami_expansion(g, fj) - beltrami_form_ratio(g, fj)),
    );
    s.measure("laplacian_f0", beltrami_expansion(g, &f[0]).value());
    Ok(s)
}

/// A field with a closed-form Laplacian on the surface.
fn laplacian_oracle(kind: SurfaceKind, g: &LocalGeometry) -> Result<(Taylor, f64)> {
    let (u, v) = g.coords();
    Ok(match kind {
        SurfaceKind::Plane => (u * u + v * v, 4.0),
        SurfaceKind::Cylinder { radius } => (u * u + v * v, 2.0 / (radius * radius) + 2.0),
        SurfaceKind::Sphere { radius } | SurfaceKind::SphereStereo { radius } => {
            let z = g.x[2];
            (z, -2.0 * z.value() / (radius * radius))
        }
        SurfaceKind::Torus { major, minor } => {
            let rho = major + minor * g.p.u.cos();
            (v.sin(), -g.p.v.sin() / (rho * rho))
        }
        SurfaceKind::Graph { .. } => {
            return Err(Error::RequirementUnmet("no closed-form Laplacian on this chart".into()))
        }
    })
}

pub fn beltrami_closed_form(ctx: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    let (f, want) = laplacian_oracle(ctx.surface.kind, g)?;
    Ok(Sample::new(vec![
        beltrami_expansion(g, &f).value() - want,
        beltrami_form_ratio(g, &f).value() - want,
    ]))
}

pub fn beltrami_theta_form(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    Ok(Sample::of(
        f.iter().map(|fj| beltrami_theta(g, fj) - beltrami_expansion(g, fj)),
    ))
}

pub fn theta_gradient_zero(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    Ok(Sample::of(f.iter().map(|fj| {
        let [g1, g2] = g.grad(fj);
        theta(g, &g1, &g2)
    })))
}

pub fn theta_q_minus_k(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    Ok(Sample::of([theta(g, &g.q1, &g.q2) + g.k]))
}

pub fn theta_e1_e2_zero(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    Ok(Sample::new(theta_e1_e2(g).to_vec()))
}

/// `(Re h, −Im h)` for `h ∈ {z², z³, e^{z/2}}` in isothermal coordinates.
fn analytic_pairs(g: &LocalGeometry, scale: f64) -> Vec<(Taylor, Taylor)> {
    let (u, v) = g.coords();
    let (x, y) = (u * scale, v);
    let e = (x * 0.5).exp();
    vec![
        (x * x - y * y, -(x * y * 2.0)),
        (x * x * x - x * y * y * 3.0, -(x * x * y * 3.0 - y * y * y)),
        (e * (y * 0.5).cos(), -(e * (y * 0.5).sin())),
    ]
}

pub fn theorem1_analytic_harmonic(ctx: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    let scale = ctx
        .surface
        .kind
        .conformal_scale()
        .ok_or_else(|| Error::RequirementUnmet("conformal-chart-required".into()))?;
    let mut s = Sample::default();
    for (phi, star) in analytic_pairs(g, scale) {
        let [r1, r2] = analytic_pair(g, &phi, &star);
        s.push_t(r1);
        s.push_t(r2);
        s.push_t(beltrami_expansion(g, &phi));
        s.push_t(beltrami_expansion(g, &star));
    }
    Ok(s)
}

pub fn theorem4_pi2_closed(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    Ok(Sample::of(
        f.iter().map(|fj| d_f_omega(g, fj, &g.q1, &g.q2) - pi2(g, fj)),
    ))
}

pub fn d12_equals_pi2(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    Ok(Sample::of(f.iter().map(|fj| d_omega(g, fj, &g.q1, &g.q2) - pi2(g, fj))))
}

pub fn theorem5_d_omega_routes(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for [h, a1, a2] in groups::<3>(f) {
        let d = d_omega(g, &h, &a1, &a2);
        s.push_t(d - d_omega_det(g, &h, &a1, &a2));
        s.push_t(d - d_f_omega(g, &h, &a1, &a2));
        let one = h * 0.0 + 1.0;
        s.push_t(d_f_omega(g, &one, &a1, &a2) - theta(g, &a1, &a2));
    }
    Ok(s)
}

pub fn theorem6_linearity(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for [h, k, a1, a2] in groups::<4>(f) {
        let d = |x: &Taylor| d_omega(g, x, &a1, &a2);
        s.push_t(d(&(h + k)) - d(&h) - d(&k));
        s.push_t(d(&(h * 2.5)) - d(&h) * 2.5);
    }
    Ok(s)
}

pub fn theorem6_product_rule(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for [h, k, a1, a2] in groups::<4>(f) {
        let d = |x: &Taylor| d_omega(g, x, &a1, &a2);
        let th = theta(g, &a1, &a2);
        s.push_t(d(&(h * k)) - (k * d(&h) + h * d(&k) - th * h * k));
    }
    Ok(s)
}

pub fn remark_d12_product(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    Ok(Sample::of(pairs(f).map(|(h, k)| {
        let d = |x: &Taylor| d_omega(g, x, &g.q1, &g.q2);
        d(&(*h * *k)) - (*k * d(h) + *h * d(k) + g.k * *h * *k)
    })))
}

/// `D_{dh} f = |∇₁f ∇₂f; ∇₁h ∇₂h|` for an exact form.
pub fn remark_exact_product(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    Ok(Sample::of(groups::<3>(f).map(|[h, k, m]| {
        let [m1, m2] = g.grad(&m);
        d_omega(g, &(h * k), &m1, &m2) - k * d_omega(g, &h, &m1, &m2) - h * d_omega(g, &k, &m1, &m2)
    })))
}

pub fn inner_product(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    Ok(Sample::of(
        groups::<4>(f).map(|[a1, a2, b1, b2]| inner_product_rule(g, &[a1, a2], &[b1, b2])),
    ))
}

pub fn theorem7_theta_iii_routes(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for (a1, a2) in pairs(f) {
        s.push_t(theta_iii(g, a1, a2)? - theta_iii_forms(g, a1, a2)?);
    }
    Ok(s)
}

pub fn theorem8_d_iii(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for [h, a1, a2] in groups::<3>(f) {
        let d = d_iii(g, &h, &a1, &a2)?;
        s.push_t(d - d_iii_det(g, &h, &a1, &a2)?);
        s.push_t(d - d_iii_expanded(g, &h, &a1, &a2)?);
        s.push_t(d - theta_iii_forms(g, &(a1 * h), &(a2 * h))?);
    }
    Ok(s)
}

/// `df = ∇̃₁f ω₃₁ + ∇̃₂f ω₃₂` on chart coefficients.
pub fn theorem8_tilde_grad(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for fj in f {
        let [t1, t2] = tilde_grad(g, fj)?;
        let back = g.w31.scale(&t1) + g.w32.scale(&t2);
        let d = Form1::exact(fj) - back;
        s.push_t(d.du);
        s.push_t(d.dv);
    }
    Ok(s)
}

pub fn theorem8_eq52(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for (a1, a2) in pairs(f) {
        s.push_t(theta_iii(g, a1, a2)? - theta_iii_via_d(g, a1, a2)?);
    }
    Ok(s)
}

pub fn theorem8_eq54_55(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for [h, a1, a2] in groups::<3>(f) {
        let [t1, t2] = tilde_coeffs(g, &a1, &a2)?;
        s.push_t(d_omega(g, &h, &a1, &a2) - g.k * d_iii(g, &h, &t1, &t2)?);
        s.push_t(theta(g, &a1, &a2) - g.k * theta_iii(g, &t1, &t2)?);
    }
    Ok(s)
}

/// `Θ(∇φ + q) = −K` for any angle field `φ`.
pub fn corollary5_theta_r(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    Ok(Sample::of(f.iter().map(|phi| {
        let [p1, p2] = g.grad(phi);
        theta(g, &(p1 + g.q1), &(p2 + g.q2)) + g.k
    })))
}

/// Geodesic curvature of the integral curves of the angle field `θ`,
/// measured in ambient space, against `Θ(cos θ, sin θ)`.
pub fn theorem11_field_kg(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let (w1, w2) = (&g.w1, &g.w2);
    let det = w1.du.value() * w2.dv.value() - w1.dv.value() * w2.du.value();
    let mut s = Sample::default();
    for th in f {
        let (c, sn) = (th.cos(), th.sin());
        let (cv, sv) = (c.value(), sn.value());
        // chart velocity of the unit field
        let al = (cv * w2.dv.value() - sv * w1.dv.value()) / det;
        let be = (sv * w1.du.value() - cv * w2.du.value()) / det;
        let t: [Taylor; 3] = std::array::from_fn(|k| c * g.e[0][k] + sn * g.e[1][k]);
        let dt: [f64; 3] = std::array::from_fn(|k| t[k].partial(1, 0) * al + t[k].partial(0, 1) * be);
        let n = g.e[2].map(|x| x.value());
        let tv = t.map(|x| x.value());
        let left = [
            n[1] * tv[2] - n[2] * tv[1],
            n[2] * tv[0] - n[0] * tv[2],
            n[0] * tv[1] - n[1] * tv[0],
        ];
        let kg: f64 = (0..3).map(|k| dt[k] * left[k]).sum();
        s.push(kg - theta(g, &c, &sn).value());
    }
    Ok(s)
}

/// `Θ(−sin φ, cos φ) = ⟨∇φ + q, t̄*⟩`; with `∇φ + q = t̄*` this is the
/// unit value claimed for geodesic angle fields.
pub fn geodesic_note_theta(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    Ok(Sample::of(f.iter().map(|phi| {
        let [p1, p2] = g.grad(phi);
        let (c, s) = (phi.cos(), phi.sin());
        theta(g, &(-s), &c) - ((p1 + g.q1) * (-s) + (p2 + g.q2) * c)
    })))
}

fn lambda_mu(g: &LocalGeometry) -> Result<LambdaMu> {
    LambdaMu::new(g)
}

pub fn eq83(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    Ok(Sample::new(vec![lambda_mu(g)?.eq83(g)]))
}

pub fn eq93(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    Ok(Sample::new(vec![lambda_mu(g)?.eq93(g)]))
}

pub fn eq90(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    let lm = lambda_mu(g)?;
    Ok(Sample::new((1..=4).map(|nu| lm.eq90(g, nu)).collect()))
}

pub fn eq91(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    Ok(Sample::new(vec![lambda_mu(g)?.eq91(g)]))
}

/// Residual against the stated value, with the measured ratio and the gap
/// to the derived closed form published alongside.
fn measured(items: &[(&str, Measured)]) -> Sample {
    let mut s = Sample::default();
    for (name, m) in items {
        s.push(m.stated_gap());
        if let Some(r) = m.ratio() {
            s.measure(format!("{name}ratio"), r);
        }
        s.measure(format!("{name}oracle_gap"), m.oracle_gap());
    }
    s
}

pub fn eq85(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    Ok(measured(&[("", lambda_mu(g)?.eq85(g))]))
}

pub fn eq86(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    let lm = lambda_mu(g)?;
    let items: Vec<(String, Measured)> = (1..=4).map(|nu| (format!("nu{nu}."), lm.eq86(g, nu))).collect();
    let refs: Vec<(&str, Measured)> = items.iter().map(|(n, m)| (n.as_str(), *m)).collect();
    Ok(measured(&refs))
}

pub fn eq87(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    Ok(measured(&[("", lambda_mu(g)?.eq87(g))]))
}

pub fn eq89(_: &Ctx, g: &LocalGeometry, _: &[Taylor]) -> Result<Sample> {
    Ok(measured(&[("", lambda_mu(g)?.eq89(g))]))
}

fn named_omegas(g: &LocalGeometry) -> Vec<[Taylor; 2]> {
    [
        FrameOmega::Omega1,
        FrameOmega::Omega2,
        FrameOmega::Omega12,
        FrameOmega::Omega31,
        FrameOmega::Omega32,
    ]
    .iter()
    .map(|w| w.coeffs(g))
    .collect()
}

fn push3(s: &mut Sample, a: &Frame3, b: &Frame3) {
    for i in 0..3 {
        s.push_t(a[i] - b[i]);
    }
}

pub fn theorem16_ambient(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    let omegas = named_omegas(g);
    for [x1, x2, x3, a1, a2] in groups::<5>(f) {
        let x = [x1, x2, x3];
        for w in omegas.iter().chain(std::iter::once(&[a1, a2])) {
            push3(&mut s, &d_vector(g, &x, w), &d_vector_ambient(g, &x, w));
        }
    }
    Ok(s)
}

pub fn theorem15(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for [x1, x2, x3, a1, a2] in groups::<5>(f) {
        let (x, w) = ([x1, x2, x3], [a1, a2]);
        push3(&mut s, &d_vector(g, &x, &w), &d_vector_ambient(g, &x, &w));
    }
    Ok(s)
}

pub fn lemma3(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for [x1, x2, a1, a2] in groups::<4>(f) {
        let (x, w) = ([x1, x2, x1 * 0.0], [a1, a2]);
        push3(&mut s, &d_vector(g, &x, &w), &d_vector_ambient(g, &x, &w));
    }
    Ok(s)
}

pub fn proposition1_case(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    let w = [g.q1, g.q2];
    for x in groups::<3>(f) {
        push3(&mut s, &proposition1(g, &x)?, &d_vector_ambient(g, &x, &w));
    }
    Ok(s)
}

pub fn corollary8_pi2_vector(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    let w = [g.q1, g.q2];
    for (a, b) in pairs(f) {
        let x = [*a, *b, *a * 0.0];
        push3(&mut s, &pi2_vector(g, a, b)?, &d_vector_ambient(g, &x, &w));
    }
    Ok(s)
}

pub fn proposition2_brackets(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for [x, a1, a2] in groups::<3>(f) {
        let w = [a1, a2];
        for i in 1..=3 {
            for j in 1..=3 {
                s.push_t(omega_bracket(g, &x, i, j, &w) - omega_bracket_ambient(g, &x, i, j, &w));
            }
        }
    }
    Ok(s)
}

pub fn proposition4_antisymmetry(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for [x, a1, a2] in groups::<3>(f) {
        let w = [a1, a2];
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            s.push_t(omega_bracket_ambient(g, &x, i, j, &w) + omega_bracket_ambient(g, &x, j, i, &w));
        }
    }
    Ok(s)
}

pub fn proposition3_product(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    Ok(Sample::of(groups::<8>(f).map(|c| {
        proposition3(g, &[c[0], c[1], c[2]], &[c[3], c[4], c[5]], &[c[6], c[7]])
    })))
}

pub fn corollary7_eq100(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for [a, b, a1, a2] in groups::<4>(f) {
        let (l, r) = corollary7(g, &[a, b], &[a1, a2]);
        s.push(l - r);
    }
    Ok(s)
}

pub fn corollary7_cross_identity(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    Ok(Sample::new(
        groups::<4>(f)
            .map(|[a, b, a1, a2]| cross_defect(g, &[a, b], &[a1, a2]))
            .collect(),
    ))
}

pub fn corollary7_exists_j(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    for (i, [a, b, a1, a2]) in groups::<4>(f).enumerate() {
        let (tangential, j) = normal_part(g, &[a, b], &[a1, a2]);
        s.push(tangential);
        if i == 0 {
            s.measure("J", j);
        }
    }
    Ok(s)
}

pub fn corollary9_flat(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    let w = [g.q1, g.q2];
    for x in groups::<3>(f) {
        push3(&mut s, &corollary9(g, &x), &d_vector_ambient(g, &x, &w));
    }
    Ok(s)
}

pub fn proposition5_case(_: &Ctx, g: &LocalGeometry, f: &[Taylor]) -> Result<Sample> {
    need(f)?;
    let mut s = Sample::default();
    let w = [g.q1, g.q2];
    for phi in f {
        let x = [phi.cos(), phi.sin(), *phi * 0.0];
        push3(&mut s, &proposition5(g, phi), &d_vector_ambient(g, &x, &w));
    }
    Ok(s)
}
