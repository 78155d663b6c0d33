use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

use beltrami::catalog::{self, SurfaceKind};
use beltrami::connection::{curvature_bundle, mainardi_codazzi_residuals, theta_mc_residuals};
use beltrami::forms::{to_frame_basis, Form1};
use beltrami::operators::{self, BeltramiRoute};
use beltrami::surface::eval_jet;
use beltrami::{frame_at, DerivativeMode, Error, ParamPoint, ScalarField, SurfacePatch};

const MODES: [DerivativeMode; 3] = [
    DerivativeMode::Analytic,
    DerivativeMode::Dual,
    DerivativeMode::FiniteDifference,
];

fn tol(mode: DerivativeMode) -> f64 {
    match mode {
        DerivativeMode::FiniteDifference => 1e-6,
        _ => 1e-10,
    }
}

fn patch(spec: &str, mode: DerivativeMode) -> SurfacePatch {
    catalog::surface(spec).unwrap().patch.with_mode(mode)
}

fn close(a: f64, b: f64, t: f64, what: &str) {
    assert!((a - b).abs() < t, "{what}: {a} vs {b} (tol {t})");
}

#[test]
fn jets_of_plane_cylinder_and_sphere() {
    for mode in MODES {
        let j = eval_jet(&patch("plane", mode), ParamPoint::new(0.3, 0.7), 2).unwrap();
        assert_eq!(j.x_u.map(|x| (x * 1e6).round()), [1e6, 0.0, 0.0]);
        assert!(j.x_uu.iter().chain(&j.x_vv).all(|x| x.abs() < tol(mode)));

        let j = eval_jet(&patch("cylinder{R=1}", mode), ParamPoint::new(0.0, 0.0), 1).unwrap();
        for (a, b) in j.x_u.iter().zip([0.0, 1.0, 0.0]) {
            close(*a, b, tol(mode), "cylinder x_u");
        }
        let j = eval_jet(&patch("sphere", mode), ParamPoint::new(FRAC_PI_2, 0.0), 3).unwrap();
        for (a, b) in j.x_uu.iter().zip([-1.0, 0.0, 0.0]) {
            close(*a, b, 1e-6, "sphere x_uu");
        }
        let third = j.third.unwrap();
        assert!(third.iter().flatten().all(|x| x.is_finite()));
    }
}

#[test]
fn jets_check_domain_and_order() {
    let s = patch("sphere", DerivativeMode::Dual);
    assert!(matches!(
        eval_jet(&s, ParamPoint::new(0.0, 0.0), 2),
        Err(Error::PointOutsideDomain { .. })
    ));
    assert!(eval_jet(&s, ParamPoint::new(1.0, 0.0), 4).is_err());
}

#[test]
fn frames_of_the_worked_examples() {
    for mode in MODES {
        let t = tol(mode);
        let f = frame_at(&patch("plane", mode), ParamPoint::new(0.2, -0.4)).unwrap();
        for x in [f.q1, f.q2, f.a, f.b, f.c, f.k] {
            close(x, 0.0, t, "plane frame");
        }

        let f = frame_at(&patch("cylinder{R=2}", mode), ParamPoint::new(0.7, 0.1)).unwrap();
        close(f.omega1.du, 2.0, t, "cylinder ω₁");
        close(f.omega2.dv, 1.0, t, "cylinder ω₂");
        close(f.a, -0.5, t, "cylinder a");
        for x in [f.q1, f.q2, f.b, f.c, f.k] {
            close(x, 0.0, t, "cylinder frame");
        }

        let f = frame_at(&patch("sphere", mode), ParamPoint::new(FRAC_PI_4, 0.3)).unwrap();
        close(f.omega1.du, 1.0, t, "sphere ω₁");
        close(f.omega2.dv, FRAC_PI_4.sin(), t, "sphere ω₂");
        close(f.q1, 0.0, t, "sphere q₁");
        close(f.q2, 1.0, t, "sphere q₂");
        close(f.a, -1.0, t, "sphere a");
        close(f.c, -1.0, t, "sphere c");
        close(f.b, 0.0, t, "sphere b");
        close(f.k, 1.0, t, "sphere K");
        close(f.coframe_det(), FRAC_PI_4.sin(), t, "sphere det");
    }
}

#[test]
fn frame_is_orthonormal_and_right_handed() {
    let s = patch("torus", DerivativeMode::Dual);
    for p in s.domain.grid(8, 8) {
        let f = frame_at(&s, p).unwrap();
        let e = [f.e1, f.e2, f.e3];
        for i in 0..3 {
            for j in 0..3 {
                let d: f64 = (0..3).map(|k| e[i][k] * e[j][k]).sum();
                close(d, if i == j { 1.0 } else { 0.0 }, 1e-12, "orthonormality");
            }
        }
        assert!(f.coframe_det() > 0.0);
    }
}

#[test]
fn sphere_area_form_and_cylinder_basis_change() {
    for mode in MODES {
        let f = frame_at(&patch("sphere", mode), ParamPoint::new(FRAC_PI_6, 1.0)).unwrap();
        close(f.coframe_det(), 0.5, tol(mode), "ω₁∧ω₂ at π/6");

        let f = frame_at(&patch("cylinder{R=2}", mode), ParamPoint::new(0.3, 0.3)).unwrap();
        let c = to_frame_basis(Form1::new(1.0, 0.0), &f).unwrap();
        close(c.a1, 0.5, tol(mode), "du on cylinder");
        close(c.a2, 0.0, tol(mode), "du on cylinder");
        let c = to_frame_basis(f.omega1, &f).unwrap();
        close(c.a1, 1.0, 1e-12, "ω₁ coefficients");
        close(c.a2, 0.0, 1e-12, "ω₁ coefficients");
    }
}

#[test]
fn pfaffian_gradients() {
    for mode in MODES {
        let t = 10.0 * tol(mode);
        let f = ScalarField::uv("u^2+v", |u, v| *u * *u + *v);
        let g = operators::pfaff_grad(&f, &patch("plane", mode), ParamPoint::new(1.0, 0.0)).unwrap();
        close(g.g1, 2.0, t, "plane ∇₁");
        close(g.g2, 1.0, t, "plane ∇₂");

        let f = ScalarField::uv("u", |u, _| *u);
        let g = operators::pfaff_grad(&f, &patch("cylinder{R=2}", mode), ParamPoint::new(0.4, 0.0)).unwrap();
        close(g.g1, 0.5, t, "cylinder ∇₁");
        close(g.g2, 0.0, t, "cylinder ∇₂");

        let f = ScalarField::uv("v", |_, v| *v);
        let g = operators::pfaff_grad(&f, &patch("sphere", mode), ParamPoint::new(FRAC_PI_2, 0.2)).unwrap();
        close(g.g1, 0.0, t, "sphere ∇₁");
        close(g.g2, 1.0, t, "sphere ∇₂");
    }
}

#[test]
fn beltrami_examples_by_both_routes() {
    for mode in MODES {
        let t = match mode {
            DerivativeMode::FiniteDifference => 1e-5,
            _ => 1e-9,
        };
        let cases: [(&str, ScalarField, ParamPoint, f64); 3] = [
            (
                "plane",
                ScalarField::uv("u^2+v^2", |u, v| *u * *u + *v * *v),
                ParamPoint::new(0.3, -0.2),
                4.0,
            ),
            (
                "cylinder{R=2}",
                ScalarField::uv("u^2", |u, _| *u * *u),
                ParamPoint::new(0.5, 0.5),
                0.5,
            ),
            (
                "sphere",
                ScalarField::uv("cos u", |u, _| u.cos()),
                ParamPoint::new(FRAC_PI_3, 0.4),
                -1.0,
            ),
        ];
        for (name, f, p, want) in cases {
            let s = patch(name, mode);
            for route in [BeltramiRoute::Expansion, BeltramiRoute::FormRatio] {
                let got = operators::beltrami(&f, &s, p, route).unwrap();
                close(got, want, t, &format!("{name} Δ₂ {route:?} {mode}"));
            }
        }
    }
}

#[test]
fn harmonic_and_analytic_pairs() {
    let plane = patch("plane", DerivativeMode::Dual);
    let rect = plane.domain;
    let uv = ScalarField::uv("uv", |u, v| *u * *v);
    let u2 = ScalarField::uv("u^2", |u, _| *u * *u);
    assert!(operators::is_harmonic(&uv, &plane, &rect, 6, 1e-9).unwrap());
    assert!(!operators::is_harmonic(&u2, &plane, &rect, 6, 1e-9).unwrap());
    let cyl = patch("cylinder{R=1}", DerivativeMode::Dual);
    assert!(operators::is_harmonic(&uv, &cyl, &cyl.domain, 6, 1e-9).unwrap());

    let p = ParamPoint::new(0.3, 0.4);
    let u = ScalarField::uv("u", |u, _| *u);
    let mv = ScalarField::uv("-v", |_, v| -*v);
    let v = ScalarField::uv("v", |_, v| *v);
    let (r1, r2) = operators::analytic_pair_residual(&u, &mv, &plane, p).unwrap();
    close(r1, 0.0, 1e-12, "CR pair");
    close(r2, 0.0, 1e-12, "CR pair");
    let (r1, _) = operators::analytic_pair_residual(&u, &v, &plane, p).unwrap();
    close(r1.abs(), 2.0, 1e-12, "negative control");

    let r = 2.0;
    let cyl = patch("cylinder{R=2}", DerivativeMode::Dual);
    let re = ScalarField::uv("Re z^2", move |u, v| *u * *u * (r * r) - *v * *v);
    let im = ScalarField::uv("-Im z^2", move |u, v| -(*u * *v * (2.0 * r)));
    let (r1, r2) = operators::analytic_pair_residual(&re, &im, &cyl, p).unwrap();
    close(r1, 0.0, 1e-8, "cylinder z²");
    close(r2, 0.0, 1e-8, "cylinder z²");
}

#[test]
fn pi2_and_theta_examples() {
    let s = patch("sphere", DerivativeMode::Analytic);
    let p = ParamPoint::new(1.1, 0.7);
    let one = ScalarField::constant(1.0);
    close(operators::pi2_at(&one, &s, p).unwrap(), -1.0, 1e-10, "Π₂1 sphere");
    let lam = ScalarField::uv("v", |_, v| *v);
    close(operators::pi2_at(&lam, &s, p).unwrap(), -0.7, 1e-10, "Π₂λ sphere");
    let plane = patch("plane", DerivativeMode::Analytic);
    close(operators::pi2_at(&one, &plane, p).unwrap(), 0.0, 1e-12, "Π₂1 plane");

    let g = operators::geometry_at(&s, p).unwrap();
    close(operators::theta(&g, &g.q1, &g.q2).value(), -1.0, 1e-10, "Θ(q₁,q₂)");
    let f = ScalarField::uv("cos u", |u, _| u.cos()).eval(&g);
    let [f1, f2] = g.grad(&f);
    close(operators::theta(&g, &f1, &f2).value(), 0.0, 1e-10, "Θ(∇f)");
    close(
        operators::theta(&g, &(-f2), &f1).value(),
        operators::beltrami_expansion(&g, &f).value(),
        1e-10,
        "Θ(−∇₂f, ∇₁f)",
    );
}

#[test]
fn curvature_routes_and_codazzi() {
    for mode in MODES {
        let t = match mode {
            DerivativeMode::FiniteDifference => 1e-6,
            _ => 1e-9,
        };
        let s = patch("sphere", mode);
        let b = curvature_bundle(&s, ParamPoint::new(1.0, 0.5)).unwrap();
        for k in [b.k_extrinsic, b.k_intrinsic, b.k_form] {
            close(k, 1.0, t, "sphere K");
        }
        let kind = SurfaceKind::Torus { major: 2.0, minor: 0.5 };
        let s = kind.patch().with_mode(mode);
        for p in [ParamPoint::new(0.0, 0.3), ParamPoint::new(0.8, -1.2)] {
            let b = curvature_bundle(&s, p).unwrap();
            close(b.k_extrinsic, kind.exact_k(p), t, "torus K oracle");
            assert!(b.max_route_gap() < t, "routes {b:?}");
            let (r1, r2) = mainardi_codazzi_residuals(&s, p).unwrap();
            close(r1, 0.0, t, "torus MC");
            close(r2, 0.0, t, "torus MC");
            let (r1, r2) = theta_mc_residuals(&s, p).unwrap();
            close(r1, 0.0, t, "torus Θ-MC");
            close(r2, 0.0, t, "torus Θ-MC");
        }
    }
    let plane = patch("plane", DerivativeMode::Dual);
    let b = curvature_bundle(&plane, ParamPoint::new(0.0, 0.0)).unwrap();
    assert!(matches!(b.q_tilde(), Err(Error::FlatPointForImage { .. })));
    let cyl = patch("cylinder{R=2}", DerivativeMode::Dual);
    assert!(matches!(
        theta_mc_residuals(&cyl, ParamPoint::new(0.0, 0.0)),
        Err(Error::FlatPointForImage { .. })
    ));
}
