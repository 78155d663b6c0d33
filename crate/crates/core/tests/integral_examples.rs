use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI, TAU};

use beltrami::catalog;
use beltrami::curves::{curve_frame, line_integral, LineIntegrand, Piece, SurfaceCurve};
use beltrami::field::FieldArgs;
use beltrami::geometry::{GeometrySettings, LocalGeometry};
use beltrami::integrals::{self, ConstraintKind, Integrator, QuadratureSettings};
use beltrami::region::{Axis, DomainRegion};
use beltrami::{DerivativeMode, Error, ParamPoint, Rect, ScalarField, SurfacePatch, Taylor};

fn patch(spec: &str) -> SurfacePatch {
    catalog::surface(spec).unwrap().patch
}

fn settings(s: &SurfacePatch) -> GeometrySettings {
    GeometrySettings::new(s, DerivativeMode::Dual, 16)
}

fn ig(s: &SurfacePatch) -> Integrator<'_> {
    Integrator::new(s, settings(s), QuadratureSettings::default())
}

fn cap(u0: f64) -> DomainRegion {
    DomainRegion::Disk {
        center: ParamPoint::new(0.0, 0.0),
        radius: (0.5 * u0).tan(),
    }
}

fn latitude(u0: f64) -> SurfaceCurve {
    SurfaceCurve::open(vec![Piece::Line {
        a: ParamPoint::new(u0, -PI),
        b: ParamPoint::new(u0, PI),
    }])
}

fn sphere_band(u0: f64, u1: f64) -> DomainRegion {
    DomainRegion::Band {
        rect: Rect::new(u0, u1, -PI, PI),
        periodic: Axis::V,
    }
}

fn height() -> ScalarField {
    ScalarField::new("z", |a: &FieldArgs| a.x[2])
}

fn close(a: f64, b: f64, t: f64, what: &str) {
    assert!((a - b).abs() < t, "{what}: {a} vs {b} (tol {t})");
}

#[test]
fn geodesic_curvature_of_latitudes_and_lines() {
    let s = patch("sphere");
    let st = settings(&s);
    for t in [0.1, 0.5, 0.9] {
        let eq = curve_frame(&latitude(FRAC_PI_2), &s, &st, t, None).unwrap();
        for k in [eq.kg, eq.kg_theta, eq.kg_ambient] {
            close(k, 0.0, 1e-10, "equator k_g");
        }
        let lat = curve_frame(&latitude(FRAC_PI_4), &s, &st, t, None).unwrap();
        for k in [lat.kg, lat.kg_theta, lat.kg_ambient] {
            close(k, 1.0, 1e-10, "latitude k_g");
        }
        close(lat.s, t * TAU * FRAC_PI_4.sin(), 1e-9, "arclength");
    }
    let plane = patch("plane");
    let line = SurfaceCurve::open(vec![Piece::Line {
        a: ParamPoint::new(-0.5, -0.2),
        b: ParamPoint::new(0.7, 0.4),
    }]);
    let st = settings(&plane);
    let a = curve_frame(&line, &plane, &st, 0.2, None).unwrap();
    let b = curve_frame(&line, &plane, &st, 0.8, None).unwrap();
    close(a.kg, 0.0, 1e-12, "line k_g");
    close(a.phi, b.phi, 1e-12, "line φ");
}

#[test]
fn tangent_angle_unwraps_around_a_circle() {
    let plane = patch("plane");
    let c = SurfaceCurve::circle(ParamPoint::new(0.1, 0.0), 0.8);
    let f = curve_frame(&c, &plane, &settings(&plane), 0.999, None).unwrap();
    close(f.phi - FRAC_PI_2, 0.999 * TAU, 1e-6, "unwrapped φ");
    close(f.kg, 1.0 / 0.8, 1e-10, "circle k_g");
}

#[test]
fn line_integral_examples() {
    let one = ScalarField::constant(1.0);
    let plane = patch("plane");
    let curves = DomainRegion::Disk {
        center: ParamPoint::new(0.2, -0.1),
        radius: 0.9,
    }
    .boundary();
    let dphi = line_integral(&LineIntegrand::Dphi(&one), &curves, &plane, &settings(&plane), 8, 1e-9).unwrap();
    close(dphi, TAU, 1e-8, "∮dφ");

    let s = patch("sphere");
    let ds = line_integral(
        &LineIntegrand::Ds(&one),
        &[latitude(FRAC_PI_4)],
        &s,
        &settings(&s),
        8,
        1e-9,
    )
    .unwrap();
    close(ds, TAU * FRAC_PI_4.sin(), 1e-10, "latitude length");
    let w12 = |g: &LocalGeometry| g.w12;
    let eq = line_integral(
        &LineIntegrand::Form(&w12),
        &[latitude(FRAC_PI_2)],
        &s,
        &settings(&s),
        8,
        1e-9,
    )
    .unwrap();
    close(eq, 0.0, 1e-12, "∮ω₁₂ equator");
}

#[test]
fn area_examples() {
    let s = patch("sphere");
    let a = ig(&s).area_of(&sphere_band(0.1, PI - 0.1)).unwrap();
    close(a, TAU * (0.1f64.cos() - (PI - 0.1).cos()), 1e-10, "zone");
    let st = patch("sphere_stereo");
    close(ig(&st).area_of(&cap(FRAC_PI_2)).unwrap(), TAU, 1e-10, "hemisphere");
    let plane = patch("plane");
    let r = DomainRegion::Rect(Rect::new(-1.0, 1.0, -0.5, 0.5));
    let k = ig(&plane).area(&r, 0, |g| Ok([g.k.value()])).unwrap()[0];
    close(k, 0.0, 1e-14, "∫∫K plane");
}

#[test]
fn gauss_bonnet_examples() {
    let st = patch("sphere_stereo");
    for u0 in [FRAC_PI_3, FRAC_PI_2] {
        let b = integrals::gauss_bonnet(&ig(&st), &cap(u0)).unwrap();
        assert!(b.residual() < 1e-7, "cap {u0}: {b:?}");
    }
    let plane = patch("plane");
    let d = DomainRegion::Disk {
        center: ParamPoint::new(0.0, 0.0),
        radius: 0.7,
    };
    assert!(integrals::gauss_bonnet(&ig(&plane), &d).unwrap().residual() < 1e-8);
    let r = DomainRegion::Rect(Rect::new(-0.5, 0.8, -0.3, 0.9));
    assert!(integrals::gauss_bonnet(&ig(&plane), &r).unwrap().residual() < 1e-8);
    let torus = patch("torus");
    let band = DomainRegion::Band {
        rect: Rect::new(-1.0, 1.0, -PI, PI),
        periodic: Axis::V,
    };
    let b = integrals::gauss_bonnet(&ig(&torus), &band).unwrap();
    assert!(b.residual() < 1e-7, "{b:?}");
}

#[test]
fn theorem2_examples() {
    let st = patch("sphere_stereo");
    let i = ig(&st);
    let one = ScalarField::constant(1.0);
    assert!(integrals::theorem2(&i, &one, &cap(FRAC_PI_3)).unwrap().residual() < 1e-7);
    let b = integrals::theorem2(&i, &height(), &cap(FRAC_PI_3)).unwrap();
    assert!(b.residual() < 1e-6, "{b:?}");
    let b = integrals::theorem3(&i, &height(), &cap(FRAC_PI_3)).unwrap();
    assert!(b.residual() < 1e-6, "{b:?}");
    let c2 = integrals::corollary2(&i, &cap(FRAC_PI_2)).unwrap();
    close(c2.lhs, TAU, 1e-8, "hemisphere area");
    assert!(c2.residual() < 1e-6, "{c2:?}");

    // log tan(u/2) is harmonic on the polar chart.
    let s = patch("sphere");
    let f = ScalarField::uv("log tan(u/2)", |u, _| (*u * 0.5).sin().ln() - (*u * 0.5).cos().ln());
    let b = integrals::theorem2_harmonic(&ig(&s), &f, &sphere_band(0.6, 1.9)).unwrap();
    assert!(b.residual() < 1e-7, "{b:?}");
}

#[test]
fn green_examples() {
    let plane = patch("plane");
    let d = DomainRegion::Disk {
        center: ParamPoint::new(0.0, 0.0),
        radius: 1.0,
    };
    let u = ScalarField::uv("u", |u, _| *u);
    let v = ScalarField::uv("v", |_, v| *v);
    let b = integrals::green(&ig(&plane), &u, &v, &d).unwrap();
    close(b.lhs, PI, 1e-10, "∮u dv");
    assert!(b.residual() < 1e-8);
    let b = integrals::green(&ig(&plane), &u, &u, &d).unwrap();
    close(b.lhs, 0.0, 1e-12, "∮u du");
    let st = patch("sphere_stereo");
    let x = ScalarField::new("x", |a: &FieldArgs| a.x[0]);
    let b = integrals::green(&ig(&st), &height(), &x, &cap(FRAC_PI_3)).unwrap();
    assert!(b.residual() < 1e-6, "{b:?}");
}

#[test]
fn theorem10_and_corollary4_examples() {
    let st = patch("sphere_stereo");
    let i = ig(&st);
    for f in [
        ScalarField::constant(1.0),
        ScalarField::new("y", |a: &FieldArgs| a.x[1]),
        ScalarField::constant(0.0),
    ] {
        for b in integrals::theorem10(&i, &f, &cap(FRAC_PI_3)).unwrap() {
            assert!(b.residual() < 1e-6, "{} {b:?}", f.name);
        }
    }
    let plane = patch("plane");
    let d = DomainRegion::Rect(Rect::new(-0.5, 0.5, -0.5, 0.5));
    assert!(matches!(
        integrals::theorem10(&ig(&plane), &ScalarField::constant(1.0), &d),
        Err(Error::FlatPointForImage { .. })
    ));

    let s = patch("sphere");
    for kind in [ConstraintKind::Omega31, ConstraintKind::Omega32] {
        let b = integrals::corollary4(&ig(&s), &sphere_band(0.6, 1.9), kind).unwrap();
        assert!(b.residual() < 1e-8, "{kind:?} {b:?}");
    }
    let torus = patch("torus");
    let band = DomainRegion::Band {
        rect: Rect::new(-1.0, 1.0, -PI, PI),
        periodic: Axis::V,
    };
    for kind in [ConstraintKind::Omega31, ConstraintKind::Omega32] {
        let b = integrals::corollary4(&ig(&torus), &band, kind).unwrap();
        assert!(b.residual() < 1e-5, "{kind:?} {b:?}");
    }
    let r = integrals::corollary4(&i, &cap(FRAC_PI_3), ConstraintKind::Omega31);
    assert!(matches!(r, Err(Error::ConstraintUnsatisfiable { .. })), "{r:?}");
}

#[test]
fn theorem9_examples() {
    let st = patch("sphere_stereo");
    let w12 = |g: &LocalGeometry| [g.q1, g.q2];
    let b = integrals::theorem9(&ig(&st), &w12, &cap(FRAC_PI_2)).unwrap();
    close(b.rhs, TAU, 1e-9, "hemisphere area");
    assert!(b.residual() < 1e-6, "{b:?}");
    let s = patch("sphere");
    let b = integrals::corollary3(&ig(&s), &sphere_band(0.5, 1.2)).unwrap();
    assert!(b.residual() < 1e-7, "{b:?}");
    assert!(matches!(
        integrals::corollary3(&ig(&st), &cap(FRAC_PI_3)),
        Err(Error::DegenerateTheta { .. })
    ));
}

#[test]
fn theorem14_examples() {
    let st = patch("sphere_stereo");
    let one = ScalarField::constant(1.0);
    let phi = ScalarField::uv("phi", |u, v| (*u * 0.7).sin() + *v * *u * 0.3);
    let b = integrals::theorem14_eq94(&ig(&st), &one, &phi, &cap(FRAC_PI_3), false).unwrap();
    assert!(b.residual() < 1e-7, "{b:?}");
    let plane = patch("plane");
    let u = ScalarField::uv("u", |u, _| *u);
    let d = DomainRegion::Disk {
        center: ParamPoint::new(0.0, 0.0),
        radius: 0.8,
    };
    let b = integrals::theorem14_eq94(&ig(&plane), &u, &phi, &d, false).unwrap();
    assert!(b.residual() < 1e-6, "{b:?}");
    let zero = ScalarField::constant(0.0);
    let b = integrals::theorem14_eq94(&ig(&plane), &zero, &phi, &d, false).unwrap();
    assert_eq!((b.lhs, b.rhs), (0.0, -0.0));

    let s = patch("sphere");
    let half_pi = ScalarField::constant(FRAC_PI_2);
    let b = integrals::theorem14_eq95(&ig(&s), &height(), &half_pi, &sphere_band(0.6, 1.9), false).unwrap();
    assert!(b.residual() < 1e-7, "{b:?}");
    assert!(matches!(
        integrals::theorem14_eq95(&ig(&plane), &u, &phi, &d, false),
        Err(Error::AngleFieldUndefined(_))
    ));
    assert!(matches!(
        integrals::corollary6(&ig(&st), &phi, &cap(FRAC_PI_2)),
        Err(Error::AngleFieldUndefined(_))
    ));
}

#[test]
fn stokes_and_turning_numbers() {
    let torus = patch("torus");
    let fields = beltrami::field::random_fields(42, 3);
    let r = DomainRegion::Rect(Rect::new(-0.8, 0.9, -1.0, 1.2));
    let b = integrals::stokes(&ig(&torus), &fields[0], &fields[1], &fields[2], &r).unwrap();
    assert!(b.residual() < 1e-8, "{b:?}");
    let plane = patch("plane");
    let t = integrals::turning_numbers(&ig(&plane), &r).unwrap();
    close(t[0], 1.0, 1e-9, "turning number");
    let b = integrals::corollary1_bound(&ig(&plane), &r).unwrap();
    assert!(b.lhs >= b.rhs - 1e-8);
    let _ = Taylor::constant(0.0, 0);
}
