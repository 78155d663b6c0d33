use std::f64::consts::FRAC_PI_4;

use beltrami::catalog;
use beltrami::operators::{geometry_at, theta};
use beltrami::vector::{
    corollary7_check, d_omega_vector, d_omega_vector_ambient, inner_product_rule, omega_bracket_at, pi2_vector_at,
    proposition1, proposition3_residual, theta_e1_e2, FrameOmega, FrameVectorField,
};
use beltrami::{Error, FrameCoeffs, ParamPoint, ScalarField, SurfacePatch};

fn patch(spec: &str) -> SurfacePatch {
    catalog::surface(spec).unwrap().patch
}

fn points(s: &SurfacePatch) -> Vec<ParamPoint> {
    let d = s.domain;
    let (du, dv) = (d.width() / 4.0, d.height() / 4.0);
    [(1.0, 1.0), (2.0, 1.5), (1.3, 3.0), (3.0, 2.2)]
        .map(|(i, j)| ParamPoint::new(d.u0 + i * du, d.v0 + j * dv))
        .to_vec()
}

fn gap(a: [f64; 3], b: [f64; 3]) -> f64 {
    (0..3).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max)
}

fn trig(name: &str) -> ScalarField {
    match name {
        "a" => ScalarField::uv("sin u cos v", |u, v| u.sin() * v.cos()),
        "b" => ScalarField::uv("cos(u − 2v)", |u, v| (*u - *v * 2.0).cos()),
        "c" => ScalarField::uv("sin(u + v)", |u, v| (*u + *v).sin()),
        _ => ScalarField::uv("cos u sin 2v", |u, v| u.cos() * (*v * 2.0).sin()),
    }
}

#[test]
fn d_omega_vector_examples() {
    let plane = patch("plane");
    for p in points(&plane) {
        let d = d_omega_vector(&FrameVectorField::basis(1), FrameOmega::Omega12, &plane, p).unwrap();
        assert_eq!(d, [0.0; 3]);
    }
    let sphere = patch("sphere:R=1");
    for p in points(&sphere) {
        let g = geometry_at(&sphere, p).unwrap();
        let t = theta_e1_e2(&g);
        assert!(t.iter().all(|x| x.abs() < 1e-7), "{t:?}");

        let x = FrameVectorField::basis(1);
        let thm16 = d_omega_vector(&x, FrameOmega::Omega12, &sphere, p).unwrap();
        let prop1 = proposition1(&g, &x.eval(&g)).unwrap().map(|t| t.value());
        let ambient = d_omega_vector_ambient(&x, FrameOmega::Omega12, &sphere, p).unwrap();
        assert!(gap(thm16, prop1) < 1e-7, "{thm16:?} {prop1:?}");
        assert!(gap(thm16, ambient) < 1e-7, "{thm16:?} {ambient:?}");
    }
}

#[test]
fn pi2_vector_examples() {
    let sphere = patch("sphere:R=1");
    let p = ParamPoint::new(FRAC_PI_4, 0.3);
    let v = pi2_vector_at(&FrameVectorField::basis(1), &sphere, p).unwrap();
    assert!((v[0] + 1.0).abs() < 1e-10, "{v:?}");
    assert!(v[1].abs() < 1e-10);

    let plane = patch("plane");
    let t = FrameVectorField::tangent(trig("a"), trig("b"));
    assert!(matches!(
        pi2_vector_at(&t, &plane, ParamPoint::new(0.1, 0.2)),
        Err(Error::FlatPointForImage { .. })
    ));

    let g = geometry_at(&sphere, p).unwrap();
    let e1 = FrameVectorField::basis(1).eval(&g);
    let r = inner_product_rule(&g, &[e1[0], e1[1]], &[e1[0], e1[1]]).value();
    assert!(r.abs() < 1e-7, "{r}");
}

#[test]
fn omega_bracket_examples() {
    let one = ScalarField::constant(1.0);
    let w = FrameOmega::Coeffs(FrameCoeffs { a1: 0.4, a2: -1.3 });
    for spec in ["sphere", "torus", "graph"] {
        let s = patch(spec);
        for p in points(&s) {
            let g = geometry_at(&s, p).unwrap();
            let [a1, a2] = w.coeffs(&g);
            let want = theta(&g, &a1, &a2).value();
            for i in 1..=3 {
                let got = omega_bracket_at(&one, i, i, w, &s, p).unwrap();
                assert!((got - want).abs() < 1e-12, "{spec} Ω{i}{i}");
            }
        }
    }
    let sphere = patch("sphere");
    let x = trig("a");
    for p in sphere.domain.grid(6, 6) {
        let s12 = omega_bracket_at(&x, 1, 2, FrameOmega::Omega31, &sphere, p).unwrap();
        let s21 = omega_bracket_at(&x, 2, 1, FrameOmega::Omega31, &sphere, p).unwrap();
        assert!((s12 + s21).abs() < 1e-8);
    }
    let cylinder = patch("cylinder");
    for p in points(&cylinder) {
        let v = omega_bracket_at(&x, 1, 3, FrameOmega::Omega1, &cylinder, p).unwrap();
        assert!(v.abs() < 1e-12, "{v}");
    }
}

#[test]
fn proposition3_examples() {
    let e1 = FrameVectorField::basis(1);
    let plane = patch("plane");
    for p in points(&plane) {
        let r = proposition3_residual(&e1, &e1, FrameOmega::Omega1, &plane, p).unwrap();
        assert!(r < 1e-12);
    }
    let h = FrameVectorField::new(trig("a"), trig("b"), trig("c"));
    let mu = FrameVectorField::new(trig("d"), trig("a"), trig("b"));
    let sphere = patch("sphere");
    for w in [FrameOmega::Omega2, FrameOmega::Omega12, FrameOmega::Omega32] {
        for p in points(&sphere) {
            assert!(proposition3_residual(&h, &mu, w, &sphere, p).unwrap() < 1e-6);
        }
    }
    let cylinder = patch("cylinder");
    let e2 = FrameVectorField::basis(2);
    for p in points(&cylinder) {
        assert!(proposition3_residual(&e1, &e2, FrameOmega::Omega12, &cylinder, p).unwrap() < 1e-8);
    }
}

#[test]
fn corollary7_examples() {
    let e1 = FrameVectorField::basis(1);
    let plane = patch("plane");
    for p in points(&plane) {
        assert!(corollary7_check(&e1, FrameOmega::Omega1, &plane, p).unwrap() < 1e-12);
    }
    let sphere = patch("sphere");
    for p in points(&sphere) {
        assert!(corollary7_check(&e1, FrameOmega::Omega1, &sphere, p).unwrap() < 1e-7);
    }
    let t = FrameVectorField::tangent(
        ScalarField::uv("cos v", |_, v| v.cos()),
        ScalarField::uv("sin v", |_, v| v.sin()),
    );
    let cylinder = patch("cylinder");
    for p in points(&cylinder) {
        assert!(corollary7_check(&t, FrameOmega::Omega2, &cylinder, p).unwrap() < 1e-7);
    }
}
