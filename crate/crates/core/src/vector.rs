//! Frame-vector operators: `d(X̄ω)` expansions, `Π₂` on vectors, the
//! `Ω_ij`/`Γ_ij` tables and the product rules built on them.
//!
//! Every expansion has an ambient counterpart that differentiates the
//! vector-valued form in ℝ³ coordinates and projects back on the frame.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::ScalarField;
use crate::forms::FrameCoeffs;
use crate::geometry::LocalGeometry;
use crate::operators::{check_k, d_omega, geometry_at, pi2, q_tilde, theta};
use crate::surface::{ParamPoint, SurfacePatch};
use crate::taylor::{dot3, Taylor};

pub type Frame3 = [Taylor; 3];

/// Components of a vector field in the moving frame.
#[derive(Debug, Clone)]
pub struct FrameVectorField {
    pub x1: ScalarField,
    pub x2: ScalarField,
    pub x3: ScalarField,
}

impl FrameVectorField {
    pub fn new(x1: ScalarField, x2: ScalarField, x3: ScalarField) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn tangent(a: ScalarField, b: ScalarField) -> Self {
        Self::new(a, b, ScalarField::constant(0.0))
    }

    /// `ε̄ᵢ` for `i ∈ 1..=3`.
    pub fn basis(i: usize) -> Self {
        let c = |j| ScalarField::constant(if i == j { 1.0 } else { 0.0 });
        Self::new(c(1), c(2), c(3))
    }

    pub fn eval(&self, g: &LocalGeometry) -> Frame3 {
        [self.x1.eval(g), self.x2.eval(g), self.x3.eval(g)]
    }

    pub fn is_tangent(&self, g: &LocalGeometry) -> bool {
        self.x3.eval(g).max_abs() == 0.0
    }
}

/// Named choices of `ω = a₁ω₁ + a₂ω₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameOmega {
    Omega1,
    Omega2,
    Omega12,
    Omega31,
    Omega32,
    Coeffs(FrameCoeffs),
}

impl FrameOmega {
    pub fn coeffs(&self, g: &LocalGeometry) -> [Taylor; 2] {
        let c = |x: f64| Taylor::constant(x, g.deg() + 1);
        match *self {
            FrameOmega::Omega1 => [c(1.0), c(0.0)],
            FrameOmega::Omega2 => [c(0.0), c(1.0)],
            FrameOmega::Omega12 => [g.q1, g.q2],
            FrameOmega::Omega31 => [-g.a, -g.b],
            FrameOmega::Omega32 => [-g.b, -g.c],
            FrameOmega::Coeffs(k) => [c(k.a1), c(k.a2)],
        }
    }

    pub fn label(&self) -> String {
        match self {
            FrameOmega::Omega1 => "ω1".into(),
            FrameOmega::Omega2 => "ω2".into(),
            FrameOmega::Omega12 => "ω12".into(),
            FrameOmega::Omega31 => "ω31".into(),
            FrameOmega::Omega32 => "ω32".into(),
            FrameOmega::Coeffs(k) => format!("{}ω1+{}ω2", k.a1, k.a2),
        }
    }
}

/// `Γ₁₂ = |q₁ q₂; a₁ a₂|`, `Γ₁₃ = |a b; a₁ a₂|`, `Γ₂₃ = |b c; a₁ a₂|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaTable {
    pub g12: f64,
    pub g13: f64,
    pub g23: f64,
}

pub fn gamma(g: &LocalGeometry, w: &[Taylor; 2]) -> [Taylor; 3] {
    let [a1, a2] = *w;
    [g.q1 * a2 - g.q2 * a1, g.a * a2 - g.b * a1, g.b * a2 - g.c * a1]
}

impl GammaTable {
    pub fn at(g: &LocalGeometry, w: &[Taylor; 2]) -> Self {
        let [g12, g13, g23] = gamma(g, w).map(|t| t.value());
        Self { g12, g13, g23 }
    }

    /// `Γᵢⱼ` with `Γⱼᵢ = −Γᵢⱼ` and a zero diagonal; indices are 1-based.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let s = match (i.min(j), i.max(j)) {
            (1, 2) => self.g12,
            (1, 3) => self.g13,
            (2, 3) => self.g23,
            _ => 0.0,
        };
        if i <= j {
            s
        } else {
            -s
        }
    }
}

/// `d(X̄ω)/(ω₁∧ω₂)` by the frame expansion.
pub fn d_vector(g: &LocalGeometry, x: &Frame3, w: &[Taylor; 2]) -> Frame3 {
    let [g12, g13, g23] = gamma(g, w);
    let d = |f: &Taylor| d_omega(g, f, &w[0], &w[1]);
    let [x1, x2, x3] = *x;
    [
        d(&x1) - x2 * g12 - x3 * g13,
        d(&x2) + x1 * g12 - x3 * g23,
        d(&x3) + x1 * g13 + x2 * g23,
    ]
}

/// `d(X̄ω)/(ω₁∧ω₂)` differentiated in ambient coordinates, in the frame.
pub fn d_vector_ambient(g: &LocalGeometry, x: &Frame3, w: &[Taylor; 2]) -> Frame3 {
    let form = g.from_frame(&w[0], &w[1]);
    let ambient: [Taylor; 3] = std::array::from_fn(|k| {
        let fk = x[0] * g.e[0][k] + x[1] * g.e[1][k] + x[2] * g.e[2][k];
        g.d_ratio(&form.scale(&fk))
    });
    std::array::from_fn(|j| dot3(&ambient, &g.e[j]))
}

/// `Ωᵢⱼ(X)` by its closed form: `D_ω X` on the diagonal, `XΓᵢⱼ` off it.
pub fn omega_bracket(g: &LocalGeometry, x: &Taylor, i: usize, j: usize, w: &[Taylor; 2]) -> Taylor {
    if i == j {
        return d_omega(g, x, &w[0], &w[1]);
    }
    let gm = gamma(g, w);
    let s = match (i.min(j), i.max(j)) {
        (1, 2) => gm[0],
        (1, 3) => gm[1],
        _ => gm[2],
    };
    if i < j {
        *x * s
    } else {
        -(*x * s)
    }
}

/// `⟨d(Xε̄ᵢω)/(ω₁∧ω₂), ε̄ⱼ⟩` in ambient coordinates.
pub fn omega_bracket_ambient(g: &LocalGeometry, x: &Taylor, i: usize, j: usize, w: &[Taylor; 2]) -> Taylor {
    let zero = *x * 0.0;
    let mut v = [zero; 3];
    v[i - 1] = *x;
    d_vector_ambient(g, &v, w)[j - 1]
}

/// `Π₂(t̄) = Π₂A ε̄₁ + Π₂B ε̄₂ − K|A B; q̃₁ q̃₂| ε̄₃`.
pub fn pi2_vector(g: &LocalGeometry, a: &Taylor, b: &Taylor) -> Result<Frame3> {
    check_k(g)?;
    let [t1, t2] = q_tilde(g)?;
    Ok([pi2(g, a), pi2(g, b), -(g.k * (*a * t2 - *b * t1))])
}

/// The `ω₁₂` specialisation with `q̃`:
/// `(D₁₂A + Cq̃₂K, D₁₂B − Cq̃₁K, D₁₂C − K|A B; q̃₁ q̃₂|)`.
pub fn proposition1(g: &LocalGeometry, x: &Frame3) -> Result<Frame3> {
    check_k(g)?;
    let [t1, t2] = q_tilde(g)?;
    let d = |f: &Taylor| d_omega(g, f, &g.q1, &g.q2);
    let [a, b, c] = *x;
    Ok([
        d(&a) + c * t2 * g.k,
        d(&b) - c * t1 * g.k,
        d(&c) - g.k * (a * t2 - b * t1),
    ])
}

/// The flat reduction to pure determinants `|∇X q|`.
pub fn corollary9(g: &LocalGeometry, x: &Frame3) -> Frame3 {
    x.map(|f| {
        let [f1, f2] = g.grad(&f);
        f1 * g.q2 - f2 * g.q1
    })
}

/// `Π₂⟨ā,b̄⟩ − ⟨Π₂ā,b̄⟩ − ⟨ā,Π₂b̄⟩ − K⟨ā,b̄⟩` for tangent fields, with the
/// vector `Π₂` taken from the ambient route.
pub fn inner_product_rule(g: &LocalGeometry, a: &[Taylor; 2], b: &[Taylor; 2]) -> Taylor {
    let w = [g.q1, g.q2];
    let zero = a[0] * 0.0;
    let va = [a[0], a[1], zero];
    let vb = [b[0], b[1], zero];
    let pa = d_vector_ambient(g, &va, &w);
    let pb = d_vector_ambient(g, &vb, &w);
    let ab = a[0] * b[0] + a[1] * b[1];
    let lhs = pi2(g, &ab);
    let dot = |p: &Frame3, v: &Frame3| (0..3).map(|i| p[i] * v[i]).fold(zero, |s, t| s + t);
    lhs - dot(&pa, &vb) - dot(&pb, &va) - g.k * ab
}

/// `d⟨h̄ω, μ̄⟩/(ω₁∧ω₂) − ⟨h̄, D_ωμ̄⟩ − ⟨D_ωh̄, μ̄⟩ + Θ(a₁,a₂)⟨h̄, μ̄⟩`, the
/// left side through the chart exterior derivative.
pub fn proposition3(g: &LocalGeometry, h: &Frame3, mu: &Frame3, w: &[Taylor; 2]) -> Taylor {
    let hm = h[0] * mu[0] + h[1] * mu[1] + h[2] * mu[2];
    let lhs = g.d_ratio(&g.from_frame(&w[0], &w[1]).scale(&hm));
    let d = |f: &Taylor| d_omega(g, f, &w[0], &w[1]);
    let mut rhs = -(theta(g, &w[0], &w[1]) * hm);
    for i in 0..3 {
        rhs += h[i] * d(&mu[i]) + d(&h[i]) * mu[i];
    }
    lhs - rhs
}

/// `d(t̄ω)/(ω₁∧ω₂)` and `d(t̄*ω)/(ω₁∧ω₂)` by the ambient route.
fn rotated_pair(g: &LocalGeometry, t: &[Taylor; 2], w: &[Taylor; 2]) -> (Frame3, Frame3) {
    let zero = t[0] * 0.0;
    let p = d_vector_ambient(g, &[t[0], t[1], zero], w);
    let q = d_vector_ambient(g, &[-t[1], t[0], zero], w);
    (p, q)
}

fn dot_values(p: &Frame3, q: &Frame3) -> f64 {
    (0..3).map(|i| p[i].value() * q[i].value()).sum()
}

/// Both sides of `⟨d(t̄ω), d(t̄*ω)⟩ = ⟨d(t̄ω), ε̄₃⟩⟨d(t̄*ω), ε̄₃⟩`, as
/// `ω₁∧ω₂` ratios.
pub fn corollary7(g: &LocalGeometry, t: &[Taylor; 2], w: &[Taylor; 2]) -> (f64, f64) {
    let (p, q) = rotated_pair(g, t, w);
    (dot_values(&p, &q), p[2].value() * q[2].value())
}

/// `|d(t̄ω)×ε̄₃ − d(t̄*ω)×ε̄₃|` as an `ω₁∧ω₂` ratio.
pub fn cross_defect(g: &LocalGeometry, t: &[Taylor; 2], w: &[Taylor; 2]) -> f64 {
    let (p, q) = rotated_pair(g, t, w);
    // X × ε̄₃ = (X₂, −X₁, 0) in the frame
    let d1 = p[1].value() - q[1].value();
    let d2 = q[0].value() - p[0].value();
    d1.hypot(d2)
}

/// Tangential size and normal part `J` of `d[(t̄ − t̄*)ω]/(ω₁∧ω₂)`.
pub fn normal_part(g: &LocalGeometry, t: &[Taylor; 2], w: &[Taylor; 2]) -> (f64, f64) {
    let (p, q) = rotated_pair(g, t, w);
    let r: [f64; 3] = std::array::from_fn(|i| p[i].value() - q[i].value());
    (r[0].hypot(r[1]), r[2])
}

/// `|∇φ; q| t̄* − K t̄ + (cos φ |a b; q| + sin φ |b c; q|) ε̄₃` for
/// `t̄ = cos φ ε̄₁ + sin φ ε̄₂`.
pub fn proposition5(g: &LocalGeometry, phi: &Taylor) -> Frame3 {
    let [p1, p2] = g.grad(phi);
    let j = p1 * g.q2 - p2 * g.q1;
    let (c, s) = (phi.cos(), phi.sin());
    let g13 = g.a * g.q2 - g.b * g.q1;
    let g23 = g.b * g.q2 - g.c * g.q1;
    [-(j * s) - g.k * c, j * c - g.k * s, c * g13 + s * g23]
}

/// `Θ(ε̄₁, ε̄₂) = ∇₁ε̄₂ − ∇₂ε̄₁ + q₁ε̄₁ + q₂ε̄₂` in ambient coordinates.
pub fn theta_e1_e2(g: &LocalGeometry) -> [f64; 3] {
    std::array::from_fn(|k| theta(g, &g.e[0][k], &g.e[1][k]).value())
}

fn values(x: Frame3) -> [f64; 3] {
    x.map(|t| t.value())
}

pub fn d_omega_vector(
    x: &FrameVectorField,
    omega: FrameOmega,
    surface: &SurfacePatch,
    p: ParamPoint,
) -> Result<[f64; 3]> {
    let g = geometry_at(surface, p)?;
    Ok(values(d_vector(&g, &x.eval(&g), &omega.coeffs(&g))))
}

pub fn d_omega_vector_ambient(
    x: &FrameVectorField,
    omega: FrameOmega,
    surface: &SurfacePatch,
    p: ParamPoint,
) -> Result<[f64; 3]> {
    let g = geometry_at(surface, p)?;
    Ok(values(d_vector_ambient(&g, &x.eval(&g), &omega.coeffs(&g))))
}

pub fn pi2_vector_at(t: &FrameVectorField, surface: &SurfacePatch, p: ParamPoint) -> Result<[f64; 3]> {
    let g = geometry_at(surface, p)?;
    let x = t.eval(&g);
    Ok(values(pi2_vector(&g, &x[0], &x[1])?))
}

pub fn omega_bracket_at(
    x: &ScalarField,
    i: usize,
    j: usize,
    omega: FrameOmega,
    surface: &SurfacePatch,
    p: ParamPoint,
) -> Result<f64> {
    let g = geometry_at(surface, p)?;
    Ok(omega_bracket(&g, &x.eval(&g), i, j, &omega.coeffs(&g)).value())
}

pub fn proposition3_residual(
    h: &FrameVectorField,
    mu: &FrameVectorField,
    omega: FrameOmega,
    surface: &SurfacePatch,
    p: ParamPoint,
) -> Result<f64> {
    let g = geometry_at(surface, p)?;
    Ok(proposition3(&g, &h.eval(&g), &mu.eval(&g), &omega.coeffs(&g))
        .value()
        .abs())
}

pub fn corollary7_check(t: &FrameVectorField, omega: FrameOmega, surface: &SurfacePatch, p: ParamPoint) -> Result<f64> {
    let g = geometry_at(surface, p)?;
    let x = t.eval(&g);
    let (l, r) = corollary7(&g, &[x[0], x[1]], &omega.coeffs(&g));
    Ok((l - r).abs())
}
