//! The `λ`/`μ` machinery on charts of revolution, with `λ = v` and
//! `μ` from `q = μ ∇λ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::LocalGeometry;
use crate::integrals::{Balance, Integrator};
use crate::operators::{d_omega, pi2};
use crate::region::DomainRegion;
use crate::taylor::Taylor;
use crate::tolerances::MU_FLOOR;

/// `λ = v` and `μ = ⟨q, ∇λ⟩ / |∇λ|²` as jets.
#[derive(Debug, Clone, Copy)]
pub struct LambdaMu {
    pub lambda: Taylor,
    pub mu: Taylor,
    pub grad_lambda: [Taylor; 2],
}

impl LambdaMu {
    pub fn new(g: &LocalGeometry) -> Result<Self> {
        let (_, v) = g.coords();
        let grad_lambda = g.grad(&v);
        let [l1, l2] = grad_lambda;
        let n2 = l1 * l1 + l2 * l2;
        if n2.value() < MU_FLOOR {
            return Err(Error::DegenerateMu {
                value: n2.value().sqrt(),
            });
        }
        let mu = (g.q1 * l1 + g.q2 * l2) / n2;
        Ok(Self {
            lambda: v,
            mu,
            grad_lambda,
        })
    }

    /// `|∇₁λ ∇₂λ; q₁ q₂|`.
    pub fn eq83(&self, g: &LocalGeometry) -> f64 {
        let [l1, l2] = self.grad_lambda;
        (l1 * g.q2 - l2 * g.q1).value()
    }

    /// `∇₁μ∇₂λ − ∇₁λ∇₂μ + K`.
    pub fn eq93(&self, g: &LocalGeometry) -> f64 {
        let [m1, m2] = g.grad(&self.mu);
        let [l1, l2] = self.grad_lambda;
        (m1 * l2 - l1 * m2 + g.k).value()
    }

    /// `Π₂λ^ν + Kλ^ν`.
    pub fn eq90(&self, g: &LocalGeometry, nu: i32) -> f64 {
        let l = self.lambda.powi(nu);
        (pi2(g, &l) + g.k * l).value()
    }

    /// `Π₂ sin λ + K sin λ`.
    pub fn eq91(&self, g: &LocalGeometry) -> f64 {
        let s = self.lambda.sin();
        (pi2(g, &s) + g.k * s).value()
    }

    pub fn d12(&self, g: &LocalGeometry, f: &Taylor) -> f64 {
        d_omega(g, f, &g.q1, &g.q2).value()
    }

    /// `D_{ω₁₂} μ^ν` with the stated value `(ν−1)Kμ^ν` and the value
    /// `−(ν+1)Kμ^ν` that follows on the sphere.
    pub fn eq86(&self, g: &LocalGeometry, nu: i32) -> Measured {
        let m = self.mu.powi(nu);
        let km = (g.k * m).value();
        Measured {
            value: self.d12(g, &m),
            stated: (nu - 1) as f64 * km,
            oracle: -(nu + 1) as f64 * km,
            scale: km,
        }
    }

    /// `Π₂μ`, stated to vanish.
    pub fn eq89(&self, g: &LocalGeometry) -> Measured {
        let km = (g.k * self.mu).value();
        Measured {
            value: pi2(g, &self.mu).value(),
            stated: 0.0,
            oracle: -2.0 * km,
            scale: km,
        }
    }

    /// `D_{ω₁₂}μ`, stated to vanish.
    pub fn eq85(&self, g: &LocalGeometry) -> Measured {
        let km = (g.k * self.mu).value();
        Measured {
            value: self.d12(g, &self.mu),
            stated: 0.0,
            oracle: -2.0 * km,
            scale: km,
        }
    }

    /// `D_{ω₁₂} f(μ)` for `f = sin`, stated as `K(f(0) − f(μ) + μ f′(μ))`;
    /// on the sphere it is `−K(f(μ) + μ f′(μ))`.
    pub fn eq87(&self, g: &LocalGeometry) -> Measured {
        let f = self.mu.sin();
        let (k, m) = (g.k.value(), self.mu.value());
        Measured {
            value: self.d12(g, &f),
            stated: k * (0.0 - m.sin() + m * m.cos()),
            oracle: -k * (m.sin() + m * m.cos()),
            scale: k * m.sin(),
        }
    }
}

/// A measured value with the stated and derived closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Measured {
    pub value: f64,
    pub stated: f64,
    pub oracle: f64,
    /// Normaliser for the reported ratio, e.g. `Kμ`.
    pub scale: f64,
}

impl Measured {
    pub fn stated_gap(&self) -> f64 {
        (self.value - self.stated).abs()
    }

    pub fn oracle_gap(&self) -> f64 {
        (self.value - self.oracle).abs()
    }

    pub fn ratio(&self) -> Option<f64> {
        (self.scale.abs() > 1e-12).then(|| self.value / self.scale)
    }
}

/// The four members of `∮λdμ = −∮μdλ = ∫∫K = ∮δψ`, with `δψ = −ω₁₂`.
pub fn eq84(ig: &Integrator, region: &DomainRegion) -> Result<[f64; 4]> {
    let b = ig.boundary(region)?;
    let lm = |n: &crate::curves::CurveNode| LambdaMu::new(&n.geo);
    let rate = |n: &crate::curves::CurveNode, t: &Taylor| t.partial(1, 0) * n.vel[0] + t.partial(0, 1) * n.vel[1];
    let l_dm = b.form(|n| match lm(n) {
        Ok(x) => x.lambda.value() * rate(n, &x.mu),
        Err(_) => f64::NAN,
    })?;
    let m_dl = b.form(|n| match lm(n) {
        Ok(x) => -x.mu.value() * rate(n, &x.lambda),
        Err(_) => f64::NAN,
    })?;
    let [k] = ig.area(region, 0, |g| Ok([g.k.value()]))?;
    let dpsi = b.form(|n| -n.w12_rate())?;
    Ok([l_dm, m_dl, k, dpsi])
}

/// `∮ μ ω₁₂`, stated to vanish.
pub fn eq88(ig: &Integrator, region: &DomainRegion) -> Result<Balance> {
    let b = ig.boundary(region)?;
    let v = b.form(|n| match LambdaMu::new(&n.geo) {
        Ok(x) => x.mu.value() * n.w12_rate(),
        Err(_) => f64::NAN,
    })?;
    Ok(Balance::new(v, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::operators::geometry_at;
    use crate::surface::ParamPoint;

    #[test]
    fn sphere_closed_forms() {
        let s = catalog::surface("sphere").unwrap().patch;
        for u in [0.6, 1.0, 2.0] {
            let g = geometry_at(&s, ParamPoint::new(u, 0.4)).unwrap();
            let lm = LambdaMu::new(&g).unwrap();
            assert!((lm.mu.value() - u.cos()).abs() < 1e-12);
            assert!(lm.eq83(&g).abs() < 1e-12);
            assert!(lm.eq93(&g).abs() < 1e-10);
            assert!(lm.eq90(&g, 1).abs() < 1e-10);
            let m = lm.eq89(&g);
            assert!(m.oracle_gap() < 1e-10, "{m:?}");
            for nu in 1..=4 {
                assert!(lm.eq86(&g, nu).oracle_gap() < 1e-10);
            }
            assert!(lm.eq87(&g).oracle_gap() < 1e-10);
        }
    }
}
