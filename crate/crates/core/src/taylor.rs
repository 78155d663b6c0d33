//! Truncated bivariate Taylor series in the chart offsets `(du, dv)`.
//!
//! A [`Taylor`] value carries every partial derivative of a quantity through
//! its degree, stored as Taylor coefficients `∂u^i ∂v^j f / (i! j!)`. Products,
//! quotients and elementary functions propagate all of them at once, so any
//! expression built from a chart comes with exact derivatives. This is the
//! multivariate generalisation of dual numbers used for the `dual` derivative
//! mode, and the polynomial algebra that the other modes feed into.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Highest supported truncation degree.
pub const MAX_DEGREE: usize = 6;

const NCOEF: usize = (MAX_DEGREE + 1) * (MAX_DEGREE + 2) / 2;

/// Position of the monomial `du^i dv^j` in the coefficient array.
#[inline]
pub const fn index(i: usize, j: usize) -> usize {
    let k = i + j;
    k * (k + 1) / 2 + j
}

#[inline]
const fn ncoef(deg: usize) -> usize {
    (deg + 1) * (deg + 2) / 2
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

#[derive(Clone, Copy, PartialEq)]
pub struct Taylor {
    deg: u8,
    c: [f64; NCOEF],
}

impl fmt::Debug for Taylor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Taylor")
            .field("deg", &self.deg)
            .field("coeffs", &&self.c[..ncoef(self.deg as usize)])
            .finish()
    }
}

impl Taylor {
    pub fn constant(value: f64, deg: usize) -> Self {
        assert!(deg <= MAX_DEGREE, "Taylor degree {deg} exceeds {MAX_DEGREE}");
        let mut c = [0.0; NCOEF];
        c[0] = value;
        Self { deg: deg as u8, c }
    }

    /// The coordinate `u = u0 + du`.
    pub fn var_u(u0: f64, deg: usize) -> Self {
        let mut t = Self::constant(u0, deg);
        if deg > 0 {
            t.c[index(1, 0)] = 1.0;
        }
        t
    }

    /// The coordinate `v = v0 + dv`.
    pub fn var_v(v0: f64, deg: usize) -> Self {
        let mut t = Self::constant(v0, deg);
        if deg > 0 {
            t.c[index(0, 1)] = 1.0;
        }
        t
    }

    /// Builds a series from partial derivatives `∂u^i ∂v^j f`.
    pub fn from_partials(deg: usize, mut partial: impl FnMut(usize, usize) -> f64) -> Self {
        let mut t = Self::constant(0.0, deg);
        for k in 0..=deg {
            for j in 0..=k {
                let i = k - j;
                t.c[index(i, j)] = partial(i, j) / (factorial(i) * factorial(j));
            }
        }
        t
    }

    #[inline]
    pub fn deg(&self) -> usize {
        self.deg as usize
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Taylor coefficient of `du^i dv^j`; zero beyond the degree.
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i + j > self.deg() {
            0.0
        } else {
            self.c[index(i, j)]
        }
    }

    /// Partial derivative `∂u^i ∂v^j` at the expansion point.
    pub fn partial(&self, i: usize, j: usize) -> f64 {
        assert!(
            i + j <= self.deg(),
            "partial of order {} requested from a degree-{} series",
            i + j,
            self.deg
        );
        self.c[index(i, j)] * factorial(i) * factorial(j)
    }

    pub fn truncate(&self, deg: usize) -> Self {
        if deg >= self.deg() {
            return *self;
        }
        let mut t = *self;
        t.deg = deg as u8;
        for x in &mut t.c[ncoef(deg)..] {
            *x = 0.0;
        }
        t
    }

    /// `∂/∂u`, one degree lower.
    pub fn du(&self) -> Self {
        let d = self.deg();
        assert!(d > 0, "cannot differentiate a degree-0 series");
        let mut t = Self::constant(0.0, d - 1);
        for k in 0..d {
            for j in 0..=k {
                let i = k - j;
                t.c[index(i, j)] = (i + 1) as f64 * self.c[index(i + 1, j)];
            }
        }
        t
    }

    /// `∂/∂v`, one degree lower.
    pub fn dv(&self) -> Self {
        let d = self.deg();
        assert!(d > 0, "cannot differentiate a degree-0 series");
        let mut t = Self::constant(0.0, d - 1);
        for k in 0..d {
            for j in 0..=k {
                let i = k - j;
                t.c[index(i, j)] = (j + 1) as f64 * self.c[index(i, j + 1)];
            }
        }
        t
    }

    /// Reassembles a series from its value and both first partials.
    ///
    /// The partials must be the derivatives of one function up to their
    /// degree; only their `u`-part and the pure-`v` column of `gv` are read.
    pub fn integrate(value: f64, gu: &Taylor, gv: &Taylor) -> Self {
        let d = gu.deg().min(gv.deg()) + 1;
        let mut t = Self::constant(value, d.min(MAX_DEGREE));
        let d = t.deg();
        for k in 1..=d {
            for j in 0..=k {
                let i = k - j;
                t.c[index(i, j)] = if i > 0 {
                    gu.c[index(i - 1, j)] / i as f64
                } else {
                    gv.c[index(0, j - 1)] / j as f64
                };
            }
        }
        t
    }

    /// Evaluates the truncated polynomial at an offset.
    pub fn eval(&self, du: f64, dv: f64) -> f64 {
        let mut sum = 0.0;
        for k in 0..=self.deg() {
            for j in 0..=k {
                let i = k - j;
                sum += self.c[index(i, j)] * du.powi(i as i32) * dv.powi(j as i32);
            }
        }
        sum
    }

    pub fn is_finite(&self) -> bool {
        self.c[..ncoef(self.deg())].iter().all(|x| x.is_finite())
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.c[..ncoef(self.deg())].iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Applies `f(g0 + h) = Σ t_k h^k` where `t_k = f^(k)(g0) / k!`.
    fn compose(&self, t: &[f64]) -> Self {
        let d = self.deg();
        let mut h = *self;
        h.c[0] = 0.0;
        let mut out = Self::constant(t[d], d);
        for k in (0..d).rev() {
            out *= h;
            out.c[0] += t[k];
        }
        out
    }

    pub fn exp(&self) -> Self {
        let e = self.value().exp();
        let t: Vec<f64> = (0..=self.deg()).map(|k| e / factorial(k)).collect();
        self.compose(&t)
    }

    pub fn ln(&self) -> Self {
        let g0 = self.value();
        let t: Vec<f64> = (0..=self.deg())
            .map(|k| {
                if k == 0 {
                    g0.ln()
                } else {
                    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                    sign / (k as f64 * g0.powi(k as i32))
                }
            })
            .collect();
        self.compose(&t)
    }

    pub fn sin(&self) -> Self {
        let g0 = self.value();
        let (s, c) = g0.sin_cos();
        let t: Vec<f64> = (0..=self.deg()).map(|k| [s, c, -s, -c][k % 4] / factorial(k)).collect();
        self.compose(&t)
    }

    pub fn cos(&self) -> Self {
        let g0 = self.value();
        let (s, c) = g0.sin_cos();
        let t: Vec<f64> = (0..=self.deg()).map(|k| [c, -s, -c, s][k % 4] / factorial(k)).collect();
        self.compose(&t)
    }

    /// Real power `g^α`; needs `g0 > 0` unless `α` is a non-negative integer.
    pub fn powf(&self, alpha: f64) -> Self {
        let g0 = self.value();
        let mut t = Vec::with_capacity(self.deg() + 1);
        let mut binom = 1.0;
        for k in 0..=self.deg() {
            t.push(binom * g0.powf(alpha - k as f64));
            binom *= (alpha - k as f64) / (k + 1) as f64;
        }
        self.compose(&t)
    }

    pub fn powi(&self, n: i32) -> Self {
        if n < 0 {
            return self.recip().powi(-n);
        }
        let mut out = Self::constant(1.0, self.deg());
        for _ in 0..n {
            out *= *self;
        }
        out
    }

    pub fn sqrt(&self) -> Self {
        self.powf(0.5)
    }

    pub fn recip(&self) -> Self {
        let g0 = self.value();
        let t: Vec<f64> = (0..=self.deg())
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign / g0.powi(k as i32 + 1)
            })
            .collect();
        self.compose(&t)
    }

    /// Four-quadrant angle of `(x, y)`, with `self = y`.
    pub fn atan2(&self, x: &Taylor) -> Self {
        let y = self;
        let value = y.value().atan2(x.value());
        if y.deg().min(x.deg()) == 0 {
            return Self::constant(value, 0);
        }
        let r2 = *x * *x + *y * *y;
        let gu = (*x * y.du() - *y * x.du()) / r2;
        let gv = (*x * y.dv() - *y * x.dv()) / r2;
        Self::integrate(value, &gu, &gv)
    }
}

impl From<f64> for Taylor {
    fn from(value: f64) -> Self {
        Self::constant(value, 0)
    }
}

impl Add for Taylor {
    type Output = Taylor;
    fn add(self, rhs: Taylor) -> Taylor {
        let d = self.deg.min(rhs.deg);
        let mut out = self.truncate(d as usize);
        for k in 0..ncoef(d as usize) {
            out.c[k] += rhs.c[k];
        }
        out
    }
}

impl Sub for Taylor {
    type Output = Taylor;
    fn sub(self, rhs: Taylor) -> Taylor {
        let d = self.deg.min(rhs.deg);
        let mut out = self.truncate(d as usize);
        for k in 0..ncoef(d as usize) {
            out.c[k] -= rhs.c[k];
        }
        out
    }
}

impl Mul for Taylor {
    type Output = Taylor;
    fn mul(self, rhs: Taylor) -> Taylor {
        let d = self.deg().min(rhs.deg());
        let mut out = Taylor::constant(0.0, d);
        for k1 in 0..=d {
            for j1 in 0..=k1 {
                let a = self.c[index(k1 - j1, j1)];
                if a == 0.0 {
                    continue;
                }
                for k2 in 0..=(d - k1) {
                    for j2 in 0..=k2 {
                        out.c[index(k1 - j1 + k2 - j2, j1 + j2)] += a * rhs.c[index(k2 - j2, j2)];
                    }
                }
            }
        }
        out
    }
}

impl Div for Taylor {
    type Output = Taylor;
    fn div(self, rhs: Taylor) -> Taylor {
        self * rhs.recip()
    }
}

impl Neg for Taylor {
    type Output = Taylor;
    fn neg(mut self) -> Taylor {
        for x in &mut self.c {
            *x = -*x;
        }
        self
    }
}

impl Add<f64> for Taylor {
    type Output = Taylor;
    fn add(mut self, rhs: f64) -> Taylor {
        self.c[0] += rhs;
        self
    }
}

impl Sub<f64> for Taylor {
    type Output = Taylor;
    fn sub(mut self, rhs: f64) -> Taylor {
        self.c[0] -= rhs;
        self
    }
}

impl Mul<f64> for Taylor {
    type Output = Taylor;
    fn mul(mut self, rhs: f64) -> Taylor {
        for x in &mut self.c {
            *x *= rhs;
        }
        self
    }
}

impl Div<f64> for Taylor {
    type Output = Taylor;
    fn div(self, rhs: f64) -> Taylor {
        self * (1.0 / rhs)
    }
}

impl Add<Taylor> for f64 {
    type Output = Taylor;
    fn add(self, rhs: Taylor) -> Taylor {
        rhs + self
    }
}

impl Sub<Taylor> for f64 {
    type Output = Taylor;
    fn sub(self, rhs: Taylor) -> Taylor {
        -rhs + self
    }
}

impl Mul<Taylor> for f64 {
    type Output = Taylor;
    fn mul(self, rhs: Taylor) -> Taylor {
        rhs * self
    }
}

impl Div<Taylor> for f64 {
    type Output = Taylor;
    fn div(self, rhs: Taylor) -> Taylor {
        rhs.recip() * self
    }
}

impl AddAssign for Taylor {
    fn add_assign(&mut self, rhs: Taylor) {
        *self = *self + rhs;
    }
}

impl SubAssign for Taylor {
    fn sub_assign(&mut self, rhs: Taylor) {
        *self = *self - rhs;
    }
}

impl MulAssign for Taylor {
    fn mul_assign(&mut self, rhs: Taylor) {
        *self = *self * rhs;
    }
}

/// Ambient 3-vectors whose components are series.
pub type TVec3 = [Taylor; 3];

pub fn dot3(a: &TVec3, b: &TVec3) -> Taylor {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: &TVec3, b: &TVec3) -> TVec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn scale3(a: &TVec3, s: Taylor) -> TVec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn add3(a: &TVec3, b: &TVec3) -> TVec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub3(a: &TVec3, b: &TVec3) -> TVec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn du3(a: &TVec3) -> TVec3 {
    [a[0].du(), a[1].du(), a[2].du()]
}

pub fn dv3(a: &TVec3) -> TVec3 {
    [a[0].dv(), a[1].dv(), a[2].dv()]
}

pub fn truncate3(a: &TVec3, deg: usize) -> TVec3 {
    [a[0].truncate(deg), a[1].truncate(deg), a[2].truncate(deg)]
}

pub fn value3(a: &TVec3) -> [f64; 3] {
    [a[0].value(), a[1].value(), a[2].value()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn product_of_trig_matches_closed_form_partials() {
        let (u0, v0) = (0.3, -0.8);
        let u = Taylor::var_u(u0, 5);
        let v = Taylor::var_v(v0, 5);
        let f = u.sin() * v.cos();
        for i in 0..=5 {
            for j in 0..=(5 - i) {
                let du = [u0.sin(), u0.cos(), -u0.sin(), -u0.cos()][i % 4];
                let dv = [v0.cos(), -v0.sin(), -v0.cos(), v0.sin()][j % 4];
                assert!(close(f.partial(i, j), du * dv, 1e-13), "({i},{j})");
            }
        }
    }

    #[test]
    fn derivative_operators_lower_degree() {
        let u = Taylor::var_u(0.5, 4);
        let v = Taylor::var_v(1.5, 4);
        let f = (u * u * v).exp();
        let fu = f.du();
        assert_eq!(fu.deg(), 3);
        // ∂u exp(u²v) = 2uv exp(u²v)
        let expect = 2.0 * 0.5 * 1.5 * (0.25_f64 * 1.5).exp();
        assert!(close(fu.value(), expect, 1e-14));
        assert!(close(f.du().dv().value(), f.dv().du().value(), 1e-14));
    }

    #[test]
    fn atan2_has_the_polar_angle_gradient() {
        let x = Taylor::var_u(0.6, 3);
        let y = Taylor::var_v(-0.8, 3);
        let th = y.atan2(&x);
        assert!(close(th.value(), (-0.8_f64).atan2(0.6), 1e-15));
        // ∇θ = (−y, x)/r²
        assert!(close(th.partial(1, 0), 0.8, 1e-14));
        assert!(close(th.partial(0, 1), 0.6, 1e-14));
        assert!(close(th.partial(2, 0), -2.0 * 0.6 * 0.8, 1e-13));
    }

    #[test]
    fn integrate_inverts_gradient() {
        let u = Taylor::var_u(0.2, 4);
        let v = Taylor::var_v(0.9, 4);
        let f = u.sin() * v + v.powi(3);
        let g = Taylor::integrate(f.value(), &f.du(), &f.dv());
        for i in 0..=4 {
            for j in 0..=(4 - i) {
                assert!(close(g.coeff(i, j), f.coeff(i, j), 1e-14));
            }
        }
    }

    #[test]
    #[should_panic]
    fn differentiating_degree_zero_panics() {
        let _ = Taylor::constant(1.0, 0).du();
    }

    proptest! {
        #[test]
        fn quotient_inverts_product(a in 0.5f64..2.0, b in -1.0f64..1.0, u0 in -1.0f64..1.0) {
            let u = Taylor::var_u(u0, 4);
            let v = Taylor::var_v(0.3, 4);
            let p = u * a + v.cos() * b;
            let q = u.exp() + v * v;
            let r = (p * q) / q - p;
            prop_assert!(r.max_abs() < 1e-12);
        }

        #[test]
        fn exp_ln_roundtrip(x0 in 0.2f64..3.0) {
            let x = Taylor::var_u(x0, 5) + Taylor::var_v(0.0, 5) * 0.5;
            let back = x.ln().exp() - x;
            prop_assert!(back.max_abs() < 1e-12);
            let s = x.sqrt() * x.sqrt() - x;
            prop_assert!(s.max_abs() < 1e-12);
        }
    }
}
