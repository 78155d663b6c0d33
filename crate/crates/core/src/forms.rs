//! 1-forms and 2-forms in chart coordinates.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::FrameData;
use crate::taylor::Taylor;

/// `A du + B dv`. Pointwise with `T = f64`, a local field with `T = Taylor`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Form1<T = f64> {
    pub du: T,
    pub dv: T,
}

/// `C du∧dv`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Form2<T = f64> {
    pub c: T,
}

/// `(a₁, a₂)` with `ω = a₁ω₁ + a₂ω₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameCoeffs {
    pub a1: f64,
    pub a2: f64,
}

pub const RATIO_FLOOR: f64 = 1e-12;

impl<T> Form1<T> {
    pub const fn new(du: T, dv: T) -> Self {
        Self { du, dv }
    }
}

impl<T> Form1<T>
where
    T: Copy + Mul<Output = T> + Sub<Output = T>,
{
    pub fn wedge(&self, g: &Form1<T>) -> T {
        self.du * g.dv - self.dv * g.du
    }
}

impl<T: Copy + Add<Output = T>> Add for Form1<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.du + o.du, self.dv + o.dv)
    }
}

impl<T: Copy + Sub<Output = T>> Sub for Form1<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.du - o.du, self.dv - o.dv)
    }
}

impl<T: Copy + Neg<Output = T>> Neg for Form1<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.du, -self.dv)
    }
}

impl Form1<Taylor> {
    /// `∂B/∂u − ∂A/∂v`.
    pub fn ext_d(&self) -> Taylor {
        self.dv.du() - self.du.dv()
    }

    pub fn scale(&self, f: &Taylor) -> Self {
        Self::new(self.du * *f, self.dv * *f)
    }

    pub fn value(&self) -> Form1<f64> {
        Form1::new(self.du.value(), self.dv.value())
    }

    /// Exact form `df`.
    pub fn exact(f: &Taylor) -> Self {
        Self::new(f.du(), f.dv())
    }
}

impl Form1<f64> {
    /// Evaluation on a tangent vector `(u̇, v̇)`.
    pub fn apply(&self, du: f64, dv: f64) -> f64 {
        self.du * du + self.dv * dv
    }
}

/// `f ∧ g` for pointwise forms.
pub fn wedge(f: Form1, g: Form1) -> Form2 {
    Form2 { c: f.wedge(&g) }
}

/// Exterior derivative of a local 1-form field at its expansion point.
pub fn ext_d(field: &Form1<Taylor>) -> Result<Form2> {
    if field.du.deg() == 0 || field.dv.deg() == 0 {
        return Err(Error::DifferentiationFailure(
            "1-form field carries no derivative information".into(),
        ));
    }
    let c = field.ext_d().value();
    if c.is_finite() {
        Ok(Form2 { c })
    } else {
        Err(Error::DifferentiationFailure("non-finite exterior derivative".into()))
    }
}

/// `num / den`, refusing denominators below `floor`.
pub fn ratio2_with_floor(num: Form2, den: Form2, floor: f64) -> Result<f64> {
    if den.c.abs() < floor {
        Err(Error::DegenerateDenominator { value: den.c, floor })
    } else {
        Ok(num.c / den.c)
    }
}

pub fn ratio2(num: Form2, den: Form2) -> Result<f64> {
    ratio2_with_floor(num, den, RATIO_FLOOR)
}

/// Expresses `f` in the `(ω₁, ω₂)` coframe.
pub fn to_frame_basis(f: Form1, frame: &FrameData) -> Result<FrameCoeffs> {
    let (w1, w2) = (frame.omega1, frame.omega2);
    let det = frame.coframe_det();
    if det.abs() < RATIO_FLOOR {
        return Err(Error::DegenerateCoframe { det });
    }
    Ok(FrameCoeffs {
        a1: (f.du * w2.dv - f.dv * w2.du) / det,
        a2: (f.dv * w1.du - f.du * w1.dv) / det,
    })
}

/// Inverse of [`to_frame_basis`].
pub fn from_frame_basis(coeffs: FrameCoeffs, frame: &FrameData) -> Form1 {
    let (w1, w2) = (frame.omega1, frame.omega2);
    Form1::new(
        coeffs.a1 * w1.du + coeffs.a2 * w2.du,
        coeffs.a1 * w1.dv + coeffs.a2 * w2.dv,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_wedge_and_antisymmetry() {
        let du = Form1::new(1.0, 0.0);
        let dv = Form1::new(0.0, 1.0);
        assert_eq!(wedge(du, dv).c, 1.0);
        assert_eq!(wedge(dv, du).c, -1.0);
        let f = Form1::new(0.3, -1.7);
        assert_eq!(wedge(f, f).c, 0.0);
    }

    #[test]
    fn exact_forms_are_closed() {
        let u = Taylor::var_u(0.4, 3);
        let v = Taylor::var_v(-0.2, 3);
        let f = u * v + (u * 2.0).sin() * v.exp();
        assert!(ext_d(&Form1::exact(&f)).unwrap().c.abs() < 1e-14);
    }

    #[test]
    fn sin_u_dv_has_cos_u_derivative() {
        let u = Taylor::var_u(0.9, 2);
        let field = Form1::new(Taylor::constant(0.0, 2), u.sin());
        assert!((ext_d(&field).unwrap().c - 0.9_f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn ratio_guards_small_denominators() {
        assert_eq!(ratio2(Form2 { c: 0.0 }, Form2 { c: 2.0 }).unwrap(), 0.0);
        assert!(matches!(
            ratio2(Form2 { c: 1.0 }, Form2 { c: 1e-13 }),
            Err(Error::DegenerateDenominator { .. })
        ));
    }
}
