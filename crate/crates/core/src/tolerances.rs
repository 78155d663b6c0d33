//! Floors and pass thresholds shared by every module.

use crate::surface::DerivativeMode;

/// Smallest `|K|` accepted before dividing by the curvature.
pub const K_FLOOR: f64 = 1e-8;
/// Smallest `|Θ(a₁, a₂)|` accepted on a region.
pub const THETA_FLOOR: f64 = 1e-8;
/// Smallest `|∇₂λ|` accepted when forming `μ`.
pub const MU_FLOOR: f64 = 1e-8;
/// Minimum finite-difference convergence order for a confirmation.
pub const P_MIN: f64 = 1.5;
/// Finest-rung residual under which no order is estimated.
pub const ROUNDING_FLOOR: f64 = 1e-11;
/// Relative change allowed between quadrature refinements, in units of
/// the case tolerance.
pub const QUADRATURE_GATE: f64 = 10.0;

/// Default residual tolerance for a derivative mode.
pub fn for_mode(mode: DerivativeMode) -> f64 {
    match mode {
        DerivativeMode::Analytic | DerivativeMode::Dual => 1e-7,
        DerivativeMode::FiniteDifference => 1e-5,
    }
}
