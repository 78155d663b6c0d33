//! Scalar fields on a patch, evaluated as jets.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::LocalGeometry;
use crate::taylor::{TVec3, Taylor};

/// Arguments seen by a field: chart coordinates and the surface point.
pub struct FieldArgs<'a> {
    pub u: &'a Taylor,
    pub v: &'a Taylor,
    pub x: &'a TVec3,
}

type FieldFn = dyn Fn(&FieldArgs) -> Taylor + Send + Sync;

#[derive(Clone)]
pub struct ScalarField {
    pub name: String,
    f: Arc<FieldFn>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarField({})", self.name)
    }
}

impl ScalarField {
    pub fn new(name: impl Into<String>, f: impl Fn(&FieldArgs) -> Taylor + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    /// Field depending on the chart coordinates only.
    pub fn uv(name: impl Into<String>, f: impl Fn(&Taylor, &Taylor) -> Taylor + Send + Sync + 'static) -> Self {
        Self::new(name, move |a: &FieldArgs| f(a.u, a.v))
    }

    pub fn constant(value: f64) -> Self {
        Self::uv(format!("{value}"), move |u, _| Taylor::constant(value, u.deg()))
    }

    pub fn eval_args(&self, args: &FieldArgs) -> Taylor {
        (self.f)(args)
    }

    /// Jet of the field about the geometry's base point.
    pub fn eval(&self, g: &LocalGeometry) -> Taylor {
        let (u, v) = g.coords();
        self.eval_args(&FieldArgs { u: &u, v: &v, x: &g.x })
    }

    /// Point value at chart coordinates, without surface data.
    pub fn value_at(&self, u: f64, v: f64, x: [f64; 3]) -> f64 {
        let x = x.map(Taylor::from);
        self.eval_args(&FieldArgs {
            u: &Taylor::from(u),
            v: &Taylor::from(v),
            x: &x,
        })
        .value()
    }
}

/// Highest frequency used by the random generator.
pub const RANDOM_DEGREE: i32 = 3;

/// Truncated trigonometric polynomial
/// `Σ c_jk cos(j u + k v) + s_jk sin(j u + k v)` over `0 ≤ j, |k| ≤ 3`
/// with coefficients decaying in the frequency.
pub fn random_trig_field(seed: u64, index: usize) -> ScalarField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index as u64 + 1)));
    let mut terms = Vec::new();
    for j in 0..=RANDOM_DEGREE {
        for k in -RANDOM_DEGREE..=RANDOM_DEGREE {
            if j == 0 && k < 0 {
                continue;
            }
            let damp = 1.0 / (1.0 + (j * j + k * k) as f64);
            let cc: f64 = rng.gen_range(-1.0..1.0) * damp;
            let ss: f64 = if j == 0 && k == 0 {
                0.0
            } else {
                rng.gen_range(-1.0..1.0) * damp
            };
            terms.push((j as f64, k as f64, cc, ss));
        }
    }
    ScalarField::uv(format!("trig[{seed}:{index}]"), move |u, v| {
        let mut acc = Taylor::constant(0.0, u.deg().min(v.deg()));
        for &(j, k, cc, ss) in &terms {
            let arg = *u * j + *v * k;
            acc += arg.cos() * cc + arg.sin() * ss;
        }
        acc
    })
}

pub fn random_fields(seed: u64, count: usize) -> Vec<ScalarField> {
    (0..count).map(|i| random_trig_field(seed, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_reproducible() {
        let a = random_trig_field(42, 3).value_at(0.3, -0.8, [0.0; 3]);
        let b = random_trig_field(42, 3).value_at(0.3, -0.8, [0.0; 3]);
        let c = random_trig_field(42, 4).value_at(0.3, -0.8, [0.0; 3]);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn fields_are_periodic_in_both_coordinates() {
        let f = random_trig_field(7, 0);
        let tau = std::f64::consts::TAU;
        let d = f.value_at(0.4, 0.1, [0.0; 3]) - f.value_at(0.4 + tau, 0.1 - tau, [0.0; 3]);
        assert!(d.abs() < 1e-12);
    }
}
