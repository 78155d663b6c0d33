//! Named surfaces with their parameters, sample regions and closed-form
//! curvature oracles.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{Elem, FnChart, ParamPoint, Rect, SeparableChart, SurfacePatch, Term};
use crate::taylor::Taylor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphPreset {
    Saddle,
    Paraboloid,
    Wave,
}

impl GraphPreset {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "saddle" => Some(Self::Saddle),
            "paraboloid" => Some(Self::Paraboloid),
            "wave" => Some(Self::Wave),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Saddle => "saddle",
            Self::Paraboloid => "paraboloid",
            Self::Wave => "wave",
        }
    }

    fn terms(&self) -> Vec<Term> {
        match self {
            Self::Saddle => vec![
                Term::new(0.5, Elem::Pow(2), Elem::One),
                Term::new(-0.5, Elem::One, Elem::Pow(2)),
            ],
            Self::Paraboloid => vec![
                Term::new(0.5, Elem::Pow(2), Elem::One),
                Term::new(0.5, Elem::One, Elem::Pow(2)),
            ],
            Self::Wave => vec![Term::new(0.25, Elem::sin(2.0), Elem::One)],
        }
    }

    /// Height partials `(f_u, f_v, f_uu, f_uv, f_vv)`.
    fn partials(&self, u: f64, v: f64) -> [f64; 5] {
        match self {
            Self::Saddle => [u, -v, 1.0, 0.0, -1.0],
            Self::Paraboloid => [u, v, 1.0, 0.0, 1.0],
            Self::Wave => [0.5 * (2.0 * u).cos(), 0.0, -(2.0 * u).sin(), 0.0, 0.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SurfaceKind {
    Plane,
    Cylinder { radius: f64 },
    Sphere { radius: f64 },
    Torus { major: f64, minor: f64 },
    Graph { preset: GraphPreset },
    SphereStereo { radius: f64 },
}

impl SurfaceKind {
    pub fn canonical_name(&self) -> String {
        match self {
            Self::Plane => "plane".into(),
            Self::Cylinder { radius } => format!("cylinder{{R={radius}}}"),
            Self::Sphere { radius } => format!("sphere{{R={radius}}}"),
            Self::Torus { major, minor } => format!("torus{{R={major},r={minor}}}"),
            Self::Graph { preset } => format!("graph{{f={}}}", preset.as_str()),
            Self::SphereStereo { radius } => format!("sphere_stereo{{R={radius}}}"),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            Self::Plane => "plane",
            Self::Cylinder { .. } => "cylinder",
            Self::Sphere { .. } => "sphere",
            Self::Torus { .. } => "torus",
            Self::Graph { .. } => "graph",
            Self::SphereStereo { .. } => "sphere_stereo",
        }
    }

    /// `K ≡ 0` on the whole chart.
    pub fn is_flat(&self) -> bool {
        matches!(
            self,
            Self::Plane
                | Self::Cylinder { .. }
                | Self::Graph {
                    preset: GraphPreset::Wave
                }
        )
    }

    /// Surfaces of revolution charted so that `q₁ = 0`.
    pub fn is_rotational(&self) -> bool {
        matches!(self, Self::Sphere { .. } | Self::Torus { .. })
    }

    /// Scale `s` such that `(s·u, v)` are isothermal coordinates.
    pub fn conformal_scale(&self) -> Option<f64> {
        match *self {
            Self::Plane | Self::SphereStereo { .. } => Some(1.0),
            Self::Cylinder { radius } => Some(radius),
            _ => None,
        }
    }

    pub fn exact_k(&self, p: ParamPoint) -> f64 {
        match *self {
            Self::Plane | Self::Cylinder { .. } => 0.0,
            Self::Sphere { radius } | Self::SphereStereo { radius } => 1.0 / (radius * radius),
            Self::Torus { major, minor } => p.u.cos() / (minor * (major + minor * p.u.cos())),
            Self::Graph { preset } => {
                let [fu, fv, fuu, fuv, fvv] = preset.partials(p.u, p.v);
                let w = 1.0 + fu * fu + fv * fv;
                (fuu * fvv - fuv * fuv) / (w * w)
            }
        }
    }

    /// Closed-form `(a, b, c)` for the outward normal, where the chart has
    /// an orthogonal parametrisation along principal directions.
    pub fn outward_abc(&self, p: ParamPoint) -> Option<[f64; 3]> {
        match *self {
            Self::Plane => Some([0.0; 3]),
            Self::Cylinder { radius } => Some([-1.0 / radius, 0.0, 0.0]),
            Self::Sphere { radius } => Some([-1.0 / radius, 0.0, -1.0 / radius]),
            Self::Torus { major, minor } => {
                let c = p.u.cos();
                Some([-1.0 / minor, 0.0, -c / (major + minor * c)])
            }
            _ => None,
        }
    }

    fn domain(&self) -> Rect {
        match *self {
            Self::Plane => Rect::new(-2.0, 2.0, -2.0, 2.0),
            Self::Cylinder { .. } => Rect::new(-PI, PI, -2.0, 2.0),
            Self::Sphere { .. } => Rect::new(0.1, PI - 0.1, -PI, PI),
            Self::Torus { .. } => Rect::new(-PI, PI, -PI, PI),
            Self::Graph { .. } => Rect::new(-1.5, 1.5, -1.5, 1.5),
            Self::SphereStereo { .. } => Rect::new(-3.0, 3.0, -3.0, 3.0),
        }
    }

    /// Rectangle sampled by the pointwise cases.
    pub fn sample_rect(&self) -> Rect {
        match *self {
            Self::Plane => Rect::new(-1.0, 1.0, -1.0, 1.0),
            Self::Cylinder { .. } => Rect::new(-2.0, 2.0, -1.0, 1.0),
            Self::Sphere { .. } => Rect::new(0.5, PI - 0.5, -PI, PI),
            Self::Torus { .. } => Rect::new(-1.0, 1.0, -PI, PI),
            Self::Graph { .. } => Rect::new(-1.0, 1.0, -1.0, 1.0),
            Self::SphereStereo { .. } => Rect::new(-1.5, 1.5, -1.5, 1.5),
        }
    }

    pub fn patch(&self) -> SurfacePatch {
        let name = self.canonical_name();
        let domain = self.domain();
        let sep = |x: Vec<Term>, y: Vec<Term>, z: Vec<Term>| -> Arc<dyn crate::surface::Chart> {
            Arc::new(SeparableChart { components: [x, y, z] })
        };
        let chart = match *self {
            Self::Plane => sep(
                vec![Term::new(1.0, Elem::Pow(1), Elem::One)],
                vec![Term::new(1.0, Elem::One, Elem::Pow(1))],
                vec![],
            ),
            Self::Cylinder { radius } => sep(
                vec![Term::new(radius, Elem::cos(1.0), Elem::One)],
                vec![Term::new(radius, Elem::sin(1.0), Elem::One)],
                vec![Term::new(1.0, Elem::One, Elem::Pow(1))],
            ),
            Self::Sphere { radius } => sep(
                vec![Term::new(radius, Elem::sin(1.0), Elem::cos(1.0))],
                vec![Term::new(radius, Elem::sin(1.0), Elem::sin(1.0))],
                vec![Term::new(radius, Elem::cos(1.0), Elem::One)],
            ),
            Self::Torus { major, minor } => sep(
                vec![
                    Term::new(major, Elem::One, Elem::cos(1.0)),
                    Term::new(minor, Elem::cos(1.0), Elem::cos(1.0)),
                ],
                vec![
                    Term::new(major, Elem::One, Elem::sin(1.0)),
                    Term::new(minor, Elem::cos(1.0), Elem::sin(1.0)),
                ],
                vec![Term::new(minor, Elem::sin(1.0), Elem::One)],
            ),
            Self::Graph { preset } => sep(
                vec![Term::new(1.0, Elem::Pow(1), Elem::One)],
                vec![Term::new(1.0, Elem::One, Elem::Pow(1))],
                preset.terms(),
            ),
            Self::SphereStereo { radius } => Arc::new(FnChart(move |s: &Taylor, t: &Taylor| {
                let rho2 = *s * *s + *t * *t;
                let k = (rho2 + 1.0).recip() * radius;
                [*s * k * 2.0, *t * k * 2.0, (-rho2 + 1.0) * k]
            })),
        };
        SurfacePatch::new(name, chart, domain)
    }
}

/// A catalog surface: chart plus the metadata the harness needs.
#[derive(Debug, Clone)]
pub struct CatalogSurface {
    pub kind: SurfaceKind,
    pub patch: SurfacePatch,
}

impl CatalogSurface {
    pub fn new(kind: SurfaceKind) -> Self {
        Self {
            kind,
            patch: kind.patch(),
        }
    }

    pub fn name(&self) -> &str {
        &self.patch.name
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogInfo {
    pub family: &'static str,
    pub parameters: &'static str,
    pub example: &'static str,
    pub description: &'static str,
}

pub fn catalog_info() -> Vec<CatalogInfo> {
    vec![
        CatalogInfo {
            family: "plane",
            parameters: "",
            example: "plane",
            description: "x = (u, v, 0)",
        },
        CatalogInfo {
            family: "cylinder",
            parameters: "R (default 2)",
            example: "cylinder{R=2}",
            description: "x = (R cos u, R sin u, v)",
        },
        CatalogInfo {
            family: "sphere",
            parameters: "R (default 1)",
            example: "sphere{R=1}",
            description: "geodesic-polar chart, u in [0.1, pi-0.1]",
        },
        CatalogInfo {
            family: "torus",
            parameters: "R (default 2), r (default 0.5)",
            example: "torus{R=2,r=0.5}",
            description: "x = ((R + r cos u) cos v, (R + r cos u) sin v, r sin u)",
        },
        CatalogInfo {
            family: "graph",
            parameters: "f = saddle | paraboloid | wave (default saddle)",
            example: "graph{f=saddle}",
            description: "x = (u, v, f(u, v))",
        },
        CatalogInfo {
            family: "sphere_stereo",
            parameters: "R (default 1)",
            example: "sphere_stereo{R=1}",
            description: "stereographic chart from the south pole",
        },
    ]
}

/// Splits `name{k=v,...}` or `name:k=v,...` into the name and its map.
pub fn parse_spec(spec: &str) -> Result<(String, BTreeMap<String, String>)> {
    let spec = spec.trim();
    let bad = || Error::UnknownSurface(spec.to_string());
    let (name, rest) = if let Some(i) = spec.find('{') {
        let body = spec[i + 1..].strip_suffix('}').ok_or_else(bad)?;
        (&spec[..i], body)
    } else if let Some((n, r)) = spec.split_once(':') {
        (n, r)
    } else {
        (spec, "")
    };
    let mut params = BTreeMap::new();
    for kv in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(bad)?;
        params.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok((name.trim().to_string(), params))
}

pub fn parse_surface(spec: &str) -> Result<SurfaceKind> {
    let (name, mut params) = parse_spec(spec)?;
    let bad = || Error::UnknownSurface(spec.to_string());
    let mut num = |key: &str, default: f64| -> Result<f64> {
        match params.remove(key) {
            None => Ok(default),
            Some(s) => s
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite() && *x > 0.0)
                .ok_or_else(bad),
        }
    };
    let kind = match name.as_str() {
        "plane" => SurfaceKind::Plane,
        "cylinder" => SurfaceKind::Cylinder { radius: num("R", 2.0)? },
        "sphere" => SurfaceKind::Sphere { radius: num("R", 1.0)? },
        "sphere_stereo" => SurfaceKind::SphereStereo { radius: num("R", 1.0)? },
        "torus" => {
            let major = num("R", 2.0)?;
            let minor = num("r", 0.5)?;
            if minor >= major {
                return Err(bad());
            }
            SurfaceKind::Torus { major, minor }
        }
        "graph" => {
            let preset = match params.remove("f") {
                None => GraphPreset::Saddle,
                Some(s) => GraphPreset::parse(&s).ok_or_else(bad)?,
            };
            SurfaceKind::Graph { preset }
        }
        _ => return Err(bad()),
    };
    if !params.is_empty() {
        return Err(bad());
    }
    Ok(kind)
}

pub fn surface(spec: &str) -> Result<CatalogSurface> {
    Ok(CatalogSurface::new(parse_surface(spec)?))
}

pub fn default_surfaces() -> Vec<SurfaceKind> {
    vec![
        SurfaceKind::Plane,
        SurfaceKind::Cylinder { radius: 2.0 },
        SurfaceKind::Sphere { radius: 1.0 },
        SurfaceKind::Torus { major: 2.0, minor: 0.5 },
        SurfaceKind::Graph {
            preset: GraphPreset::Saddle,
        },
        SurfaceKind::SphereStereo { radius: 1.0 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_parameter_syntaxes() {
        let a = parse_surface("torus{R=3,r=1}").unwrap();
        let b = parse_surface("torus:R=3, r=1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.canonical_name(), "torus{R=3,r=1}");
        assert_eq!(parse_surface("graph{f=wave}").unwrap().family(), "graph");
    }

    #[test]
    fn rejects_unknown_names_and_parameters() {
        for s in [
            "klein",
            "sphere{Q=1}",
            "graph{f=cubic}",
            "torus{R=1,r=2}",
            "cylinder{R=-1}",
        ] {
            assert!(matches!(parse_surface(s), Err(Error::UnknownSurface(_))), "{s}");
        }
    }

    #[test]
    fn canonical_names_round_trip() {
        for k in default_surfaces() {
            assert_eq!(parse_surface(&k.canonical_name()).unwrap(), k);
        }
    }

    #[test]
    fn sample_rects_sit_in_domains() {
        for k in default_surfaces() {
            assert!(k.domain().contains_rect(&k.sample_rect()), "{}", k.canonical_name());
        }
    }
}
