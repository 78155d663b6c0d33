//! Integration regions in the parameter plane: rectangles, disks and
//! bands closed up by a periodic coordinate.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::curves::{Piece, SurfaceCurve};
use crate::error::{Error, Result};
use crate::quadrature::composite;
use crate::surface::{ParamPoint, Rect, SurfacePatch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum DomainRegion {
    Rect(Rect),
    Disk {
        center: ParamPoint,
        radius: f64,
    },
    /// A rectangle whose two edges across `periodic` are identified by the
    /// chart, giving an annulus.
    Band {
        rect: Rect,
        periodic: Axis,
    },
}

impl DomainRegion {
    pub fn euler_characteristic(&self) -> i32 {
        match self {
            DomainRegion::Rect(_) | DomainRegion::Disk { .. } => 1,
            DomainRegion::Band { .. } => 0,
        }
    }

    pub fn bounding_rect(&self) -> Rect {
        match *self {
            DomainRegion::Rect(r) | DomainRegion::Band { rect: r, .. } => r,
            DomainRegion::Disk { center, radius } => Rect::new(
                center.u - radius,
                center.u + radius,
                center.v - radius,
                center.v + radius,
            ),
        }
    }

    pub fn label(&self) -> String {
        match self {
            DomainRegion::Rect(r) => {
                format!("rect[{:.4},{:.4}]x[{:.4},{:.4}]", r.u0, r.u1, r.v0, r.v1)
            }
            DomainRegion::Disk { center, radius } => {
                format!("disk({:.4},{:.4};{:.4})", center.u, center.v, radius)
            }
            DomainRegion::Band { rect: r, periodic } => {
                format!("band[{:.4},{:.4}]x[{:.4},{:.4}]/{:?}", r.u0, r.u1, r.v0, r.v1, periodic)
            }
        }
    }

    /// Positively oriented boundary, the region on the left.
    pub fn boundary(&self) -> Vec<SurfaceCurve> {
        let line = |a: (f64, f64), b: (f64, f64)| Piece::Line {
            a: ParamPoint::new(a.0, a.1),
            b: ParamPoint::new(b.0, b.1),
        };
        match *self {
            DomainRegion::Rect(r) => vec![SurfaceCurve::closed(vec![
                line((r.u0, r.v0), (r.u1, r.v0)),
                line((r.u1, r.v0), (r.u1, r.v1)),
                line((r.u1, r.v1), (r.u0, r.v1)),
                line((r.u0, r.v1), (r.u0, r.v0)),
            ])],
            DomainRegion::Disk { center, radius } => vec![SurfaceCurve::circle(center, radius)],
            DomainRegion::Band {
                rect: r,
                periodic: Axis::V,
            } => vec![
                SurfaceCurve::open(vec![line((r.u1, r.v0), (r.u1, r.v1))]),
                SurfaceCurve::open(vec![line((r.u0, r.v1), (r.u0, r.v0))]),
            ],
            DomainRegion::Band {
                rect: r,
                periodic: Axis::U,
            } => vec![
                SurfaceCurve::open(vec![line((r.u0, r.v0), (r.u1, r.v0))]),
                SurfaceCurve::open(vec![line((r.u1, r.v1), (r.u0, r.v1))]),
            ],
        }
    }

    /// Quadrature nodes `(p, w)` for `∫∫ g du dv`, with `panels × panels`
    /// composite Gauss-Legendre panels.
    pub fn area_nodes(&self, panels: usize) -> Vec<(ParamPoint, f64)> {
        match *self {
            DomainRegion::Rect(r) | DomainRegion::Band { rect: r, .. } => {
                let us = composite(r.u0, r.u1, panels);
                let vs = composite(r.v0, r.v1, panels);
                let mut out = Vec::with_capacity(us.len() * vs.len());
                for (u, wu) in &us {
                    for (v, wv) in &vs {
                        out.push((ParamPoint::new(*u, *v), wu * wv));
                    }
                }
                out
            }
            DomainRegion::Disk { center, radius } => {
                let ss = composite(0.0, 1.0, panels);
                let ts = composite(0.0, TAU, panels);
                let mut out = Vec::with_capacity(ss.len() * ts.len());
                for (s, ws) in &ss {
                    for (t, wt) in &ts {
                        let rho = s * radius;
                        out.push((
                            ParamPoint::new(center.u + rho * t.cos(), center.v + rho * t.sin()),
                            ws * wt * s * radius * radius,
                        ));
                    }
                }
                out
            }
        }
    }

    /// Fails unless the region sits inside the chart domain.
    pub fn check_within(&self, surface: &SurfacePatch) -> Result<()> {
        let b = self.bounding_rect();
        if surface.domain.contains_rect(&b) {
            Ok(())
        } else {
            let c = b.center();
            Err(Error::PointOutsideDomain { u: c.u, v: c.v })
        }
    }
}
