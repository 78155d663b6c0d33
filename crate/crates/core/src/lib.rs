//! Moving-frame differential geometry of parametric surfaces and a
//! numerical verification harness for its operator identities.

pub mod cases;
pub mod catalog;
pub mod config;
pub mod connection;
pub mod curves;
pub mod error;
pub mod exec;
pub mod fd;
pub mod field;
pub mod forms;
pub mod geometry;
pub mod harness;
pub mod integrals;
pub mod lambda_mu;
pub mod operators;
pub mod quadrature;
pub mod region;
pub mod registry;
pub mod report;
pub mod surface;
pub mod taylor;
pub mod tolerances;
pub mod vector;

pub use error::{Error, Result};
pub use field::ScalarField;
pub use forms::{Form1, Form2, FrameCoeffs};
pub use geometry::{frame_at, FrameData, FrameOptions, LocalGeometry};
pub use surface::{DerivativeMode, ParamPoint, Rect, SurfacePatch};
pub use taylor::Taylor;
