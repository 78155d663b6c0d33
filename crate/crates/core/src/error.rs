use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point ({u}, {v}) lies outside the parameter domain")]
    PointOutsideDomain { u: f64, v: f64 },
    #[error("chart is not regular at ({u}, {v}): |x_u × x_v| = {norm:e}")]
    RegularityViolation { u: f64, v: f64, norm: f64 },
    #[error("numerical differentiation failed: {0}")]
    DifferentiationFailure(String),
    #[error("2-form denominator {value:e} is below the floor {floor:e}")]
    DegenerateDenominator { value: f64, floor: f64 },
    #[error("coframe is degenerate (determinant {det:e})")]
    DegenerateCoframe { det: f64 },
    #[error("Gauss curvature {k:e} is below the floor; the spherical image is singular here")]
    FlatPointForImage { k: f64 },
    #[error("curve has zero speed at t = {t}")]
    SingularCurvePoint { t: f64 },
    #[error("quadrature did not stabilise: {coarse} vs {fine}")]
    QuadratureNonConvergence { coarse: f64, fine: f64 },
    #[error("angle field cannot be extended over the region: {0}")]
    AngleFieldUndefined(String),
    #[error("Θ(a₁, a₂) = {value:e} comes too close to zero on the region")]
    DegenerateTheta { value: f64 },
    #[error("∇₂λ = {value:e} is below the floor")]
    DegenerateMu { value: f64 },
    #[error("constraint is not integrable on the chart (defect {holonomy:e})")]
    ConstraintUnsatisfiable { holonomy: f64 },
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("requirement not met: {0}")]
    RequirementUnmet(String),
    #[error("unknown surface `{0}`")]
    UnknownSurface(String),
    #[error("configuration error: {0}")]
    ConfigParse(String),
    #[error("report schema `{found}` cannot be merged with `{expected}`")]
    SchemaMismatch { expected: String, found: String },
    #[error("i/o failure: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
