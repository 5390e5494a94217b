use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Error, Debug)]
pub enum Error {
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },

    #[error("zero-measure simplex at index {index}")]
    ZeroMeasureSimplex { index: usize },

    #[error("inconsistent ambient dimension: expected {expected}, found {found}")]
    AmbientDimension { expected: usize, found: usize },

    #[error("simplex {simplex} references vertex {vertex}, but only {n_vertices} vertices exist")]
    IndexOutOfRange {
        simplex: usize,
        vertex: usize,
        n_vertices: usize,
    },

    #[error("edge shared by more than two triangles (vertices {a}, {b})")]
    NonManifoldEdge { a: usize, b: usize },

    #[error("vertex {vertex} is used by more than two segments")]
    NonManifoldVertex { vertex: usize },

    #[error("resolution too small to be manifold: {message}")]
    ResolutionTooSmall { message: String },

    #[error("region covers the whole complex; nothing would remain")]
    RegionCoversEverything,

    #[error("invalid region: {message}")]
    InvalidRegion { message: String },

    #[error("non-positive density at vertex {vertex}")]
    NonPositiveDensity { vertex: usize },

    #[error("degenerate simplex {index} rejected during assembly (cotangent overflow)")]
    DegenerateElement { index: usize },

    #[error("requested {k} eigenvalues but the operator has dimension {n}")]
    InvalidEigenCount { k: usize, n: usize },

    #[error("eigensolver did not reach tolerance {tol:e}; worst residual {worst:e}")]
    NonConvergence {
        tol: f64,
        worst: f64,
        partial: crate::spectrum::SpectrumResult,
    },

    #[error("Rayleigh quotient denominator vanishes (f is zero in the mass inner product)")]
    ZeroDenominator,

    #[error("curvature supported only for hypersurfaces and curves (got m={m}, p={p})")]
    UnsupportedCurvature { m: usize, p: usize },

    #[error("unsupported shape: {name}")]
    UnsupportedShape { name: String },

    #[error("tangent frame is not orthonormal (defect {defect:e})")]
    NonOrthonormalFrame { defect: f64 },

    #[error("epsilon must lie in [0,1), got {eps}")]
    InvalidEpsilon { eps: f64 },

    #[error("the metric-measure space is empty")]
    EmptySpace,

    #[error("packing infeasible at radius {r}: placed {placed} of {requested} capacitors")]
    PackingInfeasible {
        r: f64,
        placed: usize,
        requested: usize,
    },

    #[error("capacitor certificate invalid: {message}")]
    InvalidCertificate { message: String },

    #[error("holomorphic curve rejected: {message}")]
    InvalidCurve { message: String },

    #[error("missing index estimate: {message}")]
    MissingEstimate { message: String },

    #[error("invalid spectrum input: {message}")]
    InvalidSpectrumInput { message: String },

    #[error("invalid configuration: {message}")]
    InvalidConfig { message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
