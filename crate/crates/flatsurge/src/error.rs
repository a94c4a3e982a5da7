//! Error types, one enum per subsystem.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("triangle {0} edge holonomies do not sum to zero (residual {1:.3e})")]
    TriangleNotClosed(usize, f64),
    #[error("glued edges {0} and {1} do not carry opposite holonomies (residual {2:.3e})")]
    GluingMismatch(usize, usize, f64),
    #[error("triangle {0} is degenerate or negatively oriented (signed area {1:.3e})")]
    DegenerateTriangle(usize, f64),
    #[error("vertex class {0} has cone angle {1:.12} which is not a positive multiple of 2pi")]
    BadConeAngle(usize, f64),
    #[error("vertex class {0} has angle 2pi but is not flagged as a marked point")]
    UnmarkedRegularVertex(usize),
    #[error("gluing is not a fixed-point-free involution at edge {0}")]
    BadGluing(usize),
    #[error("surface is not connected")]
    NotConnected,
    #[error("marked point id {0} does not name a vertex class")]
    BadMarkedPoint(usize),
    #[error("malformed surface data: {0}")]
    Format(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChartError {
    #[error("requested distinguished cycle is separating or dependent: {0}")]
    NotRealizable(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnumerateError {
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurgeryError {
    #[error("surgery locus is obstructed: {0}")]
    NotPermissible(String),
    #[error("cone point has order {found}, surgery requires order {required}")]
    WrongOrder { required: usize, found: usize },
    #[error("closed connection has an adjacent cylinder")]
    HasCylinder,
    #[error("closed connection has multiplicity {0} > 1")]
    MultiplicityAboveOne(usize),
    #[error("angle split {k1}+{k2} does not equal order+1 = {expected}")]
    BadAngleSplit { k1: usize, k2: usize, expected: usize },
    #[error("a tracked connection degenerated during the period deformation: {0}")]
    Degeneration(String),
    #[error("flip budget of {0} exhausted during the period deformation")]
    FlipLimit(usize),
    #[error("connection lengths differ by {0:.3e}, pinch requires equal lengths")]
    LengthMismatch(f64),
    #[error("connections are not parallel (cross residual {0:.3e})")]
    NotParallel(f64),
    #[error("ray with the requested holonomy is obstructed: {0}")]
    RayObstructed(String),
    #[error("surgery loci intersect: {0}")]
    LociIntersect(String),
    #[error(transparent)]
    Chart(#[from] ChartError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SampleError {
    #[error("no suspension representative known for stratum {0}")]
    UnknownStratum(String),
    #[error("admissibility rejection budget of {0} attempts exhausted")]
    RejectionBudget(usize),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
}
