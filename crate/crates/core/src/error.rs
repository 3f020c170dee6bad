use thiserror::Error;

/// Errors raised by validation and by operations with restricted domains.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("distribution needs at least 2 components, got {len}")]
    DimensionTooSmall { len: usize },

    #[error("cannot generate distributions of dimension {n}; need n >= 2")]
    InvalidDimension { n: usize },

    #[error("component {index} is {value}; every probability must be strictly positive")]
    NonPositiveComponent { index: usize, value: f64 },

    #[error("component {index} is not finite ({value})")]
    NonFiniteComponent { index: usize, value: f64 },

    #[error("components sum to {sum}, which is more than 1e-9 away from 1")]
    SumOutOfTolerance { sum: f64 },

    #[error("dimension mismatch: P has {p} components, Q has {q}")]
    DimensionMismatch { p: usize, q: usize },

    #[error("invalid ratio bounds r = {r}, R = {big_r}; need 0 < r <= 1 <= R")]
    InvalidRatioBounds { r: f64, big_r: f64 },

    #[error("ratio bounds r = {r}, R = {big_r} do not bracket every p_i/q_i of the pair")]
    RatioBoundsViolated { r: f64, big_r: f64 },

    #[error("degenerate interval: r = R = {r}")]
    DegenerateInterval { r: f64 },

    #[error("interval [{r}, {big_r}] must satisfy r < 1 < R")]
    IntervalNotStraddlingOne { r: f64, big_r: f64 },

    #[error("Vajda order m = {m} is out of range; need m >= 1")]
    MOutOfRange { m: f64 },

    #[error("s = {s} is out of range; need s >= -1")]
    SOutOfRange { s: f64 },

    #[error("mean endpoints must be positive, got a = {a}, b = {b}")]
    NonPositiveEndpoint { a: f64, b: f64 },

    #[error("argument x = {x} must be positive")]
    NonPositiveArgument { x: f64 },

    #[error("min_ratio_floor = {floor} must lie in (0, 1]")]
    InvalidRatioFloor { floor: f64 },

    #[error("generator `{label}` is not normalized: f(1) = {value}")]
    NotNormalized { label: String, value: f64 },

    #[error("generator `{label}` is not convex: f''({x}) = {value}")]
    NotConvex { label: String, x: f64, value: f64 },

    #[error("generator `{label}`: f''' changes sign on [{r}, {big_r}], so f'' is not monotone")]
    NonMonotoneSecondDerivative { label: String, r: f64, big_r: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
