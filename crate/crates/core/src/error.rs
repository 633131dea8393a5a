use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at {0}")]
    Pole(f64),
    #[error("argument outside the domain of {func}: {detail}")]
    Domain { func: &'static str, detail: String },
    #[error("invalid parameter for {func}: {detail}")]
    Parameter { func: &'static str, detail: String },
    #[error("series in {0} overflowed the representable range")]
    Overflow(&'static str),
    #[error("series in {func} did not converge within {terms} terms")]
    SeriesLimit { func: &'static str, terms: usize },
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("point rho = {rho} lies outside the {expected} region")]
    Region { rho: f64, expected: &'static str },
    #[error("argument {value} exceeds the supported range of {func} (limit {limit})")]
    Range { func: &'static str, value: f64, limit: f64 },
    #[error("evaluation point sits on a nodal line of {0}")]
    Node(&'static str),
    #[error("lambda = 1 gives a linear phase; the inverse Legendre transform does not exist")]
    DegenerateMap,
    #[error("inverse Jacobian changes sign along the inversion path (multivalent map)")]
    FoldDetected,
    #[error("integral diverges: {0}")]
    Divergence(String),
    #[error("contour winds {0} times around the origin; exactly one turn is required")]
    Winding(i64),
}

pub type Result<T> = core::result::Result<T, Error>;
