use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not normalized: |a|^2 + |b|^2 = {norm}")]
    NotNormalized { norm: f64 },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("non-finite amplitude at lattice site {site}")]
    NonFinite { site: i64 },

    #[error("singular point at p = {p}: sin(lambda) vanishes")]
    SingularPoint { p: f64 },

    #[error("{what} = {value} lies outside the domain {bound}")]
    Domain {
        what: &'static str,
        value: f64,
        bound: f64,
    },

    #[error("momentum grid of {grid} points cannot hold {required} sites without wraparound")]
    GridTooSmall { grid: usize, required: usize },

    #[error("momentum grid size must be even, got {0}")]
    OddGrid(usize),

    #[error("quadrature did not reach tolerance {tol:e} (estimate {estimate}, error {error:e})")]
    NoConvergence {
        estimate: Complex64,
        error: f64,
        tol: f64,
    },

    #[error("operation not supported: {0}")]
    Unsupported(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
