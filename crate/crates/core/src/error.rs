use thiserror::Error;

/// Errors raised by the numerical core.
///
/// Variants carry enough context for the CLI to name the offending input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid uncertainty sigma[{index}] = {value}: must be > 0")]
    InvalidUncertainty { index: usize, value: f64 },
    #[error("dataset vectors have mismatched lengths (x: {x}, y: {y}, sigma: {sigma})")]
    LengthMismatch { x: usize, y: usize, sigma: usize },
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("model dimension K = {k} exceeds the number of data points N = {n}")]
    Overparameterized { k: usize, n: usize },
    #[error("model dimension K = {k} exceeds the {available} available basis functions")]
    BasisExhausted { k: usize, available: usize },
    #[error("model dimension must be at least 1")]
    ZeroDimension,
    #[error("basis table has {rows} rows but the dataset has {n} points")]
    BasisShape { rows: usize, n: usize },
    #[error("non-finite basis value at row {row}, column {col}")]
    NonFiniteBasis { row: usize, col: usize },
    #[error("singular design at K = {k}: eigenvalue ratio {ratio:e} below rank tolerance")]
    SingularDesign { k: usize, ratio: f64 },
    #[error("could not complete noise basis: found {found} of {needed} directions")]
    DegenerateSpace { found: usize, needed: usize },
    #[error("zero signal F² at K = {k}; robust criterion undefined")]
    DegenerateSignal { k: usize },
    #[error("argument out of domain: {0}")]
    Domain(&'static str),
    #[error("series did not converge within {0} terms")]
    SeriesLimit(usize),
    #[error("quadrature did not converge (estimated error {error:e})")]
    Quadrature { error: f64 },
    #[error("invalid configuration: {0}")]
    Config(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
