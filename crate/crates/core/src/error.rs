use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A value violates the invariants of its type.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A function was evaluated outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("transition matrix is not row-stochastic: {0}")]
    NonStochastic(String),

    #[error("step size {dt} too large: dt * max rate = {product:.4} exceeds {limit}")]
    StepSize { dt: f64, product: f64, limit: f64 },

    #[error("propagated state lost positivity at t = {time}: smallest eigenvalue {eigenvalue:e}")]
    Positivity { time: f64, eigenvalue: f64 },

    /// Step-halving disagreed with the full-step result by more than allowed.
    #[error("integrator accuracy check failed at t = {time}: deviation {deviation:e} > {tolerance:e}")]
    Accuracy { time: f64, deviation: f64, tolerance: f64 },

    #[error("channel parameter {name} = {value} outside [0, 1] beyond tolerance")]
    ParameterRange { name: &'static str, value: f64 },

    #[error("{0}")]
    Config(String),

    #[error("optimizer did not converge: {0}")]
    NotConverged(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Validation problems (bad input, bad config) versus numerical failures.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Positivity { .. }
                | Error::Accuracy { .. }
                | Error::ParameterRange { .. }
                | Error::NotConverged(_)
        )
    }
}
