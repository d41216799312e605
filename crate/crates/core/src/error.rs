use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument too close to a pole of Gamma (or of a product factor).
    #[error("pole: {what} is within {threshold:e} of a non-positive integer")]
    Pole { what: String, threshold: f64 },

    /// An argument lies outside the documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A factor of the truncated product vanished.
    #[error("zero factor at k = {k}")]
    ZeroFactor { k: usize },

    /// An iterative method ran out of budget.
    #[error("no convergence in {routine} after {iterations} steps (best = {best_re:e}{best_im:+e}i, err ~ {err_estimate:e})")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
        best_re: f64,
        best_im: f64,
        err_estimate: f64,
    },

    /// The integrand returned NaN or infinity at a node.
    #[error("integrand returned a non-finite value at x = {x:e}")]
    NonFinite { x: f64 },

    /// A root solve failed for a given index.
    #[error("Newton iteration failed for root index {index}")]
    RootNoConvergence { index: usize },

    #[error("|F| = {magnitude:e} at contour sample {sample}, too close to a zero")]
    NearZeroOnContour { sample: usize, magnitude: f64 },

    #[error("winding number {raw} is not within 0.1 of an integer; increase samples")]
    AmbiguousWinding { raw: f64 },

    #[error("rotation symmetry violated at root {index}: {detail}")]
    SymmetryViolation { index: usize, detail: String },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
