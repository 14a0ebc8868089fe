use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (e.g. `|z| >= 1`).
    #[error("domain error: {0}")]
    Domain(String),

    /// The Herglotz measure has an atom at the requested boundary point.
    #[error("Herglotz measure has an atom at theta = {theta}")]
    AtomAtPoint { theta: f64 },

    /// The boundary point is not a contact point (e.g. a positive real constant is present).
    #[error("boundary point theta = {theta} is not a contact point")]
    NotContactPoint { theta: f64 },

    #[error("root finding failed: {0}")]
    RootFindingFailure(String),

    #[error("quadrature did not reach the requested accuracy (estimate {estimate:e}, error {error:e})")]
    QuadratureFailure { estimate: f64, error: f64 },

    #[error("degenerate configuration: {0}")]
    DegenerateConfig(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    /// Structural validation of an input object failed.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("spectral values do not sum to one (sum = {sum})")]
    Normalization { sum: f64 },

    #[error("invalid probability weights: {0}")]
    Weight(String),

    /// The generator is the trivial one (G = 0) and the requested quantity is undefined.
    #[error("operation undefined for the trivial generator")]
    TrivialGenerator,

    /// A Berkson-Porta pair does not belong to the requested class.
    #[error("generator is not in the class: {0}")]
    NotInClass(String),

    #[error("ODE step control stalled at t = {t} (h = {h:e})")]
    StepFailure { t: f64, h: f64 },

    #[error("trajectory reached the unit circle at t = {t} (|w| = {modulus})")]
    BoundaryEscape { t: f64, modulus: f64 },

    #[error("extrapolation did not converge (last increment {increment:e})")]
    ExtrapolationDivergence { increment: f64 },

    #[error("field does not match target boundary derivative k = {k}: {got} vs {want}")]
    TargetMismatch { k: usize, got: f64, want: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
