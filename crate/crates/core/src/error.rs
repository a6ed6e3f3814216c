use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("half-space form is constant (all weights are zero)")]
    ConstantForm,
    #[error("empty layer")]
    EmptyLayer,
    #[error("mixed dimensions in layer: unit {unit} has dimension {found}, expected {expected}")]
    MixedDimensions {
        unit: usize,
        expected: usize,
        found: usize,
    },
    #[error("layers {layer} and {next} are not composable: output {output} vs input {input}")]
    NotComposable {
        layer: usize,
        next: usize,
        output: usize,
        input: usize,
    },
    #[error("network has no layers")]
    NoLayers,
    #[error("network is not single-output (last layer has {0} units)")]
    MultiOutput(usize),
    #[error("index {index} out of range 1..={ambient}")]
    IndexOutOfRange { index: usize, ambient: usize },
    #[error("ambient mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("inconsistent index pair: {0}")]
    InconsistentPair(String),
    #[error("empty index pair cannot form a unit")]
    EmptyPair,
    #[error("empty selector")]
    EmptySelector,
    #[error("empty scheme: the network is constantly 0")]
    EmptyScheme,
    #[error("half-space tuples differ")]
    HalfSpaceMismatch,
    #[error("first layers differ; exact equivalence needs a shared first layer")]
    FirstLayerMismatch,
    #[error("expected a {expected} presentation")]
    ModeMismatch { expected: &'static str },
    #[error("size cap exceeded: {what} is {size}, cap {cap}")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
