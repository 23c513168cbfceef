use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape must contain at least one subsystem")]
    EmptyShape,
    #[error("subsystem {index} has dimension {dim}; every local dimension must be at least 2")]
    InvalidDimension { index: usize, dim: usize },
    #[error("total dimension exceeds the ceiling of 2^20")]
    DimensionOverflow,
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("amplitude {index} is not finite")]
    NonFiniteAmplitude { index: usize },
    #[error("shapes {left:?} and {right:?} differ")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("cannot normalize a (near-)zero vector")]
    ZeroVector,
    #[error("subsystem {subsystem} out of range for {count} subsystems")]
    SubsystemOutOfRange { subsystem: usize, count: usize },
    #[error("subsystem {0} named more than once")]
    DuplicateSubsystem(usize),
    #[error("level {level} out of range for subsystem {subsystem} of dimension {dim}")]
    LevelOutOfRange { subsystem: usize, level: usize, dim: usize },
    #[error("Pauli strings act only on qubit shapes")]
    NonQubitShape,
    #[error("pre- and post-selected states are orthogonal (|<post|pre>| = {magnitude:e})")]
    OrthogonalSelection { magnitude: f64 },
    #[error("invalid count: {0}")]
    InvalidCount(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("axis labels do not match the shape: {0}")]
    LabelMismatch(String),
    #[error("expected scenario `hardy`, got `{0}`")]
    WrongScenario(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("unknown product-form family `{0}`")]
    UnknownFamily(String),
    #[error("family {family} needs parameter `{param}`")]
    MissingParam { family: String, param: String },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("all local dimensions must be equal, got {0:?}")]
    NonUniformShape(Vec<usize>),
    #[error("grid rendering needs exactly two axes, got {0}")]
    NotTwoAxes(usize),
    #[error("cube rendering needs exactly three axes, got {0}")]
    NotThreeAxes(usize),
    #[error("SVG rendering supports two or three axes, got {0}")]
    UnsupportedRank(usize),
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError { line: usize, column: usize, message: String },
    #[error("schema violation in field `{0}`")]
    SchemaViolation(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// Short variant name, printed by the CLI on the diagnostic stream.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyShape => "EmptyShape",
            Error::InvalidDimension { .. } => "InvalidDimension",
            Error::DimensionOverflow => "DimensionOverflow",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NonFiniteAmplitude { .. } => "NonFiniteAmplitude",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::ZeroVector => "ZeroVector",
            Error::SubsystemOutOfRange { .. } => "SubsystemOutOfRange",
            Error::DuplicateSubsystem(_) => "DuplicateSubsystem",
            Error::LevelOutOfRange { .. } => "LevelOutOfRange",
            Error::NonQubitShape => "NonQubitShape",
            Error::OrthogonalSelection { .. } => "OrthogonalSelection",
            Error::InvalidCount(_) => "InvalidCount",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::LabelMismatch(_) => "LabelMismatch",
            Error::WrongScenario(_) => "WrongScenario",
            Error::UnknownScenario(_) => "UnknownScenario",
            Error::UnknownFamily(_) => "UnknownFamily",
            Error::MissingParam { .. } => "MissingParam",
            Error::OutOfRange(_) => "OutOfRange",
            Error::NonUniformShape(_) => "NonUniformShape",
            Error::NotTwoAxes(_) => "NotTwoAxes",
            Error::NotThreeAxes(_) => "NotThreeAxes",
            Error::UnsupportedRank(_) => "UnsupportedRank",
            Error::ParseError { .. } => "ParseError",
            Error::SchemaViolation(_) => "SchemaViolation",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
