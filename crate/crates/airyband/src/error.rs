use std::fmt;

/// Errors raised by the numerical kernels and solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// Ratio function evaluated too close to a zero of its denominator.
    Pole { family: &'static str, index: usize, distance: f64 },
    /// A certified bracket failed its sign check.
    Consistency(String),
    /// Semiclassical formula requested outside its stated interval of validity.
    Validity { quantity: &'static str, h: f64, bound: f64 },
    /// Requested band or index not covered by the solver.
    UnsupportedRange(String),
    /// Counting integer requested exactly at a boundary between two values.
    Boundary { c: f64, lower: usize, upper: usize },
    /// Ordinary differential equation integration failed.
    Integration { y: f64, reason: String },
    /// The supplied bracket does not contain a sign change.
    Bracket { lo: f64, hi: f64 },
    /// Physical constants missing or invalid.
    Conversion(String),
    /// Precondition of an identity check violated.
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain error: {what} (got {value})"),
            Error::Pole { family, index, distance } => write!(
                f,
                "pole of {family}: argument within {distance:e} of zero index {index}"
            ),
            Error::Consistency(msg) => write!(f, "internal consistency error: {msg}"),
            Error::Validity { quantity, h, bound } => write!(
                f,
                "{quantity}: h = {h} outside validity interval (0, {bound})"
            ),
            Error::UnsupportedRange(msg) => write!(f, "unsupported range: {msg}"),
            Error::Boundary { c, lower, upper } => write!(
                f,
                "c = {c} lies on the boundary between counts {lower} and {upper}"
            ),
            Error::Integration { y, reason } => write!(f, "integration failed at y = {y}: {reason}"),
            Error::Bracket { lo, hi } => write!(f, "no sign change in bracket [{lo}, {hi}]"),
            Error::Conversion(msg) => write!(f, "conversion error: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Pole { .. } => "pole",
            Error::Consistency(_) => "consistency",
            Error::Validity { .. } => "validity",
            Error::UnsupportedRange(_) => "unsupported_range",
            Error::Boundary { .. } => "boundary",
            Error::Integration { .. } => "integration",
            Error::Bracket { .. } => "bracket",
            Error::Conversion(_) => "conversion",
            Error::Precondition(_) => "precondition",
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
