use alloc::string::String;
use core::fmt;

/// Everything that can go wrong inside the engines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed arguments: zero denominators, mismatched sizes, bad orders.
    InvalidInput(String),
    /// Expression text that does not match the grammar.
    Parse { pos: usize, message: String },
    /// The integrand does not fit the requested measure.
    Dispatch(String),
    /// A dimension the measure does not accept (odd for symplectic families, too small, ...).
    InvalidDimension(String),
    /// An entry index outside the allowed range.
    InvalidIndex(String),
    /// Evaluation hit a genuine pole.
    Pole { at: i64 },
    /// A linear system with no unique solution.
    SingularSystem,
    /// The reduced Weingarten system is singular at this concrete dimension.
    SingularDimension { d: i64 },
    /// Degree `2k` is above the configured limit.
    DegreeTooLarge { degree: usize, limit: usize },
    /// Balanced degree above a design's order.
    BeyondDesignOrder { degree: usize, order: usize },
    /// A symbolic dimension where only a concrete one makes sense.
    SymbolicDimension(String),
    /// The result is not a rational function of the dimension.
    NotRational(String),
    /// Repeated symbolic eigenvalues.
    DegenerateSpectrum(String),
    /// Valid input outside what the engines implement.
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(m) => write!(f, "invalid input: {}", m),
            Error::Parse { pos, message } => write!(f, "parse error at position {}: {}", pos, message),
            Error::Dispatch(m) => write!(f, "dispatch error: {}", m),
            Error::InvalidDimension(m) => write!(f, "invalid dimension: {}", m),
            Error::InvalidIndex(m) => write!(f, "invalid index: {}", m),
            Error::Pole { at } => write!(f, "pole at d = {}", at),
            Error::SingularSystem => f.write_str("singular linear system"),
            Error::SingularDimension { d } => {
                write!(f, "the Weingarten system is singular at d = {}; use a larger dimension or symbolic d", d)
            }
            Error::DegreeTooLarge { degree, limit } => {
                write!(f, "degree 2k = {} exceeds the limit {} (raise it explicitly to proceed)", degree, limit)
            }
            Error::BeyondDesignOrder { degree, order } => {
                write!(f, "moment of degree {} exceeds the design order t = {}", degree, order)
            }
            Error::SymbolicDimension(m) => write!(f, "argument error: {}", m),
            Error::NotRational(m) => write!(f, "result is not a rational function of d: {}", m),
            Error::DegenerateSpectrum(m) => write!(f, "degenerate spectrum: {}", m),
            Error::Unsupported(m) => write!(f, "unsupported: {}", m),
        }
    }
}
