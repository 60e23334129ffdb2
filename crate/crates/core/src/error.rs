use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("square root of negative rational {0}")]
    NegativeSqrt(String),
    #[error("cannot extract the square part of {0}: factor too large for trial division")]
    FactorizationLimit(String),
    #[error("radicand overflow while multiplying square roots")]
    RadicandOverflow,
    #[error("division by zero")]
    DivisionByZero,

    #[error("site {site} out of range for degree {degree}")]
    SiteOutOfRange { site: usize, degree: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("empty subset where a nonempty one is required")]
    EmptySubset,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("group family `{family}` cannot produce level {level}: {reason}")]
    Recipe { family: String, level: usize, reason: String },

    #[error("unsupported seed: {0}")]
    UnsupportedSeed(String),
    #[error("weight {weight} exceeds the cutoff {cutoff}")]
    CutoffExceeded { weight: i64, cutoff: u32 },
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("weight {weight} is not saturated by level {level}")]
    Unsaturated { weight: u32, level: usize },
    #[error("enumeration budget exceeded: {what} needs {needed}, budget {budget}")]
    Budget { what: String, needed: u128, budget: u128 },
    #[error("unrealizable configuration: {0}")]
    Unrealizable(String),

    #[error("missing limit constants: {0:?}")]
    MissingConstants(Vec<String>),
    #[error("degenerate bilinear form at weight {weight}")]
    DegenerateForm { weight: u32 },
    #[error("indefinite bilinear form at weight {weight}")]
    IndefiniteForm { weight: u32 },

    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error object and the C ABI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NegativeSqrt(_) => "negative_sqrt",
            Error::FactorizationLimit(_) => "factorization_limit",
            Error::RadicandOverflow => "radicand_overflow",
            Error::DivisionByZero => "division_by_zero",
            Error::SiteOutOfRange { .. } => "site_out_of_range",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::EmptySubset => "empty_subset",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::Recipe { .. } => "recipe",
            Error::UnsupportedSeed(_) => "unsupported_seed",
            Error::CutoffExceeded { .. } => "cutoff_exceeded",
            Error::Parse { .. } => "parse",
            Error::Unsaturated { .. } => "unsaturated",
            Error::Budget { .. } => "budget",
            Error::Unrealizable(_) => "unrealizable",
            Error::MissingConstants(_) => "missing_constants",
            Error::DegenerateForm { .. } => "degenerate_form",
            Error::IndefiniteForm { .. } => "indefinite_form",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
