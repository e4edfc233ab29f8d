use thiserror::Error;

/// Errors raised by diagram construction and the operations on diagrams.
///
/// Every variant has a stable machine-readable code (see [`Error::code`])
/// so that CLI reports and bindings can match on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("crossing `{0}` occurs {1} times, expected exactly 2")]
    OccurrenceCountNotTwo(String, usize),
    #[error("empty input denotes zero components; a single circle is written `()`")]
    EmptyInputIsZeroComponents,
    #[error("unknown crossing `{0}`")]
    UnknownCrossing(String),
    #[error("crossing `{0}` is not pure")]
    NotPure(String),
    #[error("crossing `{0}` is not mixed")]
    NotMixed(String),
    #[error("component {0} has odd word length")]
    OddComponentLength(usize),
    #[error("the diagram has an odd number of mixed crossings")]
    OddMixedCount,
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
    #[error("operation requires at least two components")]
    FewerThanTwoComponents,
    #[error("operation requires exactly two components")]
    NotTwoComponents,
    #[error("invalid move site: {0}")]
    InvalidSite(String),
    #[error("cycle {0} is invalid: odd intersection with the other component")]
    InvalidCycle(usize),
    #[error("split status of `{0}` is undecided under the given budget")]
    FilterUndecided(String),
    #[error("pattern equivalence undecided under the given budget")]
    PatternUndecided,
    #[error("ill-formed pattern: {0}")]
    PatternIllFormed(String),
    #[error("the covering has a self-dual unicursal component")]
    SelfDualComponent,
    #[error("corpus error: {0}")]
    Corpus(String),
}

impl Error {
    /// Stable machine-readable code for reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedToken(_) => "MalformedToken",
            Error::OccurrenceCountNotTwo(_, _) => "OccurrenceCountNotTwo",
            Error::EmptyInputIsZeroComponents => "EmptyInputIsZeroComponents",
            Error::UnknownCrossing(_) => "UnknownCrossing",
            Error::NotPure(_) => "NotPure",
            Error::NotMixed(_) => "NotMixed",
            Error::OddComponentLength(_) => "OddComponentLength",
            Error::OddMixedCount => "OddMixedCount",
            Error::NotAKnot(_) => "NotAKnot",
            Error::FewerThanTwoComponents => "FewerThanTwoComponents",
            Error::NotTwoComponents => "NotTwoComponents",
            Error::InvalidSite(_) => "InvalidSite",
            Error::InvalidCycle(_) => "InvalidCycle",
            Error::FilterUndecided(_) => "FilterUndecided",
            Error::PatternUndecided => "PatternUndecided",
            Error::PatternIllFormed(_) => "PatternIllFormed",
            Error::SelfDualComponent => "SelfDualComponent",
            Error::Corpus(_) => "Corpus",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
