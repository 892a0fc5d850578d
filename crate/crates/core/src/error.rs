use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("cannot subtract {subtrahend} from the smaller ordinal {minuend}")]
    Underflow { minuend: String, subtrahend: String },

    #[error("enumeration would exceed {cap} elements")]
    BoundTooLarge { cap: usize },

    #[error("{0} is not a certified member of the monoid")]
    NotDecomposable(String),

    #[error("numerical part has gcd {0}, so the complement in the naturals is infinite")]
    InfiniteGaps(u64),

    #[error("element {0} is not alive in this position")]
    DeadElement(String),

    #[error("poset size {size} exceeds cap {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("{0} is not a nonzero element of the semigroup")]
    NotInSemigroup(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("search exceeded its node budget of {0}")]
    SearchBudget(u64),

    #[error("value {0} does not fit in a machine word")]
    Overflow(String),
}
