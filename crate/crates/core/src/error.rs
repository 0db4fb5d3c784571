use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("oracle too large: {candidates} candidate maps exceed the bound {bound}")]
    OracleTooLarge { candidates: u128, bound: u128 },

    #[error("tree at level {found} does not fit a level-{expected} forest")]
    LevelMismatch { expected: usize, found: usize },

    #[error("the empty forest is the bottom element")]
    BottomElement,

    #[error("cannot lower level by lifting (level {from} to {to})")]
    CannotLower { from: usize, to: usize },

    #[error("bottom has no term")]
    BottomHasNoTerm,

    #[error("term exceeds jump bound {bound}: exponent {exponent} has non-constant operands")]
    ExceedsJumpBound { bound: usize, exponent: usize },

    #[error("term outside window [{low}, {high}): exponent {exponent}")]
    OutsideWindow {
        low: usize,
        high: usize,
        exponent: usize,
    },

    #[error("zero has no last term")]
    ZeroHasNoLastTerm,

    #[error("ordinal coefficient overflow")]
    Overflow,

    #[error("finite alphabet required for T-family")]
    InfiniteAlphabet,

    #[error("color {color} is out of range for k = {k}")]
    ColorOutOfRange { color: u32, k: u32 },

    #[error("segment too large: {count} forests exceed the limit {limit}")]
    SegmentTooLarge { count: usize, limit: usize },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("term mixes the G signature with graded products")]
    MixedSignatures,

    #[error("malformed segment file, line {line}: {msg}")]
    SegmentFormat { line: usize, msg: String },
}

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }

    /// True for refusals caused by a resource guard rather than bad input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(
            self,
            Error::OracleTooLarge { .. } | Error::SegmentTooLarge { .. }
        )
    }
}
