use alloc::string::String;

use crate::filter::Rule;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("language tag must not be empty")]
    EmptyLanguage,
    #[error("source and target share the language tag {0:?}")]
    SameLanguage(String),
    #[error("line numbers are 1-based, got 0")]
    ZeroLineNumber,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("rule {0} appears more than once in the rule order")]
    DuplicateRule(Rule),
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("every {side} segment has zero tokens")]
    ZeroLengthSide { side: &'static str },
    #[error("{hypotheses} hypotheses but {references} references")]
    LengthMismatch { hypotheses: usize, references: usize },
    #[error("unknown corpus {0:?}")]
    UnknownCorpus(String),
    #[error("corpus {0:?} is crawled and cannot be a core member")]
    CrawledInCore(String),
    #[error("corpus {0:?} is listed in both core and extension")]
    OverlappingMembers(String),
    #[error("core holds {available} distinct bisegments, need more than val {val} + test {test}")]
    InsufficientCore { available: usize, val: usize, test: usize },
    #[error("reserved set {name:?} asks for {requested} bisegments but {corpus:?} holds {available}")]
    InsufficientReserved {
        name: String,
        corpus: String,
        requested: usize,
        available: usize,
    },
}
