//! Surface filters for noisy crawled bitext.
//!
//! Each `check_*` function is a pure function of a bisegment and a
//! [`FilterConfig`]. Exact-pair dedup is the only stateful stage. The
//! [`Pipeline`] runs the rules in a fixed [`RuleOrder`] and charges every
//! rejected bisegment to the first rule that rejects it.

mod config;
mod dedup;
mod pipeline;
mod rules;

pub use config::{BracketClass, CodepointRange, FilterConfig, LengthUnit};
pub use dedup::{dedup, pair_fingerprint, Dedup, DedupSet};
pub use pipeline::{run_pipeline, FilterReport, Filtered, Pipeline, RuleOrder, Screening};
pub use rules::{
    check, check_bracket_balance, check_length, check_length_ratio, check_symbols,
    check_within_balance, normalize_nfkc,
};

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Identifier of a rejection rule.
///
/// The declaration order is the canonical order used for report keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Length,
    Ratio,
    Brackets,
    Symbols,
    Dedup,
    /// Within-segment bracket balance. Off unless named in the rule order.
    Balance,
    /// OCR-noise rejection of the modernizer. Not a pipeline rule.
    Ocr,
}

impl Rule {
    pub const PIPELINE: [Rule; 6] = [
        Rule::Length,
        Rule::Ratio,
        Rule::Brackets,
        Rule::Symbols,
        Rule::Dedup,
        Rule::Balance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Length => "length",
            Rule::Ratio => "ratio",
            Rule::Brackets => "brackets",
            Rule::Symbols => "symbols",
            Rule::Dedup => "dedup",
            Rule::Balance => "balance",
            Rule::Ocr => "ocr",
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "length" => Ok(Rule::Length),
            "ratio" => Ok(Rule::Ratio),
            "brackets" => Ok(Rule::Brackets),
            "symbols" => Ok(Rule::Symbols),
            "dedup" => Ok(Rule::Dedup),
            "balance" => Ok(Rule::Balance),
            "ocr" => Ok(Rule::Ocr),
            other => Err(Error::UnknownRule(other.into())),
        }
    }
}

/// Verdict of one rule on one bisegment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilterDecision {
    Keep,
    Reject { rule: Rule, detail: String },
}

impl FilterDecision {
    pub fn reject(rule: Rule, detail: impl Into<String>) -> Self {
        FilterDecision::Reject {
            rule,
            detail: detail.into(),
        }
    }

    pub fn is_keep(&self) -> bool {
        matches!(self, FilterDecision::Keep)
    }

    pub fn rule(&self) -> Option<Rule> {
        match self {
            FilterDecision::Keep => None,
            FilterDecision::Reject { rule, .. } => Some(*rule),
        }
    }

    pub fn detail(&self) -> &str {
        match self {
            FilterDecision::Keep => "",
            FilterDecision::Reject { detail, .. } => detail,
        }
    }
}
