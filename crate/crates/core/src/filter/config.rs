use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unit used by the length and ratio rules.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthUnit {
    #[default]
    Bytes,
    Chars,
}

impl LengthUnit {
    pub fn measure(self, text: &str) -> usize {
        match self {
            LengthUnit::Bytes => text.len(),
            LengthUnit::Chars => text.chars().count(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LengthUnit::Bytes => "bytes",
            LengthUnit::Chars => "chars",
        }
    }
}

/// Opening and closing characters counted as one bracket kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketClass {
    pub open: String,
    pub close: String,
}

impl BracketClass {
    pub fn new(open: &str, close: &str) -> Self {
        BracketClass {
            open: open.into(),
            close: close.into(),
        }
    }

    pub(crate) fn open_label(&self) -> char {
        self.open.chars().next().unwrap_or('?')
    }

    pub(crate) fn close_label(&self) -> char {
        self.close.chars().next().unwrap_or('?')
    }
}

/// Inclusive range of Unicode scalar values, written `U+2200-U+22FF`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CodepointRange {
    pub start: u32,
    pub end: u32,
}

impl CodepointRange {
    pub const fn new(start: u32, end: u32) -> Self {
        CodepointRange { start, end }
    }

    pub fn contains(&self, c: char) -> bool {
        (self.start..=self.end).contains(&(c as u32))
    }
}

impl fmt::Display for CodepointRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U+{:04X}-U+{:04X}", self.start, self.end)
    }
}

impl TryFrom<String> for CodepointRange {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("bad codepoint range {value:?}"));
        let parse = |s: &str| {
            let s = s.trim();
            let hex = s.strip_prefix("U+").or_else(|| s.strip_prefix("u+")).unwrap_or(s);
            u32::from_str_radix(hex, 16).ok()
        };
        let (a, b) = match value.split_once('-') {
            Some((a, b)) => (parse(a).ok_or_else(bad)?, parse(b).ok_or_else(bad)?),
            None => {
                let v = parse(&value).ok_or_else(bad)?;
                (v, v)
            }
        };
        if a > b {
            return Err(bad());
        }
        Ok(CodepointRange::new(a, b))
    }
}

impl From<CodepointRange> for String {
    fn from(value: CodepointRange) -> Self {
        value.to_string()
    }
}

/// Thresholds and character classes of the surface filters.
///
/// Missing JSON fields take their default values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterConfig {
    /// Inclusive upper bound on either segment's length.
    pub max_segment_bytes: usize,
    pub length_unit: LengthUnit,
    /// Longer/shorter length ratio; a ratio equal to the bound is kept.
    pub max_length_ratio: f64,
    pub max_special_chars: usize,
    pub special_chars: String,
    pub max_uppercase: usize,
    pub max_digits: usize,
    pub bracket_classes: Vec<BracketClass>,
    pub blocked_codepoint_ranges: Vec<CodepointRange>,
    /// Shortest run of one repeated symbol that rejects; 0 disables the check.
    pub repeated_symbol_run_min: usize,
    /// NFKC-normalize both segments before any rule runs.
    pub nfkc: bool,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            max_segment_bytes: 350,
            length_unit: LengthUnit::Bytes,
            max_length_ratio: 3.0,
            max_special_chars: 2,
            special_chars: "\\/:!?$".into(),
            max_uppercase: 20,
            max_digits: 20,
            bracket_classes: vec![
                BracketClass::new("(（", ")）"),
                BracketClass::new("[［", "]］"),
                BracketClass::new("{｛", "}｝"),
                BracketClass::new("「『", "」』"),
                BracketClass::new("《〈", "》〉"),
            ],
            blocked_codepoint_ranges: vec![
                // mathematical and logical operators
                CodepointRange::new(0x2200, 0x22FF),
                // miscellaneous symbols and dingbats
                CodepointRange::new(0x2600, 0x27BF),
                // pictographs and emoticons
                CodepointRange::new(0x1F300, 0x1FAFF),
                // regional indicators (flags)
                CodepointRange::new(0x1F1E6, 0x1F1FF),
            ],
            repeated_symbol_run_min: 3,
            nfkc: false,
        }
    }
}

impl FilterConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.max_length_ratio > 1.0) || !self.max_length_ratio.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "max_length_ratio must be a finite number > 1, got {}",
                self.max_length_ratio
            )));
        }
        let mut seen: Vec<char> = Vec::new();
        for class in &self.bracket_classes {
            if class.open.is_empty() || class.close.is_empty() {
                return Err(Error::InvalidConfig("bracket class with an empty side".into()));
            }
            for c in class.open.chars().chain(class.close.chars()) {
                if seen.contains(&c) {
                    return Err(Error::InvalidConfig(format!(
                        "bracket character {c:?} belongs to more than one class"
                    )));
                }
                seen.push(c);
            }
        }
        for r in &self.blocked_codepoint_ranges {
            if r.start > r.end {
                return Err(Error::InvalidConfig(format!("empty range {r}")));
            }
        }
        Ok(())
    }

    pub(crate) fn is_special(&self, c: char) -> bool {
        self.special_chars.contains(c)
    }

    pub(crate) fn blocked(&self, c: char) -> bool {
        self.blocked_codepoint_ranges.iter().any(|r| r.contains(c))
    }
}
