use alloc::string::String;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::charclass::is_punctuation;
use crate::error::Error;

const SP_MARK: char = '\u{2581}';

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SegmentationMarker {
    /// SentencePiece: pieces separated by spaces, words prefixed by `▁`.
    SentencepieceUnderbar,
    /// Subword-nmt: non-final pieces end in `@@`.
    DoubleAtSuffix,
    #[default]
    None,
}

impl FromStr for SegmentationMarker {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "sp" | "sentencepiece" | "sentencepiece-underbar" => Ok(SegmentationMarker::SentencepieceUnderbar),
            "atat" | "double-at" | "double-at-suffix" => Ok(SegmentationMarker::DoubleAtSuffix),
            "none" => Ok(SegmentationMarker::None),
            other => Err(Error::InvalidConfig(alloc::format!("unknown segmentation marker {other:?}"))),
        }
    }
}

/// Undoes subword segmentation.
pub fn strip_segmentation(text: &str, marker: SegmentationMarker) -> String {
    match marker {
        SegmentationMarker::SentencepieceUnderbar => {
            let joined: String = text
                .chars()
                .filter(|&c| c != ' ')
                .map(|c| if c == SP_MARK { ' ' } else { c })
                .collect();
            String::from(joined.trim())
        }
        SegmentationMarker::DoubleAtSuffix => {
            let joined = text.replace("@@ ", "");
            let trimmed = joined.trim();
            String::from(trimmed.strip_suffix("@@").unwrap_or(trimmed))
        }
        SegmentationMarker::None => String::from(text),
    }
}

/// Puts single spaces around every punctuation character and collapses
/// whitespace runs. Idempotent.
pub fn separate_punctuation(text: &str) -> String {
    let mut spaced = String::with_capacity(text.len() + text.len() / 4);
    for c in text.chars() {
        if is_punctuation(c) {
            spaced.push(' ');
            spaced.push(c);
            spaced.push(' ');
        } else {
            spaced.push(c);
        }
    }
    let mut out = String::with_capacity(spaced.len());
    for word in spaced.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentencepiece_markers() {
        assert_eq!(strip_segmentation("▁le ▁chat", SegmentationMarker::SentencepieceUnderbar), "le chat");
        assert_eq!(strip_segmentation("▁ch at ▁noir .", SegmentationMarker::SentencepieceUnderbar), "chat noir.");
    }

    #[test]
    fn double_at_markers() {
        assert_eq!(strip_segmentation("cha@@ t noir", SegmentationMarker::DoubleAtSuffix), "chat noir");
        assert_eq!(strip_segmentation("no@@", SegmentationMarker::DoubleAtSuffix), "no");
    }

    #[test]
    fn punctuation_separation() {
        assert_eq!(separate_punctuation("chat."), "chat .");
        assert_eq!(separate_punctuation("«chat»"), "« chat »");
        assert_eq!(separate_punctuation("猫だ。  本当?"), "猫だ 。 本当 ?");
        assert_eq!(separate_punctuation("5 $"), "5 $");
    }

    #[test]
    fn marker_parsing() {
        assert_eq!("sp".parse(), Ok(SegmentationMarker::SentencepieceUnderbar));
        assert_eq!("atat".parse(), Ok(SegmentationMarker::DoubleAtSuffix));
        assert!("x".parse::<SegmentationMarker>().is_err());
    }
}
