use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::charclass::{is_punctuation, ScriptClass};

/// Deterministic text → token sequence.
pub trait Tokenize {
    fn tokenize<'a>(&self, text: &'a str) -> Vec<&'a str>;

    fn count(&self, text: &str) -> usize {
        self.tokenize(text).len()
    }
}

/// Built-in tokenizers.
///
/// Neither is a morphological analyzer; absolute token counts for
/// Japanese are coarser than a dictionary-based segmentation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tokenizer {
    /// Whitespace split with every punctuation character as its own token.
    #[default]
    Whitespace,
    /// Splits at transitions among kanji, hiragana, katakana, Latin,
    /// digits and punctuation (each punctuation character alone).
    ScriptBoundary,
}

impl Tokenizer {
    /// Script-boundary for Japanese and Chinese tags, whitespace otherwise.
    pub fn for_language(tag: &str) -> Self {
        let primary = tag.split(['-', '_']).next().unwrap_or(tag);
        match primary {
            "ja" | "jp" | "zh" => Tokenizer::ScriptBoundary,
            _ => Tokenizer::Whitespace,
        }
    }
}

impl Tokenize for Tokenizer {
    fn tokenize<'a>(&self, text: &'a str) -> Vec<&'a str> {
        let mut out = Vec::new();
        match self {
            Tokenizer::Whitespace => {
                for word in text.split_whitespace() {
                    let mut start = 0;
                    for (i, c) in word.char_indices() {
                        if is_punctuation(c) {
                            if start < i {
                                out.push(&word[start..i]);
                            }
                            out.push(&word[i..i + c.len_utf8()]);
                            start = i + c.len_utf8();
                        }
                    }
                    if start < word.len() {
                        out.push(&word[start..]);
                    }
                }
            }
            Tokenizer::ScriptBoundary => {
                let mut start = 0;
                let mut current: Option<ScriptClass> = None;
                for (i, c) in text.char_indices() {
                    let class = ScriptClass::of(c);
                    let boundary = match current {
                        None => true,
                        Some(prev) => prev != class || class == ScriptClass::Punctuation,
                    };
                    if boundary {
                        if let Some(prev) = current {
                            if prev != ScriptClass::Space {
                                out.push(&text[start..i]);
                            }
                        }
                        start = i;
                        current = Some(class);
                    }
                }
                if let Some(prev) = current {
                    if prev != ScriptClass::Space {
                        out.push(&text[start..]);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whitespace_splits_punctuation() {
        assert_eq!(
            Tokenizer::Whitespace.tokenize("Le chat, noir. «Oui»"),
            ["Le", "chat", ",", "noir", ".", "«", "Oui", "»"]
        );
        assert!(Tokenizer::Whitespace.tokenize("   ").is_empty());
    }

    #[test]
    fn script_boundaries() {
        assert_eq!(
            Tokenizer::ScriptBoundary.tokenize("私はコーヒーを2杯飲んだ。"),
            ["私", "は", "コーヒー", "を", "2", "杯飲", "んだ", "。"]
        );
        assert_eq!(Tokenizer::ScriptBoundary.tokenize("「ABC」 です"), ["「", "ABC", "」", "です"]);
        assert_eq!(Tokenizer::ScriptBoundary.tokenize("。。"), ["。", "。"]);
    }

    #[test]
    fn language_defaults() {
        assert_eq!(Tokenizer::for_language("ja"), Tokenizer::ScriptBoundary);
        assert_eq!(Tokenizer::for_language("fr"), Tokenizer::Whitespace);
    }
}
