//! OCR-noise rejection and rough modernization of early-20th-century
//! Japanese: historical kana (ゐ ゑ ヰ ヱ) and u-onbin verb forms
//! (買うて → 買って).
//!
//! The conjugation rewrites only fire behind a guard list of verb stems, so
//! a noun ending in う followed by the particle て is left alone.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::charclass::{is_cjk, is_kana, is_katakana, is_latin_letter};
use crate::error::{Error, Result};
use crate::filter::{FilterDecision, Rule};
use crate::segment::Bisegment;

/// Stems of w/u-stem godan verbs whose historical te/ta forms are rewritten.
///
/// 問う, 請う and 乞う are absent: うて is their modern te-form.
pub const U_ONBIN_STEMS: &[&str] = &[
    "買", "思", "言", "云", "会", "逢", "合", "歌", "笑", "習", "払", "洗", "使", "拾", "違", "誘",
    "追", "願", "救", "争", "失", "従", "食", "吸", "迷", "向か", "手伝", "戦", "扱", "奪", "補",
    "祝", "酔", "伴", "養", "貰", "舞", "縫", "狙", "遣", "構", "叶", "通", "揃", "拭", "漂", "慕",
    "住ま", "もら", "しま",
];

/// Literal rewrite applied with non-overlapping, left-to-right matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rewrite {
    pub pattern: String,
    pub replacement: String,
}

impl Rewrite {
    pub fn new(pattern: impl Into<String>, replacement: impl Into<String>) -> Self {
        Rewrite {
            pattern: pattern.into(),
            replacement: replacement.into(),
        }
    }
}

/// Characters and classes whose presence marks an example as OCR garbage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OcrNoise {
    /// Explicit characters, U+FFFD by default.
    pub chars: String,
    /// Control characters other than TAB.
    pub control_chars: bool,
    /// A single Latin letter with kana or kanji on both sides. Capitals
    /// next to katakana (ビタミンCを) are let through.
    pub embedded_latin: bool,
}

impl Default for OcrNoise {
    fn default() -> Self {
        OcrNoise {
            chars: String::from("\u{FFFD}"),
            control_chars: true,
            embedded_latin: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModernizationRules {
    pub kana_map: BTreeMap<char, char>,
    pub conjugation_patterns: Vec<Rewrite>,
    pub ocr_noise: OcrNoise,
}

impl Default for ModernizationRules {
    fn default() -> Self {
        let kana_map = [('ゐ', 'い'), ('ゑ', 'え'), ('ヰ', 'イ'), ('ヱ', 'エ')]
            .into_iter()
            .collect();
        let mut conjugation_patterns = Vec::new();
        for stem in U_ONBIN_STEMS {
            for (old, new) in [("うて", "って"), ("うた", "った"), ("ふて", "って"), ("ふた", "った")] {
                conjugation_patterns.push(Rewrite::new(format!("{stem}{old}"), format!("{stem}{new}")));
            }
        }
        ModernizationRules {
            kana_map,
            conjugation_patterns,
            ocr_noise: OcrNoise::default(),
        }
    }
}

impl ModernizationRules {
    pub fn validate(&self) -> Result<()> {
        for (k, v) in &self.kana_map {
            if !is_kana(*k) || !is_kana(*v) {
                return Err(Error::InvalidConfig(format!("kana_map entry {k}→{v} is not kana to kana")));
            }
        }
        for rw in &self.conjugation_patterns {
            if rw.pattern.is_empty() {
                return Err(Error::InvalidConfig("empty conjugation pattern".into()));
            }
            if rw.replacement.chars().count() > rw.pattern.chars().count() {
                return Err(Error::InvalidConfig(format!(
                    "rewrite {} → {} lengthens the text",
                    rw.pattern, rw.replacement
                )));
            }
        }
        Ok(())
    }
}

/// Decides whether a Japanese example carries OCR noise. Never modifies text.
pub fn reject_ocr_noise(text: &str, rules: &ModernizationRules) -> FilterDecision {
    let noise = &rules.ocr_noise;
    let mut prev2: Option<char> = None;
    let mut prev: Option<char> = None;
    for c in text.chars() {
        if noise.chars.contains(c) {
            return FilterDecision::reject(Rule::Ocr, format!("U+{:04X}", c as u32));
        }
        if noise.control_chars && c.is_control() && c != '\t' {
            return FilterDecision::reject(Rule::Ocr, format!("control U+{:04X}", c as u32));
        }
        if noise.embedded_latin {
            if let (Some(a), Some(l)) = (prev2, prev) {
                let unit = l.is_uppercase() && (is_katakana(a) || is_katakana(c));
                if is_cjk(a) && is_latin_letter(l) && is_cjk(c) && !unit {
                    return FilterDecision::reject(Rule::Ocr, format!("embedded Latin {l:?}"));
                }
            }
        }
        prev2 = prev;
        prev = Some(c);
    }
    FilterDecision::Keep
}

/// Replaces every historical kana listed in the map.
pub fn modernize_kana(text: &str, rules: &ModernizationRules) -> String {
    text.chars()
        .map(|c| rules.kana_map.get(&c).copied().unwrap_or(c))
        .collect()
}

/// Applies the conjugation rewrites in list order.
pub fn modernize_conjugation(text: &str, rules: &ModernizationRules) -> String {
    let mut out = String::from(text);
    for rw in &rules.conjugation_patterns {
        if out.contains(rw.pattern.as_str()) {
            out = out.replace(rw.pattern.as_str(), &rw.replacement);
        }
    }
    out
}

/// Kana first, then conjugations.
pub fn modernize(text: &str, rules: &ModernizationRules) -> String {
    modernize_conjugation(&modernize_kana(text, rules), rules)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ModernizeReport {
    pub input: u64,
    pub kept: u64,
    pub rejected_ocr: u64,
    pub modified: u64,
}

/// Runs OCR rejection and modernization on the Japanese side of
/// bisegments (the side whose tag starts with `ja`, else the source).
pub struct Modernizer {
    rules: ModernizationRules,
    report: ModernizeReport,
}

impl Modernizer {
    pub fn new(rules: ModernizationRules) -> Result<Self> {
        rules.validate()?;
        Ok(Modernizer {
            rules,
            report: ModernizeReport::default(),
        })
    }

    pub fn rules(&self) -> &ModernizationRules {
        &self.rules
    }

    pub fn apply(&mut self, mut bi: Bisegment) -> core::result::Result<Bisegment, FilterDecision> {
        self.report.input += 1;
        let seg = if !bi.source.lang.as_str().starts_with("ja") && bi.target.lang.as_str().starts_with("ja") {
            &mut bi.target
        } else {
            &mut bi.source
        };
        let decision = reject_ocr_noise(&seg.text, &self.rules);
        if !decision.is_keep() {
            self.report.rejected_ocr += 1;
            return Err(decision);
        }
        let modern = modernize(&seg.text, &self.rules);
        if modern != seg.text {
            self.report.modified += 1;
            seg.text = modern;
        }
        self.report.kept += 1;
        Ok(bi)
    }

    pub fn report(&self) -> &ModernizeReport {
        &self.report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::{Lang, Segment};
    use alloc::sync::Arc;

    fn rules() -> ModernizationRules {
        ModernizationRules::default()
    }

    #[test]
    fn defaults_validate() {
        rules().validate().unwrap();
    }

    #[test]
    fn old_kana() {
        assert_eq!(modernize_kana("ゐる", &rules()), "いる");
        assert_eq!(modernize_kana("ゑ", &rules()), "え");
        assert_eq!(modernize_kana("ヰスキー", &rules()), "イスキー");
        assert_eq!(modernize_kana("今日は晴れ", &rules()), "今日は晴れ");
    }

    #[test]
    fn u_onbin() {
        assert_eq!(modernize_conjugation("買うて", &rules()), "買って");
        assert_eq!(modernize_conjugation("思うて", &rules()), "思って");
        assert_eq!(modernize_conjugation("買う", &rules()), "買う");
        assert_eq!(modernize_conjugation("本を買うた", &rules()), "本を買った");
        assert_eq!(modernize_conjugation("買ふて来る", &rules()), "買って来る");
        // not on the guard list: modern te-form of 問う
        assert_eq!(modernize_conjugation("問うて", &rules()), "問うて");
    }

    #[test]
    fn ocr_noise() {
        assert!(reject_ocr_noise("買って来る", &rules()).is_keep());
        assert_eq!(
            reject_ocr_noise("買\u{FFFD}て来る", &rules()),
            FilterDecision::reject(Rule::Ocr, "U+FFFD")
        );
        assert_eq!(reject_ocr_noise("あxい", &rules()).rule(), Some(Rule::Ocr));
        assert!(reject_ocr_noise("Tシャツ", &rules()).is_keep());
        assert!(reject_ocr_noise("a\tb", &rules()).is_keep());
        assert_eq!(reject_ocr_noise("a\u{7}b", &rules()).detail(), "control U+0007");
    }

    #[test]
    fn lengthening_rewrite_rejected() {
        let mut r = rules();
        r.conjugation_patterns.push(Rewrite::new("a", "bb"));
        assert!(r.validate().is_err());
        let mut r = rules();
        r.kana_map.insert('a', 'い');
        assert!(r.validate().is_err());
    }

    #[test]
    fn modernizer_targets_japanese_side() {
        let bi = Bisegment::new(
            Segment::new("Il l'a acheté", Lang::new("fr").unwrap()),
            Segment::new("ゐて買うて", Lang::new("ja").unwrap()),
            Arc::from("cesselin"),
            1,
        )
        .unwrap();
        let mut m = Modernizer::new(rules()).unwrap();
        let out = m.apply(bi).unwrap();
        assert_eq!(out.target.text, "いて買って");
        assert_eq!(out.source.text, "Il l'a acheté");
        assert_eq!(m.report().modified, 1);
    }
}
