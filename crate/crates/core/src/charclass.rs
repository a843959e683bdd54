//! Character classes shared by the filters, the modernizer and the tokenizers.

use unicode_properties::{GeneralCategory, GeneralCategoryGroup, UnicodeGeneralCategory};

pub fn is_hiragana(c: char) -> bool {
    matches!(c, '\u{3041}'..='\u{309F}')
}

pub fn is_katakana(c: char) -> bool {
    matches!(c, '\u{30A0}'..='\u{30FF}' | '\u{31F0}'..='\u{31FF}' | '\u{FF66}'..='\u{FF9F}')
}

pub fn is_kana(c: char) -> bool {
    is_hiragana(c) || is_katakana(c)
}

/// Han ideographs plus the ideographic iteration and closing marks (々 〆 〇).
pub fn is_kanji(c: char) -> bool {
    matches!(
        c,
        '\u{3005}'..='\u{3007}'
            | '\u{3400}'..='\u{4DBF}'
            | '\u{4E00}'..='\u{9FFF}'
            | '\u{F900}'..='\u{FAFF}'
            | '\u{20000}'..='\u{2FA1F}'
    )
}

/// Japanese script letters: kanji, hiragana or katakana.
pub fn is_cjk(c: char) -> bool {
    is_kanji(c) || is_kana(c)
}

/// Basic Latin, Latin-1/Extended letters and their fullwidth forms.
pub fn is_latin_letter(c: char) -> bool {
    c.is_ascii_alphabetic()
        || matches!(c, '\u{FF21}'..='\u{FF3A}' | '\u{FF41}'..='\u{FF5A}')
        || (matches!(c, '\u{00C0}'..='\u{024F}') && c.is_alphabetic())
}

/// Unicode general category P* (Pc Pd Ps Pe Pi Pf Po).
pub fn is_punctuation(c: char) -> bool {
    if c.is_ascii() {
        return c.is_ascii_punctuation() && !matches!(c, '$' | '+' | '<' | '=' | '>' | '^' | '`' | '|' | '~');
    }
    c.general_category_group() == GeneralCategoryGroup::Punctuation
}

/// Unicode general category Nd.
pub fn is_decimal_digit(c: char) -> bool {
    if c.is_ascii() {
        return c.is_ascii_digit();
    }
    c.general_category() == GeneralCategory::DecimalNumber
}

/// Coarse script classes used by the script-boundary tokenizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScriptClass {
    Kanji,
    Hiragana,
    Katakana,
    Latin,
    Digit,
    Punctuation,
    Space,
    Other,
}

impl ScriptClass {
    pub fn of(c: char) -> Self {
        if c.is_whitespace() {
            ScriptClass::Space
        } else if is_kanji(c) {
            ScriptClass::Kanji
        } else if is_hiragana(c) {
            ScriptClass::Hiragana
        } else if is_katakana(c) {
            ScriptClass::Katakana
        } else if is_decimal_digit(c) {
            ScriptClass::Digit
        } else if c.is_alphabetic() {
            ScriptClass::Latin
        } else if is_punctuation(c) || !c.is_alphanumeric() {
            ScriptClass::Punctuation
        } else {
            ScriptClass::Other
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascii_punctuation_matches_general_category() {
        for b in 0u8..0x80 {
            let c = b as char;
            let expected = c.general_category_group() == GeneralCategoryGroup::Punctuation;
            assert_eq!(is_punctuation(c), expected, "{c:?}");
            assert_eq!(is_decimal_digit(c), c.general_category() == GeneralCategory::DecimalNumber);
        }
    }

    #[test]
    fn japanese_classes() {
        assert!(is_kanji('買') && is_kanji('々'));
        assert!(is_hiragana('ゐ') && is_katakana('ヰ') && is_katakana('ー'));
        assert!(!is_cjk('a') && !is_cjk('。'));
        assert!(is_punctuation('。') && is_punctuation('«') && is_punctuation('（'));
        assert!(is_decimal_digit('３') && !is_decimal_digit('Ⅲ'));
        assert!(is_latin_letter('é') && is_latin_letter('Ｘ') && !is_latin_letter('×'));
    }

    #[test]
    fn script_classes() {
        assert_eq!(ScriptClass::of('猫'), ScriptClass::Kanji);
        assert_eq!(ScriptClass::of('が'), ScriptClass::Hiragana);
        assert_eq!(ScriptClass::of('ネ'), ScriptClass::Katakana);
        assert_eq!(ScriptClass::of('7'), ScriptClass::Digit);
        assert_eq!(ScriptClass::of('é'), ScriptClass::Latin);
        assert_eq!(ScriptClass::of('、'), ScriptClass::Punctuation);
        assert_eq!(ScriptClass::of('　'), ScriptClass::Space);
    }
}
