use alloc::format;
use alloc::string::String;
use alloc::vec;

use unicode_normalization::UnicodeNormalization;

use super::{FilterConfig, FilterDecision, Rule};
use crate::charclass::{is_cjk, is_decimal_digit};
use crate::segment::Bisegment;

/// Dispatches a pure rule. `Dedup` and `Ocr` are not pure pipeline rules
/// and always keep here.
pub fn check(rule: Rule, bi: &Bisegment, cfg: &FilterConfig) -> FilterDecision {
    match rule {
        Rule::Length => check_length(bi, cfg),
        Rule::Ratio => check_length_ratio(bi, cfg),
        Rule::Brackets => check_bracket_balance(bi, cfg),
        Rule::Symbols => check_symbols(bi, cfg),
        Rule::Balance => check_within_balance(bi, cfg),
        Rule::Dedup | Rule::Ocr => FilterDecision::Keep,
    }
}

/// Rejects empty segments and segments longer than `max_segment_bytes`
/// (inclusive bound).
pub fn check_length(bi: &Bisegment, cfg: &FilterConfig) -> FilterDecision {
    for (side, text) in [("source", &bi.source.text), ("target", &bi.target.text)] {
        if text.is_empty() {
            return FilterDecision::reject(Rule::Length, format!("empty {side}"));
        }
        let len = cfg.length_unit.measure(text);
        if len > cfg.max_segment_bytes {
            return FilterDecision::reject(
                Rule::Length,
                format!(
                    "{side} {len} {} > {}",
                    cfg.length_unit.name(),
                    cfg.max_segment_bytes
                ),
            );
        }
    }
    FilterDecision::Keep
}

/// Rejects when longer/shorter exceeds `max_length_ratio`. An empty side
/// makes the ratio unbounded.
pub fn check_length_ratio(bi: &Bisegment, cfg: &FilterConfig) -> FilterDecision {
    let s = cfg.length_unit.measure(&bi.source.text);
    let t = cfg.length_unit.measure(&bi.target.text);
    let (long, short) = if s >= t { (s, t) } else { (t, s) };
    if long == 0 {
        return FilterDecision::Keep;
    }
    if short == 0 || long as f64 > cfg.max_length_ratio * short as f64 {
        return FilterDecision::reject(
            Rule::Ratio,
            format!("ratio {s}:{t} {} > {}", cfg.length_unit.name(), cfg.max_length_ratio),
        );
    }
    FilterDecision::Keep
}

fn bracket_counts(text: &str, cfg: &FilterConfig, counts: &mut [(usize, usize)]) {
    for c in text.chars() {
        if c.is_alphanumeric() || c.is_whitespace() {
            continue;
        }
        for (class, slot) in cfg.bracket_classes.iter().zip(counts.iter_mut()) {
            if class.open.contains(c) {
                slot.0 += 1;
                break;
            }
            if class.close.contains(c) {
                slot.1 += 1;
                break;
            }
        }
    }
}

/// Requires the same number of opening and of closing brackets of every
/// class on both sides. Fullwidth and ASCII forms of a class count alike.
pub fn check_bracket_balance(bi: &Bisegment, cfg: &FilterConfig) -> FilterDecision {
    let n = cfg.bracket_classes.len();
    let mut src = vec![(0usize, 0usize); n];
    let mut tgt = vec![(0usize, 0usize); n];
    bracket_counts(&bi.source.text, cfg, &mut src);
    bracket_counts(&bi.target.text, cfg, &mut tgt);
    for (i, class) in cfg.bracket_classes.iter().enumerate() {
        if src[i].0 != tgt[i].0 {
            return FilterDecision::reject(
                Rule::Brackets,
                format!("open {} : {} vs {}", class.open_label(), src[i].0, tgt[i].0),
            );
        }
        if src[i].1 != tgt[i].1 {
            return FilterDecision::reject(
                Rule::Brackets,
                format!("close {} : {} vs {}", class.close_label(), src[i].1, tgt[i].1),
            );
        }
    }
    FilterDecision::Keep
}

/// Optional stricter rule: each segment on its own has as many closing as
/// opening brackets of every class.
pub fn check_within_balance(bi: &Bisegment, cfg: &FilterConfig) -> FilterDecision {
    let n = cfg.bracket_classes.len();
    for (side, text) in [("source", &bi.source.text), ("target", &bi.target.text)] {
        let mut counts = vec![(0usize, 0usize); n];
        bracket_counts(text, cfg, &mut counts);
        for (class, (open, close)) in cfg.bracket_classes.iter().zip(&counts) {
            if open != close {
                return FilterDecision::reject(
                    Rule::Balance,
                    format!(
                        "{side} {}{} : {open} vs {close}",
                        class.open_label(),
                        class.close_label()
                    ),
                );
            }
        }
    }
    FilterDecision::Keep
}

fn is_symbol(c: char) -> bool {
    !c.is_alphanumeric() && !c.is_whitespace() && !is_cjk(c)
}

fn symbol_violation(text: &str, cfg: &FilterConfig) -> Option<String> {
    let mut run: Option<(char, usize)> = None;
    let mut first_run: Option<(char, usize)> = None;
    let mut special = 0usize;
    let mut upper = 0usize;
    let mut digits = 0usize;
    let mut blocked: Option<char> = None;
    let run_min = cfg.repeated_symbol_run_min;

    let mut close_run = |run: &mut Option<(char, usize)>| {
        if let Some((c, len)) = run.take() {
            if run_min > 0 && len >= run_min && first_run.is_none() {
                first_run = Some((c, len));
            }
        }
    };

    for c in text.chars() {
        if is_symbol(c) {
            match &mut run {
                Some((rc, len)) if *rc == c => *len += 1,
                _ => {
                    close_run(&mut run);
                    run = Some((c, 1));
                }
            }
            if cfg.is_special(c) {
                special += 1;
            }
            if blocked.is_none() && cfg.blocked(c) {
                blocked = Some(c);
            }
        } else {
            close_run(&mut run);
            if c.is_uppercase() {
                upper += 1;
            } else if is_decimal_digit(c) {
                digits += 1;
            } else if blocked.is_none() && cfg.blocked(c) {
                blocked = Some(c);
            }
        }
    }
    close_run(&mut run);

    if let Some((c, len)) = first_run {
        return Some(format!("symbol run {c}×{len}"));
    }
    if special > cfg.max_special_chars {
        return Some(format!("{special} special chars > {}", cfg.max_special_chars));
    }
    if let Some(c) = blocked {
        return Some(format!("blocked codepoint U+{:04X}", c as u32));
    }
    if upper > cfg.max_uppercase {
        return Some(format!("{upper} uppercase > {}", cfg.max_uppercase));
    }
    if digits > cfg.max_digits {
        return Some(format!("{digits} digits > {}", cfg.max_digits));
    }
    None
}

/// Per segment: repeated symbol runs, too many special characters, blocked
/// code points, too many uppercase letters or decimal digits.
pub fn check_symbols(bi: &Bisegment, cfg: &FilterConfig) -> FilterDecision {
    match symbol_violation(&bi.source.text, cfg).or_else(|| symbol_violation(&bi.target.text, cfg)) {
        Some(detail) => FilterDecision::reject(Rule::Symbols, detail),
        None => FilterDecision::Keep,
    }
}

/// NFKC-normalizes and re-trims both segments.
pub fn normalize_nfkc(mut bi: Bisegment) -> Bisegment {
    for seg in [&mut bi.source, &mut bi.target] {
        let normalized: String = seg.text.nfkc().collect();
        seg.text = String::from(normalized.trim());
    }
    bi
}
