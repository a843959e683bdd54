use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use serde::{Deserialize, Serialize};

use super::check_lengths;
use crate::error::{Error, Result};

/// multi-bleu defaults: case-sensitive 4-grams, no smoothing, one reference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BleuConfig {
    pub max_order: usize,
    pub case_sensitive: bool,
}

impl Default for BleuConfig {
    fn default() -> Self {
        BleuConfig {
            max_order: 4,
            case_sensitive: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BleuScore {
    /// In [0, 100].
    pub score: f64,
    /// Clipped matches per order (index 0 = unigrams).
    pub matches: Vec<u64>,
    /// Hypothesis n-grams per order.
    pub totals: Vec<u64>,
    pub brevity_penalty: f64,
    pub hyp_len: u64,
    pub ref_len: u64,
}

fn ngram_counts<'a>(tokens: &'a [&'a str], n: usize) -> HashMap<&'a [&'a str], u32> {
    let mut counts = HashMap::new();
    if tokens.len() >= n {
        for w in tokens.windows(n) {
            *counts.entry(w).or_insert(0) += 1;
        }
    }
    counts
}

/// Corpus BLEU with clipped counts aggregated over all sentences.
pub fn bleu_details<H: AsRef<str>, R: AsRef<str>>(
    hypotheses: &[H],
    references: &[R],
    cfg: &BleuConfig,
) -> Result<BleuScore> {
    check_lengths(hypotheses.len(), references.len())?;
    if cfg.max_order == 0 {
        return Err(Error::InvalidConfig("max_order must be >= 1".into()));
    }
    let order = cfg.max_order;
    let mut matches = vec![0u64; order];
    let mut totals = vec![0u64; order];
    let mut hyp_len = 0u64;
    let mut ref_len = 0u64;

    for (h, r) in hypotheses.iter().zip(references) {
        let (h, r) = if cfg.case_sensitive {
            (String::from(h.as_ref()), String::from(r.as_ref()))
        } else {
            (h.as_ref().to_lowercase(), r.as_ref().to_lowercase())
        };
        let ht: Vec<&str> = h.split_whitespace().collect();
        let rt: Vec<&str> = r.split_whitespace().collect();
        hyp_len += ht.len() as u64;
        ref_len += rt.len() as u64;
        for n in 1..=order {
            if ht.len() < n {
                break;
            }
            totals[n - 1] += (ht.len() + 1 - n) as u64;
            let rc = ngram_counts(&rt, n);
            for (gram, count) in ngram_counts(&ht, n) {
                let clip = rc.get(gram).copied().unwrap_or(0);
                matches[n - 1] += count.min(clip) as u64;
            }
        }
    }

    let brevity_penalty = if hyp_len == 0 {
        0.0
    } else if hyp_len >= ref_len {
        1.0
    } else {
        libm::exp(1.0 - ref_len as f64 / hyp_len as f64)
    };

    let score = if matches.iter().zip(&totals).any(|(&m, &t)| m == 0 || t == 0) {
        0.0
    } else {
        let log_mean = matches
            .iter()
            .zip(&totals)
            .map(|(&m, &t)| libm::log(m as f64 / t as f64))
            .sum::<f64>()
            / order as f64;
        100.0 * brevity_penalty * libm::exp(log_mean)
    };

    Ok(BleuScore {
        score,
        matches,
        totals,
        brevity_penalty,
        hyp_len,
        ref_len,
    })
}

pub fn bleu<H: AsRef<str>, R: AsRef<str>>(hypotheses: &[H], references: &[R], cfg: &BleuConfig) -> Result<f64> {
    bleu_details(hypotheses, references, cfg).map(|s| s.score)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_100() {
        let x = ["le chat est noir", "il pleut sur la ville ce soir"];
        let s = bleu(&x, &x, &BleuConfig::default()).unwrap();
        assert!((s - 100.0).abs() < 1e-12, "{s}");
    }

    #[test]
    fn zero_overlap_is_zero() {
        assert_eq!(bleu(&["a b c d"], &["e f g h"], &BleuConfig::default()).unwrap(), 0.0);
    }

    #[test]
    fn clipping_example() {
        let d = bleu_details(&["the the the the"], &["the cat"], &BleuConfig::default()).unwrap();
        // "the" occurs once in the reference, so only one of the four counts
        assert_eq!(d.matches[0], 1);
        assert_eq!(d.totals[0], 4);
        assert_eq!(d.score, 0.0);
        let uni = BleuConfig {
            max_order: 1,
            ..Default::default()
        };
        let s = bleu(&["the the the the"], &["the cat"], &uni).unwrap();
        // hypothesis longer than reference: no brevity penalty
        assert_eq!(s, 25.0);
    }

    #[test]
    fn short_hypothesis_is_penalized() {
        let uni = BleuConfig {
            max_order: 1,
            ..Default::default()
        };
        let d = bleu_details(&["the cat"], &["the cat sat down"], &uni).unwrap();
        // p_1 = 1, BP = e^(1 - 4/2)
        assert!((d.brevity_penalty - libm::exp(-1.0)).abs() < 1e-15);
        assert!((d.score - 100.0 * libm::exp(-1.0)).abs() < 1e-12);
    }

    #[test]
    fn case_folding() {
        let cfg = BleuConfig {
            max_order: 1,
            case_sensitive: false,
        };
        assert!((bleu(&["Le Chat"], &["le chat"], &cfg).unwrap() - 100.0).abs() < 1e-12);
        assert_eq!(bleu(&["Le Chat"], &["le chat"], &BleuConfig { max_order: 1, case_sensitive: true }).unwrap(), 0.0);
    }

    #[test]
    fn errors() {
        let empty: [&str; 0] = [];
        assert_eq!(bleu(&empty, &empty, &BleuConfig::default()), Err(Error::EmptyCorpus));
        assert_eq!(
            bleu(&["a"], &["a", "b"], &BleuConfig::default()),
            Err(Error::LengthMismatch { hypotheses: 1, references: 2 })
        );
    }
}
