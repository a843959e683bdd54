use alloc::vec::Vec;

use hashbrown::HashMap;
use serde::{Deserialize, Serialize};

use super::check_lengths;
use crate::error::{Error, Result};

/// How per-order statistics are combined into one score.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Averaging {
    /// Arithmetic mean of the per-order F-scores.
    #[default]
    MeanF,
    /// F-score of the order-averaged precision and recall.
    FOfMeanPr,
}

/// `c6+w2-avgF2` by default.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChrfConfig {
    pub char_order: usize,
    pub word_order: usize,
    pub beta: f64,
    pub averaging: Averaging,
    /// Drop whitespace before extracting character n-grams.
    pub ignore_whitespace: bool,
}

impl Default for ChrfConfig {
    fn default() -> Self {
        ChrfConfig {
            char_order: 6,
            word_order: 2,
            beta: 2.0,
            averaging: Averaging::MeanF,
            ignore_whitespace: true,
        }
    }
}

impl ChrfConfig {
    pub fn validate(&self) -> Result<()> {
        if self.char_order == 0 {
            return Err(Error::InvalidConfig("char_order must be >= 1".into()));
        }
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::InvalidConfig("beta must be a finite number > 0".into()));
        }
        Ok(())
    }
}

/// Corpus totals for one n-gram order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrderStats {
    pub matches: u64,
    pub hyp_total: u64,
    pub ref_total: u64,
}

impl OrderStats {
    pub fn precision(&self) -> f64 {
        if self.hyp_total == 0 {
            0.0
        } else {
            self.matches as f64 / self.hyp_total as f64
        }
    }

    pub fn recall(&self) -> f64 {
        if self.ref_total == 0 {
            0.0
        } else {
            self.matches as f64 / self.ref_total as f64
        }
    }

    fn is_void(&self) -> bool {
        self.hyp_total == 0 && self.ref_total == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChrfScore {
    /// In [0, 100].
    pub score: f64,
    /// Character orders 1..=char_order.
    pub char_stats: Vec<OrderStats>,
    /// Word orders 1..=word_order.
    pub word_stats: Vec<OrderStats>,
}

fn f_beta(p: f64, r: f64, beta: f64) -> f64 {
    let b2 = beta * beta;
    let denom = b2 * p + r;
    if denom == 0.0 {
        0.0
    } else {
        (1.0 + b2) * p * r / denom
    }
}

fn counts<T: Eq + core::hash::Hash>(items: &[T], n: usize) -> HashMap<&[T], u32> {
    let mut m: HashMap<&[T], u32> = HashMap::new();
    if items.len() >= n {
        for w in items.windows(n) {
            *m.entry(w).or_insert(0) += 1;
        }
    }
    m
}

fn accumulate<T: Eq + core::hash::Hash>(hyp: &[T], refs: &[T], n: usize, stats: &mut OrderStats) {
    let hc = counts(hyp, n);
    let rc = counts(refs, n);
    stats.hyp_total += hyp.len().saturating_sub(n - 1) as u64;
    stats.ref_total += refs.len().saturating_sub(n - 1) as u64;
    for (gram, c) in hc {
        if let Some(r) = rc.get(gram) {
            stats.matches += c.min(*r) as u64;
        }
    }
}

/// Corpus chrF. Orders with no n-grams on either side are left out of the
/// average.
pub fn chrf_details<H: AsRef<str>, R: AsRef<str>>(
    hypotheses: &[H],
    references: &[R],
    cfg: &ChrfConfig,
) -> Result<ChrfScore> {
    check_lengths(hypotheses.len(), references.len())?;
    cfg.validate()?;
    let mut char_stats = alloc::vec![OrderStats::default(); cfg.char_order];
    let mut word_stats = alloc::vec![OrderStats::default(); cfg.word_order];

    let chars = |s: &str| -> Vec<char> {
        if cfg.ignore_whitespace {
            s.chars().filter(|c| !c.is_whitespace()).collect()
        } else {
            s.chars().collect()
        }
    };

    for (h, r) in hypotheses.iter().zip(references) {
        let (h, r) = (h.as_ref(), r.as_ref());
        let (hc, rc) = (chars(h), chars(r));
        for (k, stats) in char_stats.iter_mut().enumerate() {
            accumulate(&hc, &rc, k + 1, stats);
        }
        if cfg.word_order > 0 {
            let hw: Vec<&str> = h.split_whitespace().collect();
            let rw: Vec<&str> = r.split_whitespace().collect();
            for (k, stats) in word_stats.iter_mut().enumerate() {
                accumulate(&hw, &rw, k + 1, stats);
            }
        }
    }

    let live: Vec<&OrderStats> = char_stats.iter().chain(&word_stats).filter(|s| !s.is_void()).collect();
    let score = if live.is_empty() {
        0.0
    } else {
        let k = live.len() as f64;
        match cfg.averaging {
            Averaging::MeanF => {
                100.0 * live.iter().map(|s| f_beta(s.precision(), s.recall(), cfg.beta)).sum::<f64>() / k
            }
            Averaging::FOfMeanPr => {
                let p = live.iter().map(|s| s.precision()).sum::<f64>() / k;
                let r = live.iter().map(|s| s.recall()).sum::<f64>() / k;
                100.0 * f_beta(p, r, cfg.beta)
            }
        }
    };

    Ok(ChrfScore {
        score,
        char_stats,
        word_stats,
    })
}

pub fn chrf<H: AsRef<str>, R: AsRef<str>>(hypotheses: &[H], references: &[R], cfg: &ChrfConfig) -> Result<f64> {
    chrf_details(hypotheses, references, cfg).map(|s| s.score)
}
