//! Corpus-quality statistics: segment lengths, the dispersion of
//! length/mean-length ratios and vocabulary richness on fixed-size samples.

mod table;
mod tokenize;

pub use table::{render_table, TableRow};
pub use tokenize::{Tokenize, Tokenizer};

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::segment::Bisegment;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StatsConfig {
    /// Tokens drawn per richness trial (N).
    pub richness_sample_size: usize,
    pub richness_trials: usize,
    /// Trial `t` samples with the stream seeded by `seed + t`.
    pub seed: u64,
}

impl Default for StatsConfig {
    fn default() -> Self {
        StatsConfig {
            richness_sample_size: 1000,
            richness_trials: 10,
            seed: 42,
        }
    }
}

impl StatsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.richness_sample_size == 0 || self.richness_trials == 0 {
            return Err(Error::InvalidConfig(
                "richness_sample_size and richness_trials must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RichnessReport {
    /// Sample size N.
    pub n: usize,
    /// Mean number of distinct types over the trials.
    pub v_mean: f64,
    /// v_mean / n.
    pub ratio: f64,
    pub trials: usize,
    pub per_trial: Vec<u32>,
    /// Set when the side holds fewer than N tokens.
    pub with_replacement: bool,
    /// Number of tokens in the side.
    pub population: u64,
}

/// Mean length and population standard deviation of `len / mean`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthSummary {
    pub mean: f64,
    pub cv: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthStats {
    pub source: LengthSummary,
    pub target: LengthSummary,
    /// Over the segments of both sides together.
    pub pooled: LengthSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub segment_count: u64,
    pub tokens_src: u64,
    pub tokens_tgt: u64,
    pub mean_len_src: f64,
    pub mean_len_tgt: f64,
    pub mean_len_pooled: f64,
    pub len_ratio_cv_src: f64,
    pub len_ratio_cv_tgt: f64,
    pub len_ratio_cv_pooled: f64,
    pub richness_src: RichnessReport,
    pub richness_tgt: RichnessReport,
}

/// Mean and coefficient of variation of `lengths`.
pub fn length_summary(lengths: &[usize], side: &'static str) -> Result<LengthSummary> {
    if lengths.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let n = lengths.len() as f64;
    let total: usize = lengths.iter().sum();
    if total == 0 {
        return Err(Error::ZeroLengthSide { side });
    }
    let mean = total as f64 / n;
    let var = lengths
        .iter()
        .map(|&l| {
            let d = l as f64 / mean - 1.0;
            d * d
        })
        .sum::<f64>()
        / n;
    Ok(LengthSummary {
        mean,
        cv: libm::sqrt(var),
    })
}

/// Per-side and pooled mean lengths and length-ratio dispersion.
pub fn segment_length_stats<S, T>(corpus: &[Bisegment], source: &S, target: &T) -> Result<LengthStats>
where
    S: Tokenize + ?Sized,
    T: Tokenize + ?Sized,
{
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let src: Vec<usize> = corpus.iter().map(|b| source.count(&b.source.text)).collect();
    let tgt: Vec<usize> = corpus.iter().map(|b| target.count(&b.target.text)).collect();
    summarize(&src, &tgt)
}

fn summarize(src: &[usize], tgt: &[usize]) -> Result<LengthStats> {
    let source = length_summary(src, "source")?;
    let target = length_summary(tgt, "target")?;
    let pooled_lengths: Vec<usize> = src.iter().chain(tgt).copied().collect();
    let pooled = length_summary(&pooled_lengths, "pooled")?;
    Ok(LengthStats {
        source,
        target,
        pooled,
    })
}

/// Interns tokens into dense ids in first-seen order.
#[derive(Default)]
struct Interner<'a> {
    ids: HashMap<&'a str, u32>,
}

impl<'a> Interner<'a> {
    fn id(&mut self, token: &'a str) -> u32 {
        let next = self.ids.len() as u32;
        *self.ids.entry(token).or_insert(next)
    }

    fn types(&self) -> usize {
        self.ids.len()
    }
}

/// Richness over a token multiset given as dense type ids `0..types`.
pub fn sample_richness(tokens: &[u32], types: usize, cfg: &StatsConfig) -> Result<RichnessReport> {
    cfg.validate()?;
    if tokens.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let n = cfg.richness_sample_size;
    let m = tokens.len();
    let with_replacement = m < n;
    let mut stamp = vec![0u32; types];
    let mut chosen: HashSet<usize> = HashSet::with_capacity(if with_replacement { 0 } else { n });
    let mut per_trial = Vec::with_capacity(cfg.richness_trials);

    for trial in 0..cfg.richness_trials {
        let mark = trial as u32 + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(trial as u64));
        let mut distinct = 0u32;
        let mut see = |idx: usize, stamp: &mut [u32]| {
            let t = tokens[idx] as usize;
            if stamp[t] != mark {
                stamp[t] = mark;
                distinct += 1;
            }
        };
        if with_replacement {
            for _ in 0..n {
                see(rng.random_range(0..m), &mut stamp);
            }
        } else {
            // Floyd's algorithm: a uniform n-subset of 0..m.
            chosen.clear();
            for j in (m - n)..m {
                let r = rng.random_range(0..=j);
                let pick = if chosen.insert(r) { r } else {
                    chosen.insert(j);
                    j
                };
                see(pick, &mut stamp);
            }
        }
        per_trial.push(distinct);
    }

    let v_mean = per_trial.iter().map(|&v| v as f64).sum::<f64>() / per_trial.len() as f64;
    Ok(RichnessReport {
        n,
        v_mean,
        ratio: v_mean / n as f64,
        trials: cfg.richness_trials,
        per_trial,
        with_replacement,
        population: m as u64,
    })
}

/// Richness of one corpus side: mean distinct types in N-token samples.
pub fn vocabulary_richness<'a, I, T>(texts: I, tokenizer: &T, cfg: &StatsConfig) -> Result<RichnessReport>
where
    I: IntoIterator<Item = &'a str>,
    T: Tokenize + ?Sized,
{
    let mut interner = Interner::default();
    let mut ids = Vec::new();
    for text in texts {
        for tok in tokenizer.tokenize(text) {
            ids.push(interner.id(tok));
        }
    }
    sample_richness(&ids, interner.types(), cfg)
}

/// All statistics of one corpus.
pub fn corpus_report<S, T>(corpus: &[Bisegment], source: &S, target: &T, cfg: &StatsConfig) -> Result<CorpusStats>
where
    S: Tokenize + ?Sized,
    T: Tokenize + ?Sized,
{
    cfg.validate()?;
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut src_lens = Vec::with_capacity(corpus.len());
    let mut tgt_lens = Vec::with_capacity(corpus.len());
    let mut src_interner = Interner::default();
    let mut tgt_interner = Interner::default();
    let mut src_ids = Vec::new();
    let mut tgt_ids = Vec::new();
    for bi in corpus {
        let toks = source.tokenize(&bi.source.text);
        src_lens.push(toks.len());
        src_ids.extend(toks.into_iter().map(|t| src_interner.id(t)));
        let toks = target.tokenize(&bi.target.text);
        tgt_lens.push(toks.len());
        tgt_ids.extend(toks.into_iter().map(|t| tgt_interner.id(t)));
    }
    let lengths = summarize(&src_lens, &tgt_lens)?;
    let richness_src = sample_richness(&src_ids, src_interner.types(), cfg)?;
    let richness_tgt = sample_richness(&tgt_ids, tgt_interner.types(), cfg)?;
    Ok(CorpusStats {
        segment_count: corpus.len() as u64,
        tokens_src: src_ids.len() as u64,
        tokens_tgt: tgt_ids.len() as u64,
        mean_len_src: lengths.source.mean,
        mean_len_tgt: lengths.target.mean,
        mean_len_pooled: lengths.pooled.mean,
        len_ratio_cv_src: lengths.source.cv,
        len_ratio_cv_tgt: lengths.target.cv,
        len_ratio_cv_pooled: lengths.pooled.cv,
        richness_src,
        richness_tgt,
    })
}
