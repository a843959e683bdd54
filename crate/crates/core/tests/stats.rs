use std::sync::Arc;

use bitext_core::stats::{corpus_report, length_summary, sample_richness, vocabulary_richness, StatsConfig, Tokenize, Tokenizer};
use bitext_core::{Bisegment, Lang, Segment};
use bitext_testkit::oracle::{expected_distinct, simulate_distinct};

/// Token ids laid out by type: type `t` repeated `counts[t]` times.
fn multiset(counts: &[usize]) -> Vec<u32> {
    counts.iter().enumerate().flat_map(|(t, &c)| std::iter::repeat_n(t as u32, c)).collect()
}

fn distributions() -> Vec<(&'static str, Vec<usize>)> {
    let uniform = vec![8; 600];
    let zipf: Vec<usize> = (1..=2000).map(|r| (4000.0 / r as f64).ceil() as usize).collect();
    let geometric: Vec<usize> = (0..40).map(|k| ((1u64 << 12) as f64 * 0.8f64.powi(k)).ceil() as usize).collect();
    vec![("uniform", uniform), ("zipf", zipf), ("geometric", geometric)]
}

#[test]
fn cv_of_one_and_three() {
    let s = length_summary(&[1, 3], "source").unwrap();
    assert_eq!(s.mean, 2.0);
    assert_eq!(s.cv, 0.5);
    assert_eq!(length_summary(&[4, 4, 4], "source").unwrap().cv, 0.0);
}

#[test]
fn cv_is_scale_invariant() {
    let lengths = [3usize, 7, 1, 12, 5, 5, 9];
    let base = length_summary(&lengths, "s").unwrap().cv;
    for k in [2usize, 3, 10] {
        let scaled: Vec<usize> = lengths.iter().map(|l| l * k).collect();
        assert!((length_summary(&scaled, "s").unwrap().cv - base).abs() < 1e-12);
    }
}

#[test]
fn richness_within_three_standard_errors_of_simulation() {
    let cfg = StatsConfig::default();
    for (name, counts) in distributions() {
        let tokens = multiset(&counts);
        let (sim_mean, sim_sd) = simulate_distinct(&tokens, cfg.richness_sample_size, 100_000, 1);
        let exact = expected_distinct(&counts, cfg.richness_sample_size);
        // sanity check of the simulation against the closed form
        assert!((sim_mean - exact).abs() < 4.0 * sim_sd / (100_000f64).sqrt(), "{name}: {sim_mean} vs {exact}");
        let report = sample_richness(&tokens, counts.len(), &cfg).unwrap();
        let se = sim_sd / (cfg.richness_trials as f64).sqrt();
        assert!((report.v_mean - sim_mean).abs() <= 3.0 * se, "{name}: {} vs {sim_mean} ± {se}", report.v_mean);
        assert!(!report.with_replacement);
    }
}

#[test]
fn richness_extremes() {
    let cfg = StatsConfig::default();
    let distinct: Vec<u32> = (0..1500).collect();
    assert_eq!(sample_richness(&distinct, 1500, &cfg).unwrap().ratio, 1.0);
    let single = vec![0u32; 1500];
    assert_eq!(sample_richness(&single, 1, &cfg).unwrap().ratio, 0.001);
    let small = vec![0u32, 1, 2];
    let r = sample_richness(&small, 3, &cfg).unwrap();
    assert!(r.with_replacement);
    assert!(r.ratio >= 0.001 && r.ratio <= 1.0);
}

#[test]
fn richness_is_reproducible() {
    let tokens = multiset(&distributions()[1].1);
    let cfg = StatsConfig::default();
    let a = serde_json::to_string(&sample_richness(&tokens, 2000, &cfg).unwrap()).unwrap();
    let b = serde_json::to_string(&sample_richness(&tokens, 2000, &cfg).unwrap()).unwrap();
    assert_eq!(a, b);
    let other = StatsConfig { seed: 43, ..cfg };
    assert_ne!(sample_richness(&tokens, 2000, &other).unwrap().per_trial, sample_richness(&tokens, 2000, &StatsConfig::default()).unwrap().per_trial);
}

#[test]
fn new_types_do_not_lower_richness() {
    let base = vec![20usize; 100];
    let mut wider = base.clone();
    wider.extend(std::iter::repeat_n(1, 500));
    assert!(expected_distinct(&wider, 1000) >= expected_distinct(&base, 1000));
    let cfg = StatsConfig { richness_trials: 200, ..StatsConfig::default() };
    let a = sample_richness(&multiset(&base), base.len(), &cfg).unwrap();
    let b = sample_richness(&multiset(&wider), wider.len(), &cfg).unwrap();
    assert!(b.v_mean >= a.v_mean);
}

fn toy() -> Vec<Bisegment> {
    let en = Lang::new("en").unwrap();
    let fr = Lang::new("fr").unwrap();
    [("a b", "x y z"), ("a", "x"), ("a b c", "y y")]
        .iter()
        .enumerate()
        .map(|(i, (s, t))| {
            Bisegment::new(Segment::new(*s, en.clone()), Segment::new(*t, fr.clone()), Arc::from("toy"), i as u64 + 1).unwrap()
        })
        .collect()
}

#[test]
fn toy_corpus_report() {
    let cfg = StatsConfig { richness_sample_size: 6, ..StatsConfig::default() };
    let ws = Tokenizer::Whitespace;
    let r = corpus_report(&toy(), &ws, &ws, &cfg).unwrap();
    let sixth = (1.0f64 / 6.0).sqrt();
    assert_eq!(r.segment_count, 3);
    assert_eq!((r.tokens_src, r.tokens_tgt), (6, 6));
    assert_eq!((r.mean_len_src, r.mean_len_tgt, r.mean_len_pooled), (2.0, 2.0, 2.0));
    assert!((r.len_ratio_cv_src - sixth).abs() < 1e-12);
    assert!((r.len_ratio_cv_tgt - sixth).abs() < 1e-12);
    assert!((r.len_ratio_cv_pooled - sixth).abs() < 1e-12);
    assert_eq!((r.richness_src.v_mean, r.richness_src.ratio), (3.0, 0.5));
    assert_eq!((r.richness_tgt.v_mean, r.richness_tgt.ratio), (3.0, 0.5));
    assert!(corpus_report(&[], &ws, &ws, &cfg).is_err());
}

#[test]
fn token_totals_are_recounted() {
    let texts = ["猫が寝る。", "ワインを一杯飲んだ", "le chat, noir.", "Il dort ici"];
    let sb = Tokenizer::ScriptBoundary;
    let ws = Tokenizer::Whitespace;
    let brute: usize = texts.iter().map(|t| sb.tokenize(t).len()).sum();
    let r = vocabulary_richness(texts.iter().copied(), &sb, &StatsConfig::default()).unwrap();
    assert_eq!(r.population as usize, brute);
    assert_eq!(ws.count("le chat, noir."), 5);
}
