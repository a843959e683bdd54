//! Synthetic Japanese/French bitext with planted rule violations.

use std::collections::HashSet;
use std::io::{self, Read};
use std::sync::Arc;

use bitext_core::{Bisegment, Lang, Segment};
use rand::rngs::SmallRng;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};

const KANA: &[char] = &[
    'あ', 'い', 'う', 'え', 'お', 'か', 'き', 'く', 'け', 'こ', 'さ', 'し', 'す', 'せ', 'そ', 'た', 'ち',
    'つ', 'て', 'と', 'な', 'に', 'ぬ', 'ね', 'の', 'は', 'ひ', 'ふ', 'へ', 'ほ', 'ま', 'み', 'む', 'め',
    'も', 'や', 'ゆ', 'よ', 'ら', 'り', 'る', 'れ', 'ろ', 'わ', 'を', 'ん', 'が', 'ぎ', 'ぐ', 'で',
];
const KANJI: &[char] = &[
    '日', '本', '人', '大', '年', '中', '見', '行', '出', '生', '学', '時', '国', '話', '語', '水', '山',
    '川', '雨', '花', '猫', '犬', '車', '道', '町', '空', '海', '店', '家', '手',
];
const KATAKANA: &[char] = &['ア', 'イ', 'ウ', 'カ', 'キ', 'ク', 'サ', 'シ', 'ス', 'タ', 'ト', 'ナ', 'ニ', 'マ', 'ラ', 'ー'];
const FR_WORDS: &[&str] = &[
    "le", "la", "les", "un", "une", "des", "chat", "chien", "maison", "ville", "rivière", "montagne",
    "pluie", "fleur", "voiture", "route", "mer", "ciel", "magasin", "main", "il", "elle", "nous", "vous",
    "mange", "regarde", "parle", "va", "vient", "aime", "écrit", "lit", "grand", "petit", "beau", "vieux",
    "nouveau", "rouge", "bleu", "vert", "très", "souvent", "demain", "hier", "ici", "là", "avec", "sans",
    "pour", "dans", "sur", "sous", "entre", "année", "temps", "langue", "école", "enfant", "ami", "été",
];

/// Which rule a planted bisegment violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Plant {
    Length,
    Ratio,
    Brackets,
    Symbols,
    Dedup,
}

fn japanese(rng: &mut impl Rng, chars: usize) -> String {
    let mut s = String::new();
    while s.chars().count() < chars {
        match rng.random_range(0..10) {
            0..=2 => s.push(*KANJI.choose(rng).unwrap()),
            3 => {
                for _ in 0..rng.random_range(2..4) {
                    s.push(*KATAKANA.choose(rng).unwrap());
                }
            }
            _ => s.push(*KANA.choose(rng).unwrap()),
        }
    }
    let mut s: String = s.chars().take(chars).collect();
    s.push('。');
    s
}

fn french(rng: &mut impl Rng, min_bytes: usize, max_bytes: usize) -> String {
    let target = rng.random_range(min_bytes..=max_bytes);
    let mut s = String::new();
    // lengths below count the final period
    while s.len() + 1 < target {
        let w = FR_WORDS.choose(rng).unwrap();
        let extra = if s.is_empty() { w.len() } else { w.len() + 1 };
        if s.len() + extra + 1 > max_bytes {
            if s.len() + 1 >= min_bytes {
                break;
            }
            continue;
        }
        if !s.is_empty() {
            s.push(' ');
        }
        s.push_str(w);
    }
    let mut cs = s.chars();
    let first = cs.next().map(|c| c.to_uppercase().collect::<String>()).unwrap_or_default();
    let mut out = first + cs.as_str();
    out.push('.');
    out
}

/// A bisegment that passes every default rule: 10-20 Japanese characters
/// (30-63 bytes) and 30-80 bytes of French.
pub fn clean_pair(rng: &mut impl Rng) -> (String, String) {
    let n = rng.random_range(10..=20);
    (japanese(rng, n), french(rng, 30, 80))
}

// Long Japanese, short French: room to append to either side without
// breaking the length ratio.
fn roomy_pair(rng: &mut impl Rng) -> (String, String) {
    let n = rng.random_range(15..=20);
    (japanese(rng, n), french(rng, 30, 60))
}

/// A pair violating exactly `plant` (dedup plants are produced by
/// [`planted_corpus`], which copies an earlier pair).
pub fn violating_pair(rng: &mut impl Rng, plant: Plant, variant: usize) -> (String, String) {
    match plant {
        // 118 Japanese chars + 。 = 357 bytes; French 130-150 bytes keeps the ratio < 3
        Plant::Length => (japanese(rng, 118), french(rng, 130, 150)),
        // 10 chars + 。 = 33 bytes against 105-140 bytes of French
        Plant::Ratio => (japanese(rng, 10), french(rng, 105, 140)),
        Plant::Brackets => {
            let (ja, fr) = roomy_pair(rng);
            match variant % 3 {
                0 => (format!("（注）{ja}"), fr),
                1 => (ja, format!("{fr} (voir")),
                _ => (format!("「{ja}」"), fr),
            }
        }
        Plant::Symbols => {
            let (ja, fr) = roomy_pair(rng);
            match variant % 5 {
                0 => (ja, format!("{fr} ;;;;;;")),
                1 => (ja, format!("{fr} Quoi? Non! Ah?")),
                2 => (format!("{ja}\u{1F600}"), fr),
                3 => (ja, format!("{fr} ABCDEFGHIJKLMNOPQRSTU")),
                _ => (ja, format!("{fr} 123456789012345678901")),
            }
        }
        Plant::Dedup => clean_pair(rng),
    }
}

/// `total` pairs of which `plants` are violations (counts per kind), at
/// random positions. Non-dedup pairs are pairwise distinct; every dedup
/// plant repeats a clean pair placed before it. Returns the pairs and the
/// ledger of which rule each one violates.
pub fn planted_corpus(total: usize, plants: &[(Plant, usize)], seed: u64) -> (Vec<(String, String)>, Vec<Option<Plant>>) {
    let mut rng = SmallRng::seed_from_u64(seed);
    let planted: usize = plants.iter().map(|(_, n)| n).sum();
    assert!(planted < total);
    let mut labels: Vec<Option<Plant>> = vec![None; total - planted];
    for (plant, n) in plants {
        labels.extend(std::iter::repeat_n(Some(*plant), *n));
    }
    labels.shuffle(&mut rng);
    // the first element must be clean so that every dedup plant has a source
    if let Some(first_clean) = labels.iter().position(Option::is_none) {
        labels.swap(0, first_clean);
    }

    let mut seen: HashSet<(String, String)> = HashSet::new();
    let mut pairs: Vec<(String, String)> = Vec::with_capacity(total);
    let mut clean_idx: Vec<usize> = Vec::new();
    let mut variant = 0usize;
    for (i, label) in labels.iter().enumerate() {
        let pair = match label {
            Some(Plant::Dedup) => {
                let src = *clean_idx.choose(&mut rng).unwrap();
                pairs[src].clone()
            }
            _ => loop {
                let p = match label {
                    None => clean_pair(&mut rng),
                    Some(plant) => violating_pair(&mut rng, *plant, variant),
                };
                if seen.insert(p.clone()) {
                    break p;
                }
            },
        };
        if label.is_some() {
            variant += 1;
        }
        if label.is_none() {
            clean_idx.push(i);
        }
        pairs.push(pair);
    }
    (pairs, labels)
}

/// Pairs over a tiny alphabet so that natural collisions occur, then with
/// `dup_fraction` of the positions overwritten by copies of earlier pairs.
pub fn random_pairs_with_duplicates(n: usize, dup_fraction: f64, seed: u64) -> Vec<(String, String)> {
    let mut rng = SmallRng::seed_from_u64(seed);
    let word = |rng: &mut SmallRng| -> String {
        let len = rng.random_range(1..4);
        (0..len).map(|_| *['a', 'b', 'c', 'd', 'あ', ' '].choose(rng).unwrap()).collect()
    };
    let mut pairs: Vec<(String, String)> = (0..n).map(|_| (word(&mut rng), word(&mut rng))).collect();
    for i in 1..n {
        if rng.random_bool(dup_fraction) {
            let j = rng.random_range(0..i);
            pairs[i] = pairs[j].clone();
        }
    }
    pairs
}

pub fn to_bisegments(pairs: &[(String, String)], origin: &str) -> Vec<Bisegment> {
    let ja = Lang::new("ja").unwrap();
    let fr = Lang::new("fr").unwrap();
    let origin: Arc<str> = Arc::from(origin);
    pairs
        .iter()
        .enumerate()
        .map(|(i, (s, t))| {
            Bisegment::new(
                Segment::new(s.trim(), ja.clone()),
                Segment::new(t.trim(), fr.clone()),
                origin.clone(),
                i as u64 + 1,
            )
            .unwrap()
        })
        .collect()
}

/// Deterministic pair for line `i` of a synthetic stream: mostly clean
/// pairs of average length, with about 5% repeats of recent lines and 4%
/// rule violations.
pub fn stream_pair(seed: u64, i: u64) -> (String, String) {
    let mut rng = SmallRng::seed_from_u64(seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let roll = rng.random_range(0..100);
    if roll < 5 && i > 100 {
        let back = rng.random_range(1..100);
        return stream_pair(seed, i - back);
    }
    if (5..9).contains(&roll) {
        let plant = [Plant::Length, Plant::Ratio, Plant::Brackets, Plant::Symbols][(roll - 5) as usize];
        return violating_pair(&mut rng, plant, i as usize);
    }
    let n = rng.random_range(20..=40);
    (japanese(&mut rng, n), french(&mut rng, 70, 140))
}

/// One side of [`stream_pair`] lines as an `io::Read`, generated lazily.
pub struct SyntheticSide {
    seed: u64,
    lines: u64,
    next: u64,
    source: bool,
    buf: Vec<u8>,
    pos: usize,
}

impl SyntheticSide {
    pub fn new(seed: u64, lines: u64, source: bool) -> Self {
        SyntheticSide {
            seed,
            lines,
            next: 0,
            source,
            buf: Vec::with_capacity(1 << 16),
            pos: 0,
        }
    }
}

impl Read for SyntheticSide {
    fn read(&mut self, out: &mut [u8]) -> io::Result<usize> {
        if self.pos == self.buf.len() {
            self.buf.clear();
            self.pos = 0;
            while self.buf.len() < (1 << 15) && self.next < self.lines {
                let (s, t) = stream_pair(self.seed, self.next);
                self.buf.extend_from_slice(if self.source { s.as_bytes() } else { t.as_bytes() });
                self.buf.push(b'\n');
                self.next += 1;
            }
            if self.buf.is_empty() {
                return Ok(0);
            }
        }
        let n = out.len().min(self.buf.len() - self.pos);
        out[..n].copy_from_slice(&self.buf[self.pos..self.pos + n]);
        self.pos += n;
        Ok(n)
    }
}
