//! Naive reference implementations. Deliberately slow and simple: linear
//! scans instead of hash maps, products instead of log sums.

use rand::rngs::StdRng;
use rand::SeedableRng;

/// Keeps the first occurrence of each trimmed pair by comparing every
/// element with every earlier one.
pub fn quadratic_dedup(pairs: &[(String, String)]) -> Vec<usize> {
    let mut kept = Vec::new();
    for i in 0..pairs.len() {
        let (s, t) = (pairs[i].0.trim(), pairs[i].1.trim());
        let repeated = (0..i).any(|j| pairs[j].0.trim() == s && pairs[j].1.trim() == t);
        if !repeated {
            kept.push(i);
        }
    }
    kept
}

/// Every contiguous n-gram, in order, with repetitions.
fn ngrams<T: Clone>(items: &[T], n: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    if n == 0 || items.len() < n {
        return out;
    }
    for start in 0..=items.len() - n {
        out.push(items[start..start + n].to_vec());
    }
    out
}

fn occurrences<T: PartialEq>(haystack: &[Vec<T>], needle: &[T]) -> u64 {
    haystack.iter().filter(|g| g.as_slice() == needle).count() as u64
}

/// (clipped matches, hypothesis total, reference total) for one sentence
/// and one order.
fn clipped<T: PartialEq + Clone>(hyp: &[T], reference: &[T], n: usize) -> (u64, u64, u64) {
    let hg = ngrams(hyp, n);
    let rg = ngrams(reference, n);
    let mut distinct: Vec<Vec<T>> = Vec::new();
    for g in &hg {
        if !distinct.contains(g) {
            distinct.push(g.clone());
        }
    }
    let matches = distinct
        .iter()
        .map(|g| occurrences(&hg, g).min(occurrences(&rg, g)))
        .sum();
    (matches, hg.len() as u64, rg.len() as u64)
}

fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_owned).collect()
}

/// Corpus BLEU on whitespace tokens: clipped precisions, geometric mean,
/// brevity penalty, x100. Any zero precision gives 0.
pub fn brute_bleu(hyps: &[String], refs: &[String], max_order: usize) -> f64 {
    let mut m = vec![0u64; max_order];
    let mut t = vec![0u64; max_order];
    let (mut c, mut r) = (0u64, 0u64);
    for (h, rf) in hyps.iter().zip(refs) {
        let (hw, rw) = (words(h), words(rf));
        c += hw.len() as u64;
        r += rw.len() as u64;
        for n in 1..=max_order {
            let (mm, ht, _) = clipped(&hw, &rw, n);
            m[n - 1] += mm;
            t[n - 1] += ht;
        }
    }
    if (0..max_order).any(|i| m[i] == 0 || t[i] == 0) {
        return 0.0;
    }
    let product: f64 = (0..max_order).map(|i| m[i] as f64 / t[i] as f64).product();
    let geo = product.powf(1.0 / max_order as f64);
    let bp = if c > r { 1.0 } else { (1.0 - r as f64 / c as f64).exp() };
    100.0 * bp * geo
}

/// Corpus chrF with uniform averaging of per-order F-beta over character
/// orders 1..=char_order (whitespace removed) and word orders
/// 1..=word_order; orders without any n-gram on either side are skipped.
pub fn brute_chrf(hyps: &[String], refs: &[String], char_order: usize, word_order: usize, beta: f64) -> f64 {
    let mut per_order: Vec<(u64, u64, u64)> = Vec::new();
    for n in 1..=char_order {
        let mut acc = (0, 0, 0);
        for (h, rf) in hyps.iter().zip(refs) {
            let hc: Vec<char> = h.chars().filter(|c| !c.is_whitespace()).collect();
            let rc: Vec<char> = rf.chars().filter(|c| !c.is_whitespace()).collect();
            let (a, b, c) = clipped(&hc, &rc, n);
            acc = (acc.0 + a, acc.1 + b, acc.2 + c);
        }
        per_order.push(acc);
    }
    for n in 1..=word_order {
        let mut acc = (0, 0, 0);
        for (h, rf) in hyps.iter().zip(refs) {
            let (a, b, c) = clipped(&words(h), &words(rf), n);
            acc = (acc.0 + a, acc.1 + b, acc.2 + c);
        }
        per_order.push(acc);
    }
    let live: Vec<_> = per_order.into_iter().filter(|&(_, h, r)| h + r > 0).collect();
    if live.is_empty() {
        return 0.0;
    }
    let b2 = beta * beta;
    let mut sum = 0.0;
    for (m, h, r) in &live {
        let p = if *h == 0 { 0.0 } else { *m as f64 / *h as f64 };
        let rec = if *r == 0 { 0.0 } else { *m as f64 / *r as f64 };
        if b2 * p + rec > 0.0 {
            sum += (1.0 + b2) * p * rec / (b2 * p + rec);
        }
    }
    100.0 * sum / live.len() as f64
}

/// Exact expected number of distinct types in a uniform n-subset of a
/// multiset with the given type counts (hypergeometric).
pub fn expected_distinct(type_counts: &[usize], n: usize) -> f64 {
    let m: usize = type_counts.iter().sum();
    assert!(n <= m);
    type_counts
        .iter()
        .map(|&c| {
            // P(type absent) = C(m - c, n) / C(m, n)
            let mut absent = 1.0f64;
            for i in 0..c {
                let num = m as f64 - n as f64 - i as f64;
                if num <= 0.0 {
                    absent = 0.0;
                    break;
                }
                absent *= num / (m - i) as f64;
            }
            1.0 - absent
        })
        .sum()
}

/// Monte-Carlo estimate of distinct types in n-samples without
/// replacement: (mean, standard deviation of one trial).
pub fn simulate_distinct(tokens: &[u32], n: usize, trials: usize, seed: u64) -> (f64, f64) {
    let mut rng = StdRng::seed_from_u64(seed);
    let types = tokens.iter().copied().max().map_or(0, |t| t as usize + 1);
    let mut seen = vec![usize::MAX; types];
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for trial in 0..trials {
        let mut distinct = 0usize;
        for idx in rand::seq::index::sample(&mut rng, tokens.len(), n) {
            let t = tokens[idx] as usize;
            if seen[t] != trial {
                seen[t] = trial;
                distinct += 1;
            }
        }
        sum += distinct as f64;
        sum_sq += (distinct * distinct) as f64;
    }
    let mean = sum / trials as f64;
    let var = (sum_sq / trials as f64 - mean * mean).max(0.0) * trials as f64 / (trials as f64 - 1.0);
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_examples() {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(brute_bleu(&s(&["the the the the"]), &s(&["the cat"]), 1), 25.0);
        let c = brute_chrf(&s(&["abc"]), &s(&["abd"]), 2, 0, 1.0);
        assert!((c - 100.0 * (2.0 / 3.0 + 0.5) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn hypergeometric_edges() {
        assert!((expected_distinct(&[1; 50], 20) - 20.0).abs() < 1e-9);
        assert!((expected_distinct(&[100], 10) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dedup_oracle() {
        let p = |a: &str, b: &str| (a.to_string(), b.to_string());
        assert_eq!(quadratic_dedup(&[p("a", "x"), p("b", "y"), p("a ", "x")]), vec![0, 1]);
    }
}
