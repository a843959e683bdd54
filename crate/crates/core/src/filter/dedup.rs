use hashbrown::HashSet;
use xxhash_rust::xxh3::Xxh3Default;

use crate::segment::Bisegment;

/// 128-bit fingerprint of a trimmed (source, target) pair.
///
/// Both texts are length-prefixed so that no two distinct pairs share an
/// encoding.
pub fn pair_fingerprint(source: &str, target: &str) -> u128 {
    let (source, target) = (source.trim(), target.trim());
    let mut h = Xxh3Default::new();
    h.update(&(source.len() as u64).to_le_bytes());
    h.update(source.as_bytes());
    h.update(&(target.len() as u64).to_le_bytes());
    h.update(target.as_bytes());
    h.digest128()
}

/// Seen-set of pair fingerprints. Memory is 16 bytes per distinct pair plus
/// table overhead, independent of segment length.
#[derive(Debug, Default, Clone)]
pub struct DedupSet {
    seen: HashSet<u128>,
}

impl DedupSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records the pair; `true` if it had not been seen before.
    pub fn insert(&mut self, bi: &Bisegment) -> bool {
        let (s, t) = bi.pair();
        self.seen.insert(pair_fingerprint(s, t))
    }

    pub fn contains(&self, bi: &Bisegment) -> bool {
        let (s, t) = bi.pair();
        self.seen.contains(&pair_fingerprint(s, t))
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }
}

/// Iterator adapter keeping the first occurrence of every pair.
pub struct Dedup<I> {
    inner: I,
    seen: DedupSet,
}

impl<I: Iterator<Item = Bisegment>> Iterator for Dedup<I> {
    type Item = Bisegment;

    fn next(&mut self) -> Option<Bisegment> {
        self.inner.by_ref().find(|bi| self.seen.insert(bi))
    }
}

pub fn dedup<I: IntoIterator<Item = Bisegment>>(input: I) -> Dedup<I::IntoIter> {
    Dedup {
        inner: input.into_iter(),
        seen: DedupSet::new(),
    }
}
