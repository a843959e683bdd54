//! Assembly of the ready-to-use package: a core of translated corpora split
//! into train/val/test plus reserved held-out sets, and an extension of
//! filtered crawled corpora passed through with direction tags.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::digest::Canon;
use crate::error::{Error, Result};
use crate::filter::DedupSet;
use crate::segment::{Bisegment, Corpus, Production};

/// A permitted translation direction, written `ja>fr`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Direction {
    pub from: String,
    pub to: String,
}

impl Direction {
    pub fn new(from: &str, to: &str) -> Self {
        Direction {
            from: from.into(),
            to: to.into(),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>{}", self.from, self.to)
    }
}

impl TryFrom<String> for Direction {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        match value.split_once('>') {
            Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => Ok(Direction::new(a.trim(), b.trim())),
            _ => Err(Error::InvalidConfig(format!("bad direction {value:?}, expected e.g. \"ja>fr\""))),
        }
    }
}

impl From<Direction> for String {
    fn from(value: Direction) -> Self {
        value.to_string()
    }
}

/// A held-out test set: the whole of `corpus`, or a seeded uniform sample
/// of `size` distinct pairs from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReservedTest {
    pub name: String,
    pub corpus: String,
    #[serde(default)]
    pub size: Option<usize>,
}

/// When exact-pair dedup happens relative to carving val/test.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitOrder {
    /// Dedup, then carve: val/test always reach their target sizes.
    #[default]
    DedupThenCarve,
    /// Carve, then drop repeats: val/test may end up below target.
    CarveThenDedup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DatasetLayout {
    pub core_members: Vec<String>,
    pub extension_members: Vec<String>,
    pub val_size: usize,
    pub test_size: usize,
    pub reserved_tests: Vec<ReservedTest>,
    pub seed: u64,
    /// Corpora absent from the map are usable in both directions.
    pub direction_restrictions: BTreeMap<String, Vec<Direction>>,
    pub split_order: SplitOrder,
}

impl Default for DatasetLayout {
    fn default() -> Self {
        let mut direction_restrictions = BTreeMap::new();
        direction_restrictions.insert(String::from("cesselin"), alloc::vec![Direction::new("ja", "fr")]);
        DatasetLayout {
            core_members: Vec::new(),
            extension_members: Vec::new(),
            val_size: 3000,
            test_size: 3000,
            reserved_tests: Vec::new(),
            seed: 42,
            direction_restrictions,
            split_order: SplitOrder::DedupThenCarve,
        }
    }
}

impl DatasetLayout {
    pub fn validate(&self) -> Result<()> {
        for name in &self.core_members {
            if self.extension_members.contains(name) {
                return Err(Error::OverlappingMembers(name.clone()));
            }
        }
        for (i, r) in self.reserved_tests.iter().enumerate() {
            if self.reserved_tests[..i].iter().any(|o| o.name == r.name) {
                return Err(Error::InvalidConfig(format!("reserved set {:?} declared twice", r.name)));
            }
        }
        Ok(())
    }

    /// Every corpus name the layout refers to.
    pub fn referenced_corpora(&self) -> impl Iterator<Item = &str> {
        self.core_members
            .iter()
            .chain(&self.extension_members)
            .map(String::as_str)
            .chain(self.reserved_tests.iter().map(|r| r.corpus.as_str()))
    }

    /// SHA-256 over a canonical encoding of every field.
    pub fn digest(&self) -> String {
        let mut c = Canon::new("bitext.layout.v1");
        c.u64(self.core_members.len() as u64);
        for m in &self.core_members {
            c.str(m);
        }
        c.u64(self.extension_members.len() as u64);
        for m in &self.extension_members {
            c.str(m);
        }
        c.u64(self.val_size as u64).u64(self.test_size as u64);
        c.u64(self.reserved_tests.len() as u64);
        for r in &self.reserved_tests {
            c.str(&r.name).str(&r.corpus);
            c.u64(r.size.map_or(u64::MAX, |s| s as u64));
        }
        c.u64(self.seed);
        c.u64(self.direction_restrictions.len() as u64);
        for (name, dirs) in &self.direction_restrictions {
            c.str(name).u64(dirs.len() as u64);
            for d in dirs {
                c.str(&d.from).str(&d.to);
            }
        }
        c.u64(self.split_order as u64);
        c.finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSplit {
    pub name: String,
    pub bisegments: Vec<Bisegment>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCorpus {
    pub name: String,
    /// Empty when unrestricted.
    pub directions: Vec<Direction>,
    pub bisegments: Vec<Bisegment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub seed: u64,
    pub config_digest: String,
    /// Core bisegments entering dedup (after reserved samples were drawn).
    pub core_input: u64,
    pub duplicates_removed: u64,
    pub leaks_removed: u64,
    /// Split sizes keyed `train`, `val`, `test`, `reserved/<name>`, `ext/<name>`.
    pub counts: BTreeMap<String, u64>,
    pub directions: BTreeMap<String, Vec<Direction>>,
    pub content_digests: BTreeMap<String, String>,
    /// Digest over all of the above.
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub train: Vec<Bisegment>,
    pub val: Vec<Bisegment>,
    pub test: Vec<Bisegment>,
    pub reserved: Vec<NamedSplit>,
    pub extension: Vec<ExtensionCorpus>,
    pub manifest: Manifest,
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn shuffle<T>(items: &mut [T], rng: &mut ChaCha8Rng) {
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i);
        items.swap(i, j);
    }
}

fn content_digest(items: &[Bisegment]) -> String {
    let mut c = Canon::new("bitext.split.v1");
    c.u64(items.len() as u64);
    for b in items {
        c.str(b.source.lang.as_str()).str(&b.source.text);
        c.str(b.target.lang.as_str()).str(&b.target.text);
    }
    c.finish()
}

fn take_corpus(slots: &mut [Option<Corpus>], name: &str) -> Result<Corpus> {
    slots
        .iter_mut()
        .find(|c| c.as_ref().is_some_and(|c| c.meta.name == name))
        .and_then(Option::take)
        .ok_or_else(|| Error::UnknownCorpus(name.into()))
}

/// Builds the core splits, reserved sets and extension from named corpora.
pub fn assemble_and_split(corpora: Vec<Corpus>, layout: &DatasetLayout) -> Result<SplitResult> {
    layout.validate()?;
    for name in layout.referenced_corpora() {
        if !corpora.iter().any(|c| c.meta.name == name) {
            return Err(Error::UnknownCorpus(name.into()));
        }
    }
    for name in &layout.core_members {
        let c = corpora.iter().find(|c| &c.meta.name == name).expect("checked above");
        if c.meta.production == Production::Crawled {
            return Err(Error::CrawledInCore(name.clone()));
        }
    }

    let mut pool: BTreeMap<String, Vec<Bisegment>> = BTreeMap::new();
    let mut slots: Vec<Option<Corpus>> = corpora.into_iter().map(Some).collect();
    for name in layout.referenced_corpora() {
        if !pool.contains_key(name) {
            pool.insert(name.into(), take_corpus(&mut slots, name)?.bisegments);
        }
    }

    // Reserved sets first: sampled items leave their corpus.
    let mut reserved = Vec::with_capacity(layout.reserved_tests.len());
    for (i, spec) in layout.reserved_tests.iter().enumerate() {
        let source = pool.get_mut(&spec.corpus).expect("pooled above");
        let items = match spec.size {
            None => source.clone(),
            Some(k) => {
                let mut seen = DedupSet::new();
                let mut distinct: Vec<usize> = (0..source.len()).filter(|&j| seen.insert(&source[j])).collect();
                if k > distinct.len() {
                    return Err(Error::InsufficientReserved {
                        name: spec.name.clone(),
                        corpus: spec.corpus.clone(),
                        requested: k,
                        available: distinct.len(),
                    });
                }
                let mut r = rng(layout.seed, 1 + i as u64);
                for a in 0..k {
                    let b = r.random_range(a..distinct.len());
                    distinct.swap(a, b);
                }
                let mut picked = distinct[..k].to_vec();
                picked.sort_unstable();
                let mut taken = Vec::with_capacity(k);
                let mut rest = Vec::with_capacity(source.len() - k);
                let mut next = picked.iter().peekable();
                for (j, bi) in core::mem::take(source).into_iter().enumerate() {
                    if next.peek() == Some(&&j) {
                        next.next();
                        taken.push(bi);
                    } else {
                        rest.push(bi);
                    }
                }
                *source = rest;
                taken
            }
        };
        reserved.push(NamedSplit {
            name: spec.name.clone(),
            bisegments: items,
        });
    }

    let mut guard = DedupSet::new();
    for r in &reserved {
        for bi in &r.bisegments {
            guard.insert(bi);
        }
    }

    let mut concat: Vec<Bisegment> = Vec::new();
    for name in &layout.core_members {
        concat.extend(pool.get(name).expect("pooled above").iter().cloned());
    }
    let core_input = concat.len() as u64;
    let (val_size, test_size) = (layout.val_size, layout.test_size);
    let mut seen = DedupSet::new();
    let mut leaks = 0u64;
    let mut duplicates = 0u64;
    let mut admit = |bi: &Bisegment| {
        if guard.contains(bi) {
            leaks += 1;
            false
        } else if !seen.insert(bi) {
            duplicates += 1;
            false
        } else {
            true
        }
    };
    let mut shuffler = rng(layout.seed, 0);

    let (train, val, test) = match layout.split_order {
        SplitOrder::DedupThenCarve => {
            let mut unique: Vec<Bisegment> = concat.into_iter().filter(|b| admit(b)).collect();
            if unique.len() <= val_size + test_size {
                return Err(Error::InsufficientCore {
                    available: unique.len(),
                    val: val_size,
                    test: test_size,
                });
            }
            shuffle(&mut unique, &mut shuffler);
            let train = unique.split_off(val_size + test_size);
            let test = unique.split_off(val_size);
            (train, unique, test)
        }
        SplitOrder::CarveThenDedup => {
            if concat.len() <= val_size + test_size {
                return Err(Error::InsufficientCore {
                    available: concat.len(),
                    val: val_size,
                    test: test_size,
                });
            }
            shuffle(&mut concat, &mut shuffler);
            let train = concat.split_off(val_size + test_size);
            let test = concat.split_off(val_size);
            let val: Vec<_> = concat.into_iter().filter(|b| admit(b)).collect();
            let test: Vec<_> = test.into_iter().filter(|b| admit(b)).collect();
            let train: Vec<_> = train.into_iter().filter(|b| admit(b)).collect();
            (train, val, test)
        }
    };

    let mut extension = Vec::with_capacity(layout.extension_members.len());
    for name in &layout.extension_members {
        extension.push(ExtensionCorpus {
            name: name.clone(),
            directions: layout.direction_restrictions.get(name).cloned().unwrap_or_default(),
            bisegments: pool.remove(name).unwrap_or_default(),
        });
    }

    let mut counts = BTreeMap::new();
    let mut content_digests = BTreeMap::new();
    let mut directions = BTreeMap::new();
    for (key, items) in [("train", &train), ("val", &val), ("test", &test)] {
        counts.insert(String::from(key), items.len() as u64);
        content_digests.insert(String::from(key), content_digest(items));
    }
    for r in &reserved {
        let key = format!("reserved/{}", r.name);
        counts.insert(key.clone(), r.bisegments.len() as u64);
        content_digests.insert(key, content_digest(&r.bisegments));
    }
    for e in &extension {
        let key = format!("ext/{}", e.name);
        counts.insert(key.clone(), e.bisegments.len() as u64);
        content_digests.insert(key.clone(), content_digest(&e.bisegments));
        if !e.directions.is_empty() {
            directions.insert(key, e.directions.clone());
        }
    }

    let mut manifest = Manifest {
        seed: layout.seed,
        config_digest: layout.digest(),
        core_input,
        duplicates_removed: duplicates,
        leaks_removed: leaks,
        counts,
        directions,
        content_digests,
        digest: String::new(),
    };
    manifest.digest = manifest_digest(&manifest);

    Ok(SplitResult {
        train,
        val,
        test,
        reserved,
        extension,
        manifest,
    })
}

fn manifest_digest(m: &Manifest) -> String {
    let mut c = Canon::new("bitext.manifest.v1");
    c.u64(m.seed).str(&m.config_digest);
    c.u64(m.core_input).u64(m.duplicates_removed).u64(m.leaks_removed);
    c.u64(m.counts.len() as u64);
    for (k, v) in &m.counts {
        c.str(k).u64(*v);
    }
    c.u64(m.directions.len() as u64);
    for (k, dirs) in &m.directions {
        c.str(k).u64(dirs.len() as u64);
        for d in dirs {
            c.str(&d.from).str(&d.to);
        }
    }
    for (k, v) in &m.content_digests {
        c.str(k).str(v);
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::{Cotext, CorpusMeta, Lang, Segment};
    use alloc::sync::Arc;
    use alloc::vec;

    fn corpus(name: &str, production: Production, n: usize, tag: &str) -> Corpus {
        let ja = Lang::new("ja").unwrap();
        let fr = Lang::new("fr").unwrap();
        let origin: Arc<str> = Arc::from(name);
        let items = (0..n)
            .map(|i| {
                Bisegment::new(
                    Segment::new(format!("{tag}{i}ja"), ja.clone()),
                    Segment::new(format!("{tag}{i}fr"), fr.clone()),
                    origin.clone(),
                    i as u64 + 1,
                )
                .unwrap()
            })
            .collect();
        Corpus::new(CorpusMeta::new(name, production, Cotext::No), items)
    }

    fn layout(core: &[&str], val: usize, test: usize) -> DatasetLayout {
        DatasetLayout {
            core_members: core.iter().map(|s| String::from(*s)).collect(),
            val_size: val,
            test_size: test,
            ..Default::default()
        }
    }

    #[test]
    fn arithmetic_partition() {
        let r = assemble_and_split(vec![corpus("ted", Production::Translated, 10_000, "t")], &layout(&["ted"], 3000, 3000)).unwrap();
        assert_eq!((r.train.len(), r.val.len(), r.test.len()), (4000, 3000, 3000));
        let mut all = DedupSet::new();
        for b in r.train.iter().chain(&r.val).chain(&r.test) {
            assert!(all.insert(b));
        }
    }

    #[test]
    fn crawled_core_member_rejected() {
        let err = assemble_and_split(vec![corpus("wm", Production::Crawled, 10, "w")], &layout(&["wm"], 1, 1)).unwrap_err();
        assert_eq!(err, Error::CrawledInCore("wm".into()));
    }

    #[test]
    fn insufficient_core_names_counts() {
        let err = assemble_and_split(vec![corpus("t", Production::Translated, 6, "t")], &layout(&["t"], 3, 3)).unwrap_err();
        assert_eq!(err, Error::InsufficientCore { available: 6, val: 3, test: 3 });
    }

    #[test]
    fn overlapping_members_rejected() {
        let mut l = layout(&["t"], 1, 1);
        l.extension_members.push("t".into());
        let err = assemble_and_split(vec![corpus("t", Production::Translated, 6, "t")], &l).unwrap_err();
        assert_eq!(err, Error::OverlappingMembers("t".into()));
    }

    #[test]
    fn unknown_corpus_rejected() {
        let err = assemble_and_split(vec![], &layout(&["ted"], 1, 1)).unwrap_err();
        assert_eq!(err, Error::UnknownCorpus("ted".into()));
    }

    #[test]
    fn reserved_sample_leaves_core() {
        let mut l = layout(&["ted"], 10, 10);
        l.reserved_tests.push(ReservedTest {
            name: "ted.test".into(),
            corpus: "ted".into(),
            size: Some(30),
        });
        let r = assemble_and_split(vec![corpus("ted", Production::Translated, 100, "t")], &l).unwrap();
        assert_eq!(r.reserved[0].bisegments.len(), 30);
        assert_eq!(r.train.len(), 50);
        assert_eq!(r.manifest.core_input, 70);
        assert_eq!(r.manifest.leaks_removed, 0);
    }

    #[test]
    fn carve_then_dedup_may_undershoot() {
        let mut c = corpus("t", Production::Translated, 50, "t");
        let dup = c.bisegments.clone();
        c.bisegments.extend(dup);
        let mut l = layout(&["t"], 20, 20);
        l.split_order = SplitOrder::CarveThenDedup;
        let r = assemble_and_split(vec![c], &l).unwrap();
        let total = r.train.len() + r.val.len() + r.test.len();
        assert_eq!(total as u64 + r.manifest.duplicates_removed, 100);
        assert_eq!(total, 50);
        assert!(r.val.len() <= 20 && r.test.len() <= 20);
    }

    #[test]
    fn extension_carries_direction_tags() {
        let mut l = layout(&["t"], 1, 1);
        l.extension_members.push("cesselin".into());
        let r = assemble_and_split(
            vec![corpus("t", Production::Translated, 5, "t"), corpus("cesselin", Production::Translated, 4, "c")],
            &l,
        )
        .unwrap();
        assert_eq!(r.extension[0].directions, vec![Direction::new("ja", "fr")]);
        assert_eq!(r.manifest.counts["ext/cesselin"], 4);
    }

    #[test]
    fn direction_text_form() {
        assert_eq!(Direction::try_from(String::from("ja>fr")).unwrap(), Direction::new("ja", "fr"));
        assert!(Direction::try_from(String::from("ja-fr")).is_err());
    }
}
