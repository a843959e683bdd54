use std::collections::HashSet;

use bitext_core::split::{assemble_and_split, DatasetLayout, ReservedTest};
use bitext_core::{Bisegment, Corpus, CorpusMeta, Cotext, Production};
use bitext_testkit::corpus::{planted_corpus, to_bisegments};

fn corpus(name: &str, production: Production, pairs: &[(String, String)]) -> Corpus {
    Corpus::new(CorpusMeta::new(name, production, Cotext::No), to_bisegments(pairs, name))
}

fn keys(items: &[Bisegment]) -> HashSet<(String, String)> {
    items.iter().map(|b| (b.source.text.clone(), b.target.text.clone())).collect()
}

fn fixture() -> (Vec<Corpus>, DatasetLayout) {
    let (a, _) = planted_corpus(400, &[], 1);
    let (reserved, _) = planted_corpus(50, &[], 2);
    let mut b = planted_corpus(300, &[], 3).0;
    // 7 leaks of the reserved set and 12 repeats of corpus a
    b.extend(reserved[..7].iter().cloned());
    b.extend(a[100..112].iter().cloned());
    let corpora = vec![
        corpus("a", Production::Translated, &a),
        corpus("b", Production::Translated, &b),
        corpus("held", Production::Translated, &reserved),
        corpus("web", Production::Crawled, &planted_corpus(30, &[], 4).0),
    ];
    let layout = DatasetLayout {
        core_members: vec!["a".into(), "b".into()],
        extension_members: vec!["web".into()],
        val_size: 100,
        test_size: 120,
        reserved_tests: vec![
            ReservedTest { name: "held".into(), corpus: "held".into(), size: None },
            ReservedTest { name: "a.test".into(), corpus: "a".into(), size: Some(25) },
        ],
        ..DatasetLayout::default()
    };
    (corpora, layout)
}

#[test]
fn splits_are_disjoint_and_leak_free() {
    let (corpora, layout) = fixture();
    let r = assemble_and_split(corpora, &layout).unwrap();
    let (train, val, test) = (keys(&r.train), keys(&r.val), keys(&r.test));
    assert_eq!((val.len(), test.len()), (100, 120));
    assert!(train.is_disjoint(&val) && train.is_disjoint(&test) && val.is_disjoint(&test));
    for held in &r.reserved {
        let held = keys(&held.bisegments);
        assert!(train.is_disjoint(&held) && val.is_disjoint(&held) && test.is_disjoint(&held));
    }
    // repeats in b of items sampled into a.test count as leaks
    let sampled = keys(&r.reserved[1].bisegments);
    let resampled = planted_corpus(400, &[], 1).0[100..112].iter().filter(|p| sampled.contains(*p)).count() as u64;
    assert_eq!(r.manifest.leaks_removed, 7 + resampled);
    assert_eq!(r.manifest.duplicates_removed, 12 - resampled);
    assert_eq!(r.manifest.core_input, 375 + 319);
    assert_eq!(r.train.len() as u64, 375 + 319 - 7 - 12 - 220);
    assert_eq!(r.manifest.counts["ext/web"], 30);
}

#[test]
fn same_seed_same_digest() {
    let (c1, layout) = fixture();
    let (c2, _) = fixture();
    let a = assemble_and_split(c1, &layout).unwrap();
    let b = assemble_and_split(c2, &layout).unwrap();
    assert_eq!(a.manifest.digest, b.manifest.digest);
    assert_eq!(a.train, b.train);

    let (c3, _) = fixture();
    let other = DatasetLayout { seed: 7, ..layout };
    assert_ne!(assemble_and_split(c3, &other).unwrap().manifest.digest, a.manifest.digest);
}
