use bitext::io::{write_moses_pair, MosesPairReader};
use bitext_core::{Bisegment, Lang, Segment};
use proptest::prelude::*;
use std::sync::Arc;

fn langs() -> (Lang, Lang) {
    (Lang::new("ja").unwrap(), Lang::new("fr").unwrap())
}

fn bisegments(texts: &[(String, String)]) -> Vec<Bisegment> {
    texts
        .iter()
        .enumerate()
        .map(|(i, (s, t))| {
            Bisegment::new(Segment::new(s.trim(), langs().0), Segment::new(t.trim(), langs().1), Arc::from("p"), i as u64 + 1)
                .unwrap()
        })
        .collect()
}

fn round_trip(items: &[Bisegment]) -> Vec<Bisegment> {
    let (mut s, mut t) = (Vec::new(), Vec::new());
    write_moses_pair(items, &mut s, &mut t).unwrap();
    MosesPairReader::new(&s[..], &t[..], ("s", "t"), langs(), "p")
        .collect::<Result<_, _>>()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn write_then_read_is_identity(texts in prop::collection::vec(("[^\r\n\u{FEFF}]{0,30}", "[^\r\n\u{FEFF}]{0,30}"), 1000)) {
        let items = bisegments(&texts);
        prop_assert_eq!(round_trip(&items), items);
    }
}
