use bitext_core::filter::Rule;
use bitext_core::modernize::{
    modernize, modernize_conjugation, modernize_kana, reject_ocr_noise, ModernizationRules, Modernizer,
};
use bitext_core::{Bisegment, Lang, Segment};
use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use std::sync::Arc;

/// (text, is OCR noise), labelled by reading rather than by the detector.
pub const EMBEDDED_LATIN: &[(&str, bool)] = &[
    ("あxい", true),
    ("日本a語", true),
    ("買っtて来る", true),
    ("しかしlながら", true),
    ("此の本はi高い", true),
    ("今日はb晴れ", true),
    ("彼rは行った", true),
    ("水をn飲む", true),
    ("山のo上", true),
    ("花がe咲く", true),
    ("私はlそう思ふ", true),
    ("東京hへ行く", true),
    ("先生のt話", true),
    ("雨がIふる", true),
    ("子供がc遊ぶ", true),
    ("それはrなり", true),
    ("是非dお出で", true),
    ("机のsうへ", true),
    ("書物をm読む", true),
    ("夜にv成る", true),
    ("海のy水", true),
    ("犬がk走る", true),
    ("これはuよい", true),
    ("手紙をg書く", true),
    ("家にfかへる", true),
    ("Tシャツを買う", false),
    ("CDを買った", false),
    ("ビタミンCを摂る", false),
    ("Aランクの店", false),
    ("血液型はAB型", false),
    ("第3章", false),
    ("日本語", false),
    ("東京へ行く", false),
    ("彼は「Paris」に住む", false),
    ("ＮＨＫの放送", false),
    ("私はJavaを学ぶ", false),
    ("OKです", false),
    ("GパンとTシャツ", false),
    ("IT企業", false),
    ("x軸とy軸", false),
    ("ビタミンBが不足", false),
    ("午後3時", false),
    ("A4の紙", false),
    ("山田さんとSさん", false),
    ("猫が寝る", false),
    ("ｐＨの値", false),
    ("pH値", false),
    ("Ｘ線で見る", false),
    ("ローマ字でaと書く", false),
    ("「B」の字", false),
];

#[test]
fn embedded_latin_against_labels() {
    assert_eq!(EMBEDDED_LATIN.len(), 50);
    let rules = ModernizationRules::default();
    let mut false_positives = Vec::new();
    for (text, noisy) in EMBEDDED_LATIN {
        let flagged = reject_ocr_noise(text, &rules).rule() == Some(Rule::Ocr);
        if *noisy {
            assert!(flagged, "missed {text}");
        } else if flagged {
            false_positives.push(*text);
        }
    }
    assert_eq!(false_positives, ["x軸とy軸", "山田さんとSさん", "ローマ字でaと書く"]);
}

/// Historical te/ta forms of verbs on the guard list and their modern forms.
const VERBS: &[(&str, &str)] = &[
    ("買うて", "買って"),
    ("思うて", "思って"),
    ("言うた", "言った"),
    ("会うて", "会って"),
    ("歌うた", "歌った"),
    ("笑うて", "笑って"),
    ("習うた", "習った"),
    ("払うて", "払って"),
    ("洗うた", "洗った"),
    ("使うて", "使って"),
    ("拾うた", "拾った"),
    ("誘うて", "誘って"),
    ("追うて", "追って"),
    ("願うた", "願った"),
    ("救うて", "救って"),
    ("食うた", "食った"),
    ("迷うて", "迷って"),
    ("貰ふて", "貰って"),
    ("思ふた", "思った"),
    ("もらうて", "もらって"),
];

#[test]
fn twenty_verbs() {
    let rules = ModernizationRules::default();
    for (old, new) in VERBS {
        assert_eq!(modernize_conjugation(old, &rules), *new, "{old}");
        assert_eq!(modernize_conjugation(&format!("本を{old}来た"), &rules), format!("本を{new}来た"));
    }
    // modern te-forms and nouns stay
    assert_eq!(modernize_conjugation("問うて", &rules), "問うて");
    assert_eq!(modernize_conjugation("ゆうて", &rules), "ゆうて");
    assert_eq!(modernize_conjugation("空うて", &rules), "空うて");
}

#[test]
fn fixtures() {
    let rules = ModernizationRules::default();
    assert_eq!(modernize("ゐる", &rules), "いる");
    assert_eq!(modernize("買うて", &rules), "買って");
    assert_eq!(modernize("酒を買うてゐる", &rules), "酒を買っている");
}

fn fuzz_string(rng: &mut StdRng) -> String {
    const PARTS: &[&str] = &[
        "ゐ", "ゑ", "ヰ", "ヱ", "う", "ふ", "て", "た", "っ", "買", "思", "向か", "しま", "もら", "問", "は", "を",
        "本", "x", " ", "。", "い", "え",
    ];
    let n = rng.random_range(0..30);
    (0..n).map(|_| *PARTS.choose(rng).unwrap()).collect()
}

#[test]
fn idempotent_on_fuzz() {
    let rules = ModernizationRules::default();
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..10_000 {
        let s = fuzz_string(&mut rng);
        let k = modernize_kana(&s, &rules);
        assert_eq!(modernize_kana(&k, &rules), k);
        let c = modernize_conjugation(&s, &rules);
        assert_eq!(modernize_conjugation(&c, &rules), c, "{s}");
        let m = modernize(&s, &rules);
        assert_eq!(modernize(&m, &rules), m);
    }
}

#[test]
fn modernizer_acts_on_the_japanese_side() {
    let bi = Bisegment::new(
        Segment::new("Il l'a acheté.", Lang::new("fr").unwrap()),
        Segment::new("買うてゐた", Lang::new("ja").unwrap()),
        Arc::from("cesselin"),
        1,
    )
    .unwrap();
    let mut m = Modernizer::new(ModernizationRules::default()).unwrap();
    let out = m.apply(bi).unwrap();
    assert_eq!(out.target.text, "買っていた");
    assert_eq!(out.source.text, "Il l'a acheté.");
    assert_eq!(m.report().modified, 1);
}
