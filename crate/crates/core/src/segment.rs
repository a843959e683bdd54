//! Bisegments, their segments and corpus-level metadata.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-empty language tag such as `ja` or `fr`.
///
/// Tags are shared between every segment of a corpus, so cloning is a
/// reference-count bump.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Lang(Arc<str>);

impl Lang {
    pub fn new(tag: &str) -> Result<Self> {
        let tag = tag.trim();
        if tag.is_empty() {
            return Err(Error::EmptyLanguage);
        }
        Ok(Lang(Arc::from(tag)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Lang {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        Lang::new(&value)
    }
}

impl From<Lang> for String {
    fn from(value: Lang) -> Self {
        value.0.to_string()
    }
}

impl fmt::Debug for Lang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&*self.0, f)
    }
}

impl fmt::Display for Lang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One side of a bisegment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub text: String,
    pub lang: Lang,
}

impl Segment {
    pub fn new(text: impl Into<String>, lang: Lang) -> Self {
        Segment {
            text: text.into(),
            lang,
        }
    }

    pub fn len_bytes(&self) -> usize {
        self.text.len()
    }
}

/// An aligned (source, target) pair with provenance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bisegment {
    pub source: Segment,
    pub target: Segment,
    /// Name of the corpus this pair was ingested from.
    pub origin: Arc<str>,
    /// 1-based line number in the origin files.
    pub line_no: u64,
}

impl Bisegment {
    pub fn new(source: Segment, target: Segment, origin: Arc<str>, line_no: u64) -> Result<Self> {
        if source.lang == target.lang {
            return Err(Error::SameLanguage(source.lang.to_string()));
        }
        if line_no == 0 {
            return Err(Error::ZeroLineNumber);
        }
        Ok(Bisegment {
            source,
            target,
            origin,
            line_no,
        })
    }

    /// Pair identity used by dedup and the leakage guard.
    pub fn pair(&self) -> (&str, &str) {
        (self.source.text.trim(), self.target.text.trim())
    }

    pub fn same_pair(&self, other: &Bisegment) -> bool {
        self.pair() == other.pair()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Production {
    Crawled,
    Translated,
}

impl Production {
    pub fn code(self) -> &'static str {
        match self {
            Production::Crawled => "c",
            Production::Translated => "t",
        }
    }
}

/// Whether the segments of a corpus originally came with preceding sentences.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cotext {
    Yes,
    No,
    #[default]
    NotApplicable,
}

impl Cotext {
    pub fn code(self) -> &'static str {
        match self {
            Cotext::Yes => "yes",
            Cotext::No => "no",
            Cotext::NotApplicable => "n/a",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusMeta {
    pub name: String,
    pub production: Production,
    #[serde(default)]
    pub has_cotext: Cotext,
}

impl CorpusMeta {
    pub fn new(name: impl Into<String>, production: Production, has_cotext: Cotext) -> Self {
        CorpusMeta {
            name: name.into(),
            production,
            has_cotext,
        }
    }
}

/// A named, fully loaded corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub meta: CorpusMeta,
    pub bisegments: Vec<Bisegment>,
}

impl Corpus {
    pub fn new(meta: CorpusMeta, bisegments: Vec<Bisegment>) -> Self {
        Corpus { meta, bisegments }
    }

    pub fn len(&self) -> usize {
        self.bisegments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bisegments.is_empty()
    }
}
