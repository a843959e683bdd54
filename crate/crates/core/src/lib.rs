//! Allocation-only core of the bitext toolkit.
//!
//! Everything in this crate is a pure function of its inputs (plus an
//! explicit seed where sampling is involved) and needs only `alloc`:
//!
//! * [`segment`]: bisegments and corpus metadata,
//! * [`filter`]: the surface rejection rules, exact-pair dedup and the
//!   ordered pipeline with per-rule accounting,
//! * [`modernize`]: OCR-noise rejection and old-orthography modernization
//!   for historical Japanese,
//! * [`stats`]: length statistics, length-ratio dispersion and vocabulary
//!   richness,
//! * [`split`]: core/extension assembly and seeded train/val/test splitting,
//! * [`metrics`]: corpus BLEU and chrF with evaluation post-processing.
//!
//! File formats, JSON, threads and the command line live in the `bitext`
//! crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod charclass;
mod digest;
pub mod error;
pub mod filter;
pub mod metrics;
pub mod modernize;
pub mod segment;
pub mod split;
pub mod stats;

pub use error::{Error, Result};
pub use segment::{Bisegment, Corpus, CorpusMeta, Cotext, Lang, Production, Segment};
