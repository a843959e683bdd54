//! Test-only support: brute-force oracles that share no code path with
//! `bitext-core`, and generators for synthetic corpora with planted
//! violations.

pub mod corpus;
pub mod oracle;
