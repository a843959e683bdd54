//! Canonical, length-prefixed encoding fed into SHA-256 for manifest digests.

use alloc::string::String;
use core::fmt::Write;

use sha2::{Digest, Sha256};

pub(crate) struct Canon(Sha256);

impl Canon {
    pub fn new(domain: &str) -> Self {
        let mut c = Canon(Sha256::new());
        c.str(domain);
        c
    }

    pub fn u64(&mut self, v: u64) -> &mut Self {
        self.0.update(v.to_le_bytes());
        self
    }

    pub fn str(&mut self, s: &str) -> &mut Self {
        self.u64(s.len() as u64);
        self.0.update(s.as_bytes());
        self
    }

    pub fn finish(self) -> String {
        let out = self.0.finalize();
        let mut hex = String::with_capacity(64);
        for b in out.iter() {
            let _ = write!(hex, "{b:02x}");
        }
        hex
    }
}
