//! Moses pair files (two line-aligned files) and TSV bitext.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use bitext_core::{Bisegment, Lang, Segment};

use crate::error::{Error, Result};

const BOM: &[u8] = b"\xEF\xBB\xBF";

/// One line without its terminator; `None` at end of input.
fn next_line<R: BufRead>(reader: &mut R, buf: &mut Vec<u8>, path: &Path) -> Result<Option<()>> {
    buf.clear();
    let n = reader.read_until(b'\n', buf).map_err(|e| Error::io(path, e))?;
    if n == 0 {
        return Ok(None);
    }
    if buf.last() == Some(&b'\n') {
        buf.pop();
        if buf.last() == Some(&b'\r') {
            buf.pop();
        }
    }
    Ok(Some(()))
}

fn decode<'a>(buf: &'a [u8], path: &Path, line: u64) -> Result<&'a str> {
    let bytes = if line == 1 && buf.starts_with(BOM) {
        log::warn!("{}: stripped UTF-8 byte order mark", path.display());
        &buf[BOM.len()..]
    } else {
        buf
    };
    std::str::from_utf8(bytes).map_err(|_| Error::Utf8 {
        path: path.to_path_buf(),
        line,
    })
}

fn count_rest<R: BufRead>(reader: &mut R, path: &Path) -> Result<u64> {
    let mut n = 0;
    let mut buf = Vec::new();
    while next_line(reader, &mut buf, path)?.is_some() {
        n += 1;
    }
    Ok(n)
}

/// Streams bisegments from two line-aligned readers.
///
/// Segments are trimmed; blank lines are passed through as empty
/// segments. A length mismatch is reported once the shorter side ends,
/// with the full line count of both sides.
pub struct MosesPairReader<A, B> {
    source: A,
    target: B,
    source_path: PathBuf,
    target_path: PathBuf,
    langs: (Lang, Lang),
    origin: Arc<str>,
    line: u64,
    sbuf: Vec<u8>,
    tbuf: Vec<u8>,
    done: bool,
}

impl<A: BufRead, B: BufRead> MosesPairReader<A, B> {
    /// The paths are only used in error messages.
    pub fn new(
        source: A,
        target: B,
        paths: (impl Into<PathBuf>, impl Into<PathBuf>),
        langs: (Lang, Lang),
        origin: &str,
    ) -> Self {
        MosesPairReader {
            source,
            target,
            source_path: paths.0.into(),
            target_path: paths.1.into(),
            langs,
            origin: Arc::from(origin),
            line: 0,
            sbuf: Vec::new(),
            tbuf: Vec::new(),
            done: false,
        }
    }

    fn read_one(&mut self) -> Result<Option<Bisegment>> {
        let s = next_line(&mut self.source, &mut self.sbuf, &self.source_path)?;
        let t = next_line(&mut self.target, &mut self.tbuf, &self.target_path)?;
        let line = self.line + 1;
        match (s, t) {
            (None, None) => Ok(None),
            (Some(()), None) => Err(Error::LineCountMismatch {
                source_path: self.source_path.clone(),
                target_path: self.target_path.clone(),
                source_lines: line + count_rest(&mut self.source, &self.source_path)?,
                target_lines: self.line,
            }),
            (None, Some(())) => Err(Error::LineCountMismatch {
                source_path: self.source_path.clone(),
                target_path: self.target_path.clone(),
                source_lines: self.line,
                target_lines: line + count_rest(&mut self.target, &self.target_path)?,
            }),
            (Some(()), Some(())) => {
                self.line = line;
                let src = decode(&self.sbuf, &self.source_path, line)?.trim();
                let tgt = decode(&self.tbuf, &self.target_path, line)?.trim();
                let bi = Bisegment::new(
                    Segment::new(src, self.langs.0.clone()),
                    Segment::new(tgt, self.langs.1.clone()),
                    self.origin.clone(),
                    line,
                )?;
                Ok(Some(bi))
            }
        }
    }
}

impl<A: BufRead, B: BufRead> Iterator for MosesPairReader<A, B> {
    type Item = Result<Bisegment>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = self.read_one().transpose();
        if !matches!(item, Some(Ok(_))) {
            self.done = true;
        }
        item
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(|f| BufReader::with_capacity(1 << 16, f))
        .map_err(|e| Error::io(path, e))
}

pub fn read_moses_pair(
    source: &Path,
    target: &Path,
    langs: (Lang, Lang),
    origin: &str,
) -> Result<MosesPairReader<BufReader<File>, BufReader<File>>> {
    Ok(MosesPairReader::new(open(source)?, open(target)?, (source, target), langs, origin))
}

/// Streams `source<TAB>target` lines. Everything after the first TAB is
/// the target; a line without TAB is an error.
pub struct TsvReader<R> {
    reader: R,
    path: PathBuf,
    langs: (Lang, Lang),
    origin: Arc<str>,
    line: u64,
    buf: Vec<u8>,
    done: bool,
}

impl<R: BufRead> TsvReader<R> {
    pub fn new(reader: R, path: impl Into<PathBuf>, langs: (Lang, Lang), origin: &str) -> Self {
        TsvReader {
            reader,
            path: path.into(),
            langs,
            origin: Arc::from(origin),
            line: 0,
            buf: Vec::new(),
            done: false,
        }
    }

    fn read_one(&mut self) -> Result<Option<Bisegment>> {
        if next_line(&mut self.reader, &mut self.buf, &self.path)?.is_none() {
            return Ok(None);
        }
        self.line += 1;
        let text = decode(&self.buf, &self.path, self.line)?;
        let (src, tgt) = text.split_once('\t').ok_or_else(|| Error::MissingTab {
            path: self.path.clone(),
            line: self.line,
        })?;
        Ok(Some(Bisegment::new(
            Segment::new(src.trim(), self.langs.0.clone()),
            Segment::new(tgt.trim(), self.langs.1.clone()),
            self.origin.clone(),
            self.line,
        )?))
    }
}

impl<R: BufRead> Iterator for TsvReader<R> {
    type Item = Result<Bisegment>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = self.read_one().transpose();
        if !matches!(item, Some(Ok(_))) {
            self.done = true;
        }
        item
    }
}

pub fn read_tsv(path: &Path, langs: (Lang, Lang), origin: &str) -> Result<TsvReader<BufReader<File>>> {
    Ok(TsvReader::new(open(path)?, path, langs, origin))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WriteCounts {
    pub written: u64,
    /// Segments in which CR or LF had to be replaced by a space.
    pub newlines_repaired: u64,
}

fn write_segment<W: Write>(out: &mut W, text: &str, counts: &mut WriteCounts) -> std::io::Result<()> {
    if text.contains(['\n', '\r']) {
        counts.newlines_repaired += 1;
        out.write_all(text.replace(['\n', '\r'], " ").as_bytes())?;
    } else {
        out.write_all(text.as_bytes())?;
    }
    out.write_all(b"\n")
}

/// Writes one segment per line to each side, replacing embedded line
/// breaks so the two outputs stay aligned.
pub fn write_moses_pair<'a, I, A, B>(items: I, source: &mut A, target: &mut B) -> std::io::Result<WriteCounts>
where
    I: IntoIterator<Item = &'a Bisegment>,
    A: Write,
    B: Write,
{
    let mut counts = WriteCounts::default();
    for bi in items {
        write_segment(source, &bi.source.text, &mut counts)?;
        write_segment(target, &bi.target.text, &mut counts)?;
        counts.written += 1;
    }
    Ok(counts)
}

/// [`write_moses_pair`] into two new files.
pub fn write_moses_files<'a, I>(items: I, source: &Path, target: &Path) -> Result<WriteCounts>
where
    I: IntoIterator<Item = &'a Bisegment>,
{
    let create = |p: &Path| File::create(p).map(BufWriter::new).map_err(|e| Error::io(p, e));
    let (mut s, mut t) = (create(source)?, create(target)?);
    let counts = write_moses_pair(items, &mut s, &mut t).map_err(|e| Error::io(source, e))?;
    s.flush().map_err(|e| Error::io(source, e))?;
    t.flush().map_err(|e| Error::io(target, e))?;
    Ok(counts)
}
