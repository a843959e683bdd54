//! Multi-threaded filtering with bounded memory.
//!
//! A reader thread fills fixed-size chunks, the pure rules run on a rayon
//! pool, and dedup plus accounting are applied on the calling thread in
//! input order. At most three chunks are alive at any time.

use std::sync::mpsc::sync_channel;
use std::thread;

use bitext_core::filter::Pipeline;
use bitext_core::Bisegment;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub const DEFAULT_CHUNK: usize = 8192;

pub struct ParallelFilter {
    pool: rayon::ThreadPool,
    chunk: usize,
}

impl ParallelFilter {
    /// `threads == 0` uses every available core.
    pub fn new(threads: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .thread_name(|i| format!("bitext-filter-{i}"))
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        Ok(ParallelFilter {
            pool,
            chunk: DEFAULT_CHUNK,
        })
    }

    pub fn with_chunk(mut self, chunk: usize) -> Self {
        self.chunk = chunk.max(1);
        self
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Feeds every kept bisegment to `sink`, in input order. The first
    /// read or sink error stops the run.
    pub fn run<I, F>(&self, pipeline: &mut Pipeline, input: I, mut sink: F) -> Result<()>
    where
        I: Iterator<Item = Result<Bisegment>> + Send,
        F: FnMut(Bisegment) -> Result<()>,
    {
        let chunk = self.chunk;
        thread::scope(|scope| {
            let (tx, rx) = sync_channel::<Result<Vec<Bisegment>>>(1);
            scope.spawn(move || {
                let mut input = input;
                loop {
                    let mut batch = Vec::with_capacity(chunk);
                    let mut failed = None;
                    for item in input.by_ref() {
                        match item {
                            Ok(bi) => batch.push(bi),
                            Err(e) => {
                                failed = Some(e);
                                break;
                            }
                        }
                        if batch.len() == chunk {
                            break;
                        }
                    }
                    let last = batch.len() < chunk;
                    if !batch.is_empty() && tx.send(Ok(batch)).is_err() {
                        return;
                    }
                    if let Some(e) = failed {
                        let _ = tx.send(Err(e));
                        return;
                    }
                    if last {
                        return;
                    }
                }
            });

            for batch in rx {
                let batch = batch?;
                let shared: &Pipeline = pipeline;
                let screened: Vec<_> = self.pool.install(|| {
                    batch
                        .into_par_iter()
                        .map(|bi| {
                            let bi = shared.prepare(bi);
                            let s = shared.screen(&bi);
                            (bi, s)
                        })
                        .collect()
                });
                for (bi, s) in screened {
                    if pipeline.admit(&bi, s).is_keep() {
                        sink(bi)?;
                    }
                }
            }
            Ok(())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bitext_core::filter::{run_pipeline, FilterConfig, RuleOrder};
    use bitext_core::{Lang, Segment};
    use std::sync::Arc;

    fn corpus(n: usize) -> Vec<Bisegment> {
        let (ja, fr) = (Lang::new("ja").unwrap(), Lang::new("fr").unwrap());
        (0..n)
            .map(|i| {
                let src = format!("文{}", i % 37);
                let tgt = if i % 11 == 0 { "x".repeat(400) } else { format!("phrase {}", i % 53) };
                Bisegment::new(Segment::new(src, ja.clone()), Segment::new(tgt, fr.clone()), Arc::from("t"), i as u64 + 1)
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn matches_sequential_run() {
        let input = corpus(5000);
        let (cfg, order) = (FilterConfig::default(), RuleOrder::default());
        let (expected, report) = run_pipeline(input.clone(), &cfg, &order).unwrap();
        let mut pipeline = Pipeline::new(cfg, order).unwrap();
        let mut kept = Vec::new();
        ParallelFilter::new(3)
            .unwrap()
            .with_chunk(97)
            .run(&mut pipeline, input.into_iter().map(Ok), |bi| {
                kept.push(bi);
                Ok(())
            })
            .unwrap();
        assert_eq!(kept, expected);
        assert_eq!(pipeline.report(), &report);
    }

    #[test]
    fn read_error_stops_the_run() {
        let mut pipeline = Pipeline::new(FilterConfig::default(), RuleOrder::default()).unwrap();
        let input = corpus(10)
            .into_iter()
            .map(Ok)
            .chain(std::iter::once(Err(Error::Config("boom".into()))));
        let mut n = 0;
        let err = ParallelFilter::new(2)
            .unwrap()
            .with_chunk(4)
            .run(&mut pipeline, input, |_| {
                n += 1;
                Ok(())
            })
            .unwrap_err();
        assert_eq!(err.to_string(), "boom");
        assert_eq!(pipeline.report().input, 10);
    }
}
