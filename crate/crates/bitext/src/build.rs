//! `bitext build`: ingest, filter crawled inputs, modernize, split, write
//! the dataset directory and per-corpus statistics.
//!
//! Output layout:
//!
//! ```text
//! <out>/core/{train,val,test}.<l1>|.<l2>
//! <out>/reserved/<name>.<l1>|.<l2>
//! <out>/ext/<corpus>.<l1>|.<l2>
//! <out>/reports/<corpus>.filter.json, <corpus>.modernize.json
//! <out>/stats/<corpus>.json, table.txt
//! <out>/manifest.json
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use bitext_core::filter::{FilterReport, Pipeline};
use bitext_core::modernize::{ModernizeReport, Modernizer};
use bitext_core::split::{assemble_and_split, Manifest, SplitResult};
use bitext_core::stats::{corpus_report, render_table, CorpusStats, TableRow, Tokenizer};
use bitext_core::{Bisegment, Corpus, CorpusMeta, Lang, Production};
use serde::Serialize;

use crate::config::PipelineConfig;
use crate::error::{Error, Result};
use crate::io::write_moses_files;
use crate::parallel::ParallelFilter;

const ARTIFACTS: &[&str] = &["core", "reserved", "ext", "reports", "stats", "manifest.json"];

#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Worker threads for filtering; 0 = all cores.
    pub threads: usize,
    /// Replace the artifacts of an earlier run in the output directory.
    pub force: bool,
    /// Skip the filter and modernize stages (`bitext split`).
    pub split_only: bool,
}

#[derive(Debug, Serialize)]
pub struct BuildManifest {
    /// `complete` or `incomplete`.
    pub status: &'static str,
    pub failed_stage: Option<&'static str>,
    pub error: Option<String>,
    pub ingested: BTreeMap<String, u64>,
    pub filter: BTreeMap<String, FilterReport>,
    pub modernize: BTreeMap<String, ModernizeReport>,
    pub split: Option<Manifest>,
}

impl BuildManifest {
    fn new() -> Self {
        BuildManifest {
            status: "incomplete",
            failed_stage: None,
            error: None,
            ingested: BTreeMap::new(),
            filter: BTreeMap::new(),
            modernize: BTreeMap::new(),
            split: None,
        }
    }
}

fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn mkdir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

fn prepare_output(out: &Path, force: bool) -> Result<()> {
    if out.exists() {
        let mut entries = fs::read_dir(out).map_err(|e| Error::io(out, e))?;
        if entries.next().is_some() {
            if !force {
                return Err(Error::OutputNotEmpty(out.to_path_buf()));
            }
            for name in ARTIFACTS {
                let p = out.join(name);
                let removed = if p.is_dir() {
                    fs::remove_dir_all(&p)
                } else if p.exists() {
                    fs::remove_file(&p)
                } else {
                    Ok(())
                };
                removed.map_err(|e| Error::io(&p, e))?;
            }
        }
    }
    for dir in ["core", "reserved", "ext", "reports", "stats"] {
        mkdir(&out.join(dir))?;
    }
    Ok(())
}

/// Puts `bi` in `langs` orientation when it is the reverse pair.
fn orient(mut bi: Bisegment, langs: &(Lang, Lang)) -> Bisegment {
    if bi.source.lang == langs.1 && bi.target.lang == langs.0 {
        std::mem::swap(&mut bi.source, &mut bi.target);
    }
    bi
}

fn write_split(dir: &Path, stem: &str, items: Vec<Bisegment>, langs: &(Lang, Lang)) -> Result<()> {
    let items: Vec<Bisegment> = items.into_iter().map(|b| orient(b, langs)).collect();
    let src = dir.join(format!("{stem}.{}", langs.0));
    let tgt = dir.join(format!("{stem}.{}", langs.1));
    let counts = write_moses_files(&items, &src, &tgt)?;
    if counts.newlines_repaired > 0 {
        log::warn!("{stem}: replaced line breaks in {} segments", counts.newlines_repaired);
    }
    Ok(())
}

fn stats_for(items: &[Bisegment], cfg: &PipelineConfig) -> Option<CorpusStats> {
    let first = items.first()?;
    let src = Tokenizer::for_language(first.source.lang.as_str());
    let tgt = Tokenizer::for_language(first.target.lang.as_str());
    match corpus_report(items, &src, &tgt, &cfg.stats) {
        Ok(s) => Some(s),
        Err(e) => {
            log::warn!("no statistics for {}: {e}", first.origin);
            None
        }
    }
}

struct Run<'a> {
    cfg: &'a PipelineConfig,
    opts: &'a BuildOptions,
    out: PathBuf,
    manifest: BuildManifest,
}

impl Run<'_> {
    fn ingest(&mut self) -> Result<Vec<Corpus>> {
        let mut corpora = Vec::with_capacity(self.cfg.inputs.len());
        for input in &self.cfg.inputs {
            let items = input.open()?.collect::<Result<Vec<_>>>()?;
            log::info!("{}: read {} bisegments", input.name, items.len());
            self.manifest.ingested.insert(input.name.clone(), items.len() as u64);
            corpora.push(Corpus::new(input.meta(), items));
        }
        Ok(corpora)
    }

    fn filter(&mut self, corpora: &mut [Corpus]) -> Result<()> {
        let driver = ParallelFilter::new(self.opts.threads)?;
        for corpus in corpora.iter_mut().filter(|c| c.meta.production == Production::Crawled) {
            let mut pipeline = Pipeline::new(self.cfg.filter.clone(), self.cfg.rule_order.clone())?;
            let mut kept = Vec::new();
            let input = std::mem::take(&mut corpus.bisegments).into_iter().map(Ok);
            driver.run(&mut pipeline, input, |bi| {
                kept.push(bi);
                Ok(())
            })?;
            let report = pipeline.into_report();
            log::info!("{}: kept {} of {}", corpus.meta.name, report.kept, report.input);
            write_json(&self.out.join("reports").join(format!("{}.filter.json", corpus.meta.name)), &report)?;
            self.manifest.filter.insert(corpus.meta.name.clone(), report);
            corpus.bisegments = kept;
        }
        Ok(())
    }

    fn modernize(&mut self, corpora: &mut [Corpus]) -> Result<()> {
        let rules = self.cfg.modernizer.load_rules()?;
        for corpus in corpora.iter_mut() {
            if !self.cfg.modernizer.apply_to.contains(&corpus.meta.name) {
                continue;
            }
            let mut m = Modernizer::new(rules.clone())?;
            corpus.bisegments = std::mem::take(&mut corpus.bisegments)
                .into_iter()
                .filter_map(|bi| m.apply(bi).ok())
                .collect();
            let report = m.report().clone();
            log::info!("{}: modernized {}, dropped {} for OCR noise", corpus.meta.name, report.modified, report.rejected_ocr);
            write_json(&self.out.join("reports").join(format!("{}.modernize.json", corpus.meta.name)), &report)?;
            self.manifest.modernize.insert(corpus.meta.name.clone(), report);
        }
        Ok(())
    }

    fn stats(&self, corpora: &[Corpus], split: &SplitResult) -> Result<()> {
        let dir = self.out.join("stats");
        let mut computed: Vec<(String, Option<CorpusMeta>, CorpusStats)> = Vec::new();
        for c in corpora {
            if let Some(s) = stats_for(&c.bisegments, self.cfg) {
                write_json(&dir.join(format!("{}.json", c.meta.name)), &s)?;
                computed.push((c.meta.name.clone(), Some(c.meta.clone()), s));
            }
        }
        for (name, items) in [("train", &split.train), ("val", &split.val), ("test", &split.test)] {
            if let Some(s) = stats_for(items, self.cfg) {
                write_json(&dir.join(format!("{name}.json")), &s)?;
                computed.push((name.to_string(), None, s));
            }
        }
        let rows: Vec<TableRow<'_>> = computed
            .iter()
            .map(|(name, meta, stats)| TableRow {
                name,
                meta: meta.as_ref(),
                stats,
            })
            .collect();
        let (l1, l2) = self.cfg.inputs.first().map_or(("src", "tgt"), |i| (&i.languages[0], &i.languages[1]));
        let table = render_table(&rows, l1, l2);
        fs::write(dir.join("table.txt"), table).map_err(|e| Error::io(dir.join("table.txt"), e))
    }

    fn write(&self, split: SplitResult) -> Result<()> {
        let langs = match self.cfg.layout.core_members.first().and_then(|n| self.cfg.input(n)) {
            Some(input) => input.langs()?,
            None => return Err(Error::Config("layout has no core members".into())),
        };
        let core = self.out.join("core");
        write_split(&core, "train", split.train, &langs)?;
        write_split(&core, "val", split.val, &langs)?;
        write_split(&core, "test", split.test, &langs)?;
        for r in split.reserved {
            write_split(&self.out.join("reserved"), &r.name, r.bisegments, &langs)?;
        }
        for e in split.extension {
            let own = self.cfg.input(&e.name).map(|i| i.langs()).transpose()?.unwrap_or_else(|| langs.clone());
            write_split(&self.out.join("ext"), &e.name, e.bisegments, &own)?;
        }
        Ok(())
    }

    fn stage<T>(&mut self, stage: &'static str, result: Result<T>) -> Result<T> {
        result.map_err(|e| {
            self.manifest.failed_stage = Some(stage);
            self.manifest.error = Some(e.to_string());
            if let Err(w) = write_json(&self.out.join("manifest.json"), &self.manifest) {
                log::error!("could not record failure: {w}");
            }
            Error::Stage {
                stage,
                source: Box::new(e),
            }
        })
    }
}

/// Runs every stage; on failure `manifest.json` records the stage and the
/// error, and `status` stays `incomplete`.
pub fn run_build(cfg: &PipelineConfig, opts: &BuildOptions) -> Result<BuildManifest> {
    cfg.validate()?;
    let out = cfg
        .output_dir
        .clone()
        .ok_or_else(|| Error::Config("no output directory (set output_dir or --output-dir)".into()))?;
    prepare_output(&out, opts.force)?;
    let mut run = Run {
        cfg,
        opts,
        out,
        manifest: BuildManifest::new(),
    };
    write_json(&run.out.join("manifest.json"), &run.manifest)?;

    let r = run.ingest();
    let mut corpora = run.stage("ingest", r)?;
    if !opts.split_only {
        let r = run.filter(&mut corpora);
        run.stage("filter", r)?;
        let r = run.modernize(&mut corpora);
        run.stage("modernize", r)?;
    }
    let r = assemble_and_split(corpora.clone(), &cfg.layout).map_err(Error::from);
    let split = run.stage("split", r)?;
    run.manifest.split = Some(split.manifest.clone());
    let r = run.stats(&corpora, &split);
    run.stage("stats", r)?;
    let r = run.write(split);
    run.stage("write", r)?;

    run.manifest.status = "complete";
    write_json(&run.out.join("manifest.json"), &run.manifest)?;
    Ok(run.manifest)
}
