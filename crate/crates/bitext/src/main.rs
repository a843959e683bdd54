use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bitext::build::{run_build, BuildOptions};
use bitext::config::PipelineConfig;
use bitext::error::{Error, Result};
use bitext::io::{read_moses_pair, read_tsv, write_moses_pair};
use bitext::parallel::ParallelFilter;
use bitext_core::filter::{FilterConfig, Pipeline, RuleOrder};
use bitext_core::metrics::{
    bleu_details, chrf_details, separate_punctuation, strip_segmentation, Averaging, BleuConfig, ChrfConfig,
    SegmentationMarker,
};
use bitext_core::modernize::{ModernizationRules, Modernizer};
use bitext_core::stats::{corpus_report, StatsConfig, Tokenizer};
use bitext_core::{Bisegment, Lang};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Japanese–French parallel corpus toolkit.
#[derive(Parser, Debug)]
#[command(name = "bitext", version, about)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Filter a bitext with the ordered rule pipeline.
    Filter(FilterArgs),
    /// Length and vocabulary statistics of a bitext (JSON on stdout).
    Stats(StatsArgs),
    /// Assemble and split the corpora of a config without filtering.
    Split(BuildArgs),
    /// Run the whole pipeline from a config.
    Build(BuildArgs),
    /// Corpus BLEU and chrF of a hypothesis file against a reference file.
    Score(ScoreArgs),
    /// Drop OCR-noisy pairs and modernize the Japanese side.
    Modernize(ModernizeArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Source side of a Moses pair.
    #[arg(long, requires = "tgt", conflicts_with = "tsv")]
    src: Option<PathBuf>,
    /// Target side of a Moses pair.
    #[arg(long, requires = "src")]
    tgt: Option<PathBuf>,
    /// A `source<TAB>target` file instead of a Moses pair.
    #[arg(long)]
    tsv: Option<PathBuf>,
    /// Source and target language tags.
    #[arg(long, default_value = "ja,fr")]
    langs: String,
    /// Corpus name used in reports.
    #[arg(long, default_value = "input")]
    name: String,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Kept source segments (with --out-tgt); TSV on stdout when omitted.
    #[arg(long, requires = "out_tgt")]
    out_src: Option<PathBuf>,
    #[arg(long, requires = "out_src")]
    out_tgt: Option<PathBuf>,
    /// Where to write the JSON report.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FilterArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Pipeline config whose filter settings are used as defaults.
    #[arg(long, env = "BITEXT_CONFIG")]
    config: Option<PathBuf>,
    /// Comma-separated rule order, e.g. length,ratio,brackets,symbols,dedup.
    #[arg(long)]
    rules: Option<String>,
    #[arg(long)]
    max_bytes: Option<usize>,
    #[arg(long)]
    max_ratio: Option<f64>,
    /// NFKC-normalize before filtering.
    #[arg(long)]
    nfkc: bool,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, env = "BITEXT_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long)]
    sample_size: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, env = "BITEXT_CONFIG")]
    config: PathBuf,
    #[arg(long)]
    output_dir: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Replace the output of an earlier run.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Metric {
    Bleu,
    Chrf,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AveragingArg {
    MeanF,
    FOfMeanPr,
}

#[derive(Args, Debug)]
struct ScoreArgs {
    #[arg(long)]
    hyp: PathBuf,
    #[arg(long = "ref")]
    reference: PathBuf,
    #[arg(long, value_enum, default_value = "both")]
    metric: Metric,
    /// Remove subword markers from the hypotheses: sp, atat or none.
    #[arg(long, default_value = "none")]
    strip: SegmentationMarker,
    /// Separate punctuation on both sides before scoring.
    #[arg(long)]
    sep_punct: bool,
    #[arg(long, default_value_t = 4)]
    max_order: usize,
    #[arg(long)]
    lowercase: bool,
    #[arg(long, default_value_t = 6)]
    char_order: usize,
    #[arg(long, default_value_t = 2)]
    word_order: usize,
    #[arg(long, default_value_t = 2.0)]
    beta: f64,
    #[arg(long, value_enum, default_value = "mean-f")]
    averaging: AveragingArg,
    /// Print the full statistics as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ModernizeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// JSON rule file (built-in rules when omitted).
    #[arg(long)]
    rules: Option<PathBuf>,
}

type Stream = Box<dyn Iterator<Item = Result<Bisegment>> + Send>;

fn open_input(args: &InputArgs) -> Result<Stream> {
    let (s, t) = args
        .langs
        .split_once(',')
        .ok_or_else(|| Error::Config(format!("--langs expects two tags like ja,fr, got {:?}", args.langs)))?;
    let langs = (Lang::new(s)?, Lang::new(t)?);
    match (&args.src, &args.tgt, &args.tsv) {
        (Some(src), Some(tgt), None) => Ok(Box::new(read_moses_pair(src, tgt, langs, &args.name)?)),
        (None, None, Some(tsv)) => Ok(Box::new(read_tsv(tsv, langs, &args.name)?)),
        _ => Err(Error::Config("give either --src and --tgt, or --tsv".into())),
    }
}

fn load_config(path: Option<&Path>) -> Result<PipelineConfig> {
    path.map_or_else(|| Ok(PipelineConfig::default()), PipelineConfig::load)
}

fn json_out<T: serde::Serialize>(value: &T, path: Option<&Path>, fallback: &mut dyn Write) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|source| Error::Json {
        path: path.map_or_else(|| PathBuf::from("-"), Path::to_path_buf),
        source,
    })?;
    match path {
        Some(p) => fs::write(p, text + "\n").map_err(|e| Error::io(p, e)),
        None => writeln!(fallback, "{text}").map_err(|e| Error::io("-", e)),
    }
}

/// Writes kept pairs to two files, or as TSV to stdout.
enum Sink {
    Files {
        src: BufWriter<File>,
        tgt: BufWriter<File>,
        path: PathBuf,
    },
    Stdout(BufWriter<io::Stdout>),
}

impl Sink {
    fn new(out: &OutputArgs) -> Result<Self> {
        let create = |p: &PathBuf| File::create(p).map(BufWriter::new).map_err(|e| Error::io(p, e));
        Ok(match (&out.out_src, &out.out_tgt) {
            (Some(s), Some(t)) => Sink::Files {
                src: create(s)?,
                tgt: create(t)?,
                path: s.clone(),
            },
            _ => Sink::Stdout(BufWriter::new(io::stdout())),
        })
    }

    fn push(&mut self, bi: Bisegment) -> Result<()> {
        match self {
            Sink::Files { src, tgt, path } => write_moses_pair([&bi], src, tgt).map(drop).map_err(|e| Error::io(&*path, e)),
            Sink::Stdout(w) => {
                let clean = |s: &str| s.replace(['\t', '\n', '\r'], " ");
                writeln!(w, "{}\t{}", clean(&bi.source.text), clean(&bi.target.text)).map_err(|e| Error::io("-", e))
            }
        }
    }

    /// Flushes; true when stdout is still free for the report.
    fn finish(self) -> Result<bool> {
        match self {
            Sink::Files { mut src, mut tgt, path } => {
                src.flush().and_then(|()| tgt.flush()).map_err(|e| Error::io(path, e))?;
                Ok(true)
            }
            Sink::Stdout(mut w) => {
                w.flush().map_err(|e| Error::io("-", e))?;
                Ok(false)
            }
        }
    }
}

fn write_report<T: serde::Serialize>(report: &T, out: &OutputArgs, stdout_free: bool) -> Result<()> {
    if out.report.is_some() || stdout_free {
        json_out(report, out.report.as_deref(), &mut io::stdout())
    } else {
        let line = serde_json::to_string(report).map_err(|source| Error::Json { path: "-".into(), source })?;
        eprintln!("{line}");
        Ok(())
    }
}

fn cmd_filter(args: FilterArgs, threads: usize) -> Result<()> {
    let cfg = load_config(args.config.as_deref())?;
    let mut filter: FilterConfig = cfg.filter;
    let order = match &args.rules {
        Some(r) => r.parse::<RuleOrder>()?,
        None => cfg.rule_order,
    };
    if let Some(b) = args.max_bytes {
        filter.max_segment_bytes = b;
    }
    if let Some(r) = args.max_ratio {
        filter.max_length_ratio = r;
    }
    filter.nfkc |= args.nfkc;
    let mut pipeline = Pipeline::new(filter, order)?;
    let mut sink = Sink::new(&args.output)?;
    ParallelFilter::new(threads)?.run(&mut pipeline, open_input(&args.input)?, |bi| sink.push(bi))?;
    let stdout_free = sink.finish()?;
    write_report(pipeline.report(), &args.output, stdout_free)
}

fn cmd_stats(args: StatsArgs) -> Result<()> {
    let mut stats: StatsConfig = load_config(args.config.as_deref())?.stats;
    if let Some(n) = args.sample_size {
        stats.richness_sample_size = n;
    }
    if let Some(t) = args.trials {
        stats.richness_trials = t;
    }
    if let Some(s) = args.seed {
        stats.seed = s;
    }
    let items = open_input(&args.input)?.collect::<Result<Vec<_>>>()?;
    let first = items.first().ok_or(bitext_core::Error::EmptyCorpus)?;
    let src = Tokenizer::for_language(first.source.lang.as_str());
    let tgt = Tokenizer::for_language(first.target.lang.as_str());
    let report = corpus_report(&items, &src, &tgt, &stats)?;
    json_out(&report, None, &mut io::stdout())
}

fn cmd_build(args: BuildArgs, threads: usize, split_only: bool) -> Result<()> {
    let mut cfg = PipelineConfig::load(&args.config)?;
    if let Some(dir) = args.output_dir {
        cfg.output_dir = Some(dir);
    }
    if let Some(seed) = args.seed {
        cfg.layout.seed = seed;
    }
    let opts = BuildOptions {
        threads,
        force: args.force,
        split_only,
    };
    let manifest = run_build(&cfg, &opts)?;
    let split = manifest.split.as_ref().expect("complete build has a split");
    println!("{}", split.digest);
    Ok(())
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text.lines().map(str::to_owned).collect())
}

fn cmd_score(args: ScoreArgs) -> Result<()> {
    let mut hyps = read_lines(&args.hyp)?;
    let mut refs = read_lines(&args.reference)?;
    hyps = hyps.iter().map(|h| strip_segmentation(h, args.strip)).collect();
    if args.sep_punct {
        hyps = hyps.iter().map(|h| separate_punctuation(h)).collect();
        refs = refs.iter().map(|r| separate_punctuation(r)).collect();
    }
    let want_bleu = matches!(args.metric, Metric::Bleu | Metric::Both);
    let want_chrf = matches!(args.metric, Metric::Chrf | Metric::Both);
    let bleu = want_bleu
        .then(|| {
            let cfg = BleuConfig {
                max_order: args.max_order,
                case_sensitive: !args.lowercase,
            };
            bleu_details(&hyps, &refs, &cfg)
        })
        .transpose()?;
    let chrf = want_chrf
        .then(|| {
            let cfg = ChrfConfig {
                char_order: args.char_order,
                word_order: args.word_order,
                beta: args.beta,
                averaging: match args.averaging {
                    AveragingArg::MeanF => Averaging::MeanF,
                    AveragingArg::FOfMeanPr => Averaging::FOfMeanPr,
                },
                ..ChrfConfig::default()
            };
            chrf_details(&hyps, &refs, &cfg)
        })
        .transpose()?;
    if args.json {
        let value = serde_json::json!({ "bleu": bleu, "chrf": chrf });
        return json_out(&value, None, &mut io::stdout());
    }
    if let Some(b) = bleu {
        println!("BLEU {:.2}", b.score);
    }
    if let Some(c) = chrf {
        println!("chrF {:.2}", c.score);
    }
    Ok(())
}

fn cmd_modernize(args: ModernizeArgs) -> Result<()> {
    let rules: ModernizationRules = match &args.rules {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            serde_json::from_str(&text).map_err(|source| Error::Json { path: p.clone(), source })?
        }
        None => ModernizationRules::default(),
    };
    let mut m = Modernizer::new(rules)?;
    let mut sink = Sink::new(&args.output)?;
    for bi in open_input(&args.input)? {
        if let Ok(bi) = m.apply(bi?) {
            sink.push(bi)?;
        }
    }
    let stdout_free = sink.finish()?;
    write_report(m.report(), &args.output, stdout_free)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Filter(a) => cmd_filter(a, cli.threads),
        Command::Stats(a) => cmd_stats(a),
        Command::Split(a) => cmd_build(a, cli.threads, true),
        Command::Build(a) => cmd_build(a, cli.threads, false),
        Command::Score(a) => cmd_score(a),
        Command::Modernize(a) => cmd_modernize(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let reason = rendered.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error: usage: {reason}");
            return ExitCode::from(1);
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error: {}: {msg}", e.kind());
            ExitCode::from(2)
        }
    }
}
