use std::io;
use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}:{line}: invalid UTF-8", path.display())]
    Utf8 { path: PathBuf, line: u64 },
    #[error("line count {source_lines} ≠ {target_lines} ({} vs {})", source_path.display(), target_path.display())]
    LineCountMismatch {
        source_path: PathBuf,
        target_path: PathBuf,
        source_lines: u64,
        target_lines: u64,
    },
    #[error("{}:{line}: no TAB separator", path.display())]
    MissingTab { path: PathBuf, line: u64 },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Config(String),
    #[error("output directory {} is not empty (use --force)", .0.display())]
    OutputNotEmpty(PathBuf),
    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Core(#[from] bitext_core::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short machine-readable category, e.g. `line-count`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io { .. } => "io",
            Error::Utf8 { .. } => "utf8",
            Error::LineCountMismatch { .. } => "line-count",
            Error::MissingTab { .. } => "missing-tab",
            Error::Json { .. } => "json",
            Error::Config(_) => "config",
            Error::OutputNotEmpty(_) => "output-not-empty",
            Error::Stage { source, .. } => source.kind(),
            Error::Core(e) => match e {
                bitext_core::Error::CrawledInCore(_) => "crawled-in-core",
                bitext_core::Error::UnknownCorpus(_) => "unknown-corpus",
                bitext_core::Error::InsufficientCore { .. } | bitext_core::Error::InsufficientReserved { .. } => {
                    "insufficient-data"
                }
                bitext_core::Error::LengthMismatch { .. } => "length-mismatch",
                bitext_core::Error::EmptyCorpus | bitext_core::Error::ZeroLengthSide { .. } => "empty",
                _ => "invalid",
            },
        }
    }
}
