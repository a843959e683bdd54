//! The single JSON document that drives `bitext build` and `bitext split`.

use std::fs;
use std::path::{Path, PathBuf};

use bitext_core::filter::{FilterConfig, RuleOrder};
use bitext_core::modernize::ModernizationRules;
use bitext_core::split::DatasetLayout;
use bitext_core::stats::StatsConfig;
use bitext_core::{Bisegment, Cotext, CorpusMeta, Lang, Production};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{read_moses_pair, read_tsv};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    /// Two line-aligned files, source then target.
    Moses,
    /// One `source<TAB>target` file.
    Tsv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub name: String,
    pub format: InputFormat,
    pub paths: Vec<PathBuf>,
    /// Source and target tags.
    pub languages: [String; 2],
    pub production: Production,
    #[serde(default)]
    pub has_cotext: Cotext,
}

impl InputSpec {
    pub fn meta(&self) -> CorpusMeta {
        CorpusMeta::new(self.name.clone(), self.production, self.has_cotext)
    }

    pub fn langs(&self) -> Result<(Lang, Lang)> {
        Ok((Lang::new(&self.languages[0])?, Lang::new(&self.languages[1])?))
    }

    pub fn open(&self) -> Result<Box<dyn Iterator<Item = Result<Bisegment>> + Send>> {
        let langs = self.langs()?;
        Ok(match self.format {
            InputFormat::Moses => Box::new(read_moses_pair(&self.paths[0], &self.paths[1], langs, &self.name)?),
            InputFormat::Tsv => Box::new(read_tsv(&self.paths[0], langs, &self.name)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModernizerSection {
    /// Inputs whose Japanese side is modernized.
    pub apply_to: Vec<String>,
    /// JSON rule file; built-in rules when absent.
    pub rules: Option<PathBuf>,
}

impl Default for ModernizerSection {
    fn default() -> Self {
        ModernizerSection {
            apply_to: vec!["cesselin".into()],
            rules: None,
        }
    }
}

impl ModernizerSection {
    pub fn load_rules(&self) -> Result<ModernizationRules> {
        match &self.rules {
            None => Ok(ModernizationRules::default()),
            Some(path) => read_json(path),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub inputs: Vec<InputSpec>,
    pub filter: FilterConfig,
    pub rule_order: RuleOrder,
    pub modernizer: ModernizerSection,
    pub stats: StatsConfig,
    pub layout: DatasetLayout,
    pub output_dir: Option<PathBuf>,
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

impl PipelineConfig {
    /// Reads a config file; relative paths inside it are taken relative to
    /// the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let mut cfg: PipelineConfig = read_json(path)?;
        let base = path.parent().unwrap_or(Path::new(""));
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for input in &mut cfg.inputs {
            input.paths.iter_mut().for_each(resolve);
        }
        if let Some(p) = cfg.modernizer.rules.as_mut() {
            resolve(p);
        }
        if let Some(p) = cfg.output_dir.as_mut() {
            resolve(p);
        }
        Ok(cfg)
    }

    pub fn input(&self, name: &str) -> Option<&InputSpec> {
        self.inputs.iter().find(|i| i.name == name)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, input) in self.inputs.iter().enumerate() {
            if self.inputs[..i].iter().any(|o| o.name == input.name) {
                return Err(Error::Config(format!("input {:?} declared twice", input.name)));
            }
            let expected = match input.format {
                InputFormat::Moses => 2,
                InputFormat::Tsv => 1,
            };
            if input.paths.len() != expected {
                return Err(Error::Config(format!(
                    "input {:?}: {:?} format takes {expected} path(s), got {}",
                    input.name,
                    input.format,
                    input.paths.len()
                )));
            }
            let (s, t) = input.langs()?;
            if s == t {
                return Err(bitext_core::Error::SameLanguage(input.languages[0].clone()).into());
            }
        }
        for name in self.layout.referenced_corpora() {
            if self.input(name).is_none() {
                return Err(bitext_core::Error::UnknownCorpus(name.into()).into());
            }
        }
        for name in &self.layout.core_members {
            if self.input(name).is_some_and(|i| i.production == Production::Crawled) {
                return Err(bitext_core::Error::CrawledInCore(name.clone()).into());
            }
        }
        self.filter.validate()?;
        self.stats.validate()?;
        self.layout.validate()?;
        Ok(())
    }
}
