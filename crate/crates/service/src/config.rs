use std::collections::BTreeMap;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::ServiceError;

pub const DEFAULT_LISTEN: &str = "127.0.0.1:8080";
pub const DEFAULT_MAX_TEXT_LENGTH: usize = 200;

/// Service settings, usually read from a TOML file.
///
/// ```toml
/// listen = "0.0.0.0:8080"
/// max_text_length = 280
/// lexicon_dir = "/srv/lexicons"
/// ensemble_config = "ensemble.tsv"
/// static_dir = "webui/dist"
///
/// [ensembles]
/// strict = "strict.tsv"
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServiceConfig {
    #[serde(default = "default_listen")]
    pub listen: SocketAddr,
    /// Longest accepted text, in characters.
    #[serde(default = "default_max_text_length")]
    pub max_text_length: usize,
    pub lexicon_dir: Option<PathBuf>,
    /// Ensemble used when a request names none.
    pub ensemble_config: Option<PathBuf>,
    /// Extra named ensembles, selectable per request.
    #[serde(default)]
    pub ensembles: BTreeMap<String, PathBuf>,
    /// Directory served at `/` (the web UI bundle).
    pub static_dir: Option<PathBuf>,
}

fn default_listen() -> SocketAddr {
    DEFAULT_LISTEN.parse().expect("valid default address")
}

fn default_max_text_length() -> usize {
    DEFAULT_MAX_TEXT_LENGTH
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            listen: default_listen(),
            max_text_length: DEFAULT_MAX_TEXT_LENGTH,
            lexicon_dir: None,
            ensemble_config: None,
            ensembles: BTreeMap::new(),
            static_dir: None,
        }
    }
}

impl ServiceConfig {
    /// Parses TOML; relative paths are resolved against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, ServiceError> {
        let mut cfg: ServiceConfig = toml::from_str(text).map_err(|e| ServiceError::Config(e.to_string()))?;
        if cfg.max_text_length == 0 {
            return Err(ServiceError::Config("max_text_length must be at least 1".into()));
        }
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for path in [&mut cfg.lexicon_dir, &mut cfg.ensemble_config, &mut cfg.static_dir]
            .into_iter()
            .flatten()
            .chain(cfg.ensembles.values_mut())
        {
            resolve(path);
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ServiceError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ServiceError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }
}
