//! Backend wiring from a JSON configuration file.
//!
//! The file is an array of entries, one per chain instance:
//!
//! ```json
//! [
//!   {"chain": "eth:main:1", "kind": "fixture", "path": "chains/eth_main_1.json"},
//!   {"chain": "btc:main:1", "kind": "rpc", "flavor": "bitcoincore-jsonrpc",
//!    "path": "recordings/btc_main_1.json"},
//!   {"chain": "avax:main:c", "kind": "rpc", "flavor": "ethereum-jsonrpc",
//!    "url": "http://localhost:9650/ext/bc/C/rpc", "timeoutMs": 5000, "retries": 1}
//! ]
//! ```
//!
//! `fixture` entries name a chain document (or a directory of documents)
//! containing the chain. `rpc` entries need a flavor plus exactly one of
//! `url` (live HTTP node) or `path` (recorded call log). Relative paths
//! are resolved against the config file's directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use serde::Deserialize;

use crate::backends::decode::RpcFlavor;
use crate::backends::fixture::{FixtureError, FixtureStore};
use crate::backends::rpc::{HttpTransport, RecordedTransport, RpcChainBackend, RpcClient};
use crate::backends::ChainBackend;
use crate::model::ChainKey;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed config {path}: {detail}")]
    Json { path: PathBuf, detail: String },
    #[error("config entry for '{chain}': {detail}")]
    BadEntry { chain: String, detail: String },
    #[error("chain '{0}' is configured twice")]
    DuplicateChain(String),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Fixture,
    Rpc,
}

fn default_timeout_ms() -> u64 {
    10_000
}

fn default_retries() -> u32 {
    2
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BackendEntry {
    /// `blockchain:network:chainDescriptor` this entry serves.
    pub chain: String,
    pub kind: BackendKind,
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub url: Option<String>,
    #[serde(default)]
    pub flavor: Option<RpcFlavor>,
    #[serde(default = "default_timeout_ms")]
    pub timeout_ms: u64,
    #[serde(default = "default_retries")]
    pub retries: u32,
}

pub fn load_config(path: &Path) -> Result<Vec<BackendEntry>, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text)
        .map_err(|e| ConfigError::Json { path: path.to_path_buf(), detail: e.to_string() })
}

fn bad(chain: &str, detail: impl Into<String>) -> ConfigError {
    ConfigError::BadEntry { chain: chain.to_string(), detail: detail.into() }
}

fn resolve(base: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}

/// Instantiates one backend per entry. `base` anchors relative paths
/// (normally the config file's directory).
pub fn build_backends(
    entries: &[BackendEntry],
    base: &Path,
) -> Result<BTreeMap<String, Arc<dyn ChainBackend>>, ConfigError> {
    let mut backends: BTreeMap<String, Arc<dyn ChainBackend>> = BTreeMap::new();
    // Fixture stores are shared between entries pointing at the same path.
    let mut stores: BTreeMap<PathBuf, Arc<FixtureStore>> = BTreeMap::new();

    for entry in entries {
        let chain = entry.chain.as_str();
        let key: ChainKey = chain.parse().map_err(|e| bad(chain, format!("bad chain key: {e}")))?;
        if backends.contains_key(chain) {
            return Err(ConfigError::DuplicateChain(chain.to_string()));
        }
        let backend: Arc<dyn ChainBackend> = match entry.kind {
            BackendKind::Fixture => {
                if entry.url.is_some() || entry.flavor.is_some() {
                    return Err(bad(chain, "fixture entries take only a path"));
                }
                let path =
                    entry.path.as_ref().ok_or_else(|| bad(chain, "fixture entries need a path"))?;
                let path = resolve(base, path);
                let store = match stores.get(&path) {
                    Some(store) => Arc::clone(store),
                    None => {
                        let store = Arc::new(FixtureStore::open(&path)?);
                        stores.insert(path.clone(), Arc::clone(&store));
                        store
                    }
                };
                store.backend(chain).ok_or_else(|| {
                    bad(chain, format!("not defined by any document under {}", path.display()))
                })?
            }
            BackendKind::Rpc => {
                let flavor = entry.flavor.ok_or_else(|| bad(chain, "rpc entries need a flavor"))?;
                let transport: Box<dyn crate::backends::rpc::RpcTransport> =
                    match (&entry.url, &entry.path) {
                        (Some(url), None) => Box::new(HttpTransport::new(
                            url,
                            Duration::from_millis(entry.timeout_ms),
                        )),
                        (None, Some(path)) => {
                            let path = resolve(base, path);
                            Box::new(RecordedTransport::open(&path).map_err(|e| bad(chain, e))?)
                        }
                        _ => return Err(bad(chain, "rpc entries need exactly one of url or path")),
                    };
                Arc::new(RpcChainBackend::new(
                    key,
                    flavor,
                    RpcClient::new(transport, entry.retries),
                ))
            }
        };
        backends.insert(chain.to_string(), backend);
    }
    Ok(backends)
}

/// Loads a config file and builds its backends in one step.
pub fn load_backends(
    path: impl AsRef<Path>,
) -> Result<BTreeMap<String, Arc<dyn ChainBackend>>, ConfigError> {
    let path = path.as_ref();
    let entries = load_config(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    build_backends(&entries, base)
}
