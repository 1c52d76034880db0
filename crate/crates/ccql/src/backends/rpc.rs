//! JSON-RPC transports and the RPC-backed chain backend.
//!
//! A [`RpcTransport`] moves one call to a node and back; [`RpcClient`]
//! adds retry with exponential backoff for transport-level failures
//! (RPC-level errors from the node are never retried). Two transports
//! ship: [`HttpTransport`] posts JSON-RPC 2.0 over HTTP, and
//! [`RecordedTransport`] replays a recorded call log from disk, which
//! makes RPC-path tests deterministic and network-free.
//!
//! [`RpcChainBackend`] drives either node flavor through the fixed method
//! tables in [`decode`](crate::backends::decode) and exposes the same
//! [`ChainBackend`] surface as the fixture store, so an engine cannot
//! tell which one it is talking to.

use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use serde::Deserialize;
use serde_json::{json, Value as Json};

use crate::backends::decode::{
    decode_node_payload, format_hex_quantity, DecodedPayload, RpcFlavor,
};
use crate::backends::profile::{address_pattern, chain_profile, generic_chain_info};
use crate::backends::{BackendError, BlockRef, ChainBackend};
use crate::model::{
    Account, AccountDescriptor, Asset, Block, ChainInfo, ChainKey, ConsensusType, NativeAsset,
    Transaction,
};

/// One JSON-RPC exchange, as a transport sees it.
#[derive(Debug, thiserror::Error)]
pub enum RpcCallError {
    /// The node answered with a JSON-RPC error object.
    #[error("node error {code}: {message}")]
    Rpc { code: i64, message: String },
    /// The call never completed (connect, I/O, malformed envelope).
    #[error("transport: {0}")]
    Transport(String),
}

pub trait RpcTransport: Send + Sync {
    fn call(&self, method: &str, params: &Json) -> Result<Json, RpcCallError>;
}

// ---------------------------------------------------------------------------
// HTTP transport
// ---------------------------------------------------------------------------

/// JSON-RPC 2.0 over HTTP POST.
pub struct HttpTransport {
    url: String,
    agent: ureq::Agent,
    next_id: AtomicU64,
}

impl HttpTransport {
    pub fn new(url: &str, timeout: Duration) -> Self {
        let agent = ureq::Agent::config_builder().timeout_global(Some(timeout)).build().into();
        HttpTransport { url: url.to_string(), agent, next_id: AtomicU64::new(1) }
    }
}

impl RpcTransport for HttpTransport {
    fn call(&self, method: &str, params: &Json) -> Result<Json, RpcCallError> {
        let id = self.next_id.fetch_add(1, Ordering::Relaxed);
        let body = json!({"jsonrpc": "2.0", "id": id, "method": method, "params": params});
        let mut response = self
            .agent
            .post(&self.url)
            .send_json(&body)
            .map_err(|e| RpcCallError::Transport(e.to_string()))?;
        let envelope: Json = response
            .body_mut()
            .read_json()
            .map_err(|e| RpcCallError::Transport(format!("bad response body: {e}")))?;
        if let Some(err) = envelope.get("error").filter(|e| !e.is_null()) {
            return Err(RpcCallError::Rpc {
                code: err.get("code").and_then(Json::as_i64).unwrap_or(0),
                message: err
                    .get("message")
                    .and_then(Json::as_str)
                    .unwrap_or("unknown error")
                    .to_string(),
            });
        }
        match envelope.get("result") {
            Some(result) => Ok(result.clone()),
            None => Err(RpcCallError::Transport("response has no result field".into())),
        }
    }
}

// ---------------------------------------------------------------------------
// Recorded transport
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordedCall {
    method: String,
    params: Json,
    result: Json,
}

/// Replays calls from a JSON recording: an array of
/// `{"method": ..., "params": [...], "result": ...}` entries.
///
/// Lookup is by exact method + params match. A call with no matching
/// entry is a transport error, the same as an unreachable node.
pub struct RecordedTransport {
    calls: Vec<RecordedCall>,
    hits: Mutex<Vec<usize>>,
}

impl RecordedTransport {
    pub fn open(path: &Path) -> Result<Self, String> {
        let text =
            std::fs::read_to_string(path).map_err(|e| format!("read {}: {e}", path.display()))?;
        Self::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let calls: Vec<RecordedCall> =
            serde_json::from_str(text).map_err(|e| format!("bad recording: {e}"))?;
        Ok(RecordedTransport { calls, hits: Mutex::new(Vec::new()) })
    }

    /// Indices of recorded entries answered so far, in call order.
    pub fn replayed(&self) -> Vec<usize> {
        self.hits.lock().unwrap().clone()
    }
}

impl RpcTransport for RecordedTransport {
    fn call(&self, method: &str, params: &Json) -> Result<Json, RpcCallError> {
        for (i, entry) in self.calls.iter().enumerate() {
            if entry.method == method && &entry.params == params {
                self.hits.lock().unwrap().push(i);
                return Ok(entry.result.clone());
            }
        }
        Err(RpcCallError::Transport(format!("no recorded response for {method} {params}")))
    }
}

// ---------------------------------------------------------------------------
// Retrying client
// ---------------------------------------------------------------------------

pub struct RpcClient {
    transport: Box<dyn RpcTransport>,
    retries: u32,
    backoff_base: Duration,
}

impl RpcClient {
    pub fn new(transport: Box<dyn RpcTransport>, retries: u32) -> Self {
        RpcClient { transport, retries, backoff_base: Duration::from_millis(50) }
    }

    /// Retry only transport failures; node-level errors are authoritative.
    pub fn call(&self, method: &str, params: Json) -> Result<Json, RpcCallError> {
        let mut attempt = 0;
        loop {
            match self.transport.call(method, &params) {
                Err(RpcCallError::Transport(detail)) if attempt < self.retries => {
                    let delay = self.backoff_base * 2u32.saturating_pow(attempt);
                    std::thread::sleep(delay);
                    attempt += 1;
                    let _ = detail;
                }
                other => return other,
            }
        }
    }
}

// ---------------------------------------------------------------------------
// RPC chain backend
// ---------------------------------------------------------------------------

pub struct RpcChainBackend {
    key: ChainKey,
    flavor: RpcFlavor,
    client: RpcClient,
    info: ChainInfo,
}

impl RpcChainBackend {
    pub fn new(key: ChainKey, flavor: RpcFlavor, client: RpcClient) -> Self {
        let info = match chain_profile(&key) {
            Some(profile) => profile.chain_info(&key),
            None => {
                // Unknown chain instance: synthesize a spine from the key
                // and the flavor's defaults.
                let (consensus, asset) = match flavor {
                    RpcFlavor::EthereumJsonrpc => (
                        ConsensusType::ProofOfWork,
                        NativeAsset { asset_id: "ETH".into(), decimals: 18 },
                    ),
                    RpcFlavor::BitcoincoreJsonrpc => (
                        ConsensusType::ProofOfWork,
                        NativeAsset { asset_id: "BTC".into(), decimals: 8 },
                    ),
                };
                generic_chain_info(&key, consensus, asset)
            }
        };
        RpcChainBackend { key, flavor, client, info }
    }

    fn unreachable(err: RpcCallError) -> BackendError {
        match err {
            RpcCallError::Rpc { code, message } => {
                BackendError::Unreachable { detail: format!("node error {code}: {message}") }
            }
            RpcCallError::Transport(detail) => BackendError::Unreachable { detail },
        }
    }

    fn decode(&self, method: &str, result: &Json) -> Result<DecodedPayload, BackendError> {
        Ok(decode_node_payload(self.flavor, method, result, &self.info)?)
    }

    fn call(&self, method: &str, params: Json) -> Result<Json, BackendError> {
        self.client.call(method, params).map_err(Self::unreachable)
    }

    /// bitcoind wants bare hex ids; strip the canonical 0x prefix.
    fn bare(id: &str) -> &str {
        id.strip_prefix("0x").or_else(|| id.strip_prefix("0X")).unwrap_or(id)
    }

    fn eth_block(&self, reference: &BlockRef) -> Result<Block, BackendError> {
        let (method, params) = match reference {
            BlockRef::Height(h) => {
                ("eth_getBlockByNumber", json!([format_hex_quantity(*h as u128), true]))
            }
            BlockRef::Hash(hash) => ("eth_getBlockByHash", json!([hash, true])),
        };
        let result = self.call(method, params)?;
        if result.is_null() {
            if let BlockRef::Height(h) = reference {
                let head = self.head_height()?;
                if *h > head {
                    return Err(BackendError::BeyondHead { height: *h, head });
                }
            }
            return Err(BackendError::not_found(format!("block {reference}")));
        }
        match self.decode(method, &result)? {
            DecodedPayload::Block(block) => Ok(block),
            _ => unreachable!("block methods decode to blocks"),
        }
    }

    fn btc_block(&self, reference: &BlockRef) -> Result<Block, BackendError> {
        let hash = match reference {
            BlockRef::Height(h) => {
                let result = self.call("getblockhash", json!([h]))?;
                if result.is_null() {
                    let head = self.head_height()?;
                    if *h > head {
                        return Err(BackendError::BeyondHead { height: *h, head });
                    }
                    return Err(BackendError::not_found(format!("block {reference}")));
                }
                match self.decode("getblockhash", &result)? {
                    DecodedPayload::BlockHash(hash) => hash,
                    _ => unreachable!("getblockhash decodes to a hash"),
                }
            }
            BlockRef::Hash(hash) => hash.clone(),
        };
        let result = self.call("getblock", json!([Self::bare(&hash), 2]))?;
        if result.is_null() {
            return Err(BackendError::not_found(format!("block {reference}")));
        }
        match self.decode("getblock", &result)? {
            DecodedPayload::Block(block) => Ok(block),
            _ => unreachable!("getblock decodes to a block"),
        }
    }
}

impl ChainBackend for RpcChainBackend {
    fn chain_info(&self) -> Result<ChainInfo, BackendError> {
        Ok(self.info.clone())
    }

    fn block(&self, reference: &BlockRef) -> Result<Block, BackendError> {
        match self.flavor {
            RpcFlavor::EthereumJsonrpc => self.eth_block(reference),
            RpcFlavor::BitcoincoreJsonrpc => self.btc_block(reference),
        }
    }

    fn transaction(&self, id: &str) -> Result<Transaction, BackendError> {
        match self.flavor {
            RpcFlavor::EthereumJsonrpc => {
                let result = self.call("eth_getTransactionByHash", json!([id]))?;
                if result.is_null() {
                    return Err(BackendError::not_found(format!("transaction {id}")));
                }
                let DecodedPayload::Transaction(mut tx) =
                    self.decode("eth_getTransactionByHash", &result)?
                else {
                    unreachable!("tx method decodes to a transaction")
                };
                // The tx payload has no timestamp; take it from the
                // containing block header (no hydration needed).
                let header = self.call("eth_getBlockByHash", json!([tx.block_hash, false]))?;
                if !header.is_null() {
                    if let DecodedPayload::Block(block) =
                        self.decode("eth_getBlockByHash", &header)?
                    {
                        tx.descriptor.timestamp = block.descriptor.timestamp;
                    }
                }
                Ok(tx)
            }
            RpcFlavor::BitcoincoreJsonrpc => {
                let result = self.call("getrawtransaction", json!([Self::bare(id), true]))?;
                if result.is_null() {
                    return Err(BackendError::not_found(format!("transaction {id}")));
                }
                match self.decode("getrawtransaction", &result)? {
                    DecodedPayload::Transaction(tx) => Ok(tx),
                    _ => unreachable!("getrawtransaction decodes to a transaction"),
                }
            }
        }
    }

    fn account(&self, address: &str) -> Result<Account, BackendError> {
        match self.flavor {
            RpcFlavor::EthereumJsonrpc => {
                let pattern = address_pattern(&self.key);
                if !pattern.matches(address) {
                    return Err(BackendError::InvalidAddress {
                        address: address.to_string(),
                        expected: pattern.description.to_string(),
                    });
                }
                let balance = self.call("eth_getBalance", json!([address, "latest"]))?;
                let DecodedPayload::Balance(balance) = self.decode("eth_getBalance", &balance)?
                else {
                    unreachable!("balance method decodes to a balance")
                };
                let code = self.call("eth_getCode", json!([address, "latest"]))?;
                let DecodedPayload::Code { is_contract } = self.decode("eth_getCode", &code)?
                else {
                    unreachable!("code method decodes to a code flag")
                };
                let native = &self.info.native_asset;
                Ok(Account {
                    descriptor: AccountDescriptor {
                        address: crate::backends::normalize_hex(address),
                        is_contract,
                    },
                    assets: vec![Asset {
                        asset_id: native.asset_id.clone(),
                        balance,
                        decimals: native.decimals,
                    }],
                    tokens: Vec::new(),
                    data: Vec::new(),
                })
            }
            RpcFlavor::BitcoincoreJsonrpc => {
                // The UTXO model has no account state to query.
                Err(BackendError::not_found(format!(
                    "account {address} (accounts are not available via bitcoincore-jsonrpc)"
                )))
            }
        }
    }

    fn head_height(&self) -> Result<u64, BackendError> {
        let (method, params) = match self.flavor {
            RpcFlavor::EthereumJsonrpc => ("eth_blockNumber", json!([])),
            RpcFlavor::BitcoincoreJsonrpc => ("getblockcount", json!([])),
        };
        let result = self.call(method, params)?;
        match self.decode(method, &result)? {
            DecodedPayload::Height(h) => Ok(h),
            _ => unreachable!("head methods decode to heights"),
        }
    }
}
