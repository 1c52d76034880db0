//! Chain data access.
//!
//! Every chain instance is served by a [`ChainBackend`]: either a
//! [`fixture::FixtureChainBackend`] reading a validated JSON document, or an
//! [`rpc::RpcChainBackend`] talking JSON-RPC to node software (live over
//! HTTP, or replayed from a recording). The engine treats both identically;
//! swapping one for the other must not change query results.

pub mod config;
pub mod decode;
pub mod fixture;
pub mod profile;
pub mod rpc;

use crate::model::{Account, Block, ChainInfo, Transaction};

/// How a block is addressed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockRef {
    Height(u64),
    /// `0x`-prefixed hash, any case.
    Hash(String),
}

impl std::fmt::Display for BlockRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BlockRef::Height(h) => write!(f, "height {h}"),
            BlockRef::Hash(h) => write!(f, "hash {h}"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BackendError {
    #[error("{entity} not found")]
    NotFound { entity: String },
    #[error("block height {height} is beyond the chain head {head}")]
    BeyondHead { height: u64, head: u64 },
    #[error("invalid address '{address}': expected {expected}")]
    InvalidAddress { address: String, expected: String },
    #[error("backend unreachable: {detail}")]
    Unreachable { detail: String },
    #[error("payload decode failed: {0}")]
    Decode(#[from] decode::DecodeError),
}

impl BackendError {
    pub fn not_found(entity: impl Into<String>) -> Self {
        BackendError::NotFound { entity: entity.into() }
    }

    /// Transport-level faults are worth retrying; definitive answers
    /// (not found, invalid input, beyond head, undecodable payload) never are.
    pub fn is_retryable(&self) -> bool {
        matches!(self, BackendError::Unreachable { .. })
    }
}

/// Read access to one chain instance.
///
/// Implementations are `Send + Sync`; a backend may be shared by
/// concurrent query executions. Reads are idempotent: the same call twice
/// yields the same result (fixtures are immutable, recordings replay).
pub trait ChainBackend: Send + Sync {
    /// Chain/network/descriptor metadata for this instance.
    fn chain_info(&self) -> Result<ChainInfo, BackendError>;

    /// Block by height or hash. Heights past the head report `BeyondHead`;
    /// unknown hashes and missing heights report `NotFound`.
    fn block(&self, block: &BlockRef) -> Result<Block, BackendError>;

    /// Transaction by id, with `descriptor.timestamp` already copied from
    /// the containing block.
    fn transaction(&self, id: &str) -> Result<Transaction, BackendError>;

    /// Current account snapshot. The address is format-checked before any
    /// lookup; the native asset balance is always present, possibly zero.
    fn account(&self, address: &str) -> Result<Account, BackendError>;

    /// Height of the chain head.
    fn head_height(&self) -> Result<u64, BackendError>;
}

/// Lowercases `0x`-prefixed hex strings; leaves everything else (base58,
/// bech32 addresses, decimal strings) untouched. Applied to identifiers at
/// every ingestion boundary so comparisons are case-stable.
pub fn normalize_hex(s: &str) -> String {
    if let Some(rest) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        let mut out = String::with_capacity(s.len());
        out.push_str("0x");
        out.extend(rest.chars().map(|c| c.to_ascii_lowercase()));
        out
    } else {
        s.to_string()
    }
}
