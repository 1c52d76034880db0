//! Decoding node JSON-RPC payloads into model instances.
//!
//! Two flavors are supported, named after the node software's RPC surface:
//!
//! * `ethereum-jsonrpc`: `eth_getBlockByNumber` / `eth_getBlockByHash`,
//!   `eth_getTransactionByHash`, `eth_getBalance`, `eth_getCode`,
//!   `eth_blockNumber`. Quantities are `0x` hex; a block's parent list is
//!   empty at height 0; pre-merge blocks (difficulty > 0) map difficulty
//!   to the validation condition and the nonce to its input, later blocks
//!   map the miner to the proposer. Block status is always `main` (the
//!   method set exposes no reorg information). When the block payload
//!   carries hydrated transaction objects, touched accounts are derived
//!   from their from/to addresses in order of first appearance.
//! * `bitcoincore-jsonrpc`: `getblock` (verbosity 2), `getrawtransaction`
//!   (verbose), `getblockhash`, `getblockcount`. BTC amounts become
//!   satoshi via round-half-up at 10^8, exact for every satoshi-expressible
//!   amount within the 21M supply; `bits` maps to the validation condition
//!   and the nonce (decimal) to its input; negative confirmations mean
//!   `orphan`; a `nulldata` output becomes the transaction's data payload
//!   and is not a spendable UTXO; the first output address (if any) is the
//!   to-address. Accounts are not part of this flavor's model.
//!
//! Bare hex identifiers are normalized to `0x`-prefixed lowercase so both
//! flavors produce the same identifier shape as fixtures.

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::backends::normalize_hex;
use crate::model::{
    Block, BlockDescriptor, ChainInfo, Status, Transaction, TransactionDescriptor, Utxo,
    ValidationDescriptor,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RpcFlavor {
    #[serde(rename = "ethereum-jsonrpc")]
    EthereumJsonrpc,
    #[serde(rename = "bitcoincore-jsonrpc")]
    BitcoincoreJsonrpc,
}

impl RpcFlavor {
    pub fn as_str(&self) -> &'static str {
        match self {
            RpcFlavor::EthereumJsonrpc => "ethereum-jsonrpc",
            RpcFlavor::BitcoincoreJsonrpc => "bitcoincore-jsonrpc",
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum DecodeError {
    #[error("method '{method}' is not part of the {flavor} flavor")]
    UnsupportedMethod { flavor: &'static str, method: String },
    #[error("{method}: missing field '{field}'")]
    MissingField { method: String, field: &'static str },
    #[error("{method}: field '{field}' {detail}")]
    BadField { method: String, field: &'static str, detail: String },
    #[error("hex quantity '{0}' overflows 128 bits")]
    QuantityOverflow(String),
    #[error("hex quantity '{0}' is malformed (expected 0x-prefixed hex digits)")]
    BadQuantity(String),
    #[error("amount {0} is not a valid non-negative quantity")]
    BadAmount(f64),
}

/// What one decoded payload yields.
#[derive(Debug, Clone, PartialEq)]
pub enum DecodedPayload {
    Block(Block),
    /// `descriptor.timestamp` is 0 when the flavor's tx payload has no
    /// timestamp (ethereum); the backend copies it from the block.
    Transaction(Transaction),
    BlockHash(String),
    /// Native balance in base units.
    Balance(u128),
    Code {
        is_contract: bool,
    },
    Height(u64),
}

/// Parses an Ethereum-style `0x` hex quantity into `u128`.
pub fn parse_hex_quantity(s: &str) -> Result<u128, DecodeError> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .ok_or_else(|| DecodeError::BadQuantity(s.to_string()))?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(DecodeError::BadQuantity(s.to_string()));
    }
    u128::from_str_radix(digits, 16).map_err(|_| DecodeError::QuantityOverflow(s.to_string()))
}

/// Canonical `0x` hex encoding of a quantity (no leading zeros).
pub fn format_hex_quantity(v: u128) -> String {
    format!("0x{v:x}")
}

/// BTC (as reported by bitcoind, a JSON number) to satoshi.
///
/// Exact for every amount expressible in satoshi up to the 21M BTC supply:
/// such values are below 2^53, so `value * 1e8` lands within 0.5 of the
/// true integer and rounding recovers it.
pub fn btc_to_satoshi(value: f64) -> Result<u128, DecodeError> {
    if !value.is_finite() || value < 0.0 {
        return Err(DecodeError::BadAmount(value));
    }
    Ok((value * 1e8).round() as u128)
}

/// Satoshi to the BTC number bitcoind would report.
pub fn satoshi_to_btc(sat: u128) -> f64 {
    sat as f64 / 1e8
}

/// Maps one JSON-RPC `result` to model instances per the flavor's fixed
/// method table. `info` supplies the chain spine properties payloads lack
/// (DAG support for descriptors).
pub fn decode_node_payload(
    flavor: RpcFlavor,
    method: &str,
    result: &Json,
    info: &ChainInfo,
) -> Result<DecodedPayload, DecodeError> {
    match flavor {
        RpcFlavor::EthereumJsonrpc => match method {
            "eth_getBlockByNumber" | "eth_getBlockByHash" => {
                decode_eth_block(method, result, info).map(DecodedPayload::Block)
            }
            "eth_getTransactionByHash" => {
                decode_eth_transaction(method, result).map(DecodedPayload::Transaction)
            }
            "eth_getBalance" => {
                Ok(DecodedPayload::Balance(parse_hex_quantity(str_result(method, result)?)?))
            }
            "eth_getCode" => {
                let code = str_result(method, result)?;
                let stripped = code.strip_prefix("0x").unwrap_or(code);
                Ok(DecodedPayload::Code { is_contract: !stripped.is_empty() })
            }
            "eth_blockNumber" => {
                let height = parse_hex_quantity(str_result(method, result)?)?;
                Ok(DecodedPayload::Height(to_u64(method, "result", height)?))
            }
            _ => Err(DecodeError::UnsupportedMethod {
                flavor: flavor.as_str(),
                method: method.to_string(),
            }),
        },
        RpcFlavor::BitcoincoreJsonrpc => match method {
            "getblock" => decode_btc_block(method, result, info).map(DecodedPayload::Block),
            "getrawtransaction" => {
                decode_btc_transaction(method, result).map(DecodedPayload::Transaction)
            }
            "getblockhash" => Ok(DecodedPayload::BlockHash(hex_id(str_result(method, result)?))),
            "getblockcount" => {
                let height = result.as_u64().ok_or(DecodeError::BadField {
                    method: method.to_string(),
                    field: "result",
                    detail: "is not an integer".into(),
                })?;
                Ok(DecodedPayload::Height(height))
            }
            _ => Err(DecodeError::UnsupportedMethod {
                flavor: flavor.as_str(),
                method: method.to_string(),
            }),
        },
    }
}

// ---------------------------------------------------------------------------
// Shared field helpers
// ---------------------------------------------------------------------------

fn missing(method: &str, field: &'static str) -> DecodeError {
    DecodeError::MissingField { method: method.to_string(), field }
}

fn bad(method: &str, field: &'static str, detail: impl Into<String>) -> DecodeError {
    DecodeError::BadField { method: method.to_string(), field, detail: detail.into() }
}

fn str_result<'a>(method: &str, result: &'a Json) -> Result<&'a str, DecodeError> {
    result.as_str().ok_or_else(|| bad(method, "result", "is not a string"))
}

fn obj_field<'a>(
    method: &str,
    obj: &'a Json,
    field: &'static str,
) -> Result<&'a Json, DecodeError> {
    obj.get(field).ok_or_else(|| missing(method, field))
}

fn str_field<'a>(method: &str, obj: &'a Json, field: &'static str) -> Result<&'a str, DecodeError> {
    obj_field(method, obj, field)?.as_str().ok_or_else(|| bad(method, field, "is not a string"))
}

fn u64_field(method: &str, obj: &Json, field: &'static str) -> Result<u64, DecodeError> {
    obj_field(method, obj, field)?
        .as_u64()
        .ok_or_else(|| bad(method, field, "is not a non-negative integer"))
}

fn hex_qty_field(method: &str, obj: &Json, field: &'static str) -> Result<u128, DecodeError> {
    parse_hex_quantity(str_field(method, obj, field)?)
}

fn to_u64(method: &str, field: &'static str, v: u128) -> Result<u64, DecodeError> {
    u64::try_from(v).map_err(|_| bad(method, field, format!("value {v} exceeds 64 bits")))
}

/// `0x`-prefixed lowercase form of a possibly bare hex identifier.
fn hex_id(s: &str) -> String {
    if s.starts_with("0x") || s.starts_with("0X") {
        normalize_hex(s)
    } else {
        format!("0x{}", s.to_ascii_lowercase())
    }
}

// ---------------------------------------------------------------------------
// ethereum-jsonrpc
// ---------------------------------------------------------------------------

fn decode_eth_block(method: &str, result: &Json, info: &ChainInfo) -> Result<Block, DecodeError> {
    if !result.is_object() {
        return Err(bad(method, "result", "is not a block object"));
    }
    let hash = hex_id(str_field(method, result, "hash")?);
    let height = to_u64(method, "number", hex_qty_field(method, result, "number")?)?;
    let timestamp = to_u64(method, "timestamp", hex_qty_field(method, result, "timestamp")?)?;

    let linked = if height == 0 {
        Vec::new()
    } else {
        vec![hex_id(str_field(method, result, "parentHash")?)]
    };

    let difficulty = match result.get("difficulty") {
        Some(d) => parse_hex_quantity(
            d.as_str().ok_or_else(|| bad(method, "difficulty", "is not a string"))?,
        )?,
        None => 0,
    };
    let validation = if difficulty > 0 {
        ValidationDescriptor {
            hash_value: hash.clone(),
            condition: Some(normalize_hex(str_field(method, result, "difficulty")?)),
            input: Some(normalize_hex(str_field(method, result, "nonce")?)),
            proposer: None,
            attestation_committee: Vec::new(),
        }
    } else {
        ValidationDescriptor {
            hash_value: hash.clone(),
            condition: None,
            input: None,
            proposer: Some(hex_id(str_field(method, result, "miner")?)),
            attestation_committee: Vec::new(),
        }
    };

    let mut tx_ids = Vec::new();
    let mut accounts = Vec::new();
    if let Some(txs) = result.get("transactions").and_then(Json::as_array) {
        for tx in txs {
            match tx {
                Json::String(id) => tx_ids.push(hex_id(id)),
                Json::Object(obj) => {
                    let id = obj
                        .get("hash")
                        .and_then(Json::as_str)
                        .ok_or_else(|| missing(method, "transactions[].hash"))?;
                    tx_ids.push(hex_id(id));
                    for side in ["from", "to"] {
                        if let Some(addr) = obj.get(side).and_then(Json::as_str) {
                            let addr = hex_id(addr);
                            if !accounts.contains(&addr) {
                                accounts.push(addr);
                            }
                        }
                    }
                }
                _ => return Err(bad(method, "transactions", "has a non-string, non-object entry")),
            }
        }
    }

    Ok(Block {
        id: hash.clone(),
        descriptor: BlockDescriptor {
            hash,
            height,
            timestamp,
            dag_support: info.dag_support,
            linked_block_descriptor: linked,
            epoch: None,
            slot: None,
        },
        status: Status::Main,
        validation,
        transactions: tx_ids,
        accounts,
    })
}

fn decode_eth_transaction(method: &str, result: &Json) -> Result<Transaction, DecodeError> {
    if !result.is_object() {
        return Err(bad(method, "result", "is not a transaction object"));
    }
    let id = hex_id(str_field(method, result, "hash")?);
    let block_hash = match result.get("blockHash") {
        Some(Json::String(h)) => hex_id(h),
        // A null blockHash means the node only knows the tx from its
        // mempool; pending transactions are outside the data model.
        _ => {
            return Err(bad(
                method,
                "blockHash",
                "is null (transaction not in a block)".to_string(),
            ))
        }
    };
    let from_address = result.get("from").and_then(Json::as_str).map(hex_id);
    let to_address = result.get("to").and_then(Json::as_str).map(hex_id);
    let value = hex_qty_field(method, result, "value")?;
    let data = match result.get("input").and_then(Json::as_str) {
        Some(i) => normalize_hex(i),
        None => "0x".to_string(),
    };
    Ok(Transaction {
        id,
        descriptor: TransactionDescriptor {
            from_address,
            to_address,
            value,
            data,
            assets: Vec::new(),
            tokens: Vec::new(),
            timestamp: 0,
        },
        utxos: Vec::new(),
        block_hash,
    })
}

// ---------------------------------------------------------------------------
// bitcoincore-jsonrpc
// ---------------------------------------------------------------------------

fn decode_btc_block(method: &str, result: &Json, info: &ChainInfo) -> Result<Block, DecodeError> {
    if !result.is_object() {
        return Err(bad(method, "result", "is not a block object"));
    }
    let hash = hex_id(str_field(method, result, "hash")?);
    let height = u64_field(method, result, "height")?;
    let timestamp = u64_field(method, result, "time")?;
    let linked = match result.get("previousblockhash").and_then(Json::as_str) {
        Some(prev) => vec![hex_id(prev)],
        None => Vec::new(),
    };
    if height == 0 && !linked.is_empty() {
        return Err(bad(method, "previousblockhash", "present on the genesis block"));
    }
    let bits = str_field(method, result, "bits")?;
    let nonce = u64_field(method, result, "nonce")?;
    let status = match result.get("confirmations").and_then(Json::as_i64) {
        Some(c) if c < 0 => Status::Orphan,
        _ => Status::Main,
    };
    let mut tx_ids = Vec::new();
    if let Some(txs) = result.get("tx").and_then(Json::as_array) {
        for tx in txs {
            match tx {
                Json::String(id) => tx_ids.push(hex_id(id)),
                Json::Object(obj) => {
                    let id = obj
                        .get("txid")
                        .and_then(Json::as_str)
                        .ok_or_else(|| missing(method, "tx[].txid"))?;
                    tx_ids.push(hex_id(id));
                }
                _ => return Err(bad(method, "tx", "has a non-string, non-object entry")),
            }
        }
    }
    Ok(Block {
        id: hash.clone(),
        descriptor: BlockDescriptor {
            hash: hash.clone(),
            height,
            timestamp,
            dag_support: info.dag_support,
            linked_block_descriptor: linked,
            epoch: None,
            slot: None,
        },
        status,
        validation: ValidationDescriptor {
            hash_value: hash,
            condition: Some(hex_id(bits)),
            input: Some(nonce.to_string()),
            proposer: None,
            attestation_committee: Vec::new(),
        },
        transactions: tx_ids,
        accounts: Vec::new(),
    })
}

fn decode_btc_transaction(method: &str, result: &Json) -> Result<Transaction, DecodeError> {
    if !result.is_object() {
        return Err(bad(method, "result", "is not a transaction object"));
    }
    let id = hex_id(str_field(method, result, "txid")?);
    let block_hash = hex_id(str_field(method, result, "blockhash")?);
    let timestamp = u64_field(method, result, "blocktime")?;

    let mut utxos = Vec::new();
    let mut data = "0x".to_string();
    let mut to_address = None;
    if let Some(vouts) = result.get("vout").and_then(Json::as_array) {
        for vout in vouts {
            let n = u64_field(method, vout, "n")?;
            let n = u32::try_from(n).map_err(|_| bad(method, "n", "exceeds 32 bits"))?;
            let amount = vout
                .get("value")
                .and_then(Json::as_f64)
                .ok_or_else(|| missing(method, "vout[].value"))?;
            let script_obj = obj_field(method, vout, "scriptPubKey")?;
            let script_hex = script_obj
                .get("hex")
                .and_then(Json::as_str)
                .ok_or_else(|| missing(method, "scriptPubKey.hex"))?;
            let script = hex_id(script_hex);
            let kind = script_obj.get("type").and_then(Json::as_str).unwrap_or("");
            if kind == "nulldata" {
                // OP_RETURN output: carries the payload, is never spendable.
                if data == "0x" {
                    data = script.clone();
                }
                continue;
            }
            if to_address.is_none() {
                if let Some(addr) = script_obj.get("address").and_then(Json::as_str) {
                    to_address = Some(addr.to_string());
                }
            }
            utxos.push(Utxo {
                tx_id: id.clone(),
                output_index: n,
                value: btc_to_satoshi(amount)?,
                script,
                spent: false,
            });
        }
    }
    let value = utxos.iter().map(|u| u.value).sum();
    Ok(Transaction {
        id,
        descriptor: TransactionDescriptor {
            from_address: None,
            to_address,
            value,
            data,
            assets: Vec::new(),
            tokens: Vec::new(),
            timestamp,
        },
        utxos,
        block_hash,
    })
}
