//! JSON-RPC call logs derived from the chain fixture documents.
//!
//! For every block, transaction, and account in a fixture the generated
//! recording contains the node responses an engine run can touch: lookups
//! by height and by hash, the block-miss probes hash sources make before
//! falling back to transactions, the header fetch that supplies an
//! ethereum transaction's timestamp, and balance/code pairs for accounts.
//! Replaying the log through the RPC backend must reproduce the fixture
//! instances exactly; that equivalence is what the substitution suites
//! assert.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value as Json};

use super::chains_dir;

fn load_doc(name: &str) -> Json {
    let path = chains_dir().join(name);
    serde_json::from_str(&fs::read_to_string(&path).expect("fixture document"))
        .expect("fixture JSON")
}

fn arr<'a>(v: &'a Json, field: &str) -> Vec<&'a Json> {
    v.get(field).and_then(Json::as_array).map(|a| a.iter().collect()).unwrap_or_default()
}

fn s<'a>(v: &'a Json, field: &str) -> &'a str {
    v[field].as_str().expect("string field")
}

/// Base-unit quantity stored as a decimal string or plain number.
fn units(v: &Json) -> u128 {
    match v {
        Json::String(text) => text.parse().expect("decimal quantity"),
        Json::Number(n) => u128::from(n.as_u64().expect("non-negative quantity")),
        other => panic!("not a quantity: {other}"),
    }
}

fn hex_qty(v: u128) -> String {
    format!("0x{v:x}")
}

/// Node-side spelling of an identifier: no `0x` prefix.
fn bare(id: &str) -> &str {
    id.strip_prefix("0x").unwrap_or(id)
}

fn call(method: &str, params: Json, result: Json) -> Json {
    json!({ "method": method, "params": params, "result": result })
}

// ---------------------------------------------------------------------------
// ethereum-jsonrpc
// ---------------------------------------------------------------------------

const ZERO_HASH: &str = "0x0000000000000000000000000000000000000000000000000000000000000000";

fn eth_tx_payload(tx: &Json) -> Json {
    let d = &tx["descriptor"];
    let mut obj = Map::new();
    obj.insert("hash".into(), json!(s(tx, "id")));
    obj.insert("blockHash".into(), json!(s(tx, "blockHash")));
    if let Some(from) = d.get("fromAddress").and_then(Json::as_str) {
        obj.insert("from".into(), json!(from));
    }
    if let Some(to) = d.get("toAddress").and_then(Json::as_str) {
        obj.insert("to".into(), json!(to));
    }
    obj.insert("value".into(), json!(hex_qty(units(&d["value"]))));
    obj.insert("input".into(), json!(s(d, "data")));
    Json::Object(obj)
}

fn eth_block_payload(doc: &Json, block: &Json, hydrated: bool) -> Json {
    let d = &block["descriptor"];
    let v = &block["validation"];
    let parent = d["linkedBlockDescriptor"]
        .as_array()
        .and_then(|l| l.first())
        .and_then(Json::as_str)
        .unwrap_or(ZERO_HASH);
    let tx_ids = arr(block, "transactions");
    let transactions: Vec<Json> = if hydrated {
        tx_ids
            .iter()
            .map(|id| {
                let tx = arr(doc, "transactions")
                    .into_iter()
                    .find(|t| t["id"] == **id)
                    .expect("block lists a defined transaction");
                eth_tx_payload(tx)
            })
            .collect()
    } else {
        tx_ids.into_iter().cloned().collect()
    };
    json!({
        "hash": s(block, "id"),
        "number": hex_qty(u128::from(d["height"].as_u64().unwrap())),
        "timestamp": hex_qty(u128::from(d["timestamp"].as_u64().unwrap())),
        "parentHash": parent,
        "difficulty": s(v, "condition"),
        "nonce": s(v, "input"),
        "transactions": transactions,
    })
}

/// Full call log for an ethereum-jsonrpc node serving the fixture chain.
pub fn eth_recording(doc: &Json) -> Json {
    let blocks = arr(doc, "blocks");
    let head = blocks
        .iter()
        .map(|b| b["descriptor"]["height"].as_u64().unwrap())
        .max()
        .expect("chain has blocks");
    let mut calls = vec![call("eth_blockNumber", json!([]), json!(hex_qty(u128::from(head))))];

    for block in &blocks {
        let id = s(block, "id");
        let height = block["descriptor"]["height"].as_u64().unwrap();
        let hydrated = eth_block_payload(doc, block, true);
        let header = eth_block_payload(doc, block, false);
        calls.push(call(
            "eth_getBlockByNumber",
            json!([hex_qty(u128::from(height)), true]),
            hydrated.clone(),
        ));
        calls.push(call("eth_getBlockByHash", json!([id, true]), hydrated));
        // Header-only variant backing transaction timestamp lookups.
        calls.push(call("eth_getBlockByHash", json!([id, false]), header));
    }

    for tx in arr(doc, "transactions") {
        let id = s(tx, "id");
        // Hash sources probe blocks first; a transaction id misses.
        calls.push(call("eth_getBlockByHash", json!([id, true]), Json::Null));
        calls.push(call("eth_getTransactionByHash", json!([id]), eth_tx_payload(tx)));
    }

    for account in arr(doc, "accounts") {
        let address = s(&account["descriptor"], "address");
        let is_contract = account["descriptor"]["isContract"].as_bool().unwrap_or(false);
        let assets = arr(account, "assets");
        assert_eq!(assets.len(), 1, "rpc-served accounts carry only the native asset");
        let balance = units(&assets[0]["balance"]);
        calls.push(call("eth_getBalance", json!([address, "latest"]), json!(hex_qty(balance))));
        let code = if is_contract { "0x6001600101600055" } else { "0x" };
        calls.push(call("eth_getCode", json!([address, "latest"]), json!(code)));
    }

    Json::Array(calls)
}

// ---------------------------------------------------------------------------
// bitcoincore-jsonrpc
// ---------------------------------------------------------------------------

/// bitcoind reports BTC as a JSON double; exact for satoshi amounts.
fn satoshi_as_btc(sat: u128) -> f64 {
    let v = sat as f64 / 1e8;
    assert_eq!((v * 1e8).round() as u128, sat, "amount not representable");
    v
}

fn btc_tx_payload(tx: &Json) -> Json {
    let d = &tx["descriptor"];
    let to_address = d.get("toAddress").and_then(Json::as_str);
    let vout: Vec<Json> = arr(tx, "utxos")
        .iter()
        .enumerate()
        .map(|(i, utxo)| {
            let script = bare(s(utxo, "script"));
            let mut spk = Map::new();
            spk.insert("hex".into(), json!(script));
            let kind = if script.starts_with("41") { "pubkey" } else { "witness_v0_keyhash" };
            spk.insert("type".into(), json!(kind));
            if i == 0 {
                if let Some(addr) = to_address {
                    spk.insert("address".into(), json!(addr));
                }
            }
            json!({
                "n": utxo["outputIndex"].as_u64().unwrap(),
                "value": satoshi_as_btc(units(&utxo["value"])),
                "scriptPubKey": Json::Object(spk),
            })
        })
        .collect();
    json!({
        "txid": bare(s(tx, "id")),
        "blockhash": bare(s(tx, "blockHash")),
        "blocktime": d["timestamp"].as_u64().unwrap(),
        "vout": vout,
    })
}

/// Full call log for a bitcoincore-jsonrpc node serving the fixture chain.
pub fn btc_recording(doc: &Json) -> Json {
    let blocks = arr(doc, "blocks");
    let head = blocks
        .iter()
        .map(|b| b["descriptor"]["height"].as_u64().unwrap())
        .max()
        .expect("chain has blocks");
    let mut calls = vec![call("getblockcount", json!([]), json!(head))];

    for block in &blocks {
        let d = &block["descriptor"];
        let v = &block["validation"];
        let id = bare(s(block, "id"));
        let height = d["height"].as_u64().unwrap();
        let orphan = block["status"] == json!("orphan");
        let tx: Vec<Json> = arr(block, "transactions")
            .iter()
            .map(|t| json!({ "txid": bare(t.as_str().unwrap()) }))
            .collect();
        let mut obj = Map::new();
        obj.insert("hash".into(), json!(id));
        obj.insert("height".into(), json!(height));
        obj.insert("time".into(), json!(d["timestamp"].as_u64().unwrap()));
        // bitcoind omits previousblockhash on the genesis block.
        if let Some(prev) = d["linkedBlockDescriptor"].as_array().and_then(|l| l.first()) {
            obj.insert("previousblockhash".into(), json!(bare(prev.as_str().unwrap())));
        }
        obj.insert("bits".into(), json!(bare(s(v, "condition"))));
        obj.insert("nonce".into(), json!(s(v, "input").parse::<u64>().expect("decimal nonce")));
        let confirmations: i64 = if orphan { -1 } else { (head - height + 1) as i64 };
        obj.insert("confirmations".into(), json!(confirmations));
        obj.insert("tx".into(), Json::Array(tx));

        calls.push(call("getblockhash", json!([height]), json!(id)));
        calls.push(call("getblock", json!([id, 2]), Json::Object(obj)));
    }

    for tx in arr(doc, "transactions") {
        let id = bare(s(tx, "id"));
        // Hash sources probe blocks first; a transaction id misses.
        calls.push(call("getblock", json!([id, 2]), Json::Null));
        calls.push(call("getrawtransaction", json!([id, true]), btc_tx_payload(tx)));
    }

    Json::Array(calls)
}

// ---------------------------------------------------------------------------
// Substitution wiring
// ---------------------------------------------------------------------------

/// Writes recordings plus a backend config that serves eth:main:1 and
/// btc:main:1 over recorded JSON-RPC (one chain per node flavor) and every
/// other chain from the shared fixture directory. Returns the config path.
pub fn write_substitution_config(dir: &Path) -> PathBuf {
    let recordings = dir.join("recordings");
    fs::create_dir_all(&recordings).expect("recordings dir");
    fs::write(
        recordings.join("eth_main_1.json"),
        serde_json::to_string_pretty(&eth_recording(&load_doc("eth_main_1.json"))).unwrap(),
    )
    .expect("write eth recording");
    fs::write(
        recordings.join("btc_main_1.json"),
        serde_json::to_string_pretty(&btc_recording(&load_doc("btc_main_1.json"))).unwrap(),
    )
    .expect("write btc recording");

    let chains = chains_dir();
    let fixture = |chain: &str| json!({ "chain": chain, "kind": "fixture", "path": chains });
    let entries = json!([
        {
            "chain": "eth:main:1",
            "kind": "rpc",
            "flavor": "ethereum-jsonrpc",
            "path": "recordings/eth_main_1.json",
        },
        {
            "chain": "btc:main:1",
            "kind": "rpc",
            "flavor": "bitcoincore-jsonrpc",
            "path": "recordings/btc_main_1.json",
        },
        fixture("eth:ropsten:3"),
        fixture("avax:main:c"),
        fixture("avax:main:x"),
        fixture("ada:main:1"),
        fixture("sol:main:1"),
    ]);
    let path = dir.join("backends.json");
    fs::write(&path, serde_json::to_string_pretty(&entries).unwrap()).expect("write config");
    path
}
