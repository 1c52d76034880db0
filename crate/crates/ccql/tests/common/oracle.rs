//! Brute-force reference evaluator.
//!
//! Evaluates parsed statements directly against the raw fixture JSON with
//! its own copies of the alias table, the delegation table, the
//! containment walk, the filter semantics, and the output formatting
//! (including exact decimal amount strings built by string arithmetic).
//! Nothing here calls into the engine, so shared bugs cannot cancel out.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde_json::{json, Value as Json};

use ccql::parser::{CompareOp, EntityRef, FilterSpec, LiteralValue, QueryStatement};

/// Typed result cell, re-derived from the documented output contract.
#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Null,
    Bool(bool),
    Int(u128),
    Amount(u128, u32),
    Text(String),
    List(Vec<Cell>),
}

fn expand_alias(name: &str) -> &str {
    match name {
        "Net" => "Network",
        "ChainDesc" => "ChainDescriptor",
        "BlockDesc" => "BlockDescriptor",
        "Validation" => "ValidationDescriptor",
        "Validator" => "ValidatorDescriptor",
        "Acc" => "Account",
        "AccDesc" => "AccountDescriptor",
        "T" => "Transaction",
        "TDesc" => "TransactionDescriptor",
        other => other,
    }
}

/// `(class, attr)` that actually stores a written attribute's value.
fn canonical(class: &str, attr: &str) -> (String, String) {
    let (c, a) = match (class, attr) {
        ("Block", "height") => ("BlockDescriptor", "height"),
        ("Block", "timestamp") => ("BlockDescriptor", "timestamp"),
        ("BlockDescriptor", "id") => ("BlockDescriptor", "hash"),
        ("Transaction", "value") => ("TransactionDescriptor", "value"),
        ("Transaction", "data") => ("TransactionDescriptor", "data"),
        ("Transaction", "timestamp") => ("TransactionDescriptor", "timestamp"),
        ("Transaction", "fromAddress") => ("TransactionDescriptor", "fromAddress"),
        ("Transaction", "toAddress") => ("TransactionDescriptor", "toAddress"),
        ("Account", "address") => ("AccountDescriptor", "address"),
        other => other,
    };
    (c.to_string(), a.to_string())
}

enum Root<'a> {
    Chain,
    Block { block: &'a Json, txs: Vec<&'a Json>, accounts: Vec<&'a Json> },
    Tx(&'a Json),
    Account(&'a Json),
}

pub struct Oracle {
    docs: BTreeMap<String, Json>,
}

impl Oracle {
    pub fn load(dir: &Path) -> Oracle {
        let mut docs = BTreeMap::new();
        for entry in fs::read_dir(dir).expect("fixture dir") {
            let path = entry.expect("dir entry").path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let doc: Json = serde_json::from_str(&fs::read_to_string(&path).expect("fixture file"))
                .expect("fixture JSON");
            let key = doc["chain"]["key"].as_str().expect("chain key").to_string();
            docs.insert(key, doc);
        }
        docs.values().for_each(|d| assert!(d["blocks"].is_array()));
        Oracle { docs }
    }

    /// Evaluates one statement, returning the same `{columns, rows,
    /// warnings}` JSON document the engine emits. Filters are applied the
    /// way the engine applies them: sequentially, in written order.
    pub fn eval(&self, stmt: &QueryStatement) -> Result<Json, String> {
        let (columns, keys, cells, mut warnings) = self.project(stmt)?;
        let mut rows = vec![cells];
        for filter in &stmt.filters {
            apply_filter(&mut rows, &mut warnings, &keys, filter)?;
        }

        let rows_json: Vec<Json> =
            rows.iter().map(|row| Json::Array(row.iter().map(cell_json).collect())).collect();
        Ok(json!({ "columns": columns, "rows": rows_json, "warnings": warnings }))
    }

    /// Applies all filters in one pass instead of sequentially: the row
    /// survives iff every filter, judged independently against the
    /// unfiltered row, keeps it. Returns the surviving rows in the same
    /// JSON cell encoding `eval` uses.
    pub fn conjunctive_rows(&self, stmt: &QueryStatement) -> Result<Vec<Json>, String> {
        let (_, keys, cells, _) = self.project(stmt)?;
        let mut keep = true;
        for filter in &stmt.filters {
            if !row_verdict(&cells, &keys, filter)?.keeps() {
                keep = false;
            }
        }
        let mut rows = Vec::new();
        if keep {
            rows.push(Json::Array(cells.iter().map(cell_json).collect()));
        }
        Ok(rows)
    }

    /// Projection state before any filter runs: column descriptors, the
    /// canonical `(class, attr)` key per column (the filter matching key),
    /// the single row of cells, and projection warnings.
    #[allow(clippy::type_complexity)]
    fn project(
        &self,
        stmt: &QueryStatement,
    ) -> Result<(Vec<Json>, Vec<(String, String)>, Vec<Cell>, Vec<String>), String> {
        let mut columns = Vec::new();
        for (i, _) in stmt.sources.iter().enumerate() {
            for spec in &stmt.query_attrs {
                let written = spec.to_string();
                columns.push(json!({
                    "source": i + 1,
                    "attr": written,
                    "label": format!("{} {written}", i + 1),
                }));
            }
        }

        let mut warnings: Vec<String> = Vec::new();
        let mut warned: BTreeSet<(usize, String)> = BTreeSet::new();
        let mut cells: Vec<Cell> = Vec::new();
        let mut keys: Vec<(String, String)> = Vec::new();

        for (i, source) in stmt.sources.iter().enumerate() {
            let k = i + 1;
            let chain_key = source.chain_key();
            let doc = self
                .docs
                .get(&chain_key)
                .ok_or_else(|| format!("no fixture document for {chain_key}"))?;
            let root = resolve_root(doc, source.entity.as_ref())?;
            for spec in &stmt.query_attrs {
                let written = expand_alias(&spec.class_name).to_string();
                let (class, attr) = canonical(&written, &spec.attr_name);
                let values = walk(doc, &root, &class, &attr);
                let cell = match values.len() {
                    0 => {
                        if warned.insert((k, written.clone())) {
                            warnings.push(format!("{written} unreachable on source {k}"));
                        }
                        Cell::Null
                    }
                    1 => values.into_iter().next().unwrap(),
                    _ => Cell::List(values),
                };
                keys.push((class, attr));
                cells.push(cell);
            }
        }
        Ok((columns, keys, cells, warnings))
    }
}

// ---------------------------------------------------------------------------
// Entity resolution over the raw document
// ---------------------------------------------------------------------------

fn lower_hex(s: &str) -> String {
    if s.starts_with("0x") || s.starts_with("0X") {
        s.to_ascii_lowercase()
    } else {
        s.to_string()
    }
}

fn arr<'a>(doc: &'a Json, field: &str) -> Vec<&'a Json> {
    doc.get(field).and_then(Json::as_array).map(|v| v.iter().collect()).unwrap_or_default()
}

fn resolve_root<'a>(doc: &'a Json, entity: Option<&EntityRef>) -> Result<Root<'a>, String> {
    match entity {
        None => Ok(Root::Chain),
        Some(EntityRef::Height(h)) => {
            let block = arr(doc, "blocks")
                .into_iter()
                .find(|b| b["descriptor"]["height"].as_u64() == Some(*h))
                .ok_or_else(|| format!("no block at height {h}"))?;
            Ok(materialize(doc, block))
        }
        Some(EntityRef::Hash(hash)) => {
            let want = lower_hex(hash);
            if let Some(block) =
                arr(doc, "blocks").into_iter().find(|b| b["id"].as_str() == Some(&want))
            {
                return Ok(materialize(doc, block));
            }
            arr(doc, "transactions")
                .into_iter()
                .find(|t| t["id"].as_str() == Some(&want))
                .map(Root::Tx)
                .ok_or_else(|| format!("no block or transaction {want}"))
        }
        Some(EntityRef::Address(address)) => {
            let want = lower_hex(address);
            arr(doc, "accounts")
                .into_iter()
                .find(|a| a["descriptor"]["address"].as_str() == Some(&want))
                .map(Root::Account)
                .ok_or_else(|| format!("no account {want}"))
        }
    }
}

fn materialize<'a>(doc: &'a Json, block: &'a Json) -> Root<'a> {
    let find_tx = |id: &str| {
        arr(doc, "transactions")
            .into_iter()
            .find(|t| t["id"].as_str() == Some(id))
            .expect("fixture lists only defined transactions")
    };
    let find_account = |addr: &str| {
        arr(doc, "accounts")
            .into_iter()
            .find(|a| a["descriptor"]["address"].as_str() == Some(addr))
            .expect("fixture lists only defined accounts")
    };
    let txs = strings(block.get("transactions")).iter().map(|id| find_tx(id)).collect();
    let accounts = strings(block.get("accounts")).iter().map(|a| find_account(a)).collect();
    Root::Block { block, txs, accounts }
}

// ---------------------------------------------------------------------------
// Containment walk and attribute reads
// ---------------------------------------------------------------------------

fn strings(v: Option<&Json>) -> Vec<String> {
    v.and_then(Json::as_array)
        .map(|a| a.iter().filter_map(|s| s.as_str().map(String::from)).collect())
        .unwrap_or_default()
}

fn text_of(v: &Json, field: &str) -> Cell {
    match v.get(field).and_then(Json::as_str) {
        Some(s) => Cell::Text(s.to_string()),
        None => Cell::Null,
    }
}

fn int_of(v: &Json, field: &str) -> Cell {
    match v.get(field).and_then(Json::as_u64) {
        Some(n) => Cell::Int(u128::from(n)),
        None => Cell::Null,
    }
}

/// Base-unit quantities appear as decimal strings or plain numbers.
fn units_of(v: &Json, field: &str) -> u128 {
    match v.get(field) {
        Some(Json::String(s)) => s.parse().expect("decimal quantity"),
        Some(Json::Number(n)) => u128::from(n.as_u64().expect("non-negative quantity")),
        _ => 0,
    }
}

fn text_list(v: Option<&Json>) -> Cell {
    Cell::List(strings(v).into_iter().map(Cell::Text).collect())
}

fn walk(doc: &Json, root: &Root<'_>, class: &str, attr: &str) -> Vec<Cell> {
    let chain = &doc["chain"];
    // The chain spine is reachable from every root shape.
    match class {
        "Chain" => {
            let c = &chain["chain"];
            return one(match attr {
                "id" => text_of(c, "id"),
                "networks" => text_list(c.get("networks")),
                _ => unreachable!("validated attr"),
            });
        }
        "Network" => {
            let n = &chain["network"];
            return one(match attr {
                "id" => text_of(n, "id"),
                "chainDescriptors" => text_list(n.get("chainDescriptors")),
                _ => unreachable!("validated attr"),
            });
        }
        "ChainDescriptor" => {
            let d = &chain["descriptor"];
            return one(match attr {
                "id" => text_of(d, "id"),
                "consensusType" => text_of(d, "consensusType"),
                _ => unreachable!("validated attr"),
            });
        }
        _ => {}
    }
    let native_decimals = chain["nativeAsset"]["decimals"].as_u64().unwrap_or(0) as u32;
    match root {
        Root::Chain => Vec::new(),
        Root::Block { block, txs, accounts } => {
            walk_block(block, txs, accounts, class, attr, native_decimals)
        }
        Root::Tx(tx) => walk_tx(tx, class, attr, native_decimals),
        Root::Account(account) => walk_account(account, class, attr),
    }
}

fn one(cell: Cell) -> Vec<Cell> {
    vec![cell]
}

fn walk_block(
    block: &Json,
    txs: &[&Json],
    accounts: &[&Json],
    class: &str,
    attr: &str,
    native_decimals: u32,
) -> Vec<Cell> {
    match class {
        "Block" => one(match attr {
            "id" => text_of(block, "id"),
            "descriptor" => text_of(&block["descriptor"], "hash"),
            "status" => text_of(block, "status"),
            "validation" => text_of(&block["validation"], "hashValue"),
            "transactions" => text_list(block.get("transactions")),
            "accounts" => text_list(block.get("accounts")),
            _ => unreachable!("validated attr"),
        }),
        "BlockDescriptor" => {
            let d = &block["descriptor"];
            one(match attr {
                "hash" => text_of(d, "hash"),
                "height" | "timestamp" | "epoch" | "slot" => int_of(d, attr),
                "dagSupport" => Cell::Bool(d["dagSupport"].as_bool().unwrap_or(false)),
                "linkedBlockDescriptor" => text_list(d.get("linkedBlockDescriptor")),
                _ => unreachable!("validated attr"),
            })
        }
        "Status" => one(match attr {
            "value" => text_of(block, "status"),
            _ => unreachable!("validated attr"),
        }),
        "ValidationDescriptor" => {
            let v = &block["validation"];
            one(match attr {
                "hashValue" | "condition" | "input" | "proposer" => text_of(v, attr),
                "attestationCommittee" => Cell::List(
                    committee(v)
                        .iter()
                        .map(|entry| {
                            Cell::List(vec![
                                text_of(&entry["validator"], "id"),
                                Cell::Bool(entry["vote"].as_bool().unwrap_or(false)),
                            ])
                        })
                        .collect(),
                ),
                _ => unreachable!("validated attr"),
            })
        }
        "ValidatorDescriptor" => committee(&block["validation"])
            .iter()
            .map(|entry| {
                let v = &entry["validator"];
                match attr {
                    "id" => text_of(v, "id"),
                    "votes" => int_of(v, "votes"),
                    "signature" => text_of(v, "signature"),
                    _ => unreachable!("validated attr"),
                }
            })
            .collect(),
        "Account" | "AccountDescriptor" => {
            accounts.iter().flat_map(|a| walk_account(a, class, attr)).collect()
        }
        "Data" => accounts.iter().flat_map(|a| walk_account(a, "Data", attr)).collect(),
        "Transaction" | "TransactionDescriptor" | "UTXO" => {
            txs.iter().flat_map(|t| walk_tx(t, class, attr, native_decimals)).collect()
        }
        // Transactions walk before account snapshots.
        "Asset" | "Token" => {
            let mut out: Vec<Cell> =
                txs.iter().flat_map(|t| walk_tx(t, class, attr, native_decimals)).collect();
            for a in accounts {
                out.extend(walk_account(a, class, attr));
            }
            out
        }
        _ => Vec::new(),
    }
}

fn committee(validation: &Json) -> Vec<&Json> {
    validation
        .get("attestationCommittee")
        .and_then(Json::as_array)
        .map(|a| a.iter().collect())
        .unwrap_or_default()
}

fn walk_tx(tx: &Json, class: &str, attr: &str, native_decimals: u32) -> Vec<Cell> {
    let d = &tx["descriptor"];
    match class {
        "Transaction" => one(match attr {
            "id" => text_of(tx, "id"),
            "descriptor" => {
                let from = d.get("fromAddress").and_then(Json::as_str).unwrap_or("null");
                let to = d.get("toAddress").and_then(Json::as_str).unwrap_or("null");
                Cell::Text(format!("{from}->{to}"))
            }
            "utxos" => Cell::List(
                utxos(tx)
                    .iter()
                    .map(|u| {
                        Cell::Text(format!(
                            "{}:{}",
                            u["txId"].as_str().unwrap_or(""),
                            u["outputIndex"].as_u64().unwrap_or(0)
                        ))
                    })
                    .collect(),
            ),
            "blockHash" => text_of(tx, "blockHash"),
            _ => unreachable!("validated attr"),
        }),
        "TransactionDescriptor" => one(match attr {
            "fromAddress" | "toAddress" | "data" => text_of(d, attr),
            "value" => Cell::Amount(units_of(d, "value"), native_decimals),
            "assets" => Cell::List(assets(d).iter().map(|a| text_of(a, "assetId")).collect()),
            "tokens" => Cell::List(tokens(d).iter().map(|t| text_of(t, "contract")).collect()),
            "timestamp" => int_of(d, "timestamp"),
            _ => unreachable!("validated attr"),
        }),
        "UTXO" => utxos(tx)
            .iter()
            .map(|u| match attr {
                "txId" => text_of(u, "txId"),
                "outputIndex" => int_of(u, "outputIndex"),
                "value" => Cell::Amount(units_of(u, "value"), native_decimals),
                "script" => text_of(u, "script"),
                "spent" => Cell::Bool(u["spent"].as_bool().unwrap_or(false)),
                _ => unreachable!("validated attr"),
            })
            .collect(),
        "Asset" => assets(d).iter().map(|a| asset_attr(a, attr)).collect(),
        "Token" => tokens(d).iter().map(|t| token_attr(t, attr)).collect(),
        _ => Vec::new(),
    }
}

fn utxos(tx: &Json) -> Vec<&Json> {
    tx.get("utxos").and_then(Json::as_array).map(|a| a.iter().collect()).unwrap_or_default()
}

fn assets(owner: &Json) -> Vec<&Json> {
    owner.get("assets").and_then(Json::as_array).map(|a| a.iter().collect()).unwrap_or_default()
}

fn tokens(owner: &Json) -> Vec<&Json> {
    owner.get("tokens").and_then(Json::as_array).map(|a| a.iter().collect()).unwrap_or_default()
}

fn asset_attr(a: &Json, attr: &str) -> Cell {
    match attr {
        "assetId" => text_of(a, "assetId"),
        "balance" => {
            Cell::Amount(units_of(a, "balance"), a["decimals"].as_u64().unwrap_or(0) as u32)
        }
        "decimals" => int_of(a, "decimals"),
        _ => unreachable!("validated attr"),
    }
}

fn token_attr(t: &Json, attr: &str) -> Cell {
    match attr {
        "contract" => text_of(t, "contract"),
        "standard" => text_of(t, "standard"),
        "tokenId" => int_of(t, "tokenId"),
        "amount" => Cell::Int(units_of(t, "amount")),
        _ => unreachable!("validated attr"),
    }
}

fn walk_account(account: &Json, class: &str, attr: &str) -> Vec<Cell> {
    match class {
        "Account" => one(match attr {
            "descriptor" => text_of(&account["descriptor"], "address"),
            "assets" => Cell::List(assets(account).iter().map(|a| text_of(a, "assetId")).collect()),
            "tokens" => {
                Cell::List(tokens(account).iter().map(|t| text_of(t, "contract")).collect())
            }
            "data" => Cell::List(data(account).iter().map(|d| text_of(d, "value")).collect()),
            _ => unreachable!("validated attr"),
        }),
        "AccountDescriptor" => {
            let d = &account["descriptor"];
            one(match attr {
                "address" => text_of(d, "address"),
                "isContract" => Cell::Bool(d["isContract"].as_bool().unwrap_or(false)),
                _ => unreachable!("validated attr"),
            })
        }
        "Asset" => assets(account).iter().map(|a| asset_attr(a, attr)).collect(),
        "Token" => tokens(account).iter().map(|t| token_attr(t, attr)).collect(),
        "Data" => data(account)
            .iter()
            .map(|d| match attr {
                "key" | "value" => text_of(d, attr),
                _ => unreachable!("validated attr"),
            })
            .collect(),
        _ => Vec::new(),
    }
}

fn data(account: &Json) -> Vec<&Json> {
    account.get("data").and_then(Json::as_array).map(|a| a.iter().collect()).unwrap_or_default()
}

// ---------------------------------------------------------------------------
// Filters
// ---------------------------------------------------------------------------

/// One filter's judgement of one row.
struct RowVerdict {
    /// Matching cells that were neither Null nor lists.
    testable: usize,
    /// All testable cells satisfied the comparison.
    satisfied: bool,
    /// At least one matching cell was a list (skipped under equality ops).
    saw_list: bool,
}

impl RowVerdict {
    /// A row survives iff it offered a testable cell and none failed.
    fn keeps(&self) -> bool {
        self.testable > 0 && self.satisfied
    }
}

fn filter_label(filter: &FilterSpec) -> String {
    format!("{} {} {}", filter.attr, filter.op.as_str(), filter.value.render())
}

fn row_verdict(
    row: &[Cell],
    keys: &[(String, String)],
    filter: &FilterSpec,
) -> Result<RowVerdict, String> {
    let written = expand_alias(&filter.attr.class_name);
    let target = canonical(written, &filter.attr.attr_name);
    let mut verdict = RowVerdict { testable: 0, satisfied: true, saw_list: false };
    for (i, key) in keys.iter().enumerate() {
        if *key != target {
            continue;
        }
        match &row[i] {
            Cell::Null => {}
            Cell::List(_) => {
                if filter.op.is_ordering() {
                    return Err(format!(
                        "filter '{}': list cell under ordering op",
                        filter_label(filter)
                    ));
                }
                verdict.saw_list = true;
            }
            cell => {
                verdict.testable += 1;
                if !satisfies(cell, filter.op, &filter.value)? {
                    verdict.satisfied = false;
                }
            }
        }
    }
    Ok(verdict)
}

fn apply_filter(
    rows: &mut Vec<Vec<Cell>>,
    warnings: &mut Vec<String>,
    keys: &[(String, String)],
    filter: &FilterSpec,
) -> Result<(), String> {
    let label = filter_label(filter);
    let mut kept = Vec::new();
    let mut warned_skip = false;
    let mut warned_drop = false;
    for row in rows.drain(..) {
        let verdict = row_verdict(&row, keys, filter)?;
        if verdict.saw_list && !warned_skip {
            warned_skip = true;
            warnings.push(format!("filter '{label}': list cells skipped"));
        }
        if verdict.testable == 0 {
            if !warned_drop {
                warned_drop = true;
                warnings.push(format!("filter '{label}': rows without a testable cell dropped"));
            }
            continue;
        }
        if verdict.satisfied {
            kept.push(row);
        }
    }
    *rows = kept;
    Ok(())
}

fn is_hex(s: &str) -> bool {
    s.starts_with("0x") || s.starts_with("0X")
}

fn texts_equal(cell: &str, literal: &str) -> bool {
    if is_hex(cell) && is_hex(literal) {
        cell.eq_ignore_ascii_case(literal)
    } else {
        cell == literal
    }
}

fn satisfies(cell: &Cell, op: CompareOp, literal: &LiteralValue) -> Result<bool, String> {
    if op.is_ordering() {
        let units = match cell {
            Cell::Int(n) => *n,
            Cell::Amount(units, _) => *units,
            _ => return Err("ordering op on a non-numeric cell".to_string()),
        };
        let LiteralValue::Number(m) = literal else {
            return Err("ordering op against a non-number literal".to_string());
        };
        return Ok(match op {
            CompareOp::Lt => units < *m,
            CompareOp::Le => units <= *m,
            CompareOp::Gt => units > *m,
            CompareOp::Ge => units >= *m,
            _ => unreachable!("ordering op"),
        });
    }
    let equal = match (cell, literal) {
        (Cell::Int(n), LiteralValue::Number(m)) => n == m,
        (Cell::Amount(units, _), LiteralValue::Number(m)) => units == m,
        (Cell::Text(s), LiteralValue::Hex(h)) => texts_equal(s, h),
        (Cell::Text(s), LiteralValue::Text(t)) => texts_equal(s, t),
        (Cell::Text(s), LiteralValue::Word(w)) => texts_equal(s, w),
        (Cell::Bool(b), LiteralValue::Word(w)) if w == "true" || w == "false" => {
            *b == (w == "true")
        }
        _ => false,
    };
    Ok(equal == (op == CompareOp::Eq))
}

// ---------------------------------------------------------------------------
// Output formatting
// ---------------------------------------------------------------------------

fn cell_json(cell: &Cell) -> Json {
    match cell {
        Cell::Null => Json::Null,
        Cell::Bool(b) => json!(b),
        Cell::Int(n) => {
            if *n <= u128::from(u64::MAX) {
                json!(*n as u64)
            } else {
                json!(n.to_string())
            }
        }
        Cell::Amount(units, decimals) => json!(amount_string(*units, *decimals)),
        Cell::Text(s) => json!(s),
        Cell::List(items) => Json::Array(items.iter().map(cell_json).collect()),
    }
}

/// Exact `units / 10^decimals` by string arithmetic: pad, split, trim
/// trailing fractional zeros, always keep one fractional digit.
fn amount_string(units: u128, decimals: u32) -> String {
    let digits = units.to_string();
    let d = decimals as usize;
    let padded = if digits.len() <= d {
        format!("{}{digits}", "0".repeat(d - digits.len() + 1))
    } else {
        digits
    };
    let (whole, frac) = padded.split_at(padded.len() - d);
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        format!("{whole}.0")
    } else {
        format!("{whole}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amount_strings_by_string_arithmetic() {
        assert_eq!(amount_string(0, 18), "0.0");
        assert_eq!(amount_string(1_500_000_000_000_000_000, 18), "1.5");
        assert_eq!(amount_string(50_000_000, 8), "0.5");
        assert_eq!(amount_string(1, 18), "0.000000000000000001");
        assert_eq!(amount_string(123, 0), "123.0");
    }
}
