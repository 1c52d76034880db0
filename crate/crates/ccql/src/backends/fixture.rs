//! Fixture-backed chains: one JSON document per chain instance, validated
//! against the model's integrity rules at load time.
//!
//! Document shape (`version` is currently 1):
//!
//! ```json
//! {
//!   "version": 1,
//!   "chain":        { ChainInfo },
//!   "blocks":       [ Block, ... ],
//!   "transactions": [ Transaction, ... ],
//!   "accounts":     [ Account, ... ]
//! }
//! ```
//!
//! A store is a directory of such documents (or a single file). Loading
//! refuses documents that violate referential integrity, uniqueness, DAG
//! rules, value bounds, or validation-shape rules; every violation names
//! the offending entity so fixtures can be repaired from the message.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::backends::profile::address_pattern;
use crate::backends::{normalize_hex, BackendError, BlockRef, ChainBackend};
use crate::model::{Account, Block, ChainInfo, TokenStandard, Transaction};

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("cannot read fixture path {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed fixture document {path}: {detail}")]
    Json { path: PathBuf, detail: String },
    #[error("unsupported fixture version {found} in {path} (expected 1)")]
    Version { path: PathBuf, found: u32 },
    #[error("no chain documents found in {0}")]
    NoChainDocuments(PathBuf),
    #[error("chain '{key}' defined by both {first} and {second}")]
    DuplicateChain { key: String, first: PathBuf, second: PathBuf },
    #[error("invalid fixture document {path}:\n  {}", violations.join("\n  "))]
    Invalid { path: PathBuf, violations: Vec<String> },
}

/// On-disk document. Field names double as the fixture schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureDocument {
    pub version: u32,
    pub chain: ChainInfo,
    #[serde(default)]
    pub blocks: Vec<Block>,
    #[serde(default)]
    pub transactions: Vec<Transaction>,
    #[serde(default)]
    pub accounts: Vec<Account>,
}

/// One loaded, validated, index-ready chain document.
#[derive(Debug)]
pub struct ChainDocument {
    pub info: ChainInfo,
    pub blocks: Vec<Block>,
    pub transactions: Vec<Transaction>,
    pub accounts: Vec<Account>,
    by_height: BTreeMap<u64, usize>,
    by_hash: BTreeMap<String, usize>,
    tx_by_id: BTreeMap<String, usize>,
    account_by_address: BTreeMap<String, usize>,
}

impl ChainDocument {
    fn build(doc: FixtureDocument) -> Self {
        let mut by_height = BTreeMap::new();
        let mut by_hash = BTreeMap::new();
        for (i, block) in doc.blocks.iter().enumerate() {
            by_height.insert(block.descriptor.height, i);
            by_hash.insert(block.descriptor.hash.clone(), i);
        }
        let tx_by_id =
            doc.transactions.iter().enumerate().map(|(i, t)| (t.id.clone(), i)).collect();
        let account_by_address = doc
            .accounts
            .iter()
            .enumerate()
            .map(|(i, a)| (a.descriptor.address.clone(), i))
            .collect();
        ChainDocument {
            info: doc.chain,
            blocks: doc.blocks,
            transactions: doc.transactions,
            accounts: doc.accounts,
            by_height,
            by_hash,
            tx_by_id,
            account_by_address,
        }
    }

    pub fn block_by_hash(&self, hash: &str) -> Option<&Block> {
        self.by_hash.get(&normalize_hex(hash)).map(|&i| &self.blocks[i])
    }

    pub fn block_by_height(&self, height: u64) -> Option<&Block> {
        self.by_height.get(&height).map(|&i| &self.blocks[i])
    }

    pub fn transaction_by_id(&self, id: &str) -> Option<&Transaction> {
        self.tx_by_id.get(&normalize_hex(id)).map(|&i| &self.transactions[i])
    }

    pub fn account_by_address(&self, address: &str) -> Option<&Account> {
        self.account_by_address.get(&normalize_hex(address)).map(|&i| &self.accounts[i])
    }

    pub fn head_height(&self) -> u64 {
        self.by_height.keys().next_back().copied().unwrap_or(0)
    }
}

/// Lowercases every `0x` identifier so lookups and comparisons are
/// case-stable regardless of how fixtures were written.
pub fn normalize_document(doc: &mut FixtureDocument) {
    let norm = |s: &mut String| *s = normalize_hex(s);
    for block in &mut doc.blocks {
        norm(&mut block.id);
        norm(&mut block.descriptor.hash);
        block.descriptor.linked_block_descriptor.iter_mut().for_each(&norm);
        norm(&mut block.validation.hash_value);
        if let Some(c) = block.validation.condition.as_mut() {
            norm(c);
        }
        if let Some(i) = block.validation.input.as_mut() {
            norm(i);
        }
        if let Some(p) = block.validation.proposer.as_mut() {
            norm(p);
        }
        block.transactions.iter_mut().for_each(&norm);
        block.accounts.iter_mut().for_each(&norm);
    }
    for tx in &mut doc.transactions {
        norm(&mut tx.id);
        norm(&mut tx.block_hash);
        let d = &mut tx.descriptor;
        if let Some(f) = d.from_address.as_mut() {
            norm(f);
        }
        if let Some(t) = d.to_address.as_mut() {
            norm(t);
        }
        norm(&mut d.data);
        d.tokens.iter_mut().for_each(|t| norm(&mut t.contract));
        for u in &mut tx.utxos {
            norm(&mut u.tx_id);
            norm(&mut u.script);
        }
    }
    for account in &mut doc.accounts {
        norm(&mut account.descriptor.address);
        account.tokens.iter_mut().for_each(|t| norm(&mut t.contract));
        for d in &mut account.data {
            if let Some(k) = d.key.as_mut() {
                norm(k);
            }
            norm(&mut d.value);
        }
    }
}

/// Integrity rules every chain document must satisfy. Returns one line per
/// violation, each naming the offending entity.
pub fn validate_document(doc: &FixtureDocument) -> Vec<String> {
    let mut v = Vec::new();
    let chain = &doc.chain;
    let key = &chain.key;

    // Spine consistency: the key's segments must be declared.
    if chain.chain.id != key.blockchain {
        v.push(format!("chain id '{}' does not match key '{key}'", chain.chain.id));
    }
    if chain.network.id != key.network {
        v.push(format!("network id '{}' does not match key '{key}'", chain.network.id));
    }
    if chain.descriptor.id != key.chain_descriptor {
        v.push(format!("chain descriptor id '{}' does not match key '{key}'", chain.descriptor.id));
    }
    if !chain.chain.networks.contains(&chain.network.id) {
        v.push(format!(
            "network '{}' is not declared in chain '{}' networks",
            chain.network.id, chain.chain.id
        ));
    }
    if !chain.network.chain_descriptors.contains(&chain.descriptor.id) {
        v.push(format!(
            "chain descriptor '{}' is not declared on network '{}'",
            chain.descriptor.id, chain.network.id
        ));
    }
    if chain.network.chain_descriptors.is_empty() {
        v.push(format!("network '{}' declares no chain descriptors", chain.network.id));
    }

    if doc.blocks.is_empty() {
        v.push(format!("chain '{key}' has no blocks"));
    }

    let mut heights = BTreeMap::new();
    let mut hashes = BTreeMap::new();
    for block in &doc.blocks {
        let id = &block.id;
        if block.id != block.descriptor.hash {
            v.push(format!(
                "block {id}: id must equal descriptor hash '{}'",
                block.descriptor.hash
            ));
        }
        if let Some(prev) = heights.insert(block.descriptor.height, id.clone()) {
            v.push(format!("blocks {prev} and {id} share height {}", block.descriptor.height));
        }
        if let Some(prev) = hashes.insert(block.descriptor.hash.clone(), id.clone()) {
            v.push(format!("blocks {prev} and {id} share hash {}", block.descriptor.hash));
        }
        if block.descriptor.dag_support != chain.dag_support {
            v.push(format!(
                "block {id}: dagSupport {} disagrees with chain dagSupport {}",
                block.descriptor.dag_support, chain.dag_support
            ));
        }
        let linked = block.descriptor.linked_block_descriptor.len();
        if !block.descriptor.dag_support && linked > 1 {
            v.push(format!("block {id}: {linked} linked blocks but chain has no DAG support"));
        }
        if block.descriptor.height == 0 && linked != 0 {
            v.push(format!("block {id}: genesis block must not link previous blocks"));
        }
        // Proof shape: PoW-style condition+input, or PoS-style proposer.
        let val = &block.validation;
        let pow_shaped = val.condition.is_some() && val.input.is_some();
        let pos_shaped = val.proposer.is_some();
        if !pow_shaped && !pos_shaped {
            v.push(format!("block {id}: validation needs condition+input or a proposer"));
        }
        if val.hash_value.is_empty() {
            v.push(format!("block {id}: validation hashValue is empty"));
        }
    }

    let mut tx_ids = BTreeMap::new();
    let mut utxo_keys = BTreeMap::new();
    for tx in &doc.transactions {
        let id = &tx.id;
        if let Some(()) = tx_ids.insert(id.clone(), ()) {
            v.push(format!("duplicate transaction id {id}"));
        }
        match doc.blocks.iter().find(|b| b.descriptor.hash == tx.block_hash) {
            None => v.push(format!(
                "transaction {id}: blockHash {} names no block in this document",
                tx.block_hash
            )),
            Some(block) => {
                if !block.transactions.contains(id) {
                    v.push(format!(
                        "transaction {id}: containing block {} does not list it",
                        block.id
                    ));
                }
                if tx.descriptor.timestamp != block.descriptor.timestamp {
                    v.push(format!(
                        "transaction {id}: timestamp {} differs from block timestamp {}",
                        tx.descriptor.timestamp, block.descriptor.timestamp
                    ));
                }
            }
        }
        for utxo in &tx.utxos {
            if utxo.tx_id != *id {
                v.push(format!(
                    "transaction {id}: UTXO txId {} must reference its creating transaction",
                    utxo.tx_id
                ));
            }
            if let Some(()) = utxo_keys.insert((utxo.tx_id.clone(), utxo.output_index), ()) {
                v.push(format!(
                    "duplicate UTXO {}:{} in transaction {id}",
                    utxo.tx_id, utxo.output_index
                ));
            }
        }
        check_tokens(&tx.descriptor.tokens, &format!("transaction {id}"), &mut v);
        check_asset_decimals(&tx.descriptor.assets, &format!("transaction {id}"), &mut v);
    }

    let pattern = address_pattern(key);
    let mut addresses = BTreeMap::new();
    for account in &doc.accounts {
        let addr = &account.descriptor.address;
        if let Some(()) = addresses.insert(addr.clone(), ()) {
            v.push(format!("duplicate account address {addr}"));
        }
        if !pattern.matches(addr) {
            v.push(format!(
                "account {addr}: address is not {} for chain '{key}'",
                pattern.description
            ));
        }
        if !account.assets.iter().any(|a| a.asset_id == chain.native_asset.asset_id) {
            v.push(format!(
                "account {addr}: missing native asset '{}' entry (zero balances are fine)",
                chain.native_asset.asset_id
            ));
        }
        check_tokens(&account.tokens, &format!("account {addr}"), &mut v);
        check_asset_decimals(&account.assets, &format!("account {addr}"), &mut v);
    }

    // Containment references must resolve inside the document.
    for block in &doc.blocks {
        for tx_id in &block.transactions {
            if !tx_ids.contains_key(tx_id) {
                v.push(format!(
                    "block {}: transaction {tx_id} is not defined in this document",
                    block.id
                ));
            }
        }
        for addr in &block.accounts {
            if !addresses.contains_key(addr) {
                v.push(format!(
                    "block {}: account {addr} is not defined in this document",
                    block.id
                ));
            }
        }
    }

    v
}

fn check_tokens(tokens: &[crate::model::Token], owner: &str, v: &mut Vec<String>) {
    for token in tokens {
        if token.standard == TokenStandard::Erc1155 && token.token_id.is_none() {
            v.push(format!("{owner}: erc1155 token {} requires a tokenId", token.contract));
        }
    }
}

fn check_asset_decimals(assets: &[crate::model::Asset], owner: &str, v: &mut Vec<String>) {
    for asset in assets {
        if asset.decimals > 38 {
            v.push(format!(
                "{owner}: asset {} decimals {} out of range (max 38)",
                asset.asset_id, asset.decimals
            ));
        }
    }
}

/// A set of chain documents, keyed by chain key.
#[derive(Default)]
pub struct FixtureStore {
    chains: BTreeMap<String, Arc<ChainDocument>>,
}

/// Outcome of a non-bailing store check (`ccql fixtures-check`).
#[derive(Debug, Default)]
pub struct StoreCheck {
    pub chains: usize,
    pub blocks: usize,
    pub transactions: usize,
    pub accounts: usize,
    /// Empty when the store is clean.
    pub violations: Vec<String>,
}

impl StoreCheck {
    pub fn summary(&self) -> String {
        format!(
            "{} chains, {} blocks, {} transactions, {} accounts",
            self.chains, self.blocks, self.transactions, self.accounts
        )
    }
}

fn document_paths(path: &Path) -> Result<Vec<PathBuf>, FixtureError> {
    let meta = std::fs::metadata(path)
        .map_err(|source| FixtureError::Io { path: path.to_path_buf(), source })?;
    if meta.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut paths: Vec<PathBuf> = std::fs::read_dir(path)
        .map_err(|source| FixtureError::Io { path: path.to_path_buf(), source })?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    Ok(paths)
}

fn parse_document(path: &Path) -> Result<FixtureDocument, FixtureError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| FixtureError::Io { path: path.to_path_buf(), source })?;
    let mut doc: FixtureDocument = serde_json::from_str(&text)
        .map_err(|e| FixtureError::Json { path: path.to_path_buf(), detail: e.to_string() })?;
    if doc.version != 1 {
        return Err(FixtureError::Version { path: path.to_path_buf(), found: doc.version });
    }
    normalize_document(&mut doc);
    Ok(doc)
}

impl FixtureStore {
    /// Loads a directory of chain documents (or one document file),
    /// refusing the whole store on the first invalid document.
    pub fn open(path: impl AsRef<Path>) -> Result<FixtureStore, FixtureError> {
        let path = path.as_ref();
        let mut store = FixtureStore::default();
        let mut sources: BTreeMap<String, PathBuf> = BTreeMap::new();
        for doc_path in document_paths(path)? {
            let doc = parse_document(&doc_path)?;
            let violations = validate_document(&doc);
            if !violations.is_empty() {
                return Err(FixtureError::Invalid { path: doc_path, violations });
            }
            let key = doc.chain.key.to_string();
            if let Some(first) = sources.get(&key) {
                return Err(FixtureError::DuplicateChain {
                    key,
                    first: first.clone(),
                    second: doc_path,
                });
            }
            sources.insert(key.clone(), doc_path);
            store.chains.insert(key, Arc::new(ChainDocument::build(doc)));
        }
        if store.chains.is_empty() {
            return Err(FixtureError::NoChainDocuments(path.to_path_buf()));
        }
        Ok(store)
    }

    /// Checks every document under `path`, collecting all violations
    /// instead of failing at the first bad document.
    pub fn check(path: impl AsRef<Path>) -> Result<StoreCheck, FixtureError> {
        let path = path.as_ref();
        let mut report = StoreCheck::default();
        let mut seen: BTreeMap<String, PathBuf> = BTreeMap::new();
        let paths = document_paths(path)?;
        if paths.is_empty() {
            report.violations.push(format!("no chain documents found in {}", path.display()));
            return Ok(report);
        }
        for doc_path in paths {
            let name = doc_path.display();
            match parse_document(&doc_path) {
                Err(err) => report.violations.push(err.to_string()),
                Ok(doc) => {
                    let violations = validate_document(&doc);
                    report
                        .violations
                        .extend(violations.into_iter().map(|v| format!("{name}: {v}")));
                    let key = doc.chain.key.to_string();
                    if let Some(first) = seen.get(&key) {
                        report.violations.push(format!(
                            "{name}: chain '{key}' already defined by {}",
                            first.display()
                        ));
                        continue;
                    }
                    seen.insert(key, doc_path.clone());
                    report.chains += 1;
                    report.blocks += doc.blocks.len();
                    report.transactions += doc.transactions.len();
                    report.accounts += doc.accounts.len();
                }
            }
        }
        Ok(report)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.chains.keys().map(String::as_str)
    }

    pub fn document(&self, key: &str) -> Option<&Arc<ChainDocument>> {
        self.chains.get(key)
    }

    pub fn backend(&self, key: &str) -> Option<Arc<dyn ChainBackend>> {
        self.chains.get(key).map(|doc| {
            Arc::new(FixtureChainBackend { doc: Arc::clone(doc) }) as Arc<dyn ChainBackend>
        })
    }
}

/// `ChainBackend` over one immutable, validated document.
pub struct FixtureChainBackend {
    doc: Arc<ChainDocument>,
}

impl FixtureChainBackend {
    pub fn new(doc: Arc<ChainDocument>) -> Self {
        FixtureChainBackend { doc }
    }
}

impl ChainBackend for FixtureChainBackend {
    fn chain_info(&self) -> Result<ChainInfo, BackendError> {
        Ok(self.doc.info.clone())
    }

    fn block(&self, block: &BlockRef) -> Result<Block, BackendError> {
        match block {
            BlockRef::Height(h) => match self.doc.block_by_height(*h) {
                Some(b) => Ok(b.clone()),
                None => {
                    let head = self.doc.head_height();
                    if *h > head {
                        Err(BackendError::BeyondHead { height: *h, head })
                    } else {
                        Err(BackendError::not_found(format!("block at height {h}")))
                    }
                }
            },
            BlockRef::Hash(hash) => self
                .doc
                .block_by_hash(hash)
                .cloned()
                .ok_or_else(|| BackendError::not_found(format!("block {hash}"))),
        }
    }

    fn transaction(&self, id: &str) -> Result<Transaction, BackendError> {
        self.doc
            .transaction_by_id(id)
            .cloned()
            .ok_or_else(|| BackendError::not_found(format!("transaction {id}")))
    }

    fn account(&self, address: &str) -> Result<Account, BackendError> {
        let pattern = address_pattern(&self.doc.info.key);
        if !pattern.matches(address) {
            return Err(BackendError::InvalidAddress {
                address: address.to_string(),
                expected: pattern.description.to_string(),
            });
        }
        self.doc
            .account_by_address(address)
            .cloned()
            .ok_or_else(|| BackendError::not_found(format!("account {address}")))
    }

    fn head_height(&self) -> Result<u64, BackendError> {
        Ok(self.doc.head_height())
    }
}
