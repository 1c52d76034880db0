//! Source resolution: each S-clause entry becomes a bound chain backend
//! plus the root instances the query projects from.
//!
//! * no entity: the chain spine itself is the root
//! * height: the block at that height
//! * hash: the block with that hash, else the transaction with that id
//!   (heights cannot collide with hashes, but a hash is a block or a
//!   transaction depending on what the chain knows)
//! * anything else: an account address
//!
//! Block roots are fully materialized: every transaction and account the
//! block lists is fetched up front, so projection never touches a backend.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::backends::{BackendError, BlockRef, ChainBackend};
use crate::model::{AccountNode, Block, BlockNode, ChainInfo, SourceInstance, TxNode};
use crate::parser::{EntityRef, QueryStatement, SourceSpec};

use super::{EngineError, Stage};

/// One resolved S-clause entry.
#[derive(Debug, Clone)]
pub struct SourceBinding {
    /// 1-based position in the S clause.
    pub index: usize,
    /// `blockchain:network:chainDescriptor`.
    pub key: String,
    /// Root instances this source contributes; rows take one root per
    /// source (cartesian across sources).
    pub roots: Vec<SourceInstance>,
}

pub fn resolve_sources(
    statement: &QueryStatement,
    backends: &BTreeMap<String, Arc<dyn ChainBackend>>,
) -> Result<Vec<SourceBinding>, EngineError> {
    let mut bindings = Vec::with_capacity(statement.sources.len());
    for (i, source) in statement.sources.iter().enumerate() {
        let index = i + 1;
        let key = source.chain_key();
        let backend = backends.get(&key).ok_or_else(|| EngineError {
            stage: Stage::Resolve,
            message: format!("source {index}: no backend configured for chain '{key}'"),
            diagnostics: Vec::new(),
        })?;
        let roots = resolve_entity(source, backend.as_ref()).map_err(|detail| EngineError {
            stage: Stage::Resolve,
            message: format!("source {index} ({key}): {detail}"),
            diagnostics: Vec::new(),
        })?;
        bindings.push(SourceBinding { index, key, roots });
    }
    Ok(bindings)
}

fn resolve_entity(
    source: &SourceSpec,
    backend: &dyn ChainBackend,
) -> Result<Vec<SourceInstance>, String> {
    let info = backend.chain_info().map_err(|e| e.to_string())?;
    let root = match &source.entity {
        None => SourceInstance::Chain(info),
        Some(EntityRef::Height(height)) => {
            let block = backend.block(&BlockRef::Height(*height)).map_err(|e| e.to_string())?;
            SourceInstance::Block(materialize_block(backend, info, block)?)
        }
        Some(EntityRef::Hash(hash)) => match backend.block(&BlockRef::Hash(hash.clone())) {
            Ok(block) => SourceInstance::Block(materialize_block(backend, info, block)?),
            Err(BackendError::NotFound { .. }) => match backend.transaction(hash) {
                Ok(tx) => SourceInstance::Transaction(TxNode { info, transaction: tx }),
                Err(BackendError::NotFound { .. }) => {
                    return Err(format!("no block or transaction with hash {hash}"))
                }
                Err(e) => return Err(e.to_string()),
            },
            Err(e) => return Err(e.to_string()),
        },
        Some(EntityRef::Address(address)) => {
            let account = backend.account(address).map_err(|e| e.to_string())?;
            SourceInstance::Account(AccountNode { info, account })
        }
    };
    Ok(vec![root])
}

/// Fetches everything the block lists. A listed entity the backend cannot
/// return is a hard error: the block names it, so its absence means the
/// backend is inconsistent, not that the data is optional.
fn materialize_block(
    backend: &dyn ChainBackend,
    info: ChainInfo,
    block: Block,
) -> Result<BlockNode, String> {
    let mut transactions = Vec::with_capacity(block.transactions.len());
    for id in &block.transactions {
        let tx = backend
            .transaction(id)
            .map_err(|e| format!("block {} lists transaction {id}: {e}", block.id))?;
        transactions.push(tx);
    }
    let mut accounts = Vec::with_capacity(block.accounts.len());
    for address in &block.accounts {
        let account = backend
            .account(address)
            .map_err(|e| format!("block {} lists account {address}: {e}", block.id))?;
        accounts.push(account);
    }
    Ok(BlockNode { info, block, transactions, accounts })
}
