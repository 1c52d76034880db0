//! Attribute navigation over materialized source instances.
//!
//! A resolved source is one of four root shapes (chain, block, transaction,
//! account), each carrying its chain spine (`ChainInfo`). `navigate`
//! collects every instance of a class reachable from the root in a fixed
//! pre-order walk and reads one attribute off each, so results are
//! deterministic for identical inputs.
//!
//! Chain/Network/ChainDescriptor are reachable from every root: queries
//! may always combine entity attributes with chain metadata. Entity
//! classes are only reachable where the containment edges exist; an empty
//! collection is how "unreachable on this source" is represented.

use crate::model::types::{
    Account, AccountDescriptor, Asset, Block, BlockDescriptor, ChainInfo, Data, Status, Token,
    Transaction, TransactionDescriptor, Utxo, ValidationDescriptor, ValidatorDescriptor,
};
use crate::model::value::Value;

/// A materialized source binding: the addressed entity plus chain context.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceInstance {
    Chain(ChainInfo),
    Block(BlockNode),
    Transaction(TxNode),
    Account(AccountNode),
}

/// Block with its contained transactions and account snapshots resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockNode {
    pub info: ChainInfo,
    pub block: Block,
    /// In `block.transactions` order.
    pub transactions: Vec<Transaction>,
    /// In `block.accounts` order.
    pub accounts: Vec<Account>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TxNode {
    pub info: ChainInfo,
    pub transaction: Transaction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccountNode {
    pub info: ChainInfo,
    pub account: Account,
}

impl SourceInstance {
    pub fn info(&self) -> &ChainInfo {
        match self {
            SourceInstance::Chain(info) => info,
            SourceInstance::Block(b) => &b.info,
            SourceInstance::Transaction(t) => &t.info,
            SourceInstance::Account(a) => &a.info,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SourceInstance::Chain(_) => "chain",
            SourceInstance::Block(_) => "block",
            SourceInstance::Transaction(_) => "transaction",
            SourceInstance::Account(_) => "account",
        }
    }
}

/// Reference to one collected instance.
enum InstanceRef<'a> {
    Chain(&'a crate::model::types::Chain),
    Network(&'a crate::model::types::Network),
    ChainDescriptor(&'a crate::model::types::ChainDescriptor),
    Block(&'a Block),
    BlockDescriptor(&'a BlockDescriptor),
    Status(Status),
    Validation(&'a ValidationDescriptor),
    Validator(&'a ValidatorDescriptor),
    Account(&'a Account),
    AccountDescriptor(&'a AccountDescriptor),
    Asset(&'a Asset),
    Token(&'a Token),
    Data(&'a Data),
    Transaction(&'a Transaction),
    TransactionDescriptor(&'a TransactionDescriptor),
    Utxo(&'a Utxo),
}

/// Collects all values of `class.attr` reachable from `root`, one per
/// collected instance, in walk order. Empty when the class is unreachable
/// from this root shape (or has no instances on it).
pub fn navigate(root: &SourceInstance, class: &str, attr: &str) -> Vec<Value> {
    collect(root, class).into_iter().filter_map(|inst| attr_of(&inst, attr, root.info())).collect()
}

fn collect<'a>(root: &'a SourceInstance, class: &str) -> Vec<InstanceRef<'a>> {
    let info = root.info();
    // The chain spine is shared by all root shapes.
    match class {
        "Chain" => return vec![InstanceRef::Chain(&info.chain)],
        "Network" => return vec![InstanceRef::Network(&info.network)],
        "ChainDescriptor" => return vec![InstanceRef::ChainDescriptor(&info.descriptor)],
        _ => {}
    }
    match root {
        SourceInstance::Chain(_) => Vec::new(),
        SourceInstance::Block(node) => collect_from_block(node, class),
        SourceInstance::Transaction(node) => collect_from_transaction(&node.transaction, class),
        SourceInstance::Account(node) => collect_from_account(&node.account, class),
    }
}

fn collect_from_block<'a>(node: &'a BlockNode, class: &str) -> Vec<InstanceRef<'a>> {
    let block = &node.block;
    match class {
        "Block" => vec![InstanceRef::Block(block)],
        "BlockDescriptor" => vec![InstanceRef::BlockDescriptor(&block.descriptor)],
        "Status" => vec![InstanceRef::Status(block.status)],
        "ValidationDescriptor" => vec![InstanceRef::Validation(&block.validation)],
        "ValidatorDescriptor" => block
            .validation
            .attestation_committee
            .iter()
            .map(|entry| InstanceRef::Validator(&entry.validator))
            .collect(),
        "Account" => node.accounts.iter().map(InstanceRef::Account).collect(),
        "AccountDescriptor" => {
            node.accounts.iter().map(|a| InstanceRef::AccountDescriptor(&a.descriptor)).collect()
        }
        "Data" => node.accounts.iter().flat_map(|a| a.data.iter().map(InstanceRef::Data)).collect(),
        // Transactions walk before account snapshots, matching block layout.
        "Transaction" | "TransactionDescriptor" | "UTXO" => {
            node.transactions.iter().flat_map(|tx| collect_from_transaction(tx, class)).collect()
        }
        "Asset" | "Token" => {
            let mut out: Vec<InstanceRef<'a>> = node
                .transactions
                .iter()
                .flat_map(|tx| collect_from_transaction(tx, class))
                .collect();
            for account in &node.accounts {
                out.extend(collect_from_account(account, class));
            }
            out
        }
        _ => Vec::new(),
    }
}

fn collect_from_transaction<'a>(tx: &'a Transaction, class: &str) -> Vec<InstanceRef<'a>> {
    match class {
        "Transaction" => vec![InstanceRef::Transaction(tx)],
        "TransactionDescriptor" => vec![InstanceRef::TransactionDescriptor(&tx.descriptor)],
        "UTXO" => tx.utxos.iter().map(InstanceRef::Utxo).collect(),
        "Asset" => tx.descriptor.assets.iter().map(InstanceRef::Asset).collect(),
        "Token" => tx.descriptor.tokens.iter().map(InstanceRef::Token).collect(),
        _ => Vec::new(),
    }
}

fn collect_from_account<'a>(account: &'a Account, class: &str) -> Vec<InstanceRef<'a>> {
    match class {
        "Account" => vec![InstanceRef::Account(account)],
        "AccountDescriptor" => vec![InstanceRef::AccountDescriptor(&account.descriptor)],
        "Asset" => account.assets.iter().map(InstanceRef::Asset).collect(),
        "Token" => account.tokens.iter().map(InstanceRef::Token).collect(),
        "Data" => account.data.iter().map(InstanceRef::Data).collect(),
        _ => Vec::new(),
    }
}

fn text(s: &str) -> Value {
    Value::Text(s.to_string())
}

fn opt_text(s: &Option<String>) -> Value {
    s.as_ref().map_or(Value::Null, |v| text(v))
}

fn opt_int(v: &Option<u64>) -> Value {
    v.map_or(Value::Null, |n| Value::Int(u128::from(n)))
}

/// Compact scalar stand-in for a referenced instance (used when a query
/// projects a reference-valued attribute like `Block.validation`).
fn tx_descriptor_summary(d: &TransactionDescriptor) -> String {
    let from = d.from_address.as_deref().unwrap_or("null");
    let to = d.to_address.as_deref().unwrap_or("null");
    format!("{from}->{to}")
}

fn utxo_summary(u: &Utxo) -> String {
    format!("{}:{}", u.tx_id, u.output_index)
}

/// Reads one attribute off one instance. Delegated attributes (e.g.
/// `Block.height`) are answered inline by following the containment edge;
/// unset optional attributes produce `Null`; unknown attributes produce
/// nothing (validation rejects them before navigation).
fn attr_of(inst: &InstanceRef<'_>, attr: &str, info: &ChainInfo) -> Option<Value> {
    let native_decimals = info.native_asset.decimals;
    let value = match inst {
        InstanceRef::Chain(c) => match attr {
            "id" => text(&c.id),
            "networks" => Value::List(c.networks.iter().map(|n| text(n)).collect()),
            _ => return None,
        },
        InstanceRef::Network(n) => match attr {
            "id" => text(&n.id),
            "chainDescriptors" => {
                Value::List(n.chain_descriptors.iter().map(|d| text(d)).collect())
            }
            _ => return None,
        },
        InstanceRef::ChainDescriptor(d) => match attr {
            "id" => text(&d.id),
            "consensusType" => text(d.consensus_type.as_str()),
            _ => return None,
        },
        InstanceRef::Block(b) => match attr {
            "id" => text(&b.id),
            "descriptor" => text(&b.descriptor.hash),
            "status" => text(b.status.as_str()),
            "validation" => text(&b.validation.hash_value),
            "transactions" => Value::List(b.transactions.iter().map(|t| text(t)).collect()),
            "accounts" => Value::List(b.accounts.iter().map(|a| text(a)).collect()),
            // Delegated to the descriptor.
            "height" => Value::Int(u128::from(b.descriptor.height)),
            "timestamp" => Value::Int(u128::from(b.descriptor.timestamp)),
            _ => return None,
        },
        InstanceRef::BlockDescriptor(d) => match attr {
            "hash" | "id" => text(&d.hash),
            "height" => Value::Int(u128::from(d.height)),
            "timestamp" => Value::Int(u128::from(d.timestamp)),
            "dagSupport" => Value::Bool(d.dag_support),
            "linkedBlockDescriptor" => {
                Value::List(d.linked_block_descriptor.iter().map(|h| text(h)).collect())
            }
            "epoch" => opt_int(&d.epoch),
            "slot" => opt_int(&d.slot),
            _ => return None,
        },
        InstanceRef::Status(s) => match attr {
            "value" => text(s.as_str()),
            _ => return None,
        },
        InstanceRef::Validation(v) => match attr {
            "hashValue" => text(&v.hash_value),
            "condition" => opt_text(&v.condition),
            "input" => opt_text(&v.input),
            "proposer" => opt_text(&v.proposer),
            "attestationCommittee" => Value::List(
                v.attestation_committee
                    .iter()
                    .map(|entry| {
                        Value::List(vec![text(&entry.validator.id), Value::Bool(entry.vote)])
                    })
                    .collect(),
            ),
            _ => return None,
        },
        InstanceRef::Validator(v) => match attr {
            "id" => text(&v.id),
            "votes" => Value::Int(u128::from(v.votes)),
            "signature" => text(&v.signature),
            _ => return None,
        },
        InstanceRef::Account(a) => match attr {
            "descriptor" | "address" => text(&a.descriptor.address),
            "assets" => Value::List(a.assets.iter().map(|x| text(&x.asset_id)).collect()),
            "tokens" => Value::List(a.tokens.iter().map(|t| text(&t.contract)).collect()),
            "data" => Value::List(a.data.iter().map(|d| text(&d.value)).collect()),
            _ => return None,
        },
        InstanceRef::AccountDescriptor(d) => match attr {
            "address" => text(&d.address),
            "isContract" => Value::Bool(d.is_contract),
            _ => return None,
        },
        InstanceRef::Asset(a) => match attr {
            "assetId" => text(&a.asset_id),
            "balance" => Value::Amount { units: a.balance, decimals: a.decimals },
            "decimals" => Value::Int(u128::from(a.decimals)),
            _ => return None,
        },
        InstanceRef::Token(t) => match attr {
            "contract" => text(&t.contract),
            "standard" => text(t.standard.as_str()),
            "tokenId" => opt_int(&t.token_id),
            "amount" => Value::Int(t.amount),
            _ => return None,
        },
        InstanceRef::Data(d) => match attr {
            "key" => opt_text(&d.key),
            "value" => text(&d.value),
            _ => return None,
        },
        InstanceRef::Transaction(t) => match attr {
            "id" => text(&t.id),
            "descriptor" => Value::Text(tx_descriptor_summary(&t.descriptor)),
            "utxos" => Value::List(t.utxos.iter().map(|u| Value::Text(utxo_summary(u))).collect()),
            "blockHash" => text(&t.block_hash),
            // Delegated to the descriptor.
            "value" => Value::Amount { units: t.descriptor.value, decimals: native_decimals },
            "data" => text(&t.descriptor.data),
            "timestamp" => Value::Int(u128::from(t.descriptor.timestamp)),
            "fromAddress" => opt_text(&t.descriptor.from_address),
            "toAddress" => opt_text(&t.descriptor.to_address),
            _ => return None,
        },
        InstanceRef::TransactionDescriptor(d) => match attr {
            "fromAddress" => opt_text(&d.from_address),
            "toAddress" => opt_text(&d.to_address),
            "value" => Value::Amount { units: d.value, decimals: native_decimals },
            "data" => text(&d.data),
            "assets" => Value::List(d.assets.iter().map(|a| text(&a.asset_id)).collect()),
            "tokens" => Value::List(d.tokens.iter().map(|t| text(&t.contract)).collect()),
            "timestamp" => Value::Int(u128::from(d.timestamp)),
            _ => return None,
        },
        InstanceRef::Utxo(u) => match attr {
            "txId" => text(&u.tx_id),
            "outputIndex" => Value::Int(u128::from(u.output_index)),
            "value" => Value::Amount { units: u.value, decimals: native_decimals },
            "script" => text(&u.script),
            "spent" => Value::Bool(u.spent),
            _ => return None,
        },
    };
    Some(value)
}
