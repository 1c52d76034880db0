//! The integrated blockchain data model.
//!
//! One set of types covers account-model and UTXO-model chains: a `Block`
//! carries transactions and (where the chain has them) account snapshots,
//! a `Transaction` carries a descriptor with value/data plus any UTXOs it
//! created, and chain-level metadata hangs off `ChainInfo`.
//!
//! These structs double as the fixture document schema: field names
//! serialize in camelCase and unknown fields are rejected, so a typo in a
//! fixture fails loudly at load time. Monetary quantities are `u128` base
//! units serialized as decimal strings (never floats; negatives rejected).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// `blockchain:network:chainDescriptor` triple identifying one chain
/// instance, e.g. `eth:main:1` or `avax:main:c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainKey {
    pub blockchain: String,
    pub network: String,
    pub chain_descriptor: String,
}

impl ChainKey {
    pub fn new(
        blockchain: impl Into<String>,
        network: impl Into<String>,
        chain_descriptor: impl Into<String>,
    ) -> Self {
        ChainKey {
            blockchain: blockchain.into(),
            network: network.into(),
            chain_descriptor: chain_descriptor.into(),
        }
    }
}

impl fmt::Display for ChainKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.blockchain, self.network, self.chain_descriptor)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid chain key '{0}': expected 'blockchain:network:chainDescriptor'")]
pub struct ChainKeyError(pub String);

impl FromStr for ChainKey {
    type Err = ChainKeyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 || parts.iter().any(|p| p.is_empty()) {
            return Err(ChainKeyError(s.to_string()));
        }
        Ok(ChainKey::new(parts[0], parts[1], parts[2]))
    }
}

impl Serialize for ChainKey {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ChainKey {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde for `u128` base-unit quantities: decimal strings on the wire
/// (plain numbers also accepted), negatives and fractions rejected.
pub mod amount_serde {
    use serde::de::{Error, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(value: &u128, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    struct AmountVisitor;

    impl Visitor<'_> for AmountVisitor {
        type Value = u128;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("a non-negative integer quantity as decimal string or number")
        }

        fn visit_str<E: Error>(self, v: &str) -> Result<u128, E> {
            if v.starts_with('-') {
                return Err(E::custom(format!("quantity '{v}' must not be negative")));
            }
            v.parse().map_err(|_| E::custom(format!("quantity '{v}' is not a valid integer")))
        }

        fn visit_u64<E: Error>(self, v: u64) -> Result<u128, E> {
            Ok(u128::from(v))
        }

        fn visit_i64<E: Error>(self, v: i64) -> Result<u128, E> {
            u128::try_from(v).map_err(|_| E::custom(format!("quantity '{v}' must not be negative")))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<u128, D::Error> {
        deserializer.deserialize_any(AmountVisitor)
    }
}

// ---------------------------------------------------------------------------
// Chain-level metadata
// ---------------------------------------------------------------------------

/// A blockchain deployment, e.g. `eth`, with its known network instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Chain {
    pub id: String,
    pub networks: Vec<String>,
}

/// One network of a chain (main, test, ...) and the chain descriptors it
/// runs; most chains have exactly one, Avalanche's mainnet runs p/x/c.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Network {
    pub id: String,
    pub chain_descriptors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ChainDescriptor {
    pub id: String,
    pub consensus_type: ConsensusType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConsensusType {
    ProofOfWork,
    ProofOfStake,
    ProofOfAuthority,
}

impl ConsensusType {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConsensusType::ProofOfWork => "proof-of-work",
            ConsensusType::ProofOfStake => "proof-of-stake",
            ConsensusType::ProofOfAuthority => "proof-of-authority",
        }
    }
}

/// The chain's base currency and its display scale.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct NativeAsset {
    pub asset_id: String,
    pub decimals: u32,
}

/// Everything a source binding knows about its chain: the addressed
/// descriptor plus the chain/network context it sits in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ChainInfo {
    pub key: ChainKey,
    pub chain: Chain,
    pub network: Network,
    pub descriptor: ChainDescriptor,
    pub native_asset: NativeAsset,
    pub dag_support: bool,
}

// ---------------------------------------------------------------------------
// Blocks
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Block {
    /// Equals `descriptor.hash`; blocks are identified by hash.
    pub id: String,
    pub descriptor: BlockDescriptor,
    pub status: Status,
    pub validation: ValidationDescriptor,
    /// Ids of transactions contained in the block, in block order.
    #[serde(default)]
    pub transactions: Vec<String>,
    /// Addresses of accounts touched by the block (account-model chains).
    #[serde(default)]
    pub accounts: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BlockDescriptor {
    pub hash: String,
    pub height: u64,
    /// Unix seconds.
    pub timestamp: u64,
    /// True on DAG-structured chains where a block may link several parents.
    pub dag_support: bool,
    /// Parent hashes: empty for genesis, one for linear chains, possibly
    /// several when `dagSupport` is true.
    #[serde(default)]
    pub linked_block_descriptor: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epoch: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slot: Option<u64>,
}

/// Where a block stands relative to consensus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Irreversibly settled.
    Final,
    /// On the consensus chain, possibly still reorganizable.
    Main,
    /// Mined but abandoned by consensus.
    Orphan,
    /// Referenced as an uncle/ommer without being on the main chain.
    Ommer,
    /// Known but not yet included in consensus.
    Pending,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Final => "final",
            Status::Main => "main",
            Status::Orphan => "orphan",
            Status::Ommer => "ommer",
            Status::Pending => "pending",
        }
    }
}

/// Proof data attached to a block: PoW-style chains carry the condition
/// (target/bits) and input (nonce), PoS-style chains carry the proposer
/// and optionally the attesting committee.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ValidationDescriptor {
    /// The hash consensus validated, normally the block hash.
    pub hash_value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proposer: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attestation_committee: Vec<CommitteeVote>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CommitteeVote {
    pub validator: ValidatorDescriptor,
    pub vote: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ValidatorDescriptor {
    pub id: String,
    /// Voting weight (stake-derived on PoS chains).
    pub votes: u64,
    pub signature: String,
}

// ---------------------------------------------------------------------------
// Accounts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Account {
    pub descriptor: AccountDescriptor,
    #[serde(default)]
    pub assets: Vec<Asset>,
    #[serde(default)]
    pub tokens: Vec<Token>,
    #[serde(default)]
    pub data: Vec<Data>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct AccountDescriptor {
    pub address: String,
    pub is_contract: bool,
}

/// Native or chain-issued asset holding. The native balance is always
/// present on account snapshots, possibly zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Asset {
    pub asset_id: String,
    #[serde(with = "amount_serde")]
    pub balance: u128,
    pub decimals: u32,
}

/// Contract-managed token holding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Token {
    pub contract: String,
    pub standard: TokenStandard,
    /// Required when `standard` is `erc1155` (multi-token contracts).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub token_id: Option<u64>,
    #[serde(with = "amount_serde")]
    pub amount: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenStandard {
    Erc20,
    Erc721,
    Erc1155,
    Native,
}

impl TokenStandard {
    pub fn as_str(&self) -> &'static str {
        match self {
            TokenStandard::Erc20 => "erc20",
            TokenStandard::Erc721 => "erc721",
            TokenStandard::Erc1155 => "erc1155",
            TokenStandard::Native => "native",
        }
    }
}

/// Keyed or raw data attached to an account (contract storage slots,
/// datum entries, ...). `value` is `0x`-prefixed hex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Data {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<String>,
    pub value: String,
}

// ---------------------------------------------------------------------------
// Transactions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Transaction {
    pub id: String,
    pub descriptor: TransactionDescriptor,
    /// Outputs created by this transaction (UTXO-model chains).
    #[serde(default)]
    pub utxos: Vec<Utxo>,
    /// Hash of the containing block.
    pub block_hash: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TransactionDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from_address: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to_address: Option<String>,
    /// Transferred native value in base units (wei, satoshi, ...).
    #[serde(with = "amount_serde")]
    pub value: u128,
    /// Call data / payload as `0x`-prefixed hex ("0x" when empty).
    pub data: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assets: Vec<Asset>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tokens: Vec<Token>,
    /// Copied from the containing block's timestamp.
    pub timestamp: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Utxo {
    /// Id of the transaction that created the output.
    pub tx_id: String,
    pub output_index: u32,
    #[serde(with = "amount_serde")]
    pub value: u128,
    /// Locking script / output script as `0x`-prefixed hex.
    pub script: String,
    pub spent: bool,
}
