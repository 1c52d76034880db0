//! Built-in knowledge about well-known chain deployments: consensus type,
//! native asset and its scale, DAG support, declared networks/descriptors,
//! and address syntax. RPC backends assemble their chain spine from these
//! profiles; fixture documents carry their own spine and are expected to
//! agree for chains that may be served by either backend kind.

use std::sync::OnceLock;

use regex::Regex;

use crate::model::{
    Chain, ChainDescriptor, ChainInfo, ChainKey, ConsensusType, NativeAsset, Network,
};

/// Compiled-on-first-use address syntax check.
pub struct AddressPattern {
    /// Human description used in invalid-address errors.
    pub description: &'static str,
    pattern: &'static str,
    cell: OnceLock<Regex>,
}

impl AddressPattern {
    const fn new(description: &'static str, pattern: &'static str) -> Self {
        AddressPattern { description, pattern, cell: OnceLock::new() }
    }

    pub fn matches(&self, address: &str) -> bool {
        self.cell
            .get_or_init(|| Regex::new(self.pattern).expect("built-in address pattern"))
            .is_match(address)
    }
}

static EVM_ADDRESS: AddressPattern =
    AddressPattern::new("a 20-byte 0x-prefixed hex address", "^0x[0-9a-fA-F]{40}$");
static BTC_ADDRESS: AddressPattern = AddressPattern::new(
    "a base58 or bech32 Bitcoin address",
    "^(bc1[02-9ac-hj-np-z]{8,87}|[13][1-9A-HJ-NP-Za-km-z]{25,34})$",
);
static AVAX_XP_ADDRESS: AddressPattern =
    AddressPattern::new("a bech32 X/P-chain address", "^[XP]-avax1[02-9ac-hj-np-z]{38}$");
static ADA_ADDRESS: AddressPattern = AddressPattern::new(
    "a bech32 Cardano address",
    "^(addr1[02-9ac-hj-np-z]{20,110}|stake1[02-9ac-hj-np-z]{20,60})$",
);
static SOL_ADDRESS: AddressPattern =
    AddressPattern::new("a base58 Solana public key", "^[1-9A-HJ-NP-Za-km-z]{32,44}$");
static ANY_ADDRESS: AddressPattern = AddressPattern::new("a non-empty address", "^\\S+$");

/// Static description of one chain instance.
pub struct ChainProfile {
    pub consensus: ConsensusType,
    pub native_asset: NativeAsset,
    pub dag_support: bool,
    /// All networks this blockchain is known to run.
    pub networks: Vec<String>,
    /// Chain descriptors declared on the addressed network.
    pub network_descriptors: Vec<String>,
    pub address_pattern: &'static AddressPattern,
}

fn asset(id: &str, decimals: u32) -> NativeAsset {
    NativeAsset { asset_id: id.to_string(), decimals }
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// Profile for a known `blockchain:network:chainDescriptor`, or None when
/// the blockchain (or its network/descriptor) is not built in.
pub fn chain_profile(key: &ChainKey) -> Option<ChainProfile> {
    let net = key.network.as_str();
    let desc = key.chain_descriptor.as_str();
    let profile = match key.blockchain.as_str() {
        "eth" => {
            let networks = strings(&["main", "ropsten"]);
            let known = matches!((net, desc), ("main", "1") | ("ropsten", "3"));
            if !known {
                return None;
            }
            ChainProfile {
                consensus: ConsensusType::ProofOfWork,
                native_asset: asset("ETH", 18),
                dag_support: false,
                networks,
                network_descriptors: strings(&[desc]),
                address_pattern: &EVM_ADDRESS,
            }
        }
        "btc" => {
            if (net, desc) != ("main", "1") {
                return None;
            }
            ChainProfile {
                consensus: ConsensusType::ProofOfWork,
                native_asset: asset("BTC", 8),
                dag_support: false,
                networks: strings(&["main"]),
                network_descriptors: strings(&["1"]),
                address_pattern: &BTC_ADDRESS,
            }
        }
        "avax" => {
            if net != "main" || !matches!(desc, "p" | "x" | "c") {
                return None;
            }
            // The platform and exchange chains are DAG-structured; the
            // contract chain is a linear EVM chain.
            let (dag, decimals, pattern): (bool, u32, &'static AddressPattern) = match desc {
                "c" => (false, 18, &EVM_ADDRESS),
                _ => (true, 9, &AVAX_XP_ADDRESS),
            };
            ChainProfile {
                consensus: ConsensusType::ProofOfStake,
                native_asset: asset("AVAX", decimals),
                dag_support: dag,
                networks: strings(&["main"]),
                network_descriptors: strings(&["p", "x", "c"]),
                address_pattern: pattern,
            }
        }
        "ada" => {
            if (net, desc) != ("main", "1") {
                return None;
            }
            ChainProfile {
                consensus: ConsensusType::ProofOfStake,
                native_asset: asset("ADA", 6),
                dag_support: false,
                networks: strings(&["main"]),
                network_descriptors: strings(&["1"]),
                address_pattern: &ADA_ADDRESS,
            }
        }
        "sol" => {
            if (net, desc) != ("main", "1") {
                return None;
            }
            ChainProfile {
                consensus: ConsensusType::ProofOfStake,
                native_asset: asset("SOL", 9),
                dag_support: false,
                networks: strings(&["main"]),
                network_descriptors: strings(&["1"]),
                address_pattern: &SOL_ADDRESS,
            }
        }
        _ => return None,
    };
    Some(profile)
}

/// Address syntax for a chain instance; unknown chains accept any
/// non-empty address.
pub fn address_pattern(key: &ChainKey) -> &'static AddressPattern {
    chain_profile(key).map_or(&ANY_ADDRESS, |p| p.address_pattern)
}

impl ChainProfile {
    /// Assembles the chain spine a backend hands to source bindings.
    pub fn chain_info(&self, key: &ChainKey) -> ChainInfo {
        ChainInfo {
            key: key.clone(),
            chain: Chain { id: key.blockchain.clone(), networks: self.networks.clone() },
            network: Network {
                id: key.network.clone(),
                chain_descriptors: self.network_descriptors.clone(),
            },
            descriptor: ChainDescriptor {
                id: key.chain_descriptor.clone(),
                consensus_type: self.consensus,
            },
            native_asset: self.native_asset.clone(),
            dag_support: self.dag_support,
        }
    }
}

/// Fallback spine for chains without a built-in profile: the key's own
/// segments, flavor-supplied consensus and native scale, no DAG.
pub fn generic_chain_info(
    key: &ChainKey,
    consensus: ConsensusType,
    native_asset: NativeAsset,
) -> ChainInfo {
    ChainInfo {
        key: key.clone(),
        chain: Chain { id: key.blockchain.clone(), networks: vec![key.network.clone()] },
        network: Network {
            id: key.network.clone(),
            chain_descriptors: vec![key.chain_descriptor.clone()],
        },
        descriptor: ChainDescriptor { id: key.chain_descriptor.clone(), consensus_type: consensus },
        native_asset,
        dag_support: false,
    }
}
