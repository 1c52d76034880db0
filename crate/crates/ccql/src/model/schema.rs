//! Schema registry: class names, declared attributes, aliases,
//! identifying attributes, and attribute delegations.
//!
//! `lookup` answers exactly the attributes declared on a class;
//! delegations (e.g. `Block.height` answered by the block's descriptor)
//! live in a separate table so tooling can distinguish a class's own
//! shape from the convenience paths queries may use.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemaError {
    #[error("unknown class '{0}'")]
    UnknownClass(String),
    #[error("ambiguous alias '{alias}' (matches {targets:?})")]
    AmbiguousAlias { alias: String, targets: Vec<String> },
    #[error("unknown attribute '{attr}' on {class}")]
    UnknownAttribute { class: String, attr: String },
    #[error("alias '{alias}' already registered for '{existing}'")]
    DuplicateAlias { alias: String, existing: String },
    #[error("class '{0}' already registered")]
    DuplicateClass(String),
    #[error("'{class}.{attr}' cannot be registered: {reason}")]
    BadRegistration { class: String, attr: String, reason: String },
}

/// Canonical `(class, attribute)` pair an `AttrSpec` resolves to, with the
/// delegation target when the attribute is answered by a child instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttrBinding {
    /// Canonical class name (aliases expanded).
    pub class: String,
    /// Attribute as resolvable on that class (declared or delegated).
    pub attr: String,
    /// `(class, attr)` that actually holds the value, when delegated.
    pub delegated_to: Option<(String, String)>,
}

#[derive(Debug, Clone, Default)]
pub struct SchemaRegistry {
    /// Canonical class -> declared attributes, in declaration order.
    classes: BTreeMap<String, Vec<String>>,
    /// Alias -> canonical class. Canonical names resolve without an entry.
    aliases: BTreeMap<String, String>,
    /// Canonical class -> attributes that identify an instance.
    identifying: BTreeMap<String, Vec<String>>,
    /// (class, attr) -> (target class, target attr).
    delegations: BTreeMap<(String, String), (String, String)>,
}

impl SchemaRegistry {
    /// The built-in integrated model: 16 classes covering chain metadata,
    /// blocks, validation, accounts, assets/tokens/data, transactions,
    /// and UTXOs.
    pub fn standard() -> Self {
        let mut s = SchemaRegistry::default();
        let mut class = |name: &str, attrs: &[&str]| {
            s.add_class(name, attrs).expect("built-in class");
        };

        class("Chain", &["id", "networks"]);
        class("Network", &["id", "chainDescriptors"]);
        class("ChainDescriptor", &["id", "consensusType"]);
        class("Block", &["id", "descriptor", "status", "validation", "transactions", "accounts"]);
        class(
            "BlockDescriptor",
            &[
                "hash",
                "height",
                "timestamp",
                "dagSupport",
                "linkedBlockDescriptor",
                "epoch",
                "slot",
            ],
        );
        class("Status", &["value"]);
        class(
            "ValidationDescriptor",
            &["hashValue", "condition", "input", "proposer", "attestationCommittee"],
        );
        class("ValidatorDescriptor", &["id", "votes", "signature"]);
        class("Account", &["descriptor", "assets", "tokens", "data"]);
        class("AccountDescriptor", &["address", "isContract"]);
        class("Asset", &["assetId", "balance", "decimals"]);
        class("Token", &["contract", "standard", "tokenId", "amount"]);
        class("Data", &["key", "value"]);
        class("Transaction", &["id", "descriptor", "utxos", "blockHash"]);
        class(
            "TransactionDescriptor",
            &["fromAddress", "toAddress", "value", "data", "assets", "tokens", "timestamp"],
        );
        class("UTXO", &["txId", "outputIndex", "value", "script", "spent"]);

        for (alias, target) in [
            ("Net", "Network"),
            ("ChainDesc", "ChainDescriptor"),
            ("BlockDesc", "BlockDescriptor"),
            ("Validation", "ValidationDescriptor"),
            ("Validator", "ValidatorDescriptor"),
            ("Acc", "Account"),
            ("AccDesc", "AccountDescriptor"),
            ("T", "Transaction"),
            ("TDesc", "TransactionDescriptor"),
        ] {
            s.add_alias(alias, target).expect("built-in alias");
        }

        for (class, attrs) in [
            ("Chain", &["id"][..]),
            ("Network", &["id"]),
            ("ChainDescriptor", &["id"]),
            ("Block", &["id"]),
            ("BlockDescriptor", &["hash", "height"]),
            ("Transaction", &["id"]),
            ("AccountDescriptor", &["address"]),
        ] {
            s.set_identifying(class, attrs).expect("built-in identifying attrs");
        }

        for (class, attr, target_class, target_attr) in [
            ("Block", "height", "BlockDescriptor", "height"),
            ("Block", "timestamp", "BlockDescriptor", "timestamp"),
            ("BlockDescriptor", "id", "BlockDescriptor", "hash"),
            ("Transaction", "value", "TransactionDescriptor", "value"),
            ("Transaction", "data", "TransactionDescriptor", "data"),
            ("Transaction", "timestamp", "TransactionDescriptor", "timestamp"),
            ("Transaction", "fromAddress", "TransactionDescriptor", "fromAddress"),
            ("Transaction", "toAddress", "TransactionDescriptor", "toAddress"),
            ("Account", "address", "AccountDescriptor", "address"),
        ] {
            s.add_delegation(class, attr, target_class, target_attr).expect("built-in delegation");
        }

        s
    }

    pub fn add_class(&mut self, name: &str, attrs: &[&str]) -> Result<(), SchemaError> {
        if self.classes.contains_key(name) {
            return Err(SchemaError::DuplicateClass(name.to_string()));
        }
        if let Some(existing) = self.aliases.get(name) {
            return Err(SchemaError::DuplicateAlias {
                alias: name.to_string(),
                existing: existing.clone(),
            });
        }
        self.classes.insert(name.to_string(), attrs.iter().map(|a| a.to_string()).collect());
        Ok(())
    }

    pub fn add_alias(&mut self, alias: &str, target: &str) -> Result<(), SchemaError> {
        if !self.classes.contains_key(target) {
            return Err(SchemaError::UnknownClass(target.to_string()));
        }
        if self.classes.contains_key(alias) {
            return Err(SchemaError::DuplicateAlias {
                alias: alias.to_string(),
                existing: alias.to_string(),
            });
        }
        if let Some(existing) = self.aliases.get(alias) {
            // Registering the same alias for a second class would make it
            // ambiguous; the registry refuses rather than guessing.
            if existing != target {
                return Err(SchemaError::AmbiguousAlias {
                    alias: alias.to_string(),
                    targets: vec![existing.clone(), target.to_string()],
                });
            }
            return Ok(());
        }
        self.aliases.insert(alias.to_string(), target.to_string());
        Ok(())
    }

    pub fn set_identifying(&mut self, class: &str, attrs: &[&str]) -> Result<(), SchemaError> {
        let declared =
            self.classes.get(class).ok_or_else(|| SchemaError::UnknownClass(class.to_string()))?;
        for attr in attrs {
            if !declared.iter().any(|a| a == attr) {
                return Err(SchemaError::BadRegistration {
                    class: class.to_string(),
                    attr: attr.to_string(),
                    reason: "identifying attribute must be declared on the class".into(),
                });
            }
        }
        self.identifying.insert(class.to_string(), attrs.iter().map(|a| a.to_string()).collect());
        Ok(())
    }

    pub fn add_delegation(
        &mut self,
        class: &str,
        attr: &str,
        target_class: &str,
        target_attr: &str,
    ) -> Result<(), SchemaError> {
        let declared =
            self.classes.get(class).ok_or_else(|| SchemaError::UnknownClass(class.to_string()))?;
        let target_declared = self
            .classes
            .get(target_class)
            .ok_or_else(|| SchemaError::UnknownClass(target_class.to_string()))?;
        if !target_declared.iter().any(|a| a == target_attr) {
            return Err(SchemaError::UnknownAttribute {
                class: target_class.to_string(),
                attr: target_attr.to_string(),
            });
        }
        // A delegation must not shadow a declared attribute, except the
        // self-alias case (same class, different attr, e.g. id -> hash).
        if declared.iter().any(|a| a == attr) {
            return Err(SchemaError::BadRegistration {
                class: class.to_string(),
                attr: attr.to_string(),
                reason: "attribute is already declared on the class".into(),
            });
        }
        self.delegations.insert(
            (class.to_string(), attr.to_string()),
            (target_class.to_string(), target_attr.to_string()),
        );
        Ok(())
    }

    /// Declared attributes of a canonical class, or None for unknown names.
    /// Aliases are not expanded here; resolve them first.
    pub fn lookup(&self, class: &str) -> Option<&[String]> {
        self.classes.get(class).map(Vec::as_slice)
    }

    /// Expands aliases to the canonical class name.
    pub fn resolve_class(&self, name: &str) -> Result<&str, SchemaError> {
        if let Some((canonical, _)) = self.classes.get_key_value(name) {
            return Ok(canonical);
        }
        if let Some(target) = self.aliases.get(name) {
            return Ok(target);
        }
        Err(SchemaError::UnknownClass(name.to_string()))
    }

    /// Resolves `Class.attr` as written to its canonical binding, following
    /// aliases and the delegation table.
    pub fn resolve_attr(&self, class_name: &str, attr: &str) -> Result<AttrBinding, SchemaError> {
        let class = self.resolve_class(class_name)?.to_string();
        let declared = self.classes.get(&class).expect("resolved class is registered");
        if declared.iter().any(|a| a == attr) {
            return Ok(AttrBinding { class, attr: attr.to_string(), delegated_to: None });
        }
        if let Some(target) = self.delegations.get(&(class.clone(), attr.to_string())) {
            return Ok(AttrBinding {
                class,
                attr: attr.to_string(),
                delegated_to: Some(target.clone()),
            });
        }
        Err(SchemaError::UnknownAttribute { class, attr: attr.to_string() })
    }

    pub fn identifying(&self, class: &str) -> &[String] {
        self.identifying.get(class).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn class_names(&self) -> impl Iterator<Item = &str> {
        self.classes.keys().map(String::as_str)
    }
}
