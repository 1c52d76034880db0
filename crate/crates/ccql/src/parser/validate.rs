//! Schema- and catalog-aware statement validation.
//!
//! Validation resolves every `Class.attr` (queried and filtered) against
//! the schema registry, expanding aliases and checking delegations, and
//! verifies each source names a known blockchain instance. All problems
//! are reported together, each anchored to the offending span.
//!
//! Entity-reference kinds need no separate consistency check here: the
//! parser derives the kind from the reference's syntax, so they cannot
//! disagree.

use crate::diag::Diagnostic;
use crate::model::{AttrBinding, SchemaRegistry};
use crate::parser::ast::QueryStatement;

/// The chain instances a statement may address, derived from the set of
/// configured backends.
#[derive(Debug, Clone, Default)]
pub struct ChainCatalog {
    blockchains: std::collections::BTreeSet<String>,
    keys: std::collections::BTreeSet<String>,
}

impl ChainCatalog {
    /// Builds from `blockchain:network:chainDescriptor` keys.
    pub fn from_keys<I, S>(keys: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut catalog = ChainCatalog::default();
        for key in keys {
            let key = key.as_ref();
            if let Some((blockchain, _)) = key.split_once(':') {
                catalog.blockchains.insert(blockchain.to_string());
            }
            catalog.keys.insert(key.to_string());
        }
        catalog
    }

    pub fn has_blockchain(&self, id: &str) -> bool {
        self.blockchains.contains(id)
    }

    pub fn has_key(&self, key: &str) -> bool {
        self.keys.contains(key)
    }
}

/// A statement whose names all resolved: canonical attribute bindings in
/// clause order, parallel to the AST's `query_attrs` and `filters`.
#[derive(Debug, Clone)]
pub struct ValidatedStatement {
    pub statement: QueryStatement,
    pub query_attrs: Vec<AttrBinding>,
    pub filter_attrs: Vec<AttrBinding>,
}

/// Alias used in re-exports; the canonical binding type lives in the model.
pub type ResolvedAttr = AttrBinding;

pub fn validate_statement(
    statement: &QueryStatement,
    schema: &SchemaRegistry,
    catalog: &ChainCatalog,
) -> Result<ValidatedStatement, Vec<Diagnostic>> {
    let mut diagnostics = Vec::new();
    let mut query_attrs = Vec::new();
    let mut filter_attrs = Vec::new();

    for attr in &statement.query_attrs {
        match schema.resolve_attr(&attr.class_name, &attr.attr_name) {
            Ok(binding) => query_attrs.push(binding),
            Err(err) => diagnostics.push(Diagnostic::error(err.to_string(), attr.span)),
        }
    }

    for source in &statement.sources {
        if !catalog.has_blockchain(&source.blockchain) {
            diagnostics.push(Diagnostic::error(
                format!("unknown chain instance '{}'", source.blockchain),
                source.span,
            ));
        }
    }

    for filter in &statement.filters {
        match schema.resolve_attr(&filter.attr.class_name, &filter.attr.attr_name) {
            Ok(binding) => filter_attrs.push(binding),
            Err(err) => diagnostics.push(Diagnostic::error(err.to_string(), filter.attr.span)),
        }
    }

    if diagnostics.is_empty() {
        Ok(ValidatedStatement { statement: statement.clone(), query_attrs, filter_attrs })
    } else {
        Err(diagnostics)
    }
}
