//! Statement AST and canonical rendering.
//!
//! Structural equality (`PartialEq`) ignores spans, so a statement parsed
//! from arbitrary whitespace compares equal to its canonical re-rendering.
//! Hex literals and entity references keep their original spelling; case
//! normalization happens at data-ingestion boundaries, not in the parser.

use std::fmt;

use serde_json::{json, Value as Json};

use crate::diag::Span;

/// One parsed `Q .. S .. F .. ;` statement.
#[derive(Debug, Clone, Eq)]
pub struct QueryStatement {
    pub query_attrs: Vec<AttrSpec>,
    pub sources: Vec<SourceSpec>,
    pub filters: Vec<FilterSpec>,
}

impl PartialEq for QueryStatement {
    fn eq(&self, other: &Self) -> bool {
        self.query_attrs == other.query_attrs
            && self.sources == other.sources
            && self.filters == other.filters
    }
}

/// `Class.attr` as written (aliases are preserved; validation resolves them).
#[derive(Debug, Clone, Eq)]
pub struct AttrSpec {
    pub class_name: String,
    pub attr_name: String,
    pub span: Span,
}

impl PartialEq for AttrSpec {
    fn eq(&self, other: &Self) -> bool {
        self.class_name == other.class_name && self.attr_name == other.attr_name
    }
}

impl fmt::Display for AttrSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.class_name, self.attr_name)
    }
}

/// `blockchain:network:chainDescriptor[:entity]`.
#[derive(Debug, Clone, Eq)]
pub struct SourceSpec {
    pub blockchain: String,
    pub network: String,
    pub chain_descriptor: String,
    pub entity: Option<EntityRef>,
    pub span: Span,
}

impl PartialEq for SourceSpec {
    fn eq(&self, other: &Self) -> bool {
        self.blockchain == other.blockchain
            && self.network == other.network
            && self.chain_descriptor == other.chain_descriptor
            && self.entity == other.entity
    }
}

impl SourceSpec {
    /// `blockchain:network:chainDescriptor` without the entity part.
    pub fn chain_key(&self) -> String {
        format!("{}:{}:{}", self.blockchain, self.network, self.chain_descriptor)
    }

    pub fn entity_kind(&self) -> Option<EntityKind> {
        self.entity.as_ref().map(EntityRef::kind)
    }
}

/// The optional fourth source segment addressing one entity on the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntityRef {
    /// Decimal block height.
    Height(u64),
    /// `0x`-prefixed hash (block id or transaction id; resolution tries
    /// block first, then transaction).
    Hash(String),
    /// Account address in the chain's native format.
    Address(String),
}

impl EntityRef {
    /// Syntactic presumption of what the reference addresses. A hash is
    /// presumed to name a transaction (the common case in written queries);
    /// source resolution still checks blocks first.
    pub fn kind(&self) -> EntityKind {
        match self {
            EntityRef::Height(_) => EntityKind::Block,
            EntityRef::Hash(_) => EntityKind::Transaction,
            EntityRef::Address(_) => EntityKind::Account,
        }
    }

    pub fn render(&self) -> String {
        match self {
            EntityRef::Height(h) => h.to_string(),
            EntityRef::Hash(h) | EntityRef::Address(h) => h.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntityKind {
    Block,
    Transaction,
    Account,
}

impl EntityKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EntityKind::Block => "block",
            EntityKind::Transaction => "transaction",
            EntityKind::Account => "account",
        }
    }
}

/// `Class.attr <op> <literal>`.
#[derive(Debug, Clone, Eq)]
pub struct FilterSpec {
    pub attr: AttrSpec,
    pub op: CompareOp,
    pub value: LiteralValue,
    pub span: Span,
}

impl PartialEq for FilterSpec {
    fn eq(&self, other: &Self) -> bool {
        self.attr == other.attr && self.op == other.op && self.value == other.value
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CompareOp {
    pub fn as_str(&self) -> &'static str {
        match self {
            CompareOp::Eq => "=",
            CompareOp::Ne => "!=",
            CompareOp::Lt => "<",
            CompareOp::Le => "<=",
            CompareOp::Gt => ">",
            CompareOp::Ge => ">=",
        }
    }

    /// True for `<`, `<=`, `>`, `>=`.
    pub fn is_ordering(&self) -> bool {
        !matches!(self, CompareOp::Eq | CompareOp::Ne)
    }
}

/// Filter comparison literal as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiteralValue {
    /// Decimal integer.
    Number(u128),
    /// `0x`-prefixed hex, original case preserved.
    Hex(String),
    /// Single-quoted string, quotes stripped.
    Text(String),
    /// Bare word (e.g. `true`, `main`, a bare address).
    Word(String),
}

impl LiteralValue {
    pub fn render(&self) -> String {
        match self {
            LiteralValue::Number(n) => n.to_string(),
            LiteralValue::Hex(h) => h.clone(),
            LiteralValue::Text(s) => format!("'{s}'"),
            LiteralValue::Word(w) => w.clone(),
        }
    }
}

/// Renders the canonical spelling: single spaces after clause keywords,
/// `', '` between list items, no trailing whitespace, `';'` terminator.
/// Re-parsing the result yields a structurally equal statement.
pub fn render_statement(stmt: &QueryStatement) -> String {
    let mut out = String::from("Q ");
    let attrs: Vec<String> = stmt.query_attrs.iter().map(ToString::to_string).collect();
    out.push_str(&attrs.join(", "));
    out.push_str(" S ");
    let sources: Vec<String> = stmt
        .sources
        .iter()
        .map(|s| match &s.entity {
            Some(e) => format!("{}:{}", s.chain_key(), e.render()),
            None => s.chain_key(),
        })
        .collect();
    out.push_str(&sources.join(", "));
    if !stmt.filters.is_empty() {
        out.push_str(" F ");
        let filters: Vec<String> = stmt
            .filters
            .iter()
            .map(|f| format!("{} {} {}", f.attr, f.op.as_str(), f.value.render()))
            .collect();
        out.push_str(&filters.join(", "));
    }
    out.push(';');
    out
}

/// JSON form of a statement for machine consumption (`ccql parse --ast`).
///
/// Schema: `{queryAttrs: [{className, attrName}], sources: [{blockchainI,
/// netI, chainDescI, entityRef, entityKind}], filters: [{attr, op, value}]}`
/// where `entityRef` is the raw segment text (or null), `entityKind` is
/// `"block" | "transaction" | "account"` (or null), and `value` is a
/// one-key object tagging the literal kind.
pub fn statement_to_json(stmt: &QueryStatement) -> Json {
    let attr_json = |a: &AttrSpec| json!({ "className": a.class_name, "attrName": a.attr_name });
    let literal_json = |v: &LiteralValue| match v {
        LiteralValue::Number(n) => {
            if *n <= u128::from(u64::MAX) {
                json!({ "number": *n as u64 })
            } else {
                json!({ "number": n.to_string() })
            }
        }
        LiteralValue::Hex(h) => json!({ "hex": h }),
        LiteralValue::Text(s) => json!({ "text": s }),
        LiteralValue::Word(w) => json!({ "word": w }),
    };
    json!({
        "queryAttrs": stmt.query_attrs.iter().map(attr_json).collect::<Vec<_>>(),
        "sources": stmt
            .sources
            .iter()
            .map(|s| {
                json!({
                    "blockchainI": s.blockchain,
                    "netI": s.network,
                    "chainDescI": s.chain_descriptor,
                    "entityRef": s.entity.as_ref().map(EntityRef::render),
                    "entityKind": s.entity_kind().map(|k| k.as_str()),
                })
            })
            .collect::<Vec<_>>(),
        "filters": stmt
            .filters
            .iter()
            .map(|f| {
                json!({
                    "attr": attr_json(&f.attr),
                    "op": f.op.as_str(),
                    "value": literal_json(&f.value),
                })
            })
            .collect::<Vec<_>>(),
    })
}
