//! CCQL statement front end: tokenizer, recursive-descent parser,
//! schema-aware validation, and canonical rendering.
//!
//! The surface grammar (one statement):
//!
//! ```text
//! QueryStatement ::= 'Q ' AttrSpec (', ' AttrSpec)*
//!                    'S ' SourceSpec (', ' SourceSpec)*
//!                    ('F ' FilterSpec (', ' FilterSpec)*)? ';'
//! AttrSpec       ::= Class '.' Attr
//! SourceSpec     ::= Blockchain ':' Network ':' ChainDescriptor (':' EntityRef)?
//! FilterSpec     ::= AttrSpec CompareOp Value
//! ```
//!
//! Whitespace between tokens is free-form; `--` starts a line comment.
//! Rendering produces the canonical spelling (single spaces, `', '`
//! separators), and parsing a rendered statement yields a structurally
//! equal AST.

mod ast;
mod parse;
mod token;
mod validate;

pub use ast::{
    render_statement, statement_to_json, AttrSpec, CompareOp, EntityKind, EntityRef, FilterSpec,
    LiteralValue, QueryStatement, SourceSpec,
};
pub use parse::{parse_program, parse_statement};
pub use token::{tokenize, Token, TokenKind};
pub use validate::{validate_statement, ChainCatalog, ResolvedAttr, ValidatedStatement};
