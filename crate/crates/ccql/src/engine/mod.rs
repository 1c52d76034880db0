//! Statement execution.
//!
//! A statement runs through fixed stages, each of which can fail with a
//! stage-tagged error:
//!
//! 1. `tokenize` / `parse`: text to AST
//! 2. `validate`: classes, attributes, and chain instances resolve against
//!    the schema and the configured backends
//! 3. `resolve`: each source binds a backend and materializes its roots
//! 4. `project`: roots are walked into a [`ResultTable`]
//! 5. `filter`: rows that fail the F clause are removed
//!
//! The engine owns no I/O policy of its own; everything chain-specific
//! sits behind the [`ChainBackend`] map it is constructed with.

mod filter;
mod project;
mod resolve;
mod table;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::backends::ChainBackend;
use crate::model::SchemaRegistry;
use crate::parser::{parse_statement, tokenize, validate_statement, ChainCatalog, QueryStatement};
use crate::Diagnostic;

pub use resolve::SourceBinding;
pub use table::{Column, ResultTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Tokenize,
    Parse,
    Validate,
    Resolve,
    Project,
    Filter,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stage::Tokenize => "tokenize",
            Stage::Parse => "parse",
            Stage::Validate => "validate",
            Stage::Resolve => "resolve",
            Stage::Project => "project",
            Stage::Filter => "filter",
        })
    }
}

#[derive(Debug)]
pub struct EngineError {
    pub stage: Stage,
    pub message: String,
    /// Individual findings when the stage reports more than one.
    pub diagnostics: Vec<Diagnostic>,
}

impl EngineError {
    fn from_diagnostics(stage: Stage, diagnostics: Vec<Diagnostic>) -> Self {
        let message = diagnostics
            .first()
            .map(|d| d.message.clone())
            .unwrap_or_else(|| "unknown error".to_string());
        EngineError { stage, message, diagnostics }
    }
}

impl std::fmt::Display for EngineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.stage, self.message)
    }
}

impl std::error::Error for EngineError {}

pub struct Engine {
    schema: SchemaRegistry,
    catalog: ChainCatalog,
    backends: BTreeMap<String, Arc<dyn ChainBackend>>,
}

impl Engine {
    pub fn new(backends: BTreeMap<String, Arc<dyn ChainBackend>>) -> Engine {
        let catalog = ChainCatalog::from_keys(backends.keys());
        Engine { schema: SchemaRegistry::standard(), catalog, backends }
    }

    pub fn schema(&self) -> &SchemaRegistry {
        &self.schema
    }

    pub fn catalog(&self) -> &ChainCatalog {
        &self.catalog
    }

    pub fn backends(&self) -> &BTreeMap<String, Arc<dyn ChainBackend>> {
        &self.backends
    }

    /// Runs one statement from source text.
    pub fn execute(&self, text: &str) -> Result<ResultTable, EngineError> {
        let tokens =
            tokenize(text).map_err(|d| EngineError::from_diagnostics(Stage::Tokenize, d))?;
        let statement =
            parse_statement(&tokens).map_err(|d| EngineError::from_diagnostics(Stage::Parse, d))?;
        self.execute_statement(&statement)
    }

    /// Runs an already-parsed statement.
    pub fn execute_statement(
        &self,
        statement: &QueryStatement,
    ) -> Result<ResultTable, EngineError> {
        let validated = validate_statement(statement, &self.schema, &self.catalog)
            .map_err(|d| EngineError::from_diagnostics(Stage::Validate, d))?;
        let bindings = resolve::resolve_sources(&validated.statement, &self.backends)?;
        let mut table = project::project(&validated.statement, &validated.query_attrs, &bindings);
        filter::apply_filters(&mut table, &validated.statement.filters, &validated.filter_attrs)?;
        Ok(table)
    }
}
