//! Shared helpers for the integration suites.

#![allow(dead_code)]

pub mod gen;
pub mod oracle;
pub mod recordings;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use ccql::backends::config::load_backends;
use ccql::backends::ChainBackend;
use ccql::engine::Engine;
use ccql::parser::{parse_program, tokenize, QueryStatement};

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn chains_dir() -> PathBuf {
    fixtures_dir().join("chains")
}

pub fn corpus_path() -> PathBuf {
    fixtures_dir().join("corpus.ccql")
}

pub fn fixture_config_path() -> PathBuf {
    fixtures_dir().join("backends.json")
}

pub fn fixture_backends() -> BTreeMap<String, Arc<dyn ChainBackend>> {
    load_backends(fixture_config_path()).expect("fixture config loads")
}

pub fn fixture_engine() -> Engine {
    Engine::new(fixture_backends())
}

/// All corpus statements, parsed.
pub fn corpus_statements() -> Vec<QueryStatement> {
    let text = std::fs::read_to_string(corpus_path()).expect("corpus file");
    let tokens = tokenize(&text).expect("corpus tokenizes");
    let statements = parse_program(&tokens).expect("corpus parses");
    assert!(statements.len() >= 30, "corpus holds {} statements", statements.len());
    statements
}
