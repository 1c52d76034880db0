//! Cross-chain query language (CCQL) engine.
//!
//! A CCQL statement names query attributes (`Q`), chain sources (`S`), and
//! optional filters (`F`), mirroring SELECT-FROM-WHERE:
//!
//! ```text
//! Q Block.id, Block.height S eth:main:1:14505661 F BlockDesc.timestamp = 1650000000;
//! ```
//!
//! The crate is organized as a pipeline:
//!
//! * [`parser`] - tokenize, parse, validate, and render statements
//! * [`model`] - the integrated blockchain data model and attribute navigation
//! * [`backends`] - chain data access: fixture stores and JSON-RPC nodes
//! * [`engine`] - source resolution, projection, filtering, result tables
//! * [`cli`] - the `ccql` command-line front end

pub mod backends;
pub mod cli;
pub mod engine;
pub mod model;
pub mod parser;

mod diag;

pub use diag::{Diagnostic, Severity, Span};
