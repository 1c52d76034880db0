//! Integrated blockchain data model: one class set spanning account-model
//! and UTXO-model chains, a schema registry describing it, and attribute
//! navigation over materialized instances.

mod navigate;
mod schema;
mod types;
mod value;

pub use navigate::{navigate, AccountNode, BlockNode, SourceInstance, TxNode};
pub use schema::{AttrBinding, SchemaError, SchemaRegistry};
pub use types::*;
pub use value::Value;
