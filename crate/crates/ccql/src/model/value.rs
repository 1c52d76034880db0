//! Result cell values.
//!
//! Native-denomination quantities (tx values, UTXO values, asset balances)
//! are carried as integer base units plus a decimal scale and rendered as
//! exact decimal strings in every output format; no floating point is
//! involved anywhere, so `1.0` ETH is exactly `10^18` wei.

use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::{json, Value as Json};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Null,
    Bool(bool),
    Int(u128),
    /// Quantity in base units scaled by `10^decimals` for display.
    Amount {
        units: u128,
        decimals: u32,
    },
    Text(String),
    List(Vec<Value>),
}

impl Value {
    /// True for every variant except `Null` and `List`.
    pub fn is_scalar(&self) -> bool {
        !matches!(self, Value::Null | Value::List(_))
    }

    /// Numeric magnitude used by ordering comparisons: integers directly,
    /// amounts by their base units.
    pub fn as_numeric(&self) -> Option<u128> {
        match self {
            Value::Int(n) => Some(*n),
            Value::Amount { units, .. } => Some(*units),
            _ => None,
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Null => "null",
            Value::Bool(_) => "bool",
            Value::Int(_) => "int",
            Value::Amount { .. } => "amount",
            Value::Text(_) => "text",
            Value::List(_) => "list",
        }
    }

    /// Canonical text form used in table and CSV cells.
    pub fn render(&self) -> String {
        match self {
            Value::Null => "null".to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Int(n) => n.to_string(),
            Value::Amount { units, decimals } => render_amount(*units, *decimals),
            Value::Text(s) => s.clone(),
            Value::List(items) => {
                let parts: Vec<String> = items.iter().map(Value::render).collect();
                format!("[{}]", parts.join(", "))
            }
        }
    }

    /// JSON form: integers above `u64::MAX` and all amounts become strings
    /// so no consumer is forced through lossy doubles.
    pub fn to_json(&self) -> Json {
        match self {
            Value::Null => Json::Null,
            Value::Bool(b) => json!(b),
            Value::Int(n) => {
                if *n <= u128::from(u64::MAX) {
                    json!(*n as u64)
                } else {
                    json!(n.to_string())
                }
            }
            Value::Amount { units, decimals } => json!(render_amount(*units, *decimals)),
            Value::Text(s) => json!(s),
            Value::List(items) => Json::Array(items.iter().map(Value::to_json).collect()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// Exact decimal rendering of `units / 10^decimals`, trailing zeros
/// trimmed but always keeping one fractional digit ("0.0", "1.5").
fn render_amount(units: u128, decimals: u32) -> String {
    let Some(scale) = 10u128.checked_pow(decimals) else {
        // Unrepresentable scale; surface the raw units rather than lose data.
        return units.to_string();
    };
    let whole = units / scale;
    let frac = units % scale;
    if frac == 0 {
        return format!("{whole}.0");
    }
    let digits = format!("{frac:0>width$}", width = decimals as usize);
    format!("{whole}.{}", digits.trim_end_matches('0'))
}
