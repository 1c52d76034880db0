//! Row filtering.
//!
//! A filter names an attribute, an operator, and a literal. For each row,
//! the testable set is the scalar cells of every column that resolves to
//! the same underlying class attribute as the filter (aliases and
//! delegations expanded). The row survives only when the set is non-empty
//! and every cell in it satisfies the comparison; a row with nothing
//! testable is dropped with a warning rather than passed through
//! unchecked. Filters apply in statement order, so `F a, b` is the
//! conjunction of `a` and `b`.
//!
//! Cell/literal typing:
//!
//! * int and amount cells compare with number literals, on base units;
//!   these are the only cells ordering operators accept
//! * text cells equality-compare with hex, quoted, and bare-word
//!   literals; when both sides are `0x` hex the comparison ignores case;
//!   ordering a text cell (a hash, an address) is a type error
//! * bool cells equality-compare with `true`/`false` words
//! * any other pairing is simply unequal under `=` / `!=`, and a type
//!   error under ordering operators
//! * list cells are skipped under `=` / `!=` (with a warning) and are a
//!   type error under ordering operators; null cells are never testable

use crate::backends::normalize_hex;
use crate::model::{AttrBinding, Value};
use crate::parser::{CompareOp, FilterSpec, LiteralValue};

use super::project::canonical_pair;
use super::table::ResultTable;
use super::{EngineError, Stage};

pub fn apply_filters(
    table: &mut ResultTable,
    specs: &[FilterSpec],
    attrs: &[AttrBinding],
) -> Result<(), EngineError> {
    for (spec, attr) in specs.iter().zip(attrs) {
        apply_one(table, spec, attr)?;
    }
    Ok(())
}

fn rendered(spec: &FilterSpec) -> String {
    format!("{} {} {}", spec.attr, spec.op.as_str(), spec.value.render())
}

fn apply_one(
    table: &mut ResultTable,
    spec: &FilterSpec,
    attr: &AttrBinding,
) -> Result<(), EngineError> {
    let target = canonical_pair(attr);
    let matching: Vec<usize> = table
        .columns
        .iter()
        .enumerate()
        .filter(|(_, c)| c.canonical == target)
        .map(|(i, _)| i)
        .collect();

    let mut kept = Vec::with_capacity(table.rows.len());
    let mut warned_skip = false;
    let mut warned_drop = false;
    for row in table.rows.drain(..) {
        let mut testable = 0usize;
        let mut keep = true;
        for &i in &matching {
            match &row[i] {
                Value::Null => {}
                Value::List(_) => {
                    if spec.op.is_ordering() {
                        return Err(EngineError {
                            stage: Stage::Filter,
                            message: format!(
                                "filter '{}': cannot order a list cell in column '{}'",
                                rendered(spec),
                                table.columns[i].label
                            ),
                            diagnostics: Vec::new(),
                        });
                    }
                    if !warned_skip {
                        warned_skip = true;
                        table
                            .warnings
                            .push(format!("filter '{}': list cells skipped", rendered(spec)));
                    }
                }
                cell => {
                    testable += 1;
                    match compare(cell, spec.op, &spec.value) {
                        Ok(true) => {}
                        Ok(false) => keep = false,
                        Err(detail) => {
                            return Err(EngineError {
                                stage: Stage::Filter,
                                message: format!("filter '{}': {detail}", rendered(spec)),
                                diagnostics: Vec::new(),
                            })
                        }
                    }
                }
            }
        }
        if testable == 0 {
            if !warned_drop {
                warned_drop = true;
                table.warnings.push(format!(
                    "filter '{}': rows without a testable cell dropped",
                    rendered(spec)
                ));
            }
            continue;
        }
        if keep {
            kept.push(row);
        }
    }
    table.rows = kept;
    Ok(())
}

fn ordering_matches(op: CompareOp, ord: std::cmp::Ordering) -> bool {
    use std::cmp::Ordering::*;
    match op {
        CompareOp::Eq => ord == Equal,
        CompareOp::Ne => ord != Equal,
        CompareOp::Lt => ord == Less,
        CompareOp::Le => ord != Greater,
        CompareOp::Gt => ord == Greater,
        CompareOp::Ge => ord != Less,
    }
}

fn literal_kind(literal: &LiteralValue) -> &'static str {
    match literal {
        LiteralValue::Number(_) => "number",
        LiteralValue::Hex(_) => "hex",
        LiteralValue::Text(_) => "text",
        LiteralValue::Word(_) => "word",
    }
}

fn is_hex(s: &str) -> bool {
    s.starts_with("0x") || s.starts_with("0X")
}

/// Case-stable text equality: hex against hex ignores case.
fn text_equal(cell: &str, literal: &str) -> bool {
    if is_hex(cell) && is_hex(literal) {
        normalize_hex(cell) == normalize_hex(literal)
    } else {
        cell == literal
    }
}

fn compare(cell: &Value, op: CompareOp, literal: &LiteralValue) -> Result<bool, String> {
    // Only numeric cells order; identifiers and flags are equality-only.
    if op.is_ordering() {
        return match (cell, literal) {
            (Value::Int(n), LiteralValue::Number(m)) => Ok(ordering_matches(op, n.cmp(m))),
            (Value::Amount { units, .. }, LiteralValue::Number(m)) => {
                Ok(ordering_matches(op, units.cmp(m)))
            }
            _ => Err(format!(
                "cannot order {} cell against {} literal",
                cell.type_name(),
                literal_kind(literal)
            )),
        };
    }
    let equal = match (cell, literal) {
        (Value::Int(n), LiteralValue::Number(m)) => n == m,
        (Value::Amount { units, .. }, LiteralValue::Number(m)) => units == m,
        (Value::Text(s), LiteralValue::Hex(h)) => text_equal(s, h),
        (Value::Text(s), LiteralValue::Text(t)) => text_equal(s, t),
        (Value::Text(s), LiteralValue::Word(w)) => text_equal(s, w),
        (Value::Bool(b), LiteralValue::Word(w)) if w == "true" || w == "false" => {
            *b == (w == "true")
        }
        // Mismatched pairing: never equal.
        _ => false,
    };
    Ok(equal == (op == CompareOp::Eq))
}
