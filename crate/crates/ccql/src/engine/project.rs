//! Projection: walk each root for each query attribute and lay the values
//! out as a table.
//!
//! Cell shape depends on how many instances of the attribute's class are
//! reachable from the root:
//!
//! * none: `null`, plus a warning naming the unreachable class (once per
//!   source and class); an *unset optional* on a reachable instance is
//!   also `null` but warns nothing
//! * one: the value itself
//! * several: a list, in containment walk order
//!
//! Rows are the cartesian product of the sources' root lists, first source
//! varying slowest. Every source today contributes exactly one root, so
//! tables have one row until filters run; the product keeps multi-root
//! sources from changing the row contract later.

use std::collections::BTreeSet;

use crate::model::{navigate, AttrBinding, Value};
use crate::parser::QueryStatement;

use super::resolve::SourceBinding;
use super::table::{Column, ResultTable};

/// `(class, attr)` that actually stores a binding's value.
pub fn canonical_pair(binding: &AttrBinding) -> (String, String) {
    binding.delegated_to.clone().unwrap_or_else(|| (binding.class.clone(), binding.attr.clone()))
}

pub fn project(
    statement: &QueryStatement,
    attrs: &[AttrBinding],
    bindings: &[SourceBinding],
) -> ResultTable {
    let mut columns = Vec::with_capacity(bindings.len() * attrs.len());
    for binding in bindings {
        for (spec, attr) in statement.query_attrs.iter().zip(attrs) {
            let written = spec.to_string();
            columns.push(Column {
                source: binding.index,
                label: format!("{} {written}", binding.index),
                attr: written,
                canonical: canonical_pair(attr),
            });
        }
    }

    let mut warnings = Vec::new();
    let mut warned: BTreeSet<(usize, String)> = BTreeSet::new();
    let mut rows = Vec::new();
    for combo in combinations(bindings) {
        let mut row = Vec::with_capacity(columns.len());
        for (binding, &root_index) in bindings.iter().zip(&combo) {
            let root = &binding.roots[root_index];
            for attr in attrs {
                let values = navigate(root, &attr.class, &attr.attr);
                let cell = match values.len() {
                    0 => {
                        if warned.insert((binding.index, attr.class.clone())) {
                            warnings.push(format!(
                                "{} unreachable on source {}",
                                attr.class, binding.index
                            ));
                        }
                        Value::Null
                    }
                    1 => values.into_iter().next().expect("length checked"),
                    _ => Value::List(values),
                };
                row.push(cell);
            }
        }
        rows.push(row);
    }

    ResultTable { columns, rows, warnings }
}

/// Indices into each binding's root list, first binding outermost.
fn combinations(bindings: &[SourceBinding]) -> Vec<Vec<usize>> {
    let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
    for binding in bindings {
        let mut next = Vec::with_capacity(combos.len() * binding.roots.len());
        for prefix in &combos {
            for root_index in 0..binding.roots.len() {
                let mut combo = prefix.clone();
                combo.push(root_index);
                next.push(combo);
            }
        }
        combos = next;
    }
    combos
}
