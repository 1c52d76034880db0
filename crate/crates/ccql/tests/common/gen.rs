//! Seeded random statement generator used by the round-trip suites.
//!
//! `random_statement` builds an arbitrary-but-lexable AST; `decorate`
//! re-spells a canonical rendering with random whitespace and `--` comments
//! while preserving token structure. Both are deterministic for a given
//! seed so failures replay exactly.

use ccql::parser::{
    tokenize, AttrSpec, CompareOp, EntityRef, FilterSpec, LiteralValue, QueryStatement, SourceSpec,
};
use ccql::Span;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pick<'a>(rng: &mut ChaCha8Rng, items: &[&'a str]) -> &'a str {
    items[rng.random_range(0..items.len())]
}

/// True when `word` lexes as a single identifier token: not a clause
/// keyword, not all ASCII digits (decimal), not `0x` + hex digits (hex).
fn is_ident_token(word: &str) -> bool {
    if word.is_empty() || matches!(word, "Q" | "S" | "F") {
        return false;
    }
    if word.chars().all(|c| c.is_ascii_digit()) {
        return false;
    }
    if let Some(digits) = word.strip_prefix("0x") {
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_hexdigit()) {
            return false;
        }
    }
    word.chars().all(|c| c.is_alphanumeric() || c == '_')
}

/// Random word that lexes as one identifier token.
fn ident(rng: &mut ChaCha8Rng) -> String {
    loop {
        let len = rng.random_range(1..=12);
        let mut word = String::new();
        for _ in 0..len {
            let c = match rng.random_range(0..12u32) {
                0 => '_',
                1 | 2 => rng.random_range(b'0'..=b'9') as char,
                3 => ['ö', 'é', 'Ω', 'ß'][rng.random_range(0..4)],
                4..=7 => rng.random_range(b'A'..=b'Z') as char,
                _ => rng.random_range(b'a'..=b'z') as char,
            };
            word.push(c);
        }
        if is_ident_token(&word) {
            return word;
        }
    }
}

fn hex_digits(rng: &mut ChaCha8Rng, len: usize) -> String {
    const DIGITS: &[u8] = b"0123456789abcdefABCDEF";
    (0..len).map(|_| DIGITS[rng.random_range(0..DIGITS.len())] as char).collect()
}

fn class_name(rng: &mut ChaCha8Rng) -> String {
    if rng.random_bool(0.7) {
        pick(
            rng,
            &[
                "Chain",
                "Net",
                "Network",
                "ChainDesc",
                "ChainDescriptor",
                "Block",
                "BlockDesc",
                "Validation",
                "Validator",
                "T",
                "TDesc",
                "Transaction",
                "UTXO",
                "Acc",
                "AccDesc",
                "Account",
                "Asset",
                "Token",
                "Data",
            ],
        )
        .to_string()
    } else {
        ident(rng)
    }
}

fn attr_name(rng: &mut ChaCha8Rng) -> String {
    if rng.random_bool(0.7) {
        pick(
            rng,
            &[
                "height",
                "timestamp",
                "id",
                "hash",
                "value",
                "data",
                "fromAddress",
                "toAddress",
                "address",
                "balance",
                "amount",
                "status",
                "descriptor",
                "utxos",
                "committee",
                "condition",
                "input",
                "proposer",
                "epoch",
                "slot",
                "key",
                "isContract",
                "spent",
            ],
        )
        .to_string()
    } else {
        ident(rng)
    }
}

fn attr_spec(rng: &mut ChaCha8Rng) -> AttrSpec {
    AttrSpec { class_name: class_name(rng), attr_name: attr_name(rng), span: Span::at(0) }
}

/// Chain-key segment: any of the identifier / decimal / hex token shapes.
fn segment(rng: &mut ChaCha8Rng) -> String {
    match rng.random_range(0..10u32) {
        0 => rng.random_range(0..10_000u32).to_string(),
        1 => {
            let len = rng.random_range(1..=8);
            format!("0x{}", hex_digits(rng, len))
        }
        2..=5 => {
            pick(rng, &["eth", "btc", "avax", "ada", "sol", "main", "ropsten", "c", "x", "1", "3"])
                .to_string()
        }
        _ => ident(rng),
    }
}

fn entity(rng: &mut ChaCha8Rng) -> Option<EntityRef> {
    match rng.random_range(0..8u32) {
        0 | 1 => None,
        2 | 3 => Some(EntityRef::Height(if rng.random_bool(0.8) {
            u64::from(rng.random_range(0..20_000_000u32))
        } else {
            rng.random::<u64>()
        })),
        4 | 5 => Some(EntityRef::Hash(format!("0x{}", hex_digits(rng, 64)))),
        6 => Some(EntityRef::Address(format!("0x{}", hex_digits(rng, 40)))),
        _ => Some(EntityRef::Address(ident(rng))),
    }
}

fn source(rng: &mut ChaCha8Rng) -> SourceSpec {
    SourceSpec {
        blockchain: segment(rng),
        network: segment(rng),
        chain_descriptor: segment(rng),
        entity: entity(rng),
        span: Span::at(0),
    }
}

fn literal(rng: &mut ChaCha8Rng) -> LiteralValue {
    match rng.random_range(0..8u32) {
        0 | 1 => LiteralValue::Number(match rng.random_range(0..3u32) {
            0 => u128::from(rng.random_range(0..2_000_000_000u32)),
            1 => u128::from(rng.random::<u64>()),
            _ => rng.random::<u128>(),
        }),
        2 | 3 => {
            let len = rng.random_range(1..=64);
            LiteralValue::Hex(format!("0x{}", hex_digits(rng, len)))
        }
        4 | 5 => {
            const SAFE: &[u8] = b"abcxyz059 :e.,!-";
            let len = rng.random_range(0..=10);
            let body: String =
                (0..len).map(|_| SAFE[rng.random_range(0..SAFE.len())] as char).collect();
            LiteralValue::Text(body)
        }
        _ => LiteralValue::Word(ident(rng)),
    }
}

fn filter(rng: &mut ChaCha8Rng) -> FilterSpec {
    let op =
        [CompareOp::Eq, CompareOp::Ne, CompareOp::Lt, CompareOp::Le, CompareOp::Gt, CompareOp::Ge]
            [rng.random_range(0..6)];
    FilterSpec { attr: attr_spec(rng), op, value: literal(rng), span: Span::at(0) }
}

/// Arbitrary statement whose canonical rendering re-parses to an equal AST.
pub fn random_statement(rng: &mut ChaCha8Rng) -> QueryStatement {
    let nq = rng.random_range(1..=3);
    let ns = rng.random_range(1..=3);
    let nf = rng.random_range(0..=3);
    QueryStatement {
        query_attrs: (0..nq).map(|_| attr_spec(rng)).collect(),
        sources: (0..ns).map(|_| source(rng)).collect(),
        filters: (0..nf).map(|_| filter(rng)).collect(),
    }
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Random gap between two lexemes. When `required` (both neighbors are
/// identifier-shaped, e.g. around a clause keyword) the gap must begin with
/// whitespace so the keyword stays a keyword and the words stay separate.
fn push_gap(rng: &mut ChaCha8Rng, out: &mut String, required: bool) {
    if !required && rng.random_bool(0.5) {
        return;
    }
    const COMMENT_BODY: &[u8] = b"Q S F ;:.,'x0 !--=<ab";
    let pieces = rng.random_range(1..=3);
    for piece in 0..pieces {
        let may_comment = piece > 0 || !required;
        if may_comment && rng.random_bool(0.25) {
            out.push_str("--");
            for _ in 0..rng.random_range(0..=8) {
                out.push(COMMENT_BODY[rng.random_range(0..COMMENT_BODY.len())] as char);
            }
            out.push('\n');
        } else {
            for _ in 0..rng.random_range(1..=3) {
                out.push([' ', '\t', '\n'][rng.random_range(0..3)]);
            }
        }
    }
}

/// Re-spells canonical statement text with random whitespace and comments.
/// The result tokenizes to the same lexeme sequence.
pub fn decorate(rng: &mut ChaCha8Rng, canonical: &str) -> String {
    let tokens = tokenize(canonical).expect("canonical statement text lexes");
    let mut out = String::new();
    push_gap(rng, &mut out, false);
    for (i, token) in tokens.iter().enumerate() {
        out.push_str(&token.lexeme);
        let required = match tokens.get(i + 1) {
            Some(next) => {
                let prev_end = token.lexeme.chars().last().is_some_and(ident_char);
                let next_start = next.lexeme.chars().next().is_some_and(ident_char);
                prev_end && next_start
            }
            None => false,
        };
        push_gap(rng, &mut out, required);
    }
    out
}
