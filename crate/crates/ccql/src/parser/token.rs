//! Tokenizer.
//!
//! Produces a flat token stream with byte spans into the original input.
//! Whitespace and `--` line comments are skipped but recoverable: every
//! token's lexeme is exactly `input[span.start..span.end]`, so the gaps
//! between consecutive spans contain only whitespace and comments.

use crate::diag::{Diagnostic, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    /// `Q` introducing the query-attribute clause.
    KwQuery,
    /// `S` introducing the source clause.
    KwSource,
    /// `F` introducing the filter clause.
    KwFilter,
    /// Identifier: Unicode alphanumerics and `_`, not starting with a digit
    /// pattern recognized as a number or hex literal.
    Ident,
    /// Decimal integer literal.
    Decimal,
    /// `0x`-prefixed hexadecimal literal.
    Hex,
    /// Single-quoted string literal (lexeme keeps the quotes).
    Str,
    Dot,
    Colon,
    Comma,
    /// One of `=`, `!=`, `<`, `<=`, `>`, `>=`.
    Compare,
    Semicolon,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub span: Span,
}

impl Token {
    fn new(kind: TokenKind, lexeme: &str, start: usize, end: usize) -> Self {
        Token { kind, lexeme: lexeme.to_string(), span: Span::new(start, end) }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Classifies a maximal identifier-like run. Keywords are only recognized
/// when followed by whitespace, matching the grammar's `'Q '` terminals;
/// `Q` before `.` or at end of input stays an identifier.
fn classify_word(word: &str, followed_by_ws: bool) -> TokenKind {
    match word {
        "Q" if followed_by_ws => return TokenKind::KwQuery,
        "S" if followed_by_ws => return TokenKind::KwSource,
        "F" if followed_by_ws => return TokenKind::KwFilter,
        _ => {}
    }
    if word.bytes().all(|b| b.is_ascii_digit()) {
        return TokenKind::Decimal;
    }
    if let Some(digits) = word.strip_prefix("0x") {
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_hexdigit()) {
            return TokenKind::Hex;
        }
    }
    TokenKind::Ident
}

/// Tokenizes a full input (possibly several `;`-terminated statements).
///
/// On success every byte of the input is covered by a token span, whitespace,
/// or a comment. On failure all lexical errors found are returned, each with
/// the byte span of the offending character.
pub fn tokenize(input: &str) -> Result<Vec<Token>, Vec<Diagnostic>> {
    let mut tokens = Vec::new();
    let mut errors: Vec<Diagnostic> = Vec::new();
    let bytes = input.as_bytes();
    let mut iter = input.char_indices().peekable();

    while let Some((start, c)) = iter.next() {
        if c.is_whitespace() {
            continue;
        }
        let end = start + c.len_utf8();
        match c {
            '.' => tokens.push(Token::new(TokenKind::Dot, ".", start, end)),
            ':' => tokens.push(Token::new(TokenKind::Colon, ":", start, end)),
            ',' => tokens.push(Token::new(TokenKind::Comma, ",", start, end)),
            ';' => tokens.push(Token::new(TokenKind::Semicolon, ";", start, end)),
            '=' => tokens.push(Token::new(TokenKind::Compare, "=", start, end)),
            '<' | '>' => {
                if matches!(iter.peek(), Some((_, '='))) {
                    let (eq_pos, _) = iter.next().unwrap();
                    let lexeme = &input[start..eq_pos + 1];
                    tokens.push(Token::new(TokenKind::Compare, lexeme, start, eq_pos + 1));
                } else {
                    tokens.push(Token::new(TokenKind::Compare, &input[start..end], start, end));
                }
            }
            '!' => {
                if matches!(iter.peek(), Some((_, '='))) {
                    let (eq_pos, _) = iter.next().unwrap();
                    tokens.push(Token::new(TokenKind::Compare, "!=", start, eq_pos + 1));
                } else {
                    errors.push(Diagnostic::error(
                        "illegal character '!' (expected '!=')",
                        Span::new(start, end),
                    ));
                }
            }
            '-' => {
                // `--` opens a comment running to end of line; a lone `-` is illegal.
                if matches!(iter.peek(), Some((_, '-'))) {
                    while let Some(&(_, nc)) = iter.peek() {
                        if nc == '\n' {
                            break;
                        }
                        iter.next();
                    }
                } else {
                    errors.push(Diagnostic::error("illegal character '-'", Span::new(start, end)));
                }
            }
            '\'' => {
                let mut close = None;
                for (pos, nc) in iter.by_ref() {
                    if nc == '\'' {
                        close = Some(pos);
                        break;
                    }
                    if nc == '\n' {
                        break;
                    }
                }
                match close {
                    Some(pos) => {
                        let lexeme = &input[start..pos + 1];
                        tokens.push(Token::new(TokenKind::Str, lexeme, start, pos + 1));
                    }
                    None => {
                        errors.push(Diagnostic::error(
                            "unterminated string literal",
                            Span::new(start, input.len().min(start + 1)),
                        ));
                    }
                }
            }
            _ if is_ident_char(c) => {
                let mut word_end = end;
                while let Some(&(pos, nc)) = iter.peek() {
                    if is_ident_char(nc) {
                        word_end = pos + nc.len_utf8();
                        iter.next();
                    } else {
                        break;
                    }
                }
                let word = &input[start..word_end];
                let followed_by_ws = word_end < bytes.len()
                    && input[word_end..].chars().next().is_some_and(char::is_whitespace);
                let kind = classify_word(word, followed_by_ws);
                tokens.push(Token::new(kind, word, start, word_end));
            }
            _ => {
                errors.push(Diagnostic::error(
                    format!("illegal character '{c}'"),
                    Span::new(start, end),
                ));
            }
        }
    }

    if errors.is_empty() {
        Ok(tokens)
    } else {
        Err(errors)
    }
}
