//! Recursive-descent parser over the token stream.
//!
//! Parsing fails fast: the first grammar violation is reported with the
//! span of the offending token (or a zero-width span at end of input).

use crate::diag::{Diagnostic, Span};
use crate::parser::ast::{
    AttrSpec, CompareOp, EntityRef, FilterSpec, LiteralValue, QueryStatement, SourceSpec,
};
use crate::parser::token::{Token, TokenKind};

/// Parses exactly one statement; trailing tokens are an error.
pub fn parse_statement(tokens: &[Token]) -> Result<QueryStatement, Vec<Diagnostic>> {
    let mut p = Parser::new(tokens);
    let stmt = p.statement().map_err(|d| vec![d])?;
    if let Some(tok) = p.peek() {
        return Err(vec![Diagnostic::error(
            format!("unexpected token '{}' after ';'", tok.lexeme),
            tok.span,
        )]);
    }
    Ok(stmt)
}

/// Parses a sequence of `;`-terminated statements (possibly none).
pub fn parse_program(tokens: &[Token]) -> Result<Vec<QueryStatement>, Vec<Diagnostic>> {
    let mut p = Parser::new(tokens);
    let mut out = Vec::new();
    while p.peek().is_some() {
        out.push(p.statement().map_err(|d| vec![d])?);
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(tokens: &'a [Token]) -> Self {
        Parser { tokens, pos: 0 }
    }

    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn advance(&mut self) -> Option<&'a Token> {
        let tok = self.tokens.get(self.pos);
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    /// Span to attach to an error at the current position.
    fn here(&self) -> Span {
        match self.peek() {
            Some(tok) => tok.span,
            None => Span::at(self.tokens.last().map_or(0, |t| t.span.end)),
        }
    }

    fn err(&self, message: impl Into<String>) -> Diagnostic {
        Diagnostic::error(message, self.here())
    }

    fn eat(&mut self, kind: TokenKind) -> Option<&'a Token> {
        if self.peek().map(|t| t.kind) == Some(kind) {
            self.advance()
        } else {
            None
        }
    }

    fn statement(&mut self) -> Result<QueryStatement, Diagnostic> {
        if self.eat(TokenKind::KwQuery).is_none() {
            return Err(self.err("missing Q clause"));
        }
        let query_attrs = self.attr_list()?;
        if self.eat(TokenKind::KwSource).is_none() {
            return Err(self.err("missing S clause"));
        }
        let sources = self.source_list()?;
        let filters =
            if self.eat(TokenKind::KwFilter).is_some() { self.filter_list()? } else { Vec::new() };
        if self.eat(TokenKind::Semicolon).is_none() {
            return Err(self.err("expected ';'"));
        }
        Ok(QueryStatement { query_attrs, sources, filters })
    }

    fn attr_list(&mut self) -> Result<Vec<AttrSpec>, Diagnostic> {
        let mut attrs = vec![self.attr_spec()?];
        while let Some(comma) = self.eat(TokenKind::Comma) {
            if self.list_ends_here() {
                return Err(Diagnostic::error("dangling comma in Q clause", comma.span));
            }
            attrs.push(self.attr_spec()?);
        }
        Ok(attrs)
    }

    /// True when the next token can only close the current clause list,
    /// i.e. a comma right before it dangles.
    fn list_ends_here(&self) -> bool {
        matches!(
            self.peek().map(|t| t.kind),
            None | Some(TokenKind::KwSource | TokenKind::KwFilter | TokenKind::Semicolon)
        )
    }

    fn attr_spec(&mut self) -> Result<AttrSpec, Diagnostic> {
        let class = match self.peek() {
            Some(tok) if tok.kind == TokenKind::Ident => self.advance().unwrap(),
            Some(tok) => {
                return Err(Diagnostic::error(
                    format!("expected class name, found '{}'", tok.lexeme),
                    tok.span,
                ))
            }
            None => return Err(self.err("expected class name")),
        };
        if self.eat(TokenKind::Dot).is_none() {
            return Err(self.err(format!("expected '.' after class name '{}'", class.lexeme)));
        }
        let attr = match self.peek() {
            Some(tok) if tok.kind == TokenKind::Ident => self.advance().unwrap(),
            Some(tok) => {
                return Err(Diagnostic::error(
                    format!("expected attribute name, found '{}'", tok.lexeme),
                    tok.span,
                ))
            }
            None => return Err(self.err("expected attribute name")),
        };
        Ok(AttrSpec {
            class_name: class.lexeme.clone(),
            attr_name: attr.lexeme.clone(),
            span: Span::new(class.span.start, attr.span.end),
        })
    }

    fn source_list(&mut self) -> Result<Vec<SourceSpec>, Diagnostic> {
        let mut sources = vec![self.source_spec()?];
        while let Some(comma) = self.eat(TokenKind::Comma) {
            if self.list_ends_here() {
                return Err(Diagnostic::error("dangling comma in S clause", comma.span));
            }
            sources.push(self.source_spec()?);
        }
        Ok(sources)
    }

    /// Instance-path segment: blockchain, network, and descriptor names may
    /// be identifiers or bare numbers (e.g. chain descriptor `1`).
    fn segment(&mut self, what: &str) -> Result<&'a Token, Diagnostic> {
        match self.peek() {
            Some(tok)
                if matches!(tok.kind, TokenKind::Ident | TokenKind::Decimal | TokenKind::Hex) =>
            {
                Ok(self.advance().unwrap())
            }
            Some(tok) => Err(Diagnostic::error(
                format!("malformed SourceSpec: expected {what}, found '{}'", tok.lexeme),
                tok.span,
            )),
            None => Err(self.err(format!("malformed SourceSpec: expected {what}"))),
        }
    }

    fn source_spec(&mut self) -> Result<SourceSpec, Diagnostic> {
        let blockchain = self.segment("blockchain instance")?;
        if self.eat(TokenKind::Colon).is_none() {
            return Err(self
                .err(format!("malformed SourceSpec: expected ':' after '{}'", blockchain.lexeme)));
        }
        let network = self.segment("network instance")?;
        if self.eat(TokenKind::Colon).is_none() {
            return Err(
                self.err(format!("malformed SourceSpec: expected ':' after '{}'", network.lexeme))
            );
        }
        let descriptor = self.segment("chain descriptor instance")?;
        let mut end = descriptor.span.end;
        let entity = if self.eat(TokenKind::Colon).is_some() {
            let tok = self
                .peek()
                .ok_or_else(|| self.err("malformed SourceSpec: expected entity reference"))?;
            let entity = match tok.kind {
                TokenKind::Decimal => {
                    let height: u64 = tok.lexeme.parse().map_err(|_| {
                        Diagnostic::error(
                            format!("block height '{}' out of range", tok.lexeme),
                            tok.span,
                        )
                    })?;
                    EntityRef::Height(height)
                }
                // 32-byte hashes name blocks or transactions; shorter hex
                // (e.g. 20-byte EVM account) is an address.
                TokenKind::Hex if tok.lexeme.len() == 2 + 64 => EntityRef::Hash(tok.lexeme.clone()),
                TokenKind::Hex | TokenKind::Ident => EntityRef::Address(tok.lexeme.clone()),
                _ => {
                    return Err(Diagnostic::error(
                        format!(
                            "malformed SourceSpec: expected entity reference, found '{}'",
                            tok.lexeme
                        ),
                        tok.span,
                    ))
                }
            };
            end = tok.span.end;
            self.advance();
            Some(entity)
        } else {
            None
        };
        if let Some(extra) = self.eat(TokenKind::Colon) {
            return Err(Diagnostic::error(
                "malformed SourceSpec: too many ':' segments",
                extra.span,
            ));
        }
        Ok(SourceSpec {
            blockchain: blockchain.lexeme.clone(),
            network: network.lexeme.clone(),
            chain_descriptor: descriptor.lexeme.clone(),
            entity,
            span: Span::new(blockchain.span.start, end),
        })
    }

    fn filter_list(&mut self) -> Result<Vec<FilterSpec>, Diagnostic> {
        let mut filters = vec![self.filter_spec()?];
        while let Some(comma) = self.eat(TokenKind::Comma) {
            if self.list_ends_here() {
                return Err(Diagnostic::error("dangling comma in F clause", comma.span));
            }
            filters.push(self.filter_spec()?);
        }
        Ok(filters)
    }

    fn filter_spec(&mut self) -> Result<FilterSpec, Diagnostic> {
        let attr = self.attr_spec()?;
        let op_tok = match self.peek() {
            Some(tok) if tok.kind == TokenKind::Compare => self.advance().unwrap(),
            _ => return Err(self.err("expected comparison operator")),
        };
        let op = match op_tok.lexeme.as_str() {
            "=" => CompareOp::Eq,
            "!=" => CompareOp::Ne,
            "<" => CompareOp::Lt,
            "<=" => CompareOp::Le,
            ">" => CompareOp::Gt,
            ">=" => CompareOp::Ge,
            other => {
                return Err(Diagnostic::error(
                    format!("unknown comparison operator '{other}'"),
                    op_tok.span,
                ))
            }
        };
        let tok = self.peek().ok_or_else(|| self.err("expected literal value"))?;
        let value = match tok.kind {
            TokenKind::Decimal => {
                let n: u128 = tok.lexeme.parse().map_err(|_| {
                    Diagnostic::error(
                        format!("number literal '{}' out of range", tok.lexeme),
                        tok.span,
                    )
                })?;
                LiteralValue::Number(n)
            }
            TokenKind::Hex => LiteralValue::Hex(tok.lexeme.clone()),
            TokenKind::Str => LiteralValue::Text(tok.lexeme[1..tok.lexeme.len() - 1].to_string()),
            TokenKind::Ident => LiteralValue::Word(tok.lexeme.clone()),
            _ => {
                return Err(Diagnostic::error(
                    format!("expected literal value, found '{}'", tok.lexeme),
                    tok.span,
                ))
            }
        };
        let end = tok.span.end;
        self.advance();
        let span = Span::new(attr.span.start, end);
        Ok(FilterSpec { attr, op, value, span })
    }
}
