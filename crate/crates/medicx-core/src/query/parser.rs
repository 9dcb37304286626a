//! Recursive-descent parser for the query subset.

use std::collections::BTreeMap;

use super::{FilterExpr, QueryError, QueryPlan, QueryTerm, TriplePattern, WhereElement};
use crate::graph::{Iri, Literal};

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Name(String),                 // bare word (keywords)
    PrefixedName(String, String), // prefix, local (local may be empty in PREFIX decls)
    Var(String),
    IriRef(String),
    StringLit(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Dot,
    Semicolon,
    Comma,
    Eq,
    Neq,
    DoubleCaret,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, expected: impl Into<String>) -> QueryError {
    QueryError::Parse {
        line,
        column,
        expected: expected.into(),
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next();
        match c {
            Some('\n') => {
                self.line += 1;
                self.column = 1;
            }
            Some(_) => self.column += 1,
            None => {}
        }
        c
    }

    fn is_name_start(c: char) -> bool {
        c.is_alphabetic() || c == '_'
    }

    fn is_name_char(c: char) -> bool {
        c.is_alphanumeric() || c == '_' || c == '-'
    }

    fn read_name(&mut self, first: char) -> String {
        let mut name = String::from(first);
        while let Some(&c) = self.chars.peek() {
            if Self::is_name_char(c) {
                name.push(c);
                self.bump();
            } else {
                break;
            }
        }
        name
    }

    fn tokenize(mut self) -> Result<Vec<Token>, QueryError> {
        let mut tokens = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let (line, column) = (self.line, self.column);
            let Some(c) = self.bump() else { break };
            let kind = match c {
                '{' => TokenKind::LBrace,
                '}' => TokenKind::RBrace,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                '.' => TokenKind::Dot,
                ';' => TokenKind::Semicolon,
                ',' => TokenKind::Comma,
                '=' => TokenKind::Eq,
                '!' => match self.chars.peek() {
                    Some('=') => {
                        self.bump();
                        TokenKind::Neq
                    }
                    _ => return Err(err(line, column, "`=` after `!`")),
                },
                '^' => match self.chars.peek() {
                    Some('^') => {
                        self.bump();
                        TokenKind::DoubleCaret
                    }
                    _ => return Err(err(line, column, "`^^` datatype marker")),
                },
                '<' => {
                    let mut iri = String::new();
                    loop {
                        match self.bump() {
                            Some('>') => break,
                            Some(c) if c.is_whitespace() => {
                                return Err(err(line, column, "IRI without whitespace"))
                            }
                            Some(c) => iri.push(c),
                            None => return Err(err(line, column, "closing `>`")),
                        }
                    }
                    TokenKind::IriRef(iri)
                }
                '"' => {
                    let mut lit = String::new();
                    loop {
                        match self.bump() {
                            Some('"') => break,
                            Some('\\') => match self.bump() {
                                Some('"') => lit.push('"'),
                                Some('\\') => lit.push('\\'),
                                Some('n') => lit.push('\n'),
                                Some('r') => lit.push('\r'),
                                Some('t') => lit.push('\t'),
                                _ => return Err(err(self.line, self.column, "valid escape")),
                            },
                            Some(c) => lit.push(c),
                            None => return Err(err(line, column, "closing `\"`")),
                        }
                    }
                    TokenKind::StringLit(lit)
                }
                '?' => match self.bump() {
                    Some(c) if Self::is_name_start(c) => TokenKind::Var(self.read_name(c)),
                    _ => return Err(err(line, column, "variable name after `?`")),
                },
                c if Self::is_name_start(c) => {
                    let name = self.read_name(c);
                    if self.chars.peek() == Some(&':') {
                        self.bump();
                        let local = match self.chars.peek() {
                            Some(&c) if Self::is_name_char(c) => {
                                self.bump();
                                self.read_name(c)
                            }
                            _ => String::new(),
                        };
                        TokenKind::PrefixedName(name, local)
                    } else {
                        TokenKind::Name(name)
                    }
                }
                other => return Err(err(line, column, format!("token, found {other:?}"))),
            };
            tokens.push(Token { kind, line, column });
        }
        Ok(tokens)
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    prefixes: BTreeMap<String, String>,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.pos).cloned();
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    fn here(&self) -> (usize, usize) {
        self.peek()
            .map(|t| (t.line, t.column))
            .or_else(|| self.tokens.last().map(|t| (t.line, t.column + 1)))
            .unwrap_or((1, 1))
    }

    fn expect_kind(&mut self, kind: TokenKind, expected: &str) -> Result<Token, QueryError> {
        let (line, column) = self.here();
        match self.bump() {
            Some(token) if token.kind == kind => Ok(token),
            _ => Err(err(line, column, expected)),
        }
    }

    fn keyword(&self) -> Option<String> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Name(name),
                ..
            }) => Some(name.to_ascii_uppercase()),
            _ => None,
        }
    }

    fn eat_keyword(&mut self, word: &str) -> bool {
        if self.keyword().as_deref() == Some(word) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<(), QueryError> {
        let (line, column) = self.here();
        if self.eat_keyword(word) {
            Ok(())
        } else {
            Err(err(line, column, format!("`{word}`")))
        }
    }

    fn resolve_prefixed(
        &self,
        token: &Token,
        prefix: &str,
        local: &str,
    ) -> Result<Iri, QueryError> {
        let base = self
            .prefixes
            .get(prefix)
            .ok_or_else(|| QueryError::UnknownPrefix {
                prefix: prefix.to_string(),
                line: token.line,
                column: token.column,
            })?;
        Iri::new(format!("{base}{local}")).map_err(|e| err(token.line, token.column, e.to_string()))
    }

    /// A pattern/filter position: variable, IRI, prefixed name, or literal
    /// (with optional `^^` datatype).
    fn parse_term(&mut self) -> Result<QueryTerm, QueryError> {
        let (line, column) = self.here();
        let Some(token) = self.bump() else {
            return Err(err(line, column, "term"));
        };
        match token.kind.clone() {
            TokenKind::Var(name) => Ok(QueryTerm::Var(name)),
            TokenKind::IriRef(iri) => Ok(QueryTerm::Iri(
                Iri::new(iri).map_err(|e| err(line, column, e.to_string()))?,
            )),
            TokenKind::PrefixedName(prefix, local) => Ok(QueryTerm::Iri(
                self.resolve_prefixed(&token, &prefix, &local)?,
            )),
            TokenKind::StringLit(lexical) => {
                if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::DoubleCaret)) {
                    self.bump();
                    let (line, column) = self.here();
                    match self.bump() {
                        Some(Token {
                            kind: TokenKind::IriRef(iri),
                            ..
                        }) => Ok(QueryTerm::Literal(Literal::typed(
                            lexical,
                            Iri::new(iri).map_err(|e| err(line, column, e.to_string()))?,
                        ))),
                        Some(
                            token @ Token {
                                kind: TokenKind::PrefixedName(..),
                                ..
                            },
                        ) => {
                            let TokenKind::PrefixedName(prefix, local) = token.kind.clone() else {
                                unreachable!()
                            };
                            Ok(QueryTerm::Literal(Literal::typed(
                                lexical,
                                self.resolve_prefixed(&token, &prefix, &local)?,
                            )))
                        }
                        _ => Err(err(line, column, "datatype IRI after `^^`")),
                    }
                } else {
                    Ok(QueryTerm::Literal(Literal::string(lexical)))
                }
            }
            _ => Err(err(line, column, "term")),
        }
    }

    fn parse_ground_term(&mut self) -> Result<QueryTerm, QueryError> {
        let (line, column) = self.here();
        let term = self.parse_term()?;
        if matches!(term, QueryTerm::Var(_)) {
            return Err(err(line, column, "ground term (IRI or literal)"));
        }
        Ok(term)
    }

    fn parse_var(&mut self) -> Result<String, QueryError> {
        let (line, column) = self.here();
        match self.bump() {
            Some(Token {
                kind: TokenKind::Var(name),
                ..
            }) => Ok(name),
            _ => Err(err(line, column, "variable")),
        }
    }

    /// One triple statement, possibly with a `;` predicate-object list.
    /// The terminating dot is required except directly before `}`.
    fn parse_triples(&mut self, out: &mut Vec<TriplePattern>) -> Result<(), QueryError> {
        let subject = self.parse_term()?;
        loop {
            let predicate = self.parse_term()?;
            let object = self.parse_term()?;
            out.push(TriplePattern {
                subject: subject.clone(),
                predicate,
                object,
            });
            match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Semicolon) => {
                    self.bump();
                }
                Some(TokenKind::Dot) => {
                    self.bump();
                    return Ok(());
                }
                Some(TokenKind::RBrace) => return Ok(()),
                _ => {
                    let (line, column) = self.here();
                    return Err(err(line, column, "`;`, `.` or `}`"));
                }
            }
        }
    }

    fn parse_filter(&mut self) -> Result<FilterExpr, QueryError> {
        self.expect_kind(TokenKind::LParen, "`(` after FILTER")?;
        let (line, column) = self.here();
        let lhs = self.parse_term()?;
        let expr = match self.peek().map(|t| &t.kind) {
            Some(TokenKind::Eq) => {
                self.bump();
                FilterExpr::Eq(lhs, self.parse_term()?)
            }
            Some(TokenKind::Neq) => {
                self.bump();
                FilterExpr::Neq(lhs, self.parse_term()?)
            }
            Some(TokenKind::Name(word)) if word.eq_ignore_ascii_case("IN") => {
                self.bump();
                let var = match lhs {
                    QueryTerm::Var(name) => name,
                    _ => return Err(err(line, column, "variable before IN")),
                };
                self.expect_kind(TokenKind::LParen, "`(` after IN")?;
                let mut terms = vec![self.parse_ground_term()?];
                loop {
                    match self.peek().map(|t| &t.kind) {
                        Some(TokenKind::Comma) => {
                            self.bump();
                            terms.push(self.parse_ground_term()?);
                        }
                        Some(TokenKind::RParen) => {
                            self.bump();
                            break;
                        }
                        _ => {
                            let (line, column) = self.here();
                            return Err(err(line, column, "`,` or `)`"));
                        }
                    }
                }
                FilterExpr::In(var, terms)
            }
            _ => {
                let (line, column) = self.here();
                return Err(err(line, column, "`=`, `!=` or `IN`"));
            }
        };
        self.expect_kind(TokenKind::RParen, "`)` closing FILTER")?;
        Ok(expr)
    }

    /// Parses one syntactic where element, which may contribute several
    /// plan elements (a `;` list shares one subject but evaluation order
    /// stays textual).
    fn parse_where_element(&mut self, out: &mut Vec<WhereElement>) -> Result<(), QueryError> {
        match self.keyword().as_deref() {
            Some("VALUES") => {
                self.bump();
                let var = self.parse_var()?;
                self.expect_kind(TokenKind::LBrace, "`{` after VALUES variable")?;
                let mut terms = Vec::new();
                while !matches!(self.peek().map(|t| &t.kind), Some(TokenKind::RBrace)) {
                    terms.push(self.parse_ground_term()?);
                }
                self.bump(); // consume `}`
                if terms.is_empty() {
                    let (line, column) = self.here();
                    return Err(err(line, column, "at least one VALUES term"));
                }
                out.push(WhereElement::Values { var, terms });
            }
            Some("OPTIONAL") => {
                self.bump();
                self.expect_kind(TokenKind::LBrace, "`{` after OPTIONAL")?;
                let mut patterns = Vec::new();
                while !matches!(self.peek().map(|t| &t.kind), Some(TokenKind::RBrace)) {
                    self.parse_triples(&mut patterns)?;
                }
                self.bump(); // consume `}`
                out.push(WhereElement::Optional(patterns));
            }
            Some("FILTER") => {
                self.bump();
                let filter = self.parse_filter()?;
                out.push(WhereElement::Filter(filter));
            }
            _ => {
                let mut patterns = Vec::new();
                self.parse_triples(&mut patterns)?;
                out.extend(patterns.into_iter().map(WhereElement::Pattern));
            }
        }
        Ok(())
    }
}

/// Parses a query in the subset grammar into a [`QueryPlan`].
pub fn parse_query(text: &str) -> Result<QueryPlan, QueryError> {
    let tokens = Lexer::new(text).tokenize()?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        prefixes: BTreeMap::new(),
    };

    while parser.eat_keyword("PREFIX") {
        let (line, column) = parser.here();
        let prefix = match parser.bump() {
            Some(Token {
                kind: TokenKind::PrefixedName(prefix, local),
                ..
            }) if local.is_empty() => prefix,
            _ => return Err(err(line, column, "prefix declaration like `mdx:`")),
        };
        let (line, column) = parser.here();
        let iri = match parser.bump() {
            Some(Token {
                kind: TokenKind::IriRef(iri),
                ..
            }) => iri,
            _ => return Err(err(line, column, "IRI in angle brackets")),
        };
        parser.prefixes.insert(prefix, iri);
    }

    parser.expect_keyword("SELECT")?;
    let distinct = parser.eat_keyword("DISTINCT");
    let mut projection = Vec::new();
    while matches!(parser.peek().map(|t| &t.kind), Some(TokenKind::Var(_))) {
        projection.push(parser.parse_var()?);
    }
    if projection.is_empty() {
        let (line, column) = parser.here();
        return Err(err(line, column, "at least one projected variable"));
    }

    parser.expect_keyword("WHERE")?;
    parser.expect_kind(TokenKind::LBrace, "`{` opening WHERE")?;
    let mut where_clause = Vec::new();
    while !matches!(parser.peek().map(|t| &t.kind), Some(TokenKind::RBrace)) {
        if parser.peek().is_none() {
            let (line, column) = parser.here();
            return Err(err(line, column, "`}` closing WHERE"));
        }
        parser.parse_where_element(&mut where_clause)?;
    }
    parser.bump(); // consume `}`

    let mut order_by = Vec::new();
    if parser.eat_keyword("ORDER") {
        parser.expect_keyword("BY")?;
        while matches!(parser.peek().map(|t| &t.kind), Some(TokenKind::Var(_))) {
            order_by.push(parser.parse_var()?);
        }
        if order_by.is_empty() {
            let (line, column) = parser.here();
            return Err(err(line, column, "variable after ORDER BY"));
        }
    }

    if let Some(token) = parser.peek() {
        return Err(err(token.line, token.column, "end of query"));
    }

    Ok(QueryPlan {
        prefixes: parser.prefixes,
        projection,
        distinct,
        where_clause,
        order_by,
    })
}
