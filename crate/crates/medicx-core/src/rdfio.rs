//! Canonical N-Quads serialization and a parser for the emitted subset.
//!
//! Output is UTF-8, one quad per line terminated `" .\n"`, lines sorted by
//! (graph, subject, predicate, object), non-ASCII emitted as raw UTF-8.
//! The serializer is the golden-file producer, so it must stay byte-stable;
//! the parser exists to round-trip those files and is deliberately limited
//! to the grammar the serializer emits (IRIs, blank nodes, literals with
//! the five standard escapes, `@lang`, `^^<datatype>`).

use thiserror::Error;

use crate::graph::{Iri, Literal, Quad, QuadStore, Term};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("syntax error at line {line}, column {column}: {reason}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub reason: String,
}

fn term_text(term: &Term) -> String {
    term.to_string()
}

/// Serialises the store in canonical form: sorted by (g, s, p, o), one line
/// per quad. Byte-identical across runs and platforms for equal quad sets.
pub fn serialize_nquads(store: &QuadStore) -> String {
    let mut lines: Vec<(String, String, String, String)> = store
        .iter()
        .map(|q| {
            (
                q.graph.to_string(),
                term_text(&q.subject),
                q.predicate.to_string(),
                term_text(&q.object),
            )
        })
        .collect();
    lines.sort();
    let mut out = String::new();
    for (g, s, p, o) in lines {
        out.push_str(&format!("{s} {p} {o} {g} .\n"));
    }
    out
}

/// N-Triples export: the graph component dropped, triples deduplicated and
/// sorted by (s, p, o).
pub fn serialize_ntriples(store: &QuadStore) -> String {
    let mut lines: Vec<(String, String, String)> = store
        .triples()
        .iter()
        .map(|(s, p, o)| (term_text(s), p.to_string(), term_text(o)))
        .collect();
    lines.sort();
    lines.dedup();
    let mut out = String::new();
    for (s, p, o) in lines {
        out.push_str(&format!("{s} {p} {o} .\n"));
    }
    out
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(line: usize, text: &str) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn error(&self, reason: impl Into<String>) -> SyntaxError {
        SyntaxError {
            line: self.line,
            column: self.pos + 1,
            reason: reason.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ') | Some('\t') | Some('\r')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, want: char) -> Result<(), SyntaxError> {
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(self.error(format!("expected {want:?}, found {c:?}"))),
            None => Err(self.error(format!("expected {want:?}, found end of line"))),
        }
    }

    fn parse_iri(&mut self) -> Result<Iri, SyntaxError> {
        self.expect('<')?;
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == '>' {
                let iri: String = self.chars[start..self.pos].iter().collect();
                self.pos += 1;
                return Iri::new(iri).map_err(|e| self.error(e.to_string()));
            }
            self.pos += 1;
        }
        Err(self.error("unterminated IRI"))
    }

    fn parse_blank(&mut self) -> Result<Term, SyntaxError> {
        self.expect('_')?;
        self.expect(':')?;
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '-' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(self.error("empty blank node label"));
        }
        Ok(Term::Blank(self.chars[start..self.pos].iter().collect()))
    }

    fn parse_literal(&mut self) -> Result<Term, SyntaxError> {
        self.expect('"')?;
        let mut lexical = String::new();
        loop {
            match self.bump() {
                Some('"') => break,
                Some('\\') => match self.bump() {
                    Some('"') => lexical.push('"'),
                    Some('\\') => lexical.push('\\'),
                    Some('n') => lexical.push('\n'),
                    Some('r') => lexical.push('\r'),
                    Some('t') => lexical.push('\t'),
                    Some(c) => return Err(self.error(format!("unsupported escape \\{c}"))),
                    None => return Err(self.error("dangling backslash")),
                },
                Some(c) => lexical.push(c),
                None => return Err(self.error("unterminated literal")),
            }
        }
        match self.peek() {
            Some('@') => {
                self.pos += 1;
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '-' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                if self.pos == start {
                    return Err(self.error("empty language tag"));
                }
                let tag: String = self.chars[start..self.pos].iter().collect();
                Ok(Term::Literal(Literal::lang(lexical, tag)))
            }
            Some('^') => {
                self.expect('^')?;
                self.expect('^')?;
                let datatype = self.parse_iri()?;
                Ok(Term::Literal(Literal::typed(lexical, datatype)))
            }
            _ => Ok(Term::Literal(Literal::string(lexical))),
        }
    }

    fn parse_term(&mut self) -> Result<Term, SyntaxError> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.parse_iri()?)),
            Some('_') => self.parse_blank(),
            Some('"') => self.parse_literal(),
            Some(c) => Err(self.error(format!("unexpected character {c:?}"))),
            None => Err(self.error("unexpected end of line")),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }
}

fn parse_line(line_no: usize, text: &str) -> Result<Quad, SyntaxError> {
    let mut cursor = Cursor::new(line_no, text);
    cursor.skip_ws();
    let subject = cursor.parse_term()?;
    if subject.is_literal() {
        return Err(cursor.error("literal in subject position"));
    }
    cursor.skip_ws();
    let predicate = cursor.parse_iri()?;
    cursor.skip_ws();
    let object = cursor.parse_term()?;
    cursor.skip_ws();
    let graph = cursor.parse_iri()?;
    cursor.skip_ws();
    cursor.expect('.').map_err(|mut e| {
        e.reason = "quad line must end with \" .\"".into();
        e
    })?;
    cursor.skip_ws();
    if !cursor.at_end() {
        return Err(cursor.error("trailing content after terminating dot"));
    }
    Quad::new(subject, predicate, object, graph).map_err(|e| cursor.error(e.to_string()))
}

/// Parses N-Quads text produced by [`serialize_nquads`] into a store.
/// Round-trip identity: parsing a serialisation yields an equal quad set.
pub fn parse_nquads(text: &str) -> Result<QuadStore, SyntaxError> {
    let mut quads = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        quads.push(parse_line(idx + 1, line)?);
    }
    Ok(QuadStore::from_quads(quads))
}

/// Convenience check used by tests and the determinism gate.
pub fn quad_set_equal(a: &QuadStore, b: &QuadStore) -> bool {
    a.len() == b.len() && a.iter().all(|q| b.contains(q))
}
