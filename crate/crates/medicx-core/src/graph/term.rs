//! RDF terms and quads.
//!
//! `Display` renders terms in their N-Quads surface form; that rendering is
//! also the canonical sort key used for deterministic store and export
//! ordering.

use std::fmt;

use thiserror::Error;

use super::vocab;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TermError {
    #[error("IRI {0:?} contains whitespace")]
    IriWhitespace(String),
    #[error("IRI {0:?} is not absolute")]
    IriNotAbsolute(String),
    #[error("literal cannot be a quad subject")]
    LiteralSubject,
}

/// An absolute IRI.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Iri, TermError> {
        let value = value.into();
        if value.chars().any(char::is_whitespace) {
            return Err(TermError::IriWhitespace(value));
        }
        if !value.contains(':') {
            return Err(TermError::IriNotAbsolute(value));
        }
        Ok(Iri(value))
    }

    /// For compile-time constants and trusted builder code.
    pub(crate) fn known(value: impl Into<String>) -> Iri {
        Iri::new(value).expect("well-formed IRI")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub lexical: String,
    pub datatype: Iri,
    pub language: Option<String>,
}

impl Literal {
    /// A plain string literal (xsd:string).
    pub fn string(lexical: impl Into<String>) -> Literal {
        Literal {
            lexical: lexical.into(),
            datatype: Iri::known(vocab::XSD_STRING),
            language: None,
        }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Literal {
        Literal {
            lexical: lexical.into(),
            datatype,
            language: None,
        }
    }

    /// A language-tagged string; the datatype is forced to rdf:langString.
    pub fn lang(lexical: impl Into<String>, tag: impl Into<String>) -> Literal {
        Literal {
            lexical: lexical.into(),
            datatype: Iri::known(vocab::RDF_LANG_STRING),
            language: Some(tag.into()),
        }
    }
}

/// A node in the graph. Variant order defines term ordering: IRIs, then
/// blank nodes, then literals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Blank(String),
    Literal(Literal),
}

impl Term {
    pub fn iri(value: impl Into<String>) -> Result<Term, TermError> {
        Ok(Term::Iri(Iri::new(value)?))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Term {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(literal: Literal) -> Term {
        Term::Literal(literal)
    }
}

/// Backslash escapes for the five characters the N-Quads grammar requires.
pub fn escape_literal(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            _ => out.push(c),
        }
    }
    out
}

// xsd:string literals stay bare, language tags use `@tag`, everything else
// gets a `^^<datatype>` suffix.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "{iri}"),
            Term::Blank(label) => write!(f, "_:{label}"),
            Term::Literal(literal) => {
                write!(f, "\"{}\"", escape_literal(&literal.lexical))?;
                if let Some(tag) = &literal.language {
                    write!(f, "@{tag}")
                } else if literal.datatype.as_str() != vocab::XSD_STRING {
                    write!(f, "^^{}", literal.datatype)
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// One provenance-attributed assertion: (subject, predicate, object, graph).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quad {
    pub subject: Term,
    pub predicate: Iri,
    pub object: Term,
    pub graph: Iri,
}

impl Quad {
    pub fn new(subject: Term, predicate: Iri, object: Term, graph: Iri) -> Result<Quad, TermError> {
        if subject.is_literal() {
            return Err(TermError::LiteralSubject);
        }
        Ok(Quad {
            subject,
            predicate,
            object,
            graph,
        })
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} .",
            self.subject, self.predicate, self.object, self.graph
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iri_rejects_whitespace_and_relative_references() {
        assert!(matches!(
            Iri::new("http://x.org/a b"),
            Err(TermError::IriWhitespace(_))
        ));
        assert!(matches!(
            Iri::new("relative/path"),
            Err(TermError::IriNotAbsolute(_))
        ));
        assert!(Iri::new("http://medicX.org/Product").is_ok());
    }

    #[test]
    fn language_literals_get_lang_string_datatype() {
        let lit = Literal::lang("mediċina", "mt");
        assert_eq!(lit.datatype.as_str(), vocab::RDF_LANG_STRING);
        assert_eq!(Term::from(lit).to_string(), "\"mediċina\"@mt");
    }

    #[test]
    fn display_escapes_quotes_and_control_characters() {
        let lit = Literal::string("say \"hi\"\n");
        assert_eq!(Term::from(lit).to_string(), "\"say \\\"hi\\\"\\n\"");
    }

    #[test]
    fn plain_strings_render_without_datatype_suffix() {
        assert_eq!(Term::from(Literal::string("x")).to_string(), "\"x\"");
        let decimal = Literal::typed("10", Iri::known(vocab::XSD_DECIMAL));
        assert_eq!(
            Term::from(decimal).to_string(),
            "\"10\"^^<http://www.w3.org/2001/XMLSchema#decimal>"
        );
    }

    #[test]
    fn literal_subjects_are_rejected() {
        let err = Quad::new(
            Literal::string("no").into(),
            Iri::known("http://medicX.org/name"),
            Literal::string("x").into(),
            Iri::known("http://medicX.org/graph/mma"),
        )
        .unwrap_err();
        assert_eq!(err, TermError::LiteralSubject);
    }

    #[test]
    fn term_order_puts_iris_before_literals() {
        let iri = Term::iri("http://medicX.org/a").unwrap();
        let lit = Term::from(Literal::string("a"));
        assert!(iri < lit);
    }
}
