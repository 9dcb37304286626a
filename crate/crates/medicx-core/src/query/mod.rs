//! Query-language subset: parser, evaluator, and the competency-question
//! harness.
//!
//! The grammar is deliberately the minimal closure of the query shapes the
//! toolkit has to answer: `PREFIX`, `SELECT [DISTINCT]`, basic graph
//! patterns with `;` predicate-object lists, `VALUES`, `OPTIONAL`,
//! `FILTER` with `=`, `!=`, and `IN`, and `ORDER BY`. Anything outside
//! that is a parse error by design.

mod cq;
mod eval;
mod parser;

pub use cq::{run_cq, substitute_params, CqOutcome, CqReference, CqStatus, CQ_IDS};
pub use eval::{evaluate, render_term, ResultTable};
pub use parser::parse_query;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Iri, Literal};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("parse error at line {line}, column {column}: expected {expected}")]
    Parse {
        line: usize,
        column: usize,
        expected: String,
    },
    #[error("unknown prefix {prefix:?} at line {line}, column {column}")]
    UnknownPrefix {
        prefix: String,
        line: usize,
        column: usize,
    },
    #[error("variable ?{0} is ordered by but bound nowhere")]
    UnboundProjection(String),
    #[error("unknown competency question {0:?}")]
    UnknownCq(String),
}

/// A position in a pattern or filter: a variable or a ground term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryTerm {
    Var(String),
    Iri(Iri),
    Literal(Literal),
}

impl QueryTerm {
    pub fn as_var(&self) -> Option<&str> {
        match self {
            QueryTerm::Var(name) => Some(name),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePattern {
    pub subject: QueryTerm,
    pub predicate: QueryTerm,
    pub object: QueryTerm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterExpr {
    Eq(QueryTerm, QueryTerm),
    Neq(QueryTerm, QueryTerm),
    In(String, Vec<QueryTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WhereElement {
    Pattern(TriplePattern),
    Values { var: String, terms: Vec<QueryTerm> },
    Optional(Vec<TriplePattern>),
    Filter(FilterExpr),
}

/// Parsed query. Prefixes are retained for diagnostics; prefixed names are
/// already resolved to absolute IRIs in the elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryPlan {
    pub prefixes: BTreeMap<String, String>,
    pub projection: Vec<String>,
    pub distinct: bool,
    pub where_clause: Vec<WhereElement>,
    pub order_by: Vec<String>,
}

impl QueryPlan {
    /// Variables bound somewhere in the where clause.
    pub fn where_vars(&self) -> std::collections::BTreeSet<&str> {
        fn collect<'a>(p: &'a TriplePattern, names: &mut std::collections::BTreeSet<&'a str>) {
            for term in [&p.subject, &p.predicate, &p.object] {
                if let QueryTerm::Var(name) = term {
                    names.insert(name.as_str());
                }
            }
        }
        let mut names = std::collections::BTreeSet::new();
        for element in &self.where_clause {
            match element {
                WhereElement::Pattern(p) => collect(p, &mut names),
                WhereElement::Values { var, .. } => {
                    names.insert(var.as_str());
                }
                WhereElement::Optional(patterns) => {
                    for p in patterns {
                        collect(p, &mut names);
                    }
                }
                WhereElement::Filter(_) => {}
            }
        }
        names
    }
}
