//! Query evaluation over a quad store.
//!
//! Semantics: where elements apply left-to-right to a growing binding
//! table. Patterns join on shared variables against the graph-collapsed
//! triple set; VALUES constrains one variable to a term list; OPTIONAL is a
//! left join (rows are never removed, just left unextended); FILTER drops
//! rows at its syntactic position, with comparisons over unbound variables
//! failing. DISTINCT deduplicates projected rows; ORDER BY sorts by term
//! kind then lexical form (IRIs before blank nodes before literals,
//! unbound first), with the full projected row as tie-break so output is a
//! total deterministic order.

use std::collections::{BTreeMap, BTreeSet};

use super::{FilterExpr, QueryError, QueryPlan, QueryTerm, TriplePattern, WhereElement};
use crate::graph::{Iri, QuadStore, Term};

/// Tabular query results: projected header plus rows of optional terms
/// (`None` = unbound).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<Term>>>,
}

type Binding = BTreeMap<String, Term>;

fn resolve(term: &QueryTerm, binding: &Binding) -> Option<Term> {
    match term {
        QueryTerm::Var(name) => binding.get(name).cloned(),
        QueryTerm::Iri(iri) => Some(Term::Iri(iri.clone())),
        QueryTerm::Literal(lit) => Some(Term::Literal(lit.clone())),
    }
}

fn unify_position(pattern: &QueryTerm, actual: &Term, binding: &mut Binding) -> bool {
    match pattern {
        QueryTerm::Var(name) => match binding.get(name) {
            Some(bound) => bound == actual,
            None => {
                binding.insert(name.clone(), actual.clone());
                true
            }
        },
        QueryTerm::Iri(iri) => matches!(actual, Term::Iri(a) if a == iri),
        QueryTerm::Literal(lit) => matches!(actual, Term::Literal(a) if a == lit),
    }
}

fn match_pattern(
    pattern: &TriplePattern,
    triples: &[(Term, Iri, Term)],
    binding: &Binding,
) -> Vec<Binding> {
    let mut out = Vec::new();
    for (s, p, o) in triples {
        let mut candidate = binding.clone();
        if unify_position(&pattern.subject, s, &mut candidate)
            && unify_position(&pattern.predicate, &Term::Iri(p.clone()), &mut candidate)
            && unify_position(&pattern.object, o, &mut candidate)
        {
            out.push(candidate);
        }
    }
    out
}

fn apply_patterns(
    patterns: &[TriplePattern],
    triples: &[(Term, Iri, Term)],
    rows: Vec<Binding>,
) -> Vec<Binding> {
    let mut current = rows;
    for pattern in patterns {
        let mut next = Vec::new();
        for row in &current {
            next.extend(match_pattern(pattern, triples, row));
        }
        current = next;
    }
    current
}

fn filter_passes(expr: &FilterExpr, binding: &Binding) -> bool {
    match expr {
        FilterExpr::Eq(lhs, rhs) => match (resolve(lhs, binding), resolve(rhs, binding)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        },
        FilterExpr::Neq(lhs, rhs) => match (resolve(lhs, binding), resolve(rhs, binding)) {
            (Some(a), Some(b)) => a != b,
            _ => false,
        },
        FilterExpr::In(var, terms) => match binding.get(var) {
            Some(value) => terms
                .iter()
                .any(|t| resolve(t, binding).as_ref() == Some(value)),
            None => false,
        },
    }
}

/// Ordering used by ORDER BY: unbound first, then term order (kind rank,
/// then lexical form).
fn option_term_cmp(a: &Option<Term>, b: &Option<Term>) -> std::cmp::Ordering {
    match (a, b) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, Some(_)) => std::cmp::Ordering::Less,
        (Some(_), None) => std::cmp::Ordering::Greater,
        (Some(a), Some(b)) => a.cmp(b),
    }
}

/// Evaluates a plan against a store.
pub fn evaluate(plan: &QueryPlan, store: &QuadStore) -> Result<ResultTable, QueryError> {
    // Ordering by a variable bound nowhere (not even projected) cannot
    // produce a meaningful sort key.
    let where_vars = plan.where_vars();
    for var in &plan.order_by {
        if !where_vars.contains(var.as_str()) && !plan.projection.contains(var) {
            return Err(QueryError::UnboundProjection(var.clone()));
        }
    }

    let triples = store.triples();
    // An empty where clause yields no rows at all (an empty-pattern query
    // asks for nothing and gets nothing).
    let mut rows: Vec<Binding> = if plan.where_clause.is_empty() {
        Vec::new()
    } else {
        vec![Binding::new()]
    };
    for element in &plan.where_clause {
        match element {
            WhereElement::Pattern(pattern) => {
                rows = apply_patterns(std::slice::from_ref(pattern), triples, rows);
            }
            WhereElement::Values { var, terms } => {
                let mut next = Vec::new();
                for row in rows {
                    match row.get(var) {
                        Some(value) => {
                            let keep = terms
                                .iter()
                                .any(|t| resolve(t, &row).as_ref() == Some(value));
                            if keep {
                                next.push(row);
                            }
                        }
                        None => {
                            for term in terms {
                                if let Some(value) = resolve(term, &row) {
                                    let mut branch = row.clone();
                                    branch.insert(var.clone(), value);
                                    next.push(branch);
                                }
                            }
                        }
                    }
                }
                rows = next;
            }
            WhereElement::Optional(patterns) => {
                let mut next = Vec::new();
                for row in rows {
                    let extended = apply_patterns(patterns, triples, vec![row.clone()]);
                    if extended.is_empty() {
                        next.push(row);
                    } else {
                        next.extend(extended);
                    }
                }
                rows = next;
            }
            WhereElement::Filter(expr) => {
                rows.retain(|row| filter_passes(expr, row));
            }
        }
    }

    // Sort on full bindings (ORDER BY may reference unprojected variables),
    // then project, then deduplicate preserving the sorted order.
    if !plan.order_by.is_empty() {
        rows.sort_by(|a, b| {
            for var in &plan.order_by {
                let ord = option_term_cmp(&a.get(var).cloned(), &b.get(var).cloned());
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            let project = |row: &Binding| -> Vec<Option<Term>> {
                plan.projection
                    .iter()
                    .map(|v| row.get(v).cloned())
                    .collect()
            };
            project(a).cmp(&project(b))
        });
    }

    let mut projected: Vec<Vec<Option<Term>>> = rows
        .iter()
        .map(|row| {
            plan.projection
                .iter()
                .map(|v| row.get(v).cloned())
                .collect()
        })
        .collect();

    if plan.distinct {
        let mut seen: BTreeSet<Vec<Option<Term>>> = BTreeSet::new();
        projected.retain(|row| seen.insert(row.clone()));
    }

    Ok(ResultTable {
        header: plan.projection.clone(),
        rows: projected,
    })
}

impl ResultTable {
    /// Tab-separated rendering: header line, then one line per row with
    /// IRIs bare, literals as lexical forms, unbound cells empty.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str(
            &self
                .header
                .iter()
                .map(|v| format!("?{v}"))
                .collect::<Vec<_>>()
                .join("\t"),
        );
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|t| render_term(t.as_ref())).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// Plain rendering of a term for result tables and answer comparison.
pub fn render_term(term: Option<&Term>) -> String {
    match term {
        None => String::new(),
        Some(Term::Iri(iri)) => iri.as_str().to_string(),
        Some(Term::Blank(label)) => format!("_:{label}"),
        Some(Term::Literal(lit)) => lit.lexical.clone(),
    }
}
