//! Competency-question harness: parameter substitution, execution, and
//! Fully/Partially/Not Met classification against curated reference
//! answer sets.
//!
//! Matching row counts alone cannot decide an outcome, so each reference
//! carries a required answer set (must all be returned) and an optional
//! set (acceptable extras). Classification:
//! fully met = all required present and nothing outside required+optional;
//! partially met = some but not all required, or all required plus
//! unexpected extras; not met = no required answer returned.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::eval::render_term;
use super::{evaluate, parse_query, QueryError};
use crate::graph::QuadStore;

pub const CQ_IDS: [&str; 7] = ["CQ1", "CQ2", "CQ3", "CQ4", "CQ5", "CQ6", "CQ7"];

/// Curated reference for one competency question.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CqReference {
    pub cq_id: String,
    /// Template file, relative to the reference file.
    pub template: String,
    /// Parameter name -> IRI substituted into the template slots.
    pub params: BTreeMap<String, String>,
    /// Projected variable whose bindings are the answers.
    pub answer_var: String,
    pub required: BTreeSet<String>,
    #[serde(default)]
    pub optional: BTreeSet<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CqStatus {
    FullyMet,
    PartiallyMet,
    NotMet,
}

impl CqStatus {
    pub fn label(self) -> &'static str {
        match self {
            CqStatus::FullyMet => "Fully Met",
            CqStatus::PartiallyMet => "Partially Met",
            CqStatus::NotMet => "Not Met",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CqOutcome {
    pub cq_id: String,
    /// Distinct answers the query returned (bindings of the answer
    /// variable).
    pub returned: BTreeSet<String>,
    pub status: CqStatus,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
    /// Reference answer count (required + optional), the manual side of
    /// the comparison.
    pub manual_entries: usize,
    pub rows: usize,
}

/// Substitutes `mdx:<param>` slots with absolute IRIs, on token boundaries.
pub fn substitute_params(template: &str, params: &BTreeMap<String, String>) -> String {
    let mut text = template.to_string();
    for (name, iri) in params {
        let slot = format!("mdx:{name}");
        let mut out = String::with_capacity(text.len());
        let mut rest = text.as_str();
        while let Some(at) = rest.find(&slot) {
            let after = &rest[at + slot.len()..];
            let boundary = after
                .chars()
                .next()
                .is_none_or(|c| !(c.is_alphanumeric() || c == '_'));
            out.push_str(&rest[..at]);
            if boundary {
                out.push_str(&format!("<{iri}>"));
            } else {
                out.push_str(&slot);
            }
            rest = after;
        }
        out.push_str(rest);
        text = out;
    }
    text
}

fn classify(
    returned: &BTreeSet<String>,
    required: &BTreeSet<String>,
    optional: &BTreeSet<String>,
) -> CqStatus {
    let matched: BTreeSet<&String> = required.intersection(returned).collect();
    let extras: Vec<&String> = returned
        .iter()
        .filter(|a| !required.contains(*a) && !optional.contains(*a))
        .collect();
    if matched.len() == required.len() && extras.is_empty() {
        CqStatus::FullyMet
    } else if matched.is_empty() {
        CqStatus::NotMet
    } else {
        CqStatus::PartiallyMet
    }
}

/// Runs one competency question: substitutes parameters into the template,
/// parses and evaluates it, then classifies the answer set against the
/// reference.
pub fn run_cq(
    template: &str,
    reference: &CqReference,
    store: &QuadStore,
) -> Result<CqOutcome, QueryError> {
    if !CQ_IDS.contains(&reference.cq_id.as_str()) {
        return Err(QueryError::UnknownCq(reference.cq_id.clone()));
    }
    let text = substitute_params(template, &reference.params);
    let plan = parse_query(&text)?;
    let table = evaluate(&plan, store)?;

    let answer_col = table.header.iter().position(|v| v == &reference.answer_var);
    let mut returned: BTreeSet<String> = BTreeSet::new();
    if let Some(col) = answer_col {
        for row in &table.rows {
            if let Some(term) = &row[col] {
                returned.insert(render_term(Some(term)));
            }
        }
    }

    let status = classify(&returned, &reference.required, &reference.optional);
    let missing: Vec<String> = reference.required.difference(&returned).cloned().collect();
    let extra: Vec<String> = returned
        .iter()
        .filter(|a| !reference.required.contains(*a) && !reference.optional.contains(*a))
        .cloned()
        .collect();
    Ok(CqOutcome {
        cq_id: reference.cq_id.clone(),
        returned,
        status,
        missing,
        extra,
        manual_entries: reference.required.len() + reference.optional.len(),
        rows: table.rows.len(),
    })
}
