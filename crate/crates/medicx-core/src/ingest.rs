//! Parsing, validation, deduplication, and filtering of the four source
//! datasets.
//!
//! Each source ships as JSON-Lines, one record per line. Parsing is strict
//! about structure (well-formed JSON, required fields, valid enum values)
//! and aborts on the first bad line; domain-level filtering is lossy but
//! reported, so `clean_*` returns every input record either in `kept` or in
//! `dropped` with a reason.

use std::collections::BTreeSet;
use std::io::BufRead;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normalize::{normalize_name, SaltLexicon};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("malformed line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: missing field `{field}`")]
    MissingField { line: usize, field: String },
    #[error("read error: {0}")]
    Io(#[from] std::io::Error),
}

// ---------------------------------------------------------------------------
// Record types
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Otc,
    Pom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuthorisationStatus {
    Authorised,
    Withdrawn,
    Suspended,
}

/// One active ingredient of a product, with its strength.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IngredientDose {
    pub name: String,
    pub dosage_value: f64,
    pub dosage_unit: String,
}

/// A nationally authorised product record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MmaProduct {
    pub medicine_name: String,
    pub active_ingredients: Vec<IngredientDose>,
    pub pharmaceutical_form: String,
    #[serde(default)]
    pub therapeutic_class: Option<String>,
    pub classification: Classification,
    #[serde(default)]
    pub atc_code: Option<String>,
    pub status: AuthorisationStatus,
    pub authorisation_number: String,
    pub authorisation_date: String,
    pub authorisation_holder: String,
    pub holder_address: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdrFrequency {
    VeryCommon,
    Common,
    Uncommon,
    Rare,
    VeryRare,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SideEffect {
    pub name: String,
    #[serde(default)]
    pub frequency: Option<AdrFrequency>,
    #[serde(default)]
    pub severity: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonographInteraction {
    pub partner_name: String,
    pub interaction_type: String,
    #[serde(default)]
    pub severity: Option<String>,
    #[serde(default)]
    pub note: Option<String>,
}

/// A formulary monograph. `constituents` is empty except for combined
/// monographs covering a fixed-dose combination, where it lists the
/// component drugs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BnfMonograph {
    pub name: String,
    pub constituents: Vec<String>,
    pub indications: Vec<String>,
    pub side_effects: Vec<SideEffect>,
    pub interactions: Vec<MonographInteraction>,
    pub contraindications: Vec<String>,
    pub cautions: Vec<String>,
    #[serde(default)]
    pub pregnancy: Option<String>,
    #[serde(default)]
    pub breastfeeding: Option<String>,
    pub allergies: Vec<String>,
    #[serde(default)]
    pub therapeutic_class: Option<String>,
    #[serde(default)]
    pub drug_action: Option<String>,
    #[serde(default)]
    pub hepatic_impairment: Option<String>,
    #[serde(default)]
    pub renal_impairment: Option<String>,
    #[serde(default)]
    pub patient_advice: Option<String>,
    #[serde(default)]
    pub safety_info: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrugBankSalt {
    pub salt_name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrugBankDdi {
    pub partner_drugbank_id: String,
    pub description: String,
    #[serde(default)]
    pub mechanism: Option<String>,
    #[serde(default)]
    pub severity: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrugBankEntry {
    pub drugbank_id: String,
    pub primary_name: String,
    pub synonyms: Vec<String>,
    pub salts: Vec<DrugBankSalt>,
    #[serde(default)]
    pub description: Option<String>,
    pub atc_codes: Vec<String>,
    pub ddis: Vec<DrugBankDdi>,
    pub targets: Vec<String>,
    pub enzymes: Vec<String>,
    pub transporters: Vec<String>,
    pub carriers: Vec<String>,
    pub narrow_therapeutic_index: bool,
    pub food_interactions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PubChemCompound {
    pub cid: u64,
    pub name: String,
    pub synonyms: Vec<String>,
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

fn classify_serde_error(line: usize, err: &serde_json::Error) -> IngestError {
    let message = err.to_string();
    if let Some(rest) = message.strip_prefix("missing field `") {
        if let Some(field) = rest.split('`').next() {
            return IngestError::MissingField {
                line,
                field: field.to_string(),
            };
        }
    }
    IngestError::MalformedLine {
        line,
        reason: message,
    }
}

fn parse_jsonl<T, R>(input: R) -> Result<Vec<T>, IngestError>
where
    T: for<'de> Deserialize<'de>,
    R: BufRead,
{
    let mut records = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let text = line?;
        if text.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<T>(&text) {
            Ok(record) => records.push(record),
            Err(err) => return Err(classify_serde_error(line_no, &err)),
        }
    }
    Ok(records)
}

pub fn parse_mma(input: impl BufRead) -> Result<Vec<MmaProduct>, IngestError> {
    parse_jsonl(input)
}

pub fn parse_bnf(input: impl BufRead) -> Result<Vec<BnfMonograph>, IngestError> {
    parse_jsonl(input)
}

pub fn parse_drugbank(input: impl BufRead) -> Result<Vec<DrugBankEntry>, IngestError> {
    parse_jsonl(input)
}

pub fn parse_pubchem(input: impl BufRead) -> Result<Vec<PubChemCompound>, IngestError> {
    parse_jsonl(input)
}

/// Serialises records back to JSON-Lines (record-level round-trip partner
/// of the `parse_*` functions).
pub fn to_jsonl<T: Serialize>(records: &[T]) -> String {
    let mut out = String::new();
    for record in records {
        out.push_str(&serde_json::to_string(record).expect("record serialises"));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Cleaning
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DropReason {
    /// Violates a record-level invariant after a successful JSON parse.
    Invalid,
    /// Not currently authorised (withdrawn or suspended).
    Withdrawn,
    /// Same dedup key as an earlier kept record.
    Duplicate,
}

#[derive(Debug, Clone)]
pub struct Dropped<T> {
    pub record: T,
    pub reason: DropReason,
}

#[derive(Debug, Clone)]
pub struct CleanOutcome<T> {
    pub kept: Vec<T>,
    pub dropped: Vec<Dropped<T>>,
}

impl<T> CleanOutcome<T> {
    pub fn dropped_count(&self, reason: DropReason) -> usize {
        self.dropped.iter().filter(|d| d.reason == reason).count()
    }
}

fn valid_iso_date(text: &str) -> bool {
    let bytes = text.as_bytes();
    if bytes.len() != 10 || bytes[4] != b'-' || bytes[7] != b'-' {
        return false;
    }
    let digits = |range: std::ops::Range<usize>| -> Option<u32> {
        text.get(range).and_then(|s| s.parse().ok())
    };
    match (digits(0..4), digits(5..7), digits(8..10)) {
        (Some(_), Some(month), Some(day)) => (1..=12).contains(&month) && (1..=31).contains(&day),
        _ => false,
    }
}

impl MmaProduct {
    /// Record-level invariants checked during cleaning ("structurally
    /// invalid" entries): nonempty name and authorisation number, at least
    /// one ingredient, positive dosages, plausible ISO-8601 date.
    fn violation(&self) -> Option<String> {
        if self.medicine_name.trim().is_empty() {
            return Some("medicine_name is empty".into());
        }
        if self.authorisation_number.trim().is_empty() {
            return Some("authorisation_number is empty".into());
        }
        if self.active_ingredients.is_empty() {
            return Some("no active ingredients".into());
        }
        for ingredient in &self.active_ingredients {
            if ingredient.name.trim().is_empty() {
                return Some("ingredient name is empty".into());
            }
            if ingredient.dosage_value <= 0.0 {
                return Some(format!(
                    "ingredient {:?} has non-positive dosage",
                    ingredient.name
                ));
            }
        }
        if !valid_iso_date(&self.authorisation_date) {
            return Some(format!(
                "bad authorisation_date {:?}",
                self.authorisation_date
            ));
        }
        None
    }
}

/// Cleans the product list: drops invariant violations, non-authorised
/// products, and duplicate authorisation numbers (first occurrence wins).
/// `kept` + `dropped` partition the input; order is preserved.
pub fn clean_mma(records: Vec<MmaProduct>) -> CleanOutcome<MmaProduct> {
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    let mut seen = BTreeSet::new();
    for record in records {
        let reason = if record.violation().is_some() {
            Some(DropReason::Invalid)
        } else if record.status != AuthorisationStatus::Authorised {
            Some(DropReason::Withdrawn)
        } else if !seen.insert(record.authorisation_number.clone()) {
            Some(DropReason::Duplicate)
        } else {
            None
        };
        match reason {
            Some(reason) => dropped.push(Dropped { record, reason }),
            None => kept.push(record),
        }
    }
    CleanOutcome { kept, dropped }
}

impl BnfMonograph {
    fn violation(&self) -> Option<String> {
        if self.name.trim().is_empty() {
            return Some("name is empty".into());
        }
        if self.constituents.len() == 1 {
            return Some("combined monograph needs at least two constituents".into());
        }
        let mut names = BTreeSet::new();
        for effect in &self.side_effects {
            if !names.insert(effect.name.to_lowercase()) {
                return Some(format!("duplicate side effect {:?}", effect.name));
            }
        }
        None
    }
}

/// Cleans monographs; the dedup key is the normalised monograph name.
pub fn clean_bnf(records: Vec<BnfMonograph>, lexicon: &SaltLexicon) -> CleanOutcome<BnfMonograph> {
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    let mut seen = BTreeSet::new();
    for record in records {
        let reason = if record.violation().is_some() {
            Some(DropReason::Invalid)
        } else {
            let key = normalize_name(&record.name, lexicon)
                .map(|n| n.canonical)
                .unwrap_or_default();
            if !seen.insert(key) {
                Some(DropReason::Duplicate)
            } else {
                None
            }
        };
        match reason {
            Some(reason) => dropped.push(Dropped { record, reason }),
            None => kept.push(record),
        }
    }
    CleanOutcome { kept, dropped }
}

pub fn clean_drugbank(records: Vec<DrugBankEntry>) -> CleanOutcome<DrugBankEntry> {
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    let mut seen = BTreeSet::new();
    for record in records {
        let invalid = record.drugbank_id.trim().is_empty() || record.primary_name.trim().is_empty();
        let reason = if invalid {
            Some(DropReason::Invalid)
        } else if !seen.insert(record.drugbank_id.clone()) {
            Some(DropReason::Duplicate)
        } else {
            None
        };
        match reason {
            Some(reason) => dropped.push(Dropped { record, reason }),
            None => kept.push(record),
        }
    }
    CleanOutcome { kept, dropped }
}

pub fn clean_pubchem(records: Vec<PubChemCompound>) -> CleanOutcome<PubChemCompound> {
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    let mut seen = BTreeSet::new();
    for record in records {
        let invalid = record.cid == 0 || record.name.trim().is_empty();
        let reason = if invalid {
            Some(DropReason::Invalid)
        } else if !seen.insert(record.cid) {
            Some(DropReason::Duplicate)
        } else {
            None
        };
        match reason {
            Some(reason) => dropped.push(Dropped { record, reason }),
            None => kept.push(record),
        }
    }
    CleanOutcome { kept, dropped }
}
