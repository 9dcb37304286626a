//! Human- and machine-readable renderings of store statistics and mapping
//! reports. Counts come straight from the underlying structures; the
//! renderers never recompute anything.

use serde::Serialize;

use crate::graph::{vocab, QuadStore};
use crate::resolve::{MappingReport, MappingTier, Strategy};

#[derive(Debug, Clone, Serialize)]
pub struct StatRow {
    pub label: String,
    pub iri: String,
    pub count: usize,
}

/// Entity and relation statistics for a built store, one row per ontology
/// class and per vocabulary predicate, zero rows included.
#[derive(Debug, Clone, Serialize)]
pub struct StatsDocument {
    pub entities: Vec<StatRow>,
    pub relations: Vec<StatRow>,
}

/// Display labels of the entity-statistics rows.
fn class_label(iri: &str) -> &'static str {
    match iri {
        vocab::ACTIVE_INGREDIENT => "Active Ingredient",
        vocab::ATC_CODE => "ATC Code",
        vocab::ADVERSE_DRUG_REACTION => "ADR",
        vocab::CONTRAINDICATION => "Contraindication",
        vocab::DRUG_DRUG_INTERACTION => "Drug-Drug Interaction",
        vocab::INDICATION => "Indication",
        vocab::PRODUCT => "Product",
        vocab::THERAPEUTIC_CLASS => "Therapeutic Class",
        vocab::COMPOUND => "Compound",
        vocab::EXCIPIENT => "Excipient",
        vocab::STORAGE => "Storage",
        vocab::MARKETING_AUTHORISATION => "Marketing Authorisation",
        vocab::METHOD_OF_ADMINISTRATION => "Method of Administration",
        _ => "Other",
    }
}

/// Entity-row order: the eight headline classes first, then the remaining
/// vocabulary classes.
const ENTITY_ROW_ORDER: [&str; 13] = [
    vocab::ACTIVE_INGREDIENT,
    vocab::ATC_CODE,
    vocab::ADVERSE_DRUG_REACTION,
    vocab::CONTRAINDICATION,
    vocab::DRUG_DRUG_INTERACTION,
    vocab::INDICATION,
    vocab::PRODUCT,
    vocab::THERAPEUTIC_CLASS,
    vocab::COMPOUND,
    vocab::EXCIPIENT,
    vocab::MARKETING_AUTHORISATION,
    vocab::METHOD_OF_ADMINISTRATION,
    vocab::STORAGE,
];

/// Relation-row order: the eight headline predicates first, then the rest
/// of the vocabulary.
const RELATION_ROW_ORDER: [&str; 10] = [
    vocab::HAS_ACTIVE_INGREDIENT,
    vocab::HAS_ACTIVE_INGREDIENT_DOSAGE,
    vocab::HAS_ATC,
    vocab::HAS_CONTRAINDICATION,
    vocab::HAS_DRUG_INTERACTION,
    vocab::HAS_INDICATION,
    vocab::HAS_SIDE_EFFECT,
    vocab::HAS_THERAPEUTIC_CLASS,
    vocab::HAS_SAFETY_ADVISORY,
    vocab::HAS_MARKETING_AUTHORISATION,
];

fn predicate_label(iri: &str) -> String {
    iri.rsplit(['/', '#']).next().unwrap_or(iri).to_string()
}

/// Statistics document for a built store.
pub fn kg_stats(store: &QuadStore) -> StatsDocument {
    let class_counts = store.class_counts();
    let predicate_counts = store.predicate_counts();

    let entities = ENTITY_ROW_ORDER
        .iter()
        .map(|iri| StatRow {
            label: class_label(iri).to_string(),
            iri: iri.to_string(),
            count: class_counts.get(*iri).copied().unwrap_or(0),
        })
        .collect();

    let mut relations: Vec<StatRow> = RELATION_ROW_ORDER
        .iter()
        .map(|iri| StatRow {
            label: predicate_label(iri),
            iri: iri.to_string(),
            count: predicate_counts.get(*iri).copied().unwrap_or(0),
        })
        .collect();
    let mut remainder: Vec<&str> = vocab::PREDICATES
        .iter()
        .filter(|p| !RELATION_ROW_ORDER.contains(p))
        .copied()
        .collect();
    remainder.sort();
    for iri in remainder {
        relations.push(StatRow {
            label: predicate_label(iri),
            iri: iri.to_string(),
            count: predicate_counts.get(iri).copied().unwrap_or(0),
        });
    }

    StatsDocument {
        entities,
        relations,
    }
}

fn aligned_table(title: &str, rows: &[(String, usize)]) -> String {
    let width = rows.iter().map(|(label, _)| label.len()).max().unwrap_or(0);
    let mut out = format!("{title}\n");
    for (label, count) in rows {
        out.push_str(&format!("  {label:<width$}  {count}\n"));
    }
    out
}

/// Aligned-text rendering of [`kg_stats`].
pub fn render_stats_text(doc: &StatsDocument) -> String {
    let entities: Vec<(String, usize)> = doc
        .entities
        .iter()
        .map(|r| (r.label.clone(), r.count))
        .collect();
    let relations: Vec<(String, usize)> = doc
        .relations
        .iter()
        .map(|r| (r.label.clone(), r.count))
        .collect();
    format!(
        "{}\n{}",
        aligned_table("Entity statistics", &entities),
        aligned_table("Relation statistics", &relations)
    )
}

/// Text rendering of a mapping report: per-source outcome tables with the
/// canonical row labels, per-tier counts, and the strategy aggregation.
pub fn render_mapping_report(report: &MappingReport) -> String {
    let rows = &report.source_rows;
    let bnf: Vec<(String, usize)> = vec![
        (
            "Direct match to BNF entry (e.g., \"Cetirizine hydrochloride\")".into(),
            rows.bnf_direct,
        ),
        (
            "No match to BNF (even after normalisation)".into(),
            rows.bnf_no_match,
        ),
        (
            "Mapped via component decomposition (BNF entries exist for parts of combination)"
                .into(),
            rows.bnf_via_components,
        ),
        (
            "Component-level mapping failed (no BNF entries found for any components)".into(),
            rows.bnf_component_failed,
        ),
        (
            "Mapped via synonym/salt (from DrugBank) to BNF".into(),
            rows.bnf_via_synonym_salt,
        ),
        (
            "Synonym-based mapping failed (BNF entry still missing)".into(),
            rows.bnf_synonym_failed,
        ),
    ];
    let drugbank: Vec<(String, usize)> = vec![
        (
            "Mapped via direct match, synonym, or salt normalisation".into(),
            rows.drugbank_mapped,
        ),
        (
            "No match to DrugBank (after synonym/salt attempt)".into(),
            rows.drugbank_no_match,
        ),
        (
            "Component-level mapping to DrugBank (for combinations not found in BNF)".into(),
            rows.drugbank_component,
        ),
        (
            "Mapped via full product name only (ingredient not found in any DB)".into(),
            rows.drugbank_full_name,
        ),
    ];
    let pubchem: Vec<(String, usize)> = vec![
        (
            "Direct match to PubChem compound".into(),
            rows.pubchem_direct,
        ),
        (
            "No match in PubChem (exhausted all mapping tiers)".into(),
            rows.pubchem_no_match,
        ),
    ];
    let tiers: Vec<(String, usize)> = MappingTier::ALL
        .iter()
        .map(|t| (t.label().to_string(), report.tier_count(*t)))
        .collect();
    let strategies: Vec<(String, usize)> = Strategy::ALL
        .iter()
        .map(|s| (s.label().to_string(), report.strategy_count(*s)))
        .collect();

    let mut out = String::new();
    out.push_str(&aligned_table("BNF mapping outcomes", &bnf));
    out.push('\n');
    out.push_str(&aligned_table("DrugBank mapping outcomes", &drugbank));
    out.push('\n');
    out.push_str(&aligned_table("PubChem mapping outcomes", &pubchem));
    out.push('\n');
    out.push_str(&aligned_table("Resolution tiers", &tiers));
    out.push('\n');
    out.push_str(&aligned_table("Mapping strategies", &strategies));
    out.push_str(&format!(
        "\nTier counts sum to {} subjects; {} unmatched; {} ambiguous keys.\n",
        report.subjects,
        report.tier_count(MappingTier::Unmatched),
        report.ambiguities.len()
    ));
    out
}
