//! A-Box construction: turns cleaned records plus their mapping results
//! into provenance-attributed quads.
//!
//! Every assertion is placed in the named graph of the source it came from
//! (product facts in the registry graph, clinical facts in the formulary
//! graph, and so on), so provenance stays queryable. Blank nodes are never
//! emitted: dosage, interaction, advisory, and authorisation nodes get
//! deterministic skolem IRIs derived from their participants, which keeps
//! exports byte-identical across runs.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::store::QuadStore;
use super::term::{Iri, Literal, Quad, Term};
use super::vocab;
use crate::ingest::{
    AdrFrequency, AuthorisationStatus, BnfMonograph, DrugBankEntry, MmaProduct, PubChemCompound,
};
use crate::normalize::{normalize_name, slugify, strip_salt, SaltLexicon};
use crate::resolve::{assign_uri, base_key, EntityRef, MappingResult, SubjectRef};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("inconsistent mapping: {0}")]
    InconsistentMapping(String),
}

fn freq_token(frequency: AdrFrequency) -> &'static str {
    match frequency {
        AdrFrequency::VeryCommon => "very_common",
        AdrFrequency::Common => "common",
        AdrFrequency::Uncommon => "uncommon",
        AdrFrequency::Rare => "rare",
        AdrFrequency::VeryRare => "very_rare",
    }
}

fn status_label(status: AuthorisationStatus) -> &'static str {
    match status {
        AuthorisationStatus::Authorised => "Authorized",
        AuthorisationStatus::Withdrawn => "Withdrawn",
        AuthorisationStatus::Suspended => "Suspended",
    }
}

/// Decimal lexical form of a dosage value ("500", "0.25").
fn decimal_lexical(value: f64) -> String {
    format!("{value}")
}

struct Emitter {
    quads: Vec<Quad>,
}

impl Emitter {
    fn push(&mut self, subject: &Iri, predicate: &str, object: Term, graph: &str) {
        let quad = Quad::new(
            Term::Iri(subject.clone()),
            Iri::known(predicate),
            object,
            Iri::known(graph),
        )
        .expect("IRI subject");
        self.quads.push(quad);
    }

    fn typed(&mut self, subject: &Iri, class: &str, graph: &str) {
        self.push(
            subject,
            vocab::RDF_TYPE,
            Term::Iri(Iri::known(class)),
            graph,
        );
    }

    fn literal(&mut self, subject: &Iri, predicate: &str, value: &str, graph: &str) {
        self.push(
            subject,
            predicate,
            Term::Literal(Literal::string(value)),
            graph,
        );
    }
}

fn mdx(path: &str, slug: &str) -> Iri {
    Iri::known(format!("{}{path}/{slug}", vocab::MDX))
}

/// Skolem IRI of a shared concept node (indication, ADR, class, ...) keyed
/// by its normalised text, so the same concept from different monographs is
/// one node.
fn concept_iri(path: &str, text: &str, lexicon: &SaltLexicon) -> Iri {
    let key = normalize_name(text, lexicon)
        .map(|n| n.canonical)
        .unwrap_or_else(|_| text.to_string());
    mdx(path, &slugify(&key))
}

/// Builds the knowledge graph from cleaned records and their mapping
/// results.
///
/// Per product: a typed Product node with name, authorisation status, form,
/// marketing-authorisation node, and per ingredient exactly one
/// `has_active_ingredient` edge paired with exactly one
/// `has_active_ingredient_dosage` edge to a dosage node. Ingredient nodes
/// are keyed by resolved base name, so salt variants of one substance share
/// a node. Formulary data (indications, contraindications, adverse
/// reactions, therapeutic classes, pregnancy/breastfeeding advisories,
/// interactions) attaches to the matched ingredient nodes; interactions are
/// reified as one node per unordered ingredient pair, asserted from both
/// participants. DrugBank contributes ATC codes, identities, and
/// interactions for ingredients it can identify; chemical fallback matches
/// contribute compound identifiers.
pub fn build_graph(
    products: &[MmaProduct],
    bnf: &[BnfMonograph],
    drugbank: &[DrugBankEntry],
    pubchem: &[PubChemCompound],
    mappings: &[MappingResult],
    lexicon: &SaltLexicon,
) -> Result<QuadStore, GraphError> {
    let product_by_auth: BTreeMap<&str, &MmaProduct> = products
        .iter()
        .map(|p| (p.authorisation_number.as_str(), p))
        .collect();
    let monograph_by_name: BTreeMap<&str, &BnfMonograph> =
        bnf.iter().map(|m| (m.name.as_str(), m)).collect();
    let entry_by_id: BTreeMap<&str, &DrugBankEntry> = drugbank
        .iter()
        .map(|e| (e.drugbank_id.as_str(), e))
        .collect();
    let compound_by_cid: BTreeMap<u64, &PubChemCompound> =
        pubchem.iter().map(|c| (c.cid, c)).collect();

    // Validate every mapping against the records it claims to describe.
    let mut product_results: BTreeMap<&str, &MappingResult> = BTreeMap::new();
    let mut ingredient_results: BTreeMap<(&str, &str), &MappingResult> = BTreeMap::new();
    for mapping in mappings {
        match &mapping.subject {
            SubjectRef::Product {
                authorisation_number,
                ..
            } => {
                if !product_by_auth.contains_key(authorisation_number.as_str()) {
                    return Err(GraphError::InconsistentMapping(format!(
                        "mapping references unknown product {authorisation_number}"
                    )));
                }
                product_results.insert(authorisation_number.as_str(), mapping);
            }
            SubjectRef::Ingredient {
                name,
                product: Some(auth),
            } => {
                let product = product_by_auth.get(auth.as_str()).ok_or_else(|| {
                    GraphError::InconsistentMapping(format!(
                        "ingredient mapping references unknown product {auth}"
                    ))
                })?;
                if !product.active_ingredients.iter().any(|i| &i.name == name) {
                    return Err(GraphError::InconsistentMapping(format!(
                        "product {auth} has no ingredient {name:?}"
                    )));
                }
                ingredient_results.insert((auth.as_str(), name.as_str()), mapping);
            }
            SubjectRef::Ingredient {
                name,
                product: None,
            } => {
                return Err(GraphError::InconsistentMapping(format!(
                    "ingredient mapping for {name:?} lacks product context"
                )));
            }
        }
        match &mapping.target {
            Some(EntityRef::Bnf(name)) if !monograph_by_name.contains_key(name.as_str()) => {
                return Err(GraphError::InconsistentMapping(format!(
                    "mapping targets unknown monograph {name:?}"
                )));
            }
            Some(EntityRef::DrugBank(id)) if !entry_by_id.contains_key(id.as_str()) => {
                return Err(GraphError::InconsistentMapping(format!(
                    "mapping targets unknown entry {id}"
                )));
            }
            Some(EntityRef::PubChem(cid)) if !compound_by_cid.contains_key(cid) => {
                return Err(GraphError::InconsistentMapping(format!(
                    "mapping targets unknown compound {cid}"
                )));
            }
            _ => {}
        }
    }

    let mut emit = Emitter {
        quads: vocab::ontology_quads(),
    };

    // Base name an ingredient node is keyed by: the resolution target's
    // name when there is one, the raw ingredient's stripped name otherwise.
    let node_key = |auth: &str, raw: &str| -> String {
        let fallback = || base_key(raw, lexicon).unwrap_or_else(|| raw.to_lowercase());
        match ingredient_results
            .get(&(auth, raw))
            .and_then(|r| r.target.as_ref())
        {
            Some(EntityRef::Bnf(name)) => normalize_name(name, lexicon)
                .map(|n| strip_salt(&n, lexicon).base.canonical)
                .unwrap_or_else(|_| fallback()),
            Some(EntityRef::DrugBank(id)) => entry_by_id
                .get(id.as_str())
                .and_then(|e| normalize_name(&e.primary_name, lexicon).ok())
                .map(|n| strip_salt(&n, lexicon).base.canonical)
                .unwrap_or_else(fallback),
            Some(EntityRef::PubChem(cid)) => compound_by_cid
                .get(cid)
                .and_then(|c| normalize_name(&c.name, lexicon).ok())
                .map(|n| strip_salt(&n, lexicon).base.canonical)
                .unwrap_or_else(fallback),
            None => fallback(),
        }
    };

    // First pass: products, ingredient nodes, dosages, registry facts.
    let mut ingredient_iris: BTreeMap<String, Iri> = BTreeMap::new();
    let mut attachments: BTreeSet<(String, String)> = BTreeSet::new(); // (node key, monograph)
    let mut pubchem_identity: BTreeMap<String, u64> = BTreeMap::new();
    for product in products {
        let auth = product.authorisation_number.as_str();
        let product_iri = Iri::known(assign_uri(product, lexicon));
        emit.typed(&product_iri, vocab::PRODUCT, vocab::GRAPH_MMA);
        emit.literal(
            &product_iri,
            vocab::NAME,
            &product.medicine_name,
            vocab::GRAPH_MMA,
        );
        emit.literal(
            &product_iri,
            vocab::AUTHORISATION_STATUS,
            status_label(product.status),
            vocab::GRAPH_MMA,
        );
        emit.literal(
            &product_iri,
            vocab::PHARMACEUTICAL_FORM,
            &product.pharmaceutical_form,
            vocab::GRAPH_MMA,
        );

        let ma_iri = mdx("authorisation", &slugify(auth));
        emit.push(
            &product_iri,
            vocab::HAS_MARKETING_AUTHORISATION,
            Term::Iri(ma_iri.clone()),
            vocab::GRAPH_MMA,
        );
        emit.typed(&ma_iri, vocab::MARKETING_AUTHORISATION, vocab::GRAPH_MMA);
        emit.literal(&ma_iri, vocab::NAME, auth, vocab::GRAPH_MMA);
        emit.literal(
            &ma_iri,
            vocab::AUTHORISATION_HOLDER,
            &product.authorisation_holder,
            vocab::GRAPH_MMA,
        );
        emit.push(
            &ma_iri,
            vocab::AUTHORISATION_DATE,
            Term::Literal(Literal::typed(
                &product.authorisation_date,
                Iri::known(vocab::XSD_DATE),
            )),
            vocab::GRAPH_MMA,
        );
        emit.literal(
            &ma_iri,
            vocab::HOLDER_ADDRESS,
            &product.holder_address,
            vocab::GRAPH_MMA,
        );

        for ingredient in &product.active_ingredients {
            let key = node_key(auth, &ingredient.name);
            let ing_iri = mdx("ingredient", &slugify(&key));
            ingredient_iris.insert(key.clone(), ing_iri.clone());
            emit.typed(&ing_iri, vocab::ACTIVE_INGREDIENT, vocab::GRAPH_MMA);
            emit.literal(&ing_iri, vocab::NAME, &key, vocab::GRAPH_MMA);
            emit.push(
                &product_iri,
                vocab::HAS_ACTIVE_INGREDIENT,
                Term::Iri(ing_iri.clone()),
                vocab::GRAPH_MMA,
            );

            let dosage_iri = mdx("dosage", &format!("{}-{}", slugify(auth), slugify(&key)));
            emit.push(
                &product_iri,
                vocab::HAS_ACTIVE_INGREDIENT_DOSAGE,
                Term::Iri(dosage_iri.clone()),
                vocab::GRAPH_MMA,
            );
            emit.push(
                &dosage_iri,
                vocab::VALUE,
                Term::Literal(Literal::typed(
                    decimal_lexical(ingredient.dosage_value),
                    Iri::known(vocab::XSD_DECIMAL),
                )),
                vocab::GRAPH_MMA,
            );
            emit.literal(
                &dosage_iri,
                vocab::UNIT,
                &ingredient.dosage_unit,
                vocab::GRAPH_MMA,
            );
            emit.push(
                &dosage_iri,
                vocab::FOR_INGREDIENT,
                Term::Iri(ing_iri.clone()),
                vocab::GRAPH_MMA,
            );

            if let Some(code) = &product.atc_code {
                let atc_iri = mdx("atc", &slugify(code));
                emit.typed(&atc_iri, vocab::ATC_CODE, vocab::GRAPH_MMA);
                emit.literal(&atc_iri, vocab::NAME, code, vocab::GRAPH_MMA);
                emit.push(
                    &ing_iri,
                    vocab::HAS_ATC,
                    Term::Iri(atc_iri),
                    vocab::GRAPH_MMA,
                );
            }

            // Where does this ingredient's clinical data come from?
            match ingredient_results
                .get(&(auth, ingredient.name.as_str()))
                .and_then(|r| r.target.as_ref())
            {
                Some(EntityRef::Bnf(name)) => {
                    attachments.insert((key.clone(), name.clone()));
                }
                Some(EntityRef::PubChem(cid)) => {
                    pubchem_identity.insert(key.clone(), *cid);
                }
                _ => {}
            }
            if let Some(result) = product_results.get(auth) {
                if let Some(EntityRef::Bnf(name)) = &result.target {
                    // Combined-monograph products: the monograph covers
                    // every component.
                    attachments.insert((key.clone(), name.clone()));
                }
            }
        }

        // Full-product-name fallback identities hang off the product node.
        if let Some(result) = product_results.get(auth) {
            match &result.target {
                Some(EntityRef::DrugBank(id)) => {
                    emit.literal(&product_iri, vocab::DRUGBANK_ID, id, vocab::GRAPH_DRUGBANK);
                }
                Some(EntityRef::PubChem(cid)) => {
                    emit.push(
                        &product_iri,
                        vocab::PUBCHEM_CID,
                        Term::Literal(Literal::typed(
                            cid.to_string(),
                            Iri::known(vocab::XSD_INTEGER),
                        )),
                        vocab::GRAPH_PUBCHEM,
                    );
                }
                _ => {}
            }
        }
    }

    // Second pass: formulary facts for every (ingredient, monograph)
    // attachment.
    let mut ddi_pairs: BTreeSet<(String, String)> = BTreeSet::new();
    for (key, monograph_name) in &attachments {
        let ing_iri = ingredient_iris[key].clone();
        let monograph = monograph_by_name[monograph_name.as_str()];

        for indication in &monograph.indications {
            let node = concept_iri("indication", indication, lexicon);
            emit.typed(&node, vocab::INDICATION, vocab::GRAPH_BNF);
            emit.literal(&node, vocab::NAME, indication, vocab::GRAPH_BNF);
            emit.push(
                &ing_iri,
                vocab::HAS_INDICATION,
                Term::Iri(node),
                vocab::GRAPH_BNF,
            );
        }
        for contraindication in &monograph.contraindications {
            let node = concept_iri("contraindication", contraindication, lexicon);
            emit.typed(&node, vocab::CONTRAINDICATION, vocab::GRAPH_BNF);
            emit.literal(&node, vocab::NAME, contraindication, vocab::GRAPH_BNF);
            emit.push(
                &ing_iri,
                vocab::HAS_CONTRAINDICATION,
                Term::Iri(node),
                vocab::GRAPH_BNF,
            );
        }
        for effect in &monograph.side_effects {
            let node = concept_iri("adr", &effect.name, lexicon);
            emit.typed(&node, vocab::ADVERSE_DRUG_REACTION, vocab::GRAPH_BNF);
            emit.literal(&node, vocab::NAME, &effect.name, vocab::GRAPH_BNF);
            if let Some(frequency) = effect.frequency {
                emit.literal(
                    &node,
                    vocab::FREQUENCY,
                    freq_token(frequency),
                    vocab::GRAPH_BNF,
                );
            }
            if let Some(severity) = &effect.severity {
                emit.literal(&node, vocab::SEVERITY, severity, vocab::GRAPH_BNF);
            }
            emit.push(
                &ing_iri,
                vocab::HAS_SIDE_EFFECT,
                Term::Iri(node),
                vocab::GRAPH_BNF,
            );
        }
        if let Some(class) = &monograph.therapeutic_class {
            let node = concept_iri("class", class, lexicon);
            emit.typed(&node, vocab::THERAPEUTIC_CLASS, vocab::GRAPH_BNF);
            emit.literal(&node, vocab::NAME, class, vocab::GRAPH_BNF);
            emit.push(
                &ing_iri,
                vocab::HAS_THERAPEUTIC_CLASS,
                Term::Iri(node),
                vocab::GRAPH_BNF,
            );
        }
        for (context, text) in [
            ("pregnancy", &monograph.pregnancy),
            ("breastfeeding", &monograph.breastfeeding),
        ] {
            if let Some(text) = text {
                let node = mdx("advisory", &format!("{}-{context}", slugify(key)));
                emit.push(
                    &ing_iri,
                    vocab::HAS_SAFETY_ADVISORY,
                    Term::Iri(node.clone()),
                    vocab::GRAPH_BNF,
                );
                emit.literal(&node, vocab::ADVISORY_CONTEXT, context, vocab::GRAPH_BNF);
                emit.literal(&node, vocab::SAFETY_NOTE, text, vocab::GRAPH_BNF);
            }
        }

        // Interactions become first-class nodes shared by both partners.
        // Only pairs where both ends are ingredient nodes in this build are
        // asserted; the first assertion of an unordered pair wins, so the
        // formulary takes precedence over DrugBank below.
        for interaction in &monograph.interactions {
            let Some(partner_key) = base_key(&interaction.partner_name, lexicon) else {
                continue;
            };
            if partner_key == *key || !ingredient_iris.contains_key(&partner_key) {
                continue;
            }
            let pair = if *key < partner_key {
                (key.clone(), partner_key.clone())
            } else {
                (partner_key.clone(), key.clone())
            };
            if !ddi_pairs.insert(pair.clone()) {
                continue;
            }
            let node = mdx(
                "ddi",
                &format!("{}--{}", slugify(&pair.0), slugify(&pair.1)),
            );
            emit.typed(&node, vocab::DRUG_DRUG_INTERACTION, vocab::GRAPH_BNF);
            emit.literal(
                &node,
                vocab::INTERACTION_TYPE,
                &interaction.interaction_type,
                vocab::GRAPH_BNF,
            );
            if let Some(severity) = &interaction.severity {
                emit.literal(
                    &node,
                    vocab::INTERACTION_SEVERITY,
                    severity,
                    vocab::GRAPH_BNF,
                );
            }
            if let Some(note) = &interaction.note {
                emit.literal(&node, vocab::NOTE, note, vocab::GRAPH_BNF);
            }
            for end in [&pair.0, &pair.1] {
                emit.push(
                    &ingredient_iris[end],
                    vocab::HAS_DRUG_INTERACTION,
                    Term::Iri(node.clone()),
                    vocab::GRAPH_BNF,
                );
            }
        }
    }

    // Third pass: DrugBank identities, ATC codes, and interactions for
    // every entry that names one of our ingredient nodes.
    let mut db_identity: BTreeMap<&str, String> = BTreeMap::new(); // entry id -> node key
    for entry in drugbank {
        let mut keys: BTreeSet<String> = BTreeSet::new();
        let claim = |raw: &str, keys: &mut BTreeSet<String>| {
            if let Ok(n) = normalize_name(raw, lexicon) {
                keys.insert(n.canonical.clone());
                keys.insert(strip_salt(&n, lexicon).base.canonical);
            }
        };
        claim(&entry.primary_name, &mut keys);
        for synonym in &entry.synonyms {
            claim(synonym, &mut keys);
        }
        for salt in &entry.salts {
            claim(&salt.salt_name, &mut keys);
        }
        if let Some(key) = keys.into_iter().find(|k| ingredient_iris.contains_key(k)) {
            db_identity.entry(entry.drugbank_id.as_str()).or_insert(key);
        }
    }
    for entry in drugbank {
        let Some(key) = db_identity.get(entry.drugbank_id.as_str()) else {
            continue;
        };
        let ing_iri = ingredient_iris[key].clone();
        emit.literal(
            &ing_iri,
            vocab::DRUGBANK_ID,
            &entry.drugbank_id,
            vocab::GRAPH_DRUGBANK,
        );
        for code in &entry.atc_codes {
            let atc_iri = mdx("atc", &slugify(code));
            emit.typed(&atc_iri, vocab::ATC_CODE, vocab::GRAPH_DRUGBANK);
            emit.literal(&atc_iri, vocab::NAME, code, vocab::GRAPH_DRUGBANK);
            emit.push(
                &ing_iri,
                vocab::HAS_ATC,
                Term::Iri(atc_iri),
                vocab::GRAPH_DRUGBANK,
            );
        }
        for ddi in &entry.ddis {
            let Some(partner_key) = db_identity.get(ddi.partner_drugbank_id.as_str()) else {
                continue;
            };
            if partner_key == key {
                continue;
            }
            let pair = if key < partner_key {
                (key.clone(), partner_key.clone())
            } else {
                (partner_key.clone(), key.clone())
            };
            if !ddi_pairs.insert(pair.clone()) {
                continue; // already asserted (formulary precedence)
            }
            let node = mdx(
                "ddi",
                &format!("{}--{}", slugify(&pair.0), slugify(&pair.1)),
            );
            emit.typed(&node, vocab::DRUG_DRUG_INTERACTION, vocab::GRAPH_DRUGBANK);
            emit.literal(
                &node,
                vocab::INTERACTION_TYPE,
                &ddi.description,
                vocab::GRAPH_DRUGBANK,
            );
            if let Some(severity) = &ddi.severity {
                emit.literal(
                    &node,
                    vocab::INTERACTION_SEVERITY,
                    severity,
                    vocab::GRAPH_DRUGBANK,
                );
            }
            if let Some(mechanism) = &ddi.mechanism {
                emit.literal(&node, vocab::MECHANISM, mechanism, vocab::GRAPH_DRUGBANK);
            }
            for end in [&pair.0, &pair.1] {
                emit.push(
                    &ingredient_iris[end],
                    vocab::HAS_DRUG_INTERACTION,
                    Term::Iri(node.clone()),
                    vocab::GRAPH_DRUGBANK,
                );
            }
        }
    }

    // Chemical fallback identities.
    for (key, cid) in &pubchem_identity {
        emit.push(
            &ingredient_iris[key],
            vocab::PUBCHEM_CID,
            Term::Literal(Literal::typed(
                cid.to_string(),
                Iri::known(vocab::XSD_INTEGER),
            )),
            vocab::GRAPH_PUBCHEM,
        );
    }

    Ok(QuadStore::from_quads(emit.quads))
}
