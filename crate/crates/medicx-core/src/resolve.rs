//! Tiered entity resolution of products and active ingredients against the
//! formulary, DrugBank, and PubChem datasets.
//!
//! The pipeline is fixed-order and first-success-wins:
//!
//! 1. formulary lookup with the ingredient name as written (monographs are
//!    reachable both by their full name and by their salt-stripped name);
//! 2. DrugBank synonym/salt resolution, then a formulary re-probe with the
//!    resolved primary name;
//! 3. PubChem as the chemical-identifier fallback;
//! 4. for products whose every ingredient stayed unmatched, one last probe
//!    with the descriptor-stripped full product name.
//!
//! Combination products are checked against combined monographs (keyed by
//! sorted constituent set) before decomposition. Every attempt lands in the
//! result trail, so each mapping is auditable after the fact.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::ingest::{BnfMonograph, DrugBankEntry, MmaProduct, PubChemCompound};
use crate::normalize::{
    normalize_name, strip_descriptors, strip_salt, NormalizedName, SaltLexicon,
};

#[derive(Debug, Error)]
pub enum ResolveError {
    #[error("entry {entry} declares an interaction with unknown partner {partner}")]
    DanglingDdiPartner { entry: String, partner: String },
}

// ---------------------------------------------------------------------------
// Index
// ---------------------------------------------------------------------------

/// How a DrugBank key relates to its entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DbKeyKind {
    Primary,
    Salt,
    Synonym,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Keyspace {
    BnfName,
    BnfSaltStripped,
    BnfCombined,
    DrugBank,
    PubChem,
}

/// A key claimed by more than one candidate. The lexicographically smallest
/// candidate wins at lookup time; the collision itself is preserved for
/// curation instead of being silently overwritten.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ambiguity {
    pub keyspace: Keyspace,
    pub key: String,
    pub candidates: Vec<String>,
    pub winner: String,
}

/// Prebuilt lookup structures for the resolution pipeline. Built once from
/// cleaned records; immutable afterwards.
#[derive(Debug, Default)]
pub struct ResolutionIndex {
    bnf_name_keys: BTreeMap<String, BTreeSet<String>>,
    bnf_stripped_keys: BTreeMap<String, BTreeSet<String>>,
    bnf_combined: BTreeMap<Vec<String>, BTreeSet<String>>,
    drugbank_keys: BTreeMap<String, BTreeMap<String, DbKeyKind>>,
    drugbank_primary: BTreeMap<String, NormalizedName>,
    pubchem_keys: BTreeMap<String, BTreeSet<u64>>,
    ambiguities: Vec<Ambiguity>,
}

fn insert_key(map: &mut BTreeMap<String, BTreeSet<String>>, key: String, id: &str) {
    map.entry(key).or_default().insert(id.to_string());
}

impl ResolutionIndex {
    pub fn ambiguities(&self) -> &[Ambiguity] {
        &self.ambiguities
    }

    /// Synonym index view for [`crate::normalize::synonym_keys`]: canonical
    /// key -> set of DrugBank ids claiming it.
    pub fn synonym_index(&self) -> BTreeMap<String, BTreeSet<String>> {
        self.drugbank_keys
            .iter()
            .map(|(key, ids)| (key.clone(), ids.keys().cloned().collect()))
            .collect()
    }

    pub fn drugbank_primary_name(&self, id: &str) -> Option<&NormalizedName> {
        self.drugbank_primary.get(id)
    }

    /// All DrugBank entries reachable from a canonical key, with the key kind.
    pub fn drugbank_candidates(&self, key: &str) -> Option<&BTreeMap<String, DbKeyKind>> {
        self.drugbank_keys.get(key)
    }

    fn probe_set<'a>(
        map: &'a BTreeMap<String, BTreeSet<String>>,
        key: &str,
    ) -> Option<(&'a str, bool)> {
        map.get(key).map(|ids| {
            let winner = ids.iter().next().expect("non-empty id set");
            (winner.as_str(), ids.len() > 1)
        })
    }

    fn finalize_ambiguities(&mut self) {
        let mut out = Vec::new();
        let collect = |out: &mut Vec<Ambiguity>,
                       keyspace: Keyspace,
                       map: &BTreeMap<String, BTreeSet<String>>| {
            for (key, ids) in map {
                if ids.len() > 1 {
                    out.push(Ambiguity {
                        keyspace,
                        key: key.clone(),
                        candidates: ids.iter().cloned().collect(),
                        winner: ids.iter().next().expect("non-empty").clone(),
                    });
                }
            }
        };
        collect(&mut out, Keyspace::BnfName, &self.bnf_name_keys);
        collect(&mut out, Keyspace::BnfSaltStripped, &self.bnf_stripped_keys);
        for (key, ids) in &self.bnf_combined {
            if ids.len() > 1 {
                out.push(Ambiguity {
                    keyspace: Keyspace::BnfCombined,
                    key: key.join(" + "),
                    candidates: ids.iter().cloned().collect(),
                    winner: ids.iter().next().expect("non-empty").clone(),
                });
            }
        }
        for (key, ids) in &self.drugbank_keys {
            if ids.len() > 1 {
                out.push(Ambiguity {
                    keyspace: Keyspace::DrugBank,
                    key: key.clone(),
                    candidates: ids.keys().cloned().collect(),
                    winner: ids.keys().next().expect("non-empty").clone(),
                });
            }
        }
        for (key, cids) in &self.pubchem_keys {
            if cids.len() > 1 {
                out.push(Ambiguity {
                    keyspace: Keyspace::PubChem,
                    key: key.clone(),
                    candidates: cids.iter().map(u64::to_string).collect(),
                    winner: cids.iter().next().expect("non-empty").to_string(),
                });
            }
        }
        self.ambiguities = out;
    }
}

/// Canonical base key of an ingredient or constituent name: normalised,
/// then salt-stripped.
pub fn base_key(raw: &str, lexicon: &SaltLexicon) -> Option<String> {
    let normalized = normalize_name(raw, lexicon).ok()?;
    Some(strip_salt(&normalized, lexicon).base.canonical)
}

/// Builds the lookup index over cleaned records.
///
/// Monographs are keyed by normalised name and, separately, by their
/// salt-stripped name; combined monographs additionally by their sorted
/// constituent base-name set. DrugBank entries are keyed by primary name,
/// every synonym, and every salt form. Key collisions are kept as
/// ambiguities. DrugBank interactions must reference entries present in the
/// dataset.
pub fn build_indexes(
    bnf: &[BnfMonograph],
    drugbank: &[DrugBankEntry],
    pubchem: &[PubChemCompound],
    lexicon: &SaltLexicon,
) -> Result<ResolutionIndex, ResolveError> {
    let mut index = ResolutionIndex::default();

    for monograph in bnf {
        let Ok(name) = normalize_name(&monograph.name, lexicon) else {
            continue;
        };
        let id = monograph.name.as_str();
        insert_key(&mut index.bnf_name_keys, name.canonical.clone(), id);
        let stripped = strip_salt(&name, lexicon).base.canonical;
        insert_key(&mut index.bnf_stripped_keys, stripped, id);
        if monograph.constituents.len() >= 2 {
            let mut set: Vec<String> = monograph
                .constituents
                .iter()
                .filter_map(|c| base_key(c, lexicon))
                .collect();
            set.sort();
            set.dedup();
            index
                .bnf_combined
                .entry(set)
                .or_default()
                .insert(monograph.name.clone());
        }
    }

    let known_ids: BTreeSet<&str> = drugbank.iter().map(|e| e.drugbank_id.as_str()).collect();
    for entry in drugbank {
        for ddi in &entry.ddis {
            if !known_ids.contains(ddi.partner_drugbank_id.as_str()) {
                return Err(ResolveError::DanglingDdiPartner {
                    entry: entry.drugbank_id.clone(),
                    partner: ddi.partner_drugbank_id.clone(),
                });
            }
        }
        let Ok(primary) = normalize_name(&entry.primary_name, lexicon) else {
            continue;
        };
        let claim = |index: &mut ResolutionIndex, key: String, kind: DbKeyKind| {
            let kinds = index.drugbank_keys.entry(key).or_default();
            let slot = kinds.entry(entry.drugbank_id.clone()).or_insert(kind);
            // Primary beats salt beats synonym when one string plays
            // several roles for the same entry.
            if kind < *slot {
                *slot = kind;
            }
        };
        claim(&mut index, primary.canonical.clone(), DbKeyKind::Primary);
        for synonym in &entry.synonyms {
            if let Ok(n) = normalize_name(synonym, lexicon) {
                claim(&mut index, n.canonical, DbKeyKind::Synonym);
            }
        }
        for salt in &entry.salts {
            if let Ok(n) = normalize_name(&salt.salt_name, lexicon) {
                claim(&mut index, n.canonical, DbKeyKind::Salt);
            }
        }
        index
            .drugbank_primary
            .insert(entry.drugbank_id.clone(), primary);
    }

    for compound in pubchem {
        let mut claim = |key: Option<NormalizedName>| {
            if let Some(n) = key {
                index
                    .pubchem_keys
                    .entry(n.canonical)
                    .or_default()
                    .insert(compound.cid);
            }
        };
        claim(normalize_name(&compound.name, lexicon).ok());
        for synonym in &compound.synonyms {
            claim(normalize_name(synonym, lexicon).ok());
        }
    }

    index.finalize_ambiguities();
    Ok(index)
}

// ---------------------------------------------------------------------------
// Mapping results
// ---------------------------------------------------------------------------

/// Resolution tiers, in pipeline priority order. These are the row
/// categories of the per-source mapping outcome tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum MappingTier {
    BnfDirect,
    BnfViaComponents,
    BnfViaSynonymSalt,
    DrugBankDirectOrSynonymSalt,
    DrugBankComponent,
    FullProductNameOnly,
    PubChemDirect,
    Unmatched,
}

impl MappingTier {
    pub const ALL: [MappingTier; 8] = [
        MappingTier::BnfDirect,
        MappingTier::BnfViaComponents,
        MappingTier::BnfViaSynonymSalt,
        MappingTier::DrugBankDirectOrSynonymSalt,
        MappingTier::DrugBankComponent,
        MappingTier::FullProductNameOnly,
        MappingTier::PubChemDirect,
        MappingTier::Unmatched,
    ];

    pub fn label(self) -> &'static str {
        match self {
            MappingTier::BnfDirect => "BnfDirect",
            MappingTier::BnfViaComponents => "BnfViaComponents",
            MappingTier::BnfViaSynonymSalt => "BnfViaSynonymSalt",
            MappingTier::DrugBankDirectOrSynonymSalt => "DrugBankDirectOrSynonymSalt",
            MappingTier::DrugBankComponent => "DrugBankComponent",
            MappingTier::FullProductNameOnly => "FullProductNameOnly",
            MappingTier::PubChemDirect => "PubChemDirect",
            MappingTier::Unmatched => "Unmatched",
        }
    }
}

/// Target entity of a successful mapping.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "source", content = "id")]
pub enum EntityRef {
    Bnf(String),
    DrugBank(String),
    PubChem(u64),
}

/// What is being mapped: one ingredient of a product, or the product itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum SubjectRef {
    Ingredient {
        name: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        product: Option<String>,
    },
    Product {
        name: String,
        authorisation_number: String,
    },
}

/// Pipeline stages as they appear in result trails, in fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    CombinedMonograph,
    BnfNameKey,
    BnfSaltStrippedKey,
    DrugBank,
    BnfReprobe,
    PubChem,
    FullProductName,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum AttemptOutcome {
    Miss,
    Hit {
        target: EntityRef,
        #[serde(skip_serializing_if = "Option::is_none")]
        via: Option<DbKeyKind>,
        ambiguous: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrailEntry {
    pub stage: Stage,
    pub key: String,
    #[serde(flatten)]
    pub outcome: AttemptOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Note {
    /// Some components of a combination product mapped to the formulary and
    /// some did not.
    PartialComponentMapping,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MappingResult {
    pub subject: SubjectRef,
    pub tier: MappingTier,
    pub target: Option<EntityRef>,
    pub trail: Vec<TrailEntry>,
    #[serde(skip_serializing_if = "BTreeSet::is_empty")]
    pub notes: BTreeSet<Note>,
}

impl MappingResult {
    /// Structural sanity: unmatched iff no target; trail non-empty and in
    /// pipeline stage order.
    pub fn check_invariants(&self) -> Result<(), String> {
        if (self.tier == MappingTier::Unmatched) != self.target.is_none() {
            return Err(format!("tier {:?} inconsistent with target", self.tier));
        }
        if self.trail.is_empty() {
            return Err("empty trail".into());
        }
        if self.trail.windows(2).any(|w| w[0].stage > w[1].stage) {
            return Err("trail stages out of pipeline order".into());
        }
        // First success halts the pipeline: a matched subject's trail ends
        // on the hit that produced its target, except that a DrugBank hit
        // is legitimately followed by the formulary re-probe of the same
        // stage. Unmatched trails are misses throughout.
        match &self.target {
            Some(target) => {
                let hit_at = self
                    .trail
                    .iter()
                    .position(
                        |t| matches!(&t.outcome, AttemptOutcome::Hit { target: hit, .. } if hit == target),
                    )
                    .ok_or("matched result has no hit for its target")?;
                let after = &self.trail[hit_at + 1..];
                let only_reprobe_miss = after.len() <= 1
                    && after.iter().all(|t| {
                        t.stage == Stage::BnfReprobe
                            && matches!(t.outcome, AttemptOutcome::Miss)
                    });
                if !only_reprobe_miss {
                    return Err("trail continues past the stage that matched".into());
                }
            }
            None => {
                if self
                    .trail
                    .iter()
                    .any(|t| matches!(t.outcome, AttemptOutcome::Hit { .. }))
                {
                    return Err("unmatched trail contains a hit".into());
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

struct IngredientResolution {
    tier: MappingTier,
    target: Option<EntityRef>,
    trail: Vec<TrailEntry>,
}

fn probe_bnf_stage1(
    ing: &NormalizedName,
    index: &ResolutionIndex,
    trail: &mut Vec<TrailEntry>,
) -> Option<EntityRef> {
    if let Some((id, ambiguous)) = ResolutionIndex::probe_set(&index.bnf_name_keys, &ing.canonical)
    {
        let target = EntityRef::Bnf(id.to_string());
        trail.push(TrailEntry {
            stage: Stage::BnfNameKey,
            key: ing.canonical.clone(),
            outcome: AttemptOutcome::Hit {
                target: target.clone(),
                via: None,
                ambiguous,
            },
        });
        return Some(target);
    }
    trail.push(TrailEntry {
        stage: Stage::BnfNameKey,
        key: ing.canonical.clone(),
        outcome: AttemptOutcome::Miss,
    });
    if let Some((id, ambiguous)) =
        ResolutionIndex::probe_set(&index.bnf_stripped_keys, &ing.canonical)
    {
        let target = EntityRef::Bnf(id.to_string());
        trail.push(TrailEntry {
            stage: Stage::BnfSaltStrippedKey,
            key: ing.canonical.clone(),
            outcome: AttemptOutcome::Hit {
                target: target.clone(),
                via: None,
                ambiguous,
            },
        });
        return Some(target);
    }
    trail.push(TrailEntry {
        stage: Stage::BnfSaltStrippedKey,
        key: ing.canonical.clone(),
        outcome: AttemptOutcome::Miss,
    });
    None
}

/// Formulary probe used outside stage 1 (re-probes with a resolved primary
/// name): full keyspace first, then salt-stripped keyspace.
fn probe_bnf_any(key: &str, index: &ResolutionIndex) -> Option<(EntityRef, bool)> {
    ResolutionIndex::probe_set(&index.bnf_name_keys, key)
        .or_else(|| ResolutionIndex::probe_set(&index.bnf_stripped_keys, key))
        .map(|(id, ambiguous)| (EntityRef::Bnf(id.to_string()), ambiguous))
}

fn probe_drugbank(
    ing: &NormalizedName,
    index: &ResolutionIndex,
    lexicon: &SaltLexicon,
) -> Option<(String, String, DbKeyKind, bool)> {
    let lookup = |key: &str| {
        index.drugbank_candidates(key).map(|candidates| {
            let (id, kind) = candidates.iter().next().expect("non-empty");
            (key.to_string(), id.clone(), *kind, candidates.len() > 1)
        })
    };
    if let Some(hit) = lookup(&ing.canonical) {
        return Some(hit);
    }
    let split = strip_salt(ing, lexicon);
    if split.salt.is_some() {
        return lookup(&split.base.canonical);
    }
    None
}

fn probe_pubchem(
    ing: &NormalizedName,
    index: &ResolutionIndex,
    lexicon: &SaltLexicon,
) -> Option<(String, u64, bool)> {
    let lookup = |key: &str| {
        index.pubchem_keys.get(key).map(|cids| {
            let cid = *cids.iter().next().expect("non-empty");
            (key.to_string(), cid, cids.len() > 1)
        })
    };
    if let Some(hit) = lookup(&ing.canonical) {
        return Some(hit);
    }
    let split = strip_salt(ing, lexicon);
    if split.salt.is_some() {
        return lookup(&split.base.canonical);
    }
    None
}

fn resolve_ingredient_stages(
    ing: &NormalizedName,
    index: &ResolutionIndex,
    lexicon: &SaltLexicon,
) -> IngredientResolution {
    let mut trail = Vec::new();

    // Stage 1: formulary with the name as written.
    if let Some(target) = probe_bnf_stage1(ing, index, &mut trail) {
        return IngredientResolution {
            tier: MappingTier::BnfDirect,
            target: Some(target),
            trail,
        };
    }

    // Stage 2: DrugBank synonym/salt resolution, then formulary re-probe.
    if let Some((key, id, kind, ambiguous)) = probe_drugbank(ing, index, lexicon) {
        let db_target = EntityRef::DrugBank(id.clone());
        trail.push(TrailEntry {
            stage: Stage::DrugBank,
            key,
            outcome: AttemptOutcome::Hit {
                target: db_target.clone(),
                via: Some(kind),
                ambiguous,
            },
        });
        let primary = index
            .drugbank_primary_name(&id)
            .expect("indexed entry has a primary name")
            .clone();
        if let Some((bnf_target, reprobe_ambiguous)) = probe_bnf_any(&primary.canonical, index) {
            trail.push(TrailEntry {
                stage: Stage::BnfReprobe,
                key: primary.canonical,
                outcome: AttemptOutcome::Hit {
                    target: bnf_target.clone(),
                    via: None,
                    ambiguous: reprobe_ambiguous,
                },
            });
            return IngredientResolution {
                tier: MappingTier::BnfViaSynonymSalt,
                target: Some(bnf_target),
                trail,
            };
        }
        trail.push(TrailEntry {
            stage: Stage::BnfReprobe,
            key: primary.canonical,
            outcome: AttemptOutcome::Miss,
        });
        return IngredientResolution {
            tier: MappingTier::DrugBankDirectOrSynonymSalt,
            target: Some(db_target),
            trail,
        };
    }
    trail.push(TrailEntry {
        stage: Stage::DrugBank,
        key: ing.canonical.clone(),
        outcome: AttemptOutcome::Miss,
    });

    // Stage 3: chemical identifier fallback.
    if let Some((key, cid, ambiguous)) = probe_pubchem(ing, index, lexicon) {
        let target = EntityRef::PubChem(cid);
        trail.push(TrailEntry {
            stage: Stage::PubChem,
            key,
            outcome: AttemptOutcome::Hit {
                target: target.clone(),
                via: None,
                ambiguous,
            },
        });
        return IngredientResolution {
            tier: MappingTier::PubChemDirect,
            target: Some(target),
            trail,
        };
    }
    trail.push(TrailEntry {
        stage: Stage::PubChem,
        key: ing.canonical.clone(),
        outcome: AttemptOutcome::Miss,
    });

    IngredientResolution {
        tier: MappingTier::Unmatched,
        target: None,
        trail,
    }
}

/// Resolves one normalised ingredient name through the staged pipeline.
pub fn resolve_ingredient(
    ing: &NormalizedName,
    index: &ResolutionIndex,
    lexicon: &SaltLexicon,
) -> MappingResult {
    let resolution = resolve_ingredient_stages(ing, index, lexicon);
    MappingResult {
        subject: SubjectRef::Ingredient {
            name: ing.original.clone(),
            product: None,
        },
        tier: resolution.tier,
        target: resolution.target,
        trail: resolution.trail,
        notes: BTreeSet::new(),
    }
}

/// Resolves a cleaned product.
///
/// Combination products map to a combined monograph when one covers their
/// sorted constituent set; otherwise each ingredient is resolved on its own
/// (DrugBank landings become the component tier). When every ingredient is
/// unmatched, the descriptor-stripped product name is tried against
/// DrugBank and PubChem as a last resort.
pub fn resolve_product(
    product: &MmaProduct,
    index: &ResolutionIndex,
    lexicon: &SaltLexicon,
) -> Vec<MappingResult> {
    let decomposed = product.active_ingredients.len() >= 2;

    if decomposed {
        let mut set: Vec<String> = product
            .active_ingredients
            .iter()
            .filter_map(|i| base_key(&i.name, lexicon))
            .collect();
        set.sort();
        set.dedup();
        if let Some(ids) = index.bnf_combined.get(&set) {
            let winner = ids.iter().next().expect("non-empty").clone();
            let target = EntityRef::Bnf(winner);
            return vec![MappingResult {
                subject: SubjectRef::Product {
                    name: product.medicine_name.clone(),
                    authorisation_number: product.authorisation_number.clone(),
                },
                tier: MappingTier::BnfViaComponents,
                target: Some(target.clone()),
                trail: vec![TrailEntry {
                    stage: Stage::CombinedMonograph,
                    key: set.join(" + "),
                    outcome: AttemptOutcome::Hit {
                        target,
                        via: None,
                        ambiguous: ids.len() > 1,
                    },
                }],
                notes: BTreeSet::new(),
            }];
        }
    }

    let mut results: Vec<MappingResult> = Vec::new();
    for ingredient in &product.active_ingredients {
        let Ok(name) = normalize_name(&ingredient.name, lexicon) else {
            continue;
        };
        let resolution = resolve_ingredient_stages(&name, index, lexicon);
        let tier = match resolution.tier {
            // A DrugBank landing reached through decomposition is the
            // component-level tier.
            MappingTier::DrugBankDirectOrSynonymSalt if decomposed => {
                MappingTier::DrugBankComponent
            }
            tier => tier,
        };
        results.push(MappingResult {
            subject: SubjectRef::Ingredient {
                name: ingredient.name.clone(),
                product: Some(product.authorisation_number.clone()),
            },
            tier,
            target: resolution.target,
            trail: resolution.trail,
            notes: BTreeSet::new(),
        });
    }

    let all_unmatched =
        !results.is_empty() && results.iter().all(|r| r.tier == MappingTier::Unmatched);
    if all_unmatched {
        let full_name = normalize_name(&product.medicine_name, lexicon)
            .map(|n| strip_descriptors(&n))
            .ok();
        if let Some(stripped) = full_name {
            let db_hit = index
                .drugbank_candidates(&stripped.canonical)
                .map(|candidates| {
                    let (id, kind) = candidates.iter().next().expect("non-empty");
                    (
                        EntityRef::DrugBank(id.clone()),
                        Some(*kind),
                        candidates.len() > 1,
                    )
                });
            let hit = db_hit.or_else(|| {
                index.pubchem_keys.get(&stripped.canonical).map(|cids| {
                    let cid = *cids.iter().next().expect("non-empty");
                    (EntityRef::PubChem(cid), None, cids.len() > 1)
                })
            });
            match hit {
                Some((target, via, ambiguous)) => {
                    // The product itself is the mapped subject now; the
                    // failed per-ingredient attempts are superseded.
                    return vec![MappingResult {
                        subject: SubjectRef::Product {
                            name: product.medicine_name.clone(),
                            authorisation_number: product.authorisation_number.clone(),
                        },
                        tier: MappingTier::FullProductNameOnly,
                        target: Some(target.clone()),
                        trail: vec![TrailEntry {
                            stage: Stage::FullProductName,
                            key: stripped.canonical,
                            outcome: AttemptOutcome::Hit {
                                target,
                                via,
                                ambiguous,
                            },
                        }],
                        notes: BTreeSet::new(),
                    }];
                }
                None => {
                    for result in &mut results {
                        result.trail.push(TrailEntry {
                            stage: Stage::FullProductName,
                            key: stripped.canonical.clone(),
                            outcome: AttemptOutcome::Miss,
                        });
                    }
                }
            }
        }
    }

    // Flag combination products whose components split between formulary
    // and non-formulary homes.
    if decomposed {
        let bnf_hits = results
            .iter()
            .filter(|r| matches!(r.target, Some(EntityRef::Bnf(_))))
            .count();
        if bnf_hits > 0 && bnf_hits < results.len() {
            for result in &mut results {
                result.notes.insert(Note::PartialComponentMapping);
            }
        }
    }

    results
}

// ---------------------------------------------------------------------------
// Product URIs
// ---------------------------------------------------------------------------

/// Deterministic product IRI: hyphen-joined slug of normalised name,
/// pharmaceutical form, and authorisation number. Authorisation-number
/// uniqueness in a cleaned dataset makes this injective.
pub fn assign_uri(product: &MmaProduct, lexicon: &SaltLexicon) -> String {
    let name = normalize_name(&product.medicine_name, lexicon)
        .map(|n| n.canonical)
        .unwrap_or_default();
    let slug: Vec<String> = [
        name.as_str(),
        &product.pharmaceutical_form,
        &product.authorisation_number,
    ]
    .iter()
    .map(|component| crate::normalize::slugify(component))
    .filter(|s| !s.is_empty())
    .collect();
    format!("http://medicX.org/product/{}", slug.join("-"))
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

/// Reconciliation strategies, the cross-source grouping of tiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Direct,
    SynonymSalt,
    Decomposition,
    FullName,
    ChemicalFallback,
    Unmatched,
}

impl Strategy {
    pub const ALL: [Strategy; 6] = [
        Strategy::Direct,
        Strategy::SynonymSalt,
        Strategy::Decomposition,
        Strategy::FullName,
        Strategy::ChemicalFallback,
        Strategy::Unmatched,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Strategy::Direct => "direct",
            Strategy::SynonymSalt => "synonym-salt",
            Strategy::Decomposition => "decomposition",
            Strategy::FullName => "full-name",
            Strategy::ChemicalFallback => "chemical-fallback",
            Strategy::Unmatched => "unmatched",
        }
    }

    pub fn of(tier: MappingTier) -> Strategy {
        match tier {
            MappingTier::BnfDirect => Strategy::Direct,
            MappingTier::BnfViaSynonymSalt | MappingTier::DrugBankDirectOrSynonymSalt => {
                Strategy::SynonymSalt
            }
            MappingTier::BnfViaComponents | MappingTier::DrugBankComponent => {
                Strategy::Decomposition
            }
            MappingTier::FullProductNameOnly => Strategy::FullName,
            MappingTier::PubChemDirect => Strategy::ChemicalFallback,
            MappingTier::Unmatched => Strategy::Unmatched,
        }
    }
}

/// Per-source outcome rows, mirroring the three mapping-outcome tables.
/// Failure rows are derived counts; the definitions are documented next to
/// each field.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SourceOutcomeRows {
    /// Direct match to BNF entry.
    pub bnf_direct: usize,
    /// No match to BNF (even after normalisation): subjects that never
    /// acquired a formulary target.
    pub bnf_no_match: usize,
    /// Mapped via component decomposition.
    pub bnf_via_components: usize,
    /// Component-level mapping failed: decomposed products none of whose
    /// components reached the formulary.
    pub bnf_component_failed: usize,
    /// Mapped via synonym/salt (from DrugBank) to BNF.
    pub bnf_via_synonym_salt: usize,
    /// Synonym-based mapping failed (BNF entry still missing): subjects
    /// whose DrugBank resolution succeeded but whose formulary re-probe did
    /// not.
    pub bnf_synonym_failed: usize,
    /// Mapped via direct match, synonym, or salt normalisation.
    pub drugbank_mapped: usize,
    /// No match to DrugBank (after synonym/salt attempt).
    pub drugbank_no_match: usize,
    /// Component-level mapping to DrugBank.
    pub drugbank_component: usize,
    /// Mapped via full product name only.
    pub drugbank_full_name: usize,
    /// Direct match to PubChem compound.
    pub pubchem_direct: usize,
    /// No match in PubChem (exhausted all mapping tiers).
    pub pubchem_no_match: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct MappingReport {
    pub subjects: usize,
    pub tier_counts: BTreeMap<String, usize>,
    pub strategy_counts: BTreeMap<String, usize>,
    pub source_rows: SourceOutcomeRows,
    pub ambiguities: Vec<Ambiguity>,
    pub unmatched: Vec<SubjectRef>,
}

impl MappingReport {
    pub fn tier_count(&self, tier: MappingTier) -> usize {
        self.tier_counts.get(tier.label()).copied().unwrap_or(0)
    }

    pub fn strategy_count(&self, strategy: Strategy) -> usize {
        self.strategy_counts
            .get(strategy.label())
            .copied()
            .unwrap_or(0)
    }
}

/// Aggregates individual results into per-tier, per-strategy, and
/// per-source counts. Counts always sum back to the subject count.
pub fn mapping_report(results: &[MappingResult], ambiguities: Vec<Ambiguity>) -> MappingReport {
    let mut tier_counts: BTreeMap<String, usize> = MappingTier::ALL
        .iter()
        .map(|t| (t.label().to_string(), 0))
        .collect();
    let mut strategy_counts: BTreeMap<String, usize> = Strategy::ALL
        .iter()
        .map(|s| (s.label().to_string(), 0))
        .collect();
    let mut unmatched = Vec::new();
    for result in results {
        *tier_counts
            .entry(result.tier.label().to_string())
            .or_default() += 1;
        *strategy_counts
            .entry(Strategy::of(result.tier).label().to_string())
            .or_default() += 1;
        if result.tier == MappingTier::Unmatched {
            unmatched.push(result.subject.clone());
        }
    }
    let count = |tier: MappingTier| tier_counts.get(tier.label()).copied().unwrap_or(0);

    // Decomposed products with zero formulary components: group ingredient
    // results by product and look for any formulary target.
    let mut per_product: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for result in results {
        if let SubjectRef::Ingredient {
            product: Some(auth),
            ..
        } = &result.subject
        {
            let slot = per_product.entry(auth.as_str()).or_default();
            slot.0 += 1;
            if matches!(result.target, Some(EntityRef::Bnf(_))) {
                slot.1 += 1;
            }
        }
    }
    let bnf_component_failed = per_product
        .values()
        .filter(|(components, bnf_hits)| *components >= 2 && *bnf_hits == 0)
        .count();

    let source_rows = SourceOutcomeRows {
        bnf_direct: count(MappingTier::BnfDirect),
        bnf_no_match: results.len()
            - count(MappingTier::BnfDirect)
            - count(MappingTier::BnfViaComponents)
            - count(MappingTier::BnfViaSynonymSalt),
        bnf_via_components: count(MappingTier::BnfViaComponents),
        bnf_component_failed,
        bnf_via_synonym_salt: count(MappingTier::BnfViaSynonymSalt),
        bnf_synonym_failed: count(MappingTier::DrugBankDirectOrSynonymSalt)
            + count(MappingTier::DrugBankComponent),
        drugbank_mapped: count(MappingTier::BnfViaSynonymSalt)
            + count(MappingTier::DrugBankDirectOrSynonymSalt),
        drugbank_no_match: count(MappingTier::PubChemDirect) + count(MappingTier::Unmatched),
        drugbank_component: count(MappingTier::DrugBankComponent),
        drugbank_full_name: count(MappingTier::FullProductNameOnly),
        pubchem_direct: count(MappingTier::PubChemDirect),
        pubchem_no_match: count(MappingTier::Unmatched),
    };

    MappingReport {
        subjects: results.len(),
        tier_counts,
        strategy_counts,
        source_rows,
        ambiguities,
        unmatched,
    }
}
