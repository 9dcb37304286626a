//! Fixture-corpus integration: ingestion counts, hand-traced mapping
//! outcomes, an independent brute-force matcher, graph structural
//! invariants, and export determinism.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use medicx_core::graph::{vocab, Iri, QuadStore, Term};
use medicx_core::ingest::{
    clean_mma, parse_bnf, parse_drugbank, parse_mma, parse_pubchem, to_jsonl, BnfMonograph,
    DropReason, DrugBankEntry, MmaProduct, PubChemCompound,
};
use medicx_core::normalize::{normalize_name, strip_descriptors, strip_salt, SaltLexicon};
use medicx_core::pipeline::{self, PipelineOutput};
use medicx_core::resolve::{EntityRef, MappingResult, MappingTier, SubjectRef};

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run() -> PipelineOutput {
    pipeline::run(&fixtures_dir(), &SaltLexicon::builtin()).expect("fixture pipeline runs")
}

fn read(file: &str) -> String {
    std::fs::read_to_string(fixtures_dir().join(file)).expect("fixture file readable")
}

#[test]
fn fixture_parses_to_38_records_before_cleaning() {
    let records = parse_mma(read("mma.jsonl").as_bytes()).unwrap();
    assert_eq!(records.len(), 38);
}

#[test]
fn cleaning_keeps_35_and_drops_one_per_reason() {
    let records = parse_mma(read("mma.jsonl").as_bytes()).unwrap();
    let outcome = clean_mma(records);
    assert_eq!(outcome.kept.len(), 35);
    assert_eq!(outcome.dropped.len(), 3);
    assert_eq!(outcome.dropped_count(DropReason::Invalid), 1);
    assert_eq!(outcome.dropped_count(DropReason::Withdrawn), 1);
    assert_eq!(outcome.dropped_count(DropReason::Duplicate), 1);

    // idempotence on the kept set
    let again = clean_mma(outcome.kept.clone());
    assert_eq!(again.kept, outcome.kept);
    assert!(again.dropped.is_empty());
}

#[test]
fn all_fixture_files_round_trip_at_record_level() {
    let mma = parse_mma(read("mma.jsonl").as_bytes()).unwrap();
    assert_eq!(parse_mma(to_jsonl(&mma).as_bytes()).unwrap(), mma);
    let bnf = parse_bnf(read("bnf.jsonl").as_bytes()).unwrap();
    assert_eq!(parse_bnf(to_jsonl(&bnf).as_bytes()).unwrap(), bnf);
    let db = parse_drugbank(read("drugbank.jsonl").as_bytes()).unwrap();
    assert_eq!(parse_drugbank(to_jsonl(&db).as_bytes()).unwrap(), db);
    let pc = parse_pubchem(read("pubchem.jsonl").as_bytes()).unwrap();
    assert_eq!(parse_pubchem(to_jsonl(&pc).as_bytes()).unwrap(), pc);
}

fn subject_label(result: &MappingResult) -> String {
    match &result.subject {
        SubjectRef::Ingredient { name, product } => {
            format!("{}:{name}", product.as_deref().unwrap_or("-"))
        }
        SubjectRef::Product {
            authorisation_number,
            ..
        } => format!("product:{authorisation_number}"),
    }
}

fn find_result<'a>(results: &'a [MappingResult], needle: &str) -> &'a MappingResult {
    results
        .iter()
        .find(|r| subject_label(r).contains(needle))
        .unwrap_or_else(|| panic!("no mapping subject matching {needle}"))
}

#[test]
fn worked_examples_resolve_to_their_expected_tier_and_target() {
    let started = std::time::Instant::now();
    let output = run();

    let zyrtec = find_result(&output.results, "MA090/01");
    assert_eq!(zyrtec.tier, MappingTier::BnfDirect);
    assert_eq!(
        zyrtec.target,
        Some(EntityRef::Bnf("Cetirizine hydrochloride".into()))
    );

    let esomeprazole = find_result(&output.results, "MA091/01");
    assert_eq!(esomeprazole.tier, MappingTier::BnfViaSynonymSalt);
    assert_eq!(
        esomeprazole.target,
        Some(EntityRef::Bnf("Esomeprazole".into()))
    );

    let augmentin = find_result(&output.results, "product:MA092/01");
    assert_eq!(augmentin.tier, MappingTier::BnfViaComponents);
    assert_eq!(
        augmentin.target,
        Some(EntityRef::Bnf("Co-amoxiclav".into()))
    );

    let adrenaline = find_result(&output.results, "MA093/01");
    assert_eq!(adrenaline.tier, MappingTier::DrugBankDirectOrSynonymSalt);
    assert_eq!(
        adrenaline.target,
        Some(EntityRef::DrugBank("DB00668".into()))
    );

    assert!(started.elapsed() < std::time::Duration::from_secs(1));
}

#[test]
fn tier_histogram_matches_the_hand_traced_oracle_file() {
    let output = run();
    let oracle: serde_json::Value =
        serde_json::from_str(&read("expected/mapping_oracle.json")).unwrap();

    assert_eq!(
        output.report.subjects as u64,
        oracle["subjects"].as_u64().unwrap()
    );
    for (tier, count) in oracle["tier_counts"].as_object().unwrap() {
        assert_eq!(
            output.report.tier_counts.get(tier).copied().unwrap_or(0) as u64,
            count.as_u64().unwrap(),
            "tier {tier}"
        );
    }
    for (strategy, count) in oracle["strategy_counts"].as_object().unwrap() {
        assert_eq!(
            output
                .report
                .strategy_counts
                .get(strategy)
                .copied()
                .unwrap_or(0) as u64,
            count.as_u64().unwrap(),
            "strategy {strategy}"
        );
    }
    let rows = serde_json::to_value(&output.report.source_rows).unwrap();
    assert_eq!(rows, oracle["source_rows"]);

    // every tier present in the corpus
    for tier in MappingTier::ALL {
        assert!(
            output.report.tier_count(tier) > 0,
            "tier {tier:?} unexercised"
        );
    }
}

#[test]
fn every_mapping_result_upholds_its_invariants() {
    let output = run();
    for result in &output.results {
        result
            .check_invariants()
            .unwrap_or_else(|e| panic!("{}: {e}", subject_label(result)));
    }
}

// ---------------------------------------------------------------------------
// Independent brute-force matcher
// ---------------------------------------------------------------------------
// Exhaustively tries every (subject, candidate, transformation) pair with
// plain scans over the record lists and picks the highest-priority tier.
// Shares nothing with the indexed pipeline beyond the normaliser.

struct Oracle<'a> {
    bnf: &'a [BnfMonograph],
    db: &'a [DrugBankEntry],
    pc: &'a [PubChemCompound],
    lexicon: &'a SaltLexicon,
}

impl<'a> Oracle<'a> {
    fn canon(&self, raw: &str) -> String {
        normalize_name(raw, self.lexicon).unwrap().canonical
    }

    fn base(&self, raw: &str) -> String {
        strip_salt(&normalize_name(raw, self.lexicon).unwrap(), self.lexicon)
            .base
            .canonical
    }

    fn bnf_lookup(&self, key: &str) -> Option<String> {
        let direct: BTreeSet<&str> = self
            .bnf
            .iter()
            .filter(|m| self.canon(&m.name) == key)
            .map(|m| m.name.as_str())
            .collect();
        if let Some(name) = direct.first() {
            return Some(name.to_string());
        }
        let stripped: BTreeSet<&str> = self
            .bnf
            .iter()
            .filter(|m| self.base(&m.name) == key)
            .map(|m| m.name.as_str())
            .collect();
        stripped.first().map(|name| name.to_string())
    }

    fn db_keys(&self, entry: &DrugBankEntry) -> BTreeSet<String> {
        let mut keys = BTreeSet::new();
        keys.insert(self.canon(&entry.primary_name));
        for synonym in &entry.synonyms {
            keys.insert(self.canon(synonym));
        }
        for salt in &entry.salts {
            keys.insert(self.canon(&salt.salt_name));
        }
        keys
    }

    fn db_lookup(&self, key: &str, stripped: &str) -> Option<&'a DrugBankEntry> {
        for probe in [key, stripped] {
            let hits: BTreeMap<&str, &DrugBankEntry> = self
                .db
                .iter()
                .filter(|e| self.db_keys(e).contains(probe))
                .map(|e| (e.drugbank_id.as_str(), e))
                .collect();
            if let Some((_, entry)) = hits.first_key_value() {
                return Some(entry);
            }
            if key == stripped {
                break;
            }
        }
        None
    }

    fn pc_lookup(&self, key: &str, stripped: &str) -> Option<u64> {
        for probe in [key, stripped] {
            let hits: BTreeSet<u64> = self
                .pc
                .iter()
                .filter(|c| {
                    self.canon(&c.name) == probe
                        || c.synonyms.iter().any(|s| self.canon(s) == probe)
                })
                .map(|c| c.cid)
                .collect();
            if let Some(cid) = hits.first() {
                return Some(*cid);
            }
            if key == stripped {
                break;
            }
        }
        None
    }

    fn resolve_ingredient(&self, raw: &str) -> (MappingTier, Option<EntityRef>) {
        let key = self.canon(raw);
        let stripped = self.base(raw);
        if let Some(name) = self.bnf_lookup(&key) {
            return (MappingTier::BnfDirect, Some(EntityRef::Bnf(name)));
        }
        if let Some(entry) = self.db_lookup(&key, &stripped) {
            let primary = self.canon(&entry.primary_name);
            if let Some(name) = self.bnf_lookup(&primary).or_else(|| {
                let primary_base = self.base(&entry.primary_name);
                self.bnf_lookup(&primary_base)
            }) {
                return (MappingTier::BnfViaSynonymSalt, Some(EntityRef::Bnf(name)));
            }
            return (
                MappingTier::DrugBankDirectOrSynonymSalt,
                Some(EntityRef::DrugBank(entry.drugbank_id.clone())),
            );
        }
        if let Some(cid) = self.pc_lookup(&key, &stripped) {
            return (MappingTier::PubChemDirect, Some(EntityRef::PubChem(cid)));
        }
        (MappingTier::Unmatched, None)
    }

    fn resolve_product(&self, product: &MmaProduct) -> Vec<(MappingTier, Option<EntityRef>)> {
        let decomposed = product.active_ingredients.len() >= 2;
        if decomposed {
            let want: BTreeSet<String> = product
                .active_ingredients
                .iter()
                .map(|i| self.base(&i.name))
                .collect();
            let combined: BTreeSet<&str> = self
                .bnf
                .iter()
                .filter(|m| m.constituents.len() >= 2)
                .filter(|m| {
                    let have: BTreeSet<String> =
                        m.constituents.iter().map(|c| self.base(c)).collect();
                    have == want
                })
                .map(|m| m.name.as_str())
                .collect();
            if let Some(name) = combined.first() {
                return vec![(
                    MappingTier::BnfViaComponents,
                    Some(EntityRef::Bnf(name.to_string())),
                )];
            }
        }
        let results: Vec<(MappingTier, Option<EntityRef>)> = product
            .active_ingredients
            .iter()
            .map(|i| {
                let (tier, target) = self.resolve_ingredient(&i.name);
                match tier {
                    MappingTier::DrugBankDirectOrSynonymSalt if decomposed => {
                        (MappingTier::DrugBankComponent, target)
                    }
                    tier => (tier, target),
                }
            })
            .collect();
        if results
            .iter()
            .all(|(tier, _)| *tier == MappingTier::Unmatched)
        {
            let full =
                strip_descriptors(&normalize_name(&product.medicine_name, self.lexicon).unwrap());
            let stripped = full.canonical.clone();
            if let Some(entry) = self.db_lookup(&stripped, &stripped) {
                return vec![(
                    MappingTier::FullProductNameOnly,
                    Some(EntityRef::DrugBank(entry.drugbank_id.clone())),
                )];
            }
            if let Some(cid) = self.pc_lookup(&stripped, &stripped) {
                return vec![(
                    MappingTier::FullProductNameOnly,
                    Some(EntityRef::PubChem(cid)),
                )];
            }
        }
        results
    }
}

#[test]
fn pipeline_agrees_with_the_brute_force_matcher_on_the_whole_corpus() {
    let output = run();
    let lexicon = SaltLexicon::builtin();
    let oracle = Oracle {
        bnf: &output.bnf,
        db: &output.drugbank,
        pc: &output.pubchem,
        lexicon: &lexicon,
    };

    assert!(
        output.results.len() <= 50,
        "oracle contract covers small corpora"
    );
    let mut expected: Vec<(MappingTier, Option<EntityRef>)> = Vec::new();
    for product in &output.products {
        expected.extend(oracle.resolve_product(product));
    }
    let actual: Vec<(MappingTier, Option<EntityRef>)> = output
        .results
        .iter()
        .map(|r| (r.tier, r.target.clone()))
        .collect();
    assert_eq!(actual, expected);
}

// ---------------------------------------------------------------------------
// Graph structural invariants
// ---------------------------------------------------------------------------

fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

fn count_pred(store: &QuadStore, predicate: &str) -> usize {
    store
        .predicate_counts()
        .get(predicate)
        .copied()
        .unwrap_or(0)
}

#[test]
fn dosage_edges_pair_one_to_one_with_ingredient_edges() {
    let store = run().store;
    let ingredient_edges = count_pred(&store, vocab::HAS_ACTIVE_INGREDIENT);
    let dosage_edges = count_pred(&store, vocab::HAS_ACTIVE_INGREDIENT_DOSAGE);
    assert_eq!(ingredient_edges, dosage_edges);
    // hand count over the fixture: 30 single-ingredient + 5 two-ingredient
    // kept products
    assert_eq!(ingredient_edges, 40);
}

#[test]
fn interactions_are_reified_pairs_with_double_edges() {
    let store = run().store;
    let nodes = store
        .class_counts()
        .get(vocab::DRUG_DRUG_INTERACTION)
        .copied()
        .unwrap_or(0);
    let edges = count_pred(&store, vocab::HAS_DRUG_INTERACTION);
    assert_eq!(edges, 2 * nodes);
    assert_eq!(nodes, 7); // hand count of fixture interaction pairs

    // every interaction node has exactly two distinct ingredient subjects
    let rdf_type = iri(vocab::RDF_TYPE);
    let ddi_class = Term::Iri(iri(vocab::DRUG_DRUG_INTERACTION));
    let has_ddi = iri(vocab::HAS_DRUG_INTERACTION);
    let ingredient_class = Term::Iri(iri(vocab::ACTIVE_INGREDIENT));
    for quad in store.match_pattern(None, Some(&rdf_type), Some(&ddi_class), None) {
        let node = quad.subject.clone();
        let participants: BTreeSet<&Term> = store
            .match_pattern(None, Some(&has_ddi), Some(&node), None)
            .into_iter()
            .map(|q| &q.subject)
            .collect();
        assert_eq!(participants.len(), 2, "interaction {node:?}");
        for participant in participants {
            let typed = store.match_pattern(
                Some(participant),
                Some(&rdf_type),
                Some(&ingredient_class),
                None,
            );
            assert!(
                !typed.is_empty(),
                "participant {participant:?} not an ingredient"
            );
        }
    }
}

#[test]
fn every_quad_lives_in_a_source_or_ontology_graph() {
    let store = run().store;
    let sources: BTreeSet<&str> = vocab::SOURCE_GRAPHS.iter().copied().collect();
    let mut per_graph: BTreeMap<&str, usize> = BTreeMap::new();
    for quad in store.iter() {
        let graph = quad.graph.as_str();
        assert!(
            sources.contains(graph) || graph == vocab::GRAPH_ONTOLOGY,
            "unexpected graph {graph}"
        );
        *per_graph
            .entry(if sources.contains(graph) {
                graph
            } else {
                "ontology"
            })
            .or_default() += 1;
    }
    // all four source graphs populated
    for source in vocab::SOURCE_GRAPHS {
        assert!(
            per_graph.get(source).copied().unwrap_or(0) > 0,
            "{source} empty"
        );
    }
}

#[test]
fn every_product_has_an_ingredient_edge() {
    let store = run().store;
    let rdf_type = iri(vocab::RDF_TYPE);
    let product_class = Term::Iri(iri(vocab::PRODUCT));
    let has_ing = iri(vocab::HAS_ACTIVE_INGREDIENT);
    let products = store.match_pattern(None, Some(&rdf_type), Some(&product_class), None);
    assert_eq!(products.len(), 35);
    for quad in products {
        let edges = store.match_pattern(Some(&quad.subject), Some(&has_ing), None, None);
        assert!(
            !edges.is_empty(),
            "product {:?} has no ingredients",
            quad.subject
        );
    }
}

#[test]
fn class_counts_match_hand_counts() {
    let store = run().store;
    let counts = store.class_counts();
    assert_eq!(counts.get(vocab::PRODUCT), Some(&35));
    assert_eq!(counts.get(vocab::ACTIVE_INGREDIENT), Some(&35));
    assert_eq!(counts.get(vocab::MARKETING_AUTHORISATION), Some(&35));
    // vocabulary-only classes stay empty on this corpus
    assert_eq!(counts.get(vocab::EXCIPIENT), None);
    assert_eq!(counts.get(vocab::STORAGE), None);
}

#[test]
fn empty_inputs_build_a_store_of_only_ontology_quads() {
    let store =
        medicx_core::graph::build_graph(&[], &[], &[], &[], &[], &SaltLexicon::builtin()).unwrap();
    assert!(!store.is_empty());
    assert!(store
        .iter()
        .all(|q| q.graph.as_str() == vocab::GRAPH_ONTOLOGY));
}

#[test]
fn export_is_deterministic_and_round_trips() {
    let first = medicx_core::rdfio::serialize_nquads(&run().store);
    let second = medicx_core::rdfio::serialize_nquads(&run().store);
    assert_eq!(first, second);

    let reparsed = medicx_core::rdfio::parse_nquads(&first).unwrap();
    assert!(medicx_core::rdfio::quad_set_equal(&run().store, &reparsed));
    assert_eq!(medicx_core::rdfio::serialize_nquads(&reparsed), first);
}

#[test]
fn record_order_does_not_change_mapping_or_export() {
    let output = run();
    let lexicon = SaltLexicon::builtin();

    let mut products = output.products.clone();
    let mut bnf = output.bnf.clone();
    let mut drugbank = output.drugbank.clone();
    let mut pubchem = output.pubchem.clone();
    products.reverse();
    bnf.reverse();
    drugbank.reverse();
    pubchem.reverse();

    let index = medicx_core::resolve::build_indexes(&bnf, &drugbank, &pubchem, &lexicon).unwrap();
    let mut reversed_results = Vec::new();
    for product in &products {
        reversed_results.extend(medicx_core::resolve::resolve_product(
            product, &index, &lexicon,
        ));
    }

    let key = |r: &MappingResult| (format!("{:?}", r.subject), r.tier, r.target.clone());
    let mut expected: Vec<_> = output.results.iter().map(key).collect();
    let mut actual: Vec<_> = reversed_results.iter().map(key).collect();
    expected.sort();
    actual.sort();
    assert_eq!(actual, expected);

    let store = medicx_core::graph::build_graph(
        &products,
        &bnf,
        &drugbank,
        &pubchem,
        &reversed_results,
        &lexicon,
    )
    .unwrap();
    assert_eq!(
        medicx_core::rdfio::serialize_nquads(&store),
        medicx_core::rdfio::serialize_nquads(&output.store),
        "export depends on input record order"
    );
}

#[test]
fn shared_structures_are_thread_safe() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<QuadStore>();
    assert_send_sync::<medicx_core::resolve::ResolutionIndex>();
    assert_send_sync::<SaltLexicon>();
    assert_send_sync::<MmaProduct>();
    assert_send_sync::<medicx_core::query::QueryPlan>();
    assert_send_sync::<medicx_core::query::ResultTable>();
    assert_send_sync::<MappingResult>();
}
