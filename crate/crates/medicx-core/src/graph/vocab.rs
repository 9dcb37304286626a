//! Fixed T-Box vocabulary: class, predicate, and named-graph IRIs, plus the
//! schema quads emitted into the ontology graph of every store.

use super::term::{Iri, Literal, Quad, Term};

pub const MDX: &str = "http://medicX.org/";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_PROPERTY: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
pub const RDFS_CLASS: &str = "http://www.w3.org/2000/01/rdf-schema#Class";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DATE: &str = "http://www.w3.org/2001/XMLSchema#date";

// T-Box classes.
pub const PRODUCT: &str = "http://medicX.org/Product";
pub const ACTIVE_INGREDIENT: &str = "http://medicX.org/ActiveIngredient";
pub const COMPOUND: &str = "http://medicX.org/Compound";
pub const EXCIPIENT: &str = "http://medicX.org/Excipient";
pub const INDICATION: &str = "http://medicX.org/Indication";
pub const CONTRAINDICATION: &str = "http://medicX.org/Contraindication";
pub const ADVERSE_DRUG_REACTION: &str = "http://medicX.org/AdverseDrugReaction";
pub const THERAPEUTIC_CLASS: &str = "http://medicX.org/TherapeuticClass";
pub const ATC_CODE: &str = "http://medicX.org/ATCCode";
pub const STORAGE: &str = "http://medicX.org/Storage";
pub const MARKETING_AUTHORISATION: &str = "http://medicX.org/MarketingAuthorisation";
pub const METHOD_OF_ADMINISTRATION: &str = "http://medicX.org/MethodOfAdministration";
pub const DRUG_DRUG_INTERACTION: &str = "http://medicX.org/DrugDrugInteraction";

pub const CLASSES: [&str; 13] = [
    PRODUCT,
    ACTIVE_INGREDIENT,
    COMPOUND,
    EXCIPIENT,
    INDICATION,
    CONTRAINDICATION,
    ADVERSE_DRUG_REACTION,
    THERAPEUTIC_CLASS,
    ATC_CODE,
    STORAGE,
    MARKETING_AUTHORISATION,
    METHOD_OF_ADMINISTRATION,
    DRUG_DRUG_INTERACTION,
];

// Relation predicates.
pub const HAS_ACTIVE_INGREDIENT: &str = "http://medicX.org/has_active_ingredient";
pub const HAS_ACTIVE_INGREDIENT_DOSAGE: &str = "http://medicX.org/has_active_ingredient_dosage";
pub const HAS_ATC: &str = "http://medicX.org/has_atc";
pub const HAS_CONTRAINDICATION: &str = "http://medicX.org/has_contraindication";
pub const HAS_DRUG_INTERACTION: &str = "http://medicX.org/has_drug_interaction";
pub const HAS_INDICATION: &str = "http://medicX.org/has_indication";
pub const HAS_SIDE_EFFECT: &str = "http://medicX.org/has_side_effect";
pub const HAS_THERAPEUTIC_CLASS: &str = "http://medicX.org/has_therapeutic_class";
pub const HAS_SAFETY_ADVISORY: &str = "http://medicX.org/has_safety_advisory";
pub const HAS_MARKETING_AUTHORISATION: &str = "http://medicX.org/has_marketing_authorisation";

// Attribute predicates.
pub const NAME: &str = "http://medicX.org/name";
pub const AUTHORISATION_STATUS: &str = "http://medicX.org/authorisationStatus";
pub const PHARMACEUTICAL_FORM: &str = "http://medicX.org/pharmaceutical_form";
pub const VALUE: &str = "http://medicX.org/value";
pub const UNIT: &str = "http://medicX.org/unit";
pub const FOR_INGREDIENT: &str = "http://medicX.org/for_ingredient";
pub const INTERACTION_TYPE: &str = "http://medicX.org/interactionType";
pub const INTERACTION_SEVERITY: &str = "http://medicX.org/interactionSeverity";
pub const MECHANISM: &str = "http://medicX.org/mechanism";
pub const NOTE: &str = "http://medicX.org/note";
pub const SEVERITY: &str = "http://medicX.org/severity";
pub const FREQUENCY: &str = "http://medicX.org/frequency";
pub const ADVISORY_CONTEXT: &str = "http://medicX.org/advisory_context";
pub const SAFETY_NOTE: &str = "http://medicX.org/safety_note";
pub const AUTHORISATION_HOLDER: &str = "http://medicX.org/authorisation_holder";
pub const AUTHORISATION_DATE: &str = "http://medicX.org/authorisation_date";
pub const HOLDER_ADDRESS: &str = "http://medicX.org/holder_address";
pub const DRUGBANK_ID: &str = "http://medicX.org/drugbank_id";
pub const PUBCHEM_CID: &str = "http://medicX.org/pubchem_cid";

pub const PREDICATES: [&str; 30] = [
    HAS_ACTIVE_INGREDIENT,
    HAS_ACTIVE_INGREDIENT_DOSAGE,
    HAS_ATC,
    HAS_CONTRAINDICATION,
    HAS_DRUG_INTERACTION,
    HAS_INDICATION,
    HAS_SIDE_EFFECT,
    HAS_THERAPEUTIC_CLASS,
    HAS_SAFETY_ADVISORY,
    HAS_MARKETING_AUTHORISATION,
    NAME,
    AUTHORISATION_STATUS,
    PHARMACEUTICAL_FORM,
    VALUE,
    UNIT,
    FOR_INGREDIENT,
    INTERACTION_TYPE,
    INTERACTION_SEVERITY,
    MECHANISM,
    NOTE,
    SEVERITY,
    FREQUENCY,
    ADVISORY_CONTEXT,
    SAFETY_NOTE,
    AUTHORISATION_HOLDER,
    AUTHORISATION_DATE,
    HOLDER_ADDRESS,
    DRUGBANK_ID,
    PUBCHEM_CID,
    RDF_TYPE,
];

// Named graphs: one per source, plus the schema graph.
pub const GRAPH_MMA: &str = "http://medicX.org/graph/mma";
pub const GRAPH_BNF: &str = "http://medicX.org/graph/bnf";
pub const GRAPH_DRUGBANK: &str = "http://medicX.org/graph/drugbank";
pub const GRAPH_PUBCHEM: &str = "http://medicX.org/graph/pubchem";
pub const GRAPH_ONTOLOGY: &str = "http://medicX.org/graph/ontology";

pub const SOURCE_GRAPHS: [&str; 4] = [GRAPH_MMA, GRAPH_BNF, GRAPH_DRUGBANK, GRAPH_PUBCHEM];

fn local_name(iri: &str) -> &str {
    iri.rsplit(['/', '#']).next().unwrap_or(iri)
}

/// The schema quads present in every built store: each class and predicate
/// typed and labelled, in the ontology graph.
pub fn ontology_quads() -> Vec<Quad> {
    let graph = Iri::known(GRAPH_ONTOLOGY);
    let rdf_type = Iri::known(RDF_TYPE);
    let label = Iri::known(RDFS_LABEL);
    let mut quads = Vec::new();
    for class in CLASSES {
        quads.push(
            Quad::new(
                Term::Iri(Iri::known(class)),
                rdf_type.clone(),
                Term::Iri(Iri::known(RDFS_CLASS)),
                graph.clone(),
            )
            .expect("iri subject"),
        );
        quads.push(
            Quad::new(
                Term::Iri(Iri::known(class)),
                label.clone(),
                Term::Literal(Literal::string(local_name(class))),
                graph.clone(),
            )
            .expect("iri subject"),
        );
    }
    for predicate in PREDICATES {
        if predicate == RDF_TYPE {
            continue;
        }
        quads.push(
            Quad::new(
                Term::Iri(Iri::known(predicate)),
                rdf_type.clone(),
                Term::Iri(Iri::known(RDF_PROPERTY)),
                graph.clone(),
            )
            .expect("iri subject"),
        );
    }
    quads
}
