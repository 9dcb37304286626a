//! Construction toolkit for a pharmacist-oriented pharmaceutical knowledge
//! graph: ingestion of the national product registry, formulary, DrugBank,
//! and PubChem datasets; tiered rule-based entity resolution; quad-based
//! graph construction with per-source provenance; canonical N-Quads I/O; a
//! query-language subset; and a competency-question evaluation harness.

pub mod graph;
pub mod ingest;
pub mod normalize;
pub mod pipeline;
pub mod query;
pub mod rdfio;
pub mod report;
pub mod resolve;
