//! End-to-end pipeline: load a data directory, clean, index, resolve, and
//! build the graph. The CLI and the acceptance suite both drive this.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::graph::{build_graph, GraphError, QuadStore};
use crate::ingest::{
    clean_bnf, clean_drugbank, clean_mma, clean_pubchem, parse_bnf, parse_drugbank, parse_mma,
    parse_pubchem, BnfMonograph, DropReason, Dropped, DrugBankEntry, IngestError, MmaProduct,
    PubChemCompound,
};
use crate::normalize::SaltLexicon;
use crate::resolve::{
    build_indexes, mapping_report, resolve_product, MappingReport, MappingResult, ResolveError,
};

pub const MMA_FILE: &str = "mma.jsonl";
pub const BNF_FILE: &str = "bnf.jsonl";
pub const DRUGBANK_FILE: &str = "drugbank.jsonl";
pub const PUBCHEM_FILE: &str = "pubchem.jsonl";

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{file}: {source}")]
    Ingest { file: String, source: IngestError },
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Everything the pipeline produces, stage by stage.
pub struct PipelineOutput {
    pub products: Vec<MmaProduct>,
    pub bnf: Vec<BnfMonograph>,
    pub drugbank: Vec<DrugBankEntry>,
    pub pubchem: Vec<PubChemCompound>,
    pub mma_dropped: Vec<Dropped<MmaProduct>>,
    pub bnf_dropped: Vec<Dropped<BnfMonograph>>,
    pub drugbank_dropped: Vec<Dropped<DrugBankEntry>>,
    pub pubchem_dropped: Vec<Dropped<PubChemCompound>>,
    pub results: Vec<MappingResult>,
    pub report: MappingReport,
    pub store: QuadStore,
}

impl PipelineOutput {
    pub fn drop_counts(&self) -> (usize, usize, usize) {
        (
            self.mma_dropped
                .iter()
                .filter(|d| d.reason == DropReason::Invalid)
                .count(),
            self.mma_dropped
                .iter()
                .filter(|d| d.reason == DropReason::Withdrawn)
                .count(),
            self.mma_dropped
                .iter()
                .filter(|d| d.reason == DropReason::Duplicate)
                .count(),
        )
    }
}

fn parse_file<T>(
    dir: &Path,
    file: &str,
    parse: fn(BufReader<File>) -> Result<Vec<T>, IngestError>,
) -> Result<Vec<T>, PipelineError> {
    let path = dir.join(file);
    let handle = File::open(&path).map_err(|source| PipelineError::Io {
        path: path.clone(),
        source,
    })?;
    parse(BufReader::new(handle)).map_err(|source| PipelineError::Ingest {
        file: file.to_string(),
        source,
    })
}

/// Runs ingest -> clean -> index -> resolve -> build over a data directory
/// containing the four JSON-Lines source files.
///
/// The four parses are independent pure functions of their input streams
/// and run on separate threads; everything after joins deterministically.
pub fn run(data_dir: &Path, lexicon: &SaltLexicon) -> Result<PipelineOutput, PipelineError> {
    let (mma, bnf, drugbank, pubchem) = std::thread::scope(|scope| {
        let mma = scope.spawn(|| parse_file(data_dir, MMA_FILE, parse_mma));
        let bnf = scope.spawn(|| parse_file(data_dir, BNF_FILE, parse_bnf));
        let drugbank = scope.spawn(|| parse_file(data_dir, DRUGBANK_FILE, parse_drugbank));
        let pubchem = scope.spawn(|| parse_file(data_dir, PUBCHEM_FILE, parse_pubchem));
        (
            mma.join().expect("parse thread"),
            bnf.join().expect("parse thread"),
            drugbank.join().expect("parse thread"),
            pubchem.join().expect("parse thread"),
        )
    });

    let mma = clean_mma(mma?);
    let bnf = clean_bnf(bnf?, lexicon);
    let drugbank = clean_drugbank(drugbank?);
    let pubchem = clean_pubchem(pubchem?);

    let index = build_indexes(&bnf.kept, &drugbank.kept, &pubchem.kept, lexicon)?;
    let mut results = Vec::new();
    for product in &mma.kept {
        results.extend(resolve_product(product, &index, lexicon));
    }
    let report = mapping_report(&results, index.ambiguities().to_vec());
    let store = build_graph(
        &mma.kept,
        &bnf.kept,
        &drugbank.kept,
        &pubchem.kept,
        &results,
        lexicon,
    )?;

    Ok(PipelineOutput {
        products: mma.kept,
        bnf: bnf.kept,
        drugbank: drugbank.kept,
        pubchem: pubchem.kept,
        mma_dropped: mma.dropped,
        bnf_dropped: bnf.dropped,
        drugbank_dropped: drugbank.dropped,
        pubchem_dropped: pubchem.dropped,
        results,
        report,
        store,
    })
}
