//! Indexed, immutable quad container.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::term::{Iri, Quad, Term};
use super::vocab;

/// A deduplicated set of quads, sorted by the serialized (s, p, o, g) key
/// and indexed by every position. Built once, then read-only.
#[derive(Debug, Default)]
pub struct QuadStore {
    quads: Vec<Quad>,
    by_subject: HashMap<Term, Vec<usize>>,
    by_predicate: HashMap<Iri, Vec<usize>>,
    by_object: HashMap<Term, Vec<usize>>,
    by_graph: HashMap<Iri, Vec<usize>>,
    set: HashSet<Quad>,
    /// Graph-collapsed (s, p, o) view used by query evaluation, deduplicated
    /// and sorted.
    triples: Vec<(Term, Iri, Term)>,
}

impl QuadStore {
    pub fn from_quads(quads: impl IntoIterator<Item = Quad>) -> QuadStore {
        let set: HashSet<Quad> = quads.into_iter().collect();
        let mut quads: Vec<Quad> = set.iter().cloned().collect();
        quads.sort_by_cached_key(|q| {
            (
                q.subject.to_string(),
                q.predicate.to_string(),
                q.object.to_string(),
                q.graph.to_string(),
            )
        });

        let mut by_subject: HashMap<Term, Vec<usize>> = HashMap::new();
        let mut by_predicate: HashMap<Iri, Vec<usize>> = HashMap::new();
        let mut by_object: HashMap<Term, Vec<usize>> = HashMap::new();
        let mut by_graph: HashMap<Iri, Vec<usize>> = HashMap::new();
        for (i, quad) in quads.iter().enumerate() {
            by_subject.entry(quad.subject.clone()).or_default().push(i);
            by_predicate
                .entry(quad.predicate.clone())
                .or_default()
                .push(i);
            by_object.entry(quad.object.clone()).or_default().push(i);
            by_graph.entry(quad.graph.clone()).or_default().push(i);
        }

        let mut triples: Vec<(Term, Iri, Term)> = quads
            .iter()
            .map(|q| (q.subject.clone(), q.predicate.clone(), q.object.clone()))
            .collect();
        triples.sort();
        triples.dedup();

        QuadStore {
            quads,
            by_subject,
            by_predicate,
            by_object,
            by_graph,
            set,
            triples,
        }
    }

    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Quad> {
        self.quads.iter()
    }

    pub fn contains(&self, quad: &Quad) -> bool {
        self.set.contains(quad)
    }

    /// The graph-collapsed triple set (union of all named graphs).
    pub fn triples(&self) -> &[(Term, Iri, Term)] {
        &self.triples
    }

    /// Quads unifying with the pattern; `None` positions are wildcards.
    /// Output order is the store's canonical (s, p, o, g) order.
    pub fn match_pattern(
        &self,
        subject: Option<&Term>,
        predicate: Option<&Iri>,
        object: Option<&Term>,
        graph: Option<&Iri>,
    ) -> Vec<&Quad> {
        // Start from the most selective bound position.
        let candidate_lists: Vec<&Vec<usize>> = [
            subject.and_then(|s| self.by_subject.get(s)),
            predicate.and_then(|p| self.by_predicate.get(p)),
            object.and_then(|o| self.by_object.get(o)),
            graph.and_then(|g| self.by_graph.get(g)),
        ]
        .into_iter()
        .flatten()
        .collect();

        let bound_positions = [
            subject.is_some(),
            predicate.is_some(),
            object.is_some(),
            graph.is_some(),
        ]
        .iter()
        .filter(|b| **b)
        .count();
        // A bound position missing from its index means no match at all.
        if candidate_lists.len() < bound_positions {
            return Vec::new();
        }

        let matches = |quad: &Quad| {
            subject.is_none_or(|s| &quad.subject == s)
                && predicate.is_none_or(|p| &quad.predicate == p)
                && object.is_none_or(|o| &quad.object == o)
                && graph.is_none_or(|g| &quad.graph == g)
        };

        match candidate_lists.iter().min_by_key(|l| l.len()) {
            Some(shortest) => shortest
                .iter()
                .map(|&i| &self.quads[i])
                .filter(|q| matches(q))
                .collect(),
            None => self.quads.iter().filter(|q| matches(q)).collect(),
        }
    }

    /// Instance counts keyed by rdf:type object.
    pub fn class_counts(&self) -> BTreeMap<String, usize> {
        let rdf_type = Iri::known(vocab::RDF_TYPE);
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        // Count typed nodes, not typing quads: the same node may be typed
        // in several graphs.
        let mut seen: HashSet<(&Term, &Term)> = HashSet::new();
        for quad in self.match_pattern(None, Some(&rdf_type), None, None) {
            if let Term::Iri(class) = &quad.object {
                if seen.insert((&quad.subject, &quad.object)) {
                    *counts.entry(class.as_str().to_string()).or_default() += 1;
                }
            }
        }
        counts
    }

    /// Quad counts keyed by predicate.
    pub fn predicate_counts(&self) -> BTreeMap<String, usize> {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for quad in &self.quads {
            *counts
                .entry(quad.predicate.as_str().to_string())
                .or_default() += 1;
        }
        counts
    }
}

impl FromIterator<Quad> for QuadStore {
    fn from_iter<I: IntoIterator<Item = Quad>>(iter: I) -> QuadStore {
        QuadStore::from_quads(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::super::term::Literal;
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::known(s)
    }

    fn quad(s: &str, p: &str, o: Term, g: &str) -> Quad {
        Quad::new(Term::Iri(iri(s)), iri(p), o, iri(g)).unwrap()
    }

    fn sample() -> QuadStore {
        QuadStore::from_quads(vec![
            quad(
                "http://medicX.org/product/a",
                vocab::RDF_TYPE,
                Term::Iri(iri(vocab::PRODUCT)),
                vocab::GRAPH_MMA,
            ),
            quad(
                "http://medicX.org/product/b",
                vocab::RDF_TYPE,
                Term::Iri(iri(vocab::PRODUCT)),
                vocab::GRAPH_MMA,
            ),
            quad(
                "http://medicX.org/product/a",
                vocab::NAME,
                Term::Literal(Literal::string("A")),
                vocab::GRAPH_MMA,
            ),
            // duplicate on purpose
            quad(
                "http://medicX.org/product/a",
                vocab::NAME,
                Term::Literal(Literal::string("A")),
                vocab::GRAPH_MMA,
            ),
        ])
    }

    #[test]
    fn duplicate_quads_collapse() {
        assert_eq!(sample().len(), 3);
    }

    #[test]
    fn type_pattern_finds_all_products() {
        let store = sample();
        let rdf_type = iri(vocab::RDF_TYPE);
        let product = Term::Iri(iri(vocab::PRODUCT));
        let hits = store.match_pattern(None, Some(&rdf_type), Some(&product), None);
        assert_eq!(hits.len(), 2);
    }

    #[test]
    fn fully_ground_existing_quad_is_a_singleton() {
        let store = sample();
        let q = quad(
            "http://medicX.org/product/a",
            vocab::NAME,
            Term::Literal(Literal::string("A")),
            vocab::GRAPH_MMA,
        );
        let hits = store.match_pattern(
            Some(&q.subject),
            Some(&q.predicate),
            Some(&q.object),
            Some(&q.graph),
        );
        assert_eq!(hits.len(), 1);
        assert!(store.contains(&q));
    }

    #[test]
    fn unknown_predicate_matches_nothing() {
        let store = sample();
        let missing = iri("http://medicX.org/never_used");
        assert!(store
            .match_pattern(None, Some(&missing), None, None)
            .is_empty());
    }

    #[test]
    fn match_order_is_deterministic() {
        let store = sample();
        let first: Vec<String> = store
            .match_pattern(None, None, None, None)
            .iter()
            .map(|q| q.to_string())
            .collect();
        let again: Vec<String> = store
            .match_pattern(None, None, None, None)
            .iter()
            .map(|q| q.to_string())
            .collect();
        assert_eq!(first, again);
        let mut sorted = first.clone();
        sorted.sort();
        assert_eq!(first, sorted);
    }

    #[test]
    fn counts_by_class_and_predicate() {
        let store = sample();
        assert_eq!(store.class_counts().get(vocab::PRODUCT), Some(&2));
        assert_eq!(store.predicate_counts().get(vocab::NAME), Some(&1));
        let empty = QuadStore::from_quads(vec![]);
        assert!(empty.class_counts().is_empty());
    }
}
