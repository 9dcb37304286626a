//! Property tests for the query evaluator over randomized small stores:
//! DISTINCT idempotence, OPTIONAL monotonicity, and FILTER restriction.

use proptest::prelude::*;

use medicx_core::graph::{Iri, Literal, Quad, QuadStore, Term};
use medicx_core::query::{evaluate, FilterExpr, QueryPlan, QueryTerm, TriplePattern, WhereElement};

fn subject_pool() -> Vec<Term> {
    (0..5)
        .map(|i| Term::Iri(Iri::new(format!("http://t.org/s{i}")).unwrap()))
        .collect()
}

fn predicate_pool() -> Vec<Iri> {
    (0..4)
        .map(|i| Iri::new(format!("http://t.org/p{i}")).unwrap())
        .collect()
}

fn object_pool() -> Vec<Term> {
    let mut pool: Vec<Term> = (0..4)
        .map(|i| Term::Iri(Iri::new(format!("http://t.org/o{i}")).unwrap()))
        .collect();
    for text in ["a", "b", "c"] {
        pool.push(Term::Literal(Literal::string(text)));
    }
    pool.push(Term::Literal(Literal::lang("mela", "mt")));
    pool
}

fn graph_pool() -> Vec<Iri> {
    vec![
        Iri::new("http://t.org/graph/one").unwrap(),
        Iri::new("http://t.org/graph/two").unwrap(),
    ]
}

prop_compose! {
    fn arb_store()(shape in prop::collection::vec((0usize..5, 0usize..4, 0usize..8, 0usize..2), 0..120))
        -> QuadStore
    {
        let (subjects, predicates, objects, graphs) =
            (subject_pool(), predicate_pool(), object_pool(), graph_pool());
        QuadStore::from_quads(shape.into_iter().map(|(s, p, o, g)| {
            Quad::new(
                subjects[s].clone(),
                predicates[p].clone(),
                objects[o].clone(),
                graphs[g].clone(),
            )
            .unwrap()
        }))
    }
}

/// A pattern position: variable (from a small shared pool) or pool term.
fn arb_position(objects: bool) -> impl Strategy<Value = QueryTerm> {
    let vars = prop::sample::select(vec!["v0", "v1", "v2", "v3"])
        .prop_map(|v| QueryTerm::Var(v.to_string()));
    if objects {
        prop_oneof![
            3 => vars,
            1 => (0usize..8).prop_map(|i| match object_pool()[i].clone() {
                Term::Iri(iri) => QueryTerm::Iri(iri),
                Term::Literal(lit) => QueryTerm::Literal(lit),
                Term::Blank(_) => unreachable!(),
            }),
            1 => (0usize..5).prop_map(|i| match subject_pool()[i].clone() {
                Term::Iri(iri) => QueryTerm::Iri(iri),
                _ => unreachable!(),
            }),
        ]
        .boxed()
    } else {
        prop_oneof![
            2 => vars,
            1 => (0usize..5).prop_map(|i| match subject_pool()[i].clone() {
                Term::Iri(iri) => QueryTerm::Iri(iri),
                _ => unreachable!(),
            }),
        ]
        .boxed()
    }
}

fn arb_pattern() -> impl Strategy<Value = TriplePattern> {
    (
        arb_position(false),
        prop_oneof![
            1 => prop::sample::select(vec!["v0", "v1", "v2", "v3"])
                .prop_map(|v| QueryTerm::Var(v.to_string())),
            3 => (0usize..4).prop_map(|i| QueryTerm::Iri(predicate_pool()[i].clone())),
        ],
        arb_position(true),
    )
        .prop_map(|(subject, predicate, object)| TriplePattern {
            subject,
            predicate,
            object,
        })
}

fn base_plan(patterns: Vec<TriplePattern>, distinct: bool) -> QueryPlan {
    QueryPlan {
        prefixes: Default::default(),
        projection: vec!["v0".into(), "v1".into(), "v2".into(), "v3".into()],
        distinct,
        where_clause: patterns.into_iter().map(WhereElement::Pattern).collect(),
        order_by: vec![],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn distinct_output_has_no_duplicate_rows(
        store in arb_store(),
        patterns in prop::collection::vec(arb_pattern(), 1..3),
    ) {
        let plan = base_plan(patterns, true);
        let table = evaluate(&plan, &store).unwrap();
        let mut deduped = table.rows.clone();
        deduped.sort();
        deduped.dedup();
        prop_assert_eq!(deduped.len(), table.rows.len());
    }

    #[test]
    fn adding_an_optional_block_never_decreases_row_count(
        store in arb_store(),
        patterns in prop::collection::vec(arb_pattern(), 1..3),
        optional in prop::collection::vec(arb_pattern(), 1..3),
    ) {
        let without = base_plan(patterns.clone(), false);
        let mut with = base_plan(patterns, false);
        with.where_clause.push(WhereElement::Optional(optional));
        let baseline = evaluate(&without, &store).unwrap().rows.len();
        let extended = evaluate(&with, &store).unwrap().rows.len();
        prop_assert!(extended >= baseline);
    }

    #[test]
    fn filters_only_ever_remove_rows(
        store in arb_store(),
        patterns in prop::collection::vec(arb_pattern(), 1..3),
        object_idx in 0usize..8,
        negate in any::<bool>(),
    ) {
        let filter_term = match object_pool()[object_idx].clone() {
            Term::Iri(iri) => QueryTerm::Iri(iri),
            Term::Literal(lit) => QueryTerm::Literal(lit),
            Term::Blank(_) => unreachable!(),
        };
        let expr = if negate {
            FilterExpr::Neq(QueryTerm::Var("v0".into()), filter_term)
        } else {
            FilterExpr::Eq(QueryTerm::Var("v0".into()), filter_term)
        };
        let without = base_plan(patterns.clone(), false);
        let mut with = base_plan(patterns, false);
        with.where_clause.push(WhereElement::Filter(expr));

        let unfiltered = evaluate(&without, &store).unwrap().rows;
        let filtered = evaluate(&with, &store).unwrap().rows;
        prop_assert!(filtered.len() <= unfiltered.len());
        // multiset inclusion
        let mut pool = unfiltered;
        for row in &filtered {
            let at = pool.iter().position(|r| r == row);
            prop_assert!(at.is_some(), "filtered row not present unfiltered");
            pool.swap_remove(at.unwrap());
        }
    }

    #[test]
    fn evaluation_is_deterministic(
        store in arb_store(),
        patterns in prop::collection::vec(arb_pattern(), 1..3),
    ) {
        let mut plan = base_plan(patterns, true);
        plan.order_by = vec!["v0".into()];
        let first = evaluate(&plan, &store).unwrap();
        let second = evaluate(&plan, &store).unwrap();
        prop_assert_eq!(first.rows, second.rows);
    }
}
