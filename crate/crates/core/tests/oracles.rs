mod support;

use edgeprim_core::catalog::Catalog;
use support::Outcome;

fn assert_outcome(o: Outcome) {
    eprintln!("{} cases", o.cases);
    assert!(o.passed(), "{:#?}", o.failures);
}

#[test]
fn bsgs_order_matches_closure() {
    assert_outcome(support::bsgs_orders(&Catalog::open_default(), 50));
}

#[test]
fn primitivity_matches_partition_search() {
    assert_outcome(support::primitivity(&Catalog::open_default()));
}

#[test]
fn s_arc_transitivity_matches_tuple_orbits() {
    assert_outcome(support::s_arcs_suite(&Catalog::open_default()));
}

#[test]
fn maximality_matches_exhaustive_search() {
    assert_outcome(support::maximality(&Catalog::open_default()));
}

#[test]
fn graph_does_not_depend_on_g() {
    assert_outcome(support::g_independence(&Catalog::open_default()));
}
