use std::time::Instant;

use edgeprim_core::catalog::Catalog;
use edgeprim_core::props::check_expected;
use edgeprim_core::{build_from_lattice, verify_lattice, Limits};

#[test]
fn every_group_loads_with_its_claimed_order() {
    let cat = Catalog::open_default();
    for name in cat.group_names().unwrap() {
        let g = cat.load_group(&name).unwrap();
        assert_eq!(g.group.order().to_string(), g.entry.claimed_order, "{name}");
    }
}

#[test]
fn every_lattice_verifies_and_matches_its_properties() {
    let cat = Catalog::open_default();
    for name in cat.lattice_names().unwrap() {
        let t = Instant::now();
        let l = cat.load_lattice(&name).unwrap();
        let r = verify_lattice(&l, &Limits::default());
        assert!(r.passed, "{name}: {:?}", r.failures().collect::<Vec<_>>());
        let cg = build_from_lattice(&l, &Limits::default()).unwrap();
        let r = check_expected(&cg.graph, &l.expected).unwrap();
        eprintln!("{name}: {:?}", t.elapsed());
        assert!(r.passed, "{name}: {:?}", r.failures().collect::<Vec<_>>());
    }
}
