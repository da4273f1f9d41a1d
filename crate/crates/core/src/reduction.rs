//! Passing from `G` to a subgroup `G1` that still acts edge-primitively.

use crate::blocks::primitivity;
use crate::coset::is_maximal;
use crate::graph::build_from_lattice;
use crate::group::PermGroup;
use crate::lattice::{intersection, verify_lattice, Lattice};
use crate::props::edge_action;
use crate::report::VerificationReport;
use crate::Limits;

/// Checks whether `E ∩ G1` is maximal in `G1` and, if so, that `G1` acts
/// edge-primitively and arc-transitively on the graph of `l`.
///
/// The report passes only when the reduction is certified. A non-maximal
/// intersection fails the `"E∩G1 maximal in G1"` record and stops there.
pub fn check_reduction(l: &Lattice, g1: &PermGroup, limits: &Limits) -> VerificationReport {
    let mut r = VerificationReport::new(format!("{} over a subgroup of order {}", l.name, g1.order()));
    r.extend(verify_lattice(l, limits));
    if !r.check("G1 <= G", g1.is_subgroup_of(&l.g), format!("|G1| = {}", g1.order())) || !r.passed {
        return r;
    }
    let k = match intersection(&l.e, g1, limits) {
        Ok(k) => k,
        Err(e) => {
            r.check("E∩G1", false, e.to_string());
            return r;
        }
    };
    r.check("E∩G1", true, format!("|E∩G1| = {}", k.order()));
    let maximal = match is_maximal(g1, &k, limits) {
        Ok(m) => m,
        Err(e) => {
            r.check("E∩G1 maximal in G1", false, e.to_string());
            return r;
        }
    };
    if !r.check(
        "E∩G1 maximal in G1",
        maximal,
        if maximal {
            "maximal"
        } else {
            "not maximal, no conclusion"
        },
    ) {
        return r;
    }
    let cg = match build_from_lattice(l, limits) {
        Ok(cg) => cg,
        Err(e) => {
            r.check("graph", false, e.to_string());
            return r;
        }
    };
    let images: Option<Vec<_>> = g1.generators().iter().map(|x| cg.cosets.image_of(x)).collect();
    let graph = match images.map(|im| cg.graph.clone().with_action(im, Some(g1.order().clone()))) {
        Some(Ok(graph)) => graph,
        _ => {
            r.check("G1 acts on the graph", false, "generator images unavailable");
            return r;
        }
    };
    let prim = edge_action(&graph)
        .and_then(|ea| ea.group(Some(g1.order())))
        .map(|eg| primitivity(&eg).is_primitive());
    match prim {
        Ok(p) => r.check("G1 edge-primitive", p, format!("{} edges", graph.edge_count())),
        Err(e) => r.check("G1 edge-primitive", false, e.to_string()),
    };
    let flips = k.generators().iter().any(|x| !l.h.contains(x));
    r.check("G1 arc-transitive", flips, "E∩G1 swaps the ends of the base edge");
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(n, gens).unwrap()
    }

    fn k5_over_s5() -> Lattice {
        Lattice::new(
            "k5",
            grp(5, &["(1,2)", "(1,2,3,4,5)"]),
            grp(5, &["(1,2)", "(3,4)", "(3,4,5)"]),
            grp(5, &["(3,4)", "(3,4,5)"]),
            grp(5, &["(2,3)", "(2,3,4,5)"]),
        )
    }

    #[test]
    fn k5_reduces_to_a5() {
        let l = k5_over_s5();
        let a5 = grp(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        let r = check_reduction(&l, &a5, &Limits::default());
        assert!(r.passed, "{r:?}");
        assert!(r.get("E∩G1").unwrap().detail.ends_with("= 6"));
    }

    #[test]
    fn whole_group_matches_verify() {
        let l = k5_over_s5();
        let r = check_reduction(&l, &l.g.clone(), &Limits::default());
        assert_eq!(r.passed, verify_lattice(&l, &Limits::default()).passed);
    }

    #[test]
    fn not_a_subgroup() {
        let l = k5_over_s5();
        let bad = grp(6, &["(1,6)"]);
        let r = check_reduction(&l, &bad, &Limits::default());
        assert!(!r.passed);
    }
}
