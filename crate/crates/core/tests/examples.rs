use edgeprim_core::catalog::{Catalog, LatticeFile};
use edgeprim_core::iso::canonical_form;
use edgeprim_core::normal::{derived_subgroup, is_normalized};
use edgeprim_core::props::{
    basic_invariants, is_edge_primitive, is_vertex_biprimitive, local_action, s_arc_transitivity,
};
use edgeprim_core::reduction::check_reduction;
use edgeprim_core::{build_from_lattice, find_lattices, isomorphic, isomorphism, verify_lattice, Error, Limits};

fn cat() -> Catalog {
    Catalog::open_default()
}

fn graph(name: &str) -> edgeprim_core::CosetGraph {
    let l = cat().load_lattice(name).unwrap();
    build_from_lattice(&l, &Limits::default()).unwrap()
}

#[test]
fn table2_search_finds_the_eleven_rows() {
    let cat = cat();
    let over = cat.load_group("aut_a6").unwrap().group;
    let rows: Vec<_> = (1..=11)
        .map(|i| cat.load_lattice(&format!("table2_row{i:02}")).unwrap())
        .collect();
    let mut matched = vec![false; rows.len()];
    let mut found = 0;
    for name in ["a6", "s6", "m10", "pgl2_9", "aut_a6"] {
        let g = cat.load_group(name).unwrap().group;
        let search = find_lattices(&g, Some(&over), &Limits::default()).unwrap();
        assert!(search.aut_dedup);
        for f in search.nontrivial() {
            found += 1;
            let l = f.clone().into_lattice("found", &g);
            let built = build_from_lattice(&l, &Limits::default()).unwrap();
            let hit = rows.iter().position(|r| {
                r.g.same_group(&g)
                    && r.e.order_u64() == Some(f.e_order)
                    && r.a.order_u64() == Some(f.a_order)
                    && r.h.order_u64() == Some(f.h_order)
                    && isomorphic(&built.graph, &build_from_lattice(r, &Limits::default()).unwrap().graph)
            });
            let i =
                hit.unwrap_or_else(|| panic!("{name}: ({}, {}, {}) matches no row", f.e_order, f.a_order, f.h_order));
            assert!(!matched[i], "row {} found twice", i + 1);
            matched[i] = true;
        }
    }
    assert_eq!(found, 11);
    assert!(matched.iter().all(|&m| m));
}

#[test]
fn a5_search_gives_k5() {
    let g = cat().load_group("a5").unwrap().group;
    let s = find_lattices(&g, None, &Limits::default()).unwrap();
    assert_eq!(s.lattices.len(), 1);
    let cg = build_from_lattice(&s.lattices[0].clone().into_lattice("k5", &g), &Limits::default()).unwrap();
    let b = basic_invariants(&cg.graph);
    assert!(b.complete && b.order == 5);
}

#[test]
fn cage_rows_are_pairwise_isomorphic() {
    let gs: Vec<_> = ["table2_row04", "table2_row07", "table2_row10", "gamma0"]
        .map(graph)
        .to_vec();
    for a in &gs {
        for b in &gs {
            let f = isomorphism(&a.graph, &b.graph).expect("isomorphic");
            for (u, v) in a.graph.edges() {
                assert!(b.graph.has_edge(f[u as usize] as usize, f[v as usize] as usize));
            }
        }
    }
    let c = canonical_form(&gs[0].graph).certificate;
    assert!(gs.iter().all(|g| canonical_form(&g.graph).certificate == c));
    assert!(!isomorphic(&gs[0].graph, &graph("gamma1").graph));
}

#[test]
fn complete_rows() {
    for (row, n) in [(1, 6), (2, 6), (5, 10), (8, 10), (11, 10)] {
        let b = basic_invariants(&graph(&format!("table2_row{row:02}")).graph);
        assert!(b.complete && b.order == n, "row {row}");
    }
    for row in [3, 6, 9] {
        let b = basic_invariants(&graph(&format!("table2_row{row:02}")).graph);
        assert!(
            b.complete_bipartite && b.order == 12 && b.valency == Some(6),
            "row {row}"
        );
    }
}

#[test]
fn tutte_cage() {
    let cg = graph("gamma0");
    let b = basic_invariants(&cg.graph);
    assert_eq!(
        (b.order, b.size, b.valency, b.girth, b.bipartite),
        (30, 45, Some(3), Some(8), true)
    );
    assert!(is_edge_primitive(&cg.graph).unwrap());
    assert!(is_vertex_biprimitive(&cg.graph).unwrap());
    let s = s_arc_transitivity(&cg.graph).unwrap();
    assert_eq!(s.max_s, Some(5));
    assert!(s.counts_consistent && !s.capped);
    let loc = local_action(&cg.graph, 0).unwrap();
    assert_eq!(
        (
            loc.stabilizer_order.as_str(),
            loc.induced_order.as_str(),
            loc.kernel_order.as_str()
        ),
        ("48", "6", "8")
    );
    assert!(loc.two_transitive && !loc.faithful);
}

#[test]
fn gamma1() {
    let cg = graph("gamma1");
    let b = basic_invariants(&cg.graph);
    assert_eq!((b.order, b.valency, b.girth, b.bipartite), (30, Some(7), Some(4), true));
    assert_eq!(s_arc_transitivity(&cg.graph).unwrap().max_s, Some(2));
    assert!(local_action(&cg.graph, 0).unwrap().two_transitive);
    assert!(is_edge_primitive(&cg.graph).unwrap());
}

#[test]
fn j1_graph() {
    let cg = graph("j1");
    assert_eq!((cg.graph.vertex_count(), cg.valency()), (1045, 8));
    let s = s_arc_transitivity(&cg.graph).unwrap();
    assert_eq!(s.max_s, Some(2));
    assert_eq!(s.stabilizer_order(2), Some("3"));
    assert!(is_edge_primitive(&cg.graph).unwrap());
}

#[test]
fn m12_graph() {
    let l = cat().load_lattice("m12_2_weiss").unwrap();
    assert_eq!((l.vertex_count(), l.valency()), (440u32.into(), 4u32.into()));
    let cg = build_from_lattice(&l, &Limits::default()).unwrap();
    assert_eq!((cg.graph.vertex_count(), cg.valency()), (440, 4));
    assert!(s_arc_transitivity(&cg.graph).unwrap().max_s >= Some(3));
    assert!(is_edge_primitive(&cg.graph).unwrap());
}

#[test]
fn hoffman_singleton() {
    let l = cat().load_lattice("hoffman_singleton").unwrap();
    assert_eq!(l.g.order_u64(), Some(252000));
    assert_eq!((l.vertex_count(), l.valency()), (50u32.into(), 7u32.into()));
    let cg = build_from_lattice(&l, &Limits::default()).unwrap();
    let b = basic_invariants(&cg.graph);
    assert_eq!((b.order, b.valency, b.girth), (50, Some(7), Some(5)));
    let loc = local_action(&cg.graph, 0).unwrap();
    assert_eq!(loc.induced_order, "5040");
    assert!(loc.faithful && loc.two_transitive);
    assert!(s_arc_transitivity(&cg.graph).unwrap().max_s >= Some(3));
}

#[test]
fn derived_subgroup_of_h_is_not_normalized_by_edge_elements() {
    let l = cat().load_lattice("table2_row10").unwrap();
    let dh = derived_subgroup(&l.h).unwrap();
    for x in l.e.elements().into_iter().filter(|x| !l.a.contains(x)) {
        assert!(!is_normalized(&dh, &x).unwrap(), "{x}");
    }
}

#[test]
fn reduction_of_row10_to_s6_is_inconclusive() {
    let cat = cat();
    let l = cat.load_lattice("table2_row10").unwrap();
    let s6 = cat.load_group("s6").unwrap().group;
    let r = check_reduction(&l, &s6, &Limits::default());
    assert!(!r.passed);
    assert_eq!(r.get("E∩G1").unwrap().detail, "|E∩G1| = 16");
    assert!(!r.get("E∩G1 maximal in G1").unwrap().passed);
}

#[test]
fn forced_order_mismatch() {
    let mut entry = cat().group_entry("j1").unwrap();
    entry.claimed_order = "175561".into();
    assert!(entry.verify().is_err());
}

#[test]
fn forced_containment_failure() {
    let cat = cat();
    let mut file = LatticeFile::from_json(
        &std::fs::read_to_string(cat.lattice_path("table2_row10")).unwrap(),
        "row10",
    )
    .unwrap();
    file.h_ref = "row09_H".into();
    assert!(cat.resolve_lattice(file.clone()).is_err());
    file.h_ref = "row10_H".into();
    file.group_ref = "missing".into();
    assert!(matches!(cat.resolve_lattice(file), Err(Error::Catalog(_))));
}

#[test]
fn row10_with_h_replaced_by_e_fails() {
    let mut l = cat().load_lattice("table2_row10").unwrap();
    l.h = l.e.clone();
    let r = verify_lattice(&l, &Limits::default());
    assert!(!r.get("H != E").unwrap().passed);
}

#[test]
fn shipped_files_round_trip() {
    let cat = cat();
    for name in cat.group_names().unwrap() {
        let e = cat.group_entry(&name).unwrap();
        let again =
            edgeprim_core::catalog::CatalogEntry::from_json(&serde_json::to_string(&e).unwrap(), &name).unwrap();
        assert_eq!(e, again);
    }
    for name in cat.lattice_names().unwrap() {
        let text = std::fs::read_to_string(cat.lattice_path(&name)).unwrap();
        let f = LatticeFile::from_json(&text, &name).unwrap();
        assert_eq!(
            f,
            LatticeFile::from_json(&serde_json::to_string(&f).unwrap(), &name).unwrap()
        );
    }
}
