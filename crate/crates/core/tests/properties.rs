use edgeprim_core::catalog::Catalog;
use edgeprim_core::props::{basic_invariants, edge_action, is_edge_transitive, local_action, s_arc_transitivity};
use edgeprim_core::{build_from_lattice, isomorphism, Graph, Limits, PermGroup, Permutation};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn corpus_graph(i: usize) -> Graph {
    let names = [
        "table2_row01",
        "table2_row03",
        "table2_row10",
        "gamma1",
        "a5_k5",
        "hoffman_singleton",
    ];
    let l = Catalog::open_default().load_lattice(names[i % names.len()]).unwrap();
    build_from_lattice(&l, &Limits::default()).unwrap().graph
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabeling_preserves_isomorphism_class(i in 0usize..6, seed in any::<u64>()) {
        let g = corpus_graph(i);
        let n = g.vertex_count();
        let mut images: Vec<u32> = (0..n as u32).collect();
        images.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabel(&Permutation::from_images(images).unwrap());
        let f = isomorphism(&g, &h).expect("relabeled copy is isomorphic");
        for (u, v) in g.edges() {
            prop_assert!(h.has_edge(f[u as usize] as usize, f[v as usize] as usize));
        }
        prop_assert_eq!(basic_invariants(&g), basic_invariants(&h));
    }

    #[test]
    fn bsgs_order_is_stable_under_generator_order(a in perm_strategy(7), b in perm_strategy(7)) {
        let g1 = PermGroup::new(7, vec![a.clone(), b.clone()]).unwrap();
        let g2 = PermGroup::new(7, vec![b.clone(), a.compose(&b)]).unwrap();
        prop_assert_eq!(g1.order(), g2.order());
        prop_assert!(g1.same_group(&g2));
    }
}

#[test]
fn s_arc_levels_agree_with_arc_counts_and_local_action() {
    for i in 0..6 {
        let g = corpus_graph(i);
        let s = s_arc_transitivity(&g).unwrap();
        assert!(s.counts_consistent);
        let max_s = s.max_s.unwrap();
        assert_eq!(local_action(&g, 0).unwrap().two_transitive, max_s >= 2);
        assert_eq!(edge_action(&g).unwrap().edges.len(), basic_invariants(&g).size);
        assert!(is_edge_transitive(&g).unwrap());
    }
}
