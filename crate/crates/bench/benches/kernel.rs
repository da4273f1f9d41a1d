use criterion::{black_box, criterion_group, criterion_main, Criterion};
use edgeprim_core::catalog::Catalog;
use edgeprim_core::props::s_arc_transitivity;
use edgeprim_core::{build_from_lattice, isomorphism, CosetAction, Limits, PermGroup, Permutation};

fn bsgs(c: &mut Criterion) {
    let cat = Catalog::open_default();
    for name in ["aut_a6", "m12_2", "j1"] {
        let loaded = cat.load_group(name).unwrap();
        let gens = loaded.group.generators().to_vec();
        let degree = loaded.group.degree();
        c.bench_function(&format!("bsgs/{name}"), |b| {
            b.iter(|| PermGroup::new(degree, black_box(gens.clone())).unwrap())
        });
    }
}

fn cosets(c: &mut Criterion) {
    let cat = Catalog::open_default();
    for name in ["table2_row10", "m12_2_weiss", "j1"] {
        let l = cat.load_lattice(name).unwrap();
        c.bench_function(&format!("coset_action/{name}"), |b| {
            b.iter(|| CosetAction::new(&l.g, &l.h, &Limits::default()).unwrap())
        });
    }
    let l = cat.load_lattice("j1").unwrap();
    let cg = build_from_lattice(&l, &Limits::default()).unwrap();
    c.bench_function("s_arc/j1", |b| b.iter(|| s_arc_transitivity(&cg.graph).unwrap()));
}

fn iso(c: &mut Criterion) {
    let cat = Catalog::open_default();
    for name in ["gamma0", "hoffman_singleton"] {
        let g = build_from_lattice(&cat.load_lattice(name).unwrap(), &Limits::default())
            .unwrap()
            .graph;
        let n = g.vertex_count();
        let shifted = g.relabel(&Permutation::from_fn(n, |i| (i * 7 + 3) % n).unwrap());
        c.bench_function(&format!("isomorphism/{name}"), |b| {
            b.iter(|| isomorphism(black_box(&g), black_box(&shifted)).unwrap())
        });
    }
}

criterion_group!(benches, bsgs, cosets, iso);
criterion_main!(benches);
