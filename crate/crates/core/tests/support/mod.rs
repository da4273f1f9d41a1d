//! Brute-force oracles for the property suites.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use edgeprim_core::blocks::{is_biprimitive, is_primitive};
use edgeprim_core::catalog::Catalog;
use edgeprim_core::coset::is_maximal;
use edgeprim_core::graph::build_from_lattice_with;
use edgeprim_core::props::{s_arc_transitivity, vertex_group};
use edgeprim_core::subgroups::enumerate_subgroups;
use edgeprim_core::{build_from_lattice, Graph, Limits, PermGroup, Permutation};
use rand::SeedableRng;

pub const TABLE2: [&str; 11] = [
    "table2_row01",
    "table2_row02",
    "table2_row03",
    "table2_row04",
    "table2_row05",
    "table2_row06",
    "table2_row07",
    "table2_row08",
    "table2_row09",
    "table2_row10",
    "table2_row11",
];

/// Groups of order at most 2000 in the corpus.
pub const SMALL_GROUPS: [&str; 6] = ["a5", "a6", "s6", "m10", "pgl2_9", "aut_a6"];

#[derive(Debug, Default)]
pub struct Outcome {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.cases > 0 && self.failures.is_empty()
    }
}

/// Every element of `<gens>`, by breadth-first closure.
pub fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = x.compose(s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn set_orbit(degree: usize, gens: &[Permutation], block: &[usize]) -> Vec<Vec<usize>> {
    let mut start = block.to_vec();
    start.sort_unstable();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(b) = queue.pop_front() {
        for s in gens {
            let mut img: Vec<usize> = b.iter().map(|&x| s.image(x)).collect();
            img.sort_unstable();
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
        out.push(b);
        if out.len() > degree {
            break;
        }
    }
    out
}

fn is_block(degree: usize, gens: &[Permutation], block: &[usize]) -> bool {
    let orbit = set_orbit(degree, gens, block);
    let mut hit = vec![0u32; degree];
    for b in &orbit {
        for &x in b {
            hit[x] += 1;
        }
    }
    hit.iter().all(|&c| c == 1)
}

fn subsets_with_zero(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, next: usize, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for x in next..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(n, k, cur, x + 1, f);
            cur.pop();
        }
    }
    let mut cur = vec![0];
    rec(n, k, &mut cur, 1, f);
}

/// Sizes of all nontrivial blocks containing point 0.
pub fn block_sizes(degree: usize, gens: &[Permutation]) -> Vec<usize> {
    let mut sizes = Vec::new();
    for k in 2..degree {
        if !degree.is_multiple_of(k) {
            continue;
        }
        subsets_with_zero(degree, k, &mut |b| {
            if is_block(degree, gens, b) {
                sizes.push(k);
            }
        });
    }
    sizes
}

pub fn transitive(degree: usize, gens: &[Permutation]) -> bool {
    let mut seen = vec![false; degree];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for s in gens {
            let y = s.image(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

pub fn brute_primitive(degree: usize, gens: &[Permutation]) -> bool {
    transitive(degree, gens) && block_sizes(degree, gens).is_empty()
}

pub fn brute_biprimitive(degree: usize, gens: &[Permutation]) -> bool {
    let sizes = block_sizes(degree, gens);
    transitive(degree, gens) && !sizes.is_empty() && sizes.iter().all(|&k| 2 * k == degree)
}

fn pack(t: &[u32]) -> u64 {
    t.iter().fold(0u64, |acc, &v| (acc << 8) | v as u64)
}

/// All `s`-arcs of `g`.
pub fn s_arcs(g: &Graph, s: usize) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = (0..g.vertex_count() as u32).map(|v| vec![v]).collect();
    for _ in 0..s {
        let mut next = Vec::new();
        for a in &out {
            let last = a[a.len() - 1] as usize;
            for &w in g.neighbors(last) {
                if a.len() >= 2 && a[a.len() - 2] == w {
                    continue;
                }
                let mut b = a.clone();
                b.push(w);
                next.push(b);
            }
        }
        out = next;
    }
    out
}

/// Whether `<gens>` is transitive on the `s`-arcs of `g`.
pub fn brute_s_transitive(g: &Graph, gens: &[Permutation], s: usize) -> bool {
    let arcs = s_arcs(g, s);
    let start = arcs[0].clone();
    let mut seen = HashSet::from([pack(&start)]);
    let mut stack = vec![start];
    while let Some(t) = stack.pop() {
        for p in gens {
            let img: Vec<u32> = t.iter().map(|&v| p.image(v as usize) as u32).collect();
            if seen.insert(pack(&img)) {
                stack.push(img);
            }
        }
    }
    seen.len() == arcs.len()
}

/// `h` is maximal in `g` iff `<h, x> = g` for every `x` outside `h`.
pub fn brute_maximal(g_elements: &[Permutation], g_order: usize, h: &[Permutation], degree: usize) -> bool {
    let h_set = closure(degree, h);
    if h_set.len() == g_order {
        return false;
    }
    let mut covered: HashSet<Permutation> = h_set.clone();
    for x in g_elements {
        if covered.contains(x) {
            continue;
        }
        let mut gens = h.to_vec();
        gens.push(x.clone());
        let k = closure(degree, &gens);
        if k.len() != g_order {
            return false;
        }
        covered.insert(x.clone());
    }
    true
}

pub fn bsgs_orders(cat: &Catalog, samples: usize) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let groups: Vec<PermGroup> = SMALL_GROUPS.iter().map(|n| cat.load_group(n).unwrap().group).collect();
    for i in 0..samples {
        let g = &groups[i % groups.len()];
        let k = 1 + i % 2;
        let gens: Vec<Permutation> = (0..k).map(|_| g.random_element(&mut rng)).collect();
        let sub = PermGroup::new(g.degree(), gens.clone()).unwrap();
        let brute = closure(g.degree(), &gens).len();
        out.record(sub.order_u64() == Some(brute as u64), || {
            format!("sample {i}: bsgs {} vs closure {brute}", sub.order())
        });
    }
    out
}

/// Transitive groups of degree at most 12: the small catalog groups and
/// the vertex actions of the small A6-socle graphs.
pub fn primitivity(cat: &Catalog) -> Outcome {
    let mut out = Outcome::default();
    let mut cases: Vec<(String, PermGroup)> = Vec::new();
    for name in cat.group_names().unwrap() {
        let g = cat.load_group(&name).unwrap().group;
        if g.degree() <= 12 && g.is_transitive() {
            cases.push((name, g));
        }
    }
    for name in TABLE2.iter().chain(["a5_k5"].iter()) {
        let l = cat.load_lattice(name).unwrap();
        let cg = build_from_lattice(&l, &Limits::default()).unwrap();
        if cg.graph.vertex_count() <= 12 {
            cases.push((format!("{name} vertices"), vertex_group(&cg.graph).unwrap()));
        }
    }
    for (name, g) in cases {
        let bp = brute_primitive(g.degree(), g.generators());
        let bb = brute_biprimitive(g.degree(), g.generators());
        out.record(is_primitive(&g) == bp, || {
            format!("{name}: primitive, brute force says {bp}")
        });
        out.record(is_biprimitive(&g) == bb, || {
            format!("{name}: biprimitive, brute force says {bb}")
        });
    }
    out
}

/// Every lattice graph with at most 30 vertices, `s = 1..=5`.
pub fn s_arcs_suite(cat: &Catalog) -> Outcome {
    let mut out = Outcome::default();
    for name in cat.lattice_names().unwrap() {
        let l = cat.load_lattice(&name).unwrap();
        if l.vertex_count() > 30u32.into() {
            continue;
        }
        let cg = build_from_lattice(&l, &Limits::default()).unwrap();
        let report = s_arc_transitivity(&cg.graph).unwrap();
        let max_s = report.max_s.unwrap_or(0) as usize;
        let gens = &cg.graph.action().unwrap().generators;
        for s in 1..=5 {
            let brute = brute_s_transitive(&cg.graph, gens, s);
            out.record(brute == (s <= max_s), || {
                format!("{name}: s = {s}, checker max_s {max_s}, brute {brute}")
            });
        }
    }
    out
}

/// Every subgroup class representative of the groups of order at most 2000.
pub fn maximality(cat: &Catalog) -> Outcome {
    let mut out = Outcome::default();
    for name in SMALL_GROUPS {
        let g = cat.load_group(name).unwrap().group;
        let elements = g.elements();
        let lat = enumerate_subgroups(&g, 2000).unwrap();
        for i in 0..lat.class_count() {
            let h = lat.rep_group(i);
            let fast = is_maximal(&g, &h, &Limits::default()).unwrap();
            let brute = brute_maximal(&elements, elements.len(), h.generators(), g.degree());
            out.record(fast == brute, || {
                format!("{name} class {i} (order {}): {fast} vs {brute}", h.order())
            });
        }
    }
    out
}

/// The graph is the same for every choice of `g` in `E \ A`.
pub fn g_independence(cat: &Catalog) -> Outcome {
    let mut out = Outcome::default();
    for name in TABLE2 {
        let l = cat.load_lattice(name).unwrap();
        let base = build_from_lattice(&l, &Limits::default()).unwrap();
        for x in l.e.elements() {
            if l.a.contains(&x) {
                continue;
            }
            let ok = build_from_lattice_with(&l, &x, &Limits::default())
                .map(|cg| cg.graph.adjacency() == base.graph.adjacency())
                .unwrap_or(false);
            out.record(ok, || format!("{name}: g = {x} gives a different graph"));
        }
    }
    out
}
