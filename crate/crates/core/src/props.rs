//! Graph invariants and symmetry properties.

use std::collections::VecDeque;

use num_bigint::BigUint;
use serde::Serialize;

use crate::blocks::{is_biprimitive, is_primitive, primitivity, Primitivity};
use crate::catalog::ExpectedProperties;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{BsgsOptions, PermGroup, DEFAULT_SEED};
use crate::perm::Permutation;
use crate::report::VerificationReport;

/// Largest `s` examined when every level stays transitive.
pub const S_LIMIT: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicInvariants {
    pub order: usize,
    pub size: usize,
    pub connected: bool,
    /// Common degree when the graph is regular.
    pub valency: Option<usize>,
    pub bipartite: bool,
    /// `None` for forests.
    pub girth: Option<usize>,
    pub complete: bool,
    pub complete_bipartite: bool,
}

fn bipartition(g: &Graph) -> Option<Vec<u8>> {
    let n = g.vertex_count();
    let mut colour = vec![u8::MAX; n];
    for s in 0..n {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                let v = v as usize;
                if colour[v] == u8::MAX {
                    colour[v] = 1 - colour[u];
                    queue.push_back(v);
                } else if colour[v] == colour[u] {
                    return None;
                }
            }
        }
    }
    Some(colour)
}

/// Length of a shortest cycle, by breadth-first search from every vertex.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![u32::MAX; n];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        dist[s] = 0;
        parent[s] = u32::MAX;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] as usize + 1 >= best {
                break;
            }
            for &v in g.neighbors(u) {
                let v = v as usize;
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u as u32;
                    queue.push_back(v);
                } else if parent[u] != v as u32 {
                    let len = (dist[u] + dist[v] + 1) as usize;
                    if len < best {
                        best = len;
                    }
                    if dist[v] == dist[u] {
                        break 'bfs;
                    }
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

pub fn basic_invariants(g: &Graph) -> BasicInvariants {
    let n = g.vertex_count();
    let m = g.edge_count();
    let valency = match n {
        0 => None,
        _ => {
            let d = g.degree(0);
            (0..n).all(|v| g.degree(v) == d).then_some(d)
        }
    };
    let parts = bipartition(g);
    let complete_bipartite = match &parts {
        Some(c) if n > 1 => {
            let a = c.iter().filter(|&&x| x == 0).count();
            let b = n - a;
            a > 0 && b > 0 && m == a * b
        }
        _ => false,
    };
    BasicInvariants {
        order: n,
        size: m,
        connected: g.is_connected(),
        valency,
        bipartite: parts.is_some(),
        girth: girth(g),
        complete: n > 0 && m == n * (n - 1) / 2,
        complete_bipartite,
    }
}

pub fn triangle_count(g: &Graph) -> u64 {
    let mut t = 0u64;
    for (u, v) in g.edges() {
        let (a, b) = (g.neighbors(u as usize), g.neighbors(v as usize));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    t += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    t / 3
}

pub fn four_cycle_count(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let mut paths = vec![0u64; n];
    let mut touched = Vec::new();
    let mut total = 0u64;
    for u in 0..n {
        for &x in g.neighbors(u) {
            for &w in g.neighbors(x as usize) {
                let w = w as usize;
                if w != u {
                    if paths[w] == 0 {
                        touched.push(w);
                    }
                    paths[w] += 1;
                }
            }
        }
        for &w in &touched {
            total += paths[w] * (paths[w] - 1) / 2;
            paths[w] = 0;
        }
        touched.clear();
    }
    total / 4
}

/// Quick-reject vector for isomorphism testing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantVector {
    pub order: usize,
    pub degrees: Vec<usize>,
    pub girth: Option<usize>,
    pub bipartite: bool,
    pub triangles: u64,
    pub four_cycles: u64,
}

pub fn invariant_vector(g: &Graph) -> InvariantVector {
    let mut degrees: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    InvariantVector {
        order: g.vertex_count(),
        degrees,
        girth: girth(g),
        bipartite: bipartition(g).is_some(),
        triangles: triangle_count(g),
        four_cycles: four_cycle_count(g),
    }
}

fn action_of(g: &Graph) -> Result<&crate::graph::GraphAction> {
    g.action()
        .ok_or_else(|| Error::Invalid("graph has no attached action".into()))
}

/// The group generated by the attached vertex permutations.
pub fn vertex_group(g: &Graph) -> Result<PermGroup> {
    let act = action_of(g)?;
    PermGroup::with_options(
        g.vertex_count().max(1),
        act.generators.clone(),
        &BsgsOptions {
            seed: DEFAULT_SEED,
            order_hint: act.source_order.clone(),
            base_prefix: Vec::new(),
        },
    )
}

/// Induced action on edges, indexed as in [`Graph::edges`].
#[derive(Clone, Debug)]
pub struct EdgeAction {
    pub edges: Vec<(u32, u32)>,
    pub generators: Vec<Permutation>,
}

impl EdgeAction {
    pub fn group(&self, hint: Option<&BigUint>) -> Result<PermGroup> {
        PermGroup::with_options(
            self.edges.len().max(1),
            self.generators.clone(),
            &BsgsOptions {
                seed: DEFAULT_SEED,
                order_hint: hint.cloned(),
                base_prefix: Vec::new(),
            },
        )
    }
}

pub fn edge_action(g: &Graph) -> Result<EdgeAction> {
    let act = action_of(g)?;
    let edges = g.edges();
    let index = |u: usize, v: usize| -> Option<u32> {
        let key = (u.min(v) as u32, u.max(v) as u32);
        edges.binary_search(&key).ok().map(|i| i as u32)
    };
    let generators = act
        .generators
        .iter()
        .map(|s| {
            let images = edges
                .iter()
                .map(|&(u, v)| {
                    index(s.image(u as usize), s.image(v as usize))
                        .ok_or_else(|| Error::Invalid("action maps an edge to a non-edge".into()))
                })
                .collect::<Result<Vec<u32>>>()?;
            Permutation::from_images(images).map_err(Error::from)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EdgeAction { edges, generators })
}

/// Primitivity of the induced action on edges.
pub fn edge_primitivity(g: &Graph) -> Result<Primitivity> {
    if g.edge_count() == 0 {
        return Err(Error::Invalid("graph has no edges".into()));
    }
    let ea = edge_action(g)?;
    let hint = action_of(g)?.source_order.clone();
    Ok(primitivity(&ea.group(hint.as_ref())?))
}

pub fn is_edge_primitive(g: &Graph) -> Result<bool> {
    Ok(edge_primitivity(g)?.is_primitive())
}

pub fn is_vertex_primitive(g: &Graph) -> Result<bool> {
    Ok(is_primitive(&vertex_group(g)?))
}

pub fn is_vertex_biprimitive(g: &Graph) -> Result<bool> {
    Ok(is_biprimitive(&vertex_group(g)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SArcReport {
    /// `None` when the group is not transitive on vertices.
    pub max_s: Option<u32>,
    /// Order of the pointwise stabilizer of the canonical `s`-arc, for `s = 0, 1, ...`.
    pub stabilizer_orders: Vec<String>,
    /// The canonical arcs examined, by level.
    pub arcs: Vec<Vec<u32>>,
    /// Whether `|G| / |stabilizer|` matched the number of `s`-arcs at every certified level.
    pub counts_consistent: bool,
    /// Set when every level up to [`S_LIMIT`] was transitive (cycles).
    pub capped: bool,
    pub group_order: String,
}

impl SArcReport {
    pub fn stabilizer_order(&self, s: usize) -> Option<&str> {
        self.stabilizer_orders.get(s).map(String::as_str)
    }
}

/// Largest `s` for which the attached group is transitive on `s`-arcs.
pub fn s_arc_transitivity(g: &Graph) -> Result<SArcReport> {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() {
        return Err(Error::Invalid("graph must be nonempty and connected".into()));
    }
    let d = g.degree(0);
    if d < 2 || (0..n).any(|v| g.degree(v) != d) {
        return Err(Error::Invalid("graph must be regular of valency at least 2".into()));
    }
    let group = vertex_group(g)?;
    let mut report = SArcReport {
        max_s: None,
        stabilizer_orders: Vec::new(),
        arcs: Vec::new(),
        counts_consistent: true,
        capped: false,
        group_order: group.order().to_string(),
    };
    if !group.is_transitive() {
        return Ok(report);
    }
    let mut arc: Vec<usize> = vec![0];
    let mut stab = group.stabilizer(&[0]);
    report.stabilizer_orders.push(stab.order().to_string());
    report.arcs.push(vec![0]);
    report.max_s = Some(0);
    let mut expected = BigUint::from(n);
    for s in 1..=S_LIMIT {
        let last = arc[arc.len() - 1];
        let prev = if arc.len() >= 2 { Some(arc[arc.len() - 2]) } else { None };
        let ext: Vec<usize> = g
            .neighbors(last)
            .iter()
            .map(|&v| v as usize)
            .filter(|&v| Some(v) != prev)
            .collect();
        let orbit = crate::group::orbit_of(n, stab.generators(), ext[0]);
        if !ext.iter().all(|v| orbit.binary_search(v).is_ok()) {
            return Ok(report);
        }
        arc.push(ext[0]);
        stab = stab.stabilizer(&[ext[0]]);
        expected *= if s == 1 { d } else { d - 1 };
        if group.order() / stab.order() != expected || group.order() % stab.order() != BigUint::from(0u32) {
            report.counts_consistent = false;
        }
        report.stabilizer_orders.push(stab.order().to_string());
        report.arcs.push(arc.iter().map(|&v| v as u32).collect());
        report.max_s = Some(s);
    }
    report.capped = true;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalAction {
    pub vertex: usize,
    pub neighbor_order: Vec<u32>,
    pub induced_generators: Vec<String>,
    pub stabilizer_order: String,
    pub induced_order: String,
    pub kernel_order: String,
    pub two_transitive: bool,
    pub faithful: bool,
}

/// The group induced by the vertex stabilizer on the neighbourhood of `v`.
pub fn local_action(g: &Graph, v: usize) -> Result<LocalAction> {
    if v >= g.vertex_count() {
        return Err(Error::Invalid(format!("vertex {v} out of range")));
    }
    let nbrs = g.neighbors(v).to_vec();
    let d = nbrs.len();
    if d == 0 {
        return Err(Error::Invalid(format!("vertex {v} is isolated")));
    }
    let group = vertex_group(g)?;
    let stab = group.stabilizer(&[v]);
    let mut induced = Vec::new();
    for s in stab.generators() {
        let images = nbrs
            .iter()
            .map(|&w| {
                let img = s.image(w as usize) as u32;
                nbrs.binary_search(&img)
                    .map(|i| i as u32)
                    .map_err(|_| Error::Invalid("stabilizer does not preserve the neighbourhood".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        let p = Permutation::from_images(images)?;
        if !p.is_identity() && !induced.contains(&p) {
            induced.push(p);
        }
    }
    let local = PermGroup::with_options(
        d,
        induced.clone(),
        &BsgsOptions {
            order_hint: Some(stab.order().clone()),
            ..BsgsOptions::default()
        },
    )?;
    let kernel = stab.order() / local.order();
    let two_transitive = d >= 2 && pair_orbit_count(d, &induced) == 1;
    Ok(LocalAction {
        vertex: v,
        neighbor_order: nbrs,
        induced_generators: induced.iter().map(|p| p.to_string()).collect(),
        stabilizer_order: stab.order().to_string(),
        induced_order: local.order().to_string(),
        faithful: kernel == BigUint::from(1u32),
        kernel_order: kernel.to_string(),
        two_transitive,
    })
}

/// Number of orbits on ordered pairs of distinct points.
fn pair_orbit_count(d: usize, gens: &[Permutation]) -> usize {
    let mut seen = vec![false; d * d];
    let mut orbits = 0;
    for a in 0..d {
        for b in 0..d {
            if a == b || seen[a * d + b] {
                continue;
            }
            orbits += 1;
            seen[a * d + b] = true;
            let mut stack = vec![(a, b)];
            while let Some((x, y)) = stack.pop() {
                for s in gens {
                    let (u, v) = (s.image(x), s.image(y));
                    if !seen[u * d + v] {
                        seen[u * d + v] = true;
                        stack.push((u, v));
                    }
                }
            }
        }
    }
    orbits
}

/// Orbit of the base edge `{0, min N(0)}` under the attached action covers all edges.
pub fn is_edge_transitive(g: &Graph) -> Result<bool> {
    if g.edge_count() == 0 {
        return Ok(true);
    }
    let ea = edge_action(g)?;
    Ok(crate::group::orbit_of(ea.edges.len(), &ea.generators, 0).len() == ea.edges.len())
}

/// Compares a graph with the properties recorded for it in the catalog.
/// Only the listed properties are computed.
pub fn check_expected(g: &Graph, e: &ExpectedProperties) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("expected properties");
    let b = basic_invariants(g);
    let opt = |v: Option<usize>| v.map_or_else(|| "none".to_string(), |x| x.to_string());
    let cmp = |r: &mut VerificationReport, name: &str, want: Option<String>, got: String| {
        if let Some(w) = want {
            r.check(name, w == got, format!("expected {w}, found {got}"));
        }
    };
    cmp(&mut r, "order", e.order.map(|x| x.to_string()), b.order.to_string());
    cmp(&mut r, "size", e.size.map(|x| x.to_string()), b.size.to_string());
    cmp(&mut r, "valency", e.valency.map(|x| x.to_string()), opt(b.valency));
    cmp(&mut r, "girth", e.girth.map(|x| x.to_string()), opt(b.girth));
    cmp(
        &mut r,
        "bipartite",
        e.bipartite.map(|x| x.to_string()),
        b.bipartite.to_string(),
    );
    cmp(
        &mut r,
        "complete",
        e.complete.map(|x| x.to_string()),
        b.complete.to_string(),
    );
    cmp(
        &mut r,
        "complete bipartite",
        e.complete_bipartite.map(|x| x.to_string()),
        b.complete_bipartite.to_string(),
    );
    if let Some(w) = e.edge_primitive {
        let got = is_edge_primitive(g)?;
        r.check("edge-primitive", w == got, format!("expected {w}, found {got}"));
    }
    if let Some(w) = e.biprimitive {
        let got = is_vertex_biprimitive(g)?;
        r.check("biprimitive", w == got, format!("expected {w}, found {got}"));
    }
    if e.max_s.is_some() || e.min_s.is_some() || e.two_arc_stabilizer.is_some() {
        let s = s_arc_transitivity(g)?;
        let got = s.max_s;
        let shown = match got {
            Some(x) if s.capped => format!("at least {x}"),
            Some(x) => x.to_string(),
            None => "none (not vertex-transitive)".to_string(),
        };
        if let Some(w) = e.max_s {
            r.check(
                "max s",
                got == Some(w) && !s.capped,
                format!("expected {w}, found {shown}"),
            );
        }
        if let Some(w) = e.min_s {
            r.check(
                "min s",
                got.is_some_and(|x| x >= w),
                format!("expected at least {w}, found {shown}"),
            );
        }
        if let Some(w) = e.two_arc_stabilizer {
            let found = s.stabilizer_order(2).unwrap_or("-");
            r.check(
                "2-arc stabilizer",
                found == w.to_string(),
                format!("expected {w}, found {found}"),
            );
        }
        r.check(
            "arc counts",
            s.counts_consistent,
            "|G:G_arc| equals the number of arcs at each level",
        );
    }
    if let Some(w) = e.two_transitive_local {
        let got = local_action(g, 0)?.two_transitive;
        r.check("local 2-transitive", w == got, format!("expected {w}, found {got}"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn k4_invariants() {
        let inv = basic_invariants(&Graph::complete(4));
        assert_eq!(inv.girth, Some(3));
        assert!(inv.complete);
        assert!(!inv.bipartite);
        assert_eq!(inv.valency, Some(3));
    }

    #[test]
    fn cycle_and_forest_girth() {
        assert_eq!(girth(&Graph::cycle(7)), Some(7));
        assert_eq!(girth(&Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap()), None);
        assert_eq!(girth(&petersen()), Some(5));
    }

    #[test]
    fn complete_bipartite_flag() {
        let mut edges = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                edges.push((a, b));
            }
        }
        let inv = basic_invariants(&Graph::from_edges(6, &edges).unwrap());
        assert!(inv.complete_bipartite && inv.bipartite);
        assert_eq!(inv.girth, Some(4));
        assert!(!basic_invariants(&Graph::cycle(6)).complete_bipartite);
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(triangle_count(&Graph::complete(5)), 10);
        assert_eq!(four_cycle_count(&Graph::complete(4)), 3);
        assert_eq!(four_cycle_count(&petersen()), 0);
        assert_eq!(four_cycle_count(&Graph::cycle(4)), 1);
    }

    #[test]
    fn cycle_is_capped() {
        let n = 6;
        let rot = Permutation::from_fn(n, |i| (i + 1) % n).unwrap();
        let refl = Permutation::from_fn(n, |i| (n - i) % n).unwrap();
        let g = Graph::cycle(n).with_action(vec![rot, refl], None).unwrap();
        let r = s_arc_transitivity(&g).unwrap();
        assert!(r.capped);
        assert_eq!(r.max_s, Some(S_LIMIT));
    }

    #[test]
    fn rotation_alone_is_not_arc_transitive() {
        let n = 5;
        let rot = Permutation::from_fn(n, |i| (i + 1) % n).unwrap();
        let g = Graph::cycle(n).with_action(vec![rot], None).unwrap();
        let r = s_arc_transitivity(&g).unwrap();
        assert_eq!(r.max_s, Some(0));
        assert!(is_edge_primitive(&g).unwrap());
    }

    #[test]
    fn petersen_under_s5() {
        // S5 on 2-subsets; the Petersen graph joins disjoint pairs.
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let idx = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
        let mut edges = Vec::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, e)) in pairs.iter().enumerate() {
                if i < j && a != c && a != e && b != c && b != e {
                    edges.push((i, j));
                }
            }
        }
        let on_pairs = |s: &Permutation| {
            Permutation::from_fn(10, |i| {
                let (a, b) = pairs[i];
                idx(s.image(a), s.image(b))
            })
            .unwrap()
        };
        let gens: Vec<Permutation> = ["(1,2,3,4,5)", "(1,2)"]
            .iter()
            .map(|t| on_pairs(&Permutation::parse_cycles(t, 5).unwrap()))
            .collect();
        let g = Graph::from_edges(10, &edges)
            .unwrap()
            .with_action(gens, Some(BigUint::from(120u32)))
            .unwrap();
        assert!(is_edge_transitive(&g).unwrap());
        match edge_primitivity(&g).unwrap() {
            Primitivity::Imprimitive(b) => assert!(b.block_count > 1),
            other => panic!("{other:?}"),
        }
        let r = s_arc_transitivity(&g).unwrap();
        assert_eq!(r.max_s, Some(3));
        assert!(r.counts_consistent);
        let la = local_action(&g, 0).unwrap();
        assert!(la.two_transitive);
        assert_eq!(la.induced_order, "6");
        assert_eq!(la.kernel_order, "2");
    }
}
