//! Finite simple graphs and coset graph construction.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;

use crate::coset::CosetAction;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lattice::{verify_lattice, Lattice};
use crate::perm::Permutation;
use crate::Limits;

/// Vertex permutations of an acting group, one per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphAction {
    pub generators: Vec<Permutation>,
    /// Order of the group the generators came from; an upper bound for
    /// the order of the induced group.
    pub source_order: Option<BigUint>,
}

/// An undirected simple graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<u32>>,
    action: Option<GraphAction>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds from an edge list, rejecting loops and out-of-range vertices.
    /// Repeated edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at {u}")));
            }
            adjacency[u].push(v as u32);
            adjacency[v].push(u as u32);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self {
            adjacency,
            action: None,
            labels: None,
        })
    }

    /// Builds from adjacency lists, checking symmetry and the absence of loops.
    pub fn from_adjacency(mut adjacency: Vec<Vec<u32>>) -> Result<Self> {
        let n = adjacency.len();
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        for (u, list) in adjacency.iter().enumerate() {
            for &v in list {
                if v as usize >= n {
                    return Err(Error::Invalid(format!("neighbour {v} of {u} out of range")));
                }
                if v as usize == u {
                    return Err(Error::Invalid(format!("loop at {u}")));
                }
                if adjacency[v as usize].binary_search(&(u as u32)).is_err() {
                    return Err(Error::Invalid(format!("edge {u}-{v} is not symmetric")));
                }
            }
        }
        Ok(Self {
            adjacency,
            action: None,
            labels: None,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_edges(n, &edges).expect("valid")
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).map(|u| (u, (u + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("valid")
    }

    /// Attaches an action after checking that every generator is an automorphism.
    pub fn with_action(mut self, generators: Vec<Permutation>, source_order: Option<BigUint>) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            if g.degree() != self.vertex_count() {
                return Err(Error::DegreeMismatch {
                    expected: self.vertex_count(),
                    found: g.degree(),
                });
            }
            if !self.is_automorphism(g) {
                return Err(Error::Invalid(format!("generator {k} maps an edge to a non-edge")));
            }
        }
        self.action = Some(GraphAction {
            generators,
            source_order,
        });
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    pub fn action(&self) -> Option<&GraphAction> {
        self.action.as_ref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_automorphism(&self, g: &Permutation) -> bool {
        g.degree() == self.vertex_count()
            && self.adjacency.iter().enumerate().all(|(u, list)| {
                let gu = g.image(u);
                list.iter().all(|&v| self.has_edge(gu, g.image(v as usize)))
            })
    }

    /// Vertices reachable from `start`, in breadth-first order.
    pub fn component(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count()];
        seen[start] = true;
        let mut order = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    order.push(v as usize);
                    queue.push_back(v as usize);
                }
            }
        }
        order
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.component(0).len() == self.vertex_count()
    }

    /// Image of the graph under the vertex map `v -> perm[v]`.
    pub fn relabel(&self, perm: &Permutation) -> Graph {
        let n = self.vertex_count();
        let mut adjacency = vec![Vec::new(); n];
        for (u, list) in self.adjacency.iter().enumerate() {
            adjacency[perm.image(u)] = list.iter().map(|&v| perm.image(v as usize) as u32).collect();
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            adjacency,
            action: None,
            labels: None,
        }
    }

    /// `n m` header, then one line of sorted neighbours per vertex.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} {}", self.vertex_count(), self.edge_count()).unwrap();
        for list in &self.adjacency {
            let line: Vec<String> = list.iter().map(u32::to_string).collect();
            writeln!(s, "{}", line.join(" ")).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Invalid("empty graph file".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Invalid(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [n, m] = nums[..] else {
            return Err(Error::Invalid(format!("bad header {header:?}")));
        };
        let mut adjacency = Vec::with_capacity(n);
        for (i, line) in lines.take(n).enumerate() {
            let list = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Invalid(format!("bad line {}", i + 2)))
                })
                .collect::<Result<Vec<_>>>()?;
            adjacency.push(list);
        }
        if adjacency.len() != n {
            return Err(Error::Invalid(format!("expected {n} adjacency lines")));
        }
        let g = Self::from_adjacency(adjacency)?;
        if g.edge_count() != m {
            return Err(Error::Invalid(format!(
                "header says {m} edges, found {}",
                g.edge_count()
            )));
        }
        Ok(g)
    }

    /// JSON with adjacency, the attached action (0-based image arrays) and labels.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            vertices: usize,
            edges: usize,
            adjacency: &'a [Vec<u32>],
            #[serde(skip_serializing_if = "Option::is_none")]
            action: Option<Vec<&'a [u32]>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            labels: Option<&'a [String]>,
        }
        let out = Out {
            vertices: self.vertex_count(),
            edges: self.edge_count(),
            adjacency: &self.adjacency,
            action: self
                .action
                .as_ref()
                .map(|a| a.generators.iter().map(Permutation::images).collect()),
            labels: self.labels.as_deref(),
        };
        serde_json::to_string(&out).expect("serializable")
    }
}

/// A coset graph together with the data it was built from.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    pub graph: Graph,
    pub cosets: CosetAction,
    /// The element `g` with base edge `{H, Hg}`.
    pub element: Permutation,
    /// Vertex index of `Hg`.
    pub base_neighbor: usize,
    pub connected: bool,
}

impl CosetGraph {
    pub fn valency(&self) -> usize {
        self.graph.degree(0)
    }
}

/// `Cos(G, H, HgH)`: vertices are right cosets of `H`, `Hx ~ Hy` iff `xy^-1 ∈ HgH`.
pub fn build_graph(
    g: &PermGroup,
    h: &PermGroup,
    x: &Permutation,
    limits: &Limits,
    allow_disconnected: bool,
) -> Result<CosetGraph> {
    if !g.contains(x) {
        return Err(Error::Invalid("g is not in G".into()));
    }
    if h.contains(x) {
        return Err(Error::Invalid("g lies in H, so the graph would have loops".into()));
    }
    if !h.contains(&x.compose(x)) {
        return Err(Error::Invalid("g^2 is not in H, so the graph would be directed".into()));
    }
    let cosets = CosetAction::new(g, h, limits)?;
    let n = cosets.degree;
    let start = cosets.coset_of(x).expect("g in G");
    let mut nbrs = vec![start];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut i = 0;
    while i < nbrs.len() {
        let r = &cosets.transversal[nbrs[i]];
        for s in h.generators() {
            let k = cosets.coset_of(&r.compose(s)).expect("in G");
            if !seen[k] {
                seen[k] = true;
                nbrs.push(k);
            }
        }
        i += 1;
    }
    nbrs.sort_unstable();
    let mut adjacency: Vec<Vec<u32>> = Vec::with_capacity(n);
    for rj in &cosets.transversal {
        let mut list: Vec<u32> = nbrs
            .iter()
            .map(|&k| cosets.coset_of(&cosets.transversal[k].compose(rj)).expect("in G") as u32)
            .collect();
        list.sort_unstable();
        adjacency.push(list);
    }
    let graph = Graph::from_adjacency(adjacency)?;
    let labels = cosets.transversal.iter().map(|r| r.to_string()).collect();
    let graph = graph
        .with_action(cosets.generator_images.clone(), Some(g.order().clone()))?
        .with_labels(labels);
    let connected = graph.is_connected();
    if !connected && !allow_disconnected {
        return Err(Error::Invalid(format!(
            "coset graph is disconnected: component of H has {} of {} vertices",
            graph.component(0).len(),
            n
        )));
    }
    Ok(CosetGraph {
        graph,
        cosets,
        element: x.clone(),
        base_neighbor: start,
        connected,
    })
}

/// Builds the graph of a verified lattice using [`Lattice::edge_element`].
pub fn build_from_lattice(l: &Lattice, limits: &Limits) -> Result<CosetGraph> {
    let report = verify_lattice(l, limits);
    if !report.passed {
        let failed: Vec<String> = report
            .failures()
            .map(|c| format!("{} ({})", c.name, c.detail))
            .collect();
        return Err(Error::Invalid(format!(
            "lattice {} fails verification: {}",
            l.name,
            failed.join(", ")
        )));
    }
    let x = l
        .edge_element()
        .ok_or_else(|| Error::Invalid("E has no element outside A".into()))?;
    build_from_lattice_with(l, &x, limits)
}

/// Builds the graph of a lattice with a chosen `g ∈ E \ A`.
pub fn build_from_lattice_with(l: &Lattice, x: &Permutation, limits: &Limits) -> Result<CosetGraph> {
    if !l.e.contains(x) || l.a.contains(x) {
        return Err(Error::Invalid("g is not in E \\ A".into()));
    }
    let cg = build_graph(&l.g, &l.h, x, limits, false)?;
    let d = BigUint::from(cg.valency());
    if d != l.valency() {
        return Err(Error::Invalid(format!(
            "valency {d} differs from |H:A| = {}",
            l.valency()
        )));
    }
    let j = cg.base_neighbor;
    for s in l.e.generators() {
        let a = cg.cosets.coset_of(&cg.cosets.transversal[0].compose(s)).expect("in G");
        let b = cg.cosets.coset_of(&cg.cosets.transversal[j].compose(s)).expect("in G");
        if !(a == 0 && b == j || a == j && b == 0) {
            return Err(Error::Invalid("E does not stabilize the base edge".into()));
        }
    }
    for s in l.a.generators() {
        if cg.cosets.coset_of(&cg.cosets.transversal[j].compose(s)) != Some(j) {
            return Err(Error::Invalid("A does not fix the base arc".into()));
        }
    }
    Ok(cg)
}
