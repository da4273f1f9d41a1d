//! Graph isomorphism by canonical labeling (individualization and refinement).

use crate::graph::Graph;
use crate::props::invariant_vector;

/// A canonical form: the relabeled edge list and the labeling that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Sorted edges `(a, b)` with `a < b` after relabeling.
    pub certificate: Vec<(u32, u32)>,
    /// `labeling[v]` is the canonical label of vertex `v`.
    pub labeling: Vec<u32>,
    /// Search tree nodes visited.
    pub nodes: u64,
}

type Cells = Vec<Vec<u32>>;
/// A leaf certificate and the labeling that produced it.
type Leaf = (Vec<(u32, u32)>, Vec<u32>);

/// Splits cells until every vertex in a cell has the same number of
/// neighbours in every cell. New cells are ordered by that count.
fn refine(g: &Graph, mut cells: Cells) -> Cells {
    let n = g.vertex_count();
    let mut count = vec![0u32; n];
    loop {
        let mut split = false;
        let mut w = 0;
        while w < cells.len() {
            count.iter_mut().for_each(|c| *c = 0);
            for &v in &cells[w] {
                for &u in g.neighbors(v as usize) {
                    count[u as usize] += 1;
                }
            }
            let mut next: Cells = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut sorted = cell.clone();
                sorted.sort_by_key(|&v| (count[v as usize], v));
                let mut start = 0;
                for i in 1..=sorted.len() {
                    if i == sorted.len() || count[sorted[i] as usize] != count[sorted[start] as usize] {
                        next.push(sorted[start..i].to_vec());
                        start = i;
                    }
                }
            }
            if next.len() != cells.len() {
                split = true;
                cells = next;
            }
            w += 1;
        }
        if !split {
            return cells;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<Leaf>,
    first: Option<Leaf>,
    automorphisms: Vec<Vec<u32>>,
    nodes: u64,
}

impl Search<'_> {
    fn leaf(&mut self, cells: &Cells) {
        let n = self.g.vertex_count();
        let mut lab = vec![0u32; n];
        for (i, c) in cells.iter().enumerate() {
            lab[c[0] as usize] = i as u32;
        }
        let mut cert: Vec<(u32, u32)> = self
            .g
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = (lab[u as usize], lab[v as usize]);
                (a.min(b), a.max(b))
            })
            .collect();
        cert.sort_unstable();
        for stored in [&self.first, &self.best].into_iter().flatten() {
            if stored.0 == cert {
                let mut inv = vec![0u32; n];
                for (v, &l) in stored.1.iter().enumerate() {
                    inv[l as usize] = v as u32;
                }
                let aut: Vec<u32> = lab.iter().map(|&l| inv[l as usize]).collect();
                if aut.iter().enumerate().any(|(i, &x)| i as u32 != x) && !self.automorphisms.contains(&aut) {
                    self.automorphisms.push(aut);
                }
                break;
            }
        }
        if self.first.is_none() {
            self.first = Some((cert.clone(), lab.clone()));
        }
        if self.best.as_ref().is_none_or(|b| cert < b.0) {
            self.best = Some((cert, lab));
        }
    }

    fn orbit_reps(&self, prefix: &[u32]) -> Vec<u32> {
        let n = self.g.vertex_count();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        for aut in &self.automorphisms {
            if prefix.iter().all(|&v| aut[v as usize] == v) {
                for (v, &w) in aut.iter().enumerate() {
                    let (a, b) = (find(&mut parent, v as u32), find(&mut parent, w));
                    if a != b {
                        parent[a.max(b) as usize] = a.min(b);
                    }
                }
            }
        }
        (0..n as u32).map(|v| find(&mut parent, v)).collect()
    }

    fn visit(&mut self, cells: Cells, prefix: &mut Vec<u32>) {
        self.nodes += 1;
        let cells = refine(self.g, cells);
        if cells.len() == self.g.vertex_count() {
            self.leaf(&cells);
            return;
        }
        let size = cells.iter().map(Vec::len).max().unwrap_or(0);
        let t = cells.iter().position(|c| c.len() == size).expect("non-singleton cell");
        let mut targets = cells[t].clone();
        targets.sort_unstable();
        let mut explored: Vec<u32> = Vec::new();
        for &v in &targets {
            if !explored.is_empty() {
                let reps = self.orbit_reps(prefix);
                if explored.iter().any(|&e| reps[e as usize] == reps[v as usize]) {
                    continue;
                }
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(vec![v]);
            child.push(cells[t].iter().copied().filter(|&x| x != v).collect());
            child.extend_from_slice(&cells[t + 1..]);
            prefix.push(v);
            self.visit(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.vertex_count();
    if n == 0 {
        return CanonicalForm {
            certificate: Vec::new(),
            labeling: Vec::new(),
            nodes: 0,
        };
    }
    let mut s = Search {
        g,
        best: None,
        first: None,
        automorphisms: Vec::new(),
        nodes: 0,
    };
    s.visit(vec![(0..n as u32).collect()], &mut Vec::new());
    let (certificate, labeling) = s.best.expect("at least one leaf");
    CanonicalForm {
        certificate,
        labeling,
        nodes: s.nodes,
    }
}

/// A vertex bijection `f` with `u ~ v` in `a` iff `f(u) ~ f(v)` in `b`, if one exists.
pub fn isomorphism(a: &Graph, b: &Graph) -> Option<Vec<u32>> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    if invariant_vector(a) != invariant_vector(b) {
        return None;
    }
    let (ca, cb) = (canonical_form(a), canonical_form(b));
    if ca.certificate != cb.certificate {
        return None;
    }
    let n = a.vertex_count();
    let mut inv_b = vec![0u32; n];
    for (w, &l) in cb.labeling.iter().enumerate() {
        inv_b[l as usize] = w as u32;
    }
    let f: Vec<u32> = ca.labeling.iter().map(|&l| inv_b[l as usize]).collect();
    let ok = a
        .edges()
        .iter()
        .all(|&(u, v)| b.has_edge(f[u as usize] as usize, f[v as usize] as usize));
    assert!(ok, "canonical labeling produced a non-isomorphism");
    Some(f)
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn shuffled(g: &Graph, seed: u64) -> Graph {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut images: Vec<u32> = (0..g.vertex_count() as u32).collect();
        images.shuffle(&mut rng);
        g.relabel(&Permutation::from_images(images).unwrap())
    }

    #[test]
    fn k6_under_relabeling() {
        let k6 = Graph::complete(6);
        let f = isomorphism(&k6, &shuffled(&k6, 3)).unwrap();
        assert_eq!(f.len(), 6);
    }

    #[test]
    fn relabeled_petersen() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let p = Graph::from_edges(10, &edges).unwrap();
        for seed in 0..5 {
            let q = shuffled(&p, seed);
            let f = isomorphism(&p, &q).unwrap();
            for (u, v) in p.edges() {
                assert!(q.has_edge(f[u as usize] as usize, f[v as usize] as usize));
            }
            assert_eq!(canonical_form(&p).certificate, canonical_form(&q).certificate);
        }
    }

    #[test]
    fn different_graphs() {
        assert!(!isomorphic(&Graph::cycle(6), &Graph::complete(6)));
        // Two triangles vs a hexagon: same degrees, different cycles.
        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!isomorphic(&two, &Graph::cycle(6)));
    }

    #[test]
    fn refinement_keeps_regular_graphs_whole() {
        let g = Graph::cycle(8);
        assert_eq!(refine(&g, vec![(0..8).collect()]).len(), 1);
    }
}
