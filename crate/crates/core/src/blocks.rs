//! Block systems and primitivity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A partition of `{0, .., degree-1}` into blocks of equal size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSystem {
    pub degree: usize,
    /// Block index of each point; blocks are numbered by their least point.
    pub block_of: Vec<usize>,
    pub block_count: usize,
}

impl BlockSystem {
    fn from_labels(labels: &[usize]) -> Self {
        let mut renumber = vec![usize::MAX; labels.len()];
        let mut count = 0;
        let block_of = labels
            .iter()
            .map(|&l| {
                if renumber[l] == usize::MAX {
                    renumber[l] = count;
                    count += 1;
                }
                renumber[l]
            })
            .collect();
        Self {
            degree: labels.len(),
            block_of,
            block_count: count,
        }
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count];
        for (p, &b) in self.block_of.iter().enumerate() {
            out[b].push(p);
        }
        out
    }

    pub fn block_size(&self) -> usize {
        self.degree / self.block_count
    }

    pub fn is_trivial(&self) -> bool {
        self.block_count == 1 || self.block_count == self.degree
    }

    /// Whether every generator maps blocks onto blocks.
    pub fn is_invariant_under(&self, gens: &[Permutation]) -> bool {
        gens.iter().all(|g| {
            let mut img = vec![usize::MAX; self.block_count];
            (0..self.degree).all(|p| {
                let b = self.block_of[p];
                let c = self.block_of[g.image(p)];
                if img[b] == usize::MAX {
                    img[b] = c;
                }
                img[b] == c
            })
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

/// Finest invariant partition with `alpha` and `beta` in one block.
pub fn minimal_block_system(g: &PermGroup, alpha: usize, beta: usize) -> Result<BlockSystem> {
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    Ok(minimal_block_system_unchecked(g.degree(), g.generators(), alpha, beta))
}

pub(crate) fn minimal_block_system_unchecked(
    degree: usize,
    gens: &[Permutation],
    alpha: usize,
    beta: usize,
) -> BlockSystem {
    let mut uf = UnionFind::new(degree);
    let mut queue = Vec::new();
    if alpha != beta {
        let (a, b) = (alpha.min(beta), alpha.max(beta));
        uf.parent[b] = a;
        queue.push((a, b));
    }
    while let Some((a, b)) = queue.pop() {
        for g in gens {
            let x = uf.find(g.image(a));
            let y = uf.find(g.image(b));
            if x != y {
                let (lo, hi) = (x.min(y), x.max(y));
                uf.parent[hi] = lo;
                queue.push((lo, hi));
            }
        }
    }
    let labels: Vec<usize> = (0..degree).map(|p| uf.find(p)).collect();
    BlockSystem::from_labels(&labels)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    Intransitive { orbits: Vec<Vec<usize>> },
    Imprimitive(BlockSystem),
}

impl Primitivity {
    pub fn is_primitive(&self) -> bool {
        matches!(self, Primitivity::Primitive)
    }
}

/// Representatives of the orbits of the point stabilizer of 0 on the other points.
fn suborbit_representatives(g: &PermGroup) -> Vec<usize> {
    let stab = g.stabilizer(&[0]);
    stab.orbits().into_iter().map(|o| o[0]).filter(|&p| p != 0).collect()
}

/// Distinct nontrivial minimal block systems containing 0 in a block with
/// some other point. Empty when primitive.
pub fn minimal_block_systems(g: &PermGroup) -> Result<Vec<BlockSystem>> {
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    let mut out: Vec<BlockSystem> = Vec::new();
    for beta in suborbit_representatives(g) {
        let b = minimal_block_system_unchecked(g.degree(), g.generators(), 0, beta);
        if b.block_count > 1 && !out.contains(&b) {
            out.push(b);
        }
    }
    Ok(out)
}

pub fn primitivity(g: &PermGroup) -> Primitivity {
    if !g.is_transitive() {
        return Primitivity::Intransitive { orbits: g.orbits() };
    }
    for beta in suborbit_representatives(g) {
        let b = minimal_block_system_unchecked(g.degree(), g.generators(), 0, beta);
        if b.block_count > 1 {
            return Primitivity::Imprimitive(b);
        }
    }
    Primitivity::Primitive
}

pub fn is_primitive(g: &PermGroup) -> bool {
    primitivity(g).is_primitive()
}

/// Transitive, imprimitive, and every nontrivial block system has two blocks.
pub fn is_biprimitive(g: &PermGroup) -> bool {
    match minimal_block_systems(g) {
        Ok(systems) => !systems.is_empty() && systems.iter().all(|b| b.block_count == 2),
        Err(_) => false,
    }
}
