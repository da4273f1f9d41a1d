//! Permutation groups backed by a base and strong generating set.
//!
//! Chains are built by a randomized Schreier–Sims phase followed by a
//! deterministic check of every Schreier generator, so the resulting chain is
//! exact regardless of the seed. Transversals are stored as Schreier vectors.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const DEFAULT_SEED: u64 = 0x5eed_ed6e;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

/// Knobs for chain construction. None of them change results.
#[derive(Clone, Debug)]
pub struct BsgsOptions {
    pub seed: u64,
    /// Known upper bound on the order; the random phase stops once reached.
    pub order_hint: Option<BigUint>,
    /// Points forced to the front of the base, in order.
    pub base_prefix: Vec<usize>,
}

impl Default for BsgsOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            order_hint: None,
            base_prefix: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base_point: usize,
    pub(crate) gens: Vec<Permutation>,
    inv_gens: Vec<Permutation>,
    pub(crate) orbit: Vec<usize>,
    label: Vec<u32>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut label = vec![NONE; degree];
        label[base_point] = ROOT;
        Self {
            base_point,
            gens: Vec::new(),
            inv_gens: Vec::new(),
            orbit: vec![base_point],
            label,
        }
    }

    fn push_gen(&mut self, g: Permutation) {
        self.inv_gens.push(g.inverse());
        self.gens.push(g);
        self.rebuild_orbit();
    }

    fn rebuild_orbit(&mut self) {
        self.label.iter_mut().for_each(|l| *l = NONE);
        self.label[self.base_point] = ROOT;
        self.orbit.clear();
        self.orbit.push(self.base_point);
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for (k, g) in self.gens.iter().enumerate() {
                let q = g.image(p);
                if self.label[q] == NONE {
                    self.label[q] = k as u32;
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }

    #[inline]
    pub(crate) fn contains(&self, p: usize) -> bool {
        self.label[p] != NONE
    }

    /// Generator indices along the Schreier tree path from `p` back to the root.
    fn path(&self, mut p: usize) -> Vec<usize> {
        let mut ks = Vec::new();
        while self.label[p] != ROOT {
            let k = self.label[p] as usize;
            ks.push(k);
            p = self.inv_gens[k].image(p);
        }
        ks
    }

    /// An element mapping the base point to `p`.
    pub(crate) fn transversal(&self, p: usize) -> Permutation {
        let mut u = Permutation::identity(self.label.len());
        for &k in self.path(p).iter().rev() {
            u.compose_assign(&self.gens[k]);
        }
        u
    }

    /// `g := g * u_p^-1` where `p = g(base_point)`.
    fn strip(&self, g: &mut Permutation, mut p: usize) {
        while self.label[p] != ROOT {
            let k = self.label[p] as usize;
            g.compose_assign(&self.inv_gens[k]);
            p = self.inv_gens[k].image(p);
        }
    }

    /// `c := u_p * c`.
    pub(crate) fn left_multiply(&self, c: &mut Permutation, mut p: usize, scratch: &mut Vec<u32>) {
        while self.label[p] != ROOT {
            let k = self.label[p] as usize;
            c.precompose_assign(&self.gens[k], scratch);
            p = self.inv_gens[k].image(p);
        }
    }
}

/// A permutation group with a verified stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    pub(crate) levels: Vec<Level>,
    order: BigUint,
}

enum Source<'a> {
    Generators,
    Chain(&'a PermGroup),
}

impl PermGroup {
    /// Builds the chain for `⟨generators⟩`.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_options(degree, generators, &BsgsOptions::default())
    }

    pub fn from_generators(generators: Vec<Permutation>) -> Result<Self> {
        let degree = generators
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::Invalid("empty generator list".into()))?;
        Self::new(degree, generators)
    }

    /// Parses generators given in cycle notation.
    pub fn from_cycles(degree: usize, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| Permutation::parse_cycles(s, degree))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
            order: BigUint::one(),
        }
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree > 1 {
            gens.push(Permutation::cycle(degree, &(0..degree).collect::<Vec<_>>()).unwrap());
            gens.push(Permutation::cycle(degree, &[0, 1]).unwrap());
        }
        Self::new(degree, gens).expect("symmetric group")
    }

    pub fn with_options(degree: usize, generators: Vec<Permutation>, opts: &BsgsOptions) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Invalid("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        for &p in &opts.base_prefix {
            if p >= degree {
                return Err(Error::Invalid(format!("base point {p} out of range")));
            }
        }
        let mut group = Self {
            degree,
            generators: generators.into_iter().filter(|g| !g.is_identity()).collect(),
            levels: Vec::new(),
            order: BigUint::one(),
        };
        group.build(opts, Source::Generators);
        Ok(group)
    }

    fn build(&mut self, opts: &BsgsOptions, source: Source<'_>) {
        for &p in &opts.base_prefix {
            if !self.levels.iter().any(|l| l.base_point == p) {
                self.levels.push(Level::new(p, self.degree));
            }
        }
        let seeds: Vec<Permutation> = match source {
            Source::Generators => self.generators.clone(),
            Source::Chain(g) => g.strong_generators(),
        };
        for g in seeds {
            self.absorb(g);
        }
        self.refresh_order();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let reached = |o: &BigUint| opts.order_hint.as_ref().is_some_and(|h| o >= h);
        if reached(&self.order) {
            return;
        }
        match source {
            Source::Chain(parent) => {
                // The parent order is exact, so uniform sampling terminates.
                while self.order < parent.order {
                    let r = parent.random_element(&mut rng);
                    self.absorb(r);
                    self.refresh_order();
                }
                return;
            }
            Source::Generators if !self.generators.is_empty() => {
                let mut pr = ProductReplacement::new(&self.generators, &mut rng);
                let mut quiet = 0;
                let limit = if opts.order_hint.is_some() { 400 } else { 24 };
                while quiet < limit {
                    let r = pr.next(&mut rng);
                    if self.absorb(r) {
                        quiet = 0;
                        self.refresh_order();
                        if reached(&self.order) {
                            return;
                        }
                    } else {
                        quiet += 1;
                    }
                }
            }
            Source::Generators => return,
        }
        self.schreier_sims();
        self.refresh_order();
    }

    /// Sifts `g` and inserts the residue if nontrivial. Returns whether the
    /// chain changed.
    fn absorb(&mut self, g: Permutation) -> bool {
        let (h, j) = self.sift_from(g, 0);
        if h.is_identity() {
            return false;
        }
        self.insert(h, 0, j);
        true
    }

    /// Adds `h` to levels `from..=j`, creating a new level when `j` is past the end.
    fn insert(&mut self, h: Permutation, from: usize, j: usize) {
        if j == self.levels.len() {
            let p = h.smallest_moved_point().expect("nontrivial residue");
            self.levels.push(Level::new(p, self.degree));
        }
        for lvl in &mut self.levels[from..=j] {
            lvl.push_gen(h.clone());
        }
    }

    fn schreier_sims(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let l = i - 1;
            match self.failing_schreier_generator(l) {
                None => i -= 1,
                Some((h, j)) => {
                    self.insert(h, l + 1, j);
                    i = j + 1;
                }
            }
        }
    }

    fn failing_schreier_generator(&self, l: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[l];
        let trans: Vec<(usize, Permutation)> = level.orbit.iter().map(|&p| (p, level.transversal(p))).collect();
        let mut index = vec![usize::MAX; self.degree];
        for (k, (p, _)) in trans.iter().enumerate() {
            index[*p] = k;
        }
        for (p, u) in &trans {
            for s in &level.gens {
                let q = s.image(*p);
                let mut sch = u.compose(s);
                if sch == trans[index[q]].1 {
                    continue;
                }
                level.strip(&mut sch, q);
                let (h, j) = self.sift_from(sch, l + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    fn refresh_order(&mut self) {
        self.order = self
            .levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
    }

    fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let p = g.image(level.base_point);
            if !level.contains(p) {
                return (g, i);
            }
            level.strip(&mut g, p);
        }
        (g, self.levels.len())
    }

    /// Residue of `g` after sifting and the level where sifting stopped.
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        self.sift_from(g.clone(), 0)
    }

    pub fn membership(&self, x: &Permutation) -> Result<bool> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: x.degree(),
            });
        }
        Ok(self.contains(x))
    }

    /// Membership by sifting; `false` on degree mismatch.
    pub fn contains(&self, x: &Permutation) -> bool {
        x.degree() == self.degree && self.sift(x).0.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Union of the level generators, without duplicates.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// Uniformly random element, using the chain.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let p = level.orbit[rng.gen_range(0..level.orbit.len())];
            g.compose_assign(&level.transversal(p));
        }
        g
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_of(self.degree, &self.generators, point)
    }

    /// Orbits in order of their least point; each orbit is sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Chain with `prefix` at the front of the base, same group.
    pub fn rebase(&self, prefix: &[usize]) -> PermGroup {
        self.rebase_seeded(prefix, DEFAULT_SEED)
    }

    pub fn rebase_seeded(&self, prefix: &[usize], seed: u64) -> PermGroup {
        let base = self.base();
        if base.len() >= prefix.len() && base[..prefix.len()] == *prefix {
            return self.clone();
        }
        let mut g = PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            levels: Vec::new(),
            order: BigUint::one(),
        };
        let opts = BsgsOptions {
            seed,
            order_hint: None,
            base_prefix: prefix.to_vec(),
        };
        g.build(&opts, Source::Chain(self));
        g
    }

    /// Removes levels with a trivial basic orbit.
    pub fn drop_trivial_levels(mut self) -> PermGroup {
        self.levels.retain(|l| l.orbit.len() > 1);
        self
    }

    /// Pointwise stabilizer of `points`.
    pub fn stabilizer(&self, points: &[usize]) -> PermGroup {
        let mut prefix: Vec<usize> = Vec::new();
        for &p in points {
            if !prefix.contains(&p) {
                prefix.push(p);
            }
        }
        let g = self.rebase(&prefix);
        let k = prefix.len().min(g.levels.len());
        let levels: Vec<Level> = g.levels[k..].to_vec();
        let generators = levels.first().map(|l| l.gens.clone()).unwrap_or_default();
        let order = levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
        PermGroup {
            degree: self.degree,
            generators,
            levels,
            order,
        }
    }

    /// Subgroup generated by `gens`, with `self.order()` as a hint when `gens`
    /// is known to generate `self`.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::new(self.degree, gens)
    }

    /// `⟨self, extra⟩`.
    pub fn closure_with(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    /// Every element, by running through the transversals. Intended for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let trans: Vec<Permutation> = level.orbit.iter().map(|&p| level.transversal(p)).collect();
            let mut next = Vec::with_capacity(out.len() * trans.len());
            for h in &out {
                for u in &trans {
                    next.push(h.compose(u));
                }
            }
            out = next;
        }
        out
    }

    /// Image of the group under `f` applied to each generator, given the
    /// order of `self` as an upper bound on the image order.
    pub fn image_group(&self, degree: usize, images: Vec<Permutation>, seed: u64) -> Result<PermGroup> {
        PermGroup::with_options(
            degree,
            images,
            &BsgsOptions {
                seed,
                order_hint: Some(self.order.clone()),
                base_prefix: Vec::new(),
            },
        )
    }
}

pub(crate) fn orbit_of(degree: usize, gens: &[Permutation], point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut queue = VecDeque::from([point]);
    let mut out = vec![point];
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.image(p);
            if !seen[q] {
                seen[q] = true;
                out.push(q);
                queue.push_back(q);
            }
        }
    }
    out.sort_unstable();
    out
}

pub(crate) fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for p in 0..degree {
        if seen[p] {
            continue;
        }
        let o = orbit_of(degree, gens, p);
        for &q in &o {
            seen[q] = true;
        }
        out.push(o);
    }
    out
}

/// Product replacement random elements.
struct ProductReplacement {
    slots: Vec<Permutation>,
    acc: Permutation,
}

impl ProductReplacement {
    fn new<R: Rng + ?Sized>(gens: &[Permutation], rng: &mut R) -> Self {
        let n = gens.len().max(10);
        let slots: Vec<Permutation> = (0..n).map(|i| gens[i % gens.len()].clone()).collect();
        let mut pr = Self {
            acc: Permutation::identity(gens[0].degree()),
            slots,
        };
        for _ in 0..60 {
            pr.next(rng);
        }
        pr
    }

    fn next<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Permutation {
        let n = self.slots.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if rng.gen_bool(0.5) {
            self.slots[j].clone()
        } else {
            self.slots[j].inverse()
        };
        if rng.gen_bool(0.5) {
            self.slots[i] = self.slots[i].compose(&other);
        } else {
            self.slots[i] = other.compose(&self.slots[i]);
        }
        self.acc.compose_assign(&self.slots[i]);
        self.acc.clone()
    }
}
