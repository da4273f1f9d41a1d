//! Subgroups of small groups: index-two subgroups and conjugacy classes of
//! all subgroups by cyclic extension.
//!
//! Elements are indexed in lexicographic order of their image vectors, so
//! every result here depends only on the group, not on its generators.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::normal::normal_closure_of;
use crate::perm::Permutation;

const TABLE_LIMIT: usize = 4096;

/// A set of element indices.
pub type Bits = Vec<u64>;

pub(crate) fn bits_new(n: usize) -> Bits {
    vec![0; n.div_ceil(64)]
}

#[inline]
pub(crate) fn bit(b: &Bits, i: u32) -> bool {
    b[(i / 64) as usize] >> (i % 64) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(b: &mut Bits, i: u32) {
    b[(i / 64) as usize] |= 1 << (i % 64);
}

pub(crate) fn is_subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

pub(crate) fn count(b: &Bits) -> u64 {
    b.iter().map(|w| w.count_ones() as u64).sum()
}

pub(crate) fn members(b: &Bits) -> Vec<u32> {
    let mut out = Vec::new();
    for (w, &word) in b.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            let t = x.trailing_zeros();
            out.push(w as u32 * 64 + t);
            x &= x - 1;
        }
    }
    out
}

/// All elements of a group with multiplication by index.
#[derive(Clone, Debug)]
pub struct ElementTable {
    degree: usize,
    elems: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inv: Vec<u32>,
    mul: Option<Vec<u16>>,
    generators: Vec<u32>,
}

impl ElementTable {
    pub fn new(g: &PermGroup) -> Self {
        let mut elems = g.elements();
        elems.sort_unstable();
        let n = elems.len();
        let index: HashMap<Permutation, u32> = elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let inv = elems.iter().map(|e| index[&e.inverse()]).collect();
        let mul = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u16; n * n];
            for (i, a) in elems.iter().enumerate() {
                for (j, b) in elems.iter().enumerate() {
                    t[i * n + j] = index[&a.compose(b)] as u16;
                }
            }
            t
        });
        let generators = g.generators().iter().map(|s| index[s]).collect();
        Self {
            degree: g.degree(),
            elems,
            index,
            inv,
            mul,
            generators,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elems[i as usize]
    }

    pub fn index_of(&self, x: &Permutation) -> Option<u32> {
        self.index.get(x).copied()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.mul {
            Some(t) => t[a as usize * self.elems.len() + b as usize] as u32,
            None => self.index[&self.elems[a as usize].compose(&self.elems[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `x^-1 a x`.
    #[inline]
    pub fn conj(&self, a: u32, x: u32) -> u32 {
        self.mul(self.mul(self.inv(x), a), x)
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// Subgroup generated by the given elements.
    pub fn closure(&self, gens: &[u32]) -> Bits {
        let mut bits = bits_new(self.len());
        set_bit(&mut bits, 0);
        let mut list = vec![0u32];
        let gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut i = 0;
        while i < list.len() {
            let e = list[i];
            for &s in &gens {
                let f = self.mul(e, s);
                if !bit(&bits, f) {
                    set_bit(&mut bits, f);
                    list.push(f);
                }
            }
            i += 1;
        }
        bits
    }

    /// Closure of `base ∪ {extra}` where `base` is already a subgroup with generators `gens`.
    fn extend(&self, base: &Bits, gens: &[u32], extra: u32) -> Bits {
        let mut bits = base.clone();
        let mut list = members(base);
        let mut all: Vec<u32> = gens.to_vec();
        all.push(extra);
        let mut i = 0;
        while i < list.len() {
            let e = list[i];
            for &s in &all {
                let f = self.mul(e, s);
                if !bit(&bits, f) {
                    set_bit(&mut bits, f);
                    list.push(f);
                }
            }
            i += 1;
        }
        bits
    }

    /// Greedy generating set: the ascending scan keeps each element not yet generated.
    pub fn generators_of(&self, b: &Bits) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut cur = self.closure(&[]);
        for e in members(b) {
            if !bit(&cur, e) {
                gens.push(e);
                cur = self.closure(&gens);
            }
        }
        gens
    }

    pub fn group_of(&self, b: &Bits) -> PermGroup {
        let gens = self
            .generators_of(b)
            .into_iter()
            .map(|i| self.elems[i as usize].clone())
            .collect();
        PermGroup::new(self.degree, gens).expect("subgroup of a valid group")
    }

    /// Index set of a subgroup given as a group; `None` if some element is outside.
    pub fn bits_of(&self, h: &PermGroup) -> Option<Bits> {
        let gens: Option<Vec<u32>> = h.generators().iter().map(|s| self.index_of(s)).collect();
        Some(self.closure(&gens?))
    }

    fn conjugate_bits(&self, b: &Bits, x: u32) -> Bits {
        let mut out = bits_new(self.len());
        for e in members(b) {
            set_bit(&mut out, self.conj(e, x));
        }
        out
    }

    /// Generators of the ambient group as element indices.
    pub fn group_generators(&self) -> &[u32] {
        &self.generators
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub order: u64,
    /// All subgroups in the class; the first is the representative.
    pub members: Vec<Bits>,
    pub generators: Vec<u32>,
}

impl SubgroupClass {
    pub fn rep(&self) -> &Bits {
        &self.members[0]
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Intersection of all members.
    pub fn core(&self) -> Bits {
        let mut c = self.members[0].clone();
        for m in &self.members[1..] {
            for (x, y) in c.iter_mut().zip(m) {
                *x &= y;
            }
        }
        c
    }

    pub fn is_corefree(&self) -> bool {
        count(&self.core()) == 1
    }
}

/// Conjugacy classes of subgroups of a small group.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub table: ElementTable,
    /// Sorted by order, then by representative.
    pub classes: Vec<SubgroupClass>,
}

impl SubgroupLattice {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn subgroup_count(&self) -> usize {
        self.classes.iter().map(|c| c.size()).sum()
    }

    pub fn rep_group(&self, i: usize) -> PermGroup {
        self.table.group_of(self.classes[i].rep())
    }

    pub fn class_of(&self, b: &Bits) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(b))
    }
}

/// Every subgroup class of `g`, by cyclic extension.
pub fn enumerate_subgroups(g: &PermGroup, order_cap: u64) -> Result<SubgroupLattice> {
    match g.order_u64() {
        Some(n) if n <= order_cap => {}
        _ => {
            return Err(Error::OrderCap {
                order: g.order().clone(),
                cap: order_cap,
            })
        }
    }
    let table = ElementTable::new(g);
    let n = table.len();

    let mut cyclics: Vec<(u32, Bits)> = Vec::new();
    let mut seen_cyclic: HashMap<Bits, ()> = HashMap::new();
    for e in 1..n as u32 {
        let b = table.closure(&[e]);
        if seen_cyclic.insert(b.clone(), ()).is_none() {
            cyclics.push((e, b));
        }
    }

    let mut classes: Vec<SubgroupClass> = Vec::new();
    let mut known: HashMap<Bits, usize> = HashMap::new();
    let trivial = table.closure(&[]);
    let add_class = |b: Bits, classes: &mut Vec<SubgroupClass>, known: &mut HashMap<Bits, usize>| {
        let mut orbit = vec![b.clone()];
        known.insert(b, classes.len());
        let mut i = 0;
        while i < orbit.len() {
            for &x in table.group_generators() {
                let c = table.conjugate_bits(&orbit[i], x);
                if !known.contains_key(&c) {
                    known.insert(c.clone(), classes.len());
                    orbit.push(c);
                }
            }
            i += 1;
        }
        orbit.sort();
        let generators = table.generators_of(&orbit[0]);
        classes.push(SubgroupClass {
            order: count(&orbit[0]),
            members: orbit,
            generators,
        });
    };
    add_class(trivial, &mut classes, &mut known);

    let mut i = 0;
    while i < classes.len() {
        let rep = classes[i].rep().clone();
        let gens = classes[i].generators.clone();
        for (c, cb) in &cyclics {
            if bit(&rep, *c) || is_subset(cb, &rep) {
                continue;
            }
            let v = table.extend(&rep, &gens, *c);
            if !known.contains_key(&v) {
                add_class(v, &mut classes, &mut known);
            }
        }
        i += 1;
    }
    classes.sort_by(|a, b| (a.order, a.rep()).cmp(&(b.order, b.rep())));
    Ok(SubgroupLattice { table, classes })
}

/// All subgroups of index 2, as kernels of the maps onto the group of order 2.
pub fn index_two_subgroups(e: &PermGroup) -> Result<Vec<PermGroup>> {
    let gens = e.generators();
    let mut seed: Vec<Permutation> = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        seed.push(a.compose(a));
        for b in &gens[i + 1..] {
            seed.push(a.commutator(b));
        }
    }
    seed.retain(|x| !x.is_identity());
    let n = normal_closure_of(e, seed)?;
    let mut basis: Vec<Permutation> = Vec::new();
    let mut span = n.clone();
    for s in gens {
        if span.order() == e.order() {
            break;
        }
        if !span.contains(s) {
            basis.push(s.clone());
            span = span.closure_with(std::slice::from_ref(s))?;
        }
    }
    let k = basis.len();
    let quotient = (e.order() / n.order()).to_u64().unwrap_or(0);
    if quotient != 1u64 << k {
        return Err(Error::Invalid(format!(
            "quotient by squares and commutators has order {quotient}, basis size {k}"
        )));
    }
    let mut out = Vec::new();
    for f in 1u32..(1 << k) {
        let first = f.trailing_zeros() as usize;
        let mut extra: Vec<Permutation> = Vec::new();
        for (i, b) in basis.iter().enumerate() {
            if f >> i & 1 == 0 {
                extra.push(b.clone());
            } else if i != first {
                extra.push(b.compose(&basis[first]));
            }
        }
        out.push(n.closure_with(&extra)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(n, gens).unwrap()
    }

    #[test]
    fn s4_has_one_index_two_subgroup() {
        let s4 = grp(4, &["(1,2,3,4)", "(1,2)"]);
        let subs = index_two_subgroups(&s4).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].order_u64(), Some(12));
        assert!(!subs[0].contains(&Permutation::parse_cycles("(1,2)", 4).unwrap()));
    }

    #[test]
    fn a5_has_none() {
        assert!(index_two_subgroups(&grp(5, &["(1,2,3)", "(1,2,3,4,5)"]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn s4_times_s2_has_three() {
        let g = grp(6, &["(1,2,3,4)", "(1,2)", "(5,6)"]);
        let subs = index_two_subgroups(&g).unwrap();
        assert_eq!(subs.len(), 3);
        for s in &subs {
            assert_eq!(s.order_u64(), Some(24));
        }
    }

    #[test]
    fn s4_classes() {
        let s4 = grp(4, &["(1,2,3,4)", "(1,2)"]);
        let l = enumerate_subgroups(&s4, 10_000).unwrap();
        assert_eq!(l.class_count(), 11);
        assert_eq!(l.subgroup_count(), 30);
    }

    #[test]
    fn a5_classes() {
        let l = enumerate_subgroups(&grp(5, &["(1,2,3)", "(1,2,3,4,5)"]), 10_000).unwrap();
        assert_eq!(l.class_count(), 9);
        assert_eq!(l.subgroup_count(), 59);
    }

    #[test]
    fn c6_subgroups() {
        let l = enumerate_subgroups(&grp(6, &["(1,2,3,4,5,6)"]), 10_000).unwrap();
        assert_eq!(l.class_count(), 4);
        assert_eq!(l.subgroup_count(), 4);
    }

    #[test]
    fn order_cap() {
        let s8 = grp(8, &["(1,2,3,4,5,6,7,8)", "(1,2)"]);
        assert!(matches!(enumerate_subgroups(&s8, 10_000), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn independent_of_generators() {
        let a = enumerate_subgroups(&grp(4, &["(1,2,3,4)", "(1,2)"]), 100).unwrap();
        let b = enumerate_subgroups(&grp(4, &["(1,2)", "(2,3)", "(3,4)"]), 100).unwrap();
        let reps = |l: &SubgroupLattice| l.classes.iter().map(|c| c.rep().clone()).collect::<Vec<_>>();
        assert_eq!(reps(&a), reps(&b));
    }
}
