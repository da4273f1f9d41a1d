//! Normality tests and normal closures.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Whether `x` normalizes `s`, i.e. `s^x ∈ S` for every strong generator.
pub fn is_normalized(s: &PermGroup, x: &Permutation) -> Result<bool> {
    if x.degree() != s.degree() {
        return Err(Error::DegreeMismatch {
            expected: s.degree(),
            found: x.degree(),
        });
    }
    Ok(s.strong_generators()
        .iter()
        .chain(s.generators())
        .all(|g| s.contains(&g.conjugate_by(x))))
}

/// Whether `s` is normal in `g`.
pub fn is_normal(g: &PermGroup, s: &PermGroup) -> bool {
    g.generators().iter().all(|x| is_normalized(s, x).unwrap_or(false))
}

/// Smallest normal subgroup of `g` containing `seed`.
pub fn normal_closure_of(g: &PermGroup, seed: Vec<Permutation>) -> Result<PermGroup> {
    let mut n = PermGroup::new(g.degree(), seed)?;
    let mut i = 0;
    loop {
        let gens: Vec<Permutation> = n.generators().to_vec();
        if i >= gens.len() {
            return Ok(n);
        }
        let mut extra = Vec::new();
        for x in g.generators() {
            let c = gens[i].conjugate_by(x);
            if !n.contains(&c) && !extra.contains(&c) {
                extra.push(c);
            }
        }
        if !extra.is_empty() {
            n = n.closure_with(&extra)?;
        }
        i += 1;
    }
}

pub fn normal_closure(g: &PermGroup, s: &PermGroup) -> Result<PermGroup> {
    if s.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: s.degree(),
        });
    }
    if !s.is_subgroup_of(g) {
        return Err(Error::NotSubgroup {
            what: "subgroup".into(),
            parent: "group".into(),
        });
    }
    normal_closure_of(g, s.generators().to_vec())
}

/// The commutator subgroup `[G, G]`.
pub fn derived_subgroup(g: &PermGroup) -> Result<PermGroup> {
    let gens = g.generators();
    let mut seed = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() && !seed.contains(&c) {
                seed.push(c);
            }
        }
    }
    normal_closure_of(g, seed)
}
