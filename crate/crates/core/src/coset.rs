//! Action of a group on the right cosets of a subgroup.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::blocks::is_primitive;
use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_SEED};
use crate::perm::Permutation;
use crate::Limits;

/// Picks the lexicographically least element of a right coset `Hx`.
#[derive(Clone, Debug)]
pub struct CosetCanonicalizer {
    chain: PermGroup,
}

impl CosetCanonicalizer {
    pub fn new(h: &PermGroup) -> Self {
        let prefix: Vec<usize> = (0..h.degree()).collect();
        Self {
            chain: h.rebase(&prefix).drop_trivial_levels(),
        }
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.chain
    }

    /// The least element of `Hx` under comparison of image vectors.
    pub fn canonical(&self, x: &Permutation) -> Permutation {
        let mut c = x.clone();
        let mut scratch = Vec::with_capacity(x.degree());
        for level in &self.chain.levels {
            let mut best = level.base_point;
            let mut best_img = c.image(best);
            for &u in &level.orbit {
                let img = c.image(u);
                if img < best_img {
                    best = u;
                    best_img = img;
                }
            }
            if best != level.base_point {
                level.left_multiply(&mut c, best, &mut scratch);
            }
        }
        c
    }
}

/// Right-multiplication action of `G` on the cosets `Hx`.
///
/// Coset 0 is `H`; the rest are numbered in breadth-first discovery order,
/// applying the generators of `G` in their stored order.
#[derive(Clone, Debug)]
pub struct CosetAction {
    pub degree: usize,
    /// One coset permutation per generator of the parent.
    pub generator_images: Vec<Permutation>,
    /// Canonical representative of each coset.
    pub transversal: Vec<Permutation>,
    pub faithful: bool,
    image: PermGroup,
    canon: CosetCanonicalizer,
    index: HashMap<Box<[u32]>, u32>,
}

impl CosetAction {
    pub fn new(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<Self> {
        Self::with_seed(g, h, limits, DEFAULT_SEED)
    }

    pub fn with_seed(g: &PermGroup, h: &PermGroup, limits: &Limits, seed: u64) -> Result<Self> {
        if h.degree() != g.degree() {
            return Err(Error::DegreeMismatch {
                expected: g.degree(),
                found: h.degree(),
            });
        }
        if !h.is_subgroup_of(g) {
            return Err(Error::NotSubgroup {
                what: "subgroup".into(),
                parent: "group".into(),
            });
        }
        let index_big: BigUint = g.order() / h.order();
        let n = match index_big.to_u64() {
            Some(n) if n <= limits.coset_index_cap => n as usize,
            _ => {
                return Err(Error::IndexCap {
                    index: index_big,
                    cap: limits.coset_index_cap,
                })
            }
        };
        let canon = CosetCanonicalizer::new(h);
        let gens = g.generators();
        let mut transversal = vec![Permutation::identity(g.degree())];
        let mut index: HashMap<Box<[u32]>, u32> = HashMap::with_capacity(n);
        index.insert(transversal[0].images().into(), 0);
        let mut tables: Vec<Vec<u32>> = vec![vec![0; n]; gens.len()];
        let mut j = 0;
        while j < transversal.len() {
            for (k, s) in gens.iter().enumerate() {
                let y = canon.canonical(&transversal[j].compose(s));
                let next = transversal.len() as u32;
                let id = *index.entry(y.images().into()).or_insert(next);
                if id == next {
                    if transversal.len() >= n {
                        return Err(Error::Invalid(
                            "coset enumeration found more cosets than the index".into(),
                        ));
                    }
                    transversal.push(y);
                }
                tables[k][j] = id;
            }
            j += 1;
        }
        if transversal.len() != n {
            return Err(Error::Invalid(format!(
                "found {} cosets, expected {n}",
                transversal.len()
            )));
        }
        let generator_images: Vec<Permutation> = tables
            .into_iter()
            .map(|t| Permutation::from_images(t).map_err(Error::from))
            .collect::<Result<_>>()?;
        let image = g.image_group(n, generator_images.clone(), seed)?;
        let faithful = image.order() == g.order();
        Ok(Self {
            degree: n,
            generator_images,
            transversal,
            faithful,
            image,
            canon,
            index,
        })
    }

    /// The image of the parent as a group of degree `self.degree`.
    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn canonicalizer(&self) -> &CosetCanonicalizer {
        &self.canon
    }

    /// Index of the coset `Hx`, if `x` lies in the parent.
    pub fn coset_of(&self, x: &Permutation) -> Option<usize> {
        let c = self.canon.canonical(x);
        self.index.get(c.images()).map(|&i| i as usize)
    }

    /// Coset permutation induced by an arbitrary element of the parent.
    pub fn image_of(&self, x: &Permutation) -> Option<Permutation> {
        let table = self
            .transversal
            .iter()
            .map(|r| self.coset_of(&r.compose(x)).map(|i| i as u32))
            .collect::<Option<Vec<u32>>>()?;
        Permutation::from_images(table).ok()
    }
}

/// Whether `h` is a maximal subgroup of `g`, via primitivity of the coset action.
pub fn is_maximal(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<bool> {
    if h.order() == g.order() {
        if !h.is_subgroup_of(g) {
            return Err(Error::NotSubgroup {
                what: "subgroup".into(),
                parent: "group".into(),
            });
        }
        return Ok(false);
    }
    let action = CosetAction::new(g, h, limits)?;
    Ok(is_primitive(action.image()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(n, gens).unwrap()
    }

    fn s4() -> PermGroup {
        grp(4, &["(1,2,3,4)", "(1,2)"])
    }

    #[test]
    fn a6_on_point_stabilizer() {
        let a6 = grp(6, &["(1,2,3)", "(2,3,4,5,6)"]);
        let a5 = a6.stabilizer(&[5]);
        let act = CosetAction::new(&a6, &a5, &Limits::default()).unwrap();
        assert_eq!(act.degree, 6);
        assert!(act.faithful);
        assert!(act.image().is_transitive());
    }

    #[test]
    fn s4_on_d8_is_not_faithful() {
        let d8 = grp(4, &["(1,2,3,4)", "(1,3)"]);
        let act = CosetAction::new(&s4(), &d8, &Limits::default()).unwrap();
        assert_eq!(act.degree, 3);
        assert!(!act.faithful);
        assert_eq!(act.image().order_u64(), Some(6));
    }

    #[test]
    fn first_coset_is_the_subgroup() {
        let h = grp(4, &["(1,2)"]);
        let act = CosetAction::new(&s4(), &h, &Limits::default()).unwrap();
        assert!(act.transversal[0].is_identity());
        assert_eq!(act.coset_of(&Permutation::parse_cycles("(1,2)", 4).unwrap()), Some(0));
        assert_eq!(act.degree, 12);
    }

    #[test]
    fn canonical_is_constant_on_cosets() {
        let g = s4();
        let h = grp(4, &["(1,2,3)", "(1,2)"]);
        let canon = CosetCanonicalizer::new(&h);
        for x in g.elements() {
            let c = canon.canonical(&x);
            for y in h.elements() {
                assert_eq!(canon.canonical(&y.compose(&x)), c);
            }
            let min = h.elements().iter().map(|y| y.compose(&x)).min().unwrap();
            assert_eq!(c, min);
        }
    }

    #[test]
    fn image_of_is_a_homomorphism() {
        let g = grp(5, &["(1,2,3,4,5)", "(1,2)"]);
        let h = grp(5, &["(1,2)", "(3,4,5)", "(3,4)"]);
        let act = CosetAction::new(&g, &h, &Limits::default()).unwrap();
        assert_eq!(act.degree, 10);
        let a = Permutation::parse_cycles("(1,3,5)", 5).unwrap();
        let b = Permutation::parse_cycles("(2,4)", 5).unwrap();
        let ia = act.image_of(&a).unwrap();
        let ib = act.image_of(&b).unwrap();
        assert_eq!(act.image_of(&a.compose(&b)).unwrap(), ia.compose(&ib));
        for (s, img) in g.generators().iter().zip(&act.generator_images) {
            assert_eq!(&act.image_of(s).unwrap(), img);
        }
    }

    #[test]
    fn index_cap_is_enforced() {
        let g = grp(8, &["(1,2,3,4,5,6,7,8)", "(1,2)"]);
        let h = PermGroup::trivial(8);
        let limits = Limits {
            coset_index_cap: 1000,
            ..Limits::default()
        };
        match CosetAction::new(&g, &h, &limits) {
            Err(Error::IndexCap { index, cap }) => {
                assert_eq!(index, BigUint::from(40320u32));
                assert_eq!(cap, 1000);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_non_subgroup() {
        let a4 = grp(4, &["(1,2,3)", "(2,3,4)"]);
        let h = grp(4, &["(1,2)"]);
        assert!(matches!(
            CosetAction::new(&a4, &h, &Limits::default()),
            Err(Error::NotSubgroup { .. })
        ));
    }

    #[test]
    fn maximality_examples() {
        let limits = Limits::default();
        let a6 = grp(6, &["(1,2,3)", "(2,3,4,5,6)"]);
        assert!(is_maximal(&a6, &a6.stabilizer(&[0]), &limits).unwrap());
        assert!(!is_maximal(&s4(), &grp(4, &["(1,2)"]), &limits).unwrap());
        assert!(is_maximal(&s4(), &grp(4, &["(1,2,3,4)", "(1,3)"]), &limits).unwrap());
        assert!(!is_maximal(&s4(), &s4(), &limits).unwrap());
    }
}
