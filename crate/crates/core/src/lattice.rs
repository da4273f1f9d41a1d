//! Subgroup quadruples `(G, E, A, H)`: edge, arc and vertex stabilizers.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::catalog::{structure_label, ExpectedProperties, LatticeFile, LoadedGroup};
use crate::coset::{is_maximal, CosetAction};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::report::VerificationReport;
use crate::subgroups::{self, enumerate_subgroups, index_two_subgroups, Bits, ElementTable};
use crate::Limits;

/// A candidate lattice. Containments are checked on construction.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub name: String,
    pub g: PermGroup,
    pub e: PermGroup,
    pub a: PermGroup,
    pub h: PermGroup,
    pub labels: [Option<String>; 3],
    pub expected: ExpectedProperties,
}

impl Lattice {
    /// Builds a lattice without checking anything.
    pub fn new(name: impl Into<String>, g: PermGroup, e: PermGroup, a: PermGroup, h: PermGroup) -> Self {
        Self {
            name: name.into(),
            g,
            e,
            a,
            h,
            labels: [None, None, None],
            expected: ExpectedProperties::default(),
        }
    }

    pub(crate) fn from_loaded(file: LatticeFile, loaded: &LoadedGroup) -> Result<Self> {
        let l = Self::from_loaded_unchecked(file.clone(), loaded)?;
        let (a, e, h) = (&l.a, &l.e, &l.h);
        if !a.is_subgroup_of(e) {
            return Err(Error::Catalog(format!(
                "{}: {} is not contained in {}",
                file.name, file.a_ref, file.e_ref
            )));
        }
        if !a.is_subgroup_of(h) {
            return Err(Error::Catalog(format!(
                "{}: {} is not contained in {}",
                file.name, file.a_ref, file.h_ref
            )));
        }
        Ok(l)
    }

    pub(crate) fn from_loaded_unchecked(file: LatticeFile, loaded: &LoadedGroup) -> Result<Self> {
        let e = loaded.subgroup(&file.e_ref)?.clone();
        let a = loaded.subgroup(&file.a_ref)?.clone();
        let h = loaded.subgroup(&file.h_ref)?.clone();
        Ok(Self {
            name: file.name,
            g: loaded.group.clone(),
            labels: [
                structure_label(loaded, &file.e_ref),
                structure_label(loaded, &file.a_ref),
                structure_label(loaded, &file.h_ref),
            ],
            e,
            a,
            h,
            expected: file.expected,
        })
    }

    /// `|H:A|`.
    pub fn valency(&self) -> BigUint {
        self.h.order() / self.a.order()
    }

    /// `|G:H|`.
    pub fn vertex_count(&self) -> BigUint {
        self.g.order() / self.h.order()
    }

    /// The first strong generator of `E` outside `A`, else the first
    /// transversal product outside `A`.
    pub fn edge_element(&self) -> Option<Permutation> {
        if let Some(s) = self.e.strong_generators().into_iter().find(|s| !self.a.contains(s)) {
            return Some(s);
        }
        self.e.elements().into_iter().find(|x| !self.a.contains(x))
    }
}

fn order_str(g: &PermGroup) -> String {
    g.order().to_string()
}

/// Checks every lattice condition; failures become records, not errors.
pub fn verify_lattice(l: &Lattice, limits: &Limits) -> VerificationReport {
    let mut r = VerificationReport::new(l.name.clone());
    let (g, e, a, h) = (&l.g, &l.e, &l.a, &l.h);
    let contained = [
        ("E <= G", e.is_subgroup_of(g)),
        ("H <= G", h.is_subgroup_of(g)),
        ("A <= E", a.is_subgroup_of(e)),
        ("A <= H", a.is_subgroup_of(h)),
    ];
    for (name, ok) in contained {
        r.check(
            name,
            ok,
            if ok {
                "all generators sift"
            } else {
                "a generator fails to sift"
            },
        );
    }
    let containments_ok = contained.iter().all(|c| c.1);

    let index_ea = if a.order().is_zero() {
        BigUint::zero()
    } else {
        e.order() / a.order()
    };
    r.check(
        "|E:A| = 2",
        containments_ok && index_ea == BigUint::from(2u32) && *e.order() == a.order() * 2u32,
        format!("|E| = {}, |A| = {}", order_str(e), order_str(a)),
    );
    r.check(
        "A < H",
        containments_ok && h.order() > a.order(),
        format!("|A| = {}, |H| = {}", order_str(a), order_str(h)),
    );
    let h_is_e = h.order() == e.order() && h.is_subgroup_of(e);
    r.check(
        "H != E",
        !h_is_e,
        if h_is_e {
            "H equals E".to_string()
        } else {
            "H differs from E".to_string()
        },
    );
    if containments_ok {
        match is_maximal(g, e, limits) {
            Ok(m) => r.check(
                "E maximal in G",
                m,
                format!(
                    "action on {} cosets of E is {}primitive",
                    g.order() / e.order(),
                    if m { "" } else { "not " }
                ),
            ),
            Err(err) => r.check("E maximal in G", false, err.to_string()),
        };
        match CosetAction::new(g, h, limits) {
            Ok(act) => r.check(
                "H corefree",
                act.faithful,
                format!(
                    "action on {} cosets of H has image of order {}",
                    act.degree,
                    act.image().order()
                ),
            ),
            Err(err) => r.check("H corefree", false, err.to_string()),
        };
    } else {
        r.check("E maximal in G", false, "containments failed");
        r.check("H corefree", false, "containments failed");
    }
    r.advisory(
        "|H| > |E|",
        h.order() > e.order(),
        format!("|H| = {}, |E| = {}", order_str(h), order_str(e)),
    );
    let d = if a.order().is_zero() {
        BigUint::zero()
    } else {
        h.order() / a.order()
    };
    r.advisory("valency", true, format!("d = |H:A| = {d}"));
    let divides = d > BigUint::from(1u32) && (h.order() % (&d * (&d - 1u32))).is_zero();
    r.advisory(
        "d(d-1) divides |H|",
        divides,
        format!(
            "d(d-1) = {}, |H| = {}",
            if d.is_zero() { d.clone() } else { &d * (&d - 1u32) },
            order_str(h)
        ),
    );
    r
}

/// One lattice found by [`find_lattices`].
#[derive(Clone, Debug, Serialize)]
pub struct FoundLattice {
    pub e_order: u64,
    pub a_order: u64,
    pub h_order: u64,
    pub valency: u64,
    /// `|H| > |E|`.
    pub h_larger_than_e: bool,
    /// `d(d-1)` divides `|H|`.
    pub divisibility: bool,
    pub e_generators: Vec<String>,
    pub a_generators: Vec<String>,
    pub h_generators: Vec<String>,
    #[serde(skip)]
    pub e: PermGroup,
    #[serde(skip)]
    pub a: PermGroup,
    #[serde(skip)]
    pub h: PermGroup,
}

impl FoundLattice {
    pub fn into_lattice(self, name: impl Into<String>, g: &PermGroup) -> Lattice {
        Lattice::new(name, g.clone(), self.e, self.a, self.h)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeSearch {
    pub group_order: u64,
    pub subgroup_classes: usize,
    pub subgroups: usize,
    /// Whether classes were merged under a supplied overgroup.
    pub aut_dedup: bool,
    pub lattices: Vec<FoundLattice>,
}

impl LatticeSearch {
    /// Lattices with `|H| > |E|`.
    pub fn nontrivial(&self) -> impl Iterator<Item = &FoundLattice> {
        self.lattices.iter().filter(|l| l.h_larger_than_e)
    }
}

/// Conjugation maps on element indices, one per element of the conjugating group.
fn conjugation_maps(table: &ElementTable, g: &PermGroup, over: Option<&PermGroup>) -> Result<Vec<Vec<u32>>> {
    let n = table.len() as u32;
    match over {
        None => Ok((0..n).map(|x| (0..n).map(|e| table.conj(e, x)).collect()).collect()),
        Some(x) => {
            if x.degree() != g.degree() || !g.is_subgroup_of(x) {
                return Err(Error::NotSubgroup {
                    what: "group".into(),
                    parent: "overgroup".into(),
                });
            }
            x.elements()
                .iter()
                .map(|y| {
                    let yi = y.inverse();
                    (0..n)
                        .map(|e| {
                            let c = yi.compose(table.element(e)).compose(y);
                            table
                                .index_of(&c)
                                .ok_or_else(|| Error::Invalid("overgroup does not normalize the group".into()))
                        })
                        .collect()
                })
                .collect()
        }
    }
}

fn map_bits(b: &Bits, map: &[u32]) -> Bits {
    let mut out = subgroups::bits_new(map.len());
    for e in subgroups::members(b) {
        subgroups::set_bit(&mut out, map[e as usize]);
    }
    out
}

/// All lattices of `g` up to conjugacy in `overgroup` (or in `g`).
pub fn find_lattices(g: &PermGroup, overgroup: Option<&PermGroup>, limits: &Limits) -> Result<LatticeSearch> {
    let lat = enumerate_subgroups(g, limits.subgroup_order_cap)?;
    let table = &lat.table;
    let maps = conjugation_maps(table, g, overgroup)?;
    let n = table.len() as u64;

    let mut keys: Vec<(Bits, Bits, Bits)> = Vec::new();
    for class in &lat.classes {
        if class.order == n || class.order < 2 {
            continue;
        }
        let e_group = table.group_of(class.rep());
        if !is_maximal(g, &e_group, limits)? {
            continue;
        }
        for a_group in index_two_subgroups(&e_group)? {
            let a_bits = table.bits_of(&a_group).expect("subgroup of E");
            let a_order = subgroups::count(&a_bits);
            for hc in &lat.classes {
                if hc.order <= a_order || hc.order % a_order != 0 || !hc.is_corefree() {
                    continue;
                }
                for h_bits in &hc.members {
                    if h_bits == class.rep() || !subgroups::is_subset(&a_bits, h_bits) {
                        continue;
                    }
                    let key = maps
                        .iter()
                        .map(|m| (map_bits(class.rep(), m), map_bits(&a_bits, m), map_bits(h_bits, m)))
                        .min()
                        .expect("nonempty conjugating group");
                    keys.push(key);
                }
            }
        }
    }
    keys.sort_by(|x, y| {
        (
            subgroups::count(&x.0),
            subgroups::count(&x.1),
            subgroups::count(&x.2),
            x,
        )
            .cmp(&(
                subgroups::count(&y.0),
                subgroups::count(&y.1),
                subgroups::count(&y.2),
                y,
            ))
    });
    keys.dedup();

    let gens_str = |b: &Bits| -> Vec<String> {
        table
            .generators_of(b)
            .into_iter()
            .map(|i| table.element(i).to_string())
            .collect()
    };
    let lattices = keys
        .iter()
        .map(|(e, a, h)| {
            let (eo, ao, ho) = (subgroups::count(e), subgroups::count(a), subgroups::count(h));
            let d = ho / ao;
            FoundLattice {
                e_order: eo,
                a_order: ao,
                h_order: ho,
                valency: d,
                h_larger_than_e: ho > eo,
                divisibility: d > 1 && ho % (d * (d - 1)) == 0,
                e_generators: gens_str(e),
                a_generators: gens_str(a),
                h_generators: gens_str(h),
                e: table.group_of(e),
                a: table.group_of(a),
                h: table.group_of(h),
            }
        })
        .collect();
    Ok(LatticeSearch {
        group_order: n,
        subgroup_classes: lat.class_count(),
        subgroups: lat.subgroup_count(),
        aut_dedup: overgroup.is_some(),
        lattices,
    })
}

/// `a ∩ b`, scanning the elements of the smaller group.
pub fn intersection(a: &PermGroup, b: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    match small.order().to_u64() {
        Some(n) if n <= limits.intersection_scan_cap => {}
        _ => {
            return Err(Error::ScanCap {
                cap: limits.intersection_scan_cap,
            })
        }
    }
    let mut result = PermGroup::trivial(a.degree());
    for x in small.elements() {
        if !result.contains(&x) && big.contains(&x) {
            result = result.closure_with(&[x])?;
        }
    }
    Ok(result)
}
