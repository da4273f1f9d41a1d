//! The reproduction harness: one manifest per target.

use std::fmt::Write as _;
use std::time::Instant;

use clap::ValueEnum;
use edgeprim_core::catalog::{Catalog, IndexArithmetic, NonConstructible};
use edgeprim_core::graph::CosetGraph;
use edgeprim_core::props::{basic_invariants, check_expected, local_action};
use edgeprim_core::{
    build_from_lattice, find_lattices, isomorphic, verify_lattice, CheckRecord, Lattice, Limits, VerificationReport,
};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Target {
    /// All lattices with socle A6, found from scratch.
    #[value(name = "a6-table")]
    A6Table,
    /// Tutte's 8-cage.
    Gamma0,
    /// The valency-7 graph on 30 vertices from S8.
    Gamma1,
    /// The valency-4 graph of M12.2.
    M12,
    /// The valency-8 graph of J1.
    J1,
    /// The valency-5 graph of J3.2.
    J3,
    /// The Hoffman-Singleton graph.
    #[value(name = "hoffman-singleton")]
    HoffmanSingleton,
    /// Every shipped lattice against its expected properties.
    Catalog,
    All,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::A6Table => "a6-table",
            Target::Gamma0 => "gamma0",
            Target::Gamma1 => "gamma1",
            Target::M12 => "m12",
            Target::J1 => "j1",
            Target::J3 => "j3",
            Target::HoffmanSingleton => "hoffman-singleton",
            Target::Catalog => "catalog",
            Target::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproductionManifest {
    pub target: String,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_arithmetic: Option<IndexArithmetic>,
    /// Excluded from [`ReproductionManifest::without_timing`].
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl ReproductionManifest {
    fn from_report(target: &str, r: VerificationReport, started: Instant) -> Self {
        let status = if r.passed && !r.checks.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            target: target.to_string(),
            status,
            checks: r.checks,
            note: None,
            index_arithmetic: None,
            elapsed_ms: Some(started.elapsed().as_secs_f64() * 1000.0),
        }
    }

    fn skipped(entry: &NonConstructible, note: String) -> Self {
        let arithmetic = entry.index_arithmetic();
        let (index_arithmetic, note) = match arithmetic {
            Ok(a) => (Some(a), note),
            Err(e) => (None, format!("{note}; {e}")),
        };
        Self {
            target: entry.name.clone(),
            status: Status::Skipped,
            checks: Vec::new(),
            note: Some(note),
            index_arithmetic,
            elapsed_ms: None,
        }
    }

    pub fn without_timing(&self) -> Self {
        Self {
            elapsed_ms: None,
            ..self.clone()
        }
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn build(cat: &Catalog, name: &str, limits: &Limits, r: &mut VerificationReport) -> Option<(Lattice, CosetGraph)> {
    let l = match cat.load_lattice(name) {
        Ok(l) => l,
        Err(e) => {
            r.check(format!("{name}: load"), false, e.to_string());
            return None;
        }
    };
    match build_from_lattice(&l, limits) {
        Ok(cg) => Some((l, cg)),
        Err(e) => {
            r.check(format!("{name}: graph"), false, e.to_string());
            None
        }
    }
}

fn lattice_target(
    cat: &Catalog,
    target: &str,
    lattice: &str,
    limits: &Limits,
    extra: impl FnOnce(&Lattice, &CosetGraph, &mut VerificationReport),
) -> ReproductionManifest {
    let started = Instant::now();
    let mut r = VerificationReport::new(target);
    let l = match cat.load_lattice(lattice) {
        Ok(l) => l,
        Err(e) => {
            r.check("load", false, e.to_string());
            return ReproductionManifest::from_report(target, r, started);
        }
    };
    r.extend(verify_lattice(&l, limits));
    if !r.passed {
        return ReproductionManifest::from_report(target, r, started);
    }
    let cg = match build_from_lattice(&l, limits) {
        Ok(cg) => cg,
        Err(e) => {
            r.check("graph", false, e.to_string());
            return ReproductionManifest::from_report(target, r, started);
        }
    };
    r.check(
        "graph",
        true,
        format!(
            "{} vertices, {} edges, valency {}",
            cg.graph.vertex_count(),
            cg.graph.edge_count(),
            cg.valency()
        ),
    );
    match check_expected(&cg.graph, &l.expected) {
        Ok(e) => r.extend(e),
        Err(e) => {
            r.check("expected properties", false, e.to_string());
        }
    }
    extra(&l, &cg, &mut r);
    ReproductionManifest::from_report(target, r, started)
}

fn a6_table(cat: &Catalog, limits: &Limits) -> ReproductionManifest {
    let started = Instant::now();
    let mut r = VerificationReport::new("a6-table");
    let over = match cat.load_group("aut_a6") {
        Ok(g) => g.group,
        Err(e) => {
            r.check("load aut_a6", false, e.to_string());
            return ReproductionManifest::from_report("a6-table", r, started);
        }
    };
    let rows: Vec<Option<(Lattice, CosetGraph)>> = (1..=11)
        .map(|i| build(cat, &format!("table2_row{i:02}"), limits, &mut r))
        .collect();
    let groups = ["a6", "s6", "m10", "pgl2_9", "aut_a6"];
    let searches: Vec<_> = groups
        .par_iter()
        .map(|name| {
            let g = cat.load_group(name).map_err(|e| e.to_string())?.group;
            let s = find_lattices(&g, Some(&over), limits).map_err(|e| e.to_string())?;
            Ok::<_, String>((g, s))
        })
        .collect();
    let mut matched = [false; 11];
    let mut found = 0;
    for (name, search) in groups.iter().zip(searches) {
        let (g, s) = match search {
            Ok(x) => x,
            Err(e) => {
                r.check(format!("search {name}"), false, e);
                continue;
            }
        };
        r.advisory(
            format!("search {name}"),
            true,
            format!(
                "{} subgroup classes, {} lattices with |H| > |E|",
                s.subgroup_classes,
                s.nontrivial().count()
            ),
        );
        for f in s.nontrivial() {
            found += 1;
            let label = format!("{name}: |E| = {}, |A| = {}, |H| = {}", f.e_order, f.a_order, f.h_order);
            let built = match build_from_lattice(&f.clone().into_lattice("found", &g), limits) {
                Ok(cg) => cg,
                Err(e) => {
                    r.check(label, false, e.to_string());
                    continue;
                }
            };
            let hit = rows.iter().enumerate().position(|(i, row)| {
                let Some((l, cg)) = row else { return false };
                !matched[i]
                    && l.g.same_group(&g)
                    && l.e.order_u64() == Some(f.e_order)
                    && l.a.order_u64() == Some(f.a_order)
                    && l.h.order_u64() == Some(f.h_order)
                    && isomorphic(&built.graph, &cg.graph)
            });
            match hit {
                Some(i) => {
                    matched[i] = true;
                    r.check(label, true, format!("row {}", i + 1));
                }
                None => {
                    r.check(label, false, "matches no row");
                }
            }
        }
    }
    let unmatched: Vec<String> = (0..11).filter(|&i| !matched[i]).map(|i| (i + 1).to_string()).collect();
    r.check(
        "11 lattices",
        found == 11 && unmatched.is_empty(),
        if unmatched.is_empty() {
            format!("{found} found, every row matched")
        } else {
            format!("{found} found, rows {} unmatched", unmatched.join(", "))
        },
    );
    let shape = |i: usize| rows[i - 1].as_ref().map(|(_, cg)| basic_invariants(&cg.graph));
    for (i, n) in [(1, 6), (2, 6), (5, 10), (8, 10), (11, 10)] {
        let ok = shape(i).is_some_and(|b| b.complete && b.order == n);
        r.check(format!("row {i} is K{n}"), ok, "complete graph flag");
    }
    for i in [3, 6, 9] {
        let ok = shape(i).is_some_and(|b| b.complete_bipartite && b.order == 12 && b.valency == Some(6));
        r.check(format!("row {i} is K6,6"), ok, "complete bipartite flag");
    }
    if let Some((_, cage)) = build(cat, "gamma0", limits, &mut r) {
        for i in [4, 7, 10] {
            let ok = rows[i - 1]
                .as_ref()
                .is_some_and(|(_, cg)| isomorphic(&cg.graph, &cage.graph));
            r.check(format!("row {i} is the 8-cage"), ok, "isomorphic to Tutte's 8-cage");
        }
    }
    ReproductionManifest::from_report("a6-table", r, started)
}

fn catalog_target(cat: &Catalog, limits: &Limits) -> ReproductionManifest {
    let started = Instant::now();
    let mut r = VerificationReport::new("catalog");
    let names = match cat.lattice_names() {
        Ok(n) => n,
        Err(e) => {
            r.check("list lattices", false, e.to_string());
            return ReproductionManifest::from_report("catalog", r, started);
        }
    };
    let results: Vec<(String, Result<VerificationReport, String>)> = names
        .par_iter()
        .map(|name| {
            let res = (|| {
                let l = cat.load_lattice(name).map_err(|e| e.to_string())?;
                let mut v = verify_lattice(&l, limits);
                if v.passed {
                    let cg = build_from_lattice(&l, limits).map_err(|e| e.to_string())?;
                    v.extend(check_expected(&cg.graph, &l.expected).map_err(|e| e.to_string())?);
                }
                Ok(v)
            })();
            (name.clone(), res)
        })
        .collect();
    for (name, res) in results {
        match res {
            Ok(v) => {
                let failed: Vec<&str> = v.failures().map(|c| c.name.as_str()).collect();
                let detail = if failed.is_empty() {
                    format!("{} checks", v.checks.len())
                } else {
                    format!("failed: {}", failed.join(", "))
                };
                r.check(name, v.passed, detail);
            }
            Err(e) => {
                r.check(name, false, e);
            }
        }
    }
    ReproductionManifest::from_report("catalog", r, started)
}

fn skipped_row(cat: &Catalog, name: &str, note: &str) -> ReproductionManifest {
    match cat.nonconstructible() {
        Ok(rows) => match rows.iter().find(|e| e.name == name) {
            Some(e) => ReproductionManifest::skipped(e, format!("{note}: {}", e.reason)),
            None => ReproductionManifest {
                target: name.to_string(),
                status: Status::Fail,
                checks: Vec::new(),
                note: Some(format!("no catalog row named {name}")),
                index_arithmetic: None,
                elapsed_ms: None,
            },
        },
        Err(e) => ReproductionManifest {
            target: name.to_string(),
            status: Status::Fail,
            checks: Vec::new(),
            note: Some(e.to_string()),
            index_arithmetic: None,
            elapsed_ms: None,
        },
    }
}

fn single(cat: &Catalog, target: Target, limits: &Limits) -> ReproductionManifest {
    match target {
        Target::A6Table => a6_table(cat, limits),
        Target::Gamma0 => lattice_target(cat, "gamma0", "gamma0", limits, |_, cg, r| {
            let row10 = cat
                .load_lattice("table2_row10")
                .and_then(|l| build_from_lattice(&l, limits));
            let ok = row10.is_ok_and(|other| isomorphic(&cg.graph, &other.graph));
            r.check("isomorphic to row 10", ok, "same graph as the Aut(A6) row");
        }),
        Target::Gamma1 => lattice_target(cat, "gamma1", "gamma1", limits, |_, _, _| {}),
        Target::M12 => lattice_target(cat, "m12", "m12_2_weiss", limits, |_, _, _| {}),
        Target::J1 => lattice_target(cat, "j1", "j1", limits, |_, _, _| {}),
        Target::HoffmanSingleton => {
            lattice_target(cat, "hoffman-singleton", "hoffman_singleton", limits, |l, cg, r| {
                r.check(
                    "group order",
                    l.g.order_u64() == Some(252000),
                    format!("|G| = {}", l.g.order()),
                );
                match local_action(&cg.graph, 0) {
                    Ok(loc) => {
                        r.check(
                            "local action",
                            loc.induced_order == "5040" && loc.faithful && loc.two_transitive,
                            format!(
                                "induced order {}, kernel {}, 2-transitive {}",
                                loc.induced_order, loc.kernel_order, loc.two_transitive
                            ),
                        );
                    }
                    Err(e) => {
                        r.check("local action", false, e.to_string());
                    }
                }
            })
        }
        Target::Catalog => catalog_target(cat, limits),
        Target::J3 => skipped_row(cat, "j3_2", "not constructed"),
        Target::All => unreachable!("expanded by reproduce"),
    }
}

/// Runs a target; `All` runs every constructible target concurrently and
/// appends the deliberately skipped rows.
pub fn reproduce(cat: &Catalog, target: Target, limits: &Limits) -> Vec<ReproductionManifest> {
    if target != Target::All {
        return vec![single(cat, target, limits)];
    }
    let targets = [
        Target::A6Table,
        Target::Gamma0,
        Target::Gamma1,
        Target::M12,
        Target::J1,
        Target::HoffmanSingleton,
        Target::Catalog,
        Target::J3,
    ];
    let mut out: Vec<ReproductionManifest> = targets.par_iter().map(|&t| single(cat, t, limits)).collect();
    match cat.nonconstructible() {
        Ok(rows) => out.extend(
            rows.iter()
                .filter(|e| e.name != "j3_2")
                .map(|e| ReproductionManifest::skipped(e, format!("non-constructible at desk scale: {}", e.reason))),
        ),
        Err(e) => out.push(ReproductionManifest {
            target: "nonconstructible".into(),
            status: Status::Fail,
            checks: Vec::new(),
            note: Some(e.to_string()),
            index_arithmetic: None,
            elapsed_ms: None,
        }),
    }
    out
}

pub fn render(manifests: &[ReproductionManifest]) -> String {
    let mut s = String::new();
    for m in manifests {
        let status = match m.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        };
        let time = m
            .elapsed_ms
            .map_or(String::new(), |ms| format!(", {:.2} s", ms / 1000.0));
        let _ = writeln!(s, "{status:<8} {}  ({} checks{time})", m.target, m.checks.len());
        for c in &m.checks {
            if c.mandatory && !c.passed {
                let _ = writeln!(s, "    FAIL  {}  ({})", c.name, c.detail);
            }
        }
        if let Some(note) = &m.note {
            let _ = writeln!(s, "    {note}");
        }
        if let Some(a) = &m.index_arithmetic {
            let _ = writeln!(s, "    {}; valency |H:A| = {}", a.formula, a.valency);
        }
    }
    let count = |st: Status| manifests.iter().filter(|m| m.status == st).count();
    let _ = writeln!(
        s,
        "{} passed, {} failed, {} skipped",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped)
    );
    s
}
