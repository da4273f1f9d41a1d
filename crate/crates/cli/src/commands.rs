//! The subcommands. Each returns an [`Output`]; errors become exit code 2.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use edgeprim_core::catalog::{ExpectedProperties, GroupMetadata, Role};
use edgeprim_core::lattice::LatticeSearch;
use edgeprim_core::props::{
    basic_invariants, check_expected, is_edge_primitive, is_vertex_biprimitive, s_arc_transitivity,
};
use edgeprim_core::{build_from_lattice, find_lattices, isomorphic, verify_lattice, Error, VerificationReport};
use serde::Serialize;

use crate::reproduce::{self, ReproductionManifest, Target};
use crate::{Cli, GraphFormat, Output, EXIT_FAIL, EXIT_PASS};

type CmdResult = Result<Output, String>;

fn write_out(cli: &Cli, file: &str, contents: &str) -> Result<(), String> {
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        let path = dir.join(file);
        fs::write(&path, contents).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

fn file_stem(name: &str) -> String {
    Path::new(name)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(name)
        .to_string()
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

#[derive(Serialize)]
struct SubgroupInfo {
    name: String,
    role: Role,
    order: String,
    structure_label: String,
}

#[derive(Serialize)]
struct GroupInfo<'a> {
    name: &'a str,
    degree: usize,
    order: String,
    metadata: &'a GroupMetadata,
    subgroups: Vec<SubgroupInfo>,
}

pub fn info(cli: &Cli, group: &str) -> CmdResult {
    let loaded = cli.catalog().load_group(group).map_err(|e| e.to_string())?;
    let entry = &loaded.entry;
    let info = GroupInfo {
        name: &entry.name,
        degree: entry.degree,
        order: loaded.group.order().to_string(),
        metadata: &entry.metadata,
        subgroups: entry
            .subgroups
            .iter()
            .map(|s| SubgroupInfo {
                name: s.name.clone(),
                role: s.role,
                order: loaded.subgroups[&s.name].order().to_string(),
                structure_label: s.structure_label.clone(),
            })
            .collect(),
    };
    let json = pretty(&info);
    write_out(cli, &format!("{}.info.json", entry.name), &json)?;
    let stdout = if cli.json {
        json
    } else {
        let mut s = format!(
            "{} ({})\n  order   {}\n  degree  {}\n  socle   {}\n",
            info.name, entry.metadata.display_name, info.order, info.degree, entry.metadata.socle
        );
        for sub in &info.subgroups {
            let _ = writeln!(
                s,
                "  {:<10} {:?}  order {:<8} {}",
                sub.name, sub.role, sub.order, sub.structure_label
            );
        }
        s
    };
    Ok(Output {
        code: EXIT_PASS,
        stdout,
        stderr: String::new(),
    })
}

#[derive(Serialize)]
struct SearchOutput<'a> {
    group: &'a str,
    overgroup: Option<&'a str>,
    #[serde(flatten)]
    search: &'a LatticeSearch,
}

pub fn search(cli: &Cli, group: &str, overgroup: Option<&str>) -> CmdResult {
    let cat = cli.catalog();
    let loaded = cat.load_group(group).map_err(|e| e.to_string())?;
    let over_name = overgroup.or(loaded.entry.metadata.aut_overgroup.as_deref());
    let over = match over_name {
        Some(n) => Some(cat.load_group(n).map_err(|e| e.to_string())?.group),
        None => None,
    };
    let search = find_lattices(&loaded.group, over.as_ref(), &cli.limits()).map_err(|e| match e {
        Error::OrderCap { order, cap } => format!(
            "group order {order} exceeds the subgroup enumeration cap {cap}; \
             check a known lattice with `edgeprim verify <lattice>` instead"
        ),
        other => other.to_string(),
    })?;
    let out = SearchOutput {
        group,
        overgroup: over_name,
        search: &search,
    };
    let json = pretty(&out);
    write_out(cli, &format!("{group}.search.json"), &json)?;
    let stdout = if cli.json {
        json
    } else {
        let mut s = format!(
            "{group}: order {}, {} subgroup classes, {} lattices ({} with |H| > |E|)\n",
            search.group_order,
            search.subgroup_classes,
            search.lattices.len(),
            search.nontrivial().count()
        );
        match over_name {
            Some(n) => {
                let _ = writeln!(s, "  deduplicated under {n}");
            }
            None => s.push_str("  deduplicated up to conjugacy in G only\n"),
        }
        for (i, l) in search.lattices.iter().enumerate() {
            let _ = writeln!(
                s,
                "  {:>2}. |E| = {:<5} |A| = {:<5} |H| = {:<5} d = {:<3}{}",
                i + 1,
                l.e_order,
                l.a_order,
                l.h_order,
                l.valency,
                if l.h_larger_than_e { "" } else { "  (|H| <= |E|)" }
            );
        }
        s
    };
    Ok(Output {
        code: EXIT_PASS,
        stdout,
        stderr: String::new(),
    })
}

#[derive(Clone, Debug, Default)]
pub struct VerifyFlags {
    pub graph: bool,
    pub s_arc: bool,
    pub edge_primitive: bool,
    pub biprimitive: bool,
    pub isomorphic_to: Option<String>,
}

impl VerifyFlags {
    fn needs_graph(&self) -> bool {
        self.graph || self.s_arc || self.edge_primitive || self.biprimitive || self.isomorphic_to.is_some()
    }
}

/// The report behind `verify`.
pub fn verify_report(cli: &Cli, lattice: &str, flags: &VerifyFlags) -> Result<VerificationReport, String> {
    let cat = cli.catalog();
    let limits = cli.limits();
    let l = cat.load_lattice_unchecked(lattice).map_err(|e| e.to_string())?;
    let started = Instant::now();
    let mut r = VerificationReport::new(l.name.clone());
    r.extend(verify_lattice(&l, &limits));
    if flags.needs_graph() && r.passed {
        match build_from_lattice(&l, &limits) {
            Ok(cg) => {
                let g = &cg.graph;
                r.check(
                    "graph",
                    true,
                    format!("{} vertices, {} edges", g.vertex_count(), g.edge_count()),
                );
                let e = &l.expected;
                if flags.graph {
                    let b = basic_invariants(g);
                    r.advisory(
                        "invariants",
                        true,
                        format!(
                            "valency {}, girth {}, bipartite {}, complete {}, complete bipartite {}",
                            b.valency.map_or("-".into(), |v| v.to_string()),
                            b.girth.map_or("none".into(), |v| v.to_string()),
                            b.bipartite,
                            b.complete,
                            b.complete_bipartite
                        ),
                    );
                    let basic = ExpectedProperties {
                        order: e.order,
                        size: e.size,
                        valency: e.valency,
                        girth: e.girth,
                        bipartite: e.bipartite,
                        complete: e.complete,
                        complete_bipartite: e.complete_bipartite,
                        ..ExpectedProperties::default()
                    };
                    r.extend(check_expected(g, &basic).map_err(|e| e.to_string())?);
                }
                if flags.s_arc {
                    let s = s_arc_transitivity(g).map_err(|e| e.to_string())?;
                    r.advisory(
                        "s-arc",
                        true,
                        format!(
                            "max_s = {}; arc stabilizer orders {}",
                            s.max_s.map_or("none".into(), |v| v.to_string()),
                            s.stabilizer_orders.join(", ")
                        ),
                    );
                    let arcs = ExpectedProperties {
                        max_s: e.max_s,
                        min_s: e.min_s,
                        two_arc_stabilizer: e.two_arc_stabilizer,
                        ..ExpectedProperties::default()
                    };
                    r.extend(check_expected(g, &arcs).map_err(|e| e.to_string())?);
                }
                if flags.edge_primitive {
                    let p = is_edge_primitive(g).map_err(|e| e.to_string())?;
                    r.check("edge-primitive", p, format!("{} edges", g.edge_count()));
                }
                if flags.biprimitive {
                    let p = is_vertex_biprimitive(g).map_err(|e| e.to_string())?;
                    r.check("vertex-biprimitive", p, format!("{} vertices", g.vertex_count()));
                }
                if let Some(other) = &flags.isomorphic_to {
                    let ol = cat.load_lattice(other).map_err(|e| e.to_string())?;
                    let og = build_from_lattice(&ol, &limits).map_err(|e| e.to_string())?;
                    let iso = isomorphic(g, &og.graph);
                    r.check("isomorphic", iso, format!("to the graph of {}", ol.name));
                }
            }
            Err(err) => {
                r.check("graph", false, err.to_string());
            }
        }
    } else if flags.needs_graph() {
        r.check("graph", false, "not built: the lattice fails verification");
    }
    r.set_elapsed(started.elapsed());
    Ok(r)
}

pub fn render_report(r: &VerificationReport) -> String {
    let mut s = format!("{}: {}\n", r.subject, if r.passed { "PASS" } else { "FAIL" });
    for c in &r.checks {
        let tag = match (c.passed, c.mandatory) {
            (true, true) => "PASS",
            (false, true) => "FAIL",
            (true, false) => "info",
            (false, false) => "note",
        };
        let _ = writeln!(s, "  {tag}  {}  ({})", c.name, c.detail);
    }
    s
}

pub fn verify(cli: &Cli, lattice: &str, flags: &VerifyFlags) -> CmdResult {
    let r = verify_report(cli, lattice, flags)?;
    let json = r.golden_json() + "\n";
    let stem = file_stem(lattice);
    write_out(cli, &format!("{stem}.report.json"), &json)?;
    if let Some(ms) = r.elapsed_ms {
        write_out(
            cli,
            &format!("{stem}.timing.json"),
            &pretty(&serde_json::json!({ "elapsed_ms": ms })),
        )?;
    }
    Ok(Output {
        code: if r.passed { EXIT_PASS } else { EXIT_FAIL },
        stdout: if cli.json { json } else { render_report(&r) },
        stderr: String::new(),
    })
}

pub fn graph(cli: &Cli, lattice: &str, format: GraphFormat) -> CmdResult {
    let l = cli.catalog().load_lattice(lattice).map_err(|e| e.to_string())?;
    let cg = build_from_lattice(&l, &cli.limits()).map_err(|e| e.to_string())?;
    let (text, ext) = match format {
        GraphFormat::Text => (cg.graph.to_text(), "txt"),
        GraphFormat::Json => (cg.graph.to_json() + "\n", "json"),
    };
    write_out(cli, &format!("{}.graph.{ext}", file_stem(lattice)), &text)?;
    Ok(Output {
        code: EXIT_PASS,
        stdout: text,
        stderr: String::new(),
    })
}

pub fn reproduce(cli: &Cli, target: Target) -> CmdResult {
    let manifests = reproduce::reproduce(&cli.catalog(), target, &cli.limits());
    let code = if manifests.iter().all(|m| m.status != reproduce::Status::Fail) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    let golden: Vec<ReproductionManifest> = manifests.iter().map(ReproductionManifest::without_timing).collect();
    let json = pretty(&golden);
    write_out(cli, &format!("{}.manifest.json", target.name()), &json)?;
    let timing: Vec<_> = manifests
        .iter()
        .map(|m| serde_json::json!({ "target": m.target, "elapsed_ms": m.elapsed_ms }))
        .collect();
    write_out(cli, &format!("{}.timing.json", target.name()), &pretty(&timing))?;
    Ok(Output {
        code,
        stdout: if cli.json { json } else { reproduce::render(&manifests) },
        stderr: String::new(),
    })
}
