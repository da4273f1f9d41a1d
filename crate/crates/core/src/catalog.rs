//! The vendored corpus of groups and lattices.
//!
//! Every order and containment in a file is re-checked on load.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{BsgsOptions, PermGroup, DEFAULT_SEED};
use crate::lattice::Lattice;
use crate::perm::Permutation;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    E,
    A,
    H,
    #[serde(rename = "other")]
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupMetadata {
    pub display_name: String,
    pub socle: String,
    pub almost_simple: bool,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aut_overgroup: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupEntry {
    pub name: String,
    pub role: Role,
    pub generators: Vec<String>,
    pub claimed_order: String,
    pub structure_label: String,
}

/// On-disk form of a group file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub schema_version: u32,
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    pub claimed_order: String,
    pub metadata: GroupMetadata,
    #[serde(default)]
    pub subgroups: Vec<SubgroupEntry>,
}

/// Expected graph properties carried by a lattice file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedProperties {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valency: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub girth: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bipartite: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_bipartite: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_primitive: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub biprimitive: Option<bool>,
    /// Exact largest s.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_s: Option<u32>,
    /// Lower bound on the largest s.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_transitive_local: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_arc_stabilizer: Option<u64>,
    #[serde(rename = "S_label", default, skip_serializing_if = "Option::is_none")]
    pub s_label: Option<String>,
}

/// On-disk form of a lattice file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub schema_version: u32,
    pub name: String,
    pub group_ref: String,
    #[serde(rename = "E_ref")]
    pub e_ref: String,
    #[serde(rename = "A_ref")]
    pub a_ref: String,
    #[serde(rename = "H_ref")]
    pub h_ref: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default)]
    pub expected: ExpectedProperties,
}

/// A group file after verification.
#[derive(Clone, Debug)]
pub struct LoadedGroup {
    pub entry: CatalogEntry,
    pub group: PermGroup,
    pub subgroups: BTreeMap<String, PermGroup>,
}

impl LoadedGroup {
    pub fn subgroup(&self, name: &str) -> Result<&PermGroup> {
        self.subgroups
            .get(name)
            .ok_or_else(|| Error::Catalog(format!("{}: no subgroup named {name}", self.entry.name)))
    }

    pub fn subgroup_entry(&self, name: &str) -> Option<&SubgroupEntry> {
        self.entry.subgroups.iter().find(|s| s.name == name)
    }
}

fn parse_order(text: &str, what: &str) -> Result<BigUint> {
    text.trim()
        .parse::<BigUint>()
        .map_err(|_| Error::Catalog(format!("{what}: claimed_order {text:?} is not an integer")))
}

fn parse_generators(gens: &[String], degree: usize, what: &str) -> Result<Vec<Permutation>> {
    gens.iter()
        .map(|s| {
            Permutation::parse_cycles(s, degree).map_err(|e| Error::Catalog(format!("{what}: generator {s:?}: {e}")))
        })
        .collect()
}

impl CatalogEntry {
    pub fn from_json(text: &str, path: &str) -> Result<Self> {
        let entry: CatalogEntry = serde_json::from_str(text).map_err(|source| Error::Json {
            path: path.to_string(),
            source,
        })?;
        if entry.schema_version != SCHEMA_VERSION {
            return Err(Error::Catalog(format!(
                "{path}: unsupported schema_version {}",
                entry.schema_version
            )));
        }
        Ok(entry)
    }

    /// Builds and checks the group and all subgroups.
    pub fn verify(self) -> Result<LoadedGroup> {
        self.verify_seeded(DEFAULT_SEED)
    }

    /// As [`CatalogEntry::verify`], seeding the randomized Schreier-Sims phase.
    pub fn verify_seeded(self, seed: u64) -> Result<LoadedGroup> {
        let opts = BsgsOptions {
            seed,
            ..BsgsOptions::default()
        };
        let name = self.name.clone();
        let gens = parse_generators(&self.generators, self.degree, &name)?;
        let group = PermGroup::with_options(self.degree, gens, &opts)?;
        let claimed = parse_order(&self.claimed_order, &name)?;
        if *group.order() != claimed {
            return Err(Error::Catalog(format!(
                "{name}: generators give order {}, claimed {claimed}",
                group.order()
            )));
        }
        let mut subgroups = BTreeMap::new();
        for sub in &self.subgroups {
            let what = format!("{name}/{}", sub.name);
            let gens = parse_generators(&sub.generators, self.degree, &what)?;
            if let Some(g) = gens.iter().find(|g| !group.contains(g)) {
                return Err(Error::Catalog(format!("{what}: generator {g} is not in {name}")));
            }
            let h = PermGroup::with_options(self.degree, gens, &opts)?;
            let claimed = parse_order(&sub.claimed_order, &what)?;
            if *h.order() != claimed {
                return Err(Error::Catalog(format!(
                    "{what}: generators give order {}, claimed {claimed}",
                    h.order()
                )));
            }
            if subgroups.insert(sub.name.clone(), h).is_some() {
                return Err(Error::Catalog(format!("{what}: duplicate subgroup name")));
            }
        }
        for sub in self.subgroups.iter().filter(|s| s.role == Role::E) {
            let Some(stem) = sub.name.strip_suffix('E') else {
                continue;
            };
            let a_name = format!("{stem}A");
            if let Some(a) = subgroups.get(&a_name) {
                let e = &subgroups[&sub.name];
                if !a.is_subgroup_of(e) || e.order() != &(a.order() * 2u32) {
                    return Err(Error::Catalog(format!(
                        "{name}: {a_name} is not of index 2 in {}",
                        sub.name
                    )));
                }
            }
        }
        Ok(LoadedGroup {
            entry: self,
            group,
            subgroups,
        })
    }
}

impl LatticeFile {
    pub fn from_json(text: &str, path: &str) -> Result<Self> {
        let file: LatticeFile = serde_json::from_str(text).map_err(|source| Error::Json {
            path: path.to_string(),
            source,
        })?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::Catalog(format!(
                "{path}: unsupported schema_version {}",
                file.schema_version
            )));
        }
        Ok(file)
    }
}

/// Classical family data for a metadata-only entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Family {
    pub kind: FamilyKind,
    pub dimension: u32,
    pub q: u64,
    pub condition: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Linear,
    Unitary,
    OrthogonalMinus,
}

impl Family {
    /// Order of the simple socle at this `q`.
    pub fn socle_order(&self) -> BigUint {
        let q = BigInt::from(self.q);
        let n = self.dimension;
        let big = |x: BigInt| x.to_biguint().expect("positive");
        match self.kind {
            FamilyKind::Linear | FamilyKind::Unitary => {
                let eps: i64 = if self.kind == FamilyKind::Linear { 1 } else { -1 };
                let mut order = q.pow(n * (n - 1) / 2);
                for i in 2..=n {
                    order *= q.pow(i) - BigInt::from(eps).pow(i);
                }
                let d = gcd(n as u64, (BigInt::from(self.q) - eps).abs().to_u64().unwrap());
                big(order / d)
            }
            FamilyKind::OrthogonalMinus => {
                let m = n / 2;
                let qm1: BigInt = q.pow(m) + 1;
                let mut order = q.pow(m * (m - 1)) * &qm1;
                for i in 1..m {
                    order *= q.pow(2 * i) - 1;
                }
                let rem: BigInt = &qm1 % BigInt::from(4u32);
                let d = gcd(4, rem.to_u64().unwrap());
                big(order / d)
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A row that is listed but deliberately not constructed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonConstructible {
    pub name: String,
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<String>,
    pub family: Option<Family>,
    #[serde(rename = "E_label")]
    pub e_label: String,
    #[serde(rename = "E_order")]
    pub e_order: String,
    #[serde(rename = "A_label")]
    pub a_label: String,
    #[serde(rename = "A_order")]
    pub a_order: String,
    #[serde(rename = "H_label")]
    pub h_label: String,
    #[serde(rename = "H_order")]
    pub h_order: String,
    #[serde(rename = "S_label")]
    pub s_label: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NonConstructibleFile {
    schema_version: u32,
    entries: Vec<NonConstructible>,
}

/// Index arithmetic for a non-constructible row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexArithmetic {
    pub group_order: String,
    pub h_order: String,
    pub a_order: String,
    /// `|G:H|`, or `⌊|T|/|H|⌋` for families where only the socle order is known.
    pub vertices: String,
    /// Whether `vertices` is exact or a lower bound.
    pub exact: bool,
    pub valency: String,
    pub formula: String,
}

impl NonConstructible {
    pub fn index_arithmetic(&self) -> Result<IndexArithmetic> {
        let h = parse_order(&self.h_order, &self.name)?;
        let a = parse_order(&self.a_order, &self.name)?;
        let (order, exact, who) = match (&self.group_order, &self.family) {
            (Some(o), _) => (parse_order(o, &self.name)?, true, "|G|".to_string()),
            (None, Some(f)) => (f.socle_order(), false, format!("|T| (q = {})", f.q)),
            (None, None) => {
                return Err(Error::Catalog(format!("{}: no order data", self.name)));
            }
        };
        let vertices = &order / &h;
        let op = if exact { "=" } else { ">=" };
        Ok(IndexArithmetic {
            group_order: order.to_string(),
            h_order: h.to_string(),
            a_order: a.to_string(),
            vertices: vertices.to_string(),
            exact,
            valency: (&h / &a).to_string(),
            formula: format!("vertices {op} {who}/|H| = {order}/{h} {op} {vertices}"),
        })
    }
}

/// A directory holding `groups/`, `lattices/` and `nonconstructible.json`.
#[derive(Clone, Debug)]
pub struct Catalog {
    dir: PathBuf,
    seed: u64,
}

impl Catalog {
    /// `CATALOG_DIR` when set, otherwise the corpus shipped with the source tree.
    pub fn default_dir() -> PathBuf {
        match std::env::var_os("CATALOG_DIR") {
            Some(d) if !d.is_empty() => PathBuf::from(d),
            _ => {
                let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog");
                dir.canonicalize().unwrap_or(dir)
            }
        }
    }

    pub fn open_default() -> Self {
        Self::new(Self::default_dir())
    }

    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self {
            dir: dir.into(),
            seed: DEFAULT_SEED,
        }
    }

    /// Seed for the randomized phase of group construction. Orders and
    /// verdicts do not depend on it.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn list(&self, sub: &str) -> Result<Vec<String>> {
        let path = self.dir.join(sub);
        let rd = fs::read_dir(&path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut names: Vec<String> = rd
            .filter_map(|e| e.ok())
            .filter_map(|e| {
                let p = e.path();
                (p.extension()? == "json").then(|| p.file_stem()?.to_str().map(String::from))?
            })
            .collect();
        names.sort();
        Ok(names)
    }

    pub fn group_names(&self) -> Result<Vec<String>> {
        self.list("groups")
    }

    pub fn lattice_names(&self) -> Result<Vec<String>> {
        self.list("lattices")
    }

    pub fn group_path(&self, name: &str) -> PathBuf {
        self.dir.join("groups").join(format!("{name}.json"))
    }

    pub fn lattice_path(&self, name: &str) -> PathBuf {
        self.dir.join("lattices").join(format!("{name}.json"))
    }

    pub fn group_entry(&self, name: &str) -> Result<CatalogEntry> {
        let path = self.group_path(name);
        if !path.exists() {
            return Err(Error::Catalog(format!(
                "group {name:?} not found in {}",
                self.dir.display()
            )));
        }
        CatalogEntry::from_json(&read(&path)?, &path.display().to_string())
    }

    pub fn load_group(&self, name: &str) -> Result<LoadedGroup> {
        self.group_entry(name)?.verify_seeded(self.seed)
    }

    /// Loads a lattice by catalog name or by file path.
    pub fn load_lattice(&self, name_or_path: &str) -> Result<Lattice> {
        let file = self.lattice_file(name_or_path)?;
        self.resolve_lattice(file)
    }

    pub fn lattice_file(&self, name_or_path: &str) -> Result<LatticeFile> {
        let path = if name_or_path.ends_with(".json") || name_or_path.contains('/') {
            PathBuf::from(name_or_path)
        } else {
            self.lattice_path(name_or_path)
        };
        if !path.exists() {
            return Err(Error::Catalog(format!("lattice {name_or_path:?} not found")));
        }
        LatticeFile::from_json(&read(&path)?, &path.display().to_string())
    }

    pub fn resolve_lattice(&self, file: LatticeFile) -> Result<Lattice> {
        let loaded = self.lattice_group(&file)?;
        Lattice::from_loaded(file, &loaded)
    }

    /// Loads a lattice without the containment checks, leaving them to
    /// [`crate::verify_lattice`].
    pub fn load_lattice_unchecked(&self, name_or_path: &str) -> Result<Lattice> {
        let file = self.lattice_file(name_or_path)?;
        let loaded = self.lattice_group(&file)?;
        Lattice::from_loaded_unchecked(file, &loaded)
    }

    fn lattice_group(&self, file: &LatticeFile) -> Result<LoadedGroup> {
        self.load_group(&file.group_ref).map_err(|e| match e {
            Error::Catalog(m) if m.contains("not found") => Error::Catalog(format!(
                "{}: unresolved group reference {:?}",
                file.name, file.group_ref
            )),
            other => other,
        })
    }

    pub fn nonconstructible(&self) -> Result<Vec<NonConstructible>> {
        let path = self.dir.join("nonconstructible.json");
        let file: NonConstructibleFile = serde_json::from_str(&read(&path)?).map_err(|source| Error::Json {
            path: path.display().to_string(),
            source,
        })?;
        Ok(file.entries)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub(crate) fn structure_label(loaded: &LoadedGroup, name: &str) -> Option<String> {
    loaded.subgroup_entry(name).map(|s| s.structure_label.clone())
}
