//! The JSON workbench document: named groups, modules, cochains, Lie algebras
//! and covers, plus a list of tasks referring to them by name.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Result;
use cohomology_core::abgroups::FgAbelianGroup;
use cohomology_core::fixtures;
use cohomology_core::group_cohomology::{
    cohomology, cup_product, extension_from_2cocycle, tuple_count, Cochain, FiniteGroup, GModule,
    Pairing,
};
use cohomology_core::intlinalg::IntMatrix;
use cohomology_core::lie_cohomology::{LieAlgebra, LieModule};
use cohomology_core::Error as CoreError;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::commands::{
    cech_report, cohomology_report, lie_report, sm_report, tau_report_on, xmod_roundtrip_one,
    CoverChoice, CoverKind, Limits, TauOptions,
};
use crate::report::{bigs, classify, Report, Status};

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    fixture: Option<String>,
    order: Option<usize>,
    table: Option<Vec<usize>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct ModuleSpec {
    group: String,
    fixture: Option<String>,
    rank: Option<usize>,
    /// Relation vectors, each of length `rank`.
    #[serde(default)]
    relations: Vec<Vec<i64>>,
    /// One row-major `rank × rank` matrix per group element; trivial when absent.
    action: Option<Vec<Vec<Vec<i64>>>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct CochainSpec {
    module: String,
    degree: usize,
    values: Vec<i64>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct LieSpec {
    fixture: Option<String>,
    dim: Option<usize>,
    /// `[i, j, coordinates of [x_i, x_j]]` for `i < j`.
    #[serde(default)]
    brackets: Vec<(usize, usize, Vec<i64>)>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct CoverSpec {
    group: String,
    subset: Vec<usize>,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub command: String,
    pub module: Option<String>,
    pub cochain: Option<String>,
    pub left: Option<String>,
    pub right: Option<String>,
    pub algebra: Option<String>,
    pub lie_module: Option<String>,
    pub cover: Option<String>,
    pub degree: Option<usize>,
    pub max_degree: Option<usize>,
}

/// A validation problem at a path such as `modules.A.action[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub path: String,
    pub message: String,
    pub witness: Option<Vec<usize>>,
}

impl Issue {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Issue {
            path: path.into(),
            message: message.into(),
            witness: None,
        }
    }

    fn from_core(path: impl Into<String>, e: &CoreError) -> Self {
        let mut i = Issue::new(path, e.to_string());
        if let CoreError::NonAssociative(a, b, c) = e {
            i.witness = Some(vec![*a, *b, *c]);
        }
        i
    }

    fn to_value(&self) -> Value {
        let mut v = json!({ "path": self.path, "message": self.message });
        if let Some(w) = &self.witness {
            v["witness"] = json!(w);
        }
        v
    }
}

/// A document whose references all resolve.
#[derive(Debug, Default)]
pub struct Resolved {
    groups: BTreeMap<String, FiniteGroup>,
    modules: BTreeMap<String, (String, GModule)>,
    cochains: BTreeMap<String, (String, Cochain)>,
    lie: BTreeMap<String, LieAlgebra>,
    covers: BTreeMap<String, (String, Vec<usize>)>,
    tasks: Vec<TaskSpec>,
}

const SECTIONS: &[&str] = &[
    "groups",
    "modules",
    "cochains",
    "lie_algebras",
    "covers",
    "tasks",
];

fn section<'a>(
    doc: &'a serde_json::Map<String, Value>,
    name: &str,
    issues: &mut Vec<Issue>,
) -> Vec<(String, &'a Value)> {
    match doc.get(name) {
        None => Vec::new(),
        Some(Value::Object(m)) => m.iter().map(|(k, v)| (k.clone(), v)).collect(),
        Some(_) => {
            issues.push(Issue::new(name, "expected an object of named records"));
            Vec::new()
        }
    }
}

fn parse<T: DeserializeOwned>(path: &str, v: &Value, issues: &mut Vec<Issue>) -> Option<T> {
    match serde_json::from_value(v.clone()) {
        Ok(x) => Some(x),
        Err(e) => {
            issues.push(Issue::new(path, e.to_string()));
            None
        }
    }
}

fn group_of(r: &Resolved, name: &str) -> Option<FiniteGroup> {
    r.groups
        .get(name)
        .cloned()
        .or_else(|| fixtures::group(name).ok())
}

/// Parses and checks a document, collecting every problem found.
pub fn resolve(text: &str) -> std::result::Result<Resolved, Vec<Issue>> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| vec![Issue::new("$", e.to_string())])?;
    let Value::Object(doc) = root else {
        return Err(vec![Issue::new("$", "expected a JSON object")]);
    };
    let mut issues = Vec::new();
    for k in doc.keys() {
        if !SECTIONS.contains(&k.as_str()) {
            issues.push(Issue::new(k.clone(), "unknown section"));
        }
    }
    let mut r = Resolved::default();

    for (name, v) in section(&doc, "groups", &mut issues) {
        let path = format!("groups.{name}");
        let Some(spec) = parse::<GroupSpec>(&path, v, &mut issues) else {
            continue;
        };
        match (spec.fixture, spec.order, spec.table) {
            (Some(f), None, None) => match fixtures::group(&f) {
                Ok(g) => {
                    r.groups.insert(name, g);
                }
                Err(e) => issues.push(Issue::from_core(format!("{path}.fixture"), &e)),
            },
            (None, Some(order), Some(table)) => {
                if table.len() != order * order {
                    issues.push(Issue::new(
                        format!("{path}.table"),
                        format!("expected {} entries, found {}", order * order, table.len()),
                    ));
                    continue;
                }
                match FiniteGroup::new(order, table) {
                    Ok(g) => {
                        r.groups.insert(name, g);
                    }
                    Err(e) => issues.push(Issue::from_core(format!("{path}.table"), &e)),
                }
            }
            _ => issues.push(Issue::new(
                path,
                "give either `fixture` or both `order` and `table`",
            )),
        }
    }

    for (name, v) in section(&doc, "modules", &mut issues) {
        let path = format!("modules.{name}");
        let Some(spec) = parse::<ModuleSpec>(&path, v, &mut issues) else {
            continue;
        };
        match build_module(&r, &path, &spec) {
            Ok(m) => {
                r.modules.insert(name, (spec.group.clone(), m));
            }
            Err(e) => issues.push(e),
        }
    }

    for (name, v) in section(&doc, "cochains", &mut issues) {
        let path = format!("cochains.{name}");
        let Some(spec) = parse::<CochainSpec>(&path, v, &mut issues) else {
            continue;
        };
        let Some((_, m)) = r.modules.get(&spec.module) else {
            issues.push(Issue::new(
                format!("{path}.module"),
                format!("unknown module `{}`", spec.module),
            ));
            continue;
        };
        let len = tuple_count(m.group().order(), spec.degree) * m.rank();
        if spec.values.len() != len {
            issues.push(Issue::new(
                format!("{path}.values"),
                format!(
                    "expected {len} entries (|G|^degree × rank), found {}",
                    spec.values.len()
                ),
            ));
            continue;
        }
        let values = spec.values.iter().map(|&x| BigInt::from(x)).collect();
        match Cochain::new(m, spec.degree, values) {
            Ok(c) => {
                r.cochains.insert(name, (spec.module.clone(), c));
            }
            Err(e) => issues.push(Issue::from_core(path, &e)),
        }
    }

    for (name, v) in section(&doc, "lie_algebras", &mut issues) {
        let path = format!("lie_algebras.{name}");
        let Some(spec) = parse::<LieSpec>(&path, v, &mut issues) else {
            continue;
        };
        let built = match (spec.fixture, spec.dim) {
            (Some(f), None) if spec.brackets.is_empty() => fixtures::lie_algebra(&f),
            (None, Some(d)) => LieAlgebra::from_brackets(d, &spec.brackets),
            _ => {
                issues.push(Issue::new(
                    path,
                    "give either `fixture` or `dim` with `brackets`",
                ));
                continue;
            }
        };
        match built {
            Ok(g) => {
                r.lie.insert(name, g);
            }
            Err(e) => issues.push(Issue::from_core(path, &e)),
        }
    }

    for (name, v) in section(&doc, "covers", &mut issues) {
        let path = format!("covers.{name}");
        let Some(spec) = parse::<CoverSpec>(&path, v, &mut issues) else {
            continue;
        };
        let Some(g) = group_of(&r, &spec.group) else {
            issues.push(Issue::new(
                format!("{path}.group"),
                format!("unknown group `{}`", spec.group),
            ));
            continue;
        };
        match cohomology_core::cech_bridge::TranslateCover::new(&g, &spec.subset) {
            Ok(_) => {
                r.covers
                    .insert(name, (spec.group.clone(), spec.subset.clone()));
            }
            Err(e) => issues.push(Issue::from_core(format!("{path}.subset"), &e)),
        }
    }

    match doc.get("tasks") {
        None => {}
        Some(Value::Array(items)) => {
            for (i, v) in items.iter().enumerate() {
                let path = format!("tasks[{i}]");
                let Some(t) = parse::<TaskSpec>(&path, v, &mut issues) else {
                    continue;
                };
                let before = issues.len();
                check_task(&r, &path, &t, &mut issues);
                if issues.len() == before {
                    r.tasks.push(t);
                }
            }
        }
        Some(_) => issues.push(Issue::new("tasks", "expected an array")),
    }

    if issues.is_empty() {
        Ok(r)
    } else {
        Err(issues)
    }
}

fn build_module(
    r: &Resolved,
    path: &str,
    spec: &ModuleSpec,
) -> std::result::Result<GModule, Issue> {
    let g = group_of(r, &spec.group).ok_or_else(|| {
        Issue::new(
            format!("{path}.group"),
            format!("unknown group `{}`", spec.group),
        )
    })?;
    if let Some(f) = &spec.fixture {
        if r.groups.contains_key(&spec.group) {
            return Err(Issue::new(
                format!("{path}.fixture"),
                "fixture modules need a fixture group name",
            ));
        }
        return fixtures::module(&spec.group, f)
            .map_err(|e| Issue::from_core(format!("{path}.fixture"), &e));
    }
    let rank = spec
        .rank
        .ok_or_else(|| Issue::new(format!("{path}.rank"), "missing rank"))?;
    let mut rel = IntMatrix::zeros(rank, spec.relations.len());
    for (j, col) in spec.relations.iter().enumerate() {
        if col.len() != rank {
            return Err(Issue::new(
                format!("{path}.relations[{j}]"),
                format!("expected {rank} entries, found {}", col.len()),
            ));
        }
        for (i, &x) in col.iter().enumerate() {
            rel[(i, j)] = x.into();
        }
    }
    let a = FgAbelianGroup::new(rank, rel)
        .map_err(|e| Issue::from_core(format!("{path}.relations"), &e))?;
    let Some(action) = &spec.action else {
        return Ok(GModule::trivial(&g, a));
    };
    if action.len() != g.order() {
        return Err(Issue::new(
            format!("{path}.action"),
            format!(
                "expected {} matrices, one per group element, found {}",
                g.order(),
                action.len()
            ),
        ));
    }
    let mut mats = Vec::with_capacity(action.len());
    for (k, rows) in action.iter().enumerate() {
        if rows.len() != rank || rows.iter().any(|row| row.len() != rank) {
            return Err(Issue::new(
                format!("{path}.action[{k}]"),
                format!("expected a {rank} × {rank} matrix"),
            ));
        }
        mats.push(IntMatrix::from_i64_rows(rows, rank));
    }
    GModule::new(&g, a, mats).map_err(|e| Issue::from_core(format!("{path}.action"), &e))
}

const COMMANDS: &[&str] = &[
    "cohomology",
    "sm",
    "cech",
    "tau",
    "cup",
    "xmod",
    "extension",
    "lie",
];

fn check_task(r: &Resolved, path: &str, t: &TaskSpec, issues: &mut Vec<Issue>) {
    let mut need = |field: &str, value: &Option<String>, known: bool| match value {
        None => issues.push(Issue::new(format!("{path}.{field}"), "missing")),
        Some(v) if !known => issues.push(Issue::new(
            format!("{path}.{field}"),
            format!("unknown name `{v}`"),
        )),
        _ => {}
    };
    let module_known = t.module.as_ref().is_some_and(|m| r.modules.contains_key(m));
    let cochain_known = |c: &Option<String>| c.as_ref().is_some_and(|c| r.cochains.contains_key(c));
    match t.command.as_str() {
        "cohomology" | "sm" | "cech" => need("module", &t.module, module_known),
        "tau" | "xmod" | "extension" => need("cochain", &t.cochain, cochain_known(&t.cochain)),
        "cup" => {
            need("left", &t.left, cochain_known(&t.left));
            need("right", &t.right, cochain_known(&t.right));
        }
        "lie" => need(
            "algebra",
            &t.algebra,
            t.algebra.as_ref().is_some_and(|a| r.lie.contains_key(a)),
        ),
        other => {
            issues.push(Issue::new(
                format!("{path}.command"),
                format!(
                    "unknown command `{other}`; expected one of {}",
                    COMMANDS.join(", ")
                ),
            ));
            return;
        }
    }
    if let Some(c) = &t.cover {
        match r.covers.get(c) {
            None => issues.push(Issue::new(
                format!("{path}.cover"),
                format!("unknown cover `{c}`"),
            )),
            Some((cg, _)) => {
                let owner = t
                    .module
                    .as_ref()
                    .and_then(|m| r.modules.get(m))
                    .or_else(|| {
                        t.cochain
                            .as_ref()
                            .and_then(|c| r.cochains.get(c))
                            .and_then(|(m, _)| r.modules.get(m))
                    })
                    .map(|(g, _)| g);
                if owner.is_some_and(|g| g != cg) {
                    issues.push(Issue::new(
                        format!("{path}.cover"),
                        "cover and coefficients live over different groups",
                    ));
                }
            }
        }
    }
    let degree_of = |c: &Option<String>| {
        c.as_ref()
            .and_then(|c| r.cochains.get(c))
            .map(|(_, x)| x.degree())
    };
    match t.command.as_str() {
        "xmod" if degree_of(&t.cochain).is_some_and(|d| d != 3) => issues.push(Issue::new(
            format!("{path}.cochain"),
            "the round trip needs a 3-cochain",
        )),
        "extension" if degree_of(&t.cochain).is_some_and(|d| d != 2) => issues.push(Issue::new(
            format!("{path}.cochain"),
            "extensions need a 2-cochain",
        )),
        "tau" if degree_of(&t.cochain) == Some(0) => issues.push(Issue::new(
            format!("{path}.cochain"),
            "τ needs a cochain of positive degree",
        )),
        "cup" => {
            let owner = |c: &Option<String>| {
                c.as_ref()
                    .and_then(|c| r.cochains.get(c))
                    .map(|(m, _)| m.clone())
            };
            if let (Some(a), Some(b)) = (owner(&t.left), owner(&t.right)) {
                if a != b {
                    issues.push(Issue::new(
                        format!("{path}.right"),
                        "both factors must take values in the same module",
                    ));
                } else if r.modules[&a].1.rank() != 1 {
                    issues.push(Issue::new(
                        format!("{path}.left"),
                        "cup products use a rank-one module",
                    ));
                }
            }
        }
        "lie" => {
            if let Some(m) = &t.lie_module {
                if m != "trivial" && m != "adjoint" {
                    issues.push(Issue::new(
                        format!("{path}.lie_module"),
                        "expected `trivial` or `adjoint`",
                    ));
                }
            }
        }
        _ => {}
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| crate::report::invalid(format!("cannot read {}: {e}", path.display())))
}

fn issues_report(issues: &[Issue]) -> Report {
    Report {
        value: json!({ "valid": false, "errors": issues.iter().map(Issue::to_value).collect::<Vec<_>>() }),
        status: Status::Invalid,
    }
}

pub fn validate_file(path: &Path) -> Result<Report> {
    Ok(match resolve(&read(path)?) {
        Ok(r) => Report::computed(json!({
            "valid": true,
            "groups": r.groups.len(),
            "modules": r.modules.len(),
            "cochains": r.cochains.len(),
            "lie_algebras": r.lie.len(),
            "covers": r.covers.len(),
            "tasks": r.tasks.len(),
        })),
        Err(issues) => issues_report(&issues),
    })
}

pub fn run_file(path: &Path, lim: Limits) -> Result<Report> {
    let r = match resolve(&read(path)?) {
        Ok(r) => r,
        Err(issues) => return Ok(issues_report(&issues)),
    };
    let mut status = Status::Computed;
    let mut results = Vec::new();
    for (i, t) in r.tasks.iter().enumerate() {
        let task_lim = Limits {
            max_degree: t.max_degree.or(lim.max_degree),
            bound: lim.bound,
        };
        let (value, st) = match run_task(&r, t, task_lim) {
            Ok(rep) => (rep.value, rep.status),
            Err(e) => (json!({ "error": format!("{e:#}") }), classify(&e)),
        };
        status = status.worst(st);
        results.push(json!({
            "index": i,
            "command": t.command,
            "status": match st {
                Status::Computed => "computed",
                Status::Violated => "violated",
                Status::Invalid => "invalid",
            },
            "result": value,
        }));
    }
    Ok(Report {
        value: json!({ "tasks": results }),
        status,
    })
}

fn run_task(r: &Resolved, t: &TaskSpec, lim: Limits) -> Result<Report> {
    let module = || &r.modules[t.module.as_ref().expect("validated")].1;
    let cochain = |c: &Option<String>| {
        let (m, x) = &r.cochains[c.as_ref().expect("validated")];
        (&r.modules[m].1, x)
    };
    let subset = t.cover.as_ref().map(|c| r.covers[c].1.clone());
    match t.command.as_str() {
        "cohomology" => cohomology_report(module(), t.degree, false, lim),
        "sm" => sm_report(module(), t.degree, lim),
        "cech" => {
            let choice = match &subset {
                Some(v) => CoverChoice {
                    kind: CoverKind::Translate,
                    subset: v.clone(),
                },
                None => CoverChoice {
                    kind: CoverKind::Singleton,
                    subset: Vec::new(),
                },
            };
            cech_report(module(), &choice, lim)
        }
        "tau" => {
            let (m, f) = cochain(&t.cochain);
            let opts = TauOptions {
                degree: f.degree(),
                subset: subset.unwrap_or_default(),
                samples: 2,
                seed: 0,
            };
            tau_report_on(m, &opts, None, std::slice::from_ref(f))
        }
        "cup" => {
            let (m, a) = cochain(&t.left);
            let (_, b) = cochain(&t.right);
            let pr = Pairing::multiplication(m)?;
            let prod = cup_product(&pr, a, b)?;
            let h = cohomology(m, prod.degree())?;
            let value = if h.is_cocycle(prod.values()) {
                let c = h.classify(prod.values())?;
                json!({ "degree": prod.degree(), "cocycle": true, "class": bigs(&c), "zero": c.iter().all(Zero::is_zero) })
            } else {
                json!({ "degree": prod.degree(), "cocycle": false })
            };
            Ok(Report::computed(value))
        }
        "xmod" => {
            let (m, f) = cochain(&t.cochain);
            let ok = xmod_roundtrip_one(m, f)?;
            Ok(Report::verdict(json!({ "roundtrip": ok }), ok))
        }
        "extension" => {
            let (m, f) = cochain(&t.cochain);
            match extension_from_2cocycle(m, f) {
                Ok(e) => {
                    let census: Vec<Value> = e
                        .order_census()
                        .iter()
                        .map(|(o, c)| json!({ "order": o, "count": c }))
                        .collect();
                    Ok(Report::verdict(
                        json!({ "order": e.group().order(), "abelian": e.group().is_abelian(), "element_orders": census }),
                        true,
                    ))
                }
                Err(CoreError::NonAssociative(a, b, c)) => Ok(Report::verdict(
                    json!({ "associative": false, "witness": [a, b, c] }),
                    false,
                )),
                Err(e) => Err(e.into()),
            }
        }
        "lie" => {
            let g = &r.lie[t.algebra.as_ref().expect("validated")];
            let m = match t.lie_module.as_deref() {
                Some("adjoint") => LieModule::adjoint(g),
                _ => LieModule::trivial(g, 1),
            };
            lie_report(g, &m)
        }
        other => unreachable!("unvalidated command {other}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_associative_table_reports_the_triple() {
        // every element is its own inverse, but 1·2 = 2·1 = 1
        let doc = r#"{ "groups": { "G": { "order": 3, "table": [0,1,2, 1,0,1, 2,1,0] } } }"#;
        let issues = resolve(doc).unwrap_err();
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].path, "groups.G.table");
        assert_eq!(issues[0].witness, Some(vec![1, 1, 2]));
    }

    #[test]
    fn unresolved_names_are_reported_with_paths() {
        let doc = r#"{
            "modules": { "A": { "group": "H", "rank": 1 } },
            "tasks": [ { "command": "cohomology", "module": "A" }, { "command": "frobnicate" } ]
        }"#;
        let issues = resolve(doc).unwrap_err();
        let paths: Vec<&str> = issues.iter().map(|i| i.path.as_str()).collect();
        assert_eq!(
            paths,
            vec!["modules.A.group", "tasks[0].module", "tasks[1].command"]
        );
    }

    #[test]
    fn wrong_cochain_length() {
        let doc = r#"{
            "modules": { "A": { "group": "Z2", "fixture": "Z2triv" } },
            "cochains": { "f": { "module": "A", "degree": 2, "values": [0, 1] } }
        }"#;
        let issues = resolve(doc).unwrap_err();
        assert_eq!(issues[0].path, "cochains.f.values");
    }

    #[test]
    fn explicit_module_matches_fixture() {
        let doc = r#"{
            "groups": { "C2": { "order": 2, "table": [0, 1, 1, 0] } },
            "modules": { "S": { "group": "C2", "rank": 1, "action": [[[1]], [[-1]]] } }
        }"#;
        let r = resolve(doc).unwrap();
        let (_, m) = &r.modules["S"];
        assert_eq!(
            m.actions(),
            fixtures::module("Z2", "Zsign").unwrap().actions()
        );
    }
}
