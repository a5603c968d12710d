//! Workspace files and the command-line surface.
//!
//! A workspace is a JSON document:
//!
//! ```json
//! {
//!   "field": "Q",
//!   "algebra": {
//!     "name": "gl(1|1)",
//!     "even": ["e11", "e22"],
//!     "odd": ["e12", "e21"],
//!     "brackets": { "[e12, e21]": { "e11": "1", "e22": "1" } }
//!   },
//!   "group": { "cyclic": 2 },
//!   "action": { "generator": { "e11": { "e22": "1" }, "e22": { "e11": "1" } } },
//!   "modules": { "z": { "kind": "trivial", "even": ["z"] } },
//!   "cochains": { "mu1": { "arity": 2, "parity": 0, "values": { "(e11, e12)": { "e21": "1" } } } },
//!   "deformations": { "mu": { "terms": ["mu1"] } }
//! }
//! ```
//!
//! Brackets list only pairs `[x, y]` with `x` not after `y` in basis order;
//! the rest follows from super-antisymmetry. Scalars are strings in the
//! syntax of [`FieldSpec::parse`]. An action image lists the column of each
//! basis vector. The module `adjoint` always exists.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::cochain::{annihilator, cohomology, derivations, Cochain, CochainSpace, CohomologyReport};
use crate::deformation::{self, Deformation, Mode};
use crate::extension::{build_extension, classify_extensions, extensions_equivalent, jacobi_iff_cocycle};
use crate::graded::{canonicalize, GradedBasis, Parity, Vector};
use crate::group::{validate_action, ActionRep, FiniteGroup, GroupError, Symmetry};
use crate::linalg::Matrix;
use crate::nr::{bracket_to_element, mc_check, NRElement};
use crate::scalar::{FieldSpec, Scalar};
use crate::superalgebra::{validate_module, validate_superalgebra, Counterexample, LModule, LieSuperalgebra, StructureConstants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorkspaceError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error{}: {message}", fmt_location(.location))]
    Parse {
        location: Option<(usize, usize)>,
        message: String,
    },
    #[error("validation failed: {axiom}: {}", .witnesses.join("; "))]
    Validation { axiom: String, witnesses: Vec<String> },
}

fn fmt_location(loc: &Option<(usize, usize)>) -> String {
    match loc {
        Some((l, c)) => format!(" at line {l}, column {c}"),
        None => String::new(),
    }
}

impl WorkspaceError {
    /// 1 for a failed mathematical check, 2 for unusable input.
    pub fn exit_code(&self) -> i32 {
        match self {
            WorkspaceError::Validation { .. } => 1,
            _ => 2,
        }
    }
}

/// Errors raised while building a workspace from a parsed document.
enum BuildError {
    Input { message: String, near: Option<String> },
    Validation { axiom: String, witnesses: Vec<String> },
}

fn input(message: impl Into<String>, near: &str) -> BuildError {
    BuildError::Input {
        message: message.into(),
        near: Some(near.to_string()),
    }
}

fn invalid(axiom: impl Into<String>, witnesses: Vec<String>) -> BuildError {
    BuildError::Validation {
        axiom: axiom.into(),
        witnesses,
    }
}

type VecDoc = BTreeMap<String, String>;
type Images = BTreeMap<String, VecDoc>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    field: String,
    algebra: AlgebraDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<GroupDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    action: Option<ActionDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    modules: BTreeMap<String, ModuleDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    cochains: BTreeMap<String, CochainDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    deformations: BTreeMap<String, DeformationDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default)]
    even: Vec<String>,
    #[serde(default)]
    odd: Vec<String>,
    #[serde(default)]
    brackets: BTreeMap<String, VecDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cyclic: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    odd: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generator: Option<Images>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    elements: Option<BTreeMap<String, Images>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleDoc {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    even: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    odd: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    action: Option<BTreeMap<String, VecDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group_action: Option<ActionDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CochainDoc {
    #[serde(default = "adjoint_name")]
    module: String,
    arity: usize,
    parity: u8,
    #[serde(default)]
    values: BTreeMap<String, VecDoc>,
}

fn adjoint_name() -> String {
    ADJOINT.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeformationDoc {
    terms: Vec<String>,
}

pub const ADJOINT: &str = "adjoint";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupEntry {
    pub group: Arc<FiniteGroup>,
    /// Declared as `Z_n`; serialized by its generator.
    pub cyclic: bool,
    pub action: ActionRep,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleKind {
    Adjoint,
    /// The adjoint action restricted to the span of these algebra labels.
    Restriction(Vec<String>),
    Trivial,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleEntry {
    pub kind: ModuleKind,
    pub module: LModule,
    /// The group action on the module, when the workspace has a group.
    pub action: Option<ActionRep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainEntry {
    pub module: String,
    pub cochain: Cochain,
}

/// A validated workspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workspace {
    pub field: FieldSpec,
    pub name: Option<String>,
    pub algebra: LieSuperalgebra,
    pub group: Option<GroupEntry>,
    pub modules: BTreeMap<String, ModuleEntry>,
    pub cochains: BTreeMap<String, CochainEntry>,
    /// Names of `mu_1, .., mu_N` for each deformation.
    pub deformations: BTreeMap<String, Vec<String>>,
}

pub fn parse_field(text: &str) -> Option<FieldSpec> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "Q" {
        return Some(FieldSpec::Rational);
    }
    let m: u32 = t.strip_prefix("Q(zeta_")?.strip_suffix(')')?.parse().ok()?;
    (m >= 1).then(|| if m == 1 { FieldSpec::Rational } else { FieldSpec::Cyclotomic(m) })
}

/// Splits `"[a, b]"` or `"(a, b, c)"` into its labels.
fn split_key(key: &str) -> Option<Vec<String>> {
    let t = key.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .or_else(|| t.strip_prefix('(').and_then(|s| s.strip_suffix(')')))?;
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    Some(inner.split(',').map(|s| s.trim().to_string()).collect())
}

fn bracket_key(a: &str, b: &str) -> String {
    format!("[{a}, {b}]")
}

fn tuple_key(labels: &[&str]) -> String {
    format!("({})", labels.join(", "))
}

fn lookup(basis: &GradedBasis, label: &str, what: &str) -> Result<usize, BuildError> {
    basis
        .index_of(label)
        .ok_or_else(|| input(format!("unknown {what} label {label:?}"), label))
}

fn parse_scalar(field: FieldSpec, text: &str) -> Result<Scalar, BuildError> {
    field.parse(text).map_err(|e| input(e.to_string(), text))
}

fn parse_vector(field: FieldSpec, basis: &GradedBasis, doc: &VecDoc) -> Result<Vector, BuildError> {
    let mut coords = Vec::new();
    for (label, s) in doc {
        let k = lookup(basis, label, "basis")?;
        let c = parse_scalar(field, s)?;
        if !c.is_zero() {
            coords.push((k, c));
        }
    }
    coords.sort_by_key(|(k, _)| *k);
    Ok(Vector::from_sparse(field, basis.dim(), coords))
}

fn vector_doc(v: &Vector, basis: &GradedBasis) -> VecDoc {
    v.coords()
        .iter()
        .map(|(k, c)| (basis.name(*k).to_string(), c.to_string()))
        .collect()
}

fn images_matrix(field: FieldSpec, basis: &GradedBasis, images: &Images, what: &str) -> Result<Matrix, BuildError> {
    let d = basis.dim();
    let mut m = Matrix::zeros(field, d, d);
    for label in images.keys() {
        lookup(basis, label, "basis")?;
    }
    for j in 0..d {
        let name = basis.name(j);
        let col = images
            .get(name)
            .ok_or_else(|| input(format!("{what}: no image given for {name:?}"), what))?;
        for (r, c) in parse_vector(field, basis, col)?.coords() {
            m.set(*r, j, c.clone());
        }
    }
    Ok(m)
}

fn matrix_images(m: &Matrix, basis: &GradedBasis) -> Images {
    (0..basis.dim())
        .map(|j| {
            let col: VecDoc = (0..basis.dim())
                .filter_map(|r| {
                    let c = m.get(r, j);
                    (!c.is_zero()).then(|| (basis.name(r).to_string(), c.to_string()))
                })
                .collect();
            (basis.name(j).to_string(), col)
        })
        .collect()
}

fn group_error(e: GroupError, g: &FiniteGroup) -> BuildError {
    let name = |i: usize| g.names().get(i).cloned().unwrap_or_else(|| i.to_string());
    match e {
        GroupError::NotAssociative(a, b, c) => invalid(
            "group associativity",
            vec![format!("({}, {}, {})", name(a), name(b), name(c))],
        ),
        GroupError::NotLatin(r) => invalid("group table is a Latin square", vec![format!("row {r}")]),
        GroupError::NoIdentity => invalid("group identity", vec!["no two-sided identity".into()]),
        other => BuildError::Input {
            message: other.to_string(),
            near: None,
        },
    }
}

fn parse_action(
    field: FieldSpec,
    g: &GroupEntry,
    space: &Arc<GradedBasis>,
    doc: Option<&ActionDoc>,
    what: &str,
) -> Result<ActionRep, BuildError> {
    let Some(doc) = doc else {
        return Ok(ActionRep::trivial(field, g.group.clone(), space.clone()));
    };
    let group = &g.group;
    let rep = match (&doc.generator, &doc.elements) {
        (Some(gen), None) => {
            if !g.cyclic {
                return Err(input(format!("{what}: a generator only describes a cyclic group"), "generator"));
            }
            let m = images_matrix(field, space, gen, what)?;
            ActionRep::cyclic_from_generator(group.clone(), space.clone(), m)
        }
        (None, Some(elems)) => {
            for name in elems.keys() {
                if !group.names().contains(name) {
                    return Err(input(format!("{what}: unknown group element {name:?}"), name));
                }
            }
            let mut mats = Vec::new();
            for (i, name) in group.names().iter().enumerate() {
                match elems.get(name) {
                    Some(im) => mats.push(images_matrix(field, space, im, what)?),
                    None if i == group.identity() => mats.push(Matrix::identity(field, space.dim())),
                    None => return Err(input(format!("{what}: no matrix for group element {name:?}"), what)),
                }
            }
            ActionRep::new(group.clone(), space.clone(), mats)
        }
        _ => {
            return Err(input(format!("{what}: give exactly one of \"generator\" and \"elements\""), what));
        }
    };
    rep.map_err(|e| input(format!("{what}: {e}"), what))
}

fn action_doc(g: &GroupEntry, rep: &ActionRep) -> Option<ActionDoc> {
    let field = rep.matrix(0).field();
    let id = Matrix::identity(field, rep.space().dim());
    if rep.matrices().iter().all(|m| *m == id) {
        return None;
    }
    if g.cyclic {
        let gen = rep.matrix(1 % g.group.order());
        Some(ActionDoc {
            generator: Some(matrix_images(gen, rep.space())),
            elements: None,
        })
    } else {
        let elements = g
            .group
            .names()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != g.group.identity())
            .map(|(i, n)| (n.clone(), matrix_images(rep.matrix(i), rep.space())))
            .collect();
        Some(ActionDoc {
            generator: None,
            elements: Some(elements),
        })
    }
}

fn counterexample_text(c: &Counterexample, basis: &GradedBasis, target: &GradedBasis) -> String {
    let names: Vec<&str> = c.indices.iter().map(|&i| basis.name(i)).collect();
    format!(
        "{}: {} vs {}",
        tuple_key(&names),
        fmt_vector(&c.lhs, target),
        fmt_vector(&c.rhs, target)
    )
}

fn build(doc: &Document) -> Result<Workspace, BuildError> {
    let field = parse_field(&doc.field).ok_or_else(|| input(format!("unknown field {:?}", doc.field), &doc.field))?;
    let a = &doc.algebra;
    let basis = GradedBasis::from_parts(a.even.clone(), a.odd.clone())
        .map_err(|e| input(format!("algebra basis: {e}"), "even"))?;
    let basis = Arc::new(basis);
    let mut sc = StructureConstants::zero(field, basis.clone());
    for (key, val) in &a.brackets {
        let labels = split_key(key).filter(|l| l.len() == 2).ok_or_else(|| input("bracket keys look like \"[x, y]\"", key))?;
        let i = lookup(&basis, &labels[0], "algebra")?;
        let j = lookup(&basis, &labels[1], "algebra")?;
        if i > j {
            return Err(input(
                format!("list [{}, {}] instead; only pairs in basis order are given", labels[1], labels[0]),
                key,
            ));
        }
        sc.set_pair(i, j, parse_vector(field, &basis, val)?);
    }
    let report = validate_superalgebra(&sc);
    if !report.ok() {
        let axiom = report.counterexamples.first().map(|c| c.axiom.to_string()).unwrap_or_default();
        let witnesses = report
            .counterexamples
            .iter()
            .map(|c| counterexample_text(c, &basis, &basis))
            .collect();
        return Err(invalid(axiom, witnesses));
    }
    let algebra = LieSuperalgebra::new(sc).expect("validated above");

    let group = match &doc.group {
        None => {
            if doc.action.is_some() {
                return Err(input("an action needs a group", "action"));
            }
            None
        }
        Some(gd) => {
            let (g, cyclic) = match (&gd.cyclic, &gd.table) {
                (Some(n), None) => {
                    if *n == 0 || gd.names.is_some() {
                        return Err(input("a cyclic group has order >= 1 and fixed names g^k", "cyclic"));
                    }
                    (FiniteGroup::cyclic(*n), true)
                }
                (None, Some(t)) => {
                    let g = FiniteGroup::new(t.clone()).map_err(|e| group_error(e, &FiniteGroup::trivial()))?;
                    let g = match &gd.names {
                        Some(n) => {
                            let mut sorted = n.clone();
                            sorted.sort();
                            sorted.dedup();
                            if n.len() != g.order() || sorted.len() != n.len() {
                                return Err(input("group names must be distinct, one per element", "names"));
                            }
                            g.with_names(n.clone())
                        }
                        None => g,
                    };
                    (g, false)
                }
                _ => return Err(input("give exactly one of \"cyclic\" and \"table\"", "group")),
            };
            let mut odd = vec![false; g.order()];
            for name in &gd.odd {
                let i = g
                    .names()
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| input(format!("unknown group element {name:?}"), name))?;
                odd[i] = true;
            }
            let g = Arc::new(g.with_odd_elements(odd));
            let mut entry = GroupEntry {
                group: g.clone(),
                cyclic,
                action: ActionRep::trivial(field, g, basis.clone()),
            };
            entry.action = parse_action(field, &entry, &basis, doc.action.as_ref(), "action")?;
            let r = validate_action(&entry.action, &algebra);
            if !r.ok() {
                return Err(invalid(action_axiom(&r), r.failures.clone()));
            }
            Some(entry)
        }
    };

    let mut modules = BTreeMap::new();
    modules.insert(
        ADJOINT.to_string(),
        ModuleEntry {
            kind: ModuleKind::Adjoint,
            module: LModule::adjoint(&algebra),
            action: group.as_ref().map(|g| g.action.clone()),
        },
    );
    for (name, md) in &doc.modules {
        let entry = build_module(field, &algebra, group.as_ref(), name, md)?;
        if name == ADJOINT && entry.kind != ModuleKind::Adjoint {
            return Err(input("the name \"adjoint\" is reserved for the adjoint module", name));
        }
        modules.insert(name.clone(), entry);
    }

    let mut cochains = BTreeMap::new();
    for (name, cd) in &doc.cochains {
        let me = modules
            .get(&cd.module)
            .ok_or_else(|| input(format!("cochain {name}: unknown module {:?}", cd.module), &cd.module))?;
        let cochain = build_cochain(field, &algebra, &me.module, name, cd)?;
        cochains.insert(
            name.clone(),
            CochainEntry {
                module: cd.module.clone(),
                cochain,
            },
        );
    }

    let mut deformations = BTreeMap::new();
    for (name, dd) in &doc.deformations {
        for t in &dd.terms {
            let c = cochains
                .get(t)
                .ok_or_else(|| input(format!("deformation {name}: unknown cochain {t:?}"), t))?;
            if c.module != ADJOINT || c.cochain.arity() != 2 || c.cochain.parity() != Parity::Even {
                return Err(input(
                    format!("deformation {name}: {t} must be an even 2-cochain with values in the adjoint module"),
                    t,
                ));
            }
        }
        deformations.insert(name.clone(), dd.terms.clone());
    }

    Ok(Workspace {
        field,
        name: a.name.clone(),
        algebra,
        group,
        modules,
        cochains,
        deformations,
    })
}

fn action_axiom(r: &crate::group::ActionReport) -> &'static str {
    if !r.group_even_ok {
        "degree-0 action (odd group elements are not supported)"
    } else if !r.identity_ok {
        "identity acts trivially"
    } else if !r.degree_zero_ok {
        "action preserves parity"
    } else if !r.homomorphism_ok {
        "action is a homomorphism"
    } else {
        "action respects the bracket"
    }
}

fn build_module(
    field: FieldSpec,
    l: &LieSuperalgebra,
    group: Option<&GroupEntry>,
    name: &str,
    md: &ModuleDoc,
) -> Result<ModuleEntry, BuildError> {
    let what = format!("module {name}");
    let extra = |present: bool, key: &str| -> Result<(), BuildError> {
        if present {
            Err(input(format!("{what}: field \"{key}\" does not apply to kind {:?}", md.kind), name))
        } else {
            Ok(())
        }
    };
    let own_space = || -> Result<Arc<GradedBasis>, BuildError> {
        let even = md.even.clone().unwrap_or_default();
        let odd = md.odd.clone().unwrap_or_default();
        GradedBasis::from_parts(even, odd)
            .map(Arc::new)
            .map_err(|e| input(format!("{what}: {e}"), name))
    };
    let (kind, module, action) = match md.kind.as_str() {
        "adjoint" => {
            extra(md.labels.is_some() || md.even.is_some() || md.odd.is_some(), "labels/even/odd")?;
            extra(md.action.is_some() || md.group_action.is_some(), "action")?;
            (ModuleKind::Adjoint, LModule::adjoint(l), group.map(|g| g.action.clone()))
        }
        "restriction" => {
            extra(md.even.is_some() || md.odd.is_some(), "even/odd")?;
            extra(md.action.is_some() || md.group_action.is_some(), "action")?;
            let labels = md.labels.clone().ok_or_else(|| input(format!("{what}: missing \"labels\""), name))?;
            let mut idx = Vec::new();
            for lab in &labels {
                idx.push(lookup(l.basis(), lab, "algebra")?);
            }
            let mut sorted = idx.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != idx.len() {
                return Err(input(format!("{what}: repeated label"), name));
            }
            let module = LModule::adjoint_restriction(l, &idx).map_err(|e| {
                invalid(format!("{what} is closed under the bracket"), vec![e.to_string()])
            })?;
            let action = match group {
                None => None,
                Some(g) => Some(restrict_action(g, l.basis(), module.space(), &what)?),
            };
            (ModuleKind::Restriction(labels), module, action)
        }
        "trivial" => {
            extra(md.labels.is_some() || md.action.is_some(), "labels/action")?;
            let space = own_space()?;
            let action = group_action(field, group, &space, md, &what)?;
            (ModuleKind::Trivial, LModule::trivial(l, space), action)
        }
        "explicit" => {
            extra(md.labels.is_some(), "labels")?;
            let space = own_space()?;
            let dm = space.dim();
            let mut table = vec![Vector::zero(field, dm); l.dim() * dm];
            for (key, val) in md.action.iter().flatten() {
                let labels = split_key(key)
                    .filter(|v| v.len() == 2)
                    .ok_or_else(|| input("action keys look like \"[x, m]\"", key))?;
                let i = lookup(l.basis(), &labels[0], "algebra")?;
                let j = lookup(&space, &labels[1], "module")?;
                table[i * dm + j] = parse_vector(field, &space, val)?;
            }
            let module = LModule::new(field, l.dim(), space.clone(), table).expect("sizes match");
            let r = validate_module(l, &module);
            if !r.ok() {
                let axiom = if r.homogeneity_ok { "module axiom" } else { "homogeneity" };
                let witnesses = r
                    .counterexamples
                    .iter()
                    .map(|c| {
                        let (x, y, m) = (c.indices[0], c.indices.get(1).copied(), c.indices.last().copied());
                        let mut names = vec![l.basis().name(x).to_string()];
                        if c.indices.len() == 3 {
                            names.push(l.basis().name(y.unwrap()).to_string());
                        }
                        names.push(space.name(m.unwrap()).to_string());
                        format!("({}): {} vs {}", names.join(", "), fmt_vector(&c.lhs, &space), fmt_vector(&c.rhs, &space))
                    })
                    .collect();
                return Err(invalid(format!("{what}: {axiom}"), witnesses));
            }
            let action = group_action(field, group, &space, md, &what)?;
            (ModuleKind::Explicit, module, action)
        }
        other => return Err(input(format!("{what}: unknown kind {other:?}"), other)),
    };
    if let (Some(g), Some(rep)) = (group, &action) {
        let sym = Symmetry::new(g.action.clone(), rep.clone()).map_err(|e| input(format!("{what}: {e}"), name))?;
        let r = sym.validate(l, &module);
        if !r.ok() {
            return Err(invalid(format!("{what}: {}", action_axiom(&r)), r.failures.clone()));
        }
    }
    Ok(ModuleEntry { kind, module, action })
}

fn group_action(
    field: FieldSpec,
    group: Option<&GroupEntry>,
    space: &Arc<GradedBasis>,
    md: &ModuleDoc,
    what: &str,
) -> Result<Option<ActionRep>, BuildError> {
    match group {
        None if md.group_action.is_some() => Err(input(format!("{what}: a group action needs a group"), "group_action")),
        None => Ok(None),
        Some(g) => parse_action(field, g, space, md.group_action.as_ref(), what).map(Some),
    }
}

fn restrict_action(g: &GroupEntry, lb: &GradedBasis, space: &Arc<GradedBasis>, what: &str) -> Result<ActionRep, BuildError> {
    let idx: Vec<usize> = space.names().iter().map(|n| lb.index_of(n).unwrap()).collect();
    let mut mats = Vec::new();
    for (gi, m) in g.action.matrices().iter().enumerate() {
        for &c in &idx {
            if let Some(r) = (0..lb.dim()).find(|r| !idx.contains(r) && !m.get(*r, c).is_zero()) {
                return Err(invalid(
                    format!("{what} is stable under the group"),
                    vec![format!("{} moves {} onto {}", g.group.names()[gi], lb.name(c), lb.name(r))],
                ));
            }
        }
        mats.push(m.select_rows(&idx).select_columns(&idx));
    }
    ActionRep::new(g.group.clone(), space.clone(), mats).map_err(|e| input(format!("{what}: {e}"), what))
}

fn build_cochain(field: FieldSpec, l: &LieSuperalgebra, m: &LModule, name: &str, cd: &CochainDoc) -> Result<Cochain, BuildError> {
    let space = CochainSpace::for_pair(l, m, cd.arity);
    let parity = match cd.parity {
        0 => Parity::Even,
        1 => Parity::Odd,
        _ => return Err(input(format!("cochain {name}: parity is 0 or 1"), name)),
    };
    let mut seen = vec![false; space.tuples().len()];
    let mut coords: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (key, val) in &cd.values {
        let labels = split_key(key)
            .filter(|v| v.len() == cd.arity)
            .ok_or_else(|| input(format!("cochain {name}: keys are {}-tuples like \"(x, y)\"", cd.arity), key))?;
        let mut t = Vec::new();
        for lab in &labels {
            t.push(lookup(l.basis(), lab, "algebra")?);
        }
        let v = parse_vector(field, m.space(), val)?;
        let Some((sign, canon)) = canonicalize(&t, l.basis().parities()) else {
            if v.is_zero() {
                continue;
            }
            return Err(input(format!("cochain {name}: {key} repeats an even vector, so the value must be 0"), key));
        };
        let ti = space.tuple_index(&canon).expect("canonical tuple");
        if std::mem::replace(&mut seen[ti], true) {
            return Err(input(format!("cochain {name}: {key} is given twice up to reordering"), key));
        }
        let s = field.from_int(sign);
        for (k, c) in v.coords() {
            coords.insert(space.coord(ti, *k), c * &s);
        }
    }
    let coords = Vector::from_sparse(field, space.dim(), coords.into_iter().collect());
    Cochain::new(space, parity, coords).map_err(|e| input(format!("cochain {name}: {e}"), name))
}

impl Workspace {
    /// A workspace holding only an algebra (and its adjoint module).
    pub fn from_algebra(algebra: LieSuperalgebra, name: Option<String>) -> Workspace {
        let mut modules = BTreeMap::new();
        modules.insert(
            ADJOINT.to_string(),
            ModuleEntry {
                kind: ModuleKind::Adjoint,
                module: LModule::adjoint(&algebra),
                action: None,
            },
        );
        Workspace {
            field: algebra.field(),
            name,
            algebra,
            group: None,
            modules,
            cochains: BTreeMap::new(),
            deformations: BTreeMap::new(),
        }
    }

    /// Parses and validates a document.
    pub fn parse(text: &str) -> Result<Workspace, WorkspaceError> {
        let doc: Document = serde_json::from_str(text).map_err(|e| WorkspaceError::Parse {
            location: Some((e.line(), e.column())),
            message: e.to_string(),
        })?;
        build(&doc).map_err(|e| match e {
            BuildError::Input { message, near } => WorkspaceError::Parse {
                location: near.and_then(|n| locate(text, &n)),
                message,
            },
            BuildError::Validation { axiom, witnesses } => WorkspaceError::Validation { axiom, witnesses },
        })
    }

    pub fn load(path: &Path) -> Result<Workspace, WorkspaceError> {
        let text = std::fs::read_to_string(path).map_err(|e| WorkspaceError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Workspace::parse(&text)
    }

    /// The canonical document: keys sorted, brackets only in basis order,
    /// zero entries dropped.
    pub fn serialize(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_document()).expect("serializable");
        s.push('\n');
        s
    }

    fn to_document(&self) -> Document {
        let l = &self.algebra;
        let basis = l.basis();
        let names = |p: Parity| -> Vec<String> {
            (0..basis.dim()).filter(|&i| basis.parity(i) == p).map(|i| basis.name(i).to_string()).collect()
        };
        let mut brackets = BTreeMap::new();
        for i in 0..l.dim() {
            for j in i..l.dim() {
                let v = l.bracket_basis(i, j);
                if !v.is_zero() {
                    brackets.insert(bracket_key(basis.name(i), basis.name(j)), vector_doc(v, basis));
                }
            }
        }
        let (group, action) = match &self.group {
            None => (None, None),
            Some(g) => {
                let odd: Vec<String> = g.group.odd_elements().into_iter().map(|i| g.group.names()[i].clone()).collect();
                let gd = if g.cyclic {
                    GroupDoc {
                        cyclic: Some(g.group.order()),
                        table: None,
                        names: None,
                        odd,
                    }
                } else {
                    GroupDoc {
                        cyclic: None,
                        table: Some(g.group.table().to_vec()),
                        names: Some(g.group.names().to_vec()),
                        odd,
                    }
                };
                (Some(gd), action_doc(g, &g.action))
            }
        };
        let mut modules = BTreeMap::new();
        for (name, e) in &self.modules {
            if name == ADJOINT {
                continue;
            }
            let space = e.module.space();
            let parts = |p: Parity| -> Vec<String> {
                (0..space.dim()).filter(|&i| space.parity(i) == p).map(|i| space.name(i).to_string()).collect()
            };
            let gaction = match (&self.group, &e.action) {
                (Some(g), Some(rep)) => action_doc(g, rep),
                _ => None,
            };
            let md = match &e.kind {
                ModuleKind::Adjoint => ModuleDoc {
                    kind: "adjoint".into(),
                    labels: None,
                    even: None,
                    odd: None,
                    action: None,
                    group_action: None,
                },
                ModuleKind::Restriction(labels) => ModuleDoc {
                    kind: "restriction".into(),
                    labels: Some(labels.clone()),
                    even: None,
                    odd: None,
                    action: None,
                    group_action: None,
                },
                ModuleKind::Trivial => ModuleDoc {
                    kind: "trivial".into(),
                    labels: None,
                    even: Some(parts(Parity::Even)),
                    odd: Some(parts(Parity::Odd)),
                    action: None,
                    group_action: gaction,
                },
                ModuleKind::Explicit => {
                    let mut act = BTreeMap::new();
                    for i in 0..l.dim() {
                        for j in 0..space.dim() {
                            let v = e.module.act_basis(i, j);
                            if !v.is_zero() {
                                act.insert(bracket_key(basis.name(i), space.name(j)), vector_doc(v, space));
                            }
                        }
                    }
                    ModuleDoc {
                        kind: "explicit".into(),
                        labels: None,
                        even: Some(parts(Parity::Even)),
                        odd: Some(parts(Parity::Odd)),
                        action: Some(act),
                        group_action: gaction,
                    }
                }
            };
            modules.insert(name.clone(), md);
        }
        let cochains = self
            .cochains
            .iter()
            .map(|(name, e)| {
                let c = &e.cochain;
                let space = c.space();
                let mut values = BTreeMap::new();
                for t in space.tuples() {
                    let v = c.eval_basis(t);
                    if !v.is_zero() {
                        let labels: Vec<&str> = t.iter().map(|&i| basis.name(i)).collect();
                        values.insert(tuple_key(&labels), vector_doc(&v, space.module()));
                    }
                }
                let cd = CochainDoc {
                    module: e.module.clone(),
                    arity: c.arity(),
                    parity: c.parity().bit(),
                    values,
                };
                (name.clone(), cd)
            })
            .collect();
        let deformations = self
            .deformations
            .iter()
            .map(|(n, t)| (n.clone(), DeformationDoc { terms: t.clone() }))
            .collect();
        Document {
            field: self.field.to_string(),
            algebra: AlgebraDoc {
                name: self.name.clone(),
                even: names(Parity::Even),
                odd: names(Parity::Odd),
                brackets,
            },
            group,
            action,
            modules,
            cochains,
            deformations,
        }
    }

    pub fn module(&self, name: &str) -> Option<&ModuleEntry> {
        self.modules.get(name)
    }

    /// The symmetry on `(L, M)` for a named module, `None` without a group.
    pub fn symmetry(&self, module: &str) -> Option<Symmetry> {
        let g = self.group.as_ref()?;
        let m = self.modules.get(module)?;
        Some(Symmetry {
            algebra: g.action.clone(),
            module: m.action.clone()?,
        })
    }

    pub fn deformation(&self, name: &str) -> Option<Result<Deformation, deformation::DeformationError>> {
        let terms = self.deformations.get(name)?;
        let higher = terms.iter().map(|t| self.cochains[t].cochain.clone()).collect();
        let rep = self.group.as_ref().map(|g| g.action.clone());
        Some(Deformation::new(self.algebra.clone(), rep, higher))
    }

    pub fn title(&self) -> String {
        self.name.clone().unwrap_or_else(|| {
            let (e, o) = self.algebra.basis().dims();
            format!("algebra of dimension ({e}|{o})")
        })
    }
}

/// Line and column (1-based) of the first occurrence of `"needle"`, or of
/// the bare text when it is not a whole string.
fn locate(text: &str, needle: &str) -> Option<(usize, usize)> {
    let quoted = format!("\"{needle}\"");
    let pos = text.find(&quoted).or_else(|| text.find(needle))?;
    let before = &text[..pos];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    Some((line, column))
}

/// `2*e11 - e22 + (z + 1)*e12`; `0` for the zero vector.
pub fn fmt_vector(v: &Vector, basis: &GradedBasis) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in v.coords() {
        let (neg, mag) = match c.as_rational() {
            Some(q) if *q < num_traits::Zero::zero() => (true, (-c).to_string()),
            Some(_) => (false, c.to_string()),
            None => (false, format!("({c})")),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            let _ = write!(out, "{mag}*");
        }
        out.push_str(basis.name(*k));
    }
    out
}

fn json_vector(v: &Vector, basis: &GradedBasis) -> Value {
    let mut m = Map::new();
    for (k, c) in v.coords() {
        m.insert(basis.name(*k).to_string(), Value::String(c.to_string()));
    }
    Value::Object(m)
}

/// Nonzero values of a cochain on canonical tuples, in order.
fn cochain_entries(c: &Cochain) -> Vec<(String, Vector)> {
    let basis = c.space().algebra();
    c.space()
        .tuples()
        .iter()
        .filter_map(|t| {
            let v = c.eval_basis(t);
            let labels: Vec<&str> = t.iter().map(|&i| basis.name(i)).collect();
            (!v.is_zero()).then(|| (tuple_key(&labels), v))
        })
        .collect()
}

/// Lists at most this many nonzero cochain values in text reports.
const MAX_LISTED: usize = 64;

fn push_entries(text: &mut String, c: &Cochain, indent: &str) {
    let entries = cochain_entries(c);
    let target = c.space().module();
    if entries.is_empty() {
        let _ = writeln!(text, "{indent}0");
    }
    for (k, v) in entries.iter().take(MAX_LISTED) {
        let _ = writeln!(text, "{indent}{k} -> {}", fmt_vector(v, target));
    }
    if entries.len() > MAX_LISTED {
        let _ = writeln!(text, "{indent}... {} more", entries.len() - MAX_LISTED);
    }
}

fn json_entries(c: &Cochain) -> Value {
    let target = c.space().module().clone();
    let mut m = Map::new();
    for (k, v) in cochain_entries(c) {
        m.insert(k, json_vector(&v, &target));
    }
    Value::Object(m)
}

fn yes(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "supercohom", about = "Equivariant cohomology and deformations of Lie superalgebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    emit: Emit,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate the algebra, group action, modules, cochains and deformations.
    Validate { file: String },
    /// Dimensions of equivariant cochains, cocycles, coboundaries and cohomology.
    Cohomology {
        file: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = ADJOINT)]
        module: String,
    },
    /// Check that the bracket (or a candidate 2-cochain) is a Maurer-Cartan element.
    McCheck {
        file: String,
        #[arg(long)]
        candidate: Option<String>,
    },
    /// Formal deformations.
    Deform {
        #[command(subcommand)]
        op: DeformOp,
    },
    /// Even equivariant derivations and inner derivations.
    Derivations {
        file: String,
        #[arg(long, default_value = ADJOINT)]
        module: String,
    },
    /// Extensions by an abelian module.
    #[command(args_conflicts_with_subcommands = true)]
    Extend {
        #[command(subcommand)]
        op: Option<ExtendOp>,
        file: Option<String>,
        #[arg(long)]
        cocycle: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum DeformOp {
    /// Check the deformation equation order by order.
    Check {
        file: String,
        #[arg(long)]
        deformation: String,
        /// Check the polynomial bracket exactly, not only modulo t^{N+1}.
        #[arg(long)]
        strict: bool,
    },
    /// The obstruction to extending to the next order.
    Obstruct {
        file: String,
        #[arg(long)]
        deformation: String,
    },
}

#[derive(Debug, Subcommand)]
enum ExtendOp {
    /// One extension per basis class of the even part of H^2_G(L; M).
    Classify {
        file: String,
        #[arg(long, default_value = ADJOINT)]
        module: String,
    },
}

/// Result of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn error(code: i32, msg: impl Into<String>) -> CommandOutput {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        CommandOutput {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Shipped fixtures, addressable as `fixture_NAME` or `NAME` when no such
/// file exists.
pub const FIXTURES: &[(&str, &str)] = &[
    ("gl11_z2", include_str!("../fixtures/gl11_z2.json")),
    ("gl21", include_str!("../fixtures/gl21.json")),
    ("sl11", include_str!("../fixtures/sl11.json")),
    ("super_poincare", include_str!("../fixtures/super_poincare.json")),
    ("super_heisenberg", include_str!("../fixtures/super_heisenberg.json")),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    let key = name.strip_prefix("fixture_").unwrap_or(name);
    let key = key.strip_suffix(".json").unwrap_or(key);
    FIXTURES.iter().find(|(n, _)| *n == key).map(|(_, t)| *t)
}

fn load_input(file: &str) -> Result<Workspace, WorkspaceError> {
    let path = Path::new(file);
    if path.exists() {
        return Workspace::load(path);
    }
    match fixture(file) {
        Some(text) => Workspace::parse(text),
        None => Err(WorkspaceError::Io {
            path: file.to_string(),
            message: "no such file or shipped fixture".into(),
        }),
    }
}

/// Number of worker threads requested through `SUPERCOHOM_THREADS`.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("SUPERCOHOM_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Runs a command on a dedicated pool of `threads` workers.
pub fn run_command_with_threads<S: AsRef<str> + Sync>(argv: &[S], threads: usize) -> CommandOutput {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| run_command(argv)),
        Err(e) => CommandOutput::error(2, format!("cannot start thread pool: {e}")),
    }
}

/// Parses `argv` (without the program name) and runs the command.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> CommandOutput {
    let args = std::iter::once("supercohom").chain(argv.iter().map(|s| s.as_ref()));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CommandOutput::error(code, text)
            };
        }
    };
    let file = match &cli.command {
        Command::Validate { file }
        | Command::Cohomology { file, .. }
        | Command::McCheck { file, .. }
        | Command::Derivations { file, .. } => file.clone(),
        Command::Deform { op } => match op {
            DeformOp::Check { file, .. } | DeformOp::Obstruct { file, .. } => file.clone(),
        },
        Command::Extend { op: Some(ExtendOp::Classify { file, .. }), .. } => file.clone(),
        Command::Extend { op: None, file, cocycle } => match (file, cocycle) {
            (Some(f), Some(_)) => f.clone(),
            _ => return CommandOutput::error(2, "usage: extend FILE --cocycle NAME | extend classify FILE"),
        },
    };
    let ws = match load_input(&file) {
        Ok(w) => w,
        Err(e) => {
            let code = e.exit_code();
            let (text, json) = match &e {
                WorkspaceError::Validation { axiom, witnesses } => {
                    let mut t = format!("{file}: validation failed\n  axiom: {axiom}\n");
                    for w in witnesses {
                        let _ = writeln!(t, "  witness: {w}");
                    }
                    t.push_str("result: FAIL\n");
                    (t, json!({"file": file, "pass": false, "axiom": axiom, "witnesses": witnesses}))
                }
                other => return CommandOutput::error(code, format!("{file}: {other}")),
            };
            return CommandOutput {
                code,
                stdout: render(cli.emit, text, json),
                stderr: String::new(),
            };
        }
    };
    let result = match &cli.command {
        Command::Validate { .. } => cmd_validate(&ws),
        Command::Cohomology { n, module, .. } => cmd_cohomology(&ws, *n, module),
        Command::McCheck { candidate, .. } => cmd_mc_check(&ws, candidate.as_deref()),
        Command::Deform { op: DeformOp::Check { deformation, strict, .. } } => cmd_deform_check(&ws, deformation, *strict),
        Command::Deform { op: DeformOp::Obstruct { deformation, .. } } => cmd_obstruct(&ws, deformation),
        Command::Derivations { module, .. } => cmd_derivations(&ws, module),
        Command::Extend { op: Some(ExtendOp::Classify { module, .. }), .. } => cmd_classify(&ws, module),
        Command::Extend { cocycle, .. } => cmd_extend(&ws, cocycle.as_deref().unwrap_or_default()),
    };
    match result {
        Ok((pass, text, json)) => CommandOutput {
            code: if pass { 0 } else { 1 },
            stdout: render(cli.emit, text, json),
            stderr: String::new(),
        },
        Err(msg) => CommandOutput::error(2, format!("{file}: {msg}")),
    }
}

fn render(emit: Emit, text: String, json: Value) -> String {
    match emit {
        Emit::Text => text,
        Emit::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("serializable");
            s.push('\n');
            s
        }
    }
}

/// `(pass, text report, json report)` or an input error message.
type Report = Result<(bool, String, Value), String>;

fn module_entry<'a>(ws: &'a Workspace, name: &str) -> Result<&'a ModuleEntry, String> {
    ws.module(name).ok_or_else(|| format!("unknown module {name:?}"))
}

fn dims_text(b: &GradedBasis) -> String {
    let (e, o) = b.dims();
    format!("({e}|{o})")
}

fn cmd_validate(ws: &Workspace) -> Report {
    let l = &ws.algebra;
    let mut t = String::new();
    let _ = writeln!(t, "workspace: {} over {}", ws.title(), ws.field);
    let r = validate_superalgebra(l);
    let _ = writeln!(t, "algebra: dimension {}", dims_text(l.basis()));
    let _ = writeln!(t, "  homogeneity            {}", yes(r.homogeneity_ok));
    let _ = writeln!(t, "  super-antisymmetry     {}", yes(r.antisymmetry_ok));
    let _ = writeln!(t, "  super Jacobi identity  {}", yes(r.jacobi_ok));
    let mut pass = r.ok();
    let mut j = json!({
        "workspace": ws.title(),
        "field": ws.field.to_string(),
        "algebra": {
            "dims": [l.basis().dims().0, l.basis().dims().1],
            "homogeneity": r.homogeneity_ok,
            "antisymmetry": r.antisymmetry_ok,
            "jacobi": r.jacobi_ok,
        },
    });
    if let Some(g) = &ws.group {
        let a = validate_action(&g.action, l);
        pass &= a.ok();
        let _ = writeln!(t, "group: order {} ({})", g.group.order(), g.group.names().join(", "));
        let _ = writeln!(t, "  action on algebra      {}", yes(a.ok()));
        j["group"] = json!({"order": g.group.order(), "elements": g.group.names(), "action_ok": a.ok()});
    }
    let mut mods = Vec::new();
    for (name, e) in &ws.modules {
        let r = validate_module(l, &e.module);
        let act = ws.symmetry(name).map(|s| s.validate(l, &e.module).ok());
        pass &= r.ok() && act.unwrap_or(true);
        let _ = writeln!(t, "module {name}: dimension {}", dims_text(e.module.space()));
        let _ = writeln!(t, "  module axiom           {}", yes(r.ok()));
        if let Some(a) = act {
            let _ = writeln!(t, "  group action           {}", yes(a));
        }
        mods.push(json!({"name": name, "dims": [e.module.space().dims().0, e.module.space().dims().1], "axiom": r.ok(), "group_action": act}));
    }
    j["modules"] = Value::Array(mods);
    let mut cos = Vec::new();
    for (name, e) in &ws.cochains {
        let c = &e.cochain;
        let eq = ws.symmetry(&e.module).map(|s| c.is_equivariant(&s));
        let _ = write!(t, "cochain {name}: arity {}, parity {}, module {}", c.arity(), c.parity().bit(), e.module);
        if let Some(b) = eq {
            let _ = write!(t, ", equivariant {}", if b { "yes" } else { "no" });
        }
        t.push('\n');
        cos.push(json!({"name": name, "arity": c.arity(), "parity": c.parity().bit(), "module": e.module, "equivariant": eq}));
    }
    j["cochains"] = Value::Array(cos);
    let mut defs = Vec::new();
    for name in ws.deformations.keys() {
        let d = ws.deformation(name).expect("listed");
        let ok = d.is_ok();
        pass &= ok;
        match d {
            Ok(d) => {
                let _ = writeln!(t, "deformation {name}: order {}, terms well formed ok", d.order());
            }
            Err(e) => {
                let _ = writeln!(t, "deformation {name}: FAIL ({e})");
            }
        }
        defs.push(json!({"name": name, "well_formed": ok}));
    }
    j["deformations"] = Value::Array(defs);
    let _ = writeln!(t, "result: {}", if pass { "PASS" } else { "FAIL" });
    j["pass"] = json!(pass);
    Ok((pass, t, j))
}

fn cohomology_json(r: &CohomologyReport) -> Value {
    let block = |p: Parity| {
        let b = r.block(p);
        json!({"cochains": b.cochains, "cocycles": b.cocycles, "coboundaries": b.coboundaries, "cohomology": b.cohomology})
    };
    json!({"even": block(Parity::Even), "odd": block(Parity::Odd)})
}

fn cmd_cohomology(ws: &Workspace, n: usize, module: &str) -> Report {
    let me = module_entry(ws, module)?;
    let l = &ws.algebra;
    let sym = ws.symmetry(module);
    let r = cohomology(n, l, &me.module, sym.as_ref()).map_err(|e| e.to_string())?;
    let mut t = String::new();
    let gtext = match &ws.group {
        Some(g) => format!("equivariant under a group of order {}", g.group.order()),
        None => "no group".to_string(),
    };
    let _ = writeln!(t, "H^{n} of {} with coefficients in {module}, {gtext}", ws.title());
    let _ = writeln!(t, "parity  cochains  cocycles  coboundaries  cohomology");
    for (p, label) in [(Parity::Even, "even"), (Parity::Odd, "odd")] {
        let b = r.block(p);
        let _ = writeln!(t, "{label:<6}  {:>8}  {:>8}  {:>12}  {:>10}", b.cochains, b.cocycles, b.coboundaries, b.cohomology);
    }
    let mut j = json!({"n": n, "module": module, "group_order": ws.group.as_ref().map(|g| g.group.order()), "dims": cohomology_json(&r)});
    let mut pass = true;
    let h0 = r.even.cohomology;
    if n == 0 {
        let ann = annihilator(l, &me.module, sym.as_ref()).ncols();
        let ok = ann == h0;
        pass &= ok;
        let _ = writeln!(t, "check: even H^0 = {h0}, invariant annihilator = {ann}  {}", yes(ok));
        j["check"] = json!({"annihilator": ann, "ok": ok});
    } else if n == 1 {
        let d = derivations(l, &me.module, sym.as_ref());
        let (der, inn) = (d.derivations.len(), d.inner.len());
        let ok = der - inn == h0;
        pass &= ok;
        let _ = writeln!(t, "check: even H^1 = {h0}, derivations - inner = {der} - {inn}  {}", yes(ok));
        j["check"] = json!({"derivations": der, "inner": inn, "ok": ok});
    }
    let _ = writeln!(t, "result: {}", if pass { "PASS" } else { "FAIL" });
    j["pass"] = json!(pass);
    Ok((pass, t, j))
}

fn cmd_derivations(ws: &Workspace, module: &str) -> Report {
    let me = module_entry(ws, module)?;
    let l = &ws.algebra;
    let sym = ws.symmetry(module);
    let d = derivations(l, &me.module, sym.as_ref());
    let h1 = cohomology(1, l, &me.module, sym.as_ref()).map_err(|e| e.to_string())?.even.cohomology;
    let ok = d.outer_dimension() == h1;
    let lb = l.basis();
    let mb = me.module.space();
    let describe = |m: &Matrix| -> (String, Value) {
        let mut parts = Vec::new();
        let mut obj = Map::new();
        for k in 0..lb.dim() {
            let v = Vector::from_dense(ws.field, &m.column(k));
            if !v.is_zero() {
                parts.push(format!("{} -> {}", lb.name(k), fmt_vector(&v, mb)));
                obj.insert(lb.name(k).to_string(), json_vector(&v, mb));
            }
        }
        let text = if parts.is_empty() { "0".to_string() } else { parts.join(", ") };
        (text, Value::Object(obj))
    };
    let mut t = String::new();
    let _ = writeln!(t, "even derivations of {} into {module}", ws.title());
    let _ = writeln!(t, "derivations: {}", d.derivations.len());
    let mut jd = Vec::new();
    for (i, m) in d.derivations.iter().enumerate() {
        let (s, v) = describe(m);
        let _ = writeln!(t, "  D{}: {s}", i + 1);
        jd.push(v);
    }
    let _ = writeln!(t, "inner derivations: {}", d.inner.len());
    let mut ji = Vec::new();
    for (i, m) in d.inner.iter().enumerate() {
        let (s, v) = describe(m);
        let _ = writeln!(t, "  I{}: {s}", i + 1);
        ji.push(v);
    }
    let _ = writeln!(t, "outer: {}", d.outer_dimension());
    let _ = writeln!(t, "check: even H^1 = {h1}  {}", yes(ok));
    let _ = writeln!(t, "result: {}", if ok { "PASS" } else { "FAIL" });
    let j = json!({
        "module": module,
        "derivations": jd,
        "inner": ji,
        "outer": d.outer_dimension(),
        "h1_even": h1,
        "pass": ok,
    });
    Ok((ok, t, j))
}

fn cmd_mc_check(ws: &Workspace, candidate: Option<&str>) -> Report {
    let (label, f0) = match candidate {
        None => ("bracket".to_string(), bracket_to_element(&ws.algebra)),
        Some(name) => {
            let e = ws.cochains.get(name).ok_or_else(|| format!("unknown cochain {name:?}"))?;
            if e.module != ADJOINT || e.cochain.arity() != 2 || e.cochain.parity() != Parity::Even {
                return Err(format!("candidate {name} must be an even 2-cochain with values in the adjoint module"));
            }
            (format!("cochain {name}"), NRElement::from_cochain(e.cochain.clone()).map_err(|e| e.to_string())?)
        }
    };
    let rep = ws.group.as_ref().map(|g| &g.action);
    let mut t = String::new();
    let _ = writeln!(t, "Maurer-Cartan check on {} for the {label}", ws.title());
    let r = match mc_check(&f0, rep) {
        Ok(r) => r,
        Err(crate::nr::NrError::NotEquivariant) => {
            let _ = writeln!(t, "equivariant: FAIL\nresult: FAIL");
            return Ok((false, t, json!({"candidate": label, "equivariant": false, "pass": false})));
        }
        Err(e) => return Err(e.to_string()),
    };
    let _ = writeln!(t, "[F0, F0] = 0          {}", yes(r.is_mc));
    let _ = writeln!(t, "super Jacobi identity {}", yes(r.jacobi_ok));
    let mut jr = Value::Object(Map::new());
    if let Some(c) = r.residual.cochain().filter(|c| !c.is_zero()) {
        let _ = writeln!(t, "nonzero values of [F0, F0]:");
        push_entries(&mut t, c, "  ");
        jr = json_entries(c);
    }
    let _ = writeln!(t, "result: {}", if r.is_mc { "PASS" } else { "FAIL" });
    let j = json!({"candidate": label, "equivariant": true, "is_mc": r.is_mc, "jacobi_ok": r.jacobi_ok, "residual": jr, "pass": r.is_mc});
    Ok((r.is_mc, t, j))
}

fn get_deformation(ws: &Workspace, name: &str) -> Result<Result<Deformation, String>, String> {
    match ws.deformation(name) {
        None => Err(format!("unknown deformation {name:?}")),
        Some(Ok(d)) => Ok(Ok(d)),
        Some(Err(e)) => Ok(Err(e.to_string())),
    }
}

fn cmd_deform_check(ws: &Workspace, name: &str, strict: bool) -> Report {
    let mode = if strict { Mode::Strict } else { Mode::Truncated };
    let mode_name = if strict { "strict" } else { "truncated" };
    let mut t = String::new();
    let d = match get_deformation(ws, name)? {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(t, "deformation {name}: {e}\nresult: FAIL");
            return Ok((false, t, json!({"deformation": name, "well_formed": false, "error": e, "pass": false})));
        }
    };
    let r = deformation::validate(&d, mode);
    let _ = writeln!(t, "deformation {name} of {}: order {}, mode {mode_name}", ws.title(), d.order());
    let _ = writeln!(t, "terms even and equivariant  {}", yes(r.terms_ok));
    let mut orders = Vec::new();
    for o in &r.orders {
        let n = cochain_entries(&o.residual).len();
        if o.ok {
            let _ = writeln!(t, "order {}: ok", o.r);
        } else {
            let _ = writeln!(t, "order {}: FAIL, deformation equation nonzero on {n} triples", o.r);
            push_entries(&mut t, &o.residual, "  ");
        }
        orders.push(json!({"order": o.r, "ok": o.ok, "residual": json_entries(&o.residual)}));
    }
    let inf = deformation::infinitesimal(&d).ok();
    let mut ji = Value::Null;
    if let Some(i) = &inf {
        let _ = writeln!(t, "infinitesimal: mu_{}, 2-cocycle {}", i.k, if i.is_cocycle { "yes" } else { "no" });
        ji = json!({"k": i.k, "is_cocycle": i.is_cocycle});
    }
    let pass = r.ok();
    let _ = writeln!(t, "result: {}", if pass { "PASS" } else { "FAIL" });
    let j = json!({"deformation": name, "mode": mode_name, "order": d.order(), "terms_ok": r.terms_ok, "orders": orders, "infinitesimal": ji, "pass": pass});
    Ok((pass, t, j))
}

fn cmd_obstruct(ws: &Workspace, name: &str) -> Report {
    let mut t = String::new();
    let d = match get_deformation(ws, name)? {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(t, "deformation {name}: {e}\nresult: FAIL");
            return Ok((false, t, json!({"deformation": name, "well_formed": false, "error": e, "pass": false})));
        }
    };
    let _ = writeln!(t, "obstruction for deformation {name} of {} at order {}", ws.title(), d.order() + 1);
    let r = match deformation::obstruction(&d) {
        Ok(r) => r,
        Err(deformation::DeformationError::NotValidated) => {
            let f = deformation::validate(&d, Mode::Truncated);
            let at = f.first_failure().map(|o| o.r);
            let _ = writeln!(t, "not a deformation modulo t^{}: fails at order {}", d.order() + 1, at.map_or("-".into(), |r| r.to_string()));
            let _ = writeln!(t, "result: FAIL");
            return Ok((false, t, json!({"deformation": name, "valid": false, "failing_order": at, "pass": false})));
        }
        Err(e) => return Err(e.to_string()),
    };
    if r.obstruction.is_zero() {
        let _ = writeln!(t, "obstruction: 0");
    } else {
        let _ = writeln!(t, "obstruction:");
        push_entries(&mut t, &r.obstruction, "  ");
    }
    let _ = writeln!(t, "obstruction is a 3-cocycle  {}", yes(r.closed));
    let _ = writeln!(t, "extendable                  {}", if r.extendable() { "yes" } else { "no" });
    let mut jn = Value::Null;
    if let Some(next) = &r.next_term {
        let _ = writeln!(t, "mu_{}:", d.order() + 1);
        push_entries(&mut t, next, "  ");
        jn = json_entries(next);
    }
    let pass = r.closed && r.extendable();
    let _ = writeln!(t, "result: {}", if pass { "PASS" } else { "FAIL" });
    let j = json!({
        "deformation": name,
        "valid": true,
        "obstruction": json_entries(&r.obstruction),
        "closed": r.closed,
        "extendable": r.extendable(),
        "next_term": jn,
        "pass": pass,
    });
    Ok((pass, t, j))
}

fn structure_entries(sc: &StructureConstants) -> Vec<(String, Vector)> {
    let b = sc.basis();
    let mut out = Vec::new();
    for i in 0..sc.dim() {
        for j in i..sc.dim() {
            let v = sc.bracket_basis(i, j);
            if !v.is_zero() {
                out.push((bracket_key(b.name(i), b.name(j)), v.clone()));
            }
        }
    }
    out
}

fn cmd_extend(ws: &Workspace, name: &str) -> Report {
    let e = ws.cochains.get(name).ok_or_else(|| format!("unknown cochain {name:?}"))?;
    let h = &e.cochain;
    if h.arity() != 2 || h.parity() != Parity::Even {
        return Err(format!("{name} must be an even 2-cochain"));
    }
    let me = module_entry(ws, &e.module)?;
    let l = &ws.algebra;
    let sym = ws.symmetry(&e.module);
    let equivariant = sym.as_ref().is_none_or(|s| h.is_equivariant(s));
    let jc = jacobi_iff_cocycle(l, &me.module, h).map_err(|e| e.to_string())?;
    let ext = build_extension(l, &me.module, h).map_err(|e| e.to_string())?;
    let structure_ok = ext.check_structure(l);
    let action_ok = sym.as_ref().is_none_or(|s| validate_action(&ext.action(s), &ext.structure).ok());
    let mut t = String::new();
    let _ = writeln!(t, "extension of {} by {} with cocycle {name}", ws.title(), e.module);
    let _ = writeln!(t, "dimension {}", dims_text(ext.structure.basis()));
    let _ = writeln!(t, "h equivariant              {}", yes(equivariant));
    let _ = writeln!(t, "h is a 2-cocycle           {}", yes(jc.is_cocycle));
    let _ = writeln!(t, "super Jacobi on E_h        {}", yes(jc.jacobi));
    let _ = writeln!(t, "M abelian ideal, E_h -> L  {}", yes(structure_ok));
    if sym.is_some() {
        let _ = writeln!(t, "group acts on E_h          {}", yes(action_ok));
    }
    let _ = writeln!(t, "brackets:");
    let mut jb = Map::new();
    for (k, v) in structure_entries(&ext.structure) {
        let _ = writeln!(t, "  {k} = {}", fmt_vector(&v, ext.structure.basis()));
        jb.insert(k, json_vector(&v, ext.structure.basis()));
    }
    let pass = equivariant && jc.is_cocycle && jc.jacobi && structure_ok && action_ok;
    let _ = writeln!(t, "result: {}", if pass { "PASS" } else { "FAIL" });
    let j = json!({
        "cocycle": name,
        "module": e.module,
        "equivariant": equivariant,
        "is_cocycle": jc.is_cocycle,
        "jacobi": jc.jacobi,
        "structure_ok": structure_ok,
        "action_ok": action_ok,
        "basis": ext.structure.basis().names(),
        "brackets": Value::Object(jb),
        "pass": pass,
    });
    Ok((pass, t, j))
}

fn cmd_classify(ws: &Workspace, module: &str) -> Report {
    let me = module_entry(ws, module)?;
    let l = &ws.algebra;
    let sym = ws.symmetry(module);
    let reps = classify_extensions(l, &me.module, sym.as_ref()).map_err(|e| e.to_string())?;
    let mut t = String::new();
    let _ = writeln!(t, "extensions of {} by {module}", ws.title());
    let _ = writeln!(t, "even H^2 dimension: {}", reps.len());
    let _ = writeln!(t, "split extension: h = 0");
    let mut pass = true;
    let mut jr = Vec::new();
    for (i, h) in reps.iter().enumerate() {
        let ext = build_extension(l, &me.module, h).map_err(|e| e.to_string())?;
        let jacobi = ext.structure.validate().ok();
        let zero = Cochain::zero(h.space().clone(), Parity::Even);
        let split = extensions_equivalent(l, &me.module, sym.as_ref(), h, &zero)
            .map_err(|e| e.to_string())?
            .is_some();
        let ok = jacobi && !split && ext.check_structure(l);
        pass &= ok;
        let _ = writeln!(t, "class {}: Jacobi {}, not split {}", i + 1, yes(jacobi), yes(!split));
        push_entries(&mut t, h, "  ");
        jr.push(json!({"cocycle": json_entries(h), "jacobi": jacobi, "split": split}));
    }
    let _ = writeln!(t, "result: {}", if pass { "PASS" } else { "FAIL" });
    let j = json!({"module": module, "h2_even": reps.len(), "classes": jr, "pass": pass});
    Ok((pass, t, j))
}
