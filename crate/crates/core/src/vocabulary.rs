//! schema.org vocabulary graph.
//!
//! A [`VocabularyGraph`] is built once from a schema.org JSON-LD release
//! (the `@graph` array of `rdfs:Class` / `rdf:Property` entries) and is
//! immutable afterwards. The reflexive-transitive subclass relation is
//! precomputed as one ancestor bitset per class, so `is_subclass_of` is a
//! constant-time lookup.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::term::TermId;

#[derive(Debug, Error)]
pub enum VocabularyError {
    #[error("malformed vocabulary: {0}")]
    Malformed(String),
    #[error("duplicate term `{0}` in vocabulary")]
    DuplicateTerm(String),
    #[error("cannot read vocabulary {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("vocabulary is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown term `{0}`")]
pub struct UnknownTerm(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassDef {
    pub id: TermId,
    pub superclasses: BTreeSet<TermId>,
    pub is_datatype: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyDef {
    pub id: TermId,
    pub domain_includes: BTreeSet<TermId>,
    pub range_includes: BTreeSet<TermId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WarningKind {
    DanglingSuperclass,
    DanglingReference,
    SubclassCycle,
    EmptyDomain,
    EmptyRange,
    UnsupportedIdentifier,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoadWarning {
    pub kind: WarningKind,
    pub term: String,
    pub detail: String,
}

/// The primitive datatypes values are checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Datatype {
    Text,
    Url,
    Boolean,
    Number,
    Integer,
    Date,
    DateTime,
    Time,
}

impl Datatype {
    /// Maps a bare datatype name onto its checking rule. Text subtypes
    /// other than URL (CssSelectorType, XPathType, PronounceableText) check
    /// as Text; Float checks as Number.
    pub fn from_name(name: &str) -> Option<Datatype> {
        Some(match name {
            "Text" | "CssSelectorType" | "XPathType" | "PronounceableText" => Datatype::Text,
            "URL" => Datatype::Url,
            "Boolean" => Datatype::Boolean,
            "Number" | "Float" => Datatype::Number,
            "Integer" => Datatype::Integer,
            "Date" => Datatype::Date,
            "DateTime" => Datatype::DateTime,
            "Time" => Datatype::Time,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Datatype::Text => "Text",
            Datatype::Url => "URL",
            Datatype::Boolean => "Boolean",
            Datatype::Number => "Number",
            Datatype::Integer => "Integer",
            Datatype::Date => "Date",
            Datatype::DateTime => "DateTime",
            Datatype::Time => "Time",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.0[w] & b == 0;
        self.0[w] |= b;
        fresh
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1u64 << (i % 64)) != 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VocabularyGraph {
    classes: BTreeMap<TermId, ClassDef>,
    properties: BTreeMap<TermId, PropertyDef>,
    index: HashMap<TermId, usize>,
    // ancestors[i] holds every class reachable from class i, including i.
    ancestors: Vec<BitSet>,
    warnings: Vec<LoadWarning>,
    skipped_entries: usize,
}

const CLASS_TYPES: [&str; 2] = ["rdfs:Class", "http://www.w3.org/2000/01/rdf-schema#Class"];
const PROPERTY_TYPES: [&str; 2] = ["rdf:Property", "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property"];

fn references(entry: &Value, keys: &[&str]) -> Vec<String> {
    let mut out = Vec::new();
    for key in keys {
        let Some(v) = entry.get(*key) else { continue };
        let items: Vec<&Value> = match v {
            Value::Array(a) => a.iter().collect(),
            other => vec![other],
        };
        for item in items {
            match item {
                Value::String(s) => out.push(s.clone()),
                Value::Object(o) => {
                    if let Some(Value::String(s)) = o.get("@id") {
                        out.push(s.clone());
                    }
                }
                _ => {}
            }
        }
    }
    out
}

fn type_names(entry: &Value) -> Vec<&str> {
    match entry.get("@type") {
        Some(Value::String(s)) => vec![s.as_str()],
        Some(Value::Array(a)) => a.iter().filter_map(Value::as_str).collect(),
        _ => Vec::new(),
    }
}

/// Builds a graph from a parsed schema.org JSON-LD release.
///
/// Entries typed as neither class nor property (enumeration members) are
/// skipped and counted in [`VocabularyGraph::skipped_entries`].
pub fn load_vocabulary(doc: &Value) -> Result<VocabularyGraph, VocabularyError> {
    let entries = doc
        .get("@graph")
        .and_then(Value::as_array)
        .ok_or_else(|| VocabularyError::Malformed("missing `@graph` term array".into()))?;

    let mut warnings = Vec::new();
    let mut skipped_entries = 0;
    let mut classes = BTreeMap::new();
    let mut properties = BTreeMap::new();
    let mut datatype_roots = BTreeSet::new();
    let mut raw_supers: Vec<(TermId, Vec<String>)> = Vec::new();
    let mut raw_props: Vec<(TermId, Vec<String>, Vec<String>)> = Vec::new();

    for (i, entry) in entries.iter().enumerate() {
        let raw_id = entry
            .get("@id")
            .and_then(Value::as_str)
            .ok_or_else(|| VocabularyError::Malformed(format!("term entry {i} has no `@id`")))?;
        let types = type_names(entry);
        let is_class = types.iter().any(|t| CLASS_TYPES.contains(t));
        let is_property = types.iter().any(|t| PROPERTY_TYPES.contains(t));
        if !is_class && !is_property {
            skipped_entries += 1;
            continue;
        }
        let Some(id) = TermId::normalize(raw_id) else {
            warnings.push(LoadWarning {
                kind: WarningKind::UnsupportedIdentifier,
                term: raw_id.to_string(),
                detail: "identifier is outside the schema.org namespace".into(),
            });
            continue;
        };
        if classes.contains_key(&id) || properties.contains_key(&id) {
            return Err(VocabularyError::DuplicateTerm(id.to_string()));
        }
        if is_class {
            if types
                .iter()
                .any(|t| TermId::normalize(t).is_some_and(|t| t == "DataType"))
            {
                datatype_roots.insert(id.clone());
            }
            raw_supers.push((id.clone(), references(entry, &["rdfs:subClassOf"])));
            classes.insert(
                id.clone(),
                ClassDef {
                    id,
                    superclasses: BTreeSet::new(),
                    is_datatype: false,
                },
            );
        } else {
            raw_props.push((
                id.clone(),
                references(
                    entry,
                    &[
                        "schema:domainIncludes",
                        "http://schema.org/domainIncludes",
                        "https://schema.org/domainIncludes",
                    ],
                ),
                references(
                    entry,
                    &[
                        "schema:rangeIncludes",
                        "http://schema.org/rangeIncludes",
                        "https://schema.org/rangeIncludes",
                    ],
                ),
            ));
            properties.insert(
                id.clone(),
                PropertyDef {
                    id,
                    domain_includes: BTreeSet::new(),
                    range_includes: BTreeSet::new(),
                },
            );
        }
    }

    for (id, supers) in raw_supers {
        let mut resolved = BTreeSet::new();
        for raw in supers {
            match TermId::normalize(&raw).filter(|t| classes.contains_key(t)) {
                Some(t) => {
                    resolved.insert(t);
                }
                None => warnings.push(LoadWarning {
                    kind: WarningKind::DanglingSuperclass,
                    term: id.to_string(),
                    detail: format!("superclass `{raw}` is not a class in this vocabulary"),
                }),
            }
        }
        classes.get_mut(&id).expect("class inserted above").superclasses = resolved;
    }

    for (id, domain, range) in raw_props {
        let mut resolve = |raws: Vec<String>, what: &str| {
            let mut set = BTreeSet::new();
            for raw in raws {
                match TermId::normalize(&raw) {
                    Some(t) => {
                        if !classes.contains_key(&t) {
                            warnings.push(LoadWarning {
                                kind: WarningKind::DanglingReference,
                                term: id.to_string(),
                                detail: format!("{what} `{raw}` is not a class in this vocabulary"),
                            });
                        }
                        set.insert(t);
                    }
                    None => warnings.push(LoadWarning {
                        kind: WarningKind::DanglingReference,
                        term: id.to_string(),
                        detail: format!("{what} `{raw}` is outside the schema.org namespace"),
                    }),
                }
            }
            set
        };
        let domain_includes = resolve(domain, "domain");
        let range_includes = resolve(range, "range");
        if domain_includes.is_empty() {
            warnings.push(LoadWarning {
                kind: WarningKind::EmptyDomain,
                term: id.to_string(),
                detail: "property declares no domainIncludes".into(),
            });
        }
        if range_includes.is_empty() {
            warnings.push(LoadWarning {
                kind: WarningKind::EmptyRange,
                term: id.to_string(),
                detail: "property declares no rangeIncludes".into(),
            });
        }
        let def = properties.get_mut(&id).expect("property inserted above");
        def.domain_includes = domain_includes;
        def.range_includes = range_includes;
    }

    let index: HashMap<TermId, usize> = classes.keys().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let edges: Vec<Vec<usize>> = classes
        .values()
        .map(|c| c.superclasses.iter().map(|s| index[s]).collect())
        .collect();
    let ancestors = closure(&edges);
    warnings.extend(cycle_warnings(&classes, &ancestors));

    let root_idx: Vec<usize> = datatype_roots.iter().map(|t| index[t]).collect();
    for (i, class) in classes.values_mut().enumerate() {
        class.is_datatype = root_idx.iter().any(|&r| ancestors[i].contains(r));
    }

    Ok(VocabularyGraph {
        classes,
        properties,
        index,
        ancestors,
        warnings,
        skipped_entries,
    })
}

fn closure(edges: &[Vec<usize>]) -> Vec<BitSet> {
    let n = edges.len();
    let mut out = Vec::with_capacity(n);
    let mut stack = Vec::new();
    for start in 0..n {
        let mut seen = BitSet::new(n);
        seen.insert(start);
        stack.push(start);
        while let Some(c) = stack.pop() {
            for &s in &edges[c] {
                if seen.insert(s) {
                    stack.push(s);
                }
            }
        }
        out.push(seen);
    }
    out
}

fn cycle_warnings(classes: &BTreeMap<TermId, ClassDef>, ancestors: &[BitSet]) -> Vec<LoadWarning> {
    let ids: Vec<&TermId> = classes.keys().collect();
    let mut reported = vec![false; ids.len()];
    let mut out = Vec::new();
    for (i, class) in classes.values().enumerate() {
        if reported[i] {
            continue;
        }
        let members: Vec<usize> = (0..ids.len())
            .filter(|&j| j != i && ancestors[i].contains(j) && ancestors[j].contains(i))
            .collect();
        let self_loop = class.superclasses.contains(class.id.as_str());
        if members.is_empty() && !self_loop {
            continue;
        }
        reported[i] = true;
        let mut names = vec![ids[i].to_string()];
        for &j in &members {
            reported[j] = true;
            names.push(ids[j].to_string());
        }
        out.push(LoadWarning {
            kind: WarningKind::SubclassCycle,
            term: ids[i].to_string(),
            detail: format!("subclass cycle among {}", names.join(", ")),
        });
    }
    out
}

impl VocabularyGraph {
    pub fn from_json_str(text: &str) -> Result<Self, VocabularyError> {
        let doc: Value = serde_json::from_str(text)?;
        load_vocabulary(&doc)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, VocabularyError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| VocabularyError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    pub fn classes(&self) -> impl Iterator<Item = &ClassDef> {
        self.classes.values()
    }

    pub fn properties(&self) -> impl Iterator<Item = &PropertyDef> {
        self.properties.values()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn property_count(&self) -> usize {
        self.properties.len()
    }

    pub fn class(&self, id: &str) -> Option<&ClassDef> {
        self.classes.get(id)
    }

    pub fn property(&self, id: &str) -> Option<&PropertyDef> {
        self.properties.get(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.classes.contains_key(id) || self.properties.contains_key(id)
    }

    pub fn load_warnings(&self) -> &[LoadWarning] {
        &self.warnings
    }

    /// Number of `@graph` entries that were neither classes nor properties.
    pub fn skipped_entries(&self) -> usize {
        self.skipped_entries
    }

    /// Reflexive-transitive subclass test. Total: unknown terms are only
    /// subclasses of themselves. Like every lookup here it takes bare names;
    /// run prefixed IRIs through [`TermId::normalize`] first.
    pub fn is_subclass_of(&self, sub: &str, sup: &str) -> bool {
        if sub == sup {
            return true;
        }
        match (self.index.get(sub), self.index.get(sup)) {
            (Some(&a), Some(&b)) => self.ancestors[a].contains(b),
            _ => false,
        }
    }

    /// Every class reachable from `id` (including itself), sorted.
    pub fn ancestors(&self, id: &str) -> Vec<&TermId> {
        let Some(&i) = self.index.get(id) else {
            return Vec::new();
        };
        self.classes
            .keys()
            .enumerate()
            .filter(|(j, _)| self.ancestors[i].contains(*j))
            .map(|(_, t)| t)
            .collect()
    }

    pub fn property_applies_to(&self, property: &PropertyDef, class: &str) -> bool {
        property
            .domain_includes
            .iter()
            .any(|d| self.is_subclass_of(class, d.as_str()))
    }

    /// Properties whose domain covers `class` or one of its ancestors,
    /// sorted by id.
    pub fn properties_for_type(&self, class: &str) -> Result<Vec<&PropertyDef>, UnknownTerm> {
        if !self.classes.contains_key(class) {
            return Err(UnknownTerm(class.to_string()));
        }
        Ok(self
            .properties
            .values()
            .filter(|p| self.property_applies_to(p, class))
            .collect())
    }

    pub fn range_accepts(&self, property: &str, candidate: &str) -> Result<bool, UnknownTerm> {
        let def = self
            .properties
            .get(property)
            .ok_or_else(|| UnknownTerm(property.to_string()))?;
        Ok(def
            .range_includes
            .iter()
            .any(|r| self.is_subclass_of(candidate, r.as_str())))
    }

    /// The checking rule for a range term: the named datatype itself, or
    /// the most specific built-in datatype the term specializes.
    pub fn datatype_of(&self, term: &str) -> Option<Datatype> {
        if let Some(dt) = Datatype::from_name(term) {
            return Some(dt);
        }
        if !self.class(term).is_some_and(|c| c.is_datatype) {
            return None;
        }
        const ORDER: [&str; 8] = [
            "URL", "Integer", "DateTime", "Date", "Time", "Boolean", "Number", "Text",
        ];
        ORDER
            .iter()
            .find(|base| self.is_subclass_of(term, base))
            .and_then(|base| Datatype::from_name(base))
    }
}
