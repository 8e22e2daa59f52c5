//! The JSON file format for domain specifications.
//!
//! ```json
//! {"name": "...", "version": "...", "domainTypes": ["..."],
//!  "properties": [{"property": "...", "ranges": ["Text", {"type": "...", "properties": [...]}],
//!                  "required": true, "multitype": false}]}
//! ```
//!
//! Serialization is canonical: keys in the order above, domain types and
//! properties sorted, `required`/`multitype` always written.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{Map, Value};

use super::{DomainSpecification, DsError, NestedSpec, PropertyConstraint, RangeSpec};
use crate::term::TermId;

const TOP_KEYS: [&str; 4] = ["name", "version", "domainTypes", "properties"];
const CONSTRAINT_KEYS: [&str; 4] = ["property", "ranges", "required", "multitype"];
const NESTED_KEYS: [&str; 2] = ["type", "properties"];

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Keep unknown top-level keys in `extensions` instead of dropping them.
    pub preserve_unknown: bool,
}

#[derive(Debug, Clone)]
pub struct ParsedSpec {
    pub spec: DomainSpecification,
    pub warnings: Vec<String>,
}

fn malformed(msg: impl Into<String>) -> DsError {
    DsError::Malformed(msg.into())
}

fn term(raw: &Value, what: &str) -> Result<TermId, DsError> {
    let s = raw
        .as_str()
        .ok_or_else(|| malformed(format!("{what} must be a string")))?;
    TermId::normalize(s).ok_or_else(|| malformed(format!("{what} `{s}` is not a schema.org term name")))
}

fn flag(obj: &Map<String, Value>, key: &str, ctx: &str) -> Result<bool, DsError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(false),
        Some(Value::Bool(b)) => Ok(*b),
        Some(_) => Err(malformed(format!("`{key}` of {ctx} must be a boolean"))),
    }
}

fn warn_unknown(obj: &Map<String, Value>, known: &[&str], ctx: &str, warnings: &mut Vec<String>) {
    for key in obj.keys() {
        if !known.contains(&key.as_str()) {
            warnings.push(format!("ignoring unknown key `{key}` in {ctx}"));
        }
    }
}

fn parse_constraints(raw: &Value, ctx: &str, warnings: &mut Vec<String>) -> Result<Vec<PropertyConstraint>, DsError> {
    let items = raw
        .as_array()
        .ok_or_else(|| malformed(format!("`properties` of {ctx} must be an array")))?;
    let mut out = Vec::with_capacity(items.len());
    for item in items {
        let obj = item
            .as_object()
            .ok_or_else(|| malformed(format!("property entries of {ctx} must be objects")))?;
        let property = term(
            obj.get("property")
                .ok_or_else(|| malformed(format!("property entry of {ctx} lacks `property`")))?,
            "property",
        )?;
        let pctx = format!("property `{property}` of {ctx}");
        warn_unknown(obj, &CONSTRAINT_KEYS, &pctx, warnings);
        let ranges_raw = obj
            .get("ranges")
            .and_then(Value::as_array)
            .ok_or_else(|| malformed(format!("{pctx} lacks a `ranges` array")))?;
        let mut ranges = Vec::with_capacity(ranges_raw.len());
        for r in ranges_raw {
            ranges.push(match r {
                Value::String(_) => RangeSpec::Term(term(r, "range")?),
                Value::Object(n) => {
                    let type_id = term(
                        n.get("type")
                            .ok_or_else(|| malformed(format!("nested range in {pctx} lacks `type`")))?,
                        "nested range type",
                    )?;
                    let nctx = format!("nested {type_id} under {pctx}");
                    warn_unknown(n, &NESTED_KEYS, &nctx, warnings);
                    let constraints = match n.get("properties") {
                        Some(p) => parse_constraints(p, &nctx, warnings)?,
                        None => Vec::new(),
                    };
                    RangeSpec::Nested(NestedSpec { type_id, constraints })
                }
                _ => return Err(malformed(format!("ranges of {pctx} must be strings or objects"))),
            });
        }
        out.push(PropertyConstraint {
            required: flag(obj, "required", &pctx)?,
            multitype: flag(obj, "multitype", &pctx)?,
            property,
            ranges,
        });
    }
    super::check_constraint_list(&out, ctx)?;
    out.sort_by(|a, b| a.property.cmp(&b.property));
    Ok(out)
}

pub fn parse_domain_spec_with(doc: &Value, options: ParseOptions) -> Result<ParsedSpec, DsError> {
    let obj = doc
        .as_object()
        .ok_or_else(|| malformed("document must be a JSON object"))?;
    let mut warnings = Vec::new();

    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| malformed("missing string `name`"))?
        .to_string();
    let version = match obj.get("version") {
        None | Some(Value::Null) => None,
        Some(Value::String(v)) => Some(v.clone()),
        Some(_) => return Err(malformed("`version` must be a string")),
    };
    let types_raw = obj
        .get("domainTypes")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing array `domainTypes`"))?;
    let mut domain_types = BTreeSet::new();
    for t in types_raw {
        let t = term(t, "domain type")?;
        if !domain_types.insert(t.clone()) {
            warnings.push(format!("domain type `{t}` listed twice"));
        }
    }
    let props = obj
        .get("properties")
        .ok_or_else(|| malformed("missing array `properties`"))?;
    let constraints = parse_constraints(props, &format!("`{name}`"), &mut warnings)?;

    let mut extensions = BTreeMap::new();
    for (key, value) in obj {
        if TOP_KEYS.contains(&key.as_str()) {
            continue;
        }
        if options.preserve_unknown {
            extensions.insert(key.clone(), value.clone());
        } else {
            warnings.push(format!("ignoring unknown key `{key}`"));
        }
    }

    let mut spec = DomainSpecification::new(name, version, domain_types, constraints)?;
    spec.extensions = extensions;
    Ok(ParsedSpec { spec, warnings })
}

/// Parses with default options; warnings are dropped.
pub fn parse_domain_spec(doc: &Value) -> Result<DomainSpecification, DsError> {
    parse_domain_spec_with(doc, ParseOptions::default()).map(|p| p.spec)
}

pub fn parse_domain_spec_str(text: &str) -> Result<DomainSpecification, DsError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| DsError::Json(e.to_string()))?;
    parse_domain_spec(&doc)
}

fn constraints_json(constraints: &[PropertyConstraint]) -> Value {
    let mut sorted: Vec<&PropertyConstraint> = constraints.iter().collect();
    sorted.sort_by(|a, b| a.property.cmp(&b.property));
    Value::Array(
        sorted
            .into_iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("property".into(), Value::String(c.property.to_string()));
                let ranges = c
                    .ranges
                    .iter()
                    .map(|r| match r {
                        RangeSpec::Term(t) => Value::String(t.to_string()),
                        RangeSpec::Nested(n) => {
                            let mut nm = Map::new();
                            nm.insert("type".into(), Value::String(n.type_id.to_string()));
                            nm.insert("properties".into(), constraints_json(&n.constraints));
                            Value::Object(nm)
                        }
                    })
                    .collect();
                m.insert("ranges".into(), Value::Array(ranges));
                m.insert("required".into(), Value::Bool(c.required));
                m.insert("multitype".into(), Value::Bool(c.multitype));
                Value::Object(m)
            })
            .collect(),
    )
}

pub fn serialize_domain_spec(ds: &DomainSpecification) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), Value::String(ds.name.clone()));
    if let Some(v) = &ds.version {
        m.insert("version".into(), Value::String(v.clone()));
    }
    m.insert(
        "domainTypes".into(),
        Value::Array(ds.domain_types.iter().map(|t| Value::String(t.to_string())).collect()),
    );
    m.insert("properties".into(), constraints_json(&ds.constraints));
    for (k, v) in &ds.extensions {
        m.insert(k.clone(), v.clone());
    }
    Value::Object(m)
}

/// Pretty-printed canonical text with a trailing newline.
pub fn to_json_string(ds: &DomainSpecification) -> String {
    let mut s = serde_json::to_string_pretty(&serialize_domain_spec(ds)).expect("serializing a JSON value cannot fail");
    s.push('\n');
    s
}
