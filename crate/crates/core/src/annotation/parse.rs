use std::sync::Arc;

use serde_json::{Map, Value};

use super::{AnnotationDocument, AnnotationError, AnnotationNode, AnnotationValue, Decimal, Source};
use crate::term::TermId;

/// Context IRIs accepted as "plain schema.org".
pub const SCHEMA_CONTEXTS: [&str; 4] = [
    "http://schema.org",
    "https://schema.org",
    "http://schema.org/",
    "https://schema.org/",
];

fn context_ok(ctx: &Value) -> bool {
    match ctx {
        Value::String(s) => SCHEMA_CONTEXTS.contains(&s.trim()),
        Value::Object(o) => o
            .get("@vocab")
            .and_then(Value::as_str)
            .is_some_and(|v| SCHEMA_CONTEXTS.contains(&v.trim())),
        _ => false,
    }
}

fn check_context(obj: &Map<String, Value>) -> Result<(), AnnotationError> {
    match obj.get("@context") {
        Some(ctx) if context_ok(ctx) => Ok(()),
        Some(ctx) => Err(AnnotationError::UnsupportedContext(ctx.to_string())),
        None => Err(AnnotationError::UnsupportedContext("(missing)".into())),
    }
}

struct NodeParser<'w> {
    warnings: &'w mut Vec<String>,
}

impl NodeParser<'_> {
    fn node(&mut self, obj: &Map<String, Value>, path: &str) -> AnnotationNode {
        let mut node = AnnotationNode::default();
        for (key, value) in obj {
            match key.as_str() {
                "@type" => {
                    let raw: Vec<&Value> = match value {
                        Value::Array(a) => a.iter().collect(),
                        v => vec![v],
                    };
                    for t in raw {
                        match t.as_str() {
                            Some(s) => node
                                .types
                                .push(TermId::normalize(s).map_or_else(|| s.trim().to_string(), |t| t.to_string())),
                            None => self.warnings.push(format!("{path}: ignoring non-string @type {t}")),
                        }
                    }
                }
                "@id" => match value.as_str() {
                    Some(id) => node.node_id = Some(id.to_string()),
                    None => self.warnings.push(format!("{path}: ignoring non-string @id")),
                },
                "@context" => {}
                k if k.starts_with('@') => {
                    self.warnings.push(format!("{path}: ignoring keyword {k}"));
                }
                k => {
                    let name = TermId::normalize(k).map_or_else(|| k.to_string(), |t| t.to_string());
                    let ppath = format!("{path}/{name}");
                    let mut values = Vec::new();
                    self.values(value, &ppath, &mut values);
                    if values.is_empty() {
                        self.warnings.push(format!("{ppath}: property has no values"));
                    }
                    match node.properties.iter_mut().find(|(p, _)| *p == name) {
                        Some((_, existing)) => existing.extend(values),
                        None => node.properties.push((name, values)),
                    }
                }
            }
        }
        node
    }

    fn values(&mut self, value: &Value, path: &str, out: &mut Vec<AnnotationValue>) {
        match value {
            Value::Null => {}
            Value::Bool(b) => out.push(AnnotationValue::Boolean(*b)),
            Value::Number(n) => out.push(AnnotationValue::Number(Decimal {
                text: n.to_string(),
                value: n.as_f64().unwrap_or(f64::NAN),
            })),
            Value::String(s) => out.push(AnnotationValue::Text(s.clone())),
            Value::Array(items) => {
                for item in items {
                    self.values(item, path, out);
                }
            }
            Value::Object(obj) => {
                if let Some(v) = obj.get("@value") {
                    // value object: the literal stands in for the object
                    if v.is_object() || v.is_array() {
                        self.warnings.push(format!("{path}: ignoring non-scalar @value"));
                    } else {
                        self.values(v, path, out);
                    }
                } else if obj.len() == 1 && obj.contains_key("@id") {
                    match obj["@id"].as_str() {
                        Some(id) => out.push(AnnotationValue::Reference(id.to_string())),
                        None => self.warnings.push(format!("{path}: ignoring non-string @id")),
                    }
                } else {
                    out.push(AnnotationValue::Node(Arc::new(self.node(obj, path))));
                }
            }
        }
    }
}

fn collect_roots(
    value: &Value,
    inherited_context: bool,
    roots: &mut Vec<AnnotationNode>,
    warnings: &mut Vec<String>,
) -> Result<(), AnnotationError> {
    match value {
        Value::Array(items) => {
            for item in items {
                collect_roots(item, inherited_context, roots, warnings)?;
            }
            Ok(())
        }
        Value::Object(obj) => {
            if !inherited_context || obj.contains_key("@context") {
                check_context(obj)?;
            }
            if let Some(graph) = obj.get("@graph") {
                let items = match graph {
                    Value::Array(a) => a.as_slice(),
                    other => std::slice::from_ref(other),
                };
                for (i, item) in items.iter().enumerate() {
                    match item {
                        Value::Object(o) => {
                            let mut p = NodeParser { warnings };
                            let path = format!("@graph[{i}]");
                            roots.push(p.node(o, &path));
                        }
                        _ => warnings.push(format!("@graph[{i}]: ignoring non-object entry")),
                    }
                }
                Ok(())
            } else {
                let mut p = NodeParser { warnings };
                roots.push(p.node(obj, ""));
                Ok(())
            }
        }
        _ => Err(AnnotationError::EmptyDocument),
    }
}

/// Parses one JSON-LD block with an origin label for reports.
pub fn parse_annotation_block(
    raw: &str,
    origin: &str,
    block_index: usize,
) -> Result<AnnotationDocument, AnnotationError> {
    let value: Value = serde_json::from_str(raw).map_err(|e| AnnotationError::Parse(e.to_string()))?;
    let mut roots = Vec::new();
    let mut parse_warnings = Vec::new();
    collect_roots(&value, false, &mut roots, &mut parse_warnings)?;
    if roots.is_empty() {
        return Err(AnnotationError::EmptyDocument);
    }
    Ok(AnnotationDocument {
        roots,
        source: Source {
            origin: origin.to_string(),
            block_index,
        },
        parse_warnings,
    })
}

/// Parses a JSON-LD text holding a single node object, a top-level
/// `@graph`, or an array of those. Each object on the outer level must
/// carry a schema.org `@context`.
pub fn parse_annotation(raw: &str) -> Result<AnnotationDocument, AnnotationError> {
    parse_annotation_block(raw, "", 0)
}
