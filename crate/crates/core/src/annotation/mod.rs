//! JSON-LD annotations: extraction from HTML and a normalized node model.

mod extract;
mod parse;
mod resolve;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::term::TermId;

pub use extract::{decode_html, extract_jsonld_blocks, ExtractedBlock, Extraction};
pub use parse::{parse_annotation, parse_annotation_block, SCHEMA_CONTEXTS};
pub use resolve::resolve_references;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnnotationError {
    #[error("not well-formed JSON: {0}")]
    Parse(String),
    #[error("unsupported @context {0}")]
    UnsupportedContext(String),
    #[error("document contains no node objects")]
    EmptyDocument,
}

/// A numeric literal, kept as written alongside its parsed value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decimal {
    pub text: String,
    pub value: f64,
}

impl Decimal {
    pub fn is_integer(&self) -> bool {
        !self.text.contains(['.', 'e', 'E'])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnnotationValue {
    Text(String),
    Number(Decimal),
    Boolean(bool),
    Node(Arc<AnnotationNode>),
    /// An `@id` that points at another node.
    Reference(String),
}

impl AnnotationValue {
    /// Short human description used in report `actual` fields.
    pub fn describe(&self) -> String {
        const MAX: usize = 60;
        match self {
            AnnotationValue::Text(s) => {
                if s.chars().count() > MAX {
                    let cut: String = s.chars().take(MAX).collect();
                    format!("text {cut:?}…")
                } else {
                    format!("text {s:?}")
                }
            }
            AnnotationValue::Number(d) => format!("number {}", d.text),
            AnnotationValue::Boolean(b) => format!("boolean {b}"),
            AnnotationValue::Node(n) => {
                if n.types.is_empty() {
                    "untyped node".to_string()
                } else {
                    format!("node of type {}", n.types.join("/"))
                }
            }
            AnnotationValue::Reference(id) => format!("reference {id:?}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AnnotationNode {
    /// `@type` values, schema.org prefixes stripped where present.
    pub types: Vec<String>,
    pub node_id: Option<String>,
    /// Properties in source order; values of a JSON array are flattened.
    pub properties: Vec<(String, Vec<AnnotationValue>)>,
}

impl AnnotationNode {
    pub fn type_terms(&self) -> impl Iterator<Item = TermId> + '_ {
        self.types.iter().filter_map(|t| TermId::normalize(t))
    }

    pub fn values(&self, property: &str) -> Option<&[AnnotationValue]> {
        self.properties
            .iter()
            .find(|(p, _)| p == property)
            .map(|(_, v)| v.as_slice())
    }

    pub fn remove_property(&mut self, property: &str) -> Option<Vec<AnnotationValue>> {
        let pos = self.properties.iter().position(|(p, _)| p == property)?;
        Some(self.properties.remove(pos).1)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Source {
    pub origin: String,
    pub block_index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnotationDocument {
    pub roots: Vec<AnnotationNode>,
    pub source: Source,
    pub parse_warnings: Vec<String>,
}
