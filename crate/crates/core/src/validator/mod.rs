//! Annotation validation against domain specifications.
//!
//! Issue paths are slash-separated property paths from the annotation
//! root; a property with several values gets a zero-based index on each
//! value (`/image[1]`). `/` addresses the node itself.

mod range;
mod select;
mod template;

use std::fmt;

use serde::Serialize;

use crate::annotation::{AnnotationDocument, AnnotationNode, AnnotationValue};
use crate::domainspec::{DomainSpecification, PropertyConstraint};
use crate::term::TermId;
use crate::vocabulary::VocabularyGraph;

pub use range::{check_value_against_range, datatype_accepts, matching_range};
pub use select::{select_spec, SpecMatch};
pub use template::{generate_template, placeholder_for};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum IssueCode {
    /// None of the node's types is in the vocabulary.
    E001,
    /// Node has no `@type`.
    E002,
    /// Required property has no value.
    E003,
    /// Value matches none of the allowed ranges.
    E004,
    /// More than one value for a single-valued property.
    E005,
    /// Property not covered by the specification.
    W001,
    /// Empty string value, or a property with no values.
    W002,
    /// Nesting deeper than the configured limit was not validated.
    W003,
    /// Reference accepted for a class range without checking its target.
    I001,
}

impl IssueCode {
    pub fn default_severity(self) -> Severity {
        match self {
            IssueCode::E001 | IssueCode::E002 | IssueCode::E003 | IssueCode::E004 | IssueCode::E005 => Severity::Error,
            IssueCode::W001 | IssueCode::W002 | IssueCode::W003 => Severity::Warning,
            IssueCode::I001 => Severity::Info,
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            IssueCode::E001 => "UnknownType",
            IssueCode::E002 => "MissingType",
            IssueCode::E003 => "MissingRequiredProperty",
            IssueCode::E004 => "RangeMismatch",
            IssueCode::E005 => "CardinalityViolation",
            IssueCode::W001 => "UnknownProperty",
            IssueCode::W002 => "EmptyValue",
            IssueCode::W003 => "DepthLimitExceeded",
            IssueCode::I001 => "UnverifiedReference",
        }
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ValidationIssue {
    pub code: IssueCode,
    pub severity: Severity,
    pub path: String,
    pub message: String,
    pub expected: String,
    pub actual: String,
}

impl ValidationIssue {
    pub fn new(
        code: IssueCode,
        path: impl Into<String>,
        message: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) -> Self {
        ValidationIssue {
            code,
            severity: code.default_severity(),
            path: path.into(),
            message: message.into(),
            expected: expected.into(),
            actual: actual.into(),
        }
    }

    fn under(mut self, prefix: &str) -> Self {
        self.path = if self.path == "/" {
            prefix.to_string()
        } else {
            format!("{prefix}{}", self.path)
        };
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationOptions {
    pub unknown_property_severity: Severity,
    pub max_depth: usize,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            unknown_property_severity: Severity::Warning,
            max_depth: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub source: String,
    /// Name of the specification validated against; `None` when no
    /// specification matched the annotation.
    pub spec: Option<String>,
    /// The annotation type that selected the specification.
    #[serde(rename = "type")]
    pub matched_type: Option<TermId>,
    pub valid: bool,
    pub completeness: f64,
    /// Sorted by (path, code).
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn unmatched(source: impl Into<String>) -> Self {
        ValidationReport {
            source: source.into(),
            spec: None,
            matched_type: None,
            valid: true,
            completeness: 0.0,
            issues: Vec::new(),
        }
    }

    pub fn is_matched(&self) -> bool {
        self.spec.is_some()
    }

    pub fn count(&self, code: IssueCode) -> usize {
        self.issues.iter().filter(|i| i.code == code).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn value_path(property: &str, index: usize, count: usize) -> String {
    if count > 1 {
        format!("/{property}[{index}]")
    } else {
        format!("/{property}")
    }
}

fn is_empty_text(v: &AnnotationValue) -> bool {
    matches!(v, AnnotationValue::Text(s) if s.trim().is_empty())
}

fn check_constraint(
    node: &AnnotationNode,
    c: &PropertyConstraint,
    graph: &VocabularyGraph,
    options: &ValidationOptions,
    depth: usize,
    issues: &mut Vec<ValidationIssue>,
) {
    let values = node.values(c.property.as_str()).unwrap_or(&[]);
    let path = format!("/{}", c.property);
    if values.is_empty() && c.required {
        issues.push(ValidationIssue::new(
            IssueCode::E003,
            &path,
            format!("required property `{}` is missing", c.property),
            c.describe_ranges(),
            "no value",
        ));
    }
    if values.len() > 1 && !c.multitype {
        issues.push(ValidationIssue::new(
            IssueCode::E005,
            &path,
            format!("`{}` allows a single value", c.property),
            "1 value",
            format!("{} values", values.len()),
        ));
    }
    for (i, v) in values.iter().enumerate() {
        let vpath = value_path(c.property.as_str(), i, values.len());
        issues.extend(
            range::check_value(v, &c.ranges, graph, options, depth)
                .into_iter()
                .map(|issue| issue.under(&vpath)),
        );
    }
}

pub(crate) fn check_constraints(
    node: &AnnotationNode,
    constraints: &[PropertyConstraint],
    graph: &VocabularyGraph,
    options: &ValidationOptions,
    depth: usize,
    issues: &mut Vec<ValidationIssue>,
) {
    for c in constraints {
        check_constraint(node, c, graph, options, depth, issues);
    }
    for (property, values) in &node.properties {
        let path = format!("/{property}");
        if !constraints.iter().any(|c| c.property == *property.as_str()) {
            let mut issue = ValidationIssue::new(
                IssueCode::W001,
                &path,
                format!("`{property}` is not part of the specification"),
                "a specified property",
                property.clone(),
            );
            issue.severity = options.unknown_property_severity;
            issues.push(issue);
        }
        if values.is_empty() {
            issues.push(ValidationIssue::new(
                IssueCode::W002,
                &path,
                format!("`{property}` has no value"),
                "a value",
                "no value",
            ));
        }
        for (i, v) in values.iter().enumerate() {
            if is_empty_text(v) {
                issues.push(ValidationIssue::new(
                    IssueCode::W002,
                    value_path(property, i, values.len()),
                    format!("`{property}` is an empty string"),
                    "non-empty text",
                    "empty text",
                ));
            }
        }
    }
}

/// Validates one annotation node against a specification.
///
/// The report's `source` is left empty for the caller to fill in.
pub fn validate_node(
    node: &AnnotationNode,
    ds: &DomainSpecification,
    graph: &VocabularyGraph,
    options: &ValidationOptions,
) -> ValidationReport {
    let mut issues = Vec::new();
    if node.types.is_empty() {
        issues.push(ValidationIssue::new(
            IssueCode::E002,
            "/",
            "annotation has no @type",
            ds.domain_types
                .iter()
                .map(TermId::to_string)
                .collect::<Vec<_>>()
                .join(" or "),
            "no type",
        ));
    } else if !node.type_terms().any(|t| graph.class(t.as_str()).is_some()) {
        issues.push(ValidationIssue::new(
            IssueCode::E001,
            "/",
            "no annotation type is a vocabulary class",
            "a schema.org class",
            node.types.join(", "),
        ));
    }
    check_constraints(node, &ds.constraints, graph, options, 0, &mut issues);
    issues.sort();

    let required = ds.constraints.iter().filter(|c| c.required);
    let total = required.clone().count();
    let satisfied = required
        .filter(|c| node.values(c.property.as_str()).is_some_and(|v| !v.is_empty()))
        .count();
    ValidationReport {
        source: String::new(),
        spec: Some(ds.name.clone()),
        matched_type: None,
        valid: !issues.iter().any(|i| i.severity == Severity::Error),
        completeness: if total == 0 {
            1.0
        } else {
            satisfied as f64 / total as f64
        },
        issues,
    }
}

/// Validates every root of a parsed document, selecting a specification
/// per root. Sources are labelled `origin#block/root`.
pub fn validate_document(
    doc: &AnnotationDocument,
    specs: &[DomainSpecification],
    graph: &VocabularyGraph,
    options: &ValidationOptions,
    allow_subclass_match: bool,
) -> Vec<ValidationReport> {
    doc.roots
        .iter()
        .enumerate()
        .map(|(i, root)| {
            let source = format!("{}#{}/{}", doc.source.origin, doc.source.block_index, i);
            match select_spec(root, specs, graph, allow_subclass_match) {
                Some(m) => {
                    let mut report = validate_node(root, m.spec, graph, options);
                    report.source = source;
                    report.matched_type = Some(m.matched_type);
                    report
                }
                None => ValidationReport::unmatched(source),
            }
        })
        .collect()
}
