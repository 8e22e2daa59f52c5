//! Value-against-range conformance.

use std::sync::OnceLock;

use regex::Regex;

use super::{IssueCode, Severity, ValidationIssue, ValidationOptions};
use crate::annotation::{AnnotationNode, AnnotationValue};
use crate::domainspec::RangeSpec;
use crate::vocabulary::{Datatype, VocabularyGraph};

struct Patterns {
    url: Regex,
    number: Regex,
    integer: Regex,
    date: Regex,
    datetime: Regex,
    time: Regex,
}

fn patterns() -> &'static Patterns {
    static P: OnceLock<Patterns> = OnceLock::new();
    P.get_or_init(|| {
        const TIME: &str = r"([01]\d|2[0-3]):[0-5]\d(:[0-5]\d(\.\d+)?)?(Z|[+-]([01]\d|2[0-3]):?[0-5]\d)?";
        const DATE: &str = r"(\d{4})-(0[1-9]|1[0-2])-(0[1-9]|[12]\d|3[01])";
        Patterns {
            url: Regex::new(r"^(?i:https?)://[^\s/?#]+[^\s]*$").unwrap(),
            number: Regex::new(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$").unwrap(),
            integer: Regex::new(r"^[+-]?\d+$").unwrap(),
            date: Regex::new(&format!("^{DATE}$")).unwrap(),
            datetime: Regex::new(&format!("^{DATE}T{TIME}$")).unwrap(),
            time: Regex::new(&format!("^{TIME}$")).unwrap(),
        }
    })
}

fn days_in_month(year: u32, month: u32) -> u32 {
    match month {
        2 if year.is_multiple_of(4) && (!year.is_multiple_of(100) || year.is_multiple_of(400)) => 29,
        2 => 28,
        4 | 6 | 9 | 11 => 30,
        _ => 31,
    }
}

fn calendar_ok(caps: &regex::Captures) -> bool {
    let year: u32 = caps[1].parse().unwrap_or(0);
    let month: u32 = caps[2].parse().unwrap_or(0);
    let day: u32 = caps[3].parse().unwrap_or(0);
    day <= days_in_month(year, month)
}

/// Whether a scalar value satisfies a datatype.
pub fn datatype_accepts(datatype: Datatype, value: &AnnotationValue) -> bool {
    let p = patterns();
    match (datatype, value) {
        (Datatype::Text, AnnotationValue::Text(_)) => true,
        (Datatype::Url, AnnotationValue::Text(s)) => p.url.is_match(s),
        (Datatype::Boolean, AnnotationValue::Boolean(_)) => true,
        (Datatype::Boolean, AnnotationValue::Text(s)) => s == "True" || s == "False",
        (Datatype::Number, AnnotationValue::Number(_)) => true,
        (Datatype::Number, AnnotationValue::Text(s)) => p.number.is_match(s),
        (Datatype::Integer, AnnotationValue::Number(d)) => d.is_integer(),
        (Datatype::Integer, AnnotationValue::Text(s)) => p.integer.is_match(s),
        (Datatype::Date, AnnotationValue::Text(s)) => p.date.captures(s).is_some_and(|c| calendar_ok(&c)),
        (Datatype::DateTime, AnnotationValue::Text(s)) => p.datetime.captures(s).is_some_and(|c| calendar_ok(&c)),
        (Datatype::Time, AnnotationValue::Text(s)) => p.time.is_match(s),
        _ => false,
    }
}

fn specificity(d: Datatype) -> u8 {
    match d {
        Datatype::Url => 0,
        Datatype::Integer => 1,
        Datatype::Number => 2,
        Datatype::Boolean => 3,
        Datatype::DateTime => 4,
        Datatype::Date => 5,
        Datatype::Time => 6,
        Datatype::Text => 7,
    }
}

fn node_has_type(graph: &VocabularyGraph, node: &AnnotationNode, range: &str) -> bool {
    node.type_terms().any(|t| graph.is_subclass_of(t.as_str(), range))
}

/// The range a value is matched against. Scalars try datatype ranges with
/// the more specific datatypes first (URL before Text, and so on); nodes
/// try class and nested ranges in listed order; references take the first
/// class or nested range.
pub fn matching_range<'r>(
    value: &AnnotationValue,
    ranges: &'r [RangeSpec],
    graph: &VocabularyGraph,
) -> Option<&'r RangeSpec> {
    match value {
        AnnotationValue::Node(node) => ranges.iter().find(|r| match r {
            RangeSpec::Term(t) => graph.datatype_of(t.as_str()).is_none() && node_has_type(graph, node, t.as_str()),
            RangeSpec::Nested(n) => node_has_type(graph, node, n.type_id.as_str()),
        }),
        AnnotationValue::Reference(_) => ranges.iter().find(|r| match r {
            RangeSpec::Term(t) => graph.datatype_of(t.as_str()).is_none(),
            RangeSpec::Nested(_) => true,
        }),
        scalar => {
            let mut typed: Vec<(Datatype, &RangeSpec)> = ranges
                .iter()
                .filter_map(|r| match r {
                    RangeSpec::Term(t) => graph.datatype_of(t.as_str()).map(|d| (d, r)),
                    RangeSpec::Nested(_) => None,
                })
                .collect();
            typed.sort_by_key(|(d, _)| specificity(*d));
            typed
                .into_iter()
                .find(|(d, _)| datatype_accepts(*d, scalar))
                .map(|(_, r)| r)
        }
    }
}

fn expected(ranges: &[RangeSpec]) -> String {
    ranges
        .iter()
        .map(|r| r.term().to_string())
        .collect::<Vec<_>>()
        .join(" or ")
}

pub(super) fn check_value(
    value: &AnnotationValue,
    ranges: &[RangeSpec],
    graph: &VocabularyGraph,
    options: &ValidationOptions,
    depth: usize,
) -> Vec<ValidationIssue> {
    let Some(range) = matching_range(value, ranges, graph) else {
        return vec![ValidationIssue::new(
            IssueCode::E004,
            "/",
            format!("value does not match any allowed range ({})", expected(ranges)),
            expected(ranges),
            value.describe(),
        )];
    };
    match (value, range) {
        (AnnotationValue::Reference(id), r) => vec![ValidationIssue::new(
            IssueCode::I001,
            "/",
            format!("reference {id:?} accepted as {} without checking its target", r.term()),
            r.term().to_string(),
            value.describe(),
        )],
        (AnnotationValue::Node(node), RangeSpec::Nested(nested)) => {
            if depth + 1 > options.max_depth {
                return vec![ValidationIssue::new(
                    IssueCode::W003,
                    "/",
                    format!("nesting deeper than {} levels not validated", options.max_depth),
                    format!("at most {} nested levels", options.max_depth),
                    format!("level {}", depth + 1),
                )];
            }
            let mut issues = Vec::new();
            super::check_constraints(node, &nested.constraints, graph, options, depth + 1, &mut issues);
            issues
        }
        _ => Vec::new(),
    }
}

/// Issues for one value against a list of allowed ranges: empty when the
/// value conforms. Paths are relative to the value (`/` is the value
/// itself); nested-range issues carry the nested property path.
pub fn check_value_against_range(
    value: &AnnotationValue,
    ranges: &[RangeSpec],
    graph: &VocabularyGraph,
) -> Vec<ValidationIssue> {
    let options = ValidationOptions::default();
    let mut issues = check_value(value, ranges, graph, &options, 0);
    // the info note on references is a report concern, not non-conformance
    issues.retain(|i| i.severity != Severity::Info);
    issues
}
