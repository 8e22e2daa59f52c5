//! Consistency of a domain specification with a vocabulary graph.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{DomainSpecification, PropertyConstraint, RangeSpec};
use crate::term::TermId;
use crate::validator::Severity;
use crate::vocabulary::VocabularyGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DsCode {
    /// Term absent from the vocabulary.
    D001,
    /// Property does not apply to one of the domain types.
    D002,
    /// Declared range not accepted by the property's vocabulary range.
    D003,
    /// Property or range term listed twice.
    D004,
}

impl DsCode {
    pub fn title(self) -> &'static str {
        match self {
            DsCode::D001 => "UnknownTerm",
            DsCode::D002 => "PropertyNotApplicable",
            DsCode::D003 => "RangeNotInVocabularyRange",
            DsCode::D004 => "DuplicateConstraint",
        }
    }
}

impl fmt::Display for DsCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckMode {
    Strict,
    #[default]
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DsIssue {
    pub code: DsCode,
    pub term: String,
    pub detail: String,
    pub severity: Severity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DsCheckReport {
    pub spec: String,
    pub passed: bool,
    pub issues: Vec<DsIssue>,
}

impl DsCheckReport {
    pub fn count(&self, code: DsCode) -> usize {
        self.issues.iter().filter(|i| i.code == code).count()
    }

    pub fn errors(&self) -> impl Iterator<Item = &DsIssue> {
        self.issues.iter().filter(|i| i.severity == Severity::Error)
    }
}

struct Checker<'a> {
    graph: &'a VocabularyGraph,
    soft: Severity,
    issues: Vec<DsIssue>,
}

impl Checker<'_> {
    fn push(&mut self, code: DsCode, term: &TermId, severity: Severity, detail: String) {
        self.issues.push(DsIssue {
            code,
            term: term.to_string(),
            detail,
            severity,
        });
    }

    fn constraints(&mut self, types: &[&TermId], constraints: &[PropertyConstraint], ctx: &str) {
        let mut seen = BTreeMap::new();
        for c in constraints {
            *seen.entry(&c.property).or_insert(0usize) += 1;
        }
        for (property, n) in seen {
            if n > 1 {
                self.push(
                    DsCode::D004,
                    property,
                    Severity::Error,
                    format!("`{property}` has {n} constraints{ctx}"),
                );
            }
        }

        for c in constraints {
            let Some(def) = self.graph.property(c.property.as_str()) else {
                self.push(
                    DsCode::D001,
                    &c.property,
                    Severity::Error,
                    format!("property `{}`{ctx} is not in the vocabulary", c.property),
                );
                continue;
            };
            for t in types {
                if !self.graph.property_applies_to(def, t.as_str()) {
                    self.push(
                        DsCode::D002,
                        &c.property,
                        self.soft,
                        format!("`{}` is not applicable to `{t}`{ctx}", c.property),
                    );
                }
            }
            let mut seen_terms = Vec::new();
            for r in &c.ranges {
                let rt = r.term();
                if let RangeSpec::Term(t) = r {
                    if seen_terms.contains(&t) {
                        self.push(
                            DsCode::D004,
                            &c.property,
                            Severity::Error,
                            format!("range `{t}` listed twice for `{}`{ctx}", c.property),
                        );
                    }
                    seen_terms.push(t);
                }
                if self.graph.class(rt.as_str()).is_none() {
                    self.push(
                        DsCode::D001,
                        rt,
                        Severity::Error,
                        format!("range `{rt}` of `{}`{ctx} is not a class in the vocabulary", c.property),
                    );
                    continue;
                }
                if !def
                    .range_includes
                    .iter()
                    .any(|v| self.graph.is_subclass_of(rt.as_str(), v.as_str()))
                {
                    let vocab: Vec<&str> = def.range_includes.iter().map(TermId::as_str).collect();
                    self.push(
                        DsCode::D003,
                        &c.property,
                        self.soft,
                        format!(
                            "range `{rt}` of `{}`{ctx} is outside the vocabulary range [{}]",
                            c.property,
                            vocab.join(", ")
                        ),
                    );
                }
                if let RangeSpec::Nested(n) = r {
                    let nctx = format!(" (nested {} under `{}`{ctx})", n.type_id, c.property);
                    self.constraints(&[&n.type_id], &n.constraints, &nctx);
                }
            }
        }
    }
}

/// Checks every term of `ds` against `graph`.
///
/// Unknown terms (D001) and duplicates (D004) are errors in both modes;
/// applicability (D002) and range (D003) discrepancies are errors only in
/// strict mode. A property must apply to every listed domain type.
pub fn check_domain_spec(ds: &DomainSpecification, graph: &VocabularyGraph, mode: CheckMode) -> DsCheckReport {
    let mut checker = Checker {
        graph,
        soft: match mode {
            CheckMode::Strict => Severity::Error,
            CheckMode::Lenient => Severity::Warning,
        },
        issues: Vec::new(),
    };
    let mut known = Vec::new();
    for t in &ds.domain_types {
        if graph.class(t.as_str()).is_some() {
            known.push(t);
        } else {
            checker.push(
                DsCode::D001,
                t,
                Severity::Error,
                format!("domain type `{t}` is not a class in the vocabulary"),
            );
        }
    }
    checker.constraints(&known, &ds.constraints, "");
    let issues = checker.issues;
    DsCheckReport {
        spec: ds.name.clone(),
        passed: !issues.iter().any(|i| i.severity == Severity::Error),
        issues,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domainspec::parse_domain_spec;
    use serde_json::json;

    fn graph() -> VocabularyGraph {
        crate::vocabulary::load_vocabulary(&json!({"@graph": [
            {"@id": "schema:Thing", "@type": "rdfs:Class"},
            {"@id": "schema:Person", "@type": "rdfs:Class", "rdfs:subClassOf": {"@id": "schema:Thing"}},
            {"@id": "schema:Place", "@type": "rdfs:Class", "rdfs:subClassOf": {"@id": "schema:Thing"}},
            {"@id": "schema:Text", "@type": ["rdfs:Class", "schema:DataType"]},
            {"@id": "schema:Boolean", "@type": ["rdfs:Class", "schema:DataType"]},
            {"@id": "schema:name", "@type": "rdf:Property",
             "schema:domainIncludes": {"@id": "schema:Thing"}, "schema:rangeIncludes": {"@id": "schema:Text"}},
            {"@id": "schema:geo", "@type": "rdf:Property",
             "schema:domainIncludes": {"@id": "schema:Place"}, "schema:rangeIncludes": {"@id": "schema:Text"}}
        ]}))
        .unwrap()
    }

    fn spec(types: &[&str], props: serde_json::Value) -> DomainSpecification {
        parse_domain_spec(&json!({"name": "t", "domainTypes": types, "properties": props})).unwrap()
    }

    #[test]
    fn clean_spec_passes_strict() {
        let ds = spec(&["Person"], json!([{"property": "name", "ranges": ["Text"]}]));
        let r = check_domain_spec(&ds, &graph(), CheckMode::Strict);
        assert!(r.passed);
        assert!(r.issues.is_empty());
    }

    #[test]
    fn unknown_terms_are_errors_in_both_modes() {
        let ds = spec(&["Persn"], json!([{"property": "nme", "ranges": ["Txt"]}]));
        for mode in [CheckMode::Strict, CheckMode::Lenient] {
            let r = check_domain_spec(&ds, &graph(), mode);
            assert!(!r.passed);
            assert_eq!(r.count(DsCode::D001), 2, "{r:?}");
        }
        let ds = spec(&["Person"], json!([{"property": "name", "ranges": ["Txt"]}]));
        assert_eq!(
            check_domain_spec(&ds, &graph(), CheckMode::Lenient).count(DsCode::D001),
            1
        );
    }

    #[test]
    fn applicability_must_hold_for_every_type() {
        let ds = spec(&["Person", "Place"], json!([{"property": "geo", "ranges": ["Text"]}]));
        let strict = check_domain_spec(&ds, &graph(), CheckMode::Strict);
        assert_eq!(strict.count(DsCode::D002), 1);
        assert!(!strict.passed);
        let lenient = check_domain_spec(&ds, &graph(), CheckMode::Lenient);
        assert!(lenient.passed);
        assert_eq!(lenient.issues[0].severity, Severity::Warning);
    }

    #[test]
    fn range_outside_vocabulary() {
        let ds = spec(
            &["Person"],
            json!([{"property": "name", "ranges": ["Text", "Boolean"]}]),
        );
        let r = check_domain_spec(&ds, &graph(), CheckMode::Strict);
        assert_eq!(r.count(DsCode::D003), 1);
        assert_eq!(r.issues[0].term, "name");
    }

    #[test]
    fn nested_ranges_checked_recursively() {
        let ds = spec(
            &["Person"],
            json!([{"property": "name", "ranges": [{"type": "Person", "properties": [
                {"property": "geo", "ranges": ["Text"]}]}]}]),
        );
        let r = check_domain_spec(&ds, &graph(), CheckMode::Strict);
        // Person is outside name's range, and geo does not apply to Person.
        assert_eq!(r.count(DsCode::D003), 1);
        assert_eq!(r.count(DsCode::D002), 1);
    }

    #[test]
    fn duplicates_in_hand_built_specs() {
        let mut ds = spec(&["Person"], json!([{"property": "name", "ranges": ["Text"]}]));
        ds.constraints.push(ds.constraints[0].clone());
        let r = check_domain_spec(&ds, &graph(), CheckMode::Lenient);
        assert_eq!(r.count(DsCode::D004), 1);
        assert!(!r.passed);
    }
}
