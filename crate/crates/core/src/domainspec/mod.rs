//! Domain specifications: named subsets of schema.org.
//!
//! A [`DomainSpecification`] lists the target types of a domain and one
//! [`PropertyConstraint`] per selected property, each with its allowed
//! ranges and the `required` / `multitype` attributes. `multitype` means
//! the property may carry more than one value.

mod check;
mod diff;
mod io;
mod scaffold;

use std::collections::{BTreeMap, BTreeSet};

use serde_json::Value;
use thiserror::Error;

use crate::term::TermId;

pub use check::{check_domain_spec, CheckMode, DsCheckReport, DsCode, DsIssue};
pub use diff::{diff_domain_specs, DsChange, DsDiff};
pub use io::{
    parse_domain_spec, parse_domain_spec_str, parse_domain_spec_with, serialize_domain_spec, to_json_string,
    ParseOptions, ParsedSpec,
};
pub use scaffold::scaffold_domain_spec;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DsError {
    #[error("malformed domain specification: {0}")]
    Malformed(String),
    #[error("domain specification is not valid JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RangeSpec {
    /// A bare term: datatype or class name.
    Term(TermId),
    /// An inline specification for values of one class.
    Nested(NestedSpec),
}

impl RangeSpec {
    pub fn term(&self) -> &TermId {
        match self {
            RangeSpec::Term(t) => t,
            RangeSpec::Nested(n) => &n.type_id,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            RangeSpec::Term(t) => t.to_string(),
            RangeSpec::Nested(n) => format!("{}{{…}}", n.type_id),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedSpec {
    pub type_id: TermId,
    pub constraints: Vec<PropertyConstraint>,
}

impl NestedSpec {
    pub fn constraint(&self, property: &str) -> Option<&PropertyConstraint> {
        self.constraints.iter().find(|c| c.property == *property)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyConstraint {
    pub property: TermId,
    pub ranges: Vec<RangeSpec>,
    pub required: bool,
    pub multitype: bool,
}

impl PropertyConstraint {
    pub fn new(property: TermId, ranges: Vec<RangeSpec>) -> Self {
        PropertyConstraint {
            property,
            ranges,
            required: false,
            multitype: false,
        }
    }

    pub fn required(mut self, required: bool) -> Self {
        self.required = required;
        self
    }

    pub fn multitype(mut self, multitype: bool) -> Self {
        self.multitype = multitype;
        self
    }

    pub fn describe_ranges(&self) -> String {
        self.ranges
            .iter()
            .map(RangeSpec::describe)
            .collect::<Vec<_>>()
            .join(" or ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainSpecification {
    pub name: String,
    pub version: Option<String>,
    pub domain_types: BTreeSet<TermId>,
    /// Sorted by property id.
    pub constraints: Vec<PropertyConstraint>,
    /// Unrecognized top-level document keys, kept when parsing with
    /// `preserve_unknown`.
    pub extensions: BTreeMap<String, Value>,
}

impl DomainSpecification {
    /// Checks the structural invariants and puts constraints in canonical
    /// (property id) order.
    pub fn new(
        name: impl Into<String>,
        version: Option<String>,
        domain_types: BTreeSet<TermId>,
        mut constraints: Vec<PropertyConstraint>,
    ) -> Result<Self, DsError> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(DsError::Malformed("`name` is empty".into()));
        }
        if domain_types.is_empty() {
            return Err(DsError::Malformed("`domainTypes` is empty".into()));
        }
        check_constraint_list(&constraints, &name)?;
        constraints.sort_by(|a, b| a.property.cmp(&b.property));
        Ok(DomainSpecification {
            name,
            version,
            domain_types,
            constraints,
            extensions: BTreeMap::new(),
        })
    }

    pub fn constraint(&self, property: &str) -> Option<&PropertyConstraint> {
        self.constraints.iter().find(|c| c.property == *property)
    }

    pub fn required_count(&self) -> usize {
        self.constraints.iter().filter(|c| c.required).count()
    }
}

fn check_constraint_list(constraints: &[PropertyConstraint], context: &str) -> Result<(), DsError> {
    let mut seen = BTreeSet::new();
    for c in constraints {
        if !seen.insert(&c.property) {
            return Err(DsError::Malformed(format!(
                "duplicate property `{}` in {context}",
                c.property
            )));
        }
        if c.ranges.is_empty() {
            return Err(DsError::Malformed(format!(
                "property `{}` in {context} has no ranges",
                c.property
            )));
        }
        let mut terms = BTreeSet::new();
        for r in &c.ranges {
            match r {
                RangeSpec::Term(t) => {
                    if !terms.insert(t) {
                        return Err(DsError::Malformed(format!(
                            "range `{t}` listed twice for `{}` in {context}",
                            c.property
                        )));
                    }
                }
                RangeSpec::Nested(n) => check_constraint_list(&n.constraints, &format!("nested {}", n.type_id))?,
            }
        }
    }
    Ok(())
}
