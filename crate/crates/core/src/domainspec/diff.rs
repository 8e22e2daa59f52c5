use std::collections::BTreeMap;

use serde::Serialize;

use super::{DomainSpecification, PropertyConstraint};
use crate::term::TermId;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DsChange {
    pub property: TermId,
    pub what: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DsDiff {
    pub added: Vec<TermId>,
    pub removed: Vec<TermId>,
    pub changed: Vec<DsChange>,
}

impl DsDiff {
    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.removed.is_empty() && self.changed.is_empty()
    }
}

fn describe_change(a: &PropertyConstraint, b: &PropertyConstraint) -> Option<String> {
    let mut parts = Vec::new();
    if a.required != b.required {
        parts.push(format!("required: {} -> {}", a.required, b.required));
    }
    if a.multitype != b.multitype {
        parts.push(format!("multitype: {} -> {}", a.multitype, b.multitype));
    }
    if a.ranges != b.ranges {
        let (ra, rb) = (a.describe_ranges(), b.describe_ranges());
        if ra == rb {
            parts.push(format!("nested constraints of {ra} changed"));
        } else {
            parts.push(format!("ranges: {ra} -> {rb}"));
        }
    }
    (!parts.is_empty()).then(|| parts.join("; "))
}

/// Property-level difference from `a` to `b`.
pub fn diff_domain_specs(a: &DomainSpecification, b: &DomainSpecification) -> DsDiff {
    let left: BTreeMap<&TermId, &PropertyConstraint> = a.constraints.iter().map(|c| (&c.property, c)).collect();
    let right: BTreeMap<&TermId, &PropertyConstraint> = b.constraints.iter().map(|c| (&c.property, c)).collect();
    let mut diff = DsDiff::default();
    for (p, cb) in &right {
        match left.get(p) {
            None => diff.added.push((*p).clone()),
            Some(ca) => {
                if let Some(what) = describe_change(ca, cb) {
                    diff.changed.push(DsChange {
                        property: (*p).clone(),
                        what,
                    });
                }
            }
        }
    }
    diff.removed = left
        .keys()
        .filter(|p| !right.contains_key(*p))
        .map(|p| (*p).clone())
        .collect();
    diff
}
