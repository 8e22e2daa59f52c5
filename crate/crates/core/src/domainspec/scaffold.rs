use std::collections::BTreeSet;

use super::{DomainSpecification, PropertyConstraint, RangeSpec};
use crate::vocabulary::{UnknownTerm, VocabularyGraph};

/// Drafts a specification for one class: every applicable property as an
/// optional, single-valued constraint with the vocabulary's full range.
///
/// With `include_inherited == false` only properties whose domain names
/// the class itself are kept. Range terms missing from the graph are
/// dropped, and properties left without any range are skipped.
pub fn scaffold_domain_spec(
    graph: &VocabularyGraph,
    class: &str,
    include_inherited: bool,
) -> Result<DomainSpecification, UnknownTerm> {
    let type_id = graph
        .class(class)
        .ok_or_else(|| UnknownTerm(class.to_string()))?
        .id
        .clone();
    let constraints = graph
        .properties_for_type(class)?
        .into_iter()
        .filter(|p| include_inherited || p.domain_includes.contains(class))
        .filter_map(|p| {
            let ranges: Vec<RangeSpec> = p
                .range_includes
                .iter()
                .filter(|r| graph.class(r.as_str()).is_some())
                .map(|r| RangeSpec::Term(r.clone()))
                .collect();
            (!ranges.is_empty()).then(|| PropertyConstraint::new(p.id.clone(), ranges))
        })
        .collect();
    Ok(
        DomainSpecification::new(type_id.to_string(), None, BTreeSet::from([type_id]), constraints)
            .expect("scaffolded constraints are unique and non-empty"),
    )
}
