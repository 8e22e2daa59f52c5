use crate::annotation::AnnotationNode;
use crate::domainspec::DomainSpecification;
use crate::term::TermId;
use crate::vocabulary::VocabularyGraph;

#[derive(Debug, Clone, PartialEq)]
pub struct SpecMatch<'a> {
    pub spec: &'a DomainSpecification,
    pub matched_type: TermId,
    /// False when the match went through a subclass of a domain type.
    pub exact: bool,
    /// Set when several specifications matched equally well.
    pub ambiguity: Option<String>,
}

fn first_match(
    node: &AnnotationNode,
    spec: &DomainSpecification,
    accepts: impl Fn(&TermId, &TermId) -> bool,
) -> Option<TermId> {
    node.type_terms()
        .find(|t| spec.domain_types.iter().any(|d| accepts(t, d)))
}

/// Picks the specification for an annotation node: exact domain-type
/// matches first, then (if allowed) subclass matches. Ties go to the
/// lexicographically smallest specification name.
pub fn select_spec<'a>(
    node: &AnnotationNode,
    specs: &'a [DomainSpecification],
    graph: &VocabularyGraph,
    allow_subclass_match: bool,
) -> Option<SpecMatch<'a>> {
    let exact: Vec<(&DomainSpecification, TermId)> = specs
        .iter()
        .filter_map(|s| first_match(node, s, |t, d| t == d).map(|t| (s, t)))
        .collect();
    let (mut candidates, is_exact) = if !exact.is_empty() || !allow_subclass_match {
        (exact, true)
    } else {
        let sub = specs
            .iter()
            .filter_map(|s| first_match(node, s, |t, d| graph.is_subclass_of(t.as_str(), d.as_str())).map(|t| (s, t)))
            .collect();
        (sub, false)
    };
    candidates.sort_by(|a, b| a.0.name.cmp(&b.0.name));
    let (spec, matched_type) = candidates.first().cloned()?;
    let mut names: Vec<&str> = candidates.iter().map(|(s, _)| s.name.as_str()).collect();
    names.dedup();
    let ambiguity = (names.len() > 1).then(|| {
        format!(
            "types [{}] match specifications {}; using `{}`",
            node.types.join(", "),
            names.join(", "),
            spec.name
        )
    });
    Some(SpecMatch {
        spec,
        matched_type,
        exact: is_exact,
        ambiguity,
    })
}
