//! Drafts a domain specification for one class and tightens it by hand:
//! a few properties become required, the rest are dropped.
//!
//! cargo run --example scaffold -- [Class]

use dsforge::domainspec::{check_domain_spec, scaffold_domain_spec, to_json_string, CheckMode};
use dsforge::VocabularyGraph;

const VOCAB: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/schemaorg-current-https.jsonld");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let class = std::env::args().nth(1).unwrap_or_else(|| "Museum".into());
    let graph = VocabularyGraph::from_path(VOCAB)?;

    let mut spec = scaffold_domain_spec(&graph, &class, true)?;
    println!("scaffold for {class}: {} optional properties", spec.constraints.len());

    let keep = [
        "name",
        "description",
        "address",
        "url",
        "image",
        "openingHoursSpecification",
    ];
    spec.constraints.retain(|c| keep.contains(&c.property.as_str()));
    for c in &mut spec.constraints {
        c.required = c.property.as_str() != "image";
        c.multitype = matches!(c.property.as_str(), "image" | "openingHoursSpecification");
    }

    let report = check_domain_spec(&spec, &graph, CheckMode::Strict);
    println!("strict check: {}", if report.passed { "passed" } else { "failed" });
    print!("{}", to_json_string(&spec));
    Ok(())
}
