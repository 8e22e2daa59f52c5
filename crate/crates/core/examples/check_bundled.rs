//! Checks every bundled domain specification against a vocabulary release.
//!
//! cargo run --example check_bundled -- [vocab.jsonld] [--strict]

use dsforge::domainspec::{check_domain_spec, CheckMode};
use dsforge::{bundled, VocabularyGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let strict = args.iter().any(|a| a == "--strict");
    let vocab = args
        .iter()
        .find(|a| !a.starts_with("--"))
        .cloned()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/schemaorg-current-https.jsonld").into());
    let graph = VocabularyGraph::from_path(&vocab)?;
    let mode = if strict { CheckMode::Strict } else { CheckMode::Lenient };

    for spec in bundled::all() {
        let report = check_domain_spec(&spec, &graph, mode);
        println!(
            "{:<26} {:>2} types {:>2} properties  {}",
            spec.name,
            spec.domain_types.len(),
            spec.constraints.len(),
            if report.passed { "passed" } else { "FAILED" }
        );
        for issue in &report.issues {
            println!("    {} {:<7} {}", issue.code, issue.severity, issue.detail);
        }
    }
    Ok(())
}
