//! Prints a JSON-LD skeleton for every domain type of a bundled
//! specification and confirms each one validates.
//!
//! cargo run --example template -- [hotel.ds.json]

use dsforge::annotation::parse_annotation;
use dsforge::validator::{generate_template, validate_node};
use dsforge::{bundled, VocabularyGraph};

const VOCAB: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/schemaorg-current-https.jsonld");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let file = std::env::args().nth(1).unwrap_or_else(|| "hotel.ds.json".into());
    let spec = bundled::by_file(&file).ok_or_else(|| format!("no bundled specification {file}"))?;
    let graph = VocabularyGraph::from_path(VOCAB)?;

    for t in &spec.domain_types {
        let template = generate_template(&spec, t.as_str())?;
        let doc = parse_annotation(&template.to_string())?;
        let report = validate_node(&doc.roots[0], &spec, &graph, &Default::default());
        println!("// {t}: valid={} completeness={}", report.valid, report.completeness);
        println!("{}", serde_json::to_string_pretty(&template)?);
    }
    Ok(())
}
