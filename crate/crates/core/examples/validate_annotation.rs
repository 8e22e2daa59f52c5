//! Validates one JSON-LD annotation against the bundled specifications.
//!
//! cargo run --example validate_annotation -- [annotation.jsonld]

use dsforge::annotation::{parse_annotation_block, resolve_references};
use dsforge::validator::validate_document;
use dsforge::{bundled, VocabularyGraph};

const VOCAB: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/schemaorg-current-https.jsonld");

const SAMPLE: &str = r##"{
  "@context": "https://schema.org",
  "@graph": [
    {
      "@type": "Restaurant",
      "name": ["Gasthaus Krone", "Krone"],
      "description": "Tyrolean cooking since 1820",
      "url": "www.krone.example",
      "address": {"@id": "#addr"},
      "image": ["https://krone.example/1.jpg", "https://krone.example/2.jpg"],
      "telephone": "+43 512 000",
      "priceRange": "$$",
      "openingHoursSpecification": {"@type": "OpeningHoursSpecification", "opens": "11:00"}
    },
    {"@type": "PostalAddress", "@id": "#addr", "streetAddress": "Hauptplatz 1"}
  ]
}"##;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (origin, text) = match std::env::args().nth(1) {
        Some(path) => (path.clone(), std::fs::read_to_string(path)?),
        None => ("sample".to_string(), SAMPLE.to_string()),
    };
    let graph = VocabularyGraph::from_path(VOCAB)?;
    let specs = bundled::all();

    // references to sibling nodes are inlined before validation
    let doc = resolve_references(&parse_annotation_block(&text, &origin, 0)?);
    for w in &doc.parse_warnings {
        println!("note: {w}");
    }
    for report in validate_document(&doc, &specs, &graph, &Default::default(), true) {
        print!("{}", report.to_json());
    }
    Ok(())
}
