//! Pulls the JSON-LD blocks out of an HTML page, whatever its encoding.
//!
//! cargo run --example extract -- page.html

use dsforge::annotation::{decode_html, extract_jsonld_blocks, parse_annotation_block};

const PAGE: &str = r#"<!DOCTYPE html>
<html><head>
<meta charset="utf-8">
<script type="application/ld+json">
{"@context": "https://schema.org", "@type": "Bakery", "name": "Bäckerei Ruetz"}
</script>
<!-- <script type="application/ld+json">{"@type": "Commented out"}</script> -->
<script src="/analytics.js"></script>
<SCRIPT TYPE='application/ld+json; charset=utf-8'>
[{"@context": "http://schema.org/", "@type": "Event", "name": "Bread festival"}]
</SCRIPT>
</head><body></body></html>"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (origin, html) = match std::env::args().nth(1) {
        Some(path) => {
            let (text, warning) = decode_html(&std::fs::read(&path)?);
            if let Some(w) = warning {
                eprintln!("{path}: {w}");
            }
            (path, text)
        }
        None => ("inline".to_string(), PAGE.to_string()),
    };

    let extraction = extract_jsonld_blocks(&html);
    for w in &extraction.warnings {
        eprintln!("{origin}: {w}");
    }
    for block in &extraction.blocks {
        match parse_annotation_block(&block.raw, &origin, block.block_index) {
            Ok(doc) => {
                for root in &doc.roots {
                    println!(
                        "block {}: {} with {} properties",
                        block.block_index,
                        root.types.join("/"),
                        root.properties.len()
                    );
                }
            }
            Err(e) => println!("block {}: {e}", block.block_index),
        }
    }
    Ok(())
}
