//! Loads a schema.org release and explores the class hierarchy.
//!
//! cargo run --example vocab_info -- [vocab.jsonld] [Class]

use dsforge::VocabularyGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let vocab = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/schemaorg-current-https.jsonld").into());
    let class = args.next().unwrap_or_else(|| "Restaurant".into());
    let graph = VocabularyGraph::from_path(&vocab)?;

    println!("{} classes, {} properties", graph.class_count(), graph.property_count());
    for w in graph.load_warnings() {
        println!("warning: {:?} {}: {}", w.kind, w.term, w.detail);
    }

    let ancestors: Vec<String> = graph.ancestors(&class).iter().map(|t| t.to_string()).collect();
    println!("\n{class} is a {}", ancestors.join(", "));
    let props = graph.properties_for_type(&class)?;
    println!("{} properties apply to {class}; declared on", props.len());
    for anc in graph.ancestors(&class) {
        let own: Vec<&str> = props
            .iter()
            .filter(|p| p.domain_includes.contains(anc))
            .map(|p| p.id.as_str())
            .collect();
        let shown = own.iter().take(6).copied().collect::<Vec<_>>().join(", ");
        println!(
            "  {anc:<18} {:>3}  {shown}{}",
            own.len(),
            if own.len() > 6 { ", ..." } else { "" }
        );
    }
    Ok(())
}
