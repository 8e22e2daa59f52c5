//! Scans a directory of pages and prints aggregate quality statistics.
//!
//! cargo run --example corpus_report -- [dir] [threads]

use dsforge::corpus::{scan_corpus, ScanOptions};
use dsforge::{bundled, VocabularyGraph};

const VOCAB: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/schemaorg-current-https.jsonld");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dir = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/corpus").into());
    let threads = args.next().map(|n| n.parse()).transpose()?.unwrap_or(0);

    let graph = VocabularyGraph::from_path(VOCAB)?;
    let options = ScanOptions {
        parallelism: threads,
        ..ScanOptions::default()
    };
    let report = scan_corpus(&[dir.into()], &bundled::all(), &graph, &options)?;
    let s = &report.stats;

    println!("documents   {}", s.documents_scanned);
    println!("blocks      {}", s.blocks_found);
    println!(
        "annotations {} ({} unmatched, {} invalid)",
        s.annotations_validated, s.unmatched_annotations, s.invalid_count
    );
    println!("completeness {:.3}", s.mean_completeness);
    for (t, n) in &s.per_type_counts {
        println!("  {t:<20} {n}");
    }
    for (code, n) in &s.per_code_counts {
        println!("  {code} {n}");
    }
    for r in report.reports.iter().filter(|r| !r.valid) {
        let codes: Vec<String> = r.issues.iter().map(|i| format!("{} {}", i.code, i.path)).collect();
        println!("{}: {}", r.source, codes.join(", "));
    }
    Ok(())
}
