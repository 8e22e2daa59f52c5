//! Compares two domain specifications property by property.
//!
//! cargo run --example diff -- [a.ds.json b.ds.json]

use dsforge::bundled;
use dsforge::domainspec::{diff_domain_specs, parse_domain_spec_str, DomainSpecification};

fn load(path: &str) -> Result<DomainSpecification, Box<dyn std::error::Error>> {
    Ok(parse_domain_spec_str(&std::fs::read_to_string(path)?)?)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (a, b) = match args.as_slice() {
        [a, b] => (load(a)?, load(b)?),
        _ => (
            bundled::by_file("food-establishment.ds.json").unwrap(),
            bundled::by_file("wellness.ds.json").unwrap(),
        ),
    };
    let diff = diff_domain_specs(&a, &b);
    println!("{} -> {}", a.name, b.name);
    for p in &diff.added {
        println!("+ {p}");
    }
    for p in &diff.removed {
        println!("- {p}");
    }
    for c in &diff.changed {
        println!("~ {}: {}", c.property, c.what);
    }
    Ok(())
}
