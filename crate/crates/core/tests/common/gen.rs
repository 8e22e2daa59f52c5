//! Seeded generators for annotations and specification models.

use std::collections::BTreeSet;

use dsforge::domainspec::NestedSpec;
use dsforge::{DomainSpecification, PropertyConstraint, RangeSpec, TermId};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn scalars() -> Vec<Value> {
    vec![
        json!("Tyrolean"),
        json!(""),
        json!("  "),
        json!("https://example.org/a"),
        json!("HTTP://EXAMPLE.ORG"),
        json!("example.org"),
        json!("ftp://example.org"),
        json!("https://"),
        json!("True"),
        json!("false"),
        json!("12"),
        json!("-4.5"),
        json!("1e3"),
        json!("09:30"),
        json!("09:30:15+02:00"),
        json!("24:00"),
        json!("2024-05-01"),
        json!("2024-02-29"),
        json!("2023-02-29"),
        json!("2024-05-01T10:00:00Z"),
        json!("2024-13-01T10:00"),
        json!(12),
        json!(4.5),
        json!(-3),
        json!(true),
        json!(false),
    ]
}

const NODE_TYPES: [&str; 15] = [
    "PostalAddress",
    "GeoCoordinates",
    "ImageObject",
    "OpeningHoursSpecification",
    "Country",
    "Person",
    "Reservation",
    "FoodEstablishmentReservation",
    "Menu",
    "Rating",
    "Place",
    "City",
    "LocationFeatureSpecification",
    "QuantitativeValue",
    "Widget",
];

const NODE_PROPS: [&str; 10] = [
    "addressCountry",
    "addressLocality",
    "streetAddress",
    "postalCode",
    "latitude",
    "longitude",
    "elevation",
    "name",
    "url",
    "colour",
];

const EXTRA_PROPS: [&str; 4] = ["founder", "logo", "bogusProp", "keywords"];

pub struct AnnotationGen {
    scalars: Vec<Value>,
    next_id: usize,
}

impl Default for AnnotationGen {
    fn default() -> Self {
        AnnotationGen {
            scalars: scalars(),
            next_id: 0,
        }
    }
}

impl AnnotationGen {
    fn scalar(&self, rng: &mut ChaCha8Rng) -> Value {
        self.scalars.choose(rng).unwrap().clone()
    }

    fn node(&mut self, rng: &mut ChaCha8Rng, depth: usize) -> Value {
        let mut obj = Map::new();
        if rng.gen_bool(0.9) {
            obj.insert("@type".into(), json!(NODE_TYPES.choose(rng).unwrap()));
        }
        if rng.gen_bool(0.1) {
            self.next_id += 1;
            obj.insert("@id".into(), json!(format!("#n{}", self.next_id)));
        }
        for p in NODE_PROPS {
            if rng.gen_bool(0.3) {
                obj.insert(p.into(), self.value(rng, depth + 1));
            }
        }
        Value::Object(obj)
    }

    fn value(&mut self, rng: &mut ChaCha8Rng, depth: usize) -> Value {
        let roll: f64 = rng.gen();
        match roll {
            r if r < 0.04 => Value::Null,
            r if r < 0.08 => json!([]),
            r if r < 0.12 => json!({"@id": "#elsewhere"}),
            r if r < 0.30 && depth < 2 => self.node(rng, depth),
            r if r < 0.45 => {
                let n = rng.gen_range(1..=3);
                let items = (0..n)
                    .map(|_| {
                        if depth < 2 && rng.gen_bool(0.3) {
                            self.node(rng, depth)
                        } else {
                            self.scalar(rng)
                        }
                    })
                    .collect();
                Value::Array(items)
            }
            _ => self.scalar(rng),
        }
    }

    /// A small top-level annotation aimed at `spec` (a raw specification).
    pub fn annotation(&mut self, rng: &mut ChaCha8Rng, spec: &Value) -> Value {
        let mut obj = Map::new();
        obj.insert("@context".into(), json!("https://schema.org"));
        let domain: Vec<&str> = spec["domainTypes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap())
            .collect();
        let t = *domain.choose(rng).unwrap();
        match rng.gen_range(0..10) {
            0 => {}
            1 => {
                obj.insert("@type".into(), json!("Widget"));
            }
            2 => {
                obj.insert("@type".into(), json!([t, "Widget"]));
            }
            _ => {
                obj.insert("@type".into(), json!(t));
            }
        }
        for c in spec["properties"].as_array().unwrap() {
            if rng.gen_bool(0.6) {
                let p = c["property"].as_str().unwrap();
                obj.insert(p.into(), self.value(rng, 0));
            }
        }
        for p in EXTRA_PROPS {
            if rng.gen_bool(0.1) {
                obj.insert(p.into(), self.value(rng, 0));
            }
        }
        Value::Object(obj)
    }
}

/// A fully conformant Restaurant annotation for the FoodEstablishment
/// specification, varied by `i`.
pub fn restaurant(i: usize) -> Value {
    json!({
        "@context": "https://schema.org",
        "@type": "Restaurant",
        "name": format!("Restaurant {i}"),
        "description": "Regional dishes",
        "email": format!("r{i}@example.org"),
        "identifier": format!("r-{i}"),
        "image": [format!("https://example.org/{i}.jpg")],
        "openingHoursSpecification": [{"@type": "OpeningHoursSpecification", "opens": "10:00"}],
        "priceRange": "$$",
        "servesCuisine": "Austrian",
        "telephone": "+43 1 234",
        "url": format!("https://example.org/r/{i}"),
        "address": {"@type": "PostalAddress", "streetAddress": format!("Gasse {i}")},
        "geo": {"@type": "GeoCoordinates", "latitude": 47.26, "longitude": 11.39},
        "acceptsReservations": i.is_multiple_of(2),
    })
}

// ---- specification models -----------------------------------------------

const CLASS_POOL: [&str; 10] = [
    "Thing",
    "Place",
    "Restaurant",
    "Hotel",
    "Event",
    "Person",
    "Organization",
    "PostalAddress",
    "GeoCoordinates",
    "ImageObject",
];
const RANGE_POOL: [&str; 12] = [
    "Text",
    "URL",
    "Boolean",
    "Number",
    "Date",
    "DateTime",
    "Place",
    "Person",
    "PostalAddress",
    "GeoCoordinates",
    "ImageObject",
    "Organization",
];
const PROPERTY_POOL: [&str; 12] = [
    "name",
    "url",
    "image",
    "address",
    "geo",
    "telephone",
    "email",
    "sameAs",
    "founder",
    "openingHours",
    "description",
    "startDate",
];
const NAMES: [&str; 5] = ["Spec", "Ünïcode spec", "quoted \"name\"", "tab\tname", "x"];

fn term(s: &str) -> TermId {
    TermId::normalize(s).unwrap()
}

fn constraints(rng: &mut ChaCha8Rng, depth: usize, max: usize) -> Vec<PropertyConstraint> {
    let n = rng.gen_range(0..=max);
    let mut props: Vec<&str> = PROPERTY_POOL.choose_multiple(rng, n).copied().collect();
    props.sort();
    props
        .into_iter()
        .map(|p| {
            let k = rng.gen_range(1..=3);
            let ranges = RANGE_POOL
                .choose_multiple(rng, k)
                .map(|r| {
                    let is_class = r.chars().next().unwrap().is_uppercase()
                        && !["Text", "URL", "Boolean", "Number", "Date", "DateTime"].contains(r);
                    if is_class && depth < 2 && rng.gen_bool(0.3) {
                        RangeSpec::Nested(NestedSpec {
                            type_id: term(r),
                            constraints: constraints(rng, depth + 1, 3),
                        })
                    } else {
                        RangeSpec::Term(term(r))
                    }
                })
                .collect();
            PropertyConstraint::new(term(p), ranges)
                .required(rng.gen_bool(0.5))
                .multitype(rng.gen_bool(0.3))
        })
        .collect()
}

/// A random but structurally valid specification in canonical form.
pub fn spec(seed: u64) -> DomainSpecification {
    let mut rng = rng(seed);
    let name = format!("{} {}", NAMES.choose(&mut rng).unwrap(), rng.gen_range(0..1000));
    let version = match rng.gen_range(0..3) {
        0 => None,
        1 => Some("1.0".to_string()),
        _ => Some(format!("{}.{}", rng.gen_range(0..5), rng.gen_range(0..20))),
    };
    let k = rng.gen_range(1..=4);
    let domain: BTreeSet<TermId> = CLASS_POOL.choose_multiple(&mut rng, k).map(|t| term(t)).collect();
    let cs = constraints(&mut rng, 0, 8);
    DomainSpecification::new(name, version, domain, cs).expect("generated model is valid")
}
