//! Domain specifications shipped with the crate, one per tourism service
//! type. `food-establishment` is the FoodEstablishment specification with
//! nine domain types and fifteen property constraints.

use crate::domainspec::{parse_domain_spec_str, DomainSpecification};

/// `(file name, contents)` of every bundled specification.
pub const FILES: [(&str, &str); 9] = [
    ("blog-article.ds.json", include_str!("../specs/blog-article.ds.json")),
    ("event.ds.json", include_str!("../specs/event.ds.json")),
    (
        "food-establishment.ds.json",
        include_str!("../specs/food-establishment.ds.json"),
    ),
    ("hotel.ds.json", include_str!("../specs/hotel.ds.json")),
    (
        "infrastructure.ds.json",
        include_str!("../specs/infrastructure.ds.json"),
    ),
    (
        "point-of-interest.ds.json",
        include_str!("../specs/point-of-interest.ds.json"),
    ),
    (
        "tourist-attraction.ds.json",
        include_str!("../specs/tourist-attraction.ds.json"),
    ),
    (
        "tourist-information-center.ds.json",
        include_str!("../specs/tourist-information-center.ds.json"),
    ),
    ("wellness.ds.json", include_str!("../specs/wellness.ds.json")),
];

pub fn all() -> Vec<DomainSpecification> {
    FILES
        .iter()
        .map(|(name, text)| parse_domain_spec_str(text).unwrap_or_else(|e| panic!("bundled {name} is invalid: {e}")))
        .collect()
}

pub fn by_file(file: &str) -> Option<DomainSpecification> {
    FILES
        .iter()
        .find(|(name, _)| *name == file)
        .map(|(_, text)| parse_domain_spec_str(text).expect("bundled specification parses"))
}

pub fn food_establishment() -> DomainSpecification {
    by_file("food-establishment.ds.json").expect("bundled")
}
