use serde_json::{json, Map, Value};

use crate::domainspec::{DomainSpecification, PropertyConstraint, RangeSpec};
use crate::vocabulary::{Datatype, UnknownTerm};

/// Placeholder value shaped by a range: datatypes get a type-correct
/// literal, classes a stub node, nested ranges a stub with their own
/// required properties filled in.
pub fn placeholder_for(range: &RangeSpec) -> Value {
    match range {
        RangeSpec::Term(t) => match Datatype::from_name(t.as_str()) {
            Some(Datatype::Text) => json!(""),
            Some(Datatype::Url) => json!("https://example.invalid/"),
            Some(Datatype::Boolean) => json!(true),
            Some(Datatype::Number | Datatype::Integer) => json!(0),
            Some(Datatype::Date) => json!("1970-01-01"),
            Some(Datatype::DateTime) => json!("1970-01-01T00:00:00Z"),
            Some(Datatype::Time) => json!("00:00:00"),
            None => json!({"@type": t.as_str()}),
        },
        RangeSpec::Nested(n) => {
            let mut obj = Map::new();
            obj.insert("@type".into(), json!(n.type_id.as_str()));
            fill_required(&mut obj, &n.constraints);
            Value::Object(obj)
        }
    }
}

fn fill_required(obj: &mut Map<String, Value>, constraints: &[PropertyConstraint]) {
    for c in constraints.iter().filter(|c| c.required) {
        let v = placeholder_for(&c.ranges[0]);
        let v = if c.multitype { Value::Array(vec![v]) } else { v };
        obj.insert(c.property.to_string(), v);
    }
}

/// A JSON-LD skeleton for `target_type` holding every required property
/// of `ds`. Optional properties are left out.
pub fn generate_template(ds: &DomainSpecification, target_type: &str) -> Result<Value, UnknownTerm> {
    let target = ds
        .domain_types
        .get(target_type)
        .ok_or_else(|| UnknownTerm(target_type.to_string()))?;
    let mut obj = Map::new();
    obj.insert("@context".into(), json!("https://schema.org"));
    obj.insert("@type".into(), json!(target.as_str()));
    fill_required(&mut obj, &ds.constraints);
    Ok(Value::Object(obj))
}
