//! Independent reference implementations used to cross-check the engine.
//! They work on raw `serde_json` values and share no code with the crate.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::{Map, Value};

pub fn strip(id: &str) -> String {
    for prefix in ["https://schema.org/", "http://schema.org/", "schema:"] {
        if let Some(rest) = id.strip_prefix(prefix) {
            return rest.to_string();
        }
    }
    id.to_string()
}

fn id_list(v: Option<&Value>) -> Vec<String> {
    match v {
        None => Vec::new(),
        Some(Value::Array(items)) => items.iter().flat_map(|i| id_list(Some(i))).collect(),
        Some(Value::Object(o)) => o
            .get("@id")
            .and_then(Value::as_str)
            .map(|s| vec![strip(s)])
            .unwrap_or_default(),
        Some(Value::String(s)) => vec![strip(s)],
        Some(_) => Vec::new(),
    }
}

fn type_list(entry: &Value) -> Vec<String> {
    match entry.get("@type") {
        Some(Value::String(s)) => vec![s.clone()],
        Some(Value::Array(a)) => a.iter().filter_map(|t| t.as_str().map(String::from)).collect(),
        _ => Vec::new(),
    }
}

pub struct RawVocab {
    pub classes: BTreeSet<String>,
    /// property -> (domainIncludes, rangeIncludes)
    pub properties: BTreeMap<String, (Vec<String>, Vec<String>)>,
    parents: HashMap<String, Vec<String>>,
}

impl RawVocab {
    pub fn from_release(doc: &Value) -> Self {
        let mut v = RawVocab {
            classes: BTreeSet::new(),
            properties: BTreeMap::new(),
            parents: HashMap::new(),
        };
        for entry in doc["@graph"].as_array().unwrap() {
            let id = strip(entry["@id"].as_str().unwrap());
            let types = type_list(entry);
            if types.iter().any(|t| t == "rdfs:Class") {
                v.parents.insert(id.clone(), id_list(entry.get("rdfs:subClassOf")));
                v.classes.insert(id);
            } else if types.iter().any(|t| t == "rdf:Property") {
                v.properties.insert(
                    id,
                    (
                        id_list(entry.get("schema:domainIncludes")),
                        id_list(entry.get("schema:rangeIncludes")),
                    ),
                );
            }
        }
        v
    }

    /// Depth-first reachability over direct superclass edges, self included.
    pub fn ancestors(&self, term: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![term.to_string()];
        while let Some(t) = stack.pop() {
            if !seen.insert(t.clone()) {
                continue;
            }
            for p in self.parents.get(&t).into_iter().flatten() {
                if self.classes.contains(p) {
                    stack.push(p.clone());
                }
            }
        }
        seen
    }

    pub fn is_sub(&self, sub: &str, sup: &str) -> bool {
        self.ancestors(sub).contains(sup)
    }

    pub fn knows(&self, term: &str) -> bool {
        self.classes.contains(term) || self.properties.contains_key(term)
    }
}

/// Strict-mode applicability and range discrepancies of a raw specification
/// against the raw release: one per (property, domain type) the property
/// does not apply to, plus one per range term outside the release ranges.
pub fn ds_discrepancies(spec: &Value, vocab: &RawVocab) -> (usize, usize) {
    let domain: Vec<String> = spec["domainTypes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| strip(t.as_str().unwrap()))
        .collect();
    let mut d002 = 0;
    let mut d003 = 0;
    for c in spec["properties"].as_array().unwrap() {
        let property = strip(c["property"].as_str().unwrap());
        let Some((dom, rng)) = vocab.properties.get(&property) else {
            continue;
        };
        for t in &domain {
            let anc = vocab.ancestors(t);
            if !dom.iter().any(|d| anc.contains(d)) {
                d002 += 1;
            }
        }
        for r in c["ranges"].as_array().unwrap() {
            let term = match r {
                Value::String(s) => strip(s),
                other => strip(other["type"].as_str().unwrap()),
            };
            if !vocab.knows(&term) {
                continue;
            }
            let anc = vocab.ancestors(&term);
            if !rng.iter().any(|x| anc.contains(x)) {
                d003 += 1;
            }
        }
    }
    (d002, d003)
}

// ---- scalar datatypes ----------------------------------------------------

fn digits(s: &str, n: usize) -> Option<u32> {
    (s.len() == n && s.bytes().all(|b| b.is_ascii_digit())).then(|| s.parse().unwrap())
}

fn date_ok(s: &str) -> bool {
    let parts: Vec<&str> = s.split('-').collect();
    if parts.len() != 3 {
        return false;
    }
    let (Some(y), Some(m), Some(d)) = (digits(parts[0], 4), digits(parts[1], 2), digits(parts[2], 2)) else {
        return false;
    };
    let leap = y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
    let days = [31, if leap { 29 } else { 28 }, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];
    (1..=12).contains(&m) && d >= 1 && d <= days[m as usize - 1]
}

fn hh_mm(s: &str) -> bool {
    let Some((h, m)) = s.split_once(':') else { return false };
    matches!((digits(h, 2), digits(m, 2)), (Some(h), Some(m)) if h < 24 && m < 60)
}

fn zone_ok(z: &str) -> bool {
    if z.is_empty() || z == "Z" {
        return true;
    }
    let Some(rest) = z.strip_prefix('+').or_else(|| z.strip_prefix('-')) else {
        return false;
    };
    if rest.len() == 4 {
        return hh_mm(&format!("{}:{}", &rest[..2], &rest[2..]));
    }
    hh_mm(rest)
}

fn time_ok(s: &str) -> bool {
    let cut = s.find(['Z', '+', '-']).unwrap_or(s.len());
    let (clock, zone) = s.split_at(cut);
    if !zone_ok(zone) {
        return false;
    }
    let pieces: Vec<&str> = clock.splitn(3, ':').collect();
    match pieces.as_slice() {
        [h, m] => hh_mm(&format!("{h}:{m}")),
        [h, m, sec] => {
            let (whole, frac) = sec.split_once('.').unwrap_or((sec, "0"));
            hh_mm(&format!("{h}:{m}"))
                && digits(whole, 2).is_some_and(|v| v < 60)
                && !frac.is_empty()
                && frac.bytes().all(|b| b.is_ascii_digit())
        }
        _ => false,
    }
}

fn number_ok(s: &str) -> bool {
    let s = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let all_digits = |x: &str| x.bytes().all(|b| b.is_ascii_digit());
    let mantissa_ok = all_digits(int) && all_digits(frac) && !(int.is_empty() && frac.is_empty());
    let exp_ok = exp.is_none_or(|e| {
        let e = e.strip_prefix(['+', '-']).unwrap_or(e);
        !e.is_empty() && all_digits(e)
    });
    mantissa_ok && exp_ok
}

fn url_ok(s: &str) -> bool {
    if s.chars().any(char::is_whitespace) {
        return false;
    }
    let lower = s.to_ascii_lowercase();
    let rest = if lower.starts_with("https://") {
        &s[8..]
    } else if lower.starts_with("http://") {
        &s[7..]
    } else {
        return false;
    };
    rest.chars().next().is_some_and(|c| !matches!(c, '/' | '?' | '#'))
}

const DATATYPES: [&str; 9] = [
    "Text", "URL", "Boolean", "Number", "Integer", "Float", "Date", "DateTime", "Time",
];

fn is_datatype(term: &str) -> bool {
    DATATYPES.contains(&term)
}

fn scalar_ok(datatype: &str, v: &Value) -> bool {
    match (datatype, v) {
        ("Text", Value::String(_)) => true,
        ("URL", Value::String(s)) => url_ok(s),
        ("Boolean", Value::Bool(_)) => true,
        ("Boolean", Value::String(s)) => s == "True" || s == "False",
        ("Number" | "Float", Value::Number(_)) => true,
        ("Number" | "Float", Value::String(s)) => number_ok(s),
        ("Integer", Value::Number(n)) => !n.to_string().contains(['.', 'e', 'E']),
        ("Integer", Value::String(s)) => {
            let t = s.strip_prefix(['+', '-']).unwrap_or(s);
            !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
        }
        ("Date", Value::String(s)) => date_ok(s),
        ("DateTime", Value::String(s)) => s.split_once('T').is_some_and(|(d, t)| date_ok(d) && time_ok(t)),
        ("Time", Value::String(s)) => time_ok(s),
        _ => false,
    }
}

// ---- brute-force validator ----------------------------------------------

pub type Issue = (String, String);

fn flatten(v: Option<&Value>) -> Vec<&Value> {
    fn go<'a>(v: &'a Value, out: &mut Vec<&'a Value>) {
        match v {
            Value::Null => {}
            Value::Array(items) => items.iter().for_each(|i| go(i, out)),
            other => out.push(other),
        }
    }
    let mut out = Vec::new();
    if let Some(v) = v {
        go(v, &mut out);
    }
    out
}

fn node_types(obj: &Map<String, Value>) -> Vec<String> {
    match obj.get("@type") {
        Some(Value::String(s)) => vec![strip(s)],
        Some(Value::Array(a)) => a.iter().filter_map(Value::as_str).map(strip).collect(),
        _ => Vec::new(),
    }
}

fn indexed(prefix: &str, prop: &str, i: usize, n: usize) -> String {
    if n > 1 {
        format!("{prefix}/{prop}[{i}]")
    } else {
        format!("{prefix}/{prop}")
    }
}

pub struct BruteValidator<'v> {
    pub vocab: &'v RawVocab,
    pub max_depth: usize,
}

impl BruteValidator<'_> {
    /// Issue multiset (code, path) and completeness for one annotation
    /// object against a raw specification document.
    pub fn validate(&self, node: &Map<String, Value>, spec: &Value) -> (Vec<Issue>, f64) {
        let mut issues = Vec::new();
        let types = node_types(node);
        if types.is_empty() {
            issues.push(("E002".into(), "/".into()));
        } else if !types.iter().any(|t| self.vocab.classes.contains(t)) {
            issues.push(("E001".into(), "/".into()));
        }
        let constraints = spec["properties"].as_array().unwrap();
        self.constraints(node, constraints, 0, "", &mut issues);
        issues.sort();

        let required: Vec<&Value> = constraints.iter().filter(|c| c["required"] == true).collect();
        let completeness = if required.is_empty() {
            1.0
        } else {
            let have = required
                .iter()
                .filter(|c| !flatten(node.get(c["property"].as_str().unwrap())).is_empty())
                .count();
            have as f64 / required.len() as f64
        };
        (issues, completeness)
    }

    fn constraints(
        &self,
        node: &Map<String, Value>,
        constraints: &[Value],
        depth: usize,
        prefix: &str,
        out: &mut Vec<Issue>,
    ) {
        let mut declared = BTreeSet::new();
        for c in constraints {
            let prop = c["property"].as_str().unwrap();
            declared.insert(prop);
            let values = flatten(node.get(prop));
            if values.is_empty() && c["required"] == true {
                out.push(("E003".into(), format!("{prefix}/{prop}")));
            }
            if values.len() > 1 && c["multitype"] != true {
                out.push(("E005".into(), format!("{prefix}/{prop}")));
            }
            let ranges = c["ranges"].as_array().unwrap();
            for (i, v) in values.iter().enumerate() {
                let path = indexed(prefix, prop, i, values.len());
                self.value(v, ranges, depth, &path, out);
            }
        }
        for (key, raw) in node {
            if key.starts_with('@') {
                continue;
            }
            if !declared.contains(key.as_str()) {
                out.push(("W001".into(), format!("{prefix}/{key}")));
            }
            let values = flatten(Some(raw));
            if values.is_empty() {
                out.push(("W002".into(), format!("{prefix}/{key}")));
            }
            for (i, v) in values.iter().enumerate() {
                if v.as_str().is_some_and(|s| s.trim().is_empty()) {
                    out.push(("W002".into(), indexed(prefix, key, i, values.len())));
                }
            }
        }
    }

    fn value(&self, v: &Value, ranges: &[Value], depth: usize, path: &str, out: &mut Vec<Issue>) {
        let range_term = |r: &Value| match r {
            Value::String(s) => strip(s),
            other => strip(other["type"].as_str().unwrap()),
        };
        match v {
            Value::Object(obj) if obj.len() == 1 && obj.contains_key("@id") => {
                let hit = ranges.iter().any(|r| r.is_object() || !is_datatype(&range_term(r)));
                out.push((if hit { "I001" } else { "E004" }.into(), path.to_string()));
            }
            Value::Object(obj) => {
                let types = node_types(obj);
                let hit = ranges.iter().find(|r| {
                    let term = range_term(r);
                    (r.is_object() || !is_datatype(&term)) && types.iter().any(|t| self.vocab.is_sub(t, &term))
                });
                match hit {
                    None => out.push(("E004".into(), path.to_string())),
                    Some(r) if r.is_object() => {
                        if depth + 1 > self.max_depth {
                            out.push(("W003".into(), path.to_string()));
                        } else {
                            let nested = r
                                .get("properties")
                                .and_then(Value::as_array)
                                .cloned()
                                .unwrap_or_default();
                            self.constraints(obj, &nested, depth + 1, path, out);
                        }
                    }
                    Some(_) => {}
                }
            }
            scalar => {
                let ok = ranges
                    .iter()
                    .filter_map(Value::as_str)
                    .map(strip)
                    .any(|t| is_datatype(&t) && scalar_ok(&t, scalar));
                if !ok {
                    out.push(("E004".into(), path.to_string()));
                }
            }
        }
    }
}

/// JSON-LD script bodies found by regular expressions over the page with
/// comments removed.
pub fn jsonld_script_bodies(html: &str) -> Vec<String> {
    let comments = regex::Regex::new(r"(?s)<!--.*?-->").unwrap();
    let stripped = comments.replace_all(html, "");
    let re = regex::Regex::new(
        r#"(?is)<script(?:\s[^>]*?)?\stype\s*=\s*["']?application/ld\+json(?:\s*;[^"'>]*)?(?:["'][^>]*>|\s[^>]*>|/?>)(.*?)</script"#,
    )
    .unwrap();
    re.captures_iter(&stripped).map(|c| c[1].to_string()).collect()
}
