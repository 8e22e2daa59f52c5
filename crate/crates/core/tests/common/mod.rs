#![allow(dead_code)]

pub mod gen;
pub mod oracle;

use std::path::PathBuf;
use std::sync::OnceLock;

use dsforge::VocabularyGraph;
use serde_json::Value;

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn vocab_path() -> PathBuf {
    manifest_dir().join("data/schemaorg-current-https.jsonld")
}

pub fn fixture(name: &str) -> PathBuf {
    manifest_dir().join("tests/fixtures").join(name)
}

pub fn spec_path(file: &str) -> PathBuf {
    manifest_dir().join("specs").join(file)
}

pub fn graph() -> &'static VocabularyGraph {
    static G: OnceLock<VocabularyGraph> = OnceLock::new();
    G.get_or_init(|| VocabularyGraph::from_path(vocab_path()).expect("release loads"))
}

pub fn raw_vocab() -> &'static Value {
    static V: OnceLock<Value> = OnceLock::new();
    V.get_or_init(|| {
        let text = std::fs::read_to_string(vocab_path()).unwrap();
        serde_json::from_str(&text).unwrap()
    })
}

pub fn raw_spec(file: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(spec_path(file)).unwrap()).unwrap()
}
