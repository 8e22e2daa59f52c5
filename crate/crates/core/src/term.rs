use std::borrow::Borrow;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

const PREFIXES: [&str; 3] = ["https://schema.org/", "http://schema.org/", "schema:"];

/// Bare schema.org term name such as `Restaurant`, `servesCuisine` or `Text`.
///
/// Always produced through [`TermId::normalize`], so prefixed forms
/// (`schema:Text`, `https://schema.org/Text`) collapse onto the same id.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(Arc<str>);

impl TermId {
    /// Strips a schema.org prefix and checks the bare-name invariants.
    ///
    /// Returns `None` for empty names, names containing whitespace, `/` or
    /// `:` (which covers IRIs from any other namespace).
    pub fn normalize(raw: &str) -> Option<TermId> {
        let raw = raw.trim();
        let bare = PREFIXES.iter().find_map(|p| raw.strip_prefix(p)).unwrap_or(raw);
        if bare.is_empty() || bare.chars().any(|c| c.is_whitespace() || c == '/' || c == ':') {
            return None;
        }
        Some(TermId(Arc::from(bare)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for TermId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for TermId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&self.0)
    }
}

impl Borrow<str> for TermId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for TermId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl PartialEq<str> for TermId {
    fn eq(&self, other: &str) -> bool {
        &*self.0 == other
    }
}

impl PartialEq<&str> for TermId {
    fn eq(&self, other: &&str) -> bool {
        &*self.0 == *other
    }
}

impl Serialize for TermId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for TermId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        TermId::normalize(&raw).ok_or_else(|| serde::de::Error::custom(format!("invalid term name {raw:?}")))
    }
}
