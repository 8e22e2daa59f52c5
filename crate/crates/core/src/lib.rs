//! Domain specifications for schema.org annotations.
//!
//! The crate loads a schema.org vocabulary release into a
//! [`VocabularyGraph`], reads and checks [`DomainSpecification`]s (typed
//! subsets of the vocabulary), extracts JSON-LD annotations from web pages,
//! validates them against the matching specification and aggregates
//! quality statistics over a corpus of pages.
//!
//! ```no_run
//! use dsforge::{annotation, bundled, validator, VocabularyGraph};
//!
//! let graph = VocabularyGraph::from_path("schemaorg-current-https.jsonld")?;
//! let spec = bundled::food_establishment();
//! let doc = annotation::parse_annotation(r#"{"@context":"https://schema.org","@type":"Restaurant"}"#)?;
//! let report = validator::validate_node(&doc.roots[0], &spec, &graph, &Default::default());
//! println!("{}", report.to_json());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod annotation;
pub mod bundled;
pub mod cli;
pub mod corpus;
pub mod domainspec;
mod term;
pub mod validator;
pub mod vocabulary;

pub use annotation::{AnnotationDocument, AnnotationNode, AnnotationValue};
pub use domainspec::{DomainSpecification, PropertyConstraint, RangeSpec};
pub use term::TermId;
pub use validator::{IssueCode, Severity, ValidationIssue, ValidationOptions, ValidationReport};
pub use vocabulary::{load_vocabulary, VocabularyGraph};

/// Environment variable naming the default vocabulary file.
pub const VOCAB_ENV: &str = "DSFORGE_VOCAB";
