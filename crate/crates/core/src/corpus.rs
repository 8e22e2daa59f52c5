//! Batch validation over a directory of pages and annotation files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;
use walkdir::WalkDir;

use crate::annotation::{decode_html, extract_jsonld_blocks, parse_annotation_block, resolve_references};
use crate::domainspec::DomainSpecification;
use crate::validator::{validate_document, Severity, ValidationOptions, ValidationReport};
use crate::vocabulary::VocabularyGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("no .html, .htm, .json or .jsonld files found")]
    EmptyCorpus,
    #[error("cannot build worker pool: {0}")]
    Pool(String),
}

const EXTENSIONS: [&str; 4] = ["html", "htm", "json", "jsonld"];

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub validation: ValidationOptions,
    pub allow_subclass_match: bool,
    /// Worker threads; 0 uses the rayon default.
    pub parallelism: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            validation: ValidationOptions::default(),
            allow_subclass_match: true,
            parallelism: 0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CorpusStats {
    pub documents_scanned: usize,
    pub blocks_found: usize,
    pub annotations_validated: usize,
    pub unmatched_annotations: usize,
    pub per_type_counts: BTreeMap<String, usize>,
    pub per_code_counts: BTreeMap<String, usize>,
    pub mean_completeness: f64,
    pub invalid_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ScanMessage {
    pub path: String,
    pub severity: Severity,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CorpusReport {
    pub stats: CorpusStats,
    /// Ordered by (file path, block index, root index).
    pub reports: Vec<ValidationReport>,
    pub messages: Vec<ScanMessage>,
}

impl CorpusReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Folds reports into statistics. Reports without a specification count
/// as unmatched; `documents_scanned` and `blocks_found` are left at zero.
pub fn aggregate(reports: &[ValidationReport]) -> CorpusStats {
    let mut stats = CorpusStats {
        annotations_validated: reports.len(),
        ..CorpusStats::default()
    };
    let mut completeness_sum = 0.0;
    let mut matched = 0usize;
    for r in reports {
        for issue in &r.issues {
            *stats.per_code_counts.entry(issue.code.to_string()).or_default() += 1;
        }
        if !r.is_matched() {
            stats.unmatched_annotations += 1;
            continue;
        }
        matched += 1;
        completeness_sum += r.completeness;
        let key = r.matched_type.as_ref().map_or_else(String::new, ToString::to_string);
        *stats.per_type_counts.entry(key).or_default() += 1;
        if !r.valid {
            stats.invalid_count += 1;
        }
    }
    if matched > 0 {
        stats.mean_completeness = completeness_sum / matched as f64;
    }
    stats
}

fn is_hidden(entry: &walkdir::DirEntry) -> bool {
    entry.depth() > 0 && entry.file_name().to_string_lossy().starts_with('.')
}

fn has_corpus_extension(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| EXTENSIONS.iter().any(|x| x.eq_ignore_ascii_case(e)))
}

/// Expands files and directories into the sorted list of corpus files.
/// Directories are walked recursively, skipping hidden entries.
pub fn discover(paths: &[PathBuf]) -> (Vec<PathBuf>, Vec<ScanMessage>) {
    let mut files = Vec::new();
    let mut messages = Vec::new();
    for root in paths {
        for entry in WalkDir::new(root).into_iter().filter_entry(|e| !is_hidden(e)) {
            match entry {
                Ok(e) if e.file_type().is_file() && has_corpus_extension(e.path()) => files.push(e.into_path()),
                Ok(_) => {}
                Err(err) => messages.push(ScanMessage {
                    path: err.path().unwrap_or(root).display().to_string(),
                    severity: Severity::Error,
                    message: err.to_string(),
                }),
            }
        }
    }
    files.sort();
    files.dedup();
    (files, messages)
}

struct FileOutcome {
    read: bool,
    blocks: usize,
    reports: Vec<ValidationReport>,
    messages: Vec<ScanMessage>,
}

fn scan_file(
    path: &Path,
    specs: &[DomainSpecification],
    graph: &VocabularyGraph,
    options: &ScanOptions,
) -> FileOutcome {
    let label = path.display().to_string();
    let mut outcome = FileOutcome {
        read: false,
        blocks: 0,
        reports: Vec::new(),
        messages: Vec::new(),
    };
    let note = |severity, message: String| ScanMessage {
        path: label.clone(),
        severity,
        message,
    };
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) => {
            outcome.messages.push(note(Severity::Error, e.to_string()));
            return outcome;
        }
    };
    outcome.read = true;
    let is_html = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("html") || e.eq_ignore_ascii_case("htm"));
    let (text, decode_warning) = decode_html(&bytes);
    if let Some(w) = decode_warning {
        outcome.messages.push(note(Severity::Warning, w));
    }
    let blocks: Vec<String> = if is_html {
        let extraction = extract_jsonld_blocks(&text);
        for w in extraction.warnings {
            outcome.messages.push(note(Severity::Warning, w));
        }
        extraction.blocks.into_iter().map(|b| b.raw).collect()
    } else {
        vec![text]
    };
    outcome.blocks = blocks.len();
    for (i, raw) in blocks.iter().enumerate() {
        match parse_annotation_block(raw, &label, i) {
            Ok(doc) => {
                let doc = resolve_references(&doc);
                outcome.reports.extend(validate_document(
                    &doc,
                    specs,
                    graph,
                    &options.validation,
                    options.allow_subclass_match,
                ));
            }
            Err(e) => outcome.messages.push(note(Severity::Error, format!("block {i}: {e}"))),
        }
    }
    outcome
}

/// Validates every annotation found under `paths`.
///
/// HTML files contribute their JSON-LD script blocks; `.json`/`.jsonld`
/// files are one block each. Unreadable files and unparsable blocks are
/// recorded in `messages` and the scan continues. Output is independent
/// of input order and of `parallelism`.
pub fn scan_corpus(
    paths: &[PathBuf],
    specs: &[DomainSpecification],
    graph: &VocabularyGraph,
    options: &ScanOptions,
) -> Result<CorpusReport, CorpusError> {
    let (files, mut messages) = discover(paths);
    if files.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.parallelism)
        .build()
        .map_err(|e| CorpusError::Pool(e.to_string()))?;
    let outcomes: Vec<FileOutcome> =
        pool.install(|| files.par_iter().map(|f| scan_file(f, specs, graph, options)).collect());

    let mut reports = Vec::new();
    let mut documents = 0;
    let mut blocks = 0;
    for o in outcomes {
        documents += usize::from(o.read);
        blocks += o.blocks;
        reports.extend(o.reports);
        messages.extend(o.messages);
    }
    messages.sort();
    let mut stats = aggregate(&reports);
    stats.documents_scanned = documents;
    stats.blocks_found = blocks;
    Ok(CorpusReport {
        stats,
        reports,
        messages,
    })
}
